"""Dense univariate polynomials over GF(p): just enough to find roots.

Coefficient lists are low-degree first.  Roots come from
gcd(f, x^p - x) followed by random equal-degree splitting, which works for
primes far too large for exhaustive search.
"""

from __future__ import annotations

import random


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _divmod(a, b, p):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = (a[k + j] - c * y) % p
    return _trim(q), _trim(a[: len(b) - 1])


def _mod(a, b, p):
    return _divmod(a, b, p)[1]


def _gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _powmod(base, e, mod, p):
    result = [1]
    base = _mod(base, mod, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _mod(_mul(base, base, p), mod, p)
    return result


def _sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def roots_mod_p(coeffs, p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in GF(p) of the polynomial with the given coefficients."""
    f = _trim([c % p for c in coeffs])
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    rng = rng or random.Random(0)
    roots = []
    if f[0] == 0:
        roots.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) <= 1:
        return sorted(roots)
    xp = _powmod([0, 1], p, f, p)
    g = _gcd(f, _sub(xp, [0, 1], p), p)
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d <= 0:
            continue
        if d == 1:
            roots.append((-h[0]) * pow(h[1], -1, p) % p)
            continue
        while True:
            a = rng.randrange(p)
            w = _sub(_powmod([a, 1], (p - 1) // 2, h, p), [1], p)
            k = _gcd(h, w, p)
            if 0 < len(k) - 1 < d:
                stack.append(k)
                stack.append(_divmod(h, k, p)[0])
                break
    return sorted(set(roots))


def binary_form_roots(coeffs_by_u, p: int, rng: random.Random | None = None) -> list[tuple[int, int]]:
    """Projective roots (u:v) of a binary form sum c_k u^k v^(d-k) over GF(p).

    ``coeffs_by_u[k]`` is the coefficient of u^k v^(d-k).  Roots are returned
    normalised as (u, 1) or (1, 0).
    """
    d = len(coeffs_by_u) - 1
    c = [x % p for x in coeffs_by_u]
    if not any(c):
        raise ValueError("the zero form vanishes everywhere")
    out = [(r, 1) for r in roots_mod_p(c, p, rng)]
    # (1:0) is a root iff the u^d coefficient vanishes
    if c[d] == 0:
        out.append((1, 0))
    return out
