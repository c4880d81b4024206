"""Sparse multivariate polynomials over QQ or GF(p).

A polynomial is a dict from exponent tuples to nonzero raw coefficients,
attached to a :class:`PolyRing` (ordered variable names plus a field).
Terms print in graded-lex order, highest first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .fields import QQ, DomainError, PrimeField


class ParseError(ValueError):
    """Bad polynomial text; ``token`` names the offending piece."""

    def __init__(self, message: str, token: str = ""):
        super().__init__(message)
        self.token = token


def grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given total degree, graded-lex descending."""
    if degree < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"repeated variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @cached_property
    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name_or_index) -> "Poly":
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exp, coeff=1) -> "Poly":
        c = self.field.convert(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def linear_form(self, coeffs: Sequence) -> "Poly":
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field.convert(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)

    def from_coefficients(self, coeffs: Sequence, degree: int) -> "Poly":
        """Inverse of :meth:`Poly.coefficient_vector` for the given degree."""
        mons = monomials(self.nvars, degree)
        if len(coeffs) != len(mons):
            raise ValueError(f"expected {len(mons)} coefficients, got {len(coeffs)}")
        terms = {}
        for e, c in zip(mons, coeffs):
            c = self.field.convert(c)
            if c:
                terms[e] = c
        return Poly(self, terms)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(self.names, field)

    def parse(self, text: str) -> "Poly":
        return _Parser(text, self).parse()

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; {self.field!r})"


class Poly:
    __slots__ = ("ring", "terms", "__weakref__")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        self.terms = dict(terms)

    # -- construction helpers -------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise DomainError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.constant(other)

    @property
    def field(self):
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    # -- basic queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int | float:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return -math.inf
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int | float:
        i = self.ring.index[var] if isinstance(var, str) else var
        if not self.terms:
            return -math.inf
        return max(e[i] for e in self.terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def coefficient(self, exp) -> object:
        return self.terms.get(tuple(exp), 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def variables(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(self.ring.names[i] for i in sorted(used))

    def coefficient_vector(self, degree: int) -> list:
        """Coefficients on the degree-``degree`` monomials (graded-lex)."""
        if any(sum(e) != degree for e in self.terms):
            raise ValueError(f"not homogeneous of degree {degree}")
        return [self.terms.get(e, 0) for e in monomials(self.nvars, degree)]

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        norm = self.field.normalize
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.normalize
        return Poly(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Poly":
        c = self.field.convert(c)
        if not c:
            return self.ring.zero
        norm = self.field.normalize
        return Poly(self.ring, {e: norm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._lift(other)
        if not self.terms or not other.terms:
            return self.ring.zero
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        norm = self.field.normalize
        out: dict = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        cleaned = {}
        for e, c in out.items():
            c = norm(c)
            if c:
                cleaned[e] = c
        return Poly(self.ring, cleaned)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return self.divide_exact(c)
        c = self.field.convert(c)
        return self.scale(self.field.inv(c))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.constant(other)
        except (DomainError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- division -----------------------------------------------------------------

    def divmod(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """Division by a single polynomial in graded-lex order.

        With one divisor the remainder is zero exactly when ``g`` divides
        ``self``, since a principal ideal's generator is a Groebner basis.
        """
        g = self._lift(g)
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        norm = field.normalize
        lg, lc = g.leading_term()
        inv_lc = field.inv(lc)
        rem = dict(self.terms)
        quot: dict = {}
        out_rem: dict = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, lg)):
                shift = tuple(a - b for a, b in zip(e, lg))
                q = norm(c * inv_lc)
                quot[shift] = q
                for eg, cg in g.terms.items():
                    if eg == lg:
                        continue
                    ee = tuple(a + b for a, b in zip(eg, shift))
                    v = norm(rem.get(ee, 0) - q * cg)
                    if v:
                        rem[ee] = v
                    else:
                        rem.pop(ee, None)
            else:
                out_rem[e] = c
        return Poly(self.ring, quot), Poly(self.ring, out_rem)

    def divides(self, f: "Poly") -> bool:
        return f.divmod(self)[1].is_zero()

    def divide_exact(self, g: "Poly") -> "Poly":
        q, r = self.divmod(g)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    # -- calculus and evaluation ----------------------------------------------------

    def diff(self, var) -> "Poly":
        i = self.ring.index[var] if isinstance(var, str) else var
        norm = self.field.normalize
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = norm(c * k)
                if v:
                    ne = list(e)
                    ne[i] = k - 1
                    out[tuple(ne)] = v
        return Poly(self.ring, out)

    def gradient(self) -> tuple["Poly", ...]:
        return tuple(self.diff(i) for i in range(self.nvars))

    def evaluate(self, point: Sequence):
        """Value at a point given as raw field elements (or convertibles)."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        field = self.field
        pt = [field.convert(x) for x in point]
        total = 0
        if isinstance(field, PrimeField):
            p = field.p
            for e, c in self.terms.items():
                v = c
                for x, k in zip(pt, e):
                    if k:
                        v = v * pow(x, k, p) % p
                total += v
            return total % p
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total += v
        return field.normalize(total)

    def __call__(self, *point):
        return self.evaluate(point)

    def substitute(self, images: Sequence["Poly"], ring: PolyRing | None = None) -> "Poly":
        """Ring homomorphism sending the i-th variable to ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError(
                f"arity mismatch: {self.nvars} variables but {len(images)} images"
            )
        if ring is None:
            polys = [im for im in images if isinstance(im, Poly)]
            if not polys:
                raise ValueError("target ring unknown; pass ring=")
            ring = polys[0].ring
        imgs = []
        for im in images:
            if isinstance(im, Poly):
                if im.ring != ring:
                    raise DomainError("substitution images live in different rings")
                imgs.append(im)
            else:
                imgs.append(ring.constant(im))
        if ring.field != self.field:
            raise DomainError("substitution target has a different field")
        cache: dict[tuple[int, int], Poly] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = imgs[i] ** k
            return cache[key]

        acc: dict = {}
        norm = ring.field.normalize
        for e, c in self.terms.items():
            term = ring.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Poly(ring, {e: v for e, v in ((e, norm(v)) for e, v in acc.items()) if v})

    def specialize(self, assignments: Mapping[str, object]) -> "Poly":
        """Set some variables to field values; the result keeps only the rest."""
        idx = self.ring.index
        fixed = {idx[n]: self.field.convert(v) for n, v in assignments.items()}
        keep = [i for i in range(self.nvars) if i not in fixed]
        ring = PolyRing(tuple(self.ring.names[i] for i in keep), self.field)
        norm = self.field.normalize
        field = self.field
        acc: dict = {}
        for e, c in self.terms.items():
            v = c
            for i, x in fixed.items():
                if e[i]:
                    v = v * (pow(x, e[i], field.p) if isinstance(field, PrimeField) else x ** e[i])
            ne = tuple(e[i] for i in keep)
            acc[ne] = acc.get(ne, 0) + v
        return Poly(ring, {e: v for e, v in ((e, norm(v)) for e, v in acc.items()) if v})

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Move into ``ring``: rename-by-name embedding and/or QQ -> GF(p) reduction."""
        idx = ring.index
        try:
            pos = [idx[n] for n in self.ring.names]
        except KeyError as exc:
            used = set(self.variables())
            if exc.args[0] in used:
                raise DomainError(f"variable {exc.args[0]} missing from target ring") from None
            pos = [idx.get(n, -1) for n in self.ring.names]
        field = ring.field
        if field != self.field and not (self.field == QQ):
            raise DomainError(f"cannot map {self.field!r} coefficients into {field!r}")
        out: dict = {}
        norm = field.normalize
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    ne[pos[i]] = k
            v = field.convert(c) if field != self.field else c
            key = tuple(ne)
            out[key] = norm(out.get(key, 0) + v)
        return Poly(ring, {e: v for e, v in out.items() if v})

    def coefficients_in(self, names: Sequence[str]) -> dict[tuple[int, ...], "Poly"]:
        """View as a polynomial in ``names`` with coefficients in the other variables."""
        idx = self.ring.index
        sel = [idx[n] for n in names]
        rest = [i for i in range(self.nvars) if i not in sel]
        coeff_ring = PolyRing(tuple(self.ring.names[i] for i in rest), self.field)
        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in sel)
            groups.setdefault(key, {})[tuple(e[i] for i in rest)] = c
        return {k: Poly(coeff_ring, v) for k, v in groups.items()}

    # -- normalisation ------------------------------------------------------------

    def canonical(self) -> "Poly":
        """Representative of the scalar class of ``self``.

        Over QQ: clear denominators, divide by the integer content and make the
        leading coefficient positive.  Over GF(p): make it monic.
        """
        if not self.terms:
            return self
        field = self.field
        _, lc = self.leading_term()
        if isinstance(field, PrimeField):
            return self.scale(field.inv(lc))
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        if lc < 0:
            g = -g
        return Poly(self.ring, {e: v // g for e, v in ints.items()})

    def is_scalar_multiple_of(self, other: "Poly") -> bool:
        """True iff ``self = c * other`` for some scalar c (zero allowed)."""
        other = self._lift(other)
        if not self.terms:
            return True
        if not other.terms:
            return False
        return self.canonical() == other.canonical()

    def scalar_ratio(self, other: "Poly"):
        """The scalar c with ``self == c * other``; raises if none exists."""
        other = self._lift(other)
        if not self.terms:
            return 0
        e, c = other.leading_term()
        r = self.field.div(self.terms.get(e, 0), c)
        if self != other.scale(r):
            raise ArithmeticError("not a scalar multiple")
        return r

    # -- printing -----------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!s}; {','.join(self.ring.names)}; {self.field!r})"


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    field = f.field
    pieces = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        if isinstance(field, PrimeField):
            sign, mag = "+", c
        else:
            sign, mag = ("-", -c) if c < 0 else ("+", c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),]))")


class _Parser:
    """Recursive-descent parser for the shared polynomial text grammar."""

    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str):
        tokens = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character {text[i]!r} at position {i}", text[i])
            num, name, op = m.groups()
            if num is not None:
                tokens.append(("num", num))
            elif name is not None:
                tokens.append(("name", name))
            else:
                tokens.append(("op", "^" if op == "**" else op))
            i = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty polynomial", "")
        f = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()[1]!r}", self.peek()[1])
        return f

    def expr(self) -> Poly:
        f = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Poly:
        f = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            g = self.unary()
            if op == "*":
                f = f * g
            else:
                if not g.is_constant() or g.is_zero():
                    raise ParseError("division only by nonzero constants", "/")
                f = f / g.constant_value()
        return f

    def unary(self) -> Poly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer, got {val!r}", str(val))
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.ring.index:
                raise ParseError(
                    f"unknown variable {val!r}; expected one of {', '.join(self.ring.names)}", val
                )
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing closing parenthesis", "(")
            return f
        if kind is None:
            raise ParseError("unexpected end of input", "<end>")
        raise ParseError(f"unexpected token {val!r}", val)


KNOWN_NAMES = re.compile(r"^(x[0-5]|y[0-5]|l[0-2]|t)$")


def names_in(text: str) -> list[str]:
    """Variable names appearing in a polynomial string, in order of appearance."""
    seen = []
    for tok in _Parser._tokenize(text):
        if tok[0] == "name" and tok[1] not in seen:
            seen.append(tok[1])
    return seen


def parse_poly(text: str, names: Iterable[str], field=QQ) -> Poly:
    return PolyRing(tuple(names), field).parse(text)
