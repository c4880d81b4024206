"""Deformations F_ijk(t) = t*x_i*x_j*x_k + sum x_l^3 of the Fermat cubic.

Covers their polar matrices and discriminants, the Hesse-pencil
degenerations of the cubic factor, the restriction to the fixed plane N0
and the order of contact of the resulting pencil of sextics at t = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactalg import (
    GF,
    QQ,
    Matrix,
    Poly,
    PolyRing,
    det_poly_matrix,
    rank,
    roots_mod_p,
)
from .nets import NetOfQuadrics, PlaneInP5, restrict_to_plane
from .polar import Y_NAMES, cubic_ring, polar_matrix

ALL_TRIPLES = tuple(combinations(range(6), 3))


@dataclass(frozen=True)
class DeformationFamily:
    i: int
    j: int
    k: int

    def __post_init__(self):
        idx = (self.i, self.j, self.k)
        if len(set(idx)) != 3 or not all(0 <= v < 6 for v in idx):
            raise ValueError(f"need three distinct indices in 0..5, got {idx}")

    @property
    def triple(self) -> tuple[int, int, int]:
        return tuple(sorted((self.i, self.j, self.k)))

    @property
    def complement(self) -> tuple[int, int, int]:
        return tuple(v for v in range(6) if v not in self.triple)

    def cubic(self, field=QQ) -> Poly:
        ring = cubic_ring(("t",), field)
        x = ring.gens()
        F = ring.gen("t") * x[self.i] * x[self.j] * x[self.k]
        for l in range(6):
            F = F + x[l] ** 3
        return F

    def __str__(self):
        return f"F_{self.i}{self.j}{self.k}(t)"


def family_polar_matrix(fam: DeformationFamily) -> list[list[Poly]]:
    """Symmetric 6x6 matrix of sum y_l dF/dx_l over QQ[t, y0..y5]."""
    return polar_matrix(fam.cubic())


def family_discriminant(fam: DeformationFamily) -> Poly:
    return det_poly_matrix(family_polar_matrix(fam))


def discriminant_ring(field=QQ) -> PolyRing:
    return PolyRing(("t",) + Y_NAMES, field)


def hesse_cubic(fam: DeformationFamily, ring: PolyRing | None = None) -> Poly:
    """(27 + t^3/4) y_i y_j y_k - (3/4) t^2 (y_i^3 + y_j^3 + y_k^3)."""
    ring = ring or discriminant_ring()
    t = ring.gen("t")
    a, b, c = (ring.gen(f"y{v}") for v in fam.triple)
    return (t**3 * Fraction(1, 4) + 27) * a * b * c - t**2 * Fraction(3, 4) * (a**3 + b**3 + c**3)


def closed_form_discriminant(fam: DeformationFamily) -> Poly:
    """27 y_a y_b y_c times the Hesse cubic, {a,b,c} the complement of the triple."""
    ring = discriminant_ring()
    a, b, c = (ring.gen(f"y{v}") for v in fam.complement)
    return a * b * c * 27 * hesse_cubic(fam, ring)


# -- Hesse degenerations ---------------------------------------------------------------

# 27 + t^3/4 = (9/4) w t^2 with w = 1 clears to t^3 - 9 t^2 + 108 = 0
RATIONAL_BRANCH = (108, 0, -9, 1)


def rational_roots(coeffs: Sequence[int]) -> list[tuple[Fraction, int]]:
    """Rational roots, with multiplicity, of an integer polynomial (low degree first).

    Rational root test: candidates are +-(divisor of a_0)/(divisor of a_n).
    """
    from sympy import divisors

    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    out = []
    zero_mult = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        zero_mult += 1
    if zero_mult:
        out.append((Fraction(0), zero_mult))
    if len(coeffs) < 2:
        return out
    cands = {
        Fraction(s * num, den)
        for num in divisors(abs(coeffs[0]))
        for den in divisors(abs(coeffs[-1]))
        for s in (1, -1)
    }
    for r in sorted(cands):
        mult = 0
        cur = [Fraction(c) for c in coeffs]
        while len(cur) > 1 and poly_value(cur, r) == 0:
            # synthetic division by (t - r)
            q = [Fraction(0)] * (len(cur) - 1)
            acc = Fraction(0)
            for k in range(len(cur) - 1, 0, -1):
                acc = cur[k] + acc * r
                q[k - 1] = acc
            cur = q
            mult += 1
        if mult:
            out.append((r, mult))
    return out


def poly_value(coeffs: Sequence, x) -> Fraction:
    return sum(Fraction(c) * Fraction(x) ** k for k, c in enumerate(coeffs))


def three_line_factors(w: int, field) -> list[tuple[int, int, int]]:
    """The lines a + zeta^m b + zeta^(2m+w) c, m = 0, 1, 2, as coefficient triples.

    Their product is a^3 + b^3 + c^3 - 3 zeta^w abc over GF(p).
    """
    p = field.p
    zeta = field.cube_root_of_unity()
    z = [pow(zeta, m, p) for m in range(3)]
    return [(1, z[m], z[(2 * m + w) % 3]) for m in range(3)]


@dataclass
class SplittingCertificate:
    t: object
    prime: int
    lines: list[tuple[int, int, int]]
    scalar: int
    certified: bool


@dataclass
class HesseReport:
    rational_roots: list[tuple[Fraction, int]]
    rational_certificates: list[SplittingCertificate]
    branch_cubics: dict[int, tuple[int, ...]]
    branch_roots: dict[int, list[int]]
    branch_certificates: list[SplittingCertificate]
    prime: int
    zeta: int


def _certify_split(fam: DeformationFamily, t_value, field, w: int) -> SplittingCertificate:
    """Divide the cubic factor at t by the three lines over GF(p) and check the quotient is a scalar."""
    ring = PolyRing(tuple(f"y{v}" for v in fam.triple), field)
    C = hesse_cubic(fam, discriminant_ring(field)).specialize({"t": t_value, **{
        f"y{v}": 0 for v in fam.complement}})
    C = C.to_ring(ring)
    lines = three_line_factors(w, field)
    q = C
    for L in lines:
        q, r = q.divmod(ring.linear_form(L))
        if r:
            return SplittingCertificate(t_value, field.p, lines, 0, False)
    ok = q.is_constant() and not q.is_zero()
    return SplittingCertificate(t_value, field.p, lines, q.constant_value() if ok else 0, ok)


def hesse_degenerations(fam: DeformationFamily, prime: int | None = None, seed: int = 0) -> HesseReport:
    """Values of t where the cubic factor degenerates into three lines.

    The rational branch is solved exactly over QQ; the two branches involving a
    primitive cube root of unity zeta are handled over GF(p), p = 1 mod 3.
    """
    from .exactalg import random_prime

    rng = random.Random(seed)
    p = prime or random_prime(rng, 31, residue=(1, 3))
    if p % 3 != 1:
        raise ValueError("the prime must be 1 mod 3 to contain zeta")
    field = GF(p)
    zeta = field.cube_root_of_unity()
    roots = rational_roots(RATIONAL_BRANCH)
    rational_certs = [_certify_split(fam, r, field, 0) for r, _ in roots]
    branch_cubics = {}
    branch_roots = {}
    branch_certs = []
    for w in (1, 2):
        zw = pow(zeta, w, p)
        # t^3 - 9 zeta^w t^2 + 108 = 0 over GF(p)
        coeffs = (108, 0, (-9 * zw) % p, 1)
        branch_cubics[w] = coeffs
        rts = roots_mod_p(coeffs, p, rng)
        branch_roots[w] = rts
        for r in rts:
            branch_certs.append(_certify_split(fam, r, field, w))
    return HesseReport(roots, rational_certs, branch_cubics, branch_roots, branch_certs, p, zeta)


# -- the plane N0 and the sextic pencil ---------------------------------------------------


def n0_plane(fam: DeformationFamily) -> PlaneInP5:
    """The fixed plane, with coordinates (y_i, y_j, y_k) and the complement eliminated.

    For (1,3,5): y0 = y1+y3-y5, y2 = y1-y3+2y5, y4 = y1+2y3+3y5.
    """
    i, j, k = fam.triple
    a, b, c = fam.complement
    eqs = []
    for tgt, coeffs in ((a, (1, 1, -1)), (b, (1, -1, 2)), (c, (1, 2, 3))):
        row = [0] * 6
        row[tgt] = 1
        for idx, cf in zip((i, j, k), coeffs):
            row[idx] -= cf
        eqs.append(tuple(row))
    param = []
    for idx in (i, j, k):
        row = [0] * 6
        row[idx] = 1
        for tgt, coeffs in ((a, (1, 1, -1)), (b, (1, -1, 2)), (c, (1, 2, 3))):
            row[tgt] = coeffs[(i, j, k).index(idx)]
        param.append(tuple(row))
    return PlaneInP5(param=tuple(param), equations=tuple(eqs))


def n0_lines(fam: DeformationFamily, ring: PolyRing | None = None) -> tuple[Poly, Poly, Poly]:
    ring = ring or pencil_ring(fam)
    a, b, c = ring.gens()[-3:]
    return (a + b - c, a - b + c * 2, a + b * 2 + c * 3)


def pencil_ring(fam: DeformationFamily, field=QQ) -> PolyRing:
    return PolyRing(tuple(f"y{v}" for v in fam.triple), field)


@dataclass
class SexticPencil:
    """D(t) = sum_m t^m D_m with ternary sextics D_m."""

    coefficients: list[Poly]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0].is_zero():
            raise ValueError("D_0 must be nonzero")

    @property
    def ring(self) -> PolyRing:
        return self.coefficients[0].ring

    def at(self, t0) -> Poly:
        out = self.ring.zero
        t0 = self.ring.field.convert(t0)
        for m, D in enumerate(self.coefficients):
            if D:
                out = out + D * (t0**m)
        return out


def restrict_to_N0(fam: DeformationFamily) -> SexticPencil:
    """Expand the discriminant on N0 in powers of t."""
    D = restrict_to_plane(family_discriminant(fam), n0_plane(fam))
    target = pencil_ring(fam)
    by_t = D.coefficients_in(("t",))
    top = max(e[0] for e in by_t) if by_t else 0
    coeffs = []
    for m in range(max(top, 3) + 1):
        c = by_t.get((m,))
        coeffs.append(Poly(target, c.terms) if c is not None else target.zero)
    return SexticPencil(coeffs)


def tangency_order(pencil: SexticPencil) -> int | str:
    """Least m >= 1 with D_m not a scalar multiple of D_0, else 'infinite'."""
    D0 = pencil.coefficients[0]
    for m, Dm in enumerate(pencil.coefficients[1:], start=1):
        if not Dm.is_scalar_multiple_of(D0):
            return m
    return "infinite"


# -- quadric ranks --------------------------------------------------------------------------


def quadric_rank_at(source, point: Sequence, t0=None) -> int:
    """Rank of the symmetric matrix of a net (or of a family polar matrix) at a point.

    ``source`` is a :class:`NetOfQuadrics` (point in net coordinates) or a 6x6
    polynomial matrix over (t, y0..y5) (point in P^5, with ``t0`` for t).
    """
    if isinstance(source, NetOfQuadrics):
        M = source.pencil_matrix()
        ring = M[0][0].ring
        names = ring.names
        prm = names[:-3]
        values = list(point)
        if len(values) != 3:
            raise ValueError("net points have three coordinates")
    else:
        M = source
        ring = next(x for row in M for x in row).ring
        names = ring.names
        prm = names[:-6]
        values = list(point)
        if len(values) != 6:
            raise ValueError("points of P^5 have six coordinates")
    if not any(ring.field.convert(v) for v in values):
        raise ValueError("the zero vector is not a point")
    if prm:
        if t0 is None:
            raise ValueError("a parametric matrix needs t0")
        values = [t0] * len(prm) + values
    mat = [[e.evaluate(values) for e in row] for row in M]
    return rank(Matrix(mat, ring.field, ncols=6))


# -- explicit singular points of D(t0) -----------------------------------------------------


@dataclass
class PencilNodeReport:
    t0: object
    delta: int | None
    prime: int
    points: list[tuple]
    kinds: list[str]
    independent_rank: int
    general_position: bool
    primes_tried: int


def pencil_member_components(fam: DeformationFamily, t0, field=QQ) -> list[Poly]:
    """L1, L2, L3 and the cubic factor of D(t0) on N0, over ``field``."""
    ring = pencil_ring(fam, field)
    lines = n0_lines(fam, ring)
    cubic = hesse_cubic(fam, discriminant_ring(field)).specialize({"t": t0})
    cubic = cubic.to_ring(ring) * 729
    return list(lines) + [cubic]


def pencil_nodes(fam: DeformationFamily, t0=1, seed: int = 0, max_primes: int = 2000) -> PencilNodeReport:
    """Explicit singular points of D(t0) over a prime where every line meets the cubic in 3 points.

    The points are irrational over QQ in general, so they are found over GF(p)
    for a seeded prime p that splits the three restricted cubics.  Full rank of
    the sextic evaluation matrix mod p implies full rank in characteristic 0.
    """
    from .exactalg import random_prime
    from .sexticlab import (
        classify_singular_point,
        jacobian_scheme_degree,
        nodes_impose_independent_conditions,
        product_singular_points,
    )

    D = restrict_to_N0(fam).at(t0)
    delta = jacobian_scheme_degree(D).delta
    rng = random.Random(seed)
    for tried in range(1, max_primes + 1):
        p = random_prime(rng, 31)
        field = GF(p)
        comps = [c.to_ring(pencil_ring(fam, field)) for c in pencil_member_components(fam, t0)]
        if any(c.is_zero() for c in comps):
            continue
        pts = product_singular_points(comps, rng)
        if len(pts) != 12:
            continue
        Dp = D.to_ring(pencil_ring(fam, field))
        kinds = [classify_singular_point(Dp, q) for q in pts]
        r, _ = nodes_impose_independent_conditions(pts, 6, field)
        return PencilNodeReport(t0, delta, p, pts, kinds, r, all(k == "node" for k in kinds), tried)
    raise RuntimeError(f"no splitting prime found in {max_primes} attempts")
