"""Polar quadrics of cubic forms in six variables.

A cubic lives in the ring ``x0..x5`` optionally followed by parameter
variables (``t``).  Quadratic forms keep the same ring; their symmetric
matrices have entries in the parameter ring.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

from .exactalg import QQ, Matrix, Poly, PolyRing, monomials, rank

X_NAMES = tuple(f"x{i}" for i in range(6))
Y_NAMES = tuple(f"y{i}" for i in range(6))


class InvalidPointError(ValueError):
    pass


def cubic_ring(params: Sequence[str] = (), field=QQ) -> PolyRing:
    return PolyRing(X_NAMES + tuple(params), field)


def params_of(ring: PolyRing) -> tuple[str, ...]:
    if ring.names[:6] != X_NAMES:
        raise ValueError(f"expected variables x0..x5 first, got {ring.names}")
    return ring.names[6:]


def parse_cubic(text: str, params: Sequence[str] = (), field=QQ) -> Poly:
    return check_cubic(cubic_ring(params, field).parse(text))


def check_cubic(F: Poly) -> Poly:
    params_of(F.ring)
    if F.is_zero():
        raise ValueError("the zero polynomial does not define a cubic fourfold")
    for e in F.terms:
        if sum(e[:6]) != 3:
            raise ValueError(f"{F} is not homogeneous of degree 3 in x0..x5")
    return F


def fermat_cubic(field=QQ) -> Poly:
    return sum((g**3 for g in cubic_ring(field=field).gens()), cubic_ring(field=field).zero)


class QuadraticForm:
    """A quadratic form q(x) = x^T M x in x0..x5 (coefficients may involve parameters)."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        params_of(poly.ring)
        for e in poly.terms:
            if sum(e[:6]) != 2:
                raise ValueError(f"{poly} is not a quadratic form in x0..x5")
        self.poly = poly

    @classmethod
    def from_matrix(cls, M, ring: PolyRing | None = None) -> "QuadraticForm":
        """Form with symmetric matrix ``M`` of scalars or parameter-ring polynomials."""
        if ring is None:
            ring = cubic_ring(field=_matrix_field(M))
        xs = ring.gens()[:6]
        q = ring.zero
        for a in range(6):
            for b in range(6):
                if M[a][b] != M[b][a]:
                    raise ValueError("matrix is not symmetric")
                entry = M[a][b]
                if isinstance(entry, Poly):
                    entry = entry.to_ring(ring)
                q = q + xs[a] * xs[b] * entry
        return cls(q)

    @property
    def ring(self) -> PolyRing:
        return self.poly.ring

    @property
    def params(self) -> tuple[str, ...]:
        return params_of(self.ring)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def matrix(self) -> list[list]:
        """Symmetric 6x6 matrix; entries are raw scalars when there are no parameters."""
        field = self.poly.field
        half = field.inv(2)
        by_x = self.poly.coefficients_in(X_NAMES)
        prm = self.params
        zero = 0 if not prm else PolyRing(prm, field).zero
        M = [[zero] * 6 for _ in range(6)]
        for e, c in by_x.items():
            idx = [i for i in range(6) for _ in range(e[i])]
            a, b = idx
            val = c.constant_value() if not prm else c
            if a == b:
                M[a][a] = val
            else:
                v = field.normalize(val * half) if not prm else val * half
                M[a][b] = M[b][a] = v
        return M

    def coefficient_vector(self) -> list:
        """Coefficients on the 21 quadratic monomials (graded-lex); scalar forms only."""
        if self.params:
            raise ValueError("coefficient vector of a parametric form")
        return [self.poly.coefficient(e) for e in monomials(6, 2)]

    def specialize(self, values: dict) -> "QuadraticForm":
        return QuadraticForm(self.poly.specialize(values))

    def __add__(self, other: "QuadraticForm"):
        return QuadraticForm(self.poly + other.poly)

    def __mul__(self, c):
        return QuadraticForm(self.poly * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QuadraticForm) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"QuadraticForm({self.poly})"

    def __str__(self):
        return str(self.poly)


def _matrix_field(M):
    from .exactalg.linalg import infer_field

    return infer_field([x for row in M for x in row if not isinstance(x, Poly)])


def partials(F: Poly) -> tuple[QuadraticForm, ...]:
    """The six first partial derivatives of F with respect to x0..x5."""
    check_cubic(F)
    return tuple(QuadraticForm(F.diff(i)) for i in range(6))


def polar_quadric(F: Poly, point: Sequence) -> QuadraticForm:
    """The polar quadric sum p_i dF/dx_i of the point p of P^5."""
    check_cubic(F)
    field = F.field
    p = [field.convert(x) for x in point]
    if len(p) != 6:
        raise InvalidPointError(f"need 6 homogeneous coordinates, got {len(p)}")
    if not any(p):
        raise InvalidPointError("the zero vector is not a point of P^5")
    q = F.ring.zero
    for c, d in zip(p, partials(F)):
        if c:
            q = q + d.poly * c
    return QuadraticForm(q)


def coefficient_matrix(F: Poly) -> Matrix:
    """The 6 x 21 matrix whose rows are the partials' coefficient vectors."""
    return Matrix([d.coefficient_vector() for d in partials(F)], F.field, ncols=21)


def polar_dimension(F: Poly) -> int:
    """dim J_X: rank of the span of the six partials.

    Parametric cubics must be specialised first (see :func:`generic_polar_dimension`).
    """
    if params_of(F.ring):
        raise ValueError("specialise the parameters before computing the polar dimension")
    return rank(coefficient_matrix(F))


def generic_polar_dimension(F: Poly, seed: int = 0) -> tuple[int, dict]:
    """Polar dimension at a seeded random rational value of the parameters."""
    rng = random.Random(seed)
    values = {name: Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000)) for name in params_of(F.ring)}
    return polar_dimension(F.specialize(values)), values


def polar_matrix(F: Poly) -> list[list[Poly]]:
    """The symmetric matrix of the general polar quadric sum y_l dF/dx_l.

    Entries live in the ring (parameters..., y0..y5).
    """
    check_cubic(F)
    prm = params_of(F.ring)
    ring = PolyRing(prm + Y_NAMES, F.field)
    ys = ring.gens()[len(prm):]
    M = [[ring.zero] * 6 for _ in range(6)]
    for yl, d in zip(ys, partials(F)):
        Md = d.matrix()
        for a in range(6):
            for b in range(6):
                entry = Md[a][b]
                if isinstance(entry, Poly):
                    if entry.is_zero():
                        continue
                    M[a][b] = M[a][b] + entry.to_ring(ring) * yl
                elif entry:
                    M[a][b] = M[a][b] + yl * entry
    return M


def random_cubic(rng: random.Random, bound: int = 5, density: float = 1.0, field=QQ) -> Poly:
    """A seeded random cubic with small integer coefficients."""
    ring = cubic_ring(field=field)
    terms = {}
    for e in monomials(6, 3):
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                terms[e] = field.convert(c)
    if not terms:
        terms[monomials(6, 3)[0]] = 1
    return Poly(ring, terms)


def canonical_point(point: Sequence) -> tuple:
    """Integer primitive representative with positive first nonzero entry (QQ points)."""
    vals = [Fraction(x) for x in point]
    if not any(vals):
        raise InvalidPointError("the zero vector is not a projective point")
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    first = next(v for v in ints if v)
    if first < 0:
        g = -g
    return tuple(v // g for v in ints)
