"""Nets of quadrics, planes of polar quadrics and their discriminant sextics."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .exactalg import QQ, Matrix, Poly, PolyRing, det_poly_matrix, kernel_basis, rank, rref
from .polar import QuadraticForm, Y_NAMES, check_cubic, polar_matrix, polar_quadric

NET_NAMES = ("l0", "l1", "l2")


class DegenerateNetError(ValueError):
    pass


class PlaneError(ValueError):
    pass


@dataclass(frozen=True)
class PlaneInP5:
    """A plane in P^5 given by a 3 x 6 parametrisation and/or 3 linear equations.

    Rows of ``param`` span the plane; rows of ``equations`` are linear forms
    vanishing on it.  Missing halves are filled in by :func:`plane_conversion`.
    """

    param: tuple[tuple, ...] | None = None
    equations: tuple[tuple, ...] | None = None
    field: object = QQ

    def __post_init__(self):
        if self.param is None and self.equations is None:
            raise PlaneError("a plane needs a parametrisation or equations")
        conv = self.field.convert
        for name in ("param", "equations"):
            rows = getattr(self, name)
            if rows is None:
                continue
            rows = tuple(tuple(conv(x) for x in r) for r in rows)
            if len(rows) != 3 or any(len(r) != 6 for r in rows):
                raise PlaneError(f"{name} must be a 3 x 6 matrix")
            if rank(Matrix(rows, self.field)) != 3:
                raise PlaneError(f"{name} has rank < 3")
            object.__setattr__(self, name, rows)
        if self.param is not None and self.equations is not None:
            norm = self.field.normalize
            for eq in self.equations:
                for row in self.param:
                    if norm(sum(a * b for a, b in zip(eq, row))):
                        raise PlaneError("equations do not vanish on the parametrisation")

    def same_plane(self, other: "PlaneInP5") -> bool:
        a, b = plane_conversion(self), plane_conversion(other)
        return rref(Matrix(a.param, self.field))[1] == rref(Matrix(b.param, other.field))[1]

    def substitution(self, ring: PolyRing) -> list[Poly]:
        """Images of y0..y5 as linear forms in the three variables of ``ring``."""
        P = plane_conversion(self).param
        gens = ring.gens()[-3:]
        out = []
        for j in range(6):
            f = ring.zero
            for i in range(3):
                if P[i][j]:
                    f = f + gens[i] * P[i][j]
            out.append(f)
        return out


def plane_conversion(plane: PlaneInP5) -> PlaneInP5:
    """Fill in whichever representation is missing (both are kernels of the other)."""
    if plane.param is not None and plane.equations is not None:
        return plane
    if plane.param is not None:
        eqs = kernel_basis(Matrix(plane.param, plane.field))
        return PlaneInP5(param=plane.param, equations=tuple(map(tuple, eqs)), field=plane.field)
    par = kernel_basis(Matrix(plane.equations, plane.field))
    return PlaneInP5(param=tuple(map(tuple, par)), equations=plane.equations, field=plane.field)


def random_plane(rng: random.Random, bound: int = 5, field=QQ) -> PlaneInP5:
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(6)] for _ in range(3)]
        if rank(Matrix(rows, field)) == 3:
            return PlaneInP5(param=tuple(map(tuple, rows)), field=field)


class NetOfQuadrics:
    """An ordered triple of independent quadratic forms in x0..x5."""

    def __init__(self, forms: Sequence[QuadraticForm], check: bool = True, seed: int = 0):
        forms = tuple(forms)
        if len(forms) != 3:
            raise DegenerateNetError("a net needs exactly three quadrics")
        rings = {q.ring for q in forms}
        if len(rings) != 1:
            raise DegenerateNetError("the three quadrics live in different rings")
        self.forms = forms
        if check and not self.independent(seed):
            raise DegenerateNetError("the three quadrics are linearly dependent")

    @classmethod
    def from_matrices(cls, matrices, field=None) -> "NetOfQuadrics":
        return cls([QuadraticForm.from_matrix(M) for M in matrices])

    @property
    def ring(self) -> PolyRing:
        return self.forms[0].ring

    @property
    def params(self):
        return self.forms[0].params

    def specialize(self, values: dict) -> "NetOfQuadrics":
        return NetOfQuadrics([q.specialize(values) for q in self.forms], check=False)

    def coefficient_matrix(self) -> Matrix:
        return Matrix([q.coefficient_vector() for q in self.forms], self.ring.field, ncols=21)

    def independent(self, seed: int = 0) -> bool:
        """Independence over the coefficient field (parametric nets: at a seeded random value)."""
        net = self
        if self.params:
            rng = random.Random(seed)
            net = self.specialize(
                {n: Fraction(rng.randint(-997, 997), rng.randint(1, 997)) for n in self.params}
            )
        return rank(net.coefficient_matrix()) == 3

    def same_span(self, other: "NetOfQuadrics") -> bool:
        """Equality as points of the Grassmannian (row spans of the 3 x 21 matrices)."""
        return rref(self.coefficient_matrix())[1] == rref(other.coefficient_matrix())[1]

    def matrices(self) -> list[list[list]]:
        return [q.matrix() for q in self.forms]

    def pencil_matrix(self) -> list[list[Poly]]:
        """The symmetric matrix l0*M0 + l1*M1 + l2*M2 over (parameters..., l0, l1, l2)."""
        ring = discriminant_ring(self.ring)
        ls = ring.gens()[-3:]
        M = [[ring.zero] * 6 for _ in range(6)]
        for l, Mi in zip(ls, self.matrices()):
            for a in range(6):
                for b in range(6):
                    e = Mi[a][b]
                    if isinstance(e, Poly):
                        if e:
                            M[a][b] = M[a][b] + e.to_ring(ring) * l
                    elif e:
                        M[a][b] = M[a][b] + l * e
        return M

    def acted_on(self, A) -> "NetOfQuadrics":
        """Net with forms sum_i A[i][j] * Q_i (change of net coordinates)."""
        new = []
        for j in range(3):
            q = self.ring.zero
            for i in range(3):
                if A[i][j]:
                    q = q + self.forms[i].poly * A[i][j]
            new.append(QuadraticForm(q))
        return NetOfQuadrics(new, check=False)

    def congruent(self, P) -> "NetOfQuadrics":
        """Net with matrices P^T M_i P."""
        out = []
        for Mi in self.matrices():
            n = 6
            PM = [[sum(P[k][a] * Mi[k][b] for k in range(n)) for b in range(n)] for a in range(n)]
            PMP = [[sum(PM[a][k] * P[k][b] for k in range(n)) for b in range(n)] for a in range(n)]
            out.append(QuadraticForm.from_matrix(PMP, self.ring))
        return NetOfQuadrics(out, check=False)

    def __repr__(self):
        return "NetOfQuadrics(" + "; ".join(str(q) for q in self.forms) + ")"


def discriminant_ring(form_ring: PolyRing) -> PolyRing:
    return PolyRing(form_ring.names[6:] + NET_NAMES, form_ring.field)


@dataclass(frozen=True)
class PlaneSextic:
    """det of a net's matrix; ``improper`` when it vanishes identically."""

    poly: Poly
    improper: bool = dc_field(default=False)

    @property
    def degree(self):
        return self.poly.degree


def discriminant_sextic(net: NetOfQuadrics) -> PlaneSextic:
    d = det_poly_matrix(net.pencil_matrix())
    return PlaneSextic(d, improper=d.is_zero())


def net_from_plane(F: Poly, plane: PlaneInP5, seed: int = 0) -> NetOfQuadrics:
    """The net of polar quadrics of the points spanning ``plane``."""
    check_cubic(F)
    P = plane_conversion(plane).param
    quads = [polar_quadric(F, [F.field.convert(x) for x in row]) for row in P]
    try:
        return NetOfQuadrics(quads, seed=seed)
    except DegenerateNetError as exc:
        raise DegenerateNetError(f"plane gives a degenerate net: {exc}") from None


def full_discriminant(F: Poly) -> Poly:
    """det of the general polar quadric, a sextic in (parameters..., y0..y5)."""
    return det_poly_matrix(polar_matrix(F))


def restrict_to_plane(D: Poly, plane: PlaneInP5) -> Poly:
    """Pull back a polynomial in (parameters..., y0..y5) along the plane parametrisation."""
    prm = D.ring.names[:-6]
    if D.ring.names[-6:] != Y_NAMES:
        raise ValueError("expected y0..y5 as the last variables")
    ring = PolyRing(prm + NET_NAMES, D.field)
    gens = ring.gens()
    images = list(gens[: len(prm)]) + plane.substitution(ring)
    return D.substitute(images, ring)
