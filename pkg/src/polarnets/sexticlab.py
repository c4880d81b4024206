"""Singularities of plane curves by linear algebra.

The node count of a reduced plane curve C = {f = 0} is read off the Hilbert
function of the Milnor algebra R/J, J = (f_x, f_y, f_z): in high degree
dim (R/J)_m equals the degree of the Jacobian scheme.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from .exactalg import (
    QQ,
    Matrix,
    Poly,
    PolyRing,
    PrimeField,
    binary_form_roots,
    kernel_basis,
    monomials,
    rank,
)

PLANE_NAMES = ("x0", "x1", "x2")


def plane_ring(field=QQ, names: Sequence[str] = PLANE_NAMES) -> PolyRing:
    return PolyRing(tuple(names), field)


def _check_ternary(C: Poly) -> int:
    if C.nvars != 3:
        raise ValueError(f"expected a ternary form, got variables {C.ring.names}")
    if C.is_zero():
        raise ValueError("the zero polynomial does not define a curve")
    if not C.is_homogeneous():
        raise ValueError(f"{C} is not homogeneous")
    return int(C.degree)


def _over(C: Poly, field) -> Poly:
    if field is None or field == C.field:
        return C
    return C.to_ring(C.ring.with_field(field))


# -- Jacobian scheme ----------------------------------------------------------------


@dataclass
class SingularPoint:
    coords: tuple
    kind: str  # "node" | "non-node" | "nonsingular"
    quadric_rank: int | None = None


@dataclass
class SingularReport:
    degree: int
    field: object
    hilbert: dict[int, int]
    delta: int | None
    status: str  # "smooth" | "singular" | "not-stabilized"
    points: list[SingularPoint] = dc_field(default_factory=list)

    @property
    def smooth(self) -> bool:
        return self.status == "smooth"

    @property
    def non_nodes(self) -> list[SingularPoint]:
        return [p for p in self.points if p.kind != "node"]


def hilbert_window(d: int) -> tuple[int, int, int]:
    start = max(3 * (d - 2) + 1, d - 1, 0)
    return (start, start + 1, start + 2)


def jacobian_multiplication_matrix(C: Poly, m: int) -> Matrix:
    """Rows mu * dC/dx_i for all monomials mu of degree m - (d-1), in degree-m coordinates."""
    d = _check_ternary(C)
    target = monomials(3, m)
    index = {e: i for i, e in enumerate(target)}
    grads = C.gradient()
    rows = []
    for mu in monomials(3, m - (d - 1)):
        for g in grads:
            if g.is_zero():
                continue
            row = [0] * len(target)
            for e, c in g.terms.items():
                row[index[(e[0] + mu[0], e[1] + mu[1], e[2] + mu[2])]] = c
            rows.append(row)
    return Matrix(rows, C.field, ncols=len(target))


def milnor_hilbert_value(C: Poly, m: int) -> int:
    """dim (R/J)_m."""
    M = jacobian_multiplication_matrix(C, m)
    return comb(m + 2, 2) - (rank(M) if M.nrows else 0)


def jacobian_scheme_degree(C: Poly, field=None) -> SingularReport:
    """Degree of the Jacobian scheme from three consecutive Hilbert values.

    ``field`` reduces a rational curve modulo a prime before computing.
    """
    C = _over(C, field)
    d = _check_ternary(C)
    values = {m: milnor_hilbert_value(C, m) for m in hilbert_window(d)}
    vals = set(values.values())
    if len(vals) != 1:
        return SingularReport(d, C.field, values, None, "not-stabilized")
    delta = vals.pop()
    return SingularReport(d, C.field, values, delta, "smooth" if delta == 0 else "singular")


# -- points ----------------------------------------------------------------------


def _conv_point(point, field):
    pt = tuple(field.convert(x) for x in point)
    if len(pt) != 3:
        raise ValueError("plane points have three coordinates")
    if not any(pt):
        raise ValueError("the zero vector is not a point of P^2")
    return pt


def same_point(a, b, field) -> bool:
    norm = field.normalize
    return all(
        norm(a[i] * b[j] - a[j] * b[i]) == 0 for i in range(3) for j in range(i + 1, 3)
    )


def normalize_point(pt, field) -> tuple:
    """Scale so the last nonzero coordinate is 1."""
    k = max(i for i in range(3) if pt[i])
    inv = field.inv(pt[k])
    return tuple(field.normalize(x * inv) for x in pt)


def cross(a, b, field) -> tuple:
    n = field.normalize
    return (
        n(a[1] * b[2] - a[2] * b[1]),
        n(a[2] * b[0] - a[0] * b[2]),
        n(a[0] * b[1] - a[1] * b[0]),
    )


def linear_coeffs(L: Poly) -> tuple:
    if not L.is_homogeneous(1) or L.nvars != 3:
        raise ValueError(f"{L} is not a linear form in three variables")
    return tuple(L.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def classify_singular_point(C: Poly, point) -> str:
    """'node', 'non-node' or 'nonsingular' for a point on the curve C = 0.

    Moves the point to (0:0:1) by a linear change of coordinates, sets the last
    coordinate to 1 and inspects the linear and quadratic parts at the origin.
    """
    _check_ternary(C)
    field = C.field
    pt = _conv_point(point, field)
    k = next(i for i in range(3) if pt[i])
    others = [i for i in range(3) if i != k]
    ring = C.ring
    u = ring.gens()
    images = []
    for r in range(3):
        f = u[2] * pt[r] if pt[r] else ring.zero
        if r == others[0]:
            f = f + u[0]
        elif r == others[1]:
            f = f + u[1]
        images.append(f)
    g = C.substitute(images, ring)
    parts: dict[int, dict] = {0: {}, 1: {}, 2: {}}
    for e, c in g.terms.items():
        local = e[0] + e[1]
        if local <= 2:
            parts[local][(e[0], e[1])] = c
    if parts[0]:
        raise ValueError(f"point {point} is not on the curve")
    if parts[1]:
        return "nonsingular"
    q = parts[2]
    a, b, c = q.get((2, 0), 0), q.get((1, 1), 0), q.get((0, 2), 0)
    disc = field.normalize(b * b - 4 * a * c)
    return "node" if disc else "non-node"


def nodes_impose_independent_conditions(points: Sequence, d: int, field=QQ) -> tuple[int, bool]:
    """Rank of evaluating the degree-d monomials at the points, and whether it is full."""
    pts = [_conv_point(p, field) for p in points]
    for i in range(len(pts)):
        for j in range(i):
            if same_point(pts[i], pts[j], field):
                raise ValueError(f"repeated point {points[i]}")
    rows = []
    norm = field.normalize
    is_p = isinstance(field, PrimeField)
    for pt in pts:
        row = []
        for e in monomials(3, d):
            v = 1
            for x, k in zip(pt, e):
                if k:
                    v = v * (pow(x, k, field.p) if is_p else x**k)
            row.append(norm(v))
        rows.append(row)
    r = rank(Matrix(rows, field, ncols=comb(d + 2, 2))) if rows else 0
    return r, r == len(pts)


def nodal_cubics_at(v, field=QQ, names: Sequence[str] = PLANE_NAMES) -> list[Poly]:
    """Basis of the cubics singular at v: kernel of the 3 x 10 gradient evaluations."""
    ring = plane_ring(field, names)
    pt = _conv_point(v, field)
    mons = monomials(3, 3)
    rows = []
    for i in range(3):
        row = []
        for e in mons:
            if e[i] == 0:
                row.append(0)
                continue
            d = list(e)
            d[i] -= 1
            val = e[i]
            for x, k in zip(pt, d):
                if k:
                    val = val * x**k
            row.append(field.normalize(val))
        rows.append(row)
    return [ring.from_coefficients(vec, 3) for vec in kernel_basis(Matrix(rows, field, ncols=10))]


def line_through(a, b, field=QQ, names: Sequence[str] = PLANE_NAMES) -> Poly:
    return plane_ring(field, names).linear_form(cross(a, b, field))


def _points_on_line(L: Poly):
    """Two points spanning the line L = 0."""
    basis = kernel_basis(Matrix([list(linear_coeffs(L))], L.field, ncols=3))
    return basis[0], basis[1]


def intersect_line_with(L: Poly, G: Poly, rng: random.Random | None = None) -> list[tuple]:
    """Points of {L = 0} on {G = 0}; G non-linear requires a prime field."""
    field = L.field
    if G.is_homogeneous(1):
        return [cross(linear_coeffs(L), linear_coeffs(G), field)]
    if not isinstance(field, PrimeField):
        raise ValueError("intersections beyond lines need a prime field (no root-finding over QQ)")
    a, b = _points_on_line(L)
    ring = PolyRing(("u", "v"), field)
    u, v = ring.gens()
    images = [u * a[i] + v * b[i] for i in range(3)]
    h = G.substitute(images, ring)
    if h.is_zero():
        raise ValueError("the line is a component of the other curve")
    deg = int(h.degree)
    coeffs = [h.coefficient((k, deg - k)) for k in range(deg + 1)]
    pts = []
    for (s, w) in binary_form_roots(coeffs, field.p, rng):
        pts.append(tuple(field.normalize(s * a[i] + w * b[i]) for i in range(3)))
    return pts


def product_singular_points(components: Sequence[Poly], rng: random.Random | None = None) -> list[tuple]:
    """Distinct pairwise intersection points of the given components.

    At least one of each pair must be a line.  Singular points of a single
    non-linear component are not searched for.
    """
    field = components[0].field
    found: list[tuple] = []
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            A, B = components[i], components[j]
            if A.is_homogeneous(1):
                pts = intersect_line_with(A, B, rng)
            elif B.is_homogeneous(1):
                pts = intersect_line_with(B, A, rng)
            else:
                raise ValueError("pairs of non-linear components are not supported")
            for pt in pts:
                pt = normalize_point(pt, field)
                if not any(same_point(pt, q, field) for q in found):
                    found.append(pt)
    return found


def analyze_product(components: Sequence[Poly], field=None, rng: random.Random | None = None) -> SingularReport:
    """Jacobian-scheme report for a product of components, with explicit points classified."""
    comps = [_over(c, field) for c in components]
    C = comps[0]
    for c in comps[1:]:
        C = C * c
    report = jacobian_scheme_degree(C)
    for pt in product_singular_points(comps, rng):
        report.points.append(SingularPoint(pt, classify_singular_point(C, pt)))
    return report


# -- triangle plus cubic ------------------------------------------------------------


class TrianglePreconditionError(ValueError):
    pass


@dataclass
class TriangleLemmaReport:
    system_dims: list[int]
    span_dim: int
    intersection_dim: int
    representative: Poly
    matches_product: bool
    sextic_span_dim: int
    vertices: list[tuple]


def _triangle(lines: Sequence[Poly], name: str):
    coeffs = [linear_coeffs(L) for L in lines]
    if len(coeffs) != 3:
        raise TrianglePreconditionError(f"{name} needs three lines")
    field = lines[0].field
    for i in range(3):
        for j in range(i + 1, 3):
            if same_point(coeffs[i], coeffs[j], field):
                raise TrianglePreconditionError(f"{name} has a repeated line: {lines[i]}")
    if rank(Matrix(coeffs, field)) < 3:
        raise TrianglePreconditionError(f"the lines of {name} are concurrent")
    verts = [cross(coeffs[i], coeffs[j], field) for i, j in ((1, 2), (0, 2), (0, 1))]
    return coeffs, verts


def triangle_lemma_check(T: Sequence[Poly], Tbar: Sequence[Poly]) -> TriangleLemmaReport:
    """Span and intersection of the three systems of cubics singular at a vertex of Tbar."""
    field = Tbar[0].field
    names = Tbar[0].ring.names
    tc, tv = _triangle(T, "T")
    bc, bv = _triangle(Tbar, "Tbar")
    for a in tc:
        for b in bc:
            if same_point(a, b, field):
                raise TrianglePreconditionError(f"T and Tbar share the side {a}")
    for a in tv:
        for b in bv:
            if same_point(a, b, field):
                raise TrianglePreconditionError(f"T and Tbar share the vertex {normalize_point(a, field)}")
    systems = [nodal_cubics_at(v, field, names) for v in bv]
    dims = [len(s) for s in systems]
    stacked = [f.coefficient_vector(3) for s in systems for f in s]
    span_dim = rank(Matrix(stacked, field, ncols=10))

    # cubics singular at all three vertices: 9 conditions on 10 coefficients
    conds = []
    mons = monomials(3, 3)
    for v in bv:
        for i in range(3):
            row = []
            for e in mons:
                if e[i] == 0:
                    row.append(0)
                    continue
                d = list(e)
                d[i] -= 1
                val = e[i]
                for x, k in zip(v, d):
                    if k:
                        val = val * x**k
                row.append(field.normalize(val))
            conds.append(row)
    ker = kernel_basis(Matrix(conds, field, ncols=10))
    ring = plane_ring(field, names)
    rep = ring.from_coefficients(ker[0], 3) if ker else ring.zero
    prod = Tbar[0] * Tbar[1] * Tbar[2]
    tri = T[0] * T[1] * T[2]
    sextic_rows = [(tri * f).coefficient_vector(6) for s in systems for f in s]
    sextic_span = rank(Matrix(sextic_rows, field, ncols=28))
    return TriangleLemmaReport(
        dims,
        span_dim,
        len(ker),
        rep,
        bool(ker) and prod.is_scalar_multiple_of(rep) and rep.is_scalar_multiple_of(prod),
        sextic_span,
        [normalize_point(v, field) for v in bv],
    )


def random_triangle(rng: random.Random, field=QQ, bound: int = 9, names=PLANE_NAMES) -> list[Poly]:
    ring = plane_ring(field, names)
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        if rank(Matrix(rows, field)) == 3:
            return [ring.linear_form(r) for r in rows]
