"""Plane sextics from hyperplane sections of the sextic Del Pezzo surface, over GF(p).

The cubics through three non-collinear points map P^2 to the Del Pezzo
surface in P^6; three of them, (g1 : g2 : g3), give a projection to a plane.
A cubic h through the points is a hyperplane section, and its image is a
plane sextic found by interpolation at sampled image points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactalg import (
    DEFAULT_PRIME,
    GF,
    Matrix,
    Poly,
    PolyRing,
    check_prime,
    kernel_basis,
    monomials,
    rank,
    roots_mod_p,
)
from .sexticlab import jacobian_scheme_degree, line_through, plane_ring

SEXTIC_MONOMIALS = monomials(3, 6)


class DelPezzoError(ValueError):
    pass


class DegenerateImageError(DelPezzoError):
    pass


@dataclass
class DelPezzoSetup:
    field: object
    base_points: tuple[tuple[int, int, int], ...]
    cubic_basis: list[Poly]
    projection: tuple[Poly, Poly, Poly]
    seed: int

    @property
    def ring(self) -> PolyRing:
        return self.cubic_basis[0].ring


def _eval_rows(points, degree: int, field):
    p = field.p
    rows = []
    for pt in points:
        row = []
        for e in monomials(3, degree):
            v = 1
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, p) % p
            row.append(v)
        rows.append(row)
    return rows


def _gradient_rows(pt, field):
    """Rows of the three partial derivatives of the cubic monomials at pt."""
    p = field.p
    rows = []
    for i in range(3):
        row = []
        for e in monomials(3, 3):
            if not e[i]:
                row.append(0)
                continue
            d = list(e)
            d[i] -= 1
            v = e[i]
            for x, k in zip(pt, d):
                if k:
                    v = v * pow(x, k, p) % p
            row.append(v)
        rows.append(row)
    return rows


def cubics_through(points: Sequence, field, singular_at: Sequence = ()) -> list[Poly]:
    """Basis of cubics through ``points`` and singular at each point of ``singular_at``."""
    rows = _eval_rows(points, 3, field)
    for q in singular_at:
        rows.extend(_gradient_rows(q, field))
    ring = plane_ring(field)
    return [ring.from_coefficients(v, 3) for v in kernel_basis(Matrix(rows, field, ncols=10))]


def _random_combination(basis: Sequence[Poly], rng: random.Random) -> Poly:
    p = basis[0].field.p
    out = basis[0].ring.zero
    for b in basis:
        out = out + b * rng.randrange(1, p)
    return out


def _random_point(rng, field):
    return tuple(rng.randrange(field.p) for _ in range(3))


def make_setup(seed: int = 0, p: int = DEFAULT_PRIME, base_points: Sequence | None = None) -> DelPezzoSetup:
    field = GF(check_prime(p))
    rng = random.Random(seed)
    if base_points is None:
        while True:
            pts = tuple(_random_point(rng, field) for _ in range(3))
            if rank(Matrix(pts, field)) == 3:
                break
    else:
        pts = tuple(tuple(field.convert(x) for x in q) for q in base_points)
        if len(pts) != 3 or rank(Matrix(pts, field)) < 3:
            raise DelPezzoError("the base points must be three non-collinear points")
    basis = cubics_through(pts, field)
    if len(basis) != 7:
        raise DelPezzoError(f"expected 7 cubics through the base points, got {len(basis)}")
    while True:
        g = tuple(_random_combination(basis, rng) for _ in range(3))
        if rank(Matrix([f.coefficient_vector(3) for f in g], field, ncols=10)) == 3:
            break
    return DelPezzoSetup(field, pts, basis, g, seed)


# -- the three kinds of hyperplane section -------------------------------------------------


def smooth_section(setup: DelPezzoSetup, rng: random.Random) -> Poly:
    while True:
        h = _random_combination(setup.cubic_basis, rng)
        if jacobian_scheme_degree(h).delta == 0:
            return h


def nodal_section(setup: DelPezzoSetup, rng: random.Random) -> tuple[Poly, tuple]:
    """A general cubic through the base points with a node at a random fourth point."""
    field = setup.field
    while True:
        q = _random_point(rng, field)
        if not any(q):
            continue
        basis = cubics_through(setup.base_points, field, singular_at=[q])
        if len(basis) != 4:
            continue
        h = _random_combination(basis, rng)
        if jacobian_scheme_degree(h).delta == 1:
            return h, q


def triangle_section(setup: DelPezzoSetup) -> Poly:
    a, b, c = setup.base_points
    f = setup.field
    return line_through(a, b, f) * line_through(a, c, f) * line_through(b, c, f)


# -- sampling and interpolation ------------------------------------------------------------


def curve_points(h: Poly, rng: random.Random, count: int, avoid: Sequence = ()) -> list[tuple]:
    """Points of {h = 0} on random lines x0 = a*x2, found by root finding in GF(p)."""
    field = h.field
    p = field.p
    ring = PolyRing(("s",), field)
    s = ring.gen(0)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 50 * count + 100:
            raise DegenerateImageError("could not sample enough points on the curve")
        a = rng.randrange(p)
        u = h.substitute([ring.constant(a), s, ring.one], ring)
        if u.is_zero():
            continue
        coeffs = [u.coefficient((k,)) for k in range(int(u.degree) + 1)] if u.degree >= 0 else []
        if len(coeffs) < 2:
            continue
        for r in roots_mod_p(coeffs, p, rng):
            pt = (a, r, 1)
            if any(_proportional(pt, q, p) for q in avoid):
                continue
            out.append(pt)
    return out[:count]


def _proportional(a, b, p) -> bool:
    return all((a[i] * b[j] - a[j] * b[i]) % p == 0 for i in range(3) for j in range(i + 1, 3))


def image_of(setup: DelPezzoSetup, pt) -> tuple | None:
    vals = tuple(g.evaluate(pt) for g in setup.projection)
    return vals if any(vals) else None


def exceptional_image_points(setup: DelPezzoSetup, e, rng: random.Random, count: int) -> list[tuple]:
    """Points on the image of the exceptional curve over the base point e.

    A tangent direction v at e maps to (grad g1(e).v : grad g2(e).v : grad g3(e).v).
    """
    p = setup.field.p
    grads = [[d.evaluate(e) for d in g.gradient()] for g in setup.projection]
    out = []
    while len(out) < count:
        v = _random_point(rng, setup.field)
        img = tuple(sum(a * b for a, b in zip(gr, v)) % p for gr in grads)
        if any(img):
            out.append(img)
    return out


def _section_points(setup: DelPezzoSetup, h: Poly, rng: random.Random, count: int) -> list[tuple]:
    pts = []
    for q in curve_points(h, rng, count, avoid=setup.base_points):
        img = image_of(setup, q)
        if img is not None:
            pts.append(img)
    # exceptional curves lying in the hyperplane section: h singular at the base point
    for e in setup.base_points:
        if all(d.evaluate(e) == 0 for d in h.gradient()):
            pts.extend(exceptional_image_points(setup, e, rng, max(count // 3, 20)))
    return pts


def _check_section(setup: DelPezzoSetup, h: Poly) -> None:
    for e in setup.base_points:
        if h.evaluate(e) != 0:
            raise DelPezzoError(f"h does not pass through the base point {e}")
    vecs = [f.coefficient_vector(3) for f in setup.projection] + [h.coefficient_vector(3)]
    if rank(Matrix(vecs, setup.field, ncols=10)) < 4:
        raise DelPezzoError("h lies in the span of the projection cubics; its image is a line")


def image_sextic(setup: DelPezzoSetup, h: Poly, rng: random.Random | None = None, samples: int = 60) -> Poly:
    """Implicit equation of the image of the hyperplane section {h = 0}."""
    rng = rng or random.Random(setup.seed)
    _check_section(setup, h)
    pts = _section_points(setup, h, rng, samples)
    if len(pts) < 40:
        raise DegenerateImageError(f"only {len(pts)} image points sampled")
    rows = _eval_rows(pts, 6, setup.field)
    ker = kernel_basis(Matrix(rows, setup.field, ncols=28))
    if len(ker) != 1:
        raise DegenerateImageError(f"interpolation kernel has dimension {len(ker)}")
    return plane_ring(setup.field).from_coefficients(ker[0], 6)


def fresh_point_check(setup: DelPezzoSetup, h: Poly, sextic: Poly, rng: random.Random, count: int = 200) -> tuple[int, int]:
    """(vanishing, sampled) counts of the sextic at fresh image points not used for fitting."""
    pts = _section_points(setup, h, rng, count)[:count]
    return sum(1 for q in pts if sextic.evaluate(q) == 0), len(pts)


@dataclass
class DelPezzoReport:
    seed: int
    prime: int
    base_points: tuple
    counts: dict[str, int | None]
    hilbert: dict[str, dict[int, int]]
    fresh_checks: dict[str, tuple[int, int]]
    sextics: dict[str, str]
    sections: dict[str, str]
    attempts: int
    failures: list[str] = dc_field(default_factory=list)

    @property
    def triple(self) -> tuple:
        return (self.counts.get("smooth"), self.counts.get("nodal"), self.counts.get("triangle"))


def run_experiment(seed: int = 0, p: int = DEFAULT_PRIME, base_points: Sequence | None = None,
                   max_resamples: int = 10) -> DelPezzoReport:
    """Node counts of the images of a smooth, a 1-nodal and a triangle section."""
    failures: list[str] = []
    for attempt in range(max_resamples):
        setup = make_setup(seed + 7919 * attempt, p, base_points)
        rng = random.Random(setup.seed)
        sections = {"smooth": smooth_section(setup, rng), "nodal": nodal_section(setup, rng)[0],
                    "triangle": triangle_section(setup)}
        try:
            sextics = {k: image_sextic(setup, h, rng) for k, h in sections.items()}
        except DegenerateImageError as exc:
            failures.append(f"attempt {attempt}: {exc}")
            continue
        counts, hilbert, fresh = {}, {}, {}
        for k, D in sextics.items():
            rep = jacobian_scheme_degree(D)
            counts[k] = rep.delta
            hilbert[k] = rep.hilbert
            fresh[k] = fresh_point_check(setup, sections[k], D, rng)
        return DelPezzoReport(
            seed, p, setup.base_points, counts, hilbert, fresh,
            {k: str(v) for k, v in sextics.items()}, {k: str(v) for k, v in sections.items()},
            attempt + 1, failures,
        )
    raise DelPezzoError("setup failure after %d resamples: %s" % (max_resamples, "; ".join(failures)))
