"""The end-to-end acceptance checks, shared by ``verify-all`` and the test suite."""

from __future__ import annotations

import random
import time
from math import lcm
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .delpezzo import run_experiment
from .exactalg import (
    GF,
    QQ,
    Matrix,
    determinant,
    kernel_basis,
    monomials,
    random_prime,
    rank,
)
from .fermatlab import (
    ALL_TRIPLES,
    DeformationFamily,
    closed_form_discriminant,
    family_discriminant,
    hesse_degenerations,
    n0_lines,
    pencil_nodes,
    pencil_ring,
    quadric_rank_at,
    restrict_to_N0,
    tangency_order,
)
from .nets import (
    DegenerateNetError,
    NetOfQuadrics,
    discriminant_sextic,
    full_discriminant,
    net_from_plane,
    plane_conversion,
    random_plane,
    restrict_to_plane,
)
from .polar import fermat_cubic, polar_dimension, polar_quadric, random_cubic
from .reconstruct import (
    example_assignment,
    example_family_member,
    family_member_coordinates,
    integrate_net,
    resubstitution_ok,
    SlotAssignment,
)
from .report import Check
from .sexticlab import (
    classify_singular_point,
    jacobian_scheme_degree,
    plane_ring,
    product_singular_points,
    random_triangle,
    triangle_lemma_check,
)

DELPEZZO_PRIMES = (2147483629, 2147483647, 1000000007)
PROPERTY_INSTANCES = 20


@dataclass
class CriterionResult:
    number: int
    title: str
    budget: float
    checks: list[Check] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)


# -- 1 ---------------------------------------------------------------------------------------


def reconstruction(out: CriterionResult, seed: int = 0) -> None:
    res = integrate_net(example_assignment(), seed=seed)
    out.results["affine_dimension"] = res.affine_dimension
    out.results["projective_dimension"] = res.projective_dimension
    out.add("projective dimension of the family is 10", res.projective_dimension == 10,
            f"got {res.projective_dimension}")
    rel = all(s[1] == 3 * s[0] and s[2] == 3 * s[1] for _, s in res.basis)
    out.add("every kernel element has b = 3a and c = 3b", rel)
    free = sorted(res.free_monomials())
    expected = sorted(e for e in monomials(6, 3) if not any(e[:3]))
    out.results["free_monomials"] = len(free)
    out.add("free coefficients are exactly the 10 cubic monomials in x3,x4,x5", free == expected)
    # the part with zero scalars is C(x3,x4,x5); one more direction carries (a, 3a, 9a)
    zero_s = [v for v, s in res.basis if not any(s)]
    out.add("the scalar-free part has dimension 10", len(zero_s) == 10 and res.affine_dimension - 10 == 1)
    out.add("the closed-form family member lies in the family",
            family_member_coordinates(res, example_family_member()) is not None)
    out.add("every kernel element satisfies dF/dx_i = s_i Q_i", resubstitution_ok(res))
    out.add("a random family member has all three scalars nonzero", res.all_scalars_nonzero)


# -- 2 ---------------------------------------------------------------------------------------


def fermat_discriminant(out: CriterionResult, seed: int = 0) -> None:
    F = fermat_cubic()
    D = full_discriminant(F)
    ring = D.ring
    prod = ring.one
    for g in ring.gens():
        prod = prod * g
    out.add("det of the general polar quadric is 729*y0*...*y5", D == prod * 729)

    rng = random.Random(seed)
    plane = plane_conversion(random_plane(rng))
    out.results["plane"] = [list(r) for r in plane.param]
    net = net_from_plane(F, plane, seed=seed)
    S = discriminant_sextic(net).poly
    lines = _plane_lines(plane, S.ring)
    expected = S.ring.constant(729)
    for L in lines:
        expected = expected * L
    out.add("plane discriminant is 729 times the six restricted coordinates", S == expected)
    rep = jacobian_scheme_degree(S)
    out.results["hilbert"] = rep.hilbert
    out.results["delta"] = rep.delta
    out.add("Jacobian-scheme degree of the plane discriminant is 15", rep.delta == 15, f"got {rep.delta}")
    pts = product_singular_points(lines)
    kinds = [classify_singular_point(S, q) for q in pts]
    out.results["explicit_points"] = len(pts)
    out.add("the 15 pairwise line intersections are distinct", len(pts) == 15, f"got {len(pts)}")
    out.add("every pairwise intersection is a node", all(k == "node" for k in kinds))


def _plane_lines(plane, ring):
    """The six coordinates y_j restricted to the plane, as linear forms in l0, l1, l2."""
    P = plane.param
    return [ring.linear_form([P[k][j] for k in range(3)]) for j in range(6)]


# -- 3 ---------------------------------------------------------------------------------------


def determinant_identity(out: CriterionResult, seed: int = 0) -> None:
    failed = []
    for tr in ALL_TRIPLES:
        fam = DeformationFamily(*tr)
        if family_discriminant(fam) != closed_form_discriminant(fam):
            failed.append(tr)
    fam = DeformationFamily(1, 3, 5)
    ring = family_discriminant(fam).ring
    verbatim = ring.parse(
        "27*y0*y2*y4*((27+t^3/4)*y1*y3*y5 - 3/4*t^2*(y1^3+y3^3+y5^3))"
    )
    out.add("det for (1,3,5) equals the closed formula verbatim", family_discriminant(fam) == verbatim)
    out.results["triples_checked"] = len(ALL_TRIPLES)
    out.add("closed-form identity holds for all 20 triples", not failed, f"failed: {failed}" if failed else "")


# -- 4 ---------------------------------------------------------------------------------------


def hesse(out: CriterionResult, seed: int = 0) -> None:
    rep = hesse_degenerations(DeformationFamily(1, 3, 5), seed=seed)
    out.results["prime"] = rep.prime
    out.results["rational_roots"] = [[str(r), m] for r, m in rep.rational_roots]
    out.add("rational branch roots are t = 6 (double) and t = -3",
            sorted(rep.rational_roots) == [(Fraction(-3), 1), (Fraction(6), 2)])
    out.add("prime is 1 mod 3", rep.prime % 3 == 1)
    out.add("cubic factor splits into three lines at each rational root",
            len(rep.rational_certificates) == 2 and all(c.certified for c in rep.rational_certificates))
    out.results["branch_roots"] = {str(w): len(r) for w, r in rep.branch_roots.items()}
    out.add("splitting also certified at every F_p root of the zeta branches",
            all(c.certified for c in rep.branch_certificates))


# -- 5 ---------------------------------------------------------------------------------------


def tangency(out: CriterionResult, seed: int = 0) -> None:
    fam = DeformationFamily(1, 3, 5)
    pencil = restrict_to_N0(fam)
    D0, D1, D2 = pencil.coefficients[:3]
    out.add("D1 vanishes identically", D1.is_zero())
    out.add("D2 is not proportional to D0", not D2.is_scalar_multiple_of(D0))
    order = tangency_order(pencil)
    out.results["tangency_order"] = order
    out.add("tangency order is exactly 2", order == 2, f"got {order}")
    ring = pencil_ring(fam)
    L1, L2, L3 = n0_lines(fam, ring)
    y1, y3, y5 = ring.gens()
    out.add("D0 = 729*L1*L2*L3*y1*y3*y5", D0 == L1 * L2 * L3 * y1 * y3 * y5 * 729)


# -- 6 ---------------------------------------------------------------------------------------


def pencil_node_counts(out: CriterionResult, seed: int = 0) -> None:
    fam = DeformationFamily(1, 3, 5)
    pencil = restrict_to_N0(fam)
    d0 = jacobian_scheme_degree(pencil.at(0)).delta
    out.results["delta_t0"] = d0
    out.add("Jacobian-scheme degree of D(0) is 15", d0 == 15, f"got {d0}")
    rep = pencil_nodes(fam, 1, seed=seed)
    out.results["delta_t1"] = rep.delta
    out.results["splitting_prime"] = rep.prime
    out.results["rank"] = rep.independent_rank
    out.add("Jacobian-scheme degree of D(1) is 12", rep.delta == 12, f"got {rep.delta}")
    out.add("12 explicit singular points of D(1), all nodes",
            len(rep.points) == 12 and rep.general_position)
    out.add("the 12 points impose independent conditions on sextics (rank 12)",
            rep.independent_rank == 12, f"rank {rep.independent_rank} mod {rep.prime}")


# -- 7 ---------------------------------------------------------------------------------------


def triangle_lemma(out: CriterionResult, seed: int = 0) -> None:
    ring = plane_ring()
    T = list(ring.gens())
    Tbar = [ring.parse(s) for s in ("x0+x1+x2", "x0+2*x1+3*x2", "x0+5*x1+7*x2")]
    pairs = [(T, Tbar)]
    rng = random.Random(seed)
    while len(pairs) < 6:
        try:
            a, b = random_triangle(rng), random_triangle(rng)
            pairs.append((a, b))
            triangle_lemma_check(a, b)
        except ValueError:
            pairs.pop()
    for n, (a, b) in enumerate(pairs):
        r = triangle_lemma_check(a, b)
        label = "fixture" if n == 0 else f"random pair {n}"
        ok = r.system_dims == [7, 7, 7] and r.span_dim == 10 and r.intersection_dim == 1 and r.matches_product
        out.add(f"{label}: systems of dim 7, span 10, intersection spanned by the product", ok,
                f"dims {r.system_dims}, span {r.span_dim}, intersection {r.intersection_dim}")


# -- 8 ---------------------------------------------------------------------------------------


def quadric_ranks(out: CriterionResult, seed: int = 0) -> None:
    rng = random.Random(seed)
    F = fermat_cubic()
    plane = plane_conversion(random_plane(rng))
    net = net_from_plane(F, plane, seed=seed)
    S = discriminant_sextic(net).poly
    lines = _plane_lines(plane, S.ring)
    nodes = product_singular_points(lines)
    ranks = [quadric_rank_at(net, q) for q in nodes]
    out.results["node_ranks"] = ranks
    out.add("every node of the plane discriminant gives a rank-4 quadric", len(nodes) == 15 and set(ranks) == {4})
    # a random point of the first line, off the other five
    while True:
        a = [rng.randint(-50, 50) for _ in range(3)]
        b = [rng.randint(-50, 50) for _ in range(3)]
        q = _point_on_line(lines[0], a, b)
        if q and all(L.evaluate(q) != 0 for L in lines[1:]):
            break
    r5 = quadric_rank_at(net, q)
    out.results["smooth_point"] = list(q)
    out.add("a smooth point of the discriminant gives rank 5", r5 == 5, f"got {r5}")
    while True:
        g = [rng.randint(-50, 50) for _ in range(3)]
        if S.evaluate(g) != 0:
            break
    r6 = quadric_rank_at(net, g)
    out.results["generic_point"] = g
    out.add("a point off the discriminant gives rank 6", r6 == 6, f"got {r6}")


def _point_on_line(L, a, b):
    """The integer point a + s*b on L = 0, or None when b lies on L."""
    la, lb = Fraction(L.evaluate(a)), Fraction(L.evaluate(b))
    if lb == 0:
        return None
    q = [x - la / lb * y for x, y in zip(a, b)]
    den = lcm(*(x.denominator for x in q))
    q = [int(x * den) for x in q]
    return q if any(q) else None


# -- 9 ---------------------------------------------------------------------------------------


def generic_smoothness(out: CriterionResult, seed: int = 0, instances: int = 10) -> None:
    rng = random.Random(seed)
    deltas = []
    retried = 0
    for n in range(instances):
        ok = False
        for attempt in range(2):
            delta = _random_discriminant_delta(rng)
            if delta == 0:
                ok = True
                break
            retried += 1
        deltas.append(delta)
        out.add(f"instance {n}: random plane discriminant is smooth", ok, f"delta {delta}")
    out.results["deltas"] = deltas
    out.results["retries"] = retried


def _random_discriminant_delta(rng: random.Random):
    while True:
        F = random_cubic(rng, bound=9, density=0.4)
        if not F.is_zero() and polar_dimension(F) == 6:
            break
    p = random_prime(rng, 31)
    try:
        net = net_from_plane(F, random_plane(rng))
    except DegenerateNetError:
        return None
    S = discriminant_sextic(net)
    if S.improper:
        return None
    return jacobian_scheme_degree(S.poly, GF(p)).delta


# -- 10 --------------------------------------------------------------------------------------


def delpezzo_counts(out: CriterionResult, seed: int = 0) -> None:
    triples = {}
    for p in DELPEZZO_PRIMES:
        rep = run_experiment(seed=seed, p=p)
        triples[p] = list(rep.triple)
        out.add(f"node counts (9, 10, 15) mod {p}", rep.triple == (9, 10, 15), f"got {rep.triple}")
        fresh_ok = all(v == n and n >= 200 for v, n in rep.fresh_checks.values())
        out.add(f"image sextics vanish at 200 fresh image points mod {p}", fresh_ok,
                str({k: list(v) for k, v in rep.fresh_checks.items()}))
    out.results["counts"] = triples


# -- 11 --------------------------------------------------------------------------------------


def property_suites(out: CriterionResult, seed: int = 0, instances: int = PROPERTY_INSTANCES) -> None:
    rng = random.Random(seed)
    out.add(f"Euler identity on {instances} random cubics", all(euler_identity(rng) for _ in range(instances)))
    out.add(f"net-coordinate covariance on {instances} random nets",
            all(net_covariance(rng) for _ in range(instances)))
    out.add(f"congruence covariance det(P)^2 on {instances} random nets",
            all(congruence_covariance(rng) for _ in range(instances)))
    out.add(f"restrict-then-det consistency on {instances} random cubics and planes",
            all(restrict_then_det(rng) for _ in range(instances)))
    out.add(f"kernel resubstitution on {instances} random matrices and nets",
            all(kernel_resubstitution(rng) for _ in range(instances)))


def euler_identity(rng: random.Random) -> bool:
    """sum x_i dF/dx_i = 3F, and the polar quadric of p evaluated at p is 3F(p)."""
    F = random_cubic(rng, bound=9, density=0.5)
    if F.is_zero():
        return True
    lhs = F.ring.zero
    for i, d in enumerate(F.gradient()):
        lhs = lhs + F.ring.gen(i) * d
    p = [rng.randint(-9, 9) for _ in range(6)]
    if not any(p):
        p[0] = 1
    return lhs == F * 3 and polar_quadric(F, p).poly.evaluate(p) == 3 * F.evaluate(p)


def _random_net(rng: random.Random) -> NetOfQuadrics:
    while True:
        F = random_cubic(rng, bound=5, density=0.3)
        try:
            return net_from_plane(F, random_plane(rng, bound=3))
        except (DegenerateNetError, ValueError):
            continue


def _random_invertible(rng, n, bound=3):
    while True:
        A = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if rank(Matrix(A, QQ)) == n:
            return A


def net_covariance(rng: random.Random) -> bool:
    """disc of the net (sum_i A_ij Q_i)_j is disc(A l)."""
    net = _random_net(rng)
    A = _random_invertible(rng, 3)
    D = discriminant_sextic(net).poly
    D2 = discriminant_sextic(net.acted_on(A)).poly
    ring = D.ring
    ls = ring.gens()
    images = [sum((ls[j] * A[i][j] for j in range(3)), ring.zero) for i in range(3)]
    return D2 == D.substitute(images, ring)


def congruence_covariance(rng: random.Random) -> bool:
    net = _random_net(rng)
    P = _random_invertible(rng, 6, bound=2)
    d = determinant(Matrix(P, QQ))
    return discriminant_sextic(net.congruent(P)).poly == discriminant_sextic(net).poly * (d * d)


def restrict_then_det(rng: random.Random) -> bool:
    """det of the plane's net equals the full discriminant restricted to the plane."""
    while True:
        F = random_cubic(rng, bound=5, density=0.3)
        plane = plane_conversion(random_plane(rng, bound=3))
        try:
            net = net_from_plane(F, plane)
        except (DegenerateNetError, ValueError):
            continue
        break
    return discriminant_sextic(net).poly == restrict_to_plane(full_discriminant(F), plane)


def kernel_resubstitution(rng: random.Random) -> bool:
    rows, cols = rng.randint(1, 7), rng.randint(1, 9)
    M = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) if rng.random() < 0.6 else 0
          for _ in range(cols)] for _ in range(rows)]
    ker = kernel_basis(Matrix(M, QQ, ncols=cols))
    if len(ker) + rank(Matrix(M, QQ, ncols=cols)) != cols:
        return False
    if any(sum(Fraction(a) * b for a, b in zip(row, v)) != 0 for v in ker for row in M):
        return False
    # integration kernels: every element resubstitutes exactly
    net = _random_net(rng)
    slots = rng.sample(range(6), 3)
    return resubstitution_ok(integrate_net(SlotAssignment(tuple(zip(slots, net.forms)))))


# -- registry --------------------------------------------------------------------------------

CRITERIA: list[tuple[int, str, float, Callable]] = [
    (1, "reconstruction of the worked example", 5, reconstruction),
    (2, "Fermat discriminant", 10, fermat_discriminant),
    (3, "determinant identity for all triples", 30, determinant_identity),
    (4, "Hesse degenerations", 5, hesse),
    (5, "tangency order", 5, tangency),
    (6, "node counts on the pencil", 30, pencil_node_counts),
    (7, "triangle lemma", 5, triangle_lemma),
    (8, "quadric ranks", 5, quadric_ranks),
    (9, "generic smoothness", 60, generic_smoothness),
    (10, "Del Pezzo node counts", 60, delpezzo_counts),
    (11, "property suites", 60, property_suites),
]


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    num, title, budget, fn = next(c for c in CRITERIA if c[0] == number)
    out = CriterionResult(num, title, budget)
    t0 = time.perf_counter()
    try:
        fn(out, seed=seed)
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        out.add("completed without error", False, f"{type(exc).__name__}: {exc}")
    out.elapsed = time.perf_counter() - t0
    return out


def run_all(seed: int = 0, only=None) -> list[CriterionResult]:
    return [run_criterion(n, seed) for n, *_ in CRITERIA if only is None or n in only]
