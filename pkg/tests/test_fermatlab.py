import random
from fractions import Fraction

import pytest
import sympy

from polarnets.exactalg import GF, PolyRing, random_prime
from polarnets.fermatlab import (
    ALL_TRIPLES,
    DeformationFamily,
    SexticPencil,
    closed_form_discriminant,
    discriminant_ring,
    family_discriminant,
    family_polar_matrix,
    hesse_cubic,
    hesse_degenerations,
    n0_plane,
    pencil_nodes,
    pencil_ring,
    quadric_rank_at,
    rational_roots,
    restrict_to_N0,
    tangency_order,
    three_line_factors,
)
from polarnets.nets import net_from_plane, plane_conversion, random_plane, restrict_to_plane
from polarnets.polar import fermat_cubic
from polarnets.sexticlab import classify_singular_point, jacobian_scheme_degree, plane_ring

from conftest import to_sympy

F135 = DeformationFamily(1, 3, 5)


def test_family_validation():
    with pytest.raises(ValueError):
        DeformationFamily(1, 1, 2)
    with pytest.raises(ValueError):
        DeformationFamily(0, 1, 6)
    assert F135.complement == (0, 2, 4)
    assert F135.cubic().specialize({"t": 0}).to_ring(fermat_cubic().ring) == fermat_cubic()


def test_polar_matrix_135():
    M = family_polar_matrix(F135)
    ring = M[0][0].ring
    for i in range(6):
        assert M[i][i] == ring.parse(f"3*y{i}")
    assert M[1][3] == ring.parse("t/2*y5")
    assert M[1][5] == ring.parse("t/2*y3")
    assert M[3][5] == ring.parse("t/2*y1")
    at0 = [[e.specialize({"t": 0}) for e in row] for row in M]
    assert all(at0[i][j].is_zero() for i in range(6) for j in range(6) if i != j)


def test_polar_matrix_024_is_a_permutation():
    perm = [1, 0, 3, 2, 5, 4]  # swaps (1,3,5) with (0,2,4)
    A, B = family_polar_matrix(F135), family_polar_matrix(DeformationFamily(0, 2, 4))
    ring = A[0][0].ring
    ys = ring.gens()[1:]
    rename = [ring.gens()[0]] + [ys[perm[i]] for i in range(6)]
    for i in range(6):
        for j in range(6):
            assert B[perm[i]][perm[j]] == A[i][j].substitute(rename, ring)


def test_determinant_identity_135_verbatim():
    D = family_discriminant(F135)
    expected = D.ring.parse("27*y0*y2*y4*((27+t^3/4)*y1*y3*y5 - 3/4*t^2*(y1^3+y3^3+y5^3))")
    assert D == expected
    oracle = sympy.Matrix([[to_sympy(e) for e in row] for row in family_polar_matrix(F135)]).det()
    assert to_sympy(D) == sympy.expand(oracle)


@pytest.mark.parametrize("triple", ALL_TRIPLES)
def test_determinant_identity_all_triples(triple):
    fam = DeformationFamily(*triple)
    D = family_discriminant(fam)
    assert D == closed_form_discriminant(fam)
    assert D.specialize({"t": 0}) == D.ring.parse("729*y0*y1*y2*y3*y4*y5").specialize({"t": 0})


def test_permuting_the_triple_changes_nothing():
    assert family_discriminant(DeformationFamily(5, 1, 3)) == family_discriminant(F135)


def test_rational_branch_roots():
    # t^3 - 9 t^2 + 108 = (t - 6)^2 (t + 3)
    for t in (6, -3):
        assert t**3 - 9 * t**2 + 108 == 0
    assert rational_roots((108, 0, -9, 1)) == [(Fraction(-3), 1), (Fraction(6), 2)]
    assert rational_roots((0, 0, 1)) == [(0, 2)]
    assert rational_roots((1, 0, 1)) == []


def test_hesse_degenerations():
    rep = hesse_degenerations(F135, seed=3)
    assert rep.prime % 3 == 1
    assert [r for r, _ in rep.rational_roots] == [-3, 6]
    assert all(c.certified for c in rep.rational_certificates)
    assert all(c.certified for c in rep.branch_certificates)
    p = rep.prime
    for w, roots in rep.branch_roots.items():
        z = pow(rep.zeta, w, p)
        for r in roots:
            assert (r**3 - 9 * z * r * r + 108) % p == 0


def test_cubic_factor_at_six():
    ring = discriminant_ring()
    C6 = hesse_cubic(F135, ring).specialize({"t": 6})
    assert C6 == C6.ring.parse("-27*(y1^3+y3^3+y5^3 - 3*y1*y3*y5)")
    p = random_prime(random.Random(0), 31, residue=(1, 3))
    F = GF(p)
    R = PolyRing(("a", "b", "c"), F)
    prod = R.one
    for L in three_line_factors(0, F):
        prod = prod * R.linear_form(L)
    assert prod == R.parse("a^3+b^3+c^3-3*a*b*c")


def test_cubic_factor_at_one_is_smooth():
    C1 = hesse_cubic(F135, discriminant_ring()).specialize({"t": 1})
    R = PolyRing(("y1", "y3", "y5"))
    assert jacobian_scheme_degree(C1.to_ring(R)).delta == 0


def test_n0_plane():
    P = n0_plane(F135)
    assert P.equations == ((1, -1, 0, -1, 0, 1), (0, -1, 1, 1, 0, -2), (0, -1, 0, -2, 1, -3))
    assert plane_conversion(P) == P


def test_restriction_to_n0():
    pencil = restrict_to_N0(F135)
    R = pencil.ring
    D0, D1, D2, D3 = pencil.coefficients
    L = R.parse("(y1+y3-y5)*(y1-y3+2*y5)*(y1+2*y3+3*y5)")
    assert D0 == L * R.parse("729*y1*y3*y5")
    assert D1.is_zero()
    assert not D2.is_scalar_multiple_of(D0)
    assert tangency_order(pencil) == 2
    for t0 in (1, 2, 5):
        assert L.divides(pencil.at(t0))


@pytest.mark.parametrize("t0", [0, 1, 6])
def test_restriction_commutes_with_specialisation(t0):
    D = family_discriminant(F135).specialize({"t": t0})
    plane = n0_plane(F135)
    restricted = restrict_to_plane(D, plane)
    R = pencil_ring(F135)
    # the plane parametrisation uses (y1, y3, y5) as net coordinates
    restricted = restricted.substitute(list(R.gens()), R)
    assert restricted == restrict_to_N0(F135).at(t0)


def test_tangency_order_trivial_cases():
    R = pencil_ring(F135)
    D0 = R.parse("y1^6 + y3^6 + y5^6")
    assert tangency_order(SexticPencil([D0, R.parse("y1^5*y3"), R.zero, R.zero])) == 1
    assert tangency_order(SexticPencil([D0, R.zero, D0 * 3, R.zero])) == "infinite"
    with pytest.raises(ValueError):
        SexticPencil([R.zero, D0])


def test_node_counts_on_the_pencil():
    pencil = restrict_to_N0(F135)
    assert jacobian_scheme_degree(pencil.at(0)).delta == 15
    rep = pencil_nodes(F135, 1)
    assert rep.delta == 12
    assert len(rep.points) == 12 and rep.kinds == ["node"] * 12
    assert rep.independent_rank == 12


def test_nodes_at_t0_have_rank_four():
    pencil = restrict_to_N0(F135)
    D0 = pencil.at(0)
    ring = plane_ring(names=D0.ring.names)
    from polarnets.sexticlab import product_singular_points

    lines = [ring.parse(s) for s in ("y1+y3-y5", "y1-y3+2*y5", "y1+2*y3+3*y5", "y1", "y3", "y5")]
    pts = product_singular_points(lines)
    assert len(pts) == 15
    M = family_polar_matrix(F135)
    P = n0_plane(F135).param
    for q in pts:
        assert classify_singular_point(D0, q) == "node"
        y = [sum(q[k] * P[k][j] for k in range(3)) for j in range(6)]
        assert quadric_rank_at(M, y, t0=0) == 4


def test_quadric_ranks_on_a_fermat_net():
    rng = random.Random(0)
    plane = plane_conversion(random_plane(rng))
    net = net_from_plane(fermat_cubic(), plane)
    P = plane.param
    # two vanishing restricted coordinates: intersection of the lines y0 = 0 and y1 = 0
    a = [P[k][0] for k in range(3)]
    b = [P[k][1] for k in range(3)]
    node = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    assert quadric_rank_at(net, node) == 4
    assert quadric_rank_at(net, [1, 2, 3]) in (5, 6)
    with pytest.raises(ValueError):
        quadric_rank_at(net, [0, 0, 0])
