import random
from fractions import Fraction

import pytest

from polarnets.exactalg import Matrix, kernel_basis, monomials, rank
from polarnets.nets import PlaneInP5, net_from_plane, random_plane
from polarnets.polar import QuadraticForm, cubic_ring, fermat_cubic, polar_dimension, random_cubic
from polarnets.reconstruct import (
    AssignmentError,
    CUBIC_MONOMIALS,
    SlotAssignment,
    assignment_from,
    example_assignment,
    example_family_member,
    example_quadrics,
    family_member_coordinates,
    fiber_dimension_report,
    integrate_net,
    integration_matrix,
    resubstitution_ok,
)

X = cubic_ring()
E012 = ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0))


def q(text):
    return QuadraticForm(X.parse(text))


def test_worked_example_family():
    res = integrate_net(example_assignment())
    assert res.affine_dimension == 11
    assert res.projective_dimension == 10
    assert all(s[1] == 3 * s[0] and s[2] == 3 * s[1] for _, s in res.basis)
    assert sorted(res.free_monomials()) == sorted(e for e in monomials(6, 3) if not any(e[:3]))
    assert res.all_scalars_nonzero
    assert resubstitution_ok(res)


def test_worked_example_by_independent_elimination():
    """Solve dF/dx_i = s_i Q_i with sympy's linsolve on symbolic unknowns."""
    import sympy

    xs = sympy.symbols("x0:6")
    coeffs = sympy.symbols("c0:56")
    s = sympy.symbols("s0:3")
    F = sum(c * sympy.prod(x**k for x, k in zip(xs, e)) for c, e in zip(coeffs, CUBIC_MONOMIALS))
    eqs = []
    for i, Q in enumerate(example_quadrics()):
        Qs = sum(sympy.Rational(c) * sympy.prod(x**k for x, k in zip(xs, e)) for e, c in Q.poly.terms.items())
        eqs.extend(sympy.Poly(sympy.diff(F, xs[i]) - s[i] * Qs, *xs).coeffs())
    sol = sympy.linsolve(eqs, list(coeffs) + list(s))
    (point,) = sol
    free = set().union(*(sympy.sympify(v).free_symbols for v in point))
    assert len(free) == 11
    assert sympy.simplify(point[57] - 3 * point[56]) == 0 and sympy.simplify(point[58] - 3 * point[57]) == 0


def test_single_slot_dimension():
    res = integrate_net(SlotAssignment(((0, q("3*x0^2")),)))
    assert res.affine_dimension == 36


def test_mixed_partial_obstruction():
    res = integrate_net(assignment_from((0, 1), (q("x1^2"), q("x2^2"))))
    assert res.affine_dimension == 21
    assert all(s[0] == 0 for _, s in res.basis)
    assert not res.all_scalars_nonzero


def test_fermat_coordinate_plane_fiber():
    F = fermat_cubic()
    plane = PlaneInP5(param=E012)
    net = net_from_plane(F, plane)
    rep = fiber_dimension_report(F, plane, assignment_from((0, 1, 2), net.forms))
    # scale of each of x0^3, x1^3, x2^3 plus the 10 free cubics in x3, x4, x5
    assert rep.result.affine_dimension == 13
    assert rep.projective_dimension == 12 and not rep.is_p10
    assert rep.member and rep.scalars == [1, 1, 1]


def test_worked_example_member():
    ring = cubic_ring()
    F = example_family_member()
    plane = PlaneInP5(param=E012)
    rep = fiber_dimension_report(F, plane, example_assignment())
    assert rep.is_p10 and rep.member
    assert rep.scalars == [1, 3, 9]
    C = ring.parse("x3^3 - 2*x3*x4*x5 + 7*x5^3")
    assert family_member_coordinates(rep.result, example_family_member(a=5, C=C)) is not None
    assert family_member_coordinates(rep.result, F + ring.parse("x0*x1*x2")) is None


def test_mismatched_assignment_is_rejected():
    F = fermat_cubic()
    with pytest.raises(AssignmentError):
        fiber_dimension_report(F, PlaneInP5(param=E012), example_assignment())


@pytest.mark.parametrize("pairs, message", [
    ((), "between 1 and 6"),
    (((0, "x0^2"), (0, "x1^2")), "repeated"),
    (((6, "x0^2"),), "outside"),
])
def test_malformed_assignments(pairs, message):
    with pytest.raises(AssignmentError, match=message):
        SlotAssignment(tuple((i, q(t)) for i, t in pairs))


def test_zero_quadric_rejected():
    with pytest.raises(AssignmentError):
        SlotAssignment(((0, QuadraticForm(X.zero)),))


def test_integration_matrix_shape_and_rank():
    M = integration_matrix(example_assignment())
    assert M.shape == (63, 59)
    assert rank(M) == 48


@pytest.mark.parametrize("seed", range(5))
def test_scaling_quadrics_rescales_scalars(seed):
    rng = random.Random(seed)
    while True:
        try:
            net = net_from_plane(random_cubic(rng, density=0.3), random_plane(rng, bound=3))
            break
        except ValueError:
            continue
    c = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1)) for _ in range(3)]
    a = integrate_net(assignment_from((0, 2, 4), net.forms))
    b = integrate_net(assignment_from((0, 2, 4), [f * k for f, k in zip(net.forms, c)]))
    # same projective family of cubics
    fa = [v for v, _ in a.basis] or [[0] * 56]
    fb = [v for v, _ in b.basis] or [[0] * 56]
    assert rank(Matrix(fa, ncols=56)) == rank(Matrix(fb, ncols=56)) == rank(Matrix(fa + fb, ncols=56))
    for v, s in b.basis:
        coords = family_member_coordinates(a, cubic_ring().from_coefficients(v, 3))
        sa = [sum(x * t[l] for x, (_, t) in zip(coords, a.basis)) for l in range(3)]
        assert [sa[l] / c[l] for l in range(3)] == list(s)


def test_general_member_has_polar_dimension_six():
    res = integrate_net(example_assignment())
    rng = random.Random(0)
    combo = [0] * 56
    for v, _ in res.basis:
        c = rng.randint(-9, 9)
        combo = [a + c * b for a, b in zip(combo, v)]
    assert polar_dimension(cubic_ring().from_coefficients(combo, 3)) == 6


def test_kernel_resubstitution_of_integration():
    res = integrate_net(example_assignment())
    M = integration_matrix(example_assignment())
    for v, s in res.basis:
        assert all(x == 0 for x in M.apply(list(v) + list(s)))
    assert len(kernel_basis(M)) == res.affine_dimension
