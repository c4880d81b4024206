import random

import pytest

from polarnets.delpezzo import (
    DelPezzoError,
    cubics_through,
    image_sextic,
    make_setup,
    nodal_section,
    run_experiment,
    smooth_section,
    triangle_section,
)
from polarnets.exactalg import GF
from polarnets.sexticlab import classify_singular_point, jacobian_scheme_degree, plane_ring

P = 1000003


def test_cubics_through_three_points():
    F = GF(P)
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    basis = cubics_through(pts, F)
    assert len(basis) == 7
    for f in basis:
        assert all(f.evaluate(q) == 0 for q in pts)
    nodal = cubics_through(pts, F, singular_at=[(1, 1, 1)])
    assert len(nodal) == 4
    for f in nodal:
        assert f.evaluate((1, 1, 1)) == 0
        assert all(d.evaluate((1, 1, 1)) == 0 for d in f.gradient())


def test_collinear_base_points_rejected():
    with pytest.raises(DelPezzoError):
        make_setup(p=P, base_points=[(1, 0, 0), (0, 1, 0), (1, 1, 0)])


def test_section_must_pass_through_base_points():
    setup = make_setup(seed=1, p=P)
    h = plane_ring(setup.field).parse("x0^3 + x1^3 + x2^3")
    assert any(h.evaluate(e) != 0 for e in setup.base_points)
    with pytest.raises(DelPezzoError):
        image_sextic(setup, h)


def test_sections_have_the_expected_singularities():
    setup = make_setup(seed=2, p=P)
    rng = random.Random(2)
    assert jacobian_scheme_degree(smooth_section(setup, rng)).delta == 0
    h, q = nodal_section(setup, rng)
    assert classify_singular_point(h, q) == "node"
    T = triangle_section(setup)
    assert jacobian_scheme_degree(T).delta == 3
    assert all(classify_singular_point(T, e) == "node" for e in setup.base_points)


def test_image_sextic_vanishes_on_image():
    setup = make_setup(seed=3, p=P)
    rng = random.Random(3)
    h = smooth_section(setup, rng)
    S = image_sextic(setup, h, rng)
    assert S.degree == 6
    # the image of a point of h = 0 lies on S
    from polarnets.delpezzo import curve_points, image_of

    for q in curve_points(h, rng, 20, avoid=setup.base_points):
        img = image_of(setup, q)
        if img is not None:
            assert S.evaluate(img) == 0


@pytest.mark.parametrize("p", [2147483629, 2147483647, 1000000007])
def test_node_counts_seed_zero(p):
    rep = run_experiment(seed=0, p=p)
    assert rep.triple == (9, 10, 15)
    assert all(v == n and n >= 200 for v, n in rep.fresh_checks.values())
