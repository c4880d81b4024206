"""Command-line front end: ``polarnets <subcommand> [options]``.

Exit status is 0 when every check in the report passes, 1 when one fails and
2 on malformed input.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import acceptance
from .delpezzo import run_experiment
from .exactalg import (
    DEFAULT_PRIME,
    GF,
    DomainError,
    QQ,
    Matrix,
    ParseError,
    PolyRing,
    check_prime,
    kernel_basis,
    random_prime,
)
from .exactalg.poly import names_in
from .fermatlab import (
    DeformationFamily,
    hesse_degenerations,
    n0_lines,
    pencil_nodes,
    pencil_ring,
    restrict_to_N0,
    tangency_order,
)
from .nets import (
    NetOfQuadrics,
    PlaneInP5,
    discriminant_sextic,
    full_discriminant,
    net_from_plane,
    plane_conversion,
    restrict_to_plane,
)
from .polar import QuadraticForm, cubic_ring, parse_cubic, partials, polar_dimension, polar_quadric
from .reconstruct import (
    SlotAssignment,
    example_assignment,
    fiber_dimension_report,
    integrate_net,
    resubstitution_ok,
)
from .report import Report, Timer
from .sexticlab import (
    classify_singular_point,
    jacobian_scheme_degree,
    nodes_impose_independent_conditions,
    product_singular_points,
    triangle_lemma_check,
)

PLANE_VARIABLE_SETS = (("x0", "x1", "x2"), ("x", "y", "z"), ("l0", "l1", "l2"), ("y1", "y3", "y5"))
FIXTURE_T = "x0;x1;x2"
FIXTURE_TBAR = "x0+x1+x2;x0+2*x1+3*x2;x0+5*x1+7*x2"


class InputError(ValueError):
    pass


# -- argument helpers ------------------------------------------------------------------------


def _field(args):
    if args.field == "fp":
        return GF(_prime(args))
    return QQ


def _prime(args) -> int:
    if args.prime is not None:
        return check_prime(args.prime)
    return random_prime(random.Random(args.seed), 31)


def _scalar(tok: str):
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {tok.strip()!r}", tok.strip()) from None


def _rows(text: str, width: int | None = None) -> list[list]:
    """'1,0,0;0,1,0' -> [[1,0,0],[0,1,0]]."""
    rows = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        row = [_scalar(t) for t in chunk.split(",")]
        if width is not None and len(row) != width:
            raise InputError(f"expected {width} entries in {chunk.strip()!r}")
        rows.append([int(x) if x.denominator == 1 else x for x in row])
    return rows


def _split_polys(text: str) -> list[str]:
    return [s.strip() for s in text.split(";") if s.strip()]


def _plane(args) -> PlaneInP5 | None:
    if args.plane and args.plane_equations:
        raise InputError("give either --plane or --plane-equations, not both")
    if args.plane:
        return plane_conversion(PlaneInP5(param=tuple(map(tuple, _rows(args.plane, 6)))))
    if args.plane_equations:
        return plane_conversion(PlaneInP5(equations=tuple(map(tuple, _rows(args.plane_equations, 6)))))
    return None


def _ternary_names(*texts: str) -> tuple[str, ...]:
    used = {n for t in texts for s in _split_polys(t) for n in names_in(s)}
    for names in PLANE_VARIABLE_SETS:
        if used <= set(names):
            return names
    unknown = sorted(used - set(PLANE_VARIABLE_SETS[0]))
    raise ParseError(
        "cannot infer the plane coordinates; use x0,x1,x2 or x,y,z or l0,l1,l2", unknown[0] if unknown else ""
    )


def _quadrics(text: str, field) -> list[QuadraticForm]:
    ring = cubic_ring(field=field)
    return [QuadraticForm(ring.parse(s)) for s in _split_polys(text)]


# -- subcommands -----------------------------------------------------------------------------


def cmd_polar(args, rep: Report) -> None:
    field = _field(args)
    F = parse_cubic(args.cubic, field=field)
    rep.inputs["cubic"] = str(F)
    parts = partials(F)
    rep.results["partials"] = {f"dF/dx{i}": str(q) for i, q in enumerate(parts)}
    dim = polar_dimension(F)
    rep.results["polar_dimension"] = dim
    euler = F.ring.zero
    for i, q in enumerate(parts):
        euler = euler + F.ring.gen(i) * q.poly
    rep.check("Euler identity: sum x_i dF/dx_i = 3F", euler == F * 3)
    if args.point:
        pt = _rows(args.point, 6)[0]
        rep.inputs["point"] = pt
        Q = polar_quadric(F, pt)
        rep.results["polar_quadric"] = str(Q)
        rep.check("polar quadric of p evaluated at p equals 3F(p)",
                  Q.poly.evaluate(pt) == field.normalize(3 * F.evaluate(pt)))
    if args.expect_dimension is not None:
        rep.check(f"polar dimension is {args.expect_dimension}", dim == args.expect_dimension, f"got {dim}")


def cmd_discriminant(args, rep: Report) -> None:
    field = _field(args)
    plane = _plane(args)
    if args.quadrics:
        if args.cubic or plane:
            raise InputError("--quadrics cannot be combined with --cubic or a plane")
        forms = _quadrics(args.quadrics, field)
        rep.inputs["quadrics"] = [str(q) for q in forms]
        net = NetOfQuadrics(forms, seed=args.seed)
    elif args.cubic:
        F = parse_cubic(args.cubic, field=field)
        rep.inputs["cubic"] = str(F)
        if plane is None:
            D = full_discriminant(F)
            rep.results["discriminant"] = str(D)
            rep.check("determinant is homogeneous of degree 6 in y0..y5 or zero",
                      D.is_zero() or D.is_homogeneous(6))
            return
        rep.inputs["plane"] = [list(r) for r in plane.param]
        net = net_from_plane(F, plane, seed=args.seed)
    else:
        raise InputError("give --cubic (optionally with a plane) or --quadrics")
    sextic = discriminant_sextic(net)
    if args.cubic:
        rep.check("restrict-then-det agrees with det of the plane's net",
                  sextic.poly == restrict_to_plane(full_discriminant(F), plane))
    rep.results["net"] = [str(q) for q in net.forms]
    rep.results["sextic"] = str(sextic.poly)
    rep.results["improper"] = sextic.improper
    rep.check("discriminant is a ternary sextic or identically zero",
              sextic.improper or sextic.poly.is_homogeneous(6))
    if not sextic.improper and args.delta:
        sr = jacobian_scheme_degree(sextic.poly)
        rep.results["hilbert"] = sr.hilbert
        rep.results["delta"] = sr.delta
        rep.check("Hilbert window stabilized", sr.delta is not None)


def _relations(svecs: list[list], field) -> list[str]:
    """Linear relations satisfied by the scalar parts, as readable equations."""
    if not svecs or not svecs[0]:
        return []
    k = len(svecs[0])
    span = [v for v in svecs if any(v)]
    rels = kernel_basis(Matrix(span, field, ncols=k)) if span else []
    names = [f"s{l}" for l in range(k)]
    if span and len(rels) == k - 1:
        # one-dimensional span: express consecutive ratios
        g = next(v for v in span)
        out = []
        for l in range(k - 1):
            if g[l]:
                out.append(f"{names[l + 1]} = {field.format(field.div(g[l + 1], g[l]))}*{names[l]}")
        return out
    out = []
    for r in rels:
        terms = [f"{field.format(c)}*{names[l]}" for l, c in enumerate(r) if c]
        out.append(" + ".join(terms) + " = 0")
    return out


def cmd_integrate(args, rep: Report) -> None:
    field = _field(args)
    example = args.example is not None
    if example:
        if args.quadrics:
            raise InputError("--example and --quadrics are exclusive")
        assignment = example_assignment(field)
    elif args.quadrics:
        forms = _quadrics(args.quadrics, field)
        slots = [int(s) for s in (args.slots or ",".join(str(i) for i in range(len(forms)))).split(",")]
        if len(slots) != len(forms):
            raise InputError(f"{len(forms)} quadrics but {len(slots)} slots")
        assignment = SlotAssignment(tuple(zip(slots, forms)))
    else:
        raise InputError("give --example or --quadrics")
    rep.inputs["slots"] = list(assignment.slots)
    rep.inputs["quadrics"] = [str(q) for q in assignment.quadrics]
    res = integrate_net(assignment, seed=args.seed)
    rep.results["affine_dimension"] = res.affine_dimension
    rep.results["projective_dimension"] = res.projective_dimension
    rep.results["relations"] = _relations([s for _, s in res.basis], field)
    rep.results["free_monomials"] = [
        "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(m) if e) for m in res.free_monomials()
    ]
    rep.results["all_scalars_nonzero"] = res.all_scalars_nonzero
    rep.results["witness_prime"] = res.witness_prime
    rep.check("every kernel element satisfies dF/dx_i = s_l Q_l", resubstitution_ok(res))
    if example:
        rep.check("projective dimension is 10", res.projective_dimension == 10)
        rep.check("scalars satisfy s1 = 3*s0 and s2 = 3*s1",
                  all(s[1] == 3 * s[0] and s[2] == 3 * s[1] for _, s in res.basis))
    if args.cubic:
        plane = _plane(args)
        if plane is None:
            raise InputError("--cubic needs --plane or --plane-equations")
        F = parse_cubic(args.cubic, field=field)
        fr = fiber_dimension_report(F, plane, assignment, seed=args.seed)
        rep.inputs["cubic"] = str(F)
        rep.results["member"] = fr.member
        rep.results["scalars"] = fr.scalars
        rep.check("the cubic lies in the reconstructed family", fr.member)


def cmd_nodes(args, rep: Report) -> None:
    field = _field(args)
    names = _ternary_names(args.curve, args.components or "")
    ring = PolyRing(names, field)
    C = ring.parse(args.curve)
    rep.inputs["curve"] = str(C)
    sr = jacobian_scheme_degree(C)
    rep.results["degree"] = sr.degree
    rep.results["hilbert"] = sr.hilbert
    rep.results["delta"] = sr.delta
    rep.results["status"] = sr.status
    rep.check("Hilbert window stabilized", sr.delta is not None, sr.status)
    if args.components:
        comps = [ring.parse(s) for s in _split_polys(args.components)]
        prod = ring.one
        for c in comps:
            prod = prod * c
        rep.check("the components multiply to the curve up to a scalar",
                  prod.is_scalar_multiple_of(C) and C.is_scalar_multiple_of(prod))
        pts = product_singular_points(comps, random.Random(args.seed))
        kinds = [classify_singular_point(C, q) for q in pts]
        rep.results["points"] = [{"point": list(q), "kind": k} for q, k in zip(pts, kinds)]
        if sr.delta is not None:
            rep.check("explicit singular points do not exceed delta", len(pts) <= sr.delta)
    if args.expect is not None:
        rep.check(f"delta is {args.expect}", sr.delta == args.expect, f"got {sr.delta}")


def cmd_indep(args, rep: Report) -> None:
    field = _field(args)
    pts = _rows(args.points, 3)
    rep.inputs["points"] = pts
    rep.inputs["degree"] = args.degree
    r, ok = nodes_impose_independent_conditions(pts, args.degree, field)
    rep.results["rank"] = r
    rep.results["independent"] = ok
    rep.check(f"the {len(pts)} points impose independent conditions on degree-{args.degree} curves", ok,
              f"rank {r}")


def cmd_triangle_lemma(args, rep: Report) -> None:
    field = _field(args)
    ring = PolyRing(_ternary_names(args.T or FIXTURE_T, args.Tbar or FIXTURE_TBAR), field)
    T = [ring.parse(s) for s in _split_polys(args.T or FIXTURE_T)]
    Tbar = [ring.parse(s) for s in _split_polys(args.Tbar or FIXTURE_TBAR)]
    rep.inputs["T"] = [str(L) for L in T]
    rep.inputs["Tbar"] = [str(L) for L in Tbar]
    r = triangle_lemma_check(T, Tbar)
    rep.results["vertices"] = [list(v) for v in r.vertices]
    rep.results["system_dims"] = r.system_dims
    rep.results["span_dim"] = r.span_dim
    rep.results["intersection_dim"] = r.intersection_dim
    rep.results["representative"] = str(r.representative)
    rep.check("each nodal-cubic system has dimension 7", r.system_dims == [7, 7, 7])
    rep.check("the three systems span all cubics", r.span_dim == 10)
    rep.check("the systems meet in a single line", r.intersection_dim == 1)
    rep.check("the intersection is spanned by the product of Tbar", r.matches_product)


def _merge(rep: Report, crit, prefix: str = "") -> None:
    for k, v in crit.results.items():
        rep.results[prefix + k] = v
    for c in crit.checks:
        rep.check(c.name, c.passed, c.detail)


def cmd_fermat_demo(args, rep: Report) -> None:
    for num, prefix in ((2, ""), (8, "ranks.")):
        crit = acceptance.CriterionResult(num, "", 0)
        fn = acceptance.fermat_discriminant if num == 2 else acceptance.quadric_ranks
        fn(crit, seed=args.seed)
        _merge(rep, crit, prefix)


def _family(args) -> DeformationFamily:
    try:
        idx = [int(s) for s in args.triple.split(",")]
    except ValueError:
        raise ParseError(f"bad triple {args.triple!r}", args.triple) from None
    if len(idx) != 3:
        raise InputError("the triple needs three indices")
    return DeformationFamily(*idx)


def cmd_hesse(args, rep: Report) -> None:
    fam = _family(args)
    rep.inputs["triple"] = list(fam.triple)
    p = args.prime
    if p is not None and (check_prime(p) % 3 != 1):
        raise InputError(f"--prime {p} is not 1 mod 3")
    hr = hesse_degenerations(fam, prime=p, seed=args.seed)
    rep.prime = hr.prime
    rep.results["zeta"] = hr.zeta
    rep.results["rational_branch"] = "t^3 - 9*t^2 + 108"
    rep.results["rational_roots"] = [{"t": r, "multiplicity": m} for r, m in hr.rational_roots]
    rep.results["branches"] = {
        f"zeta^{w}": {"cubic_low_first": list(c), "roots_mod_p": hr.branch_roots[w]}
        for w, c in hr.branch_cubics.items()
    }
    rep.check("rational roots are 6 (double) and -3",
              sorted(hr.rational_roots) == [(Fraction(-3), 1), (Fraction(6), 2)])
    for c in hr.rational_certificates + hr.branch_certificates:
        rep.check(f"cubic factor at t = {c.t} is a product of three lines mod {c.prime}", c.certified,
                  "lines " + ", ".join(str(L) for L in c.lines))


def cmd_tangency(args, rep: Report) -> None:
    fam = _family(args)
    rep.inputs["triple"] = list(fam.triple)
    pencil = restrict_to_N0(fam)
    rep.results["pencil"] = {f"D{m}": str(D) for m, D in enumerate(pencil.coefficients)}
    order = tangency_order(pencil)
    rep.results["tangency_order"] = order
    D0, D1 = pencil.coefficients[:2]
    ring = pencil_ring(fam)
    L1, L2, L3 = n0_lines(fam, ring)
    a, b, c = ring.gens()
    rep.check("D1 vanishes identically", D1.is_zero())
    rep.check("D0 = 729*L1*L2*L3 times the three plane coordinates", D0 == L1 * L2 * L3 * a * b * c * 729)
    rep.check("tangency order is 2", order == 2, f"got {order}")
    if args.t0 is not None:
        t0 = _scalar(args.t0)
        t0 = int(t0) if t0.denominator == 1 else t0
        rep.inputs["t0"] = t0
        try:
            nr = pencil_nodes(fam, t0, seed=args.seed, max_primes=300)
        except RuntimeError:
            delta = jacobian_scheme_degree(pencil.at(t0)).delta
            rep.results["delta_t0"] = delta
            rep.results["general_position"] = False
            rep.check(f"D({t0}) has 12 distinct explicit nodes", False, f"delta {delta}")
            return
        rep.prime = nr.prime
        rep.results["delta_t0"] = nr.delta
        rep.results["general_position"] = nr.general_position
        rep.results["independent_rank"] = nr.independent_rank
        rep.check(f"D({t0}) has 12 explicit nodes matching its Jacobian-scheme degree",
                  nr.delta == len(nr.points) == 12 and nr.general_position, f"delta {nr.delta}")
        rep.check("the nodes impose independent conditions on sextics", nr.independent_rank == len(nr.points))


def cmd_delpezzo_demo(args, rep: Report) -> None:
    p = check_prime(args.prime) if args.prime is not None else DEFAULT_PRIME
    rep.prime = p
    dr = run_experiment(seed=args.seed, p=p)
    rep.results["base_points"] = [list(q) for q in dr.base_points]
    rep.results["counts"] = dr.counts
    rep.results["hilbert"] = dr.hilbert
    rep.results["sections"] = dr.sections
    rep.results["attempts"] = dr.attempts
    rep.check("node counts are (9, 10, 15) for smooth, 1-nodal and triangle sections",
              dr.triple == (9, 10, 15), f"got {dr.triple}")
    for k, (v, n) in dr.fresh_checks.items():
        rep.check(f"{k} image sextic vanishes at all fresh image points", v == n and n > 0, f"{v}/{n}")


def cmd_verify_all(args, rep: Report) -> None:
    only = None
    if args.only:
        only = {int(s) for s in args.only.split(",")}
        known = {n for n, *_ in acceptance.CRITERIA}
        if not only <= known:
            raise InputError(f"unknown criteria {sorted(only - known)}")
    rep.inputs["criteria"] = sorted(only) if only else [n for n, *_ in acceptance.CRITERIA]
    for crit in acceptance.run_all(seed=args.seed, only=only):
        rep.results[f"{crit.number}. {crit.title}"] = crit.results
        for c in crit.checks:
            rep.check(f"[{crit.number}] {c.name}", c.passed, c.detail)
        if args.timing:
            rep.results[f"{crit.number}. {crit.title}"]["seconds"] = round(crit.elapsed, 2)


COMMANDS = {
    "polar": cmd_polar,
    "discriminant": cmd_discriminant,
    "integrate": cmd_integrate,
    "nodes": cmd_nodes,
    "indep": cmd_indep,
    "triangle-lemma": cmd_triangle_lemma,
    "fermat-demo": cmd_fermat_demo,
    "hesse": cmd_hesse,
    "tangency": cmd_tangency,
    "delpezzo-demo": cmd_delpezzo_demo,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("q", "fp"), default="q", help="rationals or a prime field")
    common.add_argument("--prime", type=int, help="prime for --field fp (default: seeded random 31-bit)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="polarnets", description="Polar nets of cubic fourfolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polar", parents=[common], help="partials and polar dimension of a cubic")
    p.add_argument("--cubic", required=True)
    p.add_argument("--point", help="six comma-separated coordinates")
    p.add_argument("--expect-dimension", type=int)

    def plane_opts(sp):
        sp.add_argument("--plane", help="three points of P^5 spanning the plane, rows separated by ';'")
        sp.add_argument("--plane-equations", help="three linear equations, rows separated by ';'")

    p = sub.add_parser("discriminant", parents=[common], help="discriminant sextic of a net")
    p.add_argument("--cubic")
    p.add_argument("--quadrics", help="three quadrics separated by ';'")
    p.add_argument("--delta", action="store_true", help="also compute the Jacobian-scheme degree")
    plane_opts(p)

    p = sub.add_parser("integrate", parents=[common], help="all cubics with given partials up to scale")
    p.add_argument("--example", choices=("paper", "worked"))
    p.add_argument("--quadrics", help="quadrics separated by ';'")
    p.add_argument("--slots", help="comma-separated slot indices (default 0,1,...)")
    p.add_argument("--cubic", help="test membership of this cubic (needs a plane)")
    plane_opts(p)

    p = sub.add_parser("nodes", parents=[common], help="Jacobian-scheme degree of a plane curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--components", help="factors separated by ';' for explicit points")
    p.add_argument("--expect", type=int)

    p = sub.add_parser("indep", parents=[common], help="independence of conditions imposed by points")
    p.add_argument("--points", required=True, help="points separated by ';', coordinates by ','")
    p.add_argument("--degree", type=int, default=6)

    p = sub.add_parser("triangle-lemma", parents=[common], help="nodal cubics at the vertices of a triangle")
    p.add_argument("--T", dest="T")
    p.add_argument("--Tbar", dest="Tbar")

    sub.add_parser("fermat-demo", parents=[common], help="the Fermat discriminant and its nodes")

    for name, hlp in (("hesse", "degenerate members of the cubic factor"), ("tangency", "the pencil on N0")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--triple", default="1,3,5")
        if name == "tangency":
            p.add_argument("--t0", help="also count the nodes of D(t0)")

    sub.add_parser("delpezzo-demo", parents=[common], help="node counts of Del Pezzo hyperplane sections")

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command, seed=args.seed)
    if args.field == "fp" and args.command not in ("hesse", "delpezzo-demo"):
        rep.prime = _prime(args)
    try:
        with Timer(rep):
            COMMANDS[args.command](args, rep)
    except ParseError as exc:
        tok = f" (offending token {exc.token!r})" if exc.token else ""
        print(f"polarnets {args.command}: parse error: {exc}{tok}", file=sys.stderr)
        return 2
    except (ValueError, DomainError, ZeroDivisionError) as exc:
        print(f"polarnets {args.command}: invalid input: {exc}", file=sys.stderr)
        return 2
    out = rep.to_json(args.timing) if args.json else rep.to_text(args.timing)
    print(out)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
