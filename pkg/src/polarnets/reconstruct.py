"""All cubic fourfolds with prescribed partial derivatives up to scale.

Given quadrics Q_l assigned to slots i_l, solve dF/dx_{i_l} = s_l * Q_l for
the 56 coefficients of F and the scalars s_l.  The equations are linear, one
per (slot, quadratic monomial).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .exactalg import QQ, Matrix, Poly, kernel_basis, monomials, random_prime, solve, GF
from .nets import NetOfQuadrics, PlaneInP5, net_from_plane
from .polar import QuadraticForm, check_cubic, cubic_ring, parse_cubic

CUBIC_MONOMIALS = monomials(6, 3)
QUADRIC_MONOMIALS = monomials(6, 2)
_QUAD_INDEX = {e: i for i, e in enumerate(QUADRIC_MONOMIALS)}


class AssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class SlotAssignment:
    pairs: tuple[tuple[int, QuadraticForm], ...]

    def __post_init__(self):
        pairs = tuple((int(i), q) for i, q in self.pairs)
        if not 1 <= len(pairs) <= 6:
            raise AssignmentError("between 1 and 6 slots must be assigned")
        slots = [i for i, _ in pairs]
        if len(set(slots)) != len(slots):
            raise AssignmentError(f"repeated slots in {slots}")
        for i, q in pairs:
            if not 0 <= i < 6:
                raise AssignmentError(f"slot {i} outside 0..5")
            if not isinstance(q, QuadraticForm):
                raise AssignmentError("assigned objects must be QuadraticForms")
            if q.is_zero():
                raise AssignmentError(f"zero quadric assigned to slot {i}")
            if q.params:
                raise AssignmentError("assigned quadrics must have scalar coefficients")
        fields = {q.ring.field for _, q in pairs}
        if len(fields) != 1:
            raise AssignmentError("assigned quadrics over different fields")
        object.__setattr__(self, "pairs", pairs)

    @property
    def slots(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.pairs)

    @property
    def quadrics(self) -> tuple[QuadraticForm, ...]:
        return tuple(q for _, q in self.pairs)

    @property
    def field(self):
        return self.pairs[0][1].ring.field


@dataclass
class IntegrationResult:
    assignment: SlotAssignment
    basis: list[tuple[list, list]]  # (56 cubic coefficients, scalars s_l)
    all_scalars_nonzero: bool
    witness_prime: int
    seed: int

    @property
    def affine_dimension(self) -> int:
        return len(self.basis)

    @property
    def projective_dimension(self) -> int:
        return self.affine_dimension - 1

    def cubic(self, k: int) -> Poly:
        return cubic_ring(field=self.assignment.field).from_coefficients(self.basis[k][0], 3)

    def cubics(self) -> list[Poly]:
        return [self.cubic(k) for k in range(len(self.basis))]

    def free_monomials(self) -> list[tuple[int, ...]]:
        """Cubic monomials that are unconstrained (their unit vector lies in the family)."""
        M = integration_matrix(self.assignment)
        return [e for col, e in enumerate(CUBIC_MONOMIALS) if not any(r[col] for r in M.rows)]


def integration_matrix(assignment: SlotAssignment) -> Matrix:
    """Rows: (slot, quadratic monomial); columns: 56 cubic coefficients then the s_l."""
    field = assignment.field
    nslots = len(assignment.pairs)
    ncols = 56 + nslots
    rows = []
    for l, (i, q) in enumerate(assignment.pairs):
        block = [[0] * ncols for _ in QUADRIC_MONOMIALS]
        for col, e in enumerate(CUBIC_MONOMIALS):
            if e[i]:
                d = list(e)
                d[i] -= 1
                block[_QUAD_INDEX[tuple(d)]][col] = e[i]
        for r, m in enumerate(QUADRIC_MONOMIALS):
            c = q.poly.coefficient(m)
            if c:
                block[r][56 + l] = field.normalize(-c)
        rows.extend(block)
    return Matrix(rows, field, ncols=ncols)


def integrate_net(assignment: SlotAssignment, seed: int = 0) -> IntegrationResult:
    """Kernel of the integration system, in reduced-echelon canonical form."""
    if not isinstance(assignment, SlotAssignment):
        raise AssignmentError("expected a SlotAssignment")
    field = assignment.field
    M = integration_matrix(assignment)
    ker = kernel_basis(M)
    basis = [(v[:56], v[56:]) for v in ker]
    nslots = len(assignment.pairs)
    each = all(any(s[l] for _, s in basis) for l in range(nslots))
    rng = random.Random(seed)
    p = random_prime(rng, 61) if field == QQ else field.p
    Fp = GF(p)
    witness = False
    if basis:
        coeffs = [rng.randrange(1, p) for _ in basis]
        combo = [sum(c * Fp.convert(s[l]) for c, (_, s) in zip(coeffs, basis)) % p for l in range(nslots)]
        witness = all(combo)
    return IntegrationResult(assignment, basis, each and witness, p, seed)


def resubstitution_ok(result: IntegrationResult) -> bool:
    """dF/dx_i == s_l * Q_l exactly for every basis element."""
    for k, (_, s) in enumerate(result.basis):
        F = result.cubic(k)
        for l, (i, q) in enumerate(result.assignment.pairs):
            if F.diff(i) != q.poly * s[l]:
                return False
    return True


def family_member_coordinates(result: IntegrationResult, F: Poly) -> list | None:
    """Coordinates of F in the F-parts of the kernel basis, or None if F is not in the family."""
    if not result.basis:
        return None if F else []
    cols = [b[0] for b in result.basis]
    A = Matrix([list(r) for r in zip(*cols)], result.assignment.field, ncols=len(cols))
    return solve(A, [F.coefficient(e) for e in CUBIC_MONOMIALS])


@dataclass
class FiberReport:
    result: IntegrationResult
    projective_dimension: int
    is_p10: bool
    member: bool
    scalars: list | None


def fiber_dimension_report(F: Poly, plane: PlaneInP5, assignment: SlotAssignment, seed: int = 0) -> FiberReport:
    """Fiber of the net of ``plane`` under the polar-net map, and whether F lies in it."""
    check_cubic(F)
    net = net_from_plane(F, plane, seed=seed)
    if not net.same_span(NetOfQuadrics(assignment.quadrics, seed=seed)):
        raise AssignmentError("assigned quadrics do not span the polar net of the plane")
    result = integrate_net(assignment, seed=seed)
    coords = family_member_coordinates(result, F)
    scalars = None
    if coords is not None:
        norm = assignment.field.normalize
        scalars = [
            norm(sum(c * s[l] for c, (_, s) in zip(coords, result.basis)))
            for l in range(len(assignment.pairs))
        ]
    return FiberReport(
        result,
        result.projective_dimension,
        result.projective_dimension == 10,
        coords is not None,
        scalars,
    )


# The three quadrics of the worked example, and the closed form of its family.

EXAMPLE_QUADRICS = (
    "3*x0^2+2*x0*x5+3*x1^2+4*x1*x4+16*x2*x3+4*x2*x5+x3*x5+6*x1*x5",
    "2*x0*x1+4/3*x0*x4+2*x0*x5+2*x1*x5+3*x2^2+3*x3^2+2*x3*x4+6*x4*x5+3*x2*x3",
    "16/9*x0*x3+4/9*x0*x5+2*x1*x2+x1*x3-2*x2*x5+3*x4^2+3*x5^2",
)

EXAMPLE_FAMILY_BASE = (
    "x0^3+x0^2*x5+3*x0*x1^2+4*x0*x1*x4+16*x0*x2*x3+4*x0*x2*x5+x0*x3*x5"
    "+6*x0*x1*x5+3*x1^2*x5+9*x1*x2^2+9*x1*x3^2+6*x1*x3*x4+18*x1*x4*x5"
    "+9*x1*x2*x3-9*x2^2*x5+27*x2*x4^2+27*x2*x5^2"
)


def example_quadrics(field=QQ) -> tuple[QuadraticForm, ...]:
    ring = cubic_ring(field=field)
    return tuple(QuadraticForm(ring.parse(s)) for s in EXAMPLE_QUADRICS)


def example_assignment(field=QQ) -> SlotAssignment:
    return SlotAssignment(tuple(zip((0, 1, 2), example_quadrics(field))))


def example_family_member(a=1, C: Poly | None = None) -> Poly:
    F = parse_cubic(EXAMPLE_FAMILY_BASE) * a
    return F + C if C is not None else F


def assignment_from(slots: Sequence[int], quadrics: Sequence[QuadraticForm]) -> SlotAssignment:
    if len(slots) != len(quadrics):
        raise AssignmentError("number of slots and quadrics differ")
    return SlotAssignment(tuple(zip(slots, quadrics)))
