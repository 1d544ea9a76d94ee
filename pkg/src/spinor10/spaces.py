"""Linear spaces on the spinor tenfold: spans of lines, planes, 3-spaces and
4-spaces, containment in sections, the F4 enumeration, and the 4-space /
maximal-quadric intersection dichotomy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import DIM_S, DIM_V, MINUS, PLUS, clifford_mul, pairing, qV
from .fields import Field, PrimeField
from .linalg import Subspace, mat
from .scan import zero_locus
from .variety import (
    MU_INT,
    PureSpinorWitness,
    annihilator_kernel,
    is_isotropic,
    restrict_quadric,
    witness_from_spinor,
)

_KINDS = {
    "line": ("U3", 2),
    "plane": ("U2+U5-", 3),
    "three-space-a": ("U2", 4),
    "three-space-b": ("U1+U5-", 4),
    "four-space": ("U5-", 5),
}


@dataclass(frozen=True)
class LinearSpaceOnX:
    kind: str
    witness: tuple  # the defining isotropic data, as Subspace(s)
    span: Subspace  # of S+, linear dim = projective dim + 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown kind {self.kind}")
        assert self.span.dim == _KINDS[self.kind][1]


def line_on_x(field: Field, u3: Subspace) -> LinearSpaceOnX:
    """L_{U3}: the line of maximal isotropics containing U3 (plus family)."""
    return LinearSpaceOnX("line", (u3,), annihilator_kernel(field, u3, PLUS))


def three_space_a(field: Field, u2: Subspace) -> LinearSpaceOnX:
    return LinearSpaceOnX("three-space-a", (u2,), annihilator_kernel(field, u2, PLUS))


def plane_on_x(field: Field, u2: Subspace, tau: "PureSpinorWitness") -> LinearSpaceOnX:
    """Pi^2_{U2, U5-}: 4-subspaces of U5- containing U2 (needs U2 inside U5-)."""
    if not tau.annihilator.contains_subspace(u2) or u2.dim != 2:
        raise ValueError("need a 2-dim subspace of U5-")
    span = span_pi4(tau).intersect(annihilator_kernel(field, u2, PLUS))
    return LinearSpaceOnX("plane", (u2, tau.annihilator), span)


def three_space_b(field: Field, u1: Subspace, tau: "PureSpinorWitness") -> LinearSpaceOnX:
    """Pi^3_{U1, U5-}: 4-subspaces of U5- containing the line U1."""
    if not tau.annihilator.contains_subspace(u1) or u1.dim != 1:
        raise ValueError("need a line inside U5-")
    span = span_pi4(tau).intersect(annihilator_kernel(field, u1, PLUS))
    return LinearSpaceOnX("three-space-b", (u1, tau.annihilator), span)


def four_space_on_x(tau: "PureSpinorWitness") -> LinearSpaceOnX:
    return LinearSpaceOnX("four-space", (tau.annihilator,), span_pi4(tau))


def span_pi4(tau: PureSpinorWitness) -> Subspace:
    """The linear span of Pi^4_{U5-} = Gr(4, U5-) inside S+.

    Equals the image V . tau of the Clifford action (a Spin-equivariant
    description of Lambda^4 U5-): linear in tau, dimension exactly 5, and
    containing the plus extension of every 4-dim subspace of U5-.
    """
    if tau.half != MINUS:
        raise ValueError("need a minus-family pure spinor")
    field = tau.field
    from .variety import _v_basis

    rows = [clifford_mul(field, v, tau.spinor, MINUS) for v in _v_basis(field)]
    span = Subspace(field, DIM_S, rows)
    assert span.dim == 5
    return span


def contains(K: Subspace, space: Subspace) -> bool:
    """Is the given span of S+ contained in X_K's ambient P(K^perp)?"""
    field = K.field
    return all(
        pairing(field, kappa, s) == field.zero
        for kappa in K.basis
        for s in space.basis
    )


def _f4_constraint_space(K: Subspace) -> Subspace:
    """{tau in S- : <kappa, v . tau> = 0 for all kappa in K, v in V}.

    For pure tau this is exactly the condition span_pi4(tau) subset K^perp,
    since span_pi4(tau) = V . tau.
    """
    field = K.field
    from .linalg import kernel_basis
    from .variety import _v_basis

    basis_minus = [
        tuple(field.one if k == i else field.zero for k in range(DIM_S))
        for i in range(DIM_S)
    ]
    rows = []
    for kappa in K.basis:
        for v in _v_basis(field):
            rows.append(
                tuple(
                    pairing(field, kappa, clifford_mul(field, v, b, MINUS))
                    for b in basis_minus
                )
            )
    if not rows:
        return Subspace.full(field, DIM_S)
    return Subspace(field, DIM_S, kernel_basis(field, mat(rows)))


def f4_scan(K: Subspace, workers: int = 1):
    """All F_q-points tau of X^v with the 4-space Pi^4 of tau inside X_K.

    The scan of P(S-)(F_q) is restricted exactly (not heuristically) to the
    linear constraint subspace above before filtering mu = 0.
    """
    field = K.field
    if not isinstance(field, PrimeField) or field.p > 3:
        raise ValueError("f4_scan supports q in {2, 3}")
    q = field.p
    cspace = _f4_constraint_space(K)
    if cspace.dim == 0:
        return []
    forms = [restrict_quadric(field, c, cspace.basis) for c in MU_INT[MINUS]]
    _, pts = zero_locus(forms, q, cspace.dim, collect=True, workers=workers)
    out = []
    basis_t = list(zip(*cspace.basis))
    for t in pts:
        tau = tuple(
            sum(a * b for a, b in zip(t, col)) % q for col in basis_t
        )
        out.append(witness_from_spinor(field, tau, MINUS))
    return out


def pi4_meet_quadric(tau: PureSpinorWitness, v) -> int:
    """dim(span Pi^4 cap span Q_v): 4 if v in U5-, else 1."""
    field = tau.field
    if qV(field, v) != field.zero:
        raise ValueError("v must be isotropic")
    vline = Subspace(field, DIM_V, [v])
    s8 = annihilator_kernel(field, vline, PLUS)
    return span_pi4(tau).intersect(s8).dim
