"""Equations and membership for the spinor tenfold X in P(S+) and its dual
X^v in P(S-): the quadratic map mu, annihilators, the spinor 8-spaces S8_v
with their quadratic forms Phi_v, and random isotropic generation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import (
    DIM_S,
    DIM_V,
    MINUS,
    MU_INT,
    PLUS,
    basis_e,
    basis_f,
    bV,
    clifford_mul,
    eval_quadratic,
    other_half,
    qV,
)
from .fields import Field
from .linalg import Subspace, SymBilinearForm, kernel_basis, mat, mat_mul, mat_vec, rref, transpose


def mu(field: Field, coords, half: str):
    """The 10 quadrics cutting X (half +) resp. X^v (half -), as a vector in V."""
    return tuple(eval_quadratic(field, c, coords) for c in MU_INT[half])


def is_pure(field: Field, coords, half: str) -> bool:
    return any(c != field.zero for c in coords) and all(
        x == field.zero for x in mu(field, coords, half)
    )


def _basis_spinors(field):
    return [
        tuple(field.one if k == i else field.zero for k in range(DIM_S))
        for i in range(DIM_S)
    ]


def _v_basis(field):
    return [basis_e(field, i) for i in range(1, 6)] + [
        basis_f(field, i) for i in range(1, 6)
    ]


def annihilator(field: Field, coords, half: str) -> Subspace:
    """{v in V : v . s = 0}; dim 5 iff s is pure."""
    if all(c == field.zero for c in coords):
        raise ValueError("zero spinor has no annihilator")
    images = [clifford_mul(field, v, coords, half) for v in _v_basis(field)]
    # columns = images; kernel in V
    m = transpose(mat(images))
    return Subspace(field, DIM_V, kernel_basis(field, m))


def is_isotropic(field: Field, u: Subspace) -> bool:
    for i, a in enumerate(u.basis):
        if qV(field, a) != field.zero:
            return False
        for b in u.basis[i + 1 :]:
            if bV(field, a, b) != field.zero:
                return False
    return True


def annihilator_kernel(field: Field, u: Subspace, half: str) -> Subspace:
    """{s in S_half : w . s = 0 for all w in U}; dim = 2^(4 - dim U)."""
    if not 1 <= u.dim <= 5 or not is_isotropic(field, u):
        raise ValueError("U must be isotropic of dimension 1..5")
    basis = _basis_spinors(field)
    rows = []
    for w in u.basis:
        cols = [clifford_mul(field, w, b, half) for b in basis]
        rows.extend(transpose(mat(cols)))
    ker = Subspace(field, DIM_S, kernel_basis(field, mat(rows)))
    if u.dim <= 4:
        assert ker.dim == 2 ** (4 - u.dim)
    else:
        # maximal isotropic: the spinor line in the matching half, 0 in the other
        assert ker.dim <= 1
    return ker


F_FAMILY_HALF = PLUS  # spinor of F = <f1..f5> is 1 in Lambda^0


def f_reference(field: Field) -> Subspace:
    return Subspace(field, DIM_V, [basis_f(field, i) for i in range(1, 6)])


def half_of_maximal_isotropic(field: Field, w: Subspace) -> str:
    """Parity rule: W is in the plus family iff dim(W cap F) is odd."""
    d = w.intersect(f_reference(field)).dim
    return PLUS if d % 2 == 1 else MINUS


@dataclass(frozen=True)
class PureSpinorWitness:
    field: Field
    half: str
    spinor: tuple
    annihilator: Subspace

    def __post_init__(self):
        assert self.annihilator.dim == 5


def witness_from_isotropic5(field: Field, w: Subspace) -> PureSpinorWitness:
    if w.dim != 5 or not is_isotropic(field, w):
        raise ValueError("need a maximal isotropic subspace")
    half = half_of_maximal_isotropic(field, w)
    line = annihilator_kernel(field, w, half)
    assert line.dim == 1
    return PureSpinorWitness(field, half, line.basis[0], w)


def witness_from_spinor(field: Field, coords, half: str) -> PureSpinorWitness:
    ann = annihilator(field, coords, half)
    if ann.dim != 5:
        raise ValueError("spinor is not pure")
    return PureSpinorWitness(field, half, coords, ann)


def extend_isotropic4(field: Field, u4: Subspace):
    """The two maximal isotropic extensions of a 4-dim isotropic subspace,
    one per family.  Returns (plus witness, minus witness)."""
    if u4.dim != 4 or not is_isotropic(field, u4):
        raise ValueError("need an isotropic 4-space")
    out = {}
    for half in (PLUS, MINUS):
        line = annihilator_kernel(field, u4, half)
        s = line.basis[0]
        ann = annihilator(field, s, half)
        assert ann.dim == 5 and ann.contains_subspace(u4)
        out[half] = PureSpinorWitness(field, half, s, ann)
    return out[PLUS], out[MINUS]


def restrict_quadric(field: Field, coeff_int, basis_rows):
    """Restrict an integer quadratic coefficient matrix to a subspace basis.

    Returns the upper-triangular coefficient matrix of the restricted
    polynomial (valid in every characteristic).
    """
    c = mat(
        [[field.from_int(x) for x in row] for row in coeff_int]
    )
    b = mat(basis_rows)
    full = mat_mul(field, mat_mul(field, b, c), transpose(b))
    n = len(b)
    out = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = full[i][i]
        for j in range(i + 1, n):
            out[i][j] = field.add(full[i][j], full[j][i])
    return mat(out)


def eval_restricted(field: Field, coeff, t):
    acc = field.zero
    n = len(coeff)
    for i in range(n):
        xi = t[i]
        if xi == field.zero:
            continue
        row = coeff[i]
        for j in range(i, n):
            if row[j] != field.zero:
                acc = field.add(acc, field.mul(field.mul(xi, t[j]), row[j]))
    return acc


@dataclass(frozen=True)
class SpinorEightSpace:
    field: Field
    v: tuple
    half: str
    space: Subspace
    poly: tuple  # 8x8 upper-triangular coefficients of Phi_v (any characteristic)
    form: object  # SymBilinearForm, or None in characteristic 2

    def corank(self) -> int:
        return self.form.corank() if self.form is not None else -1


def phi_v(field: Field, v, half: str) -> SpinorEightSpace:
    """The 8-space S8_v = ker(v . -) on S_half with its quadric Q_v = X cap P(S8_v)."""
    if qV(field, v) != field.zero or all(c == field.zero for c in v):
        raise ValueError("v must be nonzero isotropic")
    vline = Subspace(field, DIM_V, [v])
    space = annihilator_kernel(field, vline, half)
    assert space.dim == 8
    restricted = [restrict_quadric(field, c, space.basis) for c in MU_INT[half]]
    # the ten restricted quadrics must span a rank-1 system
    vecs = []
    for r in restricted:
        vecs.append(tuple(r[i][j] for i in range(8) for j in range(i, 8)))
    _, rank, _ = rref(field, mat(vecs))
    assert rank == 1, "restricted quadrics do not form a rank-1 system"
    poly = next(
        r for r in restricted if any(any(x != field.zero for x in row) for row in r)
    )
    form = None
    if field.char != 2:
        inv2 = field.inv(field.from_int(2))
        gram = [[field.zero] * 8 for _ in range(8)]
        for i in range(8):
            gram[i][i] = poly[i][i]
            for j in range(i + 1, 8):
                gram[i][j] = gram[j][i] = field.mul(poly[i][j], inv2)
        form = SymBilinearForm(field, gram)
    return SpinorEightSpace(field, tuple(v), half, space, poly, form)


def _random_alternating(field: Field, rng):
    m = [[field.zero] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            x = field.sample(rng)
            m[i][j] = x
            m[j][i] = field.neg(x)
    return m


def random_maximal_isotropic(field: Field, rng, half: str = None) -> Subspace:
    """Random maximal isotropic via the alternating-graph cells over F,
    composed with coordinate swaps e_k <-> f_k to reach both families."""
    m = _random_alternating(field, rng)
    rows = []
    for i in range(5):
        r = [field.zero] * 10
        r[i] = field.one
        for j in range(5):
            r[5 + j] = m[i][j]
        rows.append(r)
    swaps = [k for k in range(5) if rng.random() < 0.4]
    if half is not None:
        # the plain graph is in the minus family; each swap flips it
        want_odd = half == PLUS
        if (len(swaps) % 2 == 1) != want_odd:
            k = rng.randrange(5)
            if k in swaps:
                swaps.remove(k)
            else:
                swaps.append(k)
    for r in rows:
        for k in swaps:
            r[k], r[5 + k] = r[5 + k], r[k]
    w = Subspace(field, DIM_V, rows)
    assert w.dim == 5 and is_isotropic(field, w)
    return w


def random_isotropic(field: Field, rng, dim: int) -> Subspace:
    """Random isotropic subspace of the given dimension (1..5)."""
    if not 1 <= dim <= 5:
        raise ValueError("dimension must be 1..5")
    while True:
        w = random_maximal_isotropic(field, rng)
        rows = [
            tuple(field.sample(rng) for _ in range(5)) for _ in range(dim)
        ]
        sub = Subspace(
            field,
            DIM_V,
            [mat_vec(field, transpose(w.basis), r) for r in rows],
        )
        if sub.dim == dim:
            return sub


def random_pure_witness(field: Field, rng, half: str) -> PureSpinorWitness:
    return witness_from_isotropic5(field, random_maximal_isotropic(field, rng, half))


def random_spinor(field: Field, rng, half: str):
    return tuple(field.sample(rng) for _ in range(DIM_S))
