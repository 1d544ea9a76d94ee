"""Linear sections X_K = X cap P(K^perp): smoothness scanning, the
classification taxonomy, the quadrics Q_{kappa,K}, and constructors for
special / very special / generic sections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .clifford import DIM_S, DIM_V, MINUS, PLUS, bV, pairing, qV
from .fields import ExtField, Field, PrimeField, QQ, RationalField, get_ext_field
from .gamma import PureSpinorError, coords_in, gamma, polarize_mu, rho, rho_form
from .linalg import Subspace, SymBilinearForm, kernel_basis, mat, mat_vec, transpose
from .scan import ext_zero_locus, find_first_zero, num_projective_points
from .variety import (
    MU_INT,
    annihilator_kernel,
    is_pure,
    phi_v,
    random_isotropic,
    random_pure_witness,
    random_spinor,
    restrict_quadric,
    witness_from_spinor,
)

DEFAULT_MAX_DEGREE = 6
DEFAULT_BUDGET = 300_000
REDUCTION_PRIMES = (3, 5, 7)


def _pairing_rows(field: Field, vectors_minus):
    """Rows of functionals s -> <kappa, s> on S+ for each kappa given."""
    basis_plus = [
        tuple(field.one if k == i else field.zero for k in range(DIM_S))
        for i in range(DIM_S)
    ]
    return [
        tuple(pairing(field, kappa, b) for b in basis_plus) for kappa in vectors_minus
    ]


def perp_in_plus(K: Subspace) -> Subspace:
    """K^perp inside S+ under the duality pairing."""
    field = K.field
    if K.dim == 0:
        return Subspace.full(field, DIM_S)
    return Subspace(field, DIM_S, kernel_basis(field, mat(_pairing_rows(field, K.basis))))


def perp_in_minus(W: Subspace) -> Subspace:
    """{kappa in S- : <kappa, w> = 0 for all w in W}."""
    field = W.field
    if W.dim == 0:
        return Subspace.full(field, DIM_S)
    basis_minus = [
        tuple(field.one if k == i else field.zero for k in range(DIM_S))
        for i in range(DIM_S)
    ]
    rows = [
        tuple(pairing(field, b, w) for b in basis_minus) for w in W.basis
    ]
    return Subspace(field, DIM_S, kernel_basis(field, mat(rows)))


@dataclass(frozen=True)
class SectionK:
    field: Field
    K: Subspace
    Kperp: Subspace

    @classmethod
    def make(cls, K: Subspace) -> "SectionK":
        kp = perp_in_plus(K)
        assert kp.dim == DIM_S - K.dim
        return cls(K.field, K, kp)

    @property
    def k(self) -> int:
        return self.K.dim


@dataclass(frozen=True)
class SmoothnessCertificate:
    status: str  # "certified-singular" | "no-point-up-to-degree-M"
    max_degree: int
    witness: tuple | None  # (prime, degree, point coefficients on the K basis)
    scanned: tuple
    skipped: tuple
    notes: str = ""

    @property
    def smooth_so_far(self) -> bool:
        return self.status == "no-point-up-to-degree-M"


def _restricted_dual_forms(K: Subspace):
    return [restrict_quadric(K.field, c, K.basis) for c in MU_INT[MINUS]]


def _prime_smoothness_scan(K, q, max_degree, budget):
    forms = _restricted_dual_forms(K)
    k = K.dim
    scanned, skipped = [], []
    for m in range(1, max_degree + 1):
        n = num_projective_points(q**m, k)
        if n > budget:
            skipped.append(m)
            continue
        if m == 1:
            pt = find_first_zero(forms, q, k)
            if pt is not None:
                return ("certified-singular", (q, 1, pt), tuple(scanned), tuple(skipped))
        else:
            ext = get_ext_field(q, m)
            _, pts = ext_zero_locus(forms, ext, k, find_first=True)
            if pts:
                return ("certified-singular", (q, m, pts[0]), tuple(scanned), tuple(skipped))
        scanned.append(m)
    return ("no-point-up-to-degree-M", None, tuple(scanned), tuple(skipped))


def smoothness_scan(
    K: Subspace,
    max_degree: int = DEFAULT_MAX_DEGREE,
    budget: int = DEFAULT_BUDGET,
    reduction_primes=REDUCTION_PRIMES,
) -> SmoothnessCertificate:
    """Scan X^v cap P(K) for points over F_{q^m}, m = 1..max_degree.

    For k <= 5 emptiness over the algebraic closure is equivalent to X_K
    smooth; the scan certifies emptiness only up to the given degree, and
    levels whose point count exceeds the budget are skipped (recorded).
    Over the rationals the scan runs over a reduction prime set; a section
    is flagged certified-singular only when every scanned prime exhibits a
    point (modular evidence, noted as such).
    """
    field = K.field
    if isinstance(field, PrimeField):
        status, wit, scanned, skipped = _prime_smoothness_scan(
            K, field.p, max_degree, budget
        )
        return SmoothnessCertificate(status, max_degree, wit, scanned, skipped)
    if isinstance(field, RationalField):
        hits = []
        scanned, skipped = [], []
        for p in reduction_primes:
            Kp = _reduce_mod_p(K, p)
            if Kp is None:
                skipped.append(p)
                continue
            status, wit, _, _ = _prime_smoothness_scan(Kp, p, max_degree, budget)
            scanned.append(p)
            if status == "certified-singular":
                hits.append(wit)
        if scanned and len(hits) == len(scanned):
            return SmoothnessCertificate(
                "certified-singular",
                max_degree,
                hits[0],
                tuple(scanned),
                tuple(skipped),
                notes="modular evidence at every scanned reduction prime",
            )
        return SmoothnessCertificate(
            "no-point-up-to-degree-M", max_degree, None, tuple(scanned), tuple(skipped)
        )
    raise ValueError("smoothness_scan needs a prime field or the rationals")


def _reduce_mod_p(K: Subspace, p: int):
    fp = PrimeField(p)
    rows = []
    for row in K.basis:
        denom = 1
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        rows.append(tuple((x.numerator * denom // x.denominator) % p for x in row))
    Kp = Subspace(fp, K.ambient_dim, rows)
    return Kp if Kp.dim == K.dim else None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class ClassificationReport:
    k: int
    smoothness: SmoothnessCertificate
    label: str
    rho_data: tuple | None  # (rank, corank) of the relevant form, when computed
    f4_count: int | None
    notes: str = ""


def _gamma_span_fallback(K: Subspace, ext_degree: int):
    """Characteristic-2 stand-in for the polarization tests: the span of
    gamma over P(K)(F_{q^m}) and its total isotropy.  Equivalence with the
    rho test in characteristic 2 is geometrically motivated but unproven;
    callers see it flagged in the report notes."""
    q = K.field.p
    ext = get_ext_field(q, ext_degree)
    k = K.dim
    basis_cols = list(zip(*K.basis))
    vecs = []
    from .scan import ext_projective_blocks
    from .variety import mu

    for block in ext_projective_blocks(ext.q, k, 1 << 12):
        for row in block:
            t = [int(v) for v in row]
            kappa = tuple(
                _ext_dot(ext, t, col) for col in basis_cols
            )
            try:
                vecs.append(gamma(ext, kappa))
            except PureSpinorError:
                continue
    span = Subspace(ext, DIM_V, vecs)
    iso = all(
        qV(ext, a) == 0 and all(bV(ext, a, b) == 0 for b in span.basis)
        for a in span.basis
    )
    return span.dim, iso


def _ext_dot(ext, t, col):
    acc = 0
    for a, b in zip(t, col):
        acc = ext.add(acc, ext.mul(a, int(b)))
    return acc


def classify(
    K: Subspace,
    max_degree: int = DEFAULT_MAX_DEGREE,
    budget: int = DEFAULT_BUDGET,
    with_f4: bool = False,
) -> ClassificationReport:
    """Taxonomy: k=1 singular/smooth hyperplane; k=2 special/nonspecial via
    the line complex; k=3 very-special via the polarization span; k>=4
    generic with the rho_form rank reported."""
    field = K.field
    k = K.dim
    cert = smoothness_scan(K, max_degree, budget)
    notes = ""
    rho_data = None
    if k == 1:
        label = (
            "singular-hyperplane"
            if is_pure(field, K.basis[0], MINUS)
            else "smooth-hyperplane"
        )
    elif k == 2:
        if field.char != 2:
            val = rho(field, K.basis[0], K.basis[1])
            label = "special" if val.vanishes(field) else "nonspecial"
            rho_data = (0, 1) if val.vanishes(field) else (1, 0)
        else:
            dim, iso = _gamma_span_fallback(K, 2)
            label = "special" if (dim <= 3 and iso) else "nonspecial"
            notes = "char-2 fallback: gamma-span test (equivalence unproven)"
    elif k == 3:
        if field.char != 2:
            vecs = []
            for i in range(3):
                for j in range(i, 3):
                    vecs.append(polarize_mu(field, K.basis[i], K.basis[j]))
            span = Subspace(field, DIM_V, vecs)
            iso = all(
                qV(field, a) == field.zero
                and all(bV(field, a, b) == field.zero for b in span.basis)
                for a in span.basis
            )
            label = "very-special" if (span.dim == 5 and iso) else "generic"
            form = rho_form(field, K)
            rho_data = (form.form.rank(), form.form.corank())
        else:
            dim, iso = _gamma_span_fallback(K, 2)
            label = "very-special" if (dim == 5 and iso) else "generic"
            notes = "char-2 fallback: gamma-span test (equivalence unproven)"
    else:
        label = "generic"
        if field.char != 2 and k >= 2:
            form = rho_form(field, K)
            rho_data = (form.form.rank(), form.form.corank())
    f4_count = None
    if with_f4:
        from .spaces import f4_scan

        f4_count = len(f4_scan(K))
    return ClassificationReport(k, cert, label, rho_data, f4_count, notes)


class NonTransversalError(ValueError):
    pass


def q_kappa_K(kappa, section: SectionK):
    """The quadric Q_{kappa,K} = Q_{gamma(kappa)} cap P(K^perp).

    Returns (SymBilinearForm on 9-k coordinates, ambient linear dim, corank).
    """
    field = section.field
    if field.char == 2:
        raise ValueError("requires characteristic != 2")
    v = gamma(field, kappa)  # raises PureSpinorError on X^v
    sp = phi_v(field, v, PLUS)
    inter = sp.space.intersect(section.Kperp)
    expected = 9 - section.k
    if inter.dim != expected:
        raise NonTransversalError(
            f"S8_v cap K^perp has dim {inter.dim}, expected {expected}"
        )
    coords = [coords_in(sp.space, row) for row in inter.basis]
    gram = [
        [sp.form.apply(a, b) for b in coords] for a in coords
    ]
    form = SymBilinearForm(field, gram)
    return form, inter.dim, form.corank()


def _random_subspace_of(space: Subspace, rng, dim):
    field = space.field
    cols = transpose(space.basis)
    while True:
        rows = [
            mat_vec(field, cols, tuple(field.sample(rng) for _ in range(space.dim)))
            for _ in range(dim)
        ]
        sub = Subspace(field, space.ambient_dim, rows)
        if sub.dim == dim:
            return sub


def w_u3(field: Field, u3: Subspace) -> Subspace:
    """W_{U3}: the span of the 4-space spans over the line L^-_{U3} in X^v.

    This is the 8-dim fiber of the resolution of the line complex; dim 8 is
    asserted.
    """
    from .spaces import span_pi4

    T = annihilator_kernel(field, u3, MINUS)
    assert T.dim == 2
    pts = []
    b0, b1 = T.basis
    pts.append(b0)
    pts.append(b1)
    pts.append(tuple(field.add(a, b) for a, b in zip(b0, b1)))
    if field.char != 2:
        two = field.from_int(2)
        pts.append(tuple(field.add(a, field.mul(two, b)) for a, b in zip(b0, b1)))
    w = Subspace(field, DIM_S)
    for p in pts:
        tau = witness_from_spinor(field, p, MINUS)
        w = w.sum(span_pi4(tau))
    assert w.dim == 8
    return w


def make_section(
    kind: str,
    field: Field,
    seed: int = 0,
    max_degree: int = DEFAULT_MAX_DEGREE,
    budget: int = DEFAULT_BUDGET,
    max_tries: int = 200,
) -> SectionK:
    """Construct a section of the requested kind (deterministic in the seed).

    kind: "special", "very-special", or "generic-k" with k in 1..8.
    """
    rng = random.Random(seed)
    if kind == "special":
        return _make_special(field, rng, max_degree, budget, max_tries)
    if kind == "very-special":
        return _make_very_special(field, rng, max_degree, budget, max_tries)
    if kind.startswith("generic-"):
        k = int(kind.split("-", 1)[1])
        if not 1 <= k <= 8:
            raise ValueError("generic-k needs k in 1..8")
        return _make_generic(field, rng, k, max_degree, budget, max_tries)
    raise ValueError(f"unknown section kind {kind!r}")


def _smooth(K, max_degree, budget):
    return smoothness_scan(K, max_degree, budget).smooth_so_far


def _make_special(field, rng, max_degree, budget, max_tries):
    for _ in range(max_tries):
        u3 = random_isotropic(field, rng, 3)
        w = w_u3(field, u3)
        wperp = perp_in_minus(w)
        for _ in range(20):
            K = _random_subspace_of(wperp, rng, 2)
            if not _smooth(K, max_degree, budget):
                continue
            if field.char != 2 and not rho(field, K.basis[0], K.basis[1]).vanishes(field):
                continue
            return SectionK.make(K)
    raise RuntimeError("retry budget exhausted for special section")


def _make_very_special(field, rng, max_degree, budget, max_tries):
    from .spaces import span_pi4

    for _ in range(max_tries):
        tau = random_pure_witness(field, rng, MINUS)
        perp = perp_in_minus(span_pi4(tau))
        for _ in range(20):
            K = _random_subspace_of(perp, rng, 3)
            if not _smooth(K, max_degree, budget):
                continue
            return SectionK.make(K)
    raise RuntimeError("retry budget exhausted for very-special section")


def _make_generic(field, rng, k, max_degree, budget, max_tries):
    for _ in range(max_tries):
        K = Subspace(
            field, DIM_S, [random_spinor(field, rng, MINUS) for _ in range(k)]
        )
        if K.dim != k:
            continue
        if k <= 5 and not _smooth(K, max_degree, budget):
            continue
        if k == 2 and field.char != 2 and rho(field, K.basis[0], K.basis[1]).vanishes(field):
            continue
        if k == 3:
            if classify(K, max_degree=1, budget=budget).label == "very-special":
                continue
        return SectionK.make(K)
    raise RuntimeError("retry budget exhausted for generic section")
