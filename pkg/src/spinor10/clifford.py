"""The split quadratic space V = F^10 and the half-spinor modules S+, S-.

Model: V has hyperbolic basis e1..e5, f1..f5 with q_V(sum a_i e_i + b_i f_i)
= sum a_i b_i.  S+ (resp. S-) is the even (resp. odd) part of the exterior
algebra on <e1..e5>; e_i acts by wedge, f_i by contraction.

Coordinate order (part of the wire format): subsets T of {1..5} with |T|
even (plus) or odd (minus), sorted by (|T|, lexicographic).  For S+ this is
{}, {1,2}, {1,3}, {1,4}, {1,5}, {2,3}, ..., {4,5}, {1,2,3,4}, ..., {2,3,4,5}.

The duality pairing S- x S+ -> F reads off the coefficient of e12345 in
rev(t) ^ s.  Its sign convention is pinned at import time by a calibration
against the quadratic map mu (see `PAIRING_VARIANT`).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .fields import Field

PLUS, MINUS = "+", "-"

_ALL = [
    s for size in range(6) for s in combinations(range(1, 6), size)
]
PLUS_SUBSETS = tuple(s for s in _ALL if len(s) % 2 == 0)
MINUS_SUBSETS = tuple(s for s in _ALL if len(s) % 2 == 1)
SUBSETS = {PLUS: PLUS_SUBSETS, MINUS: MINUS_SUBSETS}
SUBSET_INDEX = {
    half: {s: i for i, s in enumerate(subs)} for half, subs in SUBSETS.items()
}
DIM_S = 16
DIM_V = 10


def other_half(half: str) -> str:
    return MINUS if half == PLUS else PLUS


def _wedge(i, subset):
    """e_i ^ e_subset -> (subset', sign) or None."""
    if i in subset:
        return None
    before = sum(1 for t in subset if t < i)
    return tuple(sorted(subset + (i,))), -1 if before % 2 else 1


def _contract(i, subset):
    """iota_{f_i} e_subset -> (subset', sign) or None."""
    if i not in subset:
        return None
    pos = subset.index(i)
    return subset[:pos] + subset[pos + 1 :], -1 if pos % 2 else 1


def _action_tables():
    # tables[half][i-1] maps source index -> (target index in other half, sign)
    e_tab = {PLUS: [], MINUS: []}
    f_tab = {PLUS: [], MINUS: []}
    for half in (PLUS, MINUS):
        tgt = SUBSET_INDEX[other_half(half)]
        for i in range(1, 6):
            erow, frow = [], []
            for s in SUBSETS[half]:
                w = _wedge(i, s)
                erow.append((tgt[w[0]], w[1]) if w else None)
                c = _contract(i, s)
                frow.append((tgt[c[0]], c[1]) if c else None)
            e_tab[half].append(tuple(erow))
            f_tab[half].append(tuple(frow))
    return e_tab, f_tab


E_TABLE, F_TABLE = _action_tables()


def clifford_mul(field: Field, v, coords, half: str):
    """Clifford action of v in V (10 coords a1..a5, b1..b5) on a half spinor."""
    out = [field.zero] * DIM_S
    etab, ftab = E_TABLE[half], F_TABLE[half]
    for idx, c in enumerate(coords):
        if c == field.zero:
            continue
        for i in range(5):
            a = v[i]
            if a != field.zero:
                hit = etab[i][idx]
                if hit:
                    j, sign = hit
                    term = field.mul(a, c)
                    out[j] = field.add(out[j], term if sign > 0 else field.neg(term))
            b = v[5 + i]
            if b != field.zero:
                hit = ftab[i][idx]
                if hit:
                    j, sign = hit
                    term = field.mul(b, c)
                    out[j] = field.add(out[j], term if sign > 0 else field.neg(term))
    return tuple(out)


def qV(field: Field, v):
    acc = field.zero
    for i in range(5):
        acc = field.add(acc, field.mul(v[i], v[5 + i]))
    return acc


def bV(field: Field, v, w):
    acc = field.zero
    for i in range(5):
        acc = field.add(acc, field.mul(v[i], w[5 + i]))
        acc = field.add(acc, field.mul(v[5 + i], w[i]))
    return acc


def basis_e(field: Field, i: int):
    v = [field.zero] * 10
    v[i - 1] = field.one
    return tuple(v)


def basis_f(field: Field, i: int):
    v = [field.zero] * 10
    v[4 + i] = field.one
    return tuple(v)


def _shuffle_sign(t, s):
    inv = sum(1 for a in t for b in s if b < a)
    return -1 if inv % 2 else 1


def _pairing_terms(variant: str):
    """(minus index, plus index, sign) triples for <t, s> = [rev(t) ^ s]_top."""
    terms = []
    full = frozenset(range(1, 6))
    for ti, t in enumerate(MINUS_SUBSETS):
        comp = tuple(sorted(full - set(t)))
        si = SUBSET_INDEX[PLUS][comp]
        d = len(t)
        if variant == "reversal":
            vsign = -1 if (d * (d - 1) // 2) % 2 else 1
        else:  # grade involution
            vsign = -1 if d % 2 else 1
        terms.append((ti, si, vsign * _shuffle_sign(t, comp)))
    return tuple(terms)


_PAIR_TERMS = {v: _pairing_terms(v) for v in ("reversal", "involution")}


def _pairing_with(variant, field, t_coords, s_coords):
    acc = field.zero
    for ti, si, sign in _PAIR_TERMS[variant]:
        x, y = t_coords[ti], s_coords[si]
        if x != field.zero and y != field.zero:
            term = field.mul(x, y)
            acc = field.add(acc, term if sign > 0 else field.neg(term))
    return acc


class _ZZ:
    """Plain integer arithmetic, used for the symbolic precomputations."""

    char = 0
    zero = 0
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a


ZZ = _ZZ()


def _mu_matrices(variant: str, half: str):
    """Integer 16x16 coefficient matrices of the 10 coordinates of mu.

    Coordinate order matches VecV: a1..a5 (from <f_j . s, s>) then b1..b5
    (from <e_j . s, s>).  mu_w(s) = s^T C_w s as a polynomial identity over
    the integers, hence valid after reduction in any characteristic.
    """
    basis = [
        tuple(1 if k == idx else 0 for k in range(DIM_S)) for idx in range(DIM_S)
    ]
    ws = [basis_f(ZZ, j) for j in range(1, 6)] + [basis_e(ZZ, j) for j in range(1, 6)]
    mats = []
    for w in ws:
        images = [clifford_mul(ZZ, w, b, half) for b in basis]
        if half == PLUS:
            m = [
                [_pairing_with(variant, ZZ, images[i], basis[j]) for j in range(DIM_S)]
                for i in range(DIM_S)
            ]
        else:
            m = [
                [_pairing_with(variant, ZZ, basis[i], images[j]) for j in range(DIM_S)]
                for i in range(DIM_S)
            ]
        # fold into an upper-triangular polynomial coefficient matrix, then
        # divide by 2: <v.s, s> is twice a primitive integral quadric (the
        # bilinear matrix m is symmetric with even diagonal), and only the
        # primitive model cuts the variety in characteristic 2
        c = [[0] * DIM_S for _ in range(DIM_S)]
        for i in range(DIM_S):
            assert m[i][i] % 2 == 0
            c[i][i] = m[i][i] // 2
            for j in range(i + 1, DIM_S):
                t = m[i][j] + m[j][i]
                assert t % 2 == 0
                c[i][j] = t // 2
        mats.append(tuple(tuple(row) for row in c))
    return tuple(mats)


def eval_quadratic(field: Field, coeff, coords):
    """Evaluate an integer upper-triangular coefficient matrix at coords."""
    acc = field.zero
    for i, ci in enumerate(coeff):
        xi = coords[i]
        if xi == field.zero:
            continue
        for j in range(i, DIM_S):
            if ci[j]:
                term = field.mul(field.mul(xi, coords[j]), field.from_int(ci[j]))
                acc = field.add(acc, term)
    return acc


def _spinor(subsets_coeffs, half):
    s = [0] * DIM_S
    for subset, c in subsets_coeffs:
        s[SUBSET_INDEX[half][subset]] = c
    return tuple(s)


def _calibrate():
    """Pin the pairing variant: mu must vanish on the pure witnesses 1 and
    e12 and not on 1 + e1234 (whose annihilator is the line <f5>)."""
    one = _spinor([((), 1)], PLUS)
    e12 = _spinor([((1, 2), 1)], PLUS)
    witness = _spinor([((), 1), ((1, 2, 3, 4), 1)], PLUS)
    for variant in ("reversal", "involution"):
        mats = _mu_matrices(variant, PLUS)
        mu = lambda s: [sum(r[j] * s[i] * s[j] for i, r in enumerate(m) for j in range(DIM_S)) for m in mats]
        vals = [
            all(x == 0 for x in mu(one)),
            all(x == 0 for x in mu(e12)),
            any(x != 0 for x in mu(witness)),
        ]
        if all(vals):
            return variant
    raise AssertionError("pairing calibration failed for both variants")


PAIRING_VARIANT = _calibrate()
PAIR_TERMS = _PAIR_TERMS[PAIRING_VARIANT]
MU_INT = {h: _mu_matrices(PAIRING_VARIANT, h) for h in (PLUS, MINUS)}


def pairing(field: Field, t_coords, s_coords):
    """Duality pairing <t, s> with t in S-, s in S+."""
    return _pairing_with(PAIRING_VARIANT, field, t_coords, s_coords)


@dataclass(frozen=True)
class HalfSpinor:
    """A half spinor: the half tag and 16 coordinates in the documented order."""

    half: str
    coords: tuple

    def __post_init__(self):
        if self.half not in (PLUS, MINUS):
            raise ValueError("half must be '+' or '-'")
        if len(self.coords) != DIM_S:
            raise ValueError("a half spinor has 16 coordinates")

    @classmethod
    def from_subsets(cls, field, half, subsets_coeffs):
        s = [field.zero] * DIM_S
        for subset, c in subsets_coeffs:
            s[SUBSET_INDEX[half][tuple(sorted(subset))]] = c
        return cls(half, tuple(s))

    def is_zero(self, field):
        return all(c == field.zero for c in self.coords)
