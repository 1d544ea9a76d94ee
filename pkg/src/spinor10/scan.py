"""Vectorized point scans over prime fields.

Enumeration order is the lexicographic order of normalized projective
representatives (first nonzero coordinate = 1), realized as contiguous
blocks by leading-coordinate position; parallel runs merge block results
in block order, so output is independent of the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

DEFAULT_CHUNK = 1 << 16


def num_projective_points(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


def projective_blocks(q: int, d: int, chunk: int = DEFAULT_CHUNK):
    """Yield (n, d) float32 arrays of normalized representatives, in order."""
    for lead in range(d - 1, -1, -1):
        r = d - lead - 1
        total = q**r
        for start in range(0, total, chunk):
            n = min(chunk, total - start)
            idx = np.arange(start, start + n, dtype=np.int64)
            block = np.zeros((n, d), dtype=np.float32)
            block[:, lead] = 1.0
            for t in range(r):
                power = q ** (r - 1 - t)
                block[:, lead + 1 + t] = (idx // power) % q
            yield block


def find_first_zero(forms, q: int, d: int, chunk: int = DEFAULT_CHUNK):
    """First projective F_q-point (enumeration order) where all forms vanish."""
    mats = [np.asarray(c, dtype=np.int64) % q for c in forms]
    mats = [m.astype(np.float32) for m in mats]
    for block in projective_blocks(q, d, chunk):
        x = _filter_block(block, mats, q)
        if len(x):
            return tuple(int(v) for v in x[0])
    return None


class ExtTables:
    """Numpy arithmetic tables for F_{p^m} element indices (see fields.ExtField)."""

    def __init__(self, ext):
        self.ext = ext
        q = ext.q
        self.q = q
        self.p = ext.p
        log = np.full(q, 2 * (q - 1), dtype=np.int64)
        for code, e in ((c, i) for i, c in enumerate(ext.exp_table)):
            log[code] = e
        exp2 = np.zeros(4 * (q - 1) + 1, dtype=np.int64)
        for i in range(2 * (q - 1) - 1):
            exp2[i] = ext.exp_table[i % (q - 1)]
        self.log = log
        self.exp2 = exp2

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        # digitwise base-p addition (memory-light for large q)
        out = np.zeros_like(np.broadcast_arrays(a, b)[0])
        for t in range(self.ext.m):
            pw = self.p**t
            out += (((a // pw) + (b // pw)) % self.p) * pw
        return out

    def mul(self, a, b):
        return self.exp2[self.log[a] + self.log[b]]

    def mul_const(self, a, c):
        if c == 1:
            return a
        return self.exp2[self.log[a] + int(self.ext.log_table[c])]


from functools import lru_cache


@lru_cache(maxsize=None)
def _tables_for(ext):
    return ExtTables(ext)


def ext_projective_blocks(q: int, d: int, chunk: int = DEFAULT_CHUNK):
    """Normalized representatives over a field of q element *indices*."""
    for lead in range(d - 1, -1, -1):
        r = d - lead - 1
        total = q**r
        for start in range(0, total, chunk):
            n = min(chunk, total - start)
            idx = np.arange(start, start + n, dtype=np.int64)
            block = np.zeros((n, d), dtype=np.int64)
            block[:, lead] = 1
            for t in range(r):
                power = q ** (r - 1 - t)
                block[:, lead + 1 + t] = (idx // power) % q
            yield block


def ext_zero_locus(forms, ext, d: int, *, collect_limit: int = 0, find_first: bool = False, chunk: int = DEFAULT_CHUNK):
    """Scan P^{d-1}(F_{p^m}) for common zeros of quadratic forms.

    `forms` are (d, d) upper-triangular coefficient matrices with entries in
    the prime subfield (ints in [0, p)).  Returns (count, points) where
    points holds at most collect_limit index-vectors (or the first hit when
    find_first).
    """
    tables = _tables_for(ext)
    count = 0
    points = []
    for block in ext_projective_blocks(ext.q, d, chunk):
        x = block
        for c in forms:
            if not len(x):
                break
            acc = np.zeros(len(x), dtype=np.int64)
            for i in range(d):
                for j in range(i, d):
                    cij = int(c[i][j])
                    if cij:
                        term = tables.mul(x[:, i], x[:, j])
                        term = tables.mul_const(term, cij)
                        acc = tables.add(acc, term)
            x = x[acc == 0]
        count += len(x)
        if len(x) and (find_first or len(points) < collect_limit):
            for row in x:
                points.append(tuple(int(v) for v in row))
                if find_first or len(points) >= collect_limit:
                    break
        if find_first and points:
            return count, points
    return count, points


def _filter_block(block, forms, q):
    x = block
    for c in forms:
        if not len(x):
            break
        vals = np.mod(np.sum((x @ c) * x, axis=1), q)
        x = x[vals == 0.0]
    return x


def zero_locus(
    forms,
    q: int,
    d: int,
    *,
    collect: bool = False,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
):
    """Count (and optionally collect) projective F_q-points where all the
    quadratic forms vanish.  `forms` are (d, d) integer coefficient arrays.
    """
    mats = [np.asarray(c, dtype=np.int64) % q for c in forms]
    mats = [m.astype(np.float32) for m in mats]
    count = 0
    points = [] if collect else None
    blocks = projective_blocks(q, d, chunk)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = ex.map(lambda b: _filter_block(b, mats, q), blocks)
            for x in results:
                count += len(x)
                if collect:
                    points.extend(tuple(int(v) for v in row) for row in x)
    else:
        for block in blocks:
            x = _filter_block(block, mats, q)
            count += len(x)
            if collect:
                points.extend(tuple(int(v) for v in row) for row in x)
    return count, points
