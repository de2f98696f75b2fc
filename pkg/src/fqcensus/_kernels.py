"""Compiled unimodularity counting for the degree-m matrix families.

Same pivoting as ``fq_polyalg._smith_diagonal`` (minimal degree, ties by
(row, col), division by the pivot, restart on a nonzero remainder), but
on fixed-size coefficient buffers.  Divisibility of the trailing block is
never enforced: a completed pivot that is not a unit already makes the
product of the invariant factors a nonunit, so the test stops there.

A matrix whose intermediate degrees outgrow the buffer is reported back
by code so the caller can settle it with the reference implementation.
"""

from __future__ import annotations

import numpy as np
from numba import njit

OVERFLOW_CAPACITY = 256


@njit(cache=True)
def _mul_sub(dst, ddst, f, df, src, dsrc, sub, mul):
    # dst -= f * src, returns the new degree of dst or -2 on overflow
    nd = df + dsrc
    if nd >= dst.shape[0]:
        return -2
    for a in range(df + 1):
        fa = f[a]
        if fa == 0:
            continue
        for b in range(dsrc + 1):
            sb = src[b]
            if sb != 0:
                dst[a + b] = sub[dst[a + b], mul[fa, sb]]
    d = ddst if ddst > nd else nd
    while d >= 0 and dst[d] == 0:
        d -= 1
    return d


@njit(cache=True)
def _quotient(a, da, b, db, work, quot, sub, mul, inv):
    # quotient of a by b into quot; returns its degree (-1 if deg a < deg b)
    if da < db:
        return -1
    for i in range(da + 1):
        work[i] = a[i]
    lead = inv[b[db]]
    for s in range(da - db, -1, -1):
        c = mul[work[s + db], lead]
        quot[s] = c
        if c != 0:
            for u in range(db + 1):
                work[s + u] = sub[work[s + u], mul[c, b[u]]]
    return da - db


@njit(cache=True)
def _remainder_is_zero(a, da, b, db, work, quot, sub, mul, inv):
    if da < db:
        return da < 0
    _quotient(a, da, b, db, work, quot, sub, mul, inv)
    for i in range(db):
        if work[i] != 0:
            return False
    return True


@njit(cache=True)
def _swap_rows(M, deg, i, j):
    if i == j:
        return
    for c in range(M.shape[1]):
        for t in range(M.shape[2]):
            tmp = M[i, c, t]
            M[i, c, t] = M[j, c, t]
            M[j, c, t] = tmp
        td = deg[i, c]
        deg[i, c] = deg[j, c]
        deg[j, c] = td


@njit(cache=True)
def _swap_cols(M, deg, i, j):
    if i == j:
        return
    for r in range(M.shape[0]):
        for t in range(M.shape[2]):
            tmp = M[r, i, t]
            M[r, i, t] = M[r, j, t]
            M[r, j, t] = tmp
        td = deg[r, i]
        deg[r, i] = deg[r, j]
        deg[r, j] = td


@njit(cache=True)
def unimodular_status(M, deg, work, quot, sub, mul, inv):
    """1 if unimodular, 0 if not, -1 on buffer overflow.  Destroys M."""
    nr, nc = deg.shape
    t = 0
    while t < nc:
        bd = 1 << 30
        bi = -1
        bj = -1
        for i in range(t, nr):
            for j in range(t, nc):
                d = deg[i, j]
                if d >= 0 and d < bd:
                    bd = d
                    bi = i
                    bj = j
        if bi < 0:
            return 0
        _swap_rows(M, deg, t, bi)
        _swap_cols(M, deg, t, bj)
        dp = deg[t, t]
        dirty = False
        for i in range(t + 1, nr):
            if deg[i, t] < 0:
                continue
            dq = _quotient(M[i, t], deg[i, t], M[t, t], dp, work, quot, sub, mul, inv)
            if dq < 0:
                dirty = True
                continue
            for j in range(t, nc):
                if deg[t, j] >= 0:
                    nd = _mul_sub(M[i, j], deg[i, j], quot, dq, M[t, j], deg[t, j], sub, mul)
                    if nd == -2:
                        return -1
                    deg[i, j] = nd
            if deg[i, t] >= 0:
                dirty = True
        if dirty:
            continue
        if dp == 0:
            t += 1
            continue
        # nonunit pivot with a clear column: if it also divides the pivot
        # row, it is a completed nonunit diagonal entry
        for j in range(t + 1, nc):
            if 0 <= deg[t, j] < dp:
                dirty = True
            elif deg[t, j] >= 0 and not _remainder_is_zero(
                M[t, j], deg[t, j], M[t, t], dp, work, quot, sub, mul, inv
            ):
                # column operation: only row t changes, to the remainder
                for s in range(dp):
                    M[t, j, s] = work[s]
                for s in range(dp, M.shape[2]):
                    M[t, j, s] = 0
                d = dp - 1
                while d >= 0 and M[t, j, d] == 0:
                    d -= 1
                deg[t, j] = d
                dirty = True
        if dirty:
            continue
        return 0
    return 1


@njit(cache=True)
def count_family(n, k, m, q, lo, hi, width, sub, mul, inv, overflow):
    """Count unimodular x^m [I_k; 0] + sum x^i A_i over codes [lo, hi).

    Codes are base q over the concatenated row-major entries of
    A_0, ..., A_{m-1}, most significant digit first.  Overflowing codes go
    to ``overflow`` (up to its length); returns (count, overflow_total).
    """
    nk = n * k
    L = nk * m
    digits = np.zeros(L, np.int64)
    c = lo
    for i in range(L - 1, -1, -1):
        digits[i] = c % q
        c //= q
    M = np.zeros((n, k, width), np.int64)
    deg = np.zeros((n, k), np.int64)
    work = np.zeros(width, np.int64)
    quot = np.zeros(width, np.int64)
    count = 0
    n_over = 0
    for code in range(lo, hi):
        for i in range(n):
            for j in range(k):
                for s in range(width):
                    M[i, j, s] = 0
                top = -1
                for s in range(m):
                    v = digits[s * nk + i * k + j]
                    M[i, j, s] = v
                    if v != 0:
                        top = s
                if i == j:
                    M[i, j, m] = 1
                    top = m
                deg[i, j] = top
        status = unimodular_status(M, deg, work, quot, sub, mul, inv)
        if status == 1:
            count += 1
        elif status < 0:
            if n_over < overflow.shape[0]:
                overflow[n_over] = code
            n_over += 1
        pos = L - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < q:
                break
            digits[pos] = 0
            pos -= 1
    return count, n_over


def field_arrays(ctx) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    sub = np.array(ctx.sub_table, dtype=np.int64)
    mul = np.array(ctx.mul_table, dtype=np.int64)
    inv = np.array(ctx.inv_table, dtype=np.int64)
    return sub, mul, inv


def buffer_width(k: int, m: int) -> int:
    return (k + 2) * m + 4
