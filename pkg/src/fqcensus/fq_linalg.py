"""Dense exact linear algebra over F_q.

Matrices hold element codes in a flat row-major tuple.  Subspaces are
identified by the reduced row echelon form of a basis, which is canonical,
so two ``SubspaceBasis`` values compare equal iff they span the same space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import check_budget
from .fq_polyalg import ONE, PolyFq, pdivmod, pmul, pneg, psub, ptrim
from .gf_core import FieldCtx


@dataclass(frozen=True)
class MatrixFq:
    rows: int
    cols: int
    entries: tuple[int, ...]
    ctx: FieldCtx

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence[int]], cols: int | None = None):
        nr = len(rows)
        nc = len(rows[0]) if nr else (cols or 0)
        flat = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            flat.extend(int(x) % ctx.q for x in r)
        return cls(nr, nc, tuple(flat), ctx)

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> "MatrixFq":
        return cls(rows, cols, (0,) * (rows * cols), ctx)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "MatrixFq":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)), ctx)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "MatrixFq":
        e, r, c = self.entries, self.rows, self.cols
        return MatrixFq(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)), self.ctx)

    @property
    def T(self) -> "MatrixFq":
        return self.transpose()

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        return mat_mul(self, other)

    def code(self) -> int:
        """Base-q code with the first row-major entry most significant."""
        q, out = self.ctx.q, 0
        for x in self.entries:
            out = out * q + x
        return out

    def column_block(self, start: int, stop: int) -> "MatrixFq":
        return MatrixFq.from_rows(
            self.ctx, [r[start:stop] for r in self.to_rows()], cols=stop - start
        )

    def row_block(self, start: int, stop: int) -> "MatrixFq":
        c = self.cols
        return MatrixFq(stop - start, c, self.entries[start * c:stop * c], self.ctx)


def vstack(*blocks: MatrixFq) -> MatrixFq:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("column counts differ")
    return MatrixFq(
        sum(b.rows for b in blocks), cols, sum((b.entries for b in blocks), ()), blocks[0].ctx
    )


def hstack(*blocks: MatrixFq) -> MatrixFq:
    return vstack(*(b.transpose() for b in blocks)).transpose()


def matrix_from_code(code: int, rows: int, cols: int, ctx: FieldCtx) -> MatrixFq:
    q, n = ctx.q, rows * cols
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        code, digits[i] = divmod(code, q)
    if code:
        raise ValueError("code out of range")
    return MatrixFq(rows, cols, tuple(digits), ctx)


def _same_ctx(a: MatrixFq, b: MatrixFq) -> None:
    if a.ctx != b.ctx:
        raise ValueError("matrices over different fields")


def mul_rows(ctx: FieldCtx, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int, cols: int) -> list[list[int]]:
    mul, add = ctx.mul_table, ctx.add_table
    out = []
    for arow in a:
        acc = [0] * cols
        for t in range(inner):
            x = arow[t]
            if x:
                mrow = mul[x]
                brow = b[t]
                for j in range(cols):
                    if brow[j]:
                        acc[j] = add[acc[j]][mrow[brow[j]]]
        out.append(acc)
    return out


def mat_mul(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    _same_ctx(a, b)
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    prod = mul_rows(a.ctx, a.to_rows(), b.to_rows(), a.cols, b.cols)
    return MatrixFq(a.rows, b.cols, tuple(x for r in prod for x in r), a.ctx)


def rref_rows(ctx: FieldCtx, rows: list[list[int]], ncols: int) -> list[int]:
    """Bring ``rows`` to reduced row echelon form in place; return pivot columns.

    Zero rows end up at the bottom.
    """
    mul, sub, inv = ctx.mul_table, ctx.sub_table, ctx.inv_table
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if prow[c] != 1:
            s = mul[inv[prow[c]]]
            for j in range(c, ncols):
                prow[j] = s[prow[j]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                row = rows[i]
                f = mul[row[c]]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = sub[row[j]][f[prow[j]]]
        pivots.append(c)
        r += 1
    return pivots


def rank_rows(ctx: FieldCtx, rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(rref_rows(ctx, [list(r) for r in rows], ncols))


def rank(m: MatrixFq) -> int:
    return rank_rows(m.ctx, m.to_rows(), m.cols)


def rref_and_kernel(m: MatrixFq) -> tuple[MatrixFq, MatrixFq]:
    """Reduced row echelon form and a right-kernel basis (as columns)."""
    ctx = m.ctx
    rows = m.to_rows()
    pivots = rref_rows(ctx, rows, m.cols)
    rref = MatrixFq(m.rows, m.cols, tuple(x for r in rows for x in r), ctx)
    free = [c for c in range(m.cols) if c not in pivots]
    neg = ctx.neg_table
    basis_cols = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = neg[rows[r][f]]
        basis_cols.append(v)
    kernel = MatrixFq.from_rows(ctx, basis_cols, cols=m.cols).transpose() if basis_cols \
        else MatrixFq.zeros(ctx, m.cols, 0)
    return rref, kernel


def char_poly(a: MatrixFq) -> PolyFq:
    """det(xI - a) by fraction-free (Bareiss) elimination over F_q[x]."""
    if a.rows != a.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    return PolyFq(char_poly_raw(a.ctx, a.to_rows()), a.ctx)


def char_poly_raw(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(rows)
    neg = ctx.neg_table
    M = [
        [(neg[rows[i][j]], 1) if i == j else ptrim([neg[rows[i][j]]]) for j in range(n)]
        for i in range(n)
    ]
    sign_flip = False
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                # unreachable for xI - A, whose diagonal entries are nonzero
                # until elimination, but kept for a general determinant
                return ()
            M[k], M[swap] = M[swap], M[k]
            sign_flip = not sign_flip
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = psub(ctx, pmul(ctx, M[i][j], pk), pmul(ctx, mik, M[k][j]))
                quo, rem = pdivmod(ctx, num, prev)
                assert not rem, "Bareiss division must be exact"
                M[i][j] = quo
            M[i][k] = ()
        prev = pk
    det = M[n - 1][n - 1] if n else ONE
    if sign_flip:
        det = pneg(ctx, det)
    assert det and det[-1] == 1 and len(det) == n + 1
    return det


def _check_pair(C: MatrixFq, A: MatrixFq) -> None:
    _same_ctx(C, A)
    if A.rows != A.cols or C.cols != A.rows:
        raise ValueError(f"need A k x k and C (n-k) x k, got A {A.rows}x{A.cols}, C {C.rows}x{C.cols}")


def observability_rank(C: MatrixFq, A: MatrixFq) -> int:
    """Rank of the stack [C; CA; ...; CA^(k-1)]."""
    _check_pair(C, A)
    ctx, k = A.ctx, A.rows
    arows = A.to_rows()
    block = C.to_rows()
    stacked: list[list[int]] = []
    for _ in range(k):
        stacked.extend(block)
        block = mul_rows(ctx, block, arows, k, k)
    return rank_rows(ctx, stacked, k)


def kernel_intersection_dim(C: MatrixFq, A: MatrixFq) -> int:
    """dim of the intersection of ker(CA^i), i < k, by shrinking a kernel basis.

    Starts from a basis K of ker C and repeatedly keeps the part of span(K)
    that CA^i also annihilates.
    """
    _check_pair(C, A)
    ctx, k = A.ctx, A.rows
    if k == 0:
        return 0
    _, K = rref_and_kernel(C)
    power = MatrixFq.identity(ctx, k)
    for _ in range(1, k):
        if K.cols == 0:
            return 0
        power = mat_mul(power, A)
        image = mat_mul(mat_mul(C, power), K)
        _, coeffs = rref_and_kernel(image)
        K = mat_mul(K, coeffs)
    return K.cols


def is_zero_kernel_pair(C: MatrixFq, A: MatrixFq, method: str = "rank") -> bool:
    """(C, A) has trivial common kernel over CA^i, i < k.

    ``method="rank"`` tests the stacked observability matrix for rank k;
    ``method="kernels"`` intersects the kernels directly.
    """
    if method == "rank":
        return observability_rank(C, A) == A.rows
    if method == "kernels":
        return kernel_intersection_dim(C, A) == 0
    raise ValueError(f"unknown method {method!r}")


def reachability_rank(A: MatrixFq, B: MatrixFq) -> int:
    _same_ctx(A, B)
    if A.rows != A.cols or B.rows != A.rows:
        raise ValueError(f"need A k x k and B k x m, got A {A.rows}x{A.cols}, B {B.rows}x{B.cols}")
    ctx, k, m = A.ctx, A.rows, B.cols
    arows = A.to_rows()
    block = B.to_rows()
    cols: list[list[int]] = [[] for _ in range(k)]
    for _ in range(k):
        for i in range(k):
            cols[i].extend(block[i])
        block = mul_rows(ctx, arows, block, k, m)
    return rank_rows(ctx, cols, k * m)


def is_reachable(A: MatrixFq, B: MatrixFq) -> bool:
    """Kalman condition: rank [B AB ... A^(k-1)B] = k."""
    return reachability_rank(A, B) == A.rows


def iter_digits(length: int, q: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """Digit tuples of codes ``start..stop-1`` (base q, most significant first)."""
    it = itertools.product(range(q), repeat=length)
    return itertools.islice(it, start, stop)


def enumerate_matrices(
    rows: int,
    cols: int,
    ctx: FieldCtx,
    start: int = 0,
    stop: int | None = None,
    budget: int | None = None,
) -> Iterator[MatrixFq]:
    """All q^(rows*cols) matrices in code order, or the code range [start, stop)."""
    total = ctx.q ** (rows * cols)
    stop = total if stop is None else min(stop, total)
    check_budget(stop - start, budget, f"{rows}x{cols} matrices over F_{ctx.q}")
    for digits in iter_digits(rows * cols, ctx.q, start, stop):
        yield MatrixFq(rows, cols, digits, ctx)


@dataclass(frozen=True)
class SubspaceBasis:
    n: int
    k: int
    basis: MatrixFq  # k x n, RREF, full row rank

    def __post_init__(self):
        if self.basis.rows != self.k or self.basis.cols != self.n:
            raise ValueError("basis shape does not match (k, n)")

    @classmethod
    def span(cls, m: MatrixFq) -> "SubspaceBasis":
        """Canonical basis of the row space of ``m``."""
        rows = m.to_rows()
        piv = rref_rows(m.ctx, rows, m.cols)
        rows = rows[:len(piv)]
        return cls(m.cols, len(piv), MatrixFq.from_rows(m.ctx, rows, cols=m.cols))

    @property
    def pivots(self) -> tuple[int, ...]:
        out = []
        for r in self.basis.to_rows():
            out.append(next(j for j, x in enumerate(r) if x))
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        return reduce_vector(self.basis.ctx, self.basis.to_rows(), self.pivots, v) is None


def reduce_vector(ctx: FieldCtx, rref: Sequence[Sequence[int]], pivots: Sequence[int], v: Sequence[int]) -> list[int] | None:
    """Reduce ``v`` by RREF rows; None if it lies in their span, else the residue."""
    mul, sub = ctx.mul_table, ctx.sub_table
    w = list(v)
    for row, pc in zip(rref, pivots):
        c = w[pc]
        if c:
            f = mul[c]
            for j in range(pc, len(w)):
                if row[j]:
                    w[j] = sub[w[j]][f[row[j]]]
    return None if not any(w) else w


def count_subspaces_by_pivots(n: int, k: int, q: int) -> int:
    # sum over pivot sets of q^(free entries); used only for the budget check
    total = 0
    for piv in itertools.combinations(range(n), k):
        free = sum(n - p - (k - i) for i, p in enumerate(piv))
        total += q**free
    return total


def enumerate_subspaces(n: int, k: int, ctx: FieldCtx, budget: int | None = None) -> Iterator[SubspaceBasis]:
    """Every k-dimensional subspace of F_q^n, once, as its RREF basis.

    Pivot column sets are taken in lexicographic order; for each, the free
    entries (right of a row's pivot, outside pivot columns) run in code order.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    check_budget(count_subspaces_by_pivots(n, k, ctx.q), budget, "subspace enumeration")
    q = ctx.q
    for piv in itertools.combinations(range(n), k):
        pset = set(piv)
        slots = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, n) if j not in pset]
        for vals in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(piv):
                rows[i][p] = 1
            for (i, j), v in zip(slots, vals):
                rows[i][j] = v
            yield SubspaceBasis(n, k, MatrixFq.from_rows(ctx, rows, cols=n))


def intersection_dim(u: SubspaceBasis, w: SubspaceBasis) -> int:
    if u.n != w.n:
        raise ValueError("subspaces live in different ambient spaces")
    _same_ctx(u.basis, w.basis)
    stacked = u.basis.to_rows() + w.basis.to_rows()
    return u.k + w.k - rank_rows(u.basis.ctx, stacked, u.n)


def standard_subspace(n: int, coords: Sequence[int], ctx: FieldCtx) -> SubspaceBasis:
    rows = [[int(j == c) for j in range(n)] for c in coords]
    return SubspaceBasis.span(MatrixFq.from_rows(ctx, rows, cols=n))
