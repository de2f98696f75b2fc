"""Brute-force counts for the four equivalent problems, plus sigma and tau.

Each oracle enumerates its own search space and tests membership with a
different characterization, so agreement between them carries weight:

* completable: irreducible characteristic polynomial of a full n x n matrix
* pencil:      Smith form of x[I_k; 0] - Y
* reachable:   Kalman rank of [B AB ... A^(k-1)B]
* simple:      no nonzero T-invariant subspace of W, checked subspace by
               subspace, and cross-checked against the zero-kernel-pair test
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VerificationError, check_budget
from .fq_linalg import (
    MatrixFq,
    char_poly_raw,
    enumerate_subspaces,
    intersection_dim,
    is_reachable,
    is_zero_kernel_pair,
    iter_digits,
    mul_rows,
    rank_rows,
    reduce_vector,
    rref_rows,
    standard_subspace,
)
from .fq_polyalg import build_pencil, is_irreducible_raw, is_unimodular
from .gf_core import FieldCtx
from .sharding import plan_shards, run_sharded

PROBLEMS = ("completable", "pencil", "reachable", "simple")


@dataclass(frozen=True)
class CensusParams:
    field: FieldCtx
    n: int
    k: int
    l: int | None = None
    jobs: int | None = None
    budget: int | None = None

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got n={self.n}, k={self.k}")
        if self.l is not None and not 0 <= self.l <= self.k:
            raise ValueError(f"need 0 <= l <= k, got k={self.k}, l={self.l}")

    def require_proper(self) -> None:
        if self.k >= self.n:
            raise ValueError(f"this count assumes k < n, got n={self.n}, k={self.k}")


def search_space(problem: str, p: CensusParams) -> int:
    q, n, k = p.field.q, p.n, p.k
    if problem == "completable":
        return q ** (n * n)
    if problem in ("pencil", "reachable", "simple", "duality"):
        return q ** (n * k)
    raise ValueError(f"unknown problem {problem!r}")


def shard_count(problem: str, p: CensusParams) -> int:
    return len(plan_shards(search_space(problem, p)))


def _sharded(problem: str, p: CensusParams, worker, *args):
    p.require_proper()
    total = search_space(problem, p)
    check_budget(total, p.budget, f"{problem} oracle")
    return run_sharded(worker, (p.field, p.n, p.k) + args, plan_shards(total), p.jobs)


# -- Problem 1: completable matrices --


def _completable_shard(ctx: FieldCtx, n: int, k: int, lo: int, hi: int) -> frozenset[int]:
    q = ctx.q
    found: set[int] = set()
    irreducible: dict[tuple[int, ...], bool] = {}
    for digits in iter_digits(n * n, q, lo, hi):
        key = 0
        for i in range(n):
            for j in range(i * n, i * n + k):
                key = key * q + digits[j]
        if key in found:
            continue
        f = char_poly_raw(ctx, [digits[i * n:(i + 1) * n] for i in range(n)])
        ok = irreducible.get(f)
        if ok is None:
            ok = irreducible[f] = is_irreducible_raw(ctx, f)
        if ok:
            found.add(key)
    return frozenset(found)


def count_completable(p: CensusParams) -> int:
    """n x k blocks that are the first k columns of some matrix with irreducible char poly."""
    keys: set[int] = set()
    for part in _sharded("completable", p, _completable_shard):
        keys |= part
    return len(keys)


# -- Problem 2: unimodular pencils --


def _pencil_shard(ctx: FieldCtx, n: int, k: int, lo: int, hi: int) -> int:
    count = 0
    for digits in iter_digits(n * k, ctx.q, lo, hi):
        if is_unimodular(build_pencil(MatrixFq(n, k, digits, ctx))):
            count += 1
    return count


def count_unimodular_pencils(p: CensusParams) -> int:
    return sum(_sharded("pencil", p, _pencil_shard))


# -- Problem 3: reachable pairs --


def _reachable_shard(ctx: FieldCtx, n: int, k: int, lo: int, hi: int) -> int:
    count = 0
    kk = k * k
    for digits in iter_digits(n * k, ctx.q, lo, hi):
        A = MatrixFq(k, k, digits[:kk], ctx)
        B = MatrixFq(k, n - k, digits[kk:], ctx)
        if is_reachable(A, B):
            count += 1
    return count


def count_reachable_pairs(p: CensusParams) -> int:
    """Pairs (A, B) in M_k x M_{k, n-k}; codes put A's entries first."""
    return sum(_sharded("reachable", p, _reachable_shard))


# -- Problem 4: simple maps --


def invariant_candidates(ctx: FieldCtx, domain: MatrixFq) -> list[tuple[list[list[int]], list[list[int]], list[int]]]:
    """Every nonzero subspace U of the domain W, prepared for invariance tests.

    ``domain`` is a k x n matrix whose rows w_1..w_k are a basis of W.  Each
    entry is (coefficient basis of U over w_1..w_k, RREF of U inside F_q^n,
    its pivot columns).
    """
    k, n = domain.rows, domain.cols
    wrows = domain.to_rows()
    out = []
    for d in range(1, k + 1):
        for U in enumerate_subspaces(k, d, ctx):
            coeff = U.basis.to_rows()
            embedded = mul_rows(ctx, coeff, wrows, k, n)
            piv = rref_rows(ctx, embedded, n)
            out.append((coeff, embedded, piv))
    return out


def is_simple_direct(ctx: FieldCtx, T: MatrixFq, candidates) -> bool:
    """No nonzero U in ``candidates`` satisfies T(U) within U.

    ``T`` is n x k; column j is the image of the j-th domain basis vector.
    """
    trows = T.to_rows()
    n, k = T.rows, T.cols
    mul, add = ctx.mul_table, ctx.add_table
    for coeff, rref, piv in candidates:
        invariant = True
        for c in coeff:
            v = [0] * n
            for i in range(n):
                acc = 0
                row = trows[i]
                for j in range(k):
                    if c[j] and row[j]:
                        acc = add[acc][mul[row[j]][c[j]]]
                v[i] = acc
            if reduce_vector(ctx, rref, piv, v) is not None:
                invariant = False
                break
        if invariant:
            return False
    return True


def _standard_domain(ctx: FieldCtx, n: int, k: int) -> MatrixFq:
    return standard_subspace(n, range(k), ctx).basis


def _simple_shard(ctx: FieldCtx, n: int, k: int, lo: int, hi: int) -> int:
    candidates = invariant_candidates(ctx, _standard_domain(ctx, n, k))
    kk = k * k
    count = 0
    for digits in iter_digits(n * k, ctx.q, lo, hi):
        T = MatrixFq(n, k, digits, ctx)
        direct = is_simple_direct(ctx, T, candidates)
        A = MatrixFq(k, k, digits[:kk], ctx)
        C = MatrixFq(n - k, k, digits[kk:], ctx)
        via_pair = is_zero_kernel_pair(C, A)
        if direct != via_pair:
            raise VerificationError(
                f"simplicity tests disagree on T={T.to_rows()} over F_{ctx.q}: "
                f"direct={direct}, zero-kernel-pair={via_pair}"
            )
        count += direct
    return count


def count_simple_maps(p: CensusParams) -> int:
    """Simple maps W -> V for W spanned by the first k standard basis vectors."""
    return sum(_sharded("simple", p, _simple_shard))


def count_simple_maps_on(p: CensusParams, domain: MatrixFq) -> int:
    """Simple maps on an arbitrary k-dimensional W (rows of ``domain``).

    Only the direct subspace test applies here; the block split into
    (A, C) is tied to the standard basis.
    """
    p.require_proper()
    ctx = p.field
    if domain.rows != p.k or domain.cols != p.n or rank_rows(ctx, domain.to_rows(), p.n) != p.k:
        raise ValueError("domain must be a k x n matrix of full row rank")
    check_budget(search_space("simple", p), p.budget, "simple-map oracle")
    candidates = invariant_candidates(ctx, domain)
    return sum(
        is_simple_direct(ctx, MatrixFq(p.n, p.k, digits, ctx), candidates)
        for digits in iter_digits(p.n * p.k, ctx.q)
    )


# -- sigma and tau --


def sigma_oracle(p: CensusParams) -> int:
    """k-dim subspaces U with dim(U & W) = l, W = span(e_1..e_k)."""
    if p.l is None:
        raise ValueError("sigma_oracle needs l")
    W = standard_subspace(p.n, range(p.k), p.field)
    return sum(
        1
        for U in enumerate_subspaces(p.n, p.k, p.field, budget=p.budget)
        if intersection_dim(U, W) == p.l
    )


def tau_oracle(p: CensusParams) -> int:
    """Simple maps W1 -> V with image exactly W2.

    W1 = span(e_1..e_k), W2 = span(e_1..e_l, e_{k+1}..e_{2k-l}); needs
    n >= 2k - l.  Unlike the four problem counts this allows k = n, which
    the l = k case requires when n = 2k - l.
    """
    ctx, n, k, l = p.field, p.n, p.k, p.l
    if l is None:
        raise ValueError("tau_oracle needs l")
    if n < 2 * k - l:
        raise ValueError(f"tau_oracle needs n >= 2k - l, got n={n}, k={k}, l={l}")
    check_budget(ctx.q ** (k * k), p.budget, "tau oracle")
    image_coords = list(range(l)) + list(range(k, 2 * k - l))
    # n x k matrix whose columns are the chosen basis of W2
    B = [[int(i == c) for c in image_coords] for i in range(n)]
    candidates = invariant_candidates(ctx, _standard_domain(ctx, n, k))
    count = 0
    for digits in iter_digits(k * k, ctx.q):
        G = [list(digits[i * k:(i + 1) * k]) for i in range(k)]
        if rank_rows(ctx, G, k) != k:
            continue
        T = mul_rows(ctx, B, G, k, k)
        if is_simple_direct(ctx, MatrixFq.from_rows(ctx, T, cols=k), candidates):
            count += 1
    return count


# -- duality --


def _duality_shard(ctx: FieldCtx, n: int, k: int, lo: int, hi: int) -> bool:
    kk = k * k
    for digits in iter_digits(n * k, ctx.q, lo, hi):
        A = MatrixFq(k, k, digits[:kk], ctx)
        C = MatrixFq(n - k, k, digits[kk:], ctx)
        if is_zero_kernel_pair(C, A) != is_reachable(A.transpose(), C.transpose()):
            return False
    return True


def duality_check(p: CensusParams) -> bool:
    """(C, A) is a zero kernel pair exactly when (A^T, C^T) is reachable."""
    return all(_sharded("duality", p, _duality_shard))


ORACLES = {
    "completable": count_completable,
    "pencil": count_unimodular_pencils,
    "reachable": count_reachable_pairs,
    "simple": count_simple_maps,
}
