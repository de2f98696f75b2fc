"""Polynomials over F_q and matrices over F_q[x].

Polynomials are tuples of element codes, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  The module-level ``p*``
functions work on these raw tuples and are what the hot loops call.
``PolyFq`` and ``PolyMatrix`` wrap them for the public API.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from .errors import check_budget
from .gf_core import FieldCtx

if TYPE_CHECKING:
    from .fq_linalg import MatrixFq

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)

DEG_ZERO = -math.inf


def ptrim(a: Sequence[int]) -> Poly:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def padd(ctx: FieldCtx, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    add = ctx.add_table
    out = list(a)
    for i, c in enumerate(b):
        out[i] = add[out[i]][c]
    return ptrim(out) if len(a) == len(b) else tuple(out)


def psub(ctx: FieldCtx, a: Poly, b: Poly) -> Poly:
    sub = ctx.sub_table
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i] = sub[out[i]][c]
    return ptrim(out)


def pneg(ctx: FieldCtx, a: Poly) -> Poly:
    neg = ctx.neg_table
    return tuple(neg[c] for c in a)


def pscale(ctx: FieldCtx, a: Poly, c: int) -> Poly:
    if c == 0:
        return ZERO
    row = ctx.mul_table[c]
    return tuple(row[x] for x in a)


def pmul(ctx: FieldCtx, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    mul, add = ctx.mul_table, ctx.add_table
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                out[i + j] = add[out[i + j]][row[y]]
    # leading coefficient is a product of nonzero elements, so no trimming
    return tuple(out)


def pdivmod(ctx: FieldCtx, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return ZERO, a
    mul, sub = ctx.mul_table, ctx.sub_table
    lead_inv = ctx.inv_table[b[-1]]
    r = list(a)
    quot = [0] * (len(a) - db)
    for s in range(len(a) - 1 - db, -1, -1):
        c = mul[r[s + db]][lead_inv]
        quot[s] = c
        if c:
            row = mul[c]
            for u, bu in enumerate(b):
                r[s + u] = sub[r[s + u]][row[bu]]
    return tuple(quot), ptrim(r[:db])


def pmod(ctx: FieldCtx, a: Poly, b: Poly) -> Poly:
    return pdivmod(ctx, a, b)[1]


def pmonic(ctx: FieldCtx, a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    return pscale(ctx, a, ctx.inv_table[a[-1]])


def pgcd(ctx: FieldCtx, a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid, normalizing the divisor at each step."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = pmonic(ctx, a), pmonic(ctx, b)
    while b:
        a, b = b, pmonic(ctx, pmod(ctx, a, b))
    return a


def plcm(ctx: FieldCtx, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    return pmonic(ctx, pdivmod(ctx, pmul(ctx, a, b), pgcd(ctx, a, b))[0])


def pdeg(a: Poly) -> int | float:
    return len(a) - 1 if a else DEG_ZERO


def monic_polys(ctx: FieldCtx, degree: int) -> Iterator[Poly]:
    for low in itertools.product(range(ctx.q), repeat=degree):
        yield tuple(reversed(low)) + (1,)


@dataclass(frozen=True)
class PolyFq:
    coeffs: Poly
    ctx: FieldCtx

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", ptrim(self.coeffs))

    @classmethod
    def from_list(cls, ctx: FieldCtx, coeffs: Iterable[int]) -> "PolyFq":
        return cls(ptrim([c % ctx.q for c in coeffs]), ctx)

    @property
    def degree(self) -> int | float:
        return pdeg(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _other(self, other) -> Poly:
        if isinstance(other, PolyFq):
            if other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return other.coeffs
        if isinstance(other, int):
            return ptrim([other % self.ctx.p])
        return NotImplemented

    def __add__(self, other):
        return PolyFq(padd(self.ctx, self.coeffs, self._other(other)), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        return PolyFq(psub(self.ctx, self.coeffs, self._other(other)), self.ctx)

    def __neg__(self):
        return PolyFq(pneg(self.ctx, self.coeffs), self.ctx)

    def __mul__(self, other):
        return PolyFq(pmul(self.ctx, self.coeffs, self._other(other)), self.ctx)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ONE
        for _ in range(k):
            out = pmul(self.ctx, out, self.coeffs)
        return PolyFq(out, self.ctx)

    def __divmod__(self, other):
        quo, rem = pdivmod(self.ctx, self.coeffs, self._other(other))
        return PolyFq(quo, self.ctx), PolyFq(rem, self.ctx)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "PolyFq":
        return PolyFq(pmonic(self.ctx, self.coeffs), self.ctx)

    def __call__(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.ctx.add(self.ctx.mul(acc, a), c)
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms)


def poly_gcd(a: PolyFq, b: PolyFq) -> PolyFq:
    if a.ctx != b.ctx:
        raise ValueError("polynomials over different fields")
    return PolyFq(pgcd(a.ctx, a.coeffs, b.coeffs), a.ctx)


def is_irreducible(f: PolyFq) -> bool:
    """Irreducibility over F_q by trial division with every monic of degree <= deg/2."""
    return is_irreducible_raw(f.ctx, f.coeffs)


def is_irreducible_raw(ctx: FieldCtx, f: Poly) -> bool:
    deg = len(f) - 1
    if deg < 1:
        raise ValueError("irreducibility is undefined for constants")
    for d in range(1, deg // 2 + 1):
        for g in monic_polys(ctx, d):
            if not pmod(ctx, f, g):
                return False
    return True


def _mobius(n: int) -> int:
    result, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def count_irreducibles(n: int, ctx: FieldCtx) -> int:
    """Number of monic irreducibles of degree ``n`` via the necklace formula."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    q = ctx.q
    total = sum(_mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n


# -- polynomial matrices --


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[Poly, ...]  # row-major raw polynomials
    ctx: FieldCtx

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence]) -> "PolyMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            for e in r:
                if isinstance(e, PolyFq):
                    flat.append(e.coeffs)
                else:
                    flat.append(ptrim([c % ctx.q for c in e]))
        return cls(nr, nc, tuple(flat), ctx)

    def __getitem__(self, ij: tuple[int, int]) -> PolyFq:
        i, j = ij
        return PolyFq(self.entries[i * self.cols + j], self.ctx)

    def to_lists(self) -> list[list[Poly]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def coefficient_dump(self) -> list[list[list[int]]]:
        return [[list(e) for e in row] for row in self.to_lists()]


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: tuple[PolyFq, ...]

    def __post_init__(self):
        nonzero = [f for f in self.invariant_factors if not f.is_zero()]
        for f in nonzero:
            assert f.coeffs[-1] == 1, "invariant factor not monic"
        for a, b in zip(nonzero, nonzero[1:]):
            assert (b % a).is_zero(), "divisibility chain broken"
        # zeros only at the tail
        seen_zero = False
        for f in self.invariant_factors:
            if f.is_zero():
                seen_zero = True
            else:
                assert not seen_zero, "zero invariant factor before a nonzero one"

    def product(self) -> PolyFq:
        ctx = self.invariant_factors[0].ctx
        out = ONE
        for f in self.invariant_factors:
            out = pmul(ctx, out, f.coeffs)
        return PolyFq(out, ctx)


def build_pencil(Y: "MatrixFq") -> PolyMatrix:
    """The n x k pencil ``x*[I_k; 0] - Y``."""
    n, k, ctx = Y.rows, Y.cols, Y.ctx
    if k >= n:
        raise ValueError(f"pencil needs k < n, got n={n}, k={k}")
    neg = ctx.neg_table
    entries = []
    for i in range(n):
        for j in range(k):
            c = neg[Y.entries[i * k + j]]
            entries.append((c, 1) if i == j else ptrim([c]))
    return PolyMatrix(n, k, tuple(entries), ctx)


def _smith_diagonal(ctx: FieldCtx, M: list[list[Poly]]) -> Iterator[Poly]:
    """Reduce ``M`` in place and yield its invariant factors one by one.

    Pivot: a nonzero entry of minimal degree in the trailing block, ties
    broken by (row, col).  Its column and row are reduced by division; any
    nonzero remainder restarts the step with a smaller pivot.  Once the
    pivot row and column are clear, a trailing entry the pivot does not
    divide is added into the pivot row and the step restarts.  Completed
    pivots are yielded monic.  Callers may stop consuming early.
    """
    nr = len(M)
    nc = len(M[0]) if nr else 0
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            row = M[i]
            for j in range(t, nc):
                e = row[j]
                if e and (best is None or len(e) < best[0]):
                    best = (len(e), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            for _ in range(t, min(nr, nc)):
                yield ZERO
            return
        _, bi, bj = best
        M[t], M[bi] = M[bi], M[t]
        if bj != t:
            for row in M:
                row[t], row[bj] = row[bj], row[t]
        piv = M[t][t]
        prow = M[t]
        dirty = False
        for i in range(t + 1, nr):
            row = M[i]
            if not row[t]:
                continue
            quo, rem = pdivmod(ctx, row[t], piv)
            row[t] = rem
            for j in range(t + 1, nc):
                if prow[j]:
                    row[j] = psub(ctx, row[j], pmul(ctx, quo, prow[j]))
            if rem:
                dirty = True
        if dirty:
            continue
        # column t is clear below the pivot, so a column operation only
        # touches row t
        for j in range(t + 1, nc):
            if prow[j]:
                rem = pmod(ctx, prow[j], piv)
                prow[j] = rem
                if rem:
                    dirty = True
        if dirty:
            continue
        if len(piv) > 1:
            for i in range(t + 1, nr):
                row = M[i]
                if any(row[j] and pmod(ctx, row[j], piv) for j in range(t + 1, nc)):
                    # pull the offending row into the pivot row and retry
                    for j in range(t + 1, nc):
                        prow[j] = padd(ctx, prow[j], row[j])
                    dirty = True
                    break
            if dirty:
                continue
        yield pmonic(ctx, piv)
        t += 1


def smith_invariant_factors(M: PolyMatrix) -> SmithForm:
    work = M.to_lists()
    factors = tuple(PolyFq(f, M.ctx) for f in _smith_diagonal(M.ctx, work))
    return SmithForm(factors)


def is_unimodular(M: PolyMatrix) -> bool:
    """All invariant factors equal 1.  Stops at the first nonunit factor."""
    if M.rows < M.cols:
        raise ValueError("unimodularity needs rows >= cols")
    return all(f == ONE for f in _smith_diagonal(M.ctx, M.to_lists()))


def _det(ctx: FieldCtx, rows: list[list[Poly]]) -> Poly:
    # Laplace expansion along the first row; sizes here are tiny
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    acc = ZERO
    for j, e in enumerate(rows[0]):
        if not e:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = pmul(ctx, e, _det(ctx, minor))
        acc = padd(ctx, acc, term) if j % 2 == 0 else psub(ctx, acc, term)
    return acc


def minors_gcd(M: PolyMatrix, budget: int | None = None) -> PolyFq:
    """Monic gcd of all maximal (cols x cols) minors; zero if they all vanish."""
    if M.rows < M.cols:
        raise ValueError("minors_gcd needs rows >= cols")
    check_budget(math.comb(M.rows, M.cols), budget, "maximal minors")
    ctx = M.ctx
    rows = M.to_lists()
    g = ZERO
    for idx in itertools.combinations(range(M.rows), M.cols):
        d = _det(ctx, [rows[i] for i in idx])
        if d:
            g = pgcd(ctx, g, d)
            if g == ONE:
                break
    return PolyFq(g, ctx)
