"""Closed forms and recurrences for counting simple maps over F_q.

Everything here is exact: Python integers and ``fractions.Fraction``.

    psi(n, k)      simple maps from a fixed k-dim W into n-dim V
    sigma(n, k, l) k-dim subspaces meeting a fixed k-dim W in dimension l
    tau(k, l)      simple maps W1 -> V with image W2, dim(W1 & W2) = l
    mu(k, l)       tau(k, l) / prod_{i=1}^{k-1} (q^k - q^i)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")


def gauss_binom(n: int, k: int, q: int) -> int:
    """Gaussian binomial [n, k]_q; 0 when k > n."""
    _check_q(q)
    if n < 0 or k < 0:
        raise ValueError("Gaussian binomial needs nonnegative arguments")
    if k > n:
        return 0
    num = prod(q ** (n - i) - 1 for i in range(k))
    den = prod(q ** (k - i) - 1 for i in range(k))
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def psi(n: int, k: int, q: int) -> int:
    """prod_{i=1}^{k} (q^n - q^i)."""
    _check_q(q)
    if not 0 <= k < n:
        raise ValueError(f"psi needs 0 <= k < n, got n={n}, k={k}")
    return prod(q**n - q**i for i in range(1, k + 1))


def gl_order(k: int, q: int) -> int:
    _check_q(q)
    if k < 0:
        raise ValueError("k must be >= 0")
    return prod(q**k - q**i for i in range(k))


def sigma_formula(n: int, k: int, l: int, q: int) -> int:
    _check_q(q)
    if not 0 <= l <= k <= n:
        raise ValueError(f"sigma needs 0 <= l <= k <= n, got n={n}, k={k}, l={l}")
    return gauss_binom(k, l, q) * gauss_binom(n - k, k - l, q) * q ** ((k - l) ** 2)


def mu(k: int, l: int, q: int) -> int:
    _check_q(q)
    if not 0 <= l <= k:
        raise ValueError(f"mu needs 0 <= l <= k, got k={k}, l={l}")
    if k == 0:
        return 1
    return q**k - q**l


def _tail(k: int, q: int) -> int:
    return prod(q**k - q**i for i in range(1, k))


def tau_closed(k: int, l: int, q: int) -> int:
    return mu(k, l, q) * _tail(k, q)


@lru_cache(maxsize=None)
def _tau_rec(k: int, l: int, q: int) -> int:
    if k == 0:
        return 1
    if l == k:
        return 0
    if l == 0:
        return gl_order(k, q)
    extend = prod(q**k - q**i for i in range(l, k))
    return extend * sum(sigma_formula(k, l, m, q) * _tau_rec(l, m, q) for m in range(l + 1))


def tau_recurrence(k: int, l: int, q: int) -> int:
    """tau(k, l) from the subspace recurrence, memoized per (k, l, q).

    Base cases: tau(0, 0) = 1, tau(k, k) = 0 and tau(k, 0) = |GL_k| for
    k >= 1.  The l = k instance of the recurrence only restates tau = tau,
    so it is never used.
    """
    _check_q(q)
    if not 0 <= l <= k:
        raise ValueError(f"tau needs 0 <= l <= k, got k={k}, l={l}")
    return _tau_rec(k, l, q)


def psi_from_sum(n: int, k: int, q: int) -> int:
    """psi(n, k) as sum over l of sigma(n, k, l) * tau(k, l)."""
    _check_q(q)
    if not 0 <= k < n:
        raise ValueError(f"psi needs 0 <= k < n, got n={n}, k={k}")
    return sum(sigma_formula(n, k, l, q) * tau_closed(k, l, q) for l in range(k + 1))


def tau_psi_relation(n: int, k: int, q: int) -> bool:
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")
    rhs = psi(n, k, q) * prod(q**n - q**i for i in range(k, n))
    return tau_closed(n, k, q) == rhs


def delta(n: int, k: int, q: int) -> Fraction:
    """Probability that a uniformly random pencil is unimodular, as an exact rational."""
    value = Fraction(psi(n, k, q), q ** (n * k))
    assert value == prod((1 - Fraction(q) ** (i - n) for i in range(1, k + 1)), start=Fraction(1))
    return value
