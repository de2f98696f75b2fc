import itertools

import pytest

from fqcensus.gf_core import field_of_order, make_field


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


# -- brute-force helpers over prime fields, using plain modular arithmetic --


def span_of(vectors, p):
    """The set of all linear combinations of ``vectors`` over F_p."""
    n = len(vectors[0]) if vectors else 0
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        v = [0] * n
        for c, vec in zip(coeffs, vectors):
            for i in range(n):
                v[i] = (v[i] + c * vec[i]) % p
        out.add(tuple(v))
    return frozenset(out)


def all_subspaces(n, k, p):
    """Every k-dim subspace of F_p^n as a frozenset of vectors, by spanning all k-tuples."""
    found = set()
    vecs = list(itertools.product(range(p), repeat=n))
    for combo in itertools.product(vecs, repeat=k):
        s = span_of(list(combo), p) if k else frozenset({(0,) * n})
        if len(s) == p**k:
            found.add(s)
    return found


def fp_rank(rows, p):
    rows = [list(r) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r
