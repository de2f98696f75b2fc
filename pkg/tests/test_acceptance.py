"""Acceptance criteria 1-8.

Each test prints one line "ACCEPTANCE <n> PASS|FAIL ..." (visible even
under captured output) and then asserts.  All comparisons are exact.
Criteria 1, 6 and 8 drive the real CLI so the reports checked here are the
ones a user would get.
"""

import io
import itertools
import json
import random
from contextlib import redirect_stdout
from fractions import Fraction
from math import prod

import pytest

from fqcensus import census_oracles as oracles
from fqcensus import formulas
from fqcensus.cli import main
from fqcensus.fq_linalg import char_poly, enumerate_matrices, is_reachable, is_zero_kernel_pair
from fqcensus.fq_polyalg import (
    ONE,
    PolyFq,
    PolyMatrix,
    build_pencil,
    count_irreducibles,
    is_irreducible,
    is_unimodular,
    minors_gcd,
    monic_polys,
    pmul,
    smith_invariant_factors,
)
from fqcensus.gf_core import make_field

import test_fq_polyalg as polyhelp

EQUIVALENCE_RUNS = (
    ("2", "4"),
    ("3,4", "3"),
    ("5", "2"),
)
EQUIVALENCE_CELLS = (
    [(2, n, k) for n in range(2, 5) for k in range(1, n)]
    + [(q, n, k) for q in (3, 4) for n in range(2, 4) for k in range(1, n)]
    + [(5, 2, 1)]
)


@pytest.fixture
def announce(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok
    return emit


def cli_output(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def equivalence_report(jobs):
    chunks, codes = [], []
    for qs, max_n in EQUIVALENCE_RUNS:
        code, out = cli_output(["verify", "equivalence", "--q", qs, "--max-n", max_n, "--jobs", str(jobs)])
        codes.append(code)
        chunks.append(out)
    return codes, "".join(chunks)


def sweep_report(jobs):
    return cli_output(["conjecture", "--sweep", "--jobs", str(jobs)])


_reports = {}


def cached(kind, jobs):
    key = (kind, jobs)
    if key not in _reports:
        _reports[key] = equivalence_report(jobs) if kind == "equivalence" else sweep_report(jobs)
    return _reports[key]


@pytest.fixture(autouse=True)
def fixed_timing(monkeypatch):
    monkeypatch.setenv("FQCENSUS_FIXED_TIMING", "1")


@pytest.mark.slow
def test_criterion_1_four_problem_equivalence(announce):
    codes, text = cached("equivalence", 1)
    rows = [json.loads(line) for line in text.splitlines()]
    seen = [(r["params"]["p"] ** r["params"]["e"], r["params"]["n"], r["params"]["k"]) for r in rows]
    bad = []
    for (q, n, k), r in zip(seen, rows):
        want = formulas.psi(n, k, q)
        counts = {name: int(v) for name, v in r.get("counts", {}).items()}
        if set(counts) != set(oracles.PROBLEMS) or set(counts.values()) != {want} or not r["match"]:
            bad.append((q, n, k, counts, want))
    ok = codes == [0, 0, 0] and seen == EQUIVALENCE_CELLS and not bad
    announce(1, ok, f"{len(rows)} cells, four oracle counts = psi everywhere; failures: {bad or 'none'}")
    assert ok


def test_criterion_2_sigma(announce):
    bad, cells = [], 0
    for q in (2, 3):
        ctx = make_field(q)
        for n in range(1, 5):
            for k in range(n):
                for l in range(k + 1):
                    cells += 1
                    got = oracles.sigma_oracle(oracles.CensusParams(ctx, n, k, l))
                    if got != formulas.sigma_formula(n, k, l, q):
                        bad.append((q, n, k, l, got))
    ok = not bad
    announce(2, ok, f"sigma oracle = formula on {cells} cells; failures: {bad or 'none'}")
    assert ok


def test_criterion_3_tau(announce):
    ctx = make_field(2)
    bad, cells = [], 0
    for k in range(4):
        for l in range(k + 1):
            want = formulas.mu(k, l, 2) * prod(2**k - 2**i for i in range(1, k))
            for n in (2 * k - l, 2 * k - l + 1):
                cells += 1
                got = oracles.tau_oracle(oracles.CensusParams(ctx, n, k, l))
                if got != want:
                    bad.append((n, k, l, got, want))
    ok = not bad
    announce(3, ok, f"tau oracle = mu * prod at {cells} (n, k, l) cells, q=2; failures: {bad or 'none'}")
    assert ok


def test_criterion_4_recurrences(announce):
    bad = []
    for q in (2, 3, 5):
        for k in range(31):
            for l in range(k + 1):
                if formulas.tau_recurrence(k, l, q) != formulas.tau_closed(k, l, q):
                    bad.append(("tau", q, k, l))
        for n in range(1, 13):
            for k in range(n):
                if formulas.psi_from_sum(n, k, q) != formulas.psi(n, k, q):
                    bad.append(("psi", q, n, k))
    ok = not bad
    announce(4, ok, f"tau recurrence = closed form (k <= 30), psi sum = product (n <= 12); failures: {bad or 'none'}")
    assert ok


def test_criterion_5_duality(announce):
    ctx = make_field(2)
    pairs, bad = 0, []
    for n in range(1, 4):
        for k in range(n):
            for Y in enumerate_matrices(n, k, ctx):
                A = Y.row_block(0, k)
                C = Y.row_block(k, n)
                pairs += 1
                if is_zero_kernel_pair(C, A) != is_reachable(A.transpose(), C.transpose()):
                    bad.append((n, k, Y.to_rows()))
    ok = not bad
    announce(5, ok, f"{pairs} pairs (C, A) over F_2, n <= 3; disagreements: {bad or 'none'}")
    assert ok


def _expected_sweep():
    out = []
    for q in (2, 3, 4, 5):
        for n in range(2, 22):
            for k in range(1, n):
                for m in range(1, 21):
                    if q ** (n * k * m) <= 2**20:
                        out.append((q, n, k, m))
    return out


@pytest.mark.slow
def test_criterion_6_conjecture_sweep(announce):
    code, text = cached("sweep", 1)
    rows = [json.loads(line) for line in text.splitlines()]
    cases = [(r["params"]["p"] ** r["params"]["e"], r["params"]["n"], r["params"]["k"], r["params"]["m"])
             for r in rows]
    bad = []
    for (q, n, k, m), r in zip(cases, rows):
        observed = Fraction(int(r["oracle_count"]), int(r["total"]))
        if (int(r["total"]) != q ** (n * k * m) or Fraction(r["observed"]) != observed
                or observed != formulas.delta(n, k, q) or not r["match"]):
            bad.append((q, n, k, m, r["observed"], r["predicted"], r.get("counterexample")))
    ok = code == 0 and cases == _expected_sweep() and not bad
    announce(6, ok, f"{len(rows)} cases with q^(nkm) <= 2^20, exit {code}; mismatches: {bad or 'none'}")
    assert ok


def test_criterion_7_kernel_properties(announce):
    failures = []
    rng = random.Random(7)

    # divisibility chain, checked on its own and against determinantal divisors
    for q in (2, 3):
        ctx = make_field(q)
        for _ in range(50):
            rows = polyhelp._random_matrix(rng, ctx, rng.randint(1, 3), rng.randint(1, 3), 2)
            factors = smith_invariant_factors(PolyMatrix.from_rows(ctx, rows)).invariant_factors
            for f, g in zip(factors, factors[1:]):
                if not g.is_zero() and not (g % f).is_zero():
                    failures.append("chain")
            running = ONE
            for i, f in enumerate(factors, start=1):
                running = pmul(ctx, running, f.coeffs)
                if running != polyhelp._determinantal_divisor(ctx, rows, i):
                    failures.append("determinantal")

    # invariance under 100 scrambles of fixed matrices
    for q in (2, 3):
        ctx = make_field(q)
        for r, c in ((2, 2), (3, 2), (3, 3)):
            base = polyhelp._random_matrix(rng, ctx, r, c, 2)
            want = smith_invariant_factors(PolyMatrix.from_rows(ctx, base)).invariant_factors
            for _ in range(100):
                scrambled = polyhelp._scramble(rng, ctx, base)
                if smith_invariant_factors(PolyMatrix.from_rows(ctx, scrambled)).invariant_factors != want:
                    failures.append("scramble")

    F2 = make_field(2)
    for n in range(1, 4):
        for k in range(n):
            for Y in enumerate_matrices(n, k, F2):
                pencil = build_pencil(Y)
                if is_unimodular(pencil) != (minors_gcd(pencil).coeffs == ONE):
                    failures.append("unimodular")
        for A in enumerate_matrices(n, n, F2):
            rows = [[(A[i, j], 1) if i == j else ((A[i, j],) if A[i, j] else ()) for j in range(n)]
                    for i in range(n)]  # -1 = 1 in F_2
            if smith_invariant_factors(PolyMatrix.from_rows(F2, rows)).product() != char_poly(A):
                failures.append("char_poly")

    for q in (2, 3):
        ctx = make_field(q)
        for d in range(1, 5):
            brute = sum(is_irreducible(PolyFq(f, ctx)) for f in monic_polys(ctx, d))
            if brute != count_irreducibles(d, ctx):
                failures.append("irreducibles")

    ok = not failures
    announce(7, ok, f"Smith chain/invariance, unimodular <=> gcd of minors, char poly, irreducible counts; "
                    f"failures: {sorted(set(failures)) or 'none'}")
    assert ok


@pytest.mark.slow
def test_criterion_8_determinism(announce):
    base_eq = cached("equivalence", 1)
    base_sw = cached("sweep", 1)
    diffs = []
    for jobs in (2, 8):
        if equivalence_report(jobs) != base_eq:
            diffs.append(("equivalence", jobs))
        if sweep_report(jobs) != base_sw:
            diffs.append(("sweep", jobs))
    ok = not diffs
    announce(8, ok, f"criteria 1 and 6 reports byte-identical at jobs 1, 2, 8; differing: {diffs or 'none'}")
    assert ok
