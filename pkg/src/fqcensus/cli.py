"""Command-line entry point.

Exit codes: 0 when every check agrees, 1 for usage or budget errors,
2 when a mathematical mismatch was found (the report still gets written).
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Iterator, Sequence

from . import census_oracles as oracles
from . import conjecture_harness as conj
from . import formulas
from .errors import DEFAULT_BUDGET, BudgetExceeded, VerificationError
from .gf_core import FieldCtx, field_of_order
from .reporting import CensusReport, Stopwatch, field_params, fmt_rational, fmt_value, open_writer

log = logging.getLogger("fqcensus")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2

FORMULA_ARGS = {
    "psi": ("n", "k"),
    "sigma": ("n", "k", "l"),
    "tau": ("k", "l"),
    "mu": ("k", "l"),
    "gauss": ("n", "k"),
    "gl": ("k",),
    "delta": ("n", "k"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _q_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _field(q: int) -> FieldCtx:
    try:
        return field_of_order(q)
    except ValueError as exc:
        raise UsageError(str(exc))


# -- subcommand bodies: each yields reports --


def run_formula(args) -> Iterator[CensusReport]:
    wanted = FORMULA_ARGS[args.name]
    given = {key for key in ("n", "k", "l") if getattr(args, key) is not None}
    if given != set(wanted):
        raise UsageError(f"formula {args.name} takes --{' --'.join(wanted)}")
    ctx = _field(args.q)
    vals = [getattr(args, key) for key in wanted]
    fn = {
        "psi": formulas.psi,
        "sigma": formulas.sigma_formula,
        "tau": formulas.tau_closed,
        "mu": formulas.mu,
        "gauss": formulas.gauss_binom,
        "gl": formulas.gl_order,
        "delta": formulas.delta,
    }[args.name]
    watch = Stopwatch()
    try:
        value = fn(*vals, ctx.q)
    except ValueError as exc:
        raise UsageError(str(exc))
    yield CensusReport(
        f"formula {args.name}",
        field_params(ctx, **dict(zip(wanted, vals))),
        formula_value=fmt_value(value),
        elapsed_ms=watch.ms,
    )


def _count_report(command: str, problem: str, params: oracles.CensusParams) -> CensusReport:
    watch = Stopwatch()
    count = oracles.ORACLES[problem](params)
    expected = formulas.psi(params.n, params.k, params.field.q)
    return CensusReport(
        command,
        field_params(params.field, n=params.n, k=params.k),
        oracle_count=str(count),
        formula_value=str(expected),
        match=count == expected,
        elapsed_ms=watch.ms,
        shards=oracles.shard_count(problem, params),
    )


def run_count(args) -> Iterator[CensusReport]:
    ctx = _field(args.q)
    if not 0 <= args.k < args.n:
        raise UsageError(f"count needs 0 <= k < n, got n={args.n}, k={args.k}")
    params = oracles.CensusParams(ctx, args.n, args.k, jobs=args.jobs, budget=args.budget)
    yield _count_report(f"count {args.problem}", args.problem, params)


def _equivalence_report(command: str, params: oracles.CensusParams) -> CensusReport:
    watch = Stopwatch()
    counts = {name: fn(params) for name, fn in oracles.ORACLES.items()}
    expected = formulas.psi(params.n, params.k, params.field.q)
    agree = len(set(counts.values())) == 1
    return CensusReport(
        command,
        field_params(params.field, n=params.n, k=params.k),
        oracle_count=str(counts["completable"]) if agree else None,
        formula_value=str(expected),
        match=agree and counts["completable"] == expected,
        elapsed_ms=watch.ms,
        shards=oracles.shard_count("completable", params),
        counts={name: str(v) for name, v in counts.items()},
    )


def _skipped(command: str, ctx: FieldCtx, exc: BudgetExceeded, **dims) -> CensusReport:
    return CensusReport(command, field_params(ctx, **dims), note=f"skipped: {exc}")


def _nk_cells(max_n: int) -> Iterator[tuple[int, int]]:
    for n in range(2, max_n + 1):
        for k in range(1, n):
            yield n, k


def run_verify(args) -> Iterator[CensusReport]:
    qs = args.q
    command = f"verify {args.suite}"
    for q in qs:
        ctx = _field(q)
        if args.suite == "equivalence":
            for n, k in _nk_cells(args.max_n or 3):
                params = oracles.CensusParams(ctx, n, k, jobs=args.jobs, budget=args.budget)
                try:
                    yield _equivalence_report(command, params)
                except BudgetExceeded as exc:
                    yield _skipped(command, ctx, exc, n=n, k=k)
        elif args.suite == "duality":
            cells = [(args.n, args.k)] if args.n is not None else list(_nk_cells(args.max_n or 3))
            for n, k in cells:
                if k is None or not 0 <= k < n:
                    raise UsageError("duality needs 0 <= k < n")
                params = oracles.CensusParams(ctx, n, k, jobs=args.jobs, budget=args.budget)
                watch = Stopwatch()
                try:
                    ok = oracles.duality_check(params)
                except BudgetExceeded as exc:
                    yield _skipped(command, ctx, exc, n=n, k=k)
                    continue
                yield CensusReport(
                    command, field_params(ctx, n=n, k=k), match=ok,
                    elapsed_ms=watch.ms, shards=oracles.shard_count("duality", params),
                )
        elif args.suite == "sigma":
            max_n = args.max_n or 4
            for n in range(1, max_n + 1):
                for k in range(n):
                    for l in range(k + 1):
                        params = oracles.CensusParams(ctx, n, k, l, budget=args.budget)
                        watch = Stopwatch()
                        try:
                            got = oracles.sigma_oracle(params)
                        except BudgetExceeded as exc:
                            yield _skipped(command, ctx, exc, n=n, k=k, l=l)
                            continue
                        want = formulas.sigma_formula(n, k, l, q)
                        yield CensusReport(
                            command, field_params(ctx, n=n, k=k, l=l),
                            oracle_count=str(got), formula_value=str(want),
                            match=got == want, elapsed_ms=watch.ms,
                        )
        elif args.suite == "tau":
            max_k = 3 if args.max_k is None else args.max_k
            for k in range(max_k + 1):
                for l in range(k + 1):
                    for n in (2 * k - l, 2 * k - l + 1):
                        params = oracles.CensusParams(ctx, n, k, l, budget=args.budget)
                        watch = Stopwatch()
                        try:
                            got = oracles.tau_oracle(params)
                        except BudgetExceeded as exc:
                            yield _skipped(command, ctx, exc, n=n, k=k, l=l)
                            continue
                        want = formulas.tau_closed(k, l, q)
                        yield CensusReport(
                            command, field_params(ctx, n=n, k=k, l=l),
                            oracle_count=str(got), formula_value=str(want),
                            match=got == want, elapsed_ms=watch.ms,
                        )
        elif args.suite == "recurrence":
            max_k = 30 if args.max_k is None else args.max_k
            for k in range(max_k + 1):
                for l in range(k + 1):
                    watch = Stopwatch()
                    rec = formulas.tau_recurrence(k, l, q)
                    closed = formulas.tau_closed(k, l, q)
                    yield CensusReport(
                        "verify recurrence:tau", field_params(ctx, k=k, l=l),
                        oracle_count=str(rec), formula_value=str(closed),
                        match=rec == closed, elapsed_ms=watch.ms,
                    )
            max_n = 12 if args.max_n is None else args.max_n
            for n in range(1, max_n + 1):
                for k in range(n):
                    watch = Stopwatch()
                    summed = formulas.psi_from_sum(n, k, q)
                    product = formulas.psi(n, k, q)
                    yield CensusReport(
                        "verify recurrence:psi", field_params(ctx, n=n, k=k),
                        oracle_count=str(summed), formula_value=str(product),
                        match=summed == product and formulas.tau_psi_relation(n, k, q),
                        elapsed_ms=watch.ms,
                    )


def conjecture_report(ctx: FieldCtx, n: int, k: int, m: int, jobs, budget, engine="auto") -> CensusReport:
    case = conj.ConjectureCase(ctx, n, k, m, budget)
    watch = Stopwatch()
    verdict = conj.verify_conjecture(case, jobs, engine)
    return CensusReport(
        "conjecture",
        field_params(ctx, n=n, k=k, m=m),
        oracle_count=str(verdict.unimodular_count),
        predicted=fmt_rational(verdict.predicted),
        observed=fmt_rational(verdict.observed),
        match=verdict.match,
        elapsed_ms=watch.ms,
        shards=verdict.shards,
        total=str(verdict.total),
        counterexample=verdict.counterexample,
    )


def run_conjecture(args) -> Iterator[CensusReport]:
    if args.sweep:
        for q, n, k, m in conj.sweep_cases(args.qs, args.max_states):
            yield conjecture_report(_field(q), n, k, m, args.jobs, args.budget, args.engine)
        return
    if None in (args.q, args.n, args.k, args.m):
        raise UsageError("conjecture needs --q, --n, --k and --m (or --sweep)")
    if not 1 <= args.k < args.n or args.m < 1:
        raise UsageError("conjecture needs 1 <= k < n and m >= 1")
    yield conjecture_report(_field(args.q), args.n, args.k, args.m, args.jobs, args.budget, args.engine)


def run_census(args) -> Iterator[CensusReport]:
    emitted = 0
    for q in sorted(set(args.qs)):
        ctx = _field(q)
        for n, k in _nk_cells(args.max_n):
            params = oracles.CensusParams(ctx, n, k, jobs=args.jobs, budget=args.budget)
            budget = DEFAULT_BUDGET if args.budget is None else args.budget
            if oracles.search_space("completable", params) > budget:
                log.info("census: q=%d n=%d k=%d is over budget, skipped", q, n, k)
                continue
            report = _equivalence_report("census", params)
            emitted += 1
            yield report
    if not emitted:
        raise UsageError("census: no (q, n, k) cell fits in the budget")


# -- argument parsing --


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fqcensus", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, jobs: bool = True) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--budget", type=int, default=None,
                       help=f"max enumeration states (default {DEFAULT_BUDGET})")
        if jobs:
            p.add_argument("--jobs", type=int, default=None,
                           help="worker processes (default: available CPUs, or $FQCENSUS_JOBS)")

    p = sub.add_parser("formula", help="evaluate a closed form exactly")
    p.add_argument("name", choices=sorted(FORMULA_ARGS))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    common(p, jobs=False)
    p.set_defaults(run=run_formula)

    p = sub.add_parser("count", help="run one brute-force oracle and compare with psi")
    p.add_argument("problem", choices=oracles.PROBLEMS)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(run=run_count)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("equivalence", "duality", "sigma", "tau", "recurrence"))
    p.add_argument("--q", type=_q_list, required=True, help="field size, or a comma-separated list")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    common(p)
    p.set_defaults(run=run_verify)

    p = sub.add_parser("conjecture", help="exhaustively test the unimodular density of a degree-m family")
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--sweep", action="store_true", help="every case with q^(nkm) <= --max-states")
    p.add_argument("--qs", type=_q_list, default=list(conj.SWEEP_FIELDS))
    p.add_argument("--max-states", type=int, default=conj.SWEEP_MAX_STATES)
    p.add_argument("--engine", choices=("auto", "kernel", "reference"), default="auto")
    common(p)
    p.set_defaults(run=run_conjecture)

    p = sub.add_parser("census", help="table of all four counts for every in-budget (q, n, k)")
    p.add_argument("--qs", type=_q_list, required=True)
    p.add_argument("--max-n", type=int, required=True)
    common(p)
    p.set_defaults(run=run_census)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    mismatch = False
    try:
        with open_writer(args.out, args.format, sys.stdout) as writer:
            for report in args.run(args):
                writer.write(report)
                if report.match is False:
                    mismatch = True
    except (UsageError, BudgetExceeded, ValueError) as exc:
        print(f"fqcensus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fqcensus: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"fqcensus: verification failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_MISMATCH if mismatch else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
