"""Batch command-line front end.

Subcommands: verify (identity sweeps), burnside (three-way orbit-count
agreement), tau (iterated divisor function with cross-checked paths),
chains (divisor-chain counts), bench (sweep timings).

Machine-readable records go to stdout (or --out) as JSON lines or RFC-4180
CSV. All exact integers are serialized as decimal strings. Record streams
are byte-deterministic for a fixed config: the elapsed_s field of verify,
burnside and chains records is always 0.0, and wall-clock timing is
reported by bench only. Budget refusals are diagnostics on stderr, never
partial records.

Exit codes: 0 ok, 1 mismatch, 2 budget refusal, 3 overflow, 64 usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass

from .arith import tau2_explicit, tau_r_closed, tau_r_recursive
from .group_action import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    count_chains,
    group_size,
    orbit_count_burnside,
    orbits_brute_force,
)
from .identity import IdentityReport, lhs_star, verify_star

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_REFUSED = 2
EXIT_OVERFLOW = 3
EXIT_USAGE = 64

VERIFY_FIELDS = ("n", "r", "lhs", "rhs", "group_size", "matched", "elapsed_s", "shards")
BURNSIDE_FIELDS = ("n", "r", "burnside_count", "unionfind_count", "chain_count", "tau_r", "agree")
CHAINS_FIELDS = ("n", "r", "chain_count", "tau_r", "agree")
TAU_FIELDS = ("n", "r", "tau_r")
BENCH_FIELDS = ("n", "r", "group_size", "lhs", "elapsed_s", "elements_per_s", "shards")


@dataclass(frozen=True)
class RunConfig:
    """One batch run: inclusive modulus range, dimension, and run knobs."""

    n_min: int
    n_max: int
    r: int
    budget: int = DEFAULT_BUDGET
    shards: int = 1
    seed: int = 0
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self) -> None:
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError(f"need 1 <= n_min <= n_max, got {self.n_min}..{self.n_max}")
        if self.r < 1 or self.shards < 1 or self.budget < 1:
            raise ValueError("r, shards and budget must all be >= 1")


def parse_range(text: str) -> tuple[int, int]:
    """Inclusive range 'a..b', or a single 'a' meaning a..a."""
    lo_text, sep, hi_text = text.partition("..")
    lo = int(lo_text)
    hi = int(hi_text) if sep else lo
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range {text!r}: need 1 <= a <= b")
    return lo, hi


class RecordWriter:
    """Writes dict records with a fixed field order as JSON lines or CSV."""

    def __init__(self, fields: tuple[str, ...], fmt: str, stream) -> None:
        self.fields = fields
        self.fmt = fmt
        self.stream = stream
        if fmt == "csv":
            self._csv = csv.writer(stream)
            self._csv.writerow(fields)

    @staticmethod
    def _cell(value) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    def write(self, record: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps({f: record[f] for f in self.fields}) + "\n")
        elif self.fmt == "csv":
            self._csv.writerow([self._cell(record[f]) for f in self.fields])
        else:  # plain: bare values, one per line
            self.stream.write(f"{record[self.fields[-1]]}\n")


def _refuse(n: int, r: int, exc: BudgetExceededError) -> None:
    diag = {
        "n": str(n),
        "r": r,
        "refused": True,
        "group_size": str(exc.group_size),
        "estimated_ops": str(exc.estimated_ops),
        "budget": str(exc.budget),
    }
    print(json.dumps(diag), file=sys.stderr)


def _verify_record(rep: IdentityReport) -> dict:
    return {
        "n": str(rep.n),
        "r": rep.r,
        "lhs": str(rep.lhs),
        "rhs": str(rep.rhs),
        "group_size": str(rep.group_size),
        "matched": rep.matched,
        "elapsed_s": 0.0,
        "shards": rep.shards,
    }


def cmd_verify(cfg: RunConfig, out) -> int:
    writer = RecordWriter(VERIFY_FIELDS, cfg.fmt, out)
    mismatched = refused = False
    for n in range(cfg.n_min, cfg.n_max + 1):
        try:
            rep = verify_star(n, cfg.r, budget=cfg.budget, shards=cfg.shards)
        except BudgetExceededError as exc:
            _refuse(n, cfg.r, exc)
            refused = True
            continue
        if not rep.matched:
            print(
                f"identity mismatch at n={n}, r={cfg.r}: lhs={rep.lhs} rhs={rep.rhs}",
                file=sys.stderr,
            )
            mismatched = True
        writer.write(_verify_record(rep))
    return EXIT_MISMATCH if mismatched else EXIT_REFUSED if refused else EXIT_OK


def cmd_burnside(cfg: RunConfig, out) -> int:
    writer = RecordWriter(BURNSIDE_FIELDS, cfg.fmt, out)
    disagree = refused = False
    for n in range(cfg.n_min, cfg.n_max + 1):
        try:
            burnside = orbit_count_burnside(n, cfg.r, budget=cfg.budget, shards=cfg.shards)
            unionfind = len(orbits_brute_force(n, cfg.r, budget=cfg.budget))
        except BudgetExceededError as exc:
            _refuse(n, cfg.r, exc)
            refused = True
            continue
        chains = count_chains(n, cfg.r)
        t_r = tau_r_recursive(n, cfg.r)
        agree = burnside == unionfind == chains == t_r
        if not agree:
            print(
                f"orbit-count disagreement at n={n}, r={cfg.r}: "
                f"burnside={burnside} unionfind={unionfind} chains={chains} tau_r={t_r}",
                file=sys.stderr,
            )
            disagree = True
        writer.write(
            {
                "n": str(n),
                "r": cfg.r,
                "burnside_count": str(burnside),
                "unionfind_count": str(unionfind),
                "chain_count": str(chains),
                "tau_r": str(t_r),
                "agree": agree,
            }
        )
    return EXIT_MISMATCH if disagree else EXIT_REFUSED if refused else EXIT_OK


def cmd_tau(cfg: RunConfig, out) -> int:
    writer = RecordWriter(TAU_FIELDS, cfg.fmt, out)
    for n in range(cfg.n_min, cfg.n_max + 1):
        recursive = tau_r_recursive(n, cfg.r)
        closed = tau_r_closed(n, cfg.r)
        paths = {recursive, closed}
        if cfg.r == 2:
            paths.add(tau2_explicit(n))
        if len(paths) != 1:
            print(f"tau_r path disagreement at n={n}, r={cfg.r}: {sorted(paths)}", file=sys.stderr)
            return EXIT_MISMATCH
        writer.write({"n": str(n), "r": cfg.r, "tau_r": str(recursive)})
    return EXIT_OK


def cmd_chains(cfg: RunConfig, out) -> int:
    writer = RecordWriter(CHAINS_FIELDS, cfg.fmt, out)
    disagree = False
    for n in range(cfg.n_min, cfg.n_max + 1):
        chains = count_chains(n, cfg.r)
        t_r = tau_r_recursive(n, cfg.r)
        agree = chains == t_r
        if not agree:
            print(f"chain-count disagreement at n={n}, r={cfg.r}", file=sys.stderr)
            disagree = True
        writer.write(
            {
                "n": str(n),
                "r": cfg.r,
                "chain_count": str(chains),
                "tau_r": str(t_r),
                "agree": agree,
            }
        )
    return EXIT_MISMATCH if disagree else EXIT_OK


def cmd_bench(cfg: RunConfig, out) -> int:
    writer = RecordWriter(BENCH_FIELDS, cfg.fmt, out)
    refused = False
    for n in range(cfg.n_min, cfg.n_max + 1):
        size = group_size(n, cfg.r)
        t0 = time.perf_counter()
        try:
            lhs = lhs_star(n, cfg.r, budget=cfg.budget, shards=cfg.shards)
        except BudgetExceededError as exc:
            _refuse(n, cfg.r, exc)
            refused = True
            continue
        elapsed = time.perf_counter() - t0
        writer.write(
            {
                "n": str(n),
                "r": cfg.r,
                "group_size": str(size),
                "lhs": str(lhs),
                "elapsed_s": elapsed,
                "elements_per_s": size / elapsed if elapsed > 0 else float(size),
                "shards": cfg.shards,
            }
        )
    return EXIT_REFUSED if refused else EXIT_OK


_COMMANDS = {
    "verify": (cmd_verify, "sweep the identity over a modulus range"),
    "burnside": (cmd_burnside, "three-way orbit-count agreement per modulus"),
    "tau": (cmd_tau, "iterated divisor function, all paths cross-checked"),
    "chains": (cmd_chains, "divisor-chain count vs tau_r per modulus"),
    "bench": (cmd_bench, "sweep timing table"),
}


class _Parser(argparse.ArgumentParser):
    # usage problems exit 64, not argparse's default 2
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="menon", description=__doc__.partition("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.error = parser.error  # type: ignore[method-assign]
        p.add_argument("--n", required=True, type=parse_range, metavar="A..B",
                       help="inclusive modulus range (single value allowed)")
        p.add_argument("--r", required=True, type=int, help="matrix dimension r >= 1")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="max estimated elementary operations per call")
        p.add_argument("--shards", type=int, default=1, help="worker count for sweeps")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled cross-checks")
        p.add_argument("--format", choices=("json", "csv"),
                       default=None, dest="fmt", help="record format")
        p.add_argument("--out", default=None, help="write records to this path instead of stdout")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.fmt or ("plain" if args.command == "tau" else "json")
    try:
        cfg = RunConfig(
            n_min=args.n[0],
            n_max=args.n[1],
            r=args.r,
            budget=args.budget,
            shards=args.shards,
            seed=args.seed,
            fmt=fmt,
            out=args.out,
        )
    except ValueError as exc:
        print(f"menon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    command = _COMMANDS[args.command][0]
    if cfg.out:
        try:
            stream = open(cfg.out, "w", newline="")
        except OSError as exc:
            print(f"menon: error: cannot open {cfg.out!r}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        stream = sys.stdout
    try:
        return command(cfg, stream)
    except OverflowError as exc:
        print(f"menon: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    finally:
        if cfg.out:
            stream.close()


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
