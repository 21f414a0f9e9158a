"""Command line front end.

    twl count     --bound B      solution-count histogram for primes below B
    twl halffact  --bound B      cumulative ((p-1)/2)! mod p statistics, p = 3 mod 4
    twl conjecture --max-n N     conjectured proportions for 0..N solutions
    twl verify    --bound B      identity and oracle self-checks

Data goes to stdout, progress (with -v) to stderr.  Exit codes: 0 ok,
1 invariant failure, 2 usage error, 3 corrupt checkpoint.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .checkpoint import checkpoint_read, checkpoint_write
from .errors import CapacityError, DomainError, IntegrityError
from .heuristics import conjecture_probability, naive_constants
from .primes import PrimeRange, primes_3mod4_in
from .remainder_tree import Interval, half_factorial_batch, half_factorial_direct
from .stats import (
    CumulativeHalfFact,
    Histogram,
    decade_checkpoints,
    merge_all,
    merge_cumulative,
    render_table1,
    render_table2,
    round_float,
    table1_report,
    table2_report,
)
from .verify import Fault, run_suite
from .wilson import ENGINES, segment_histogram

log = logging.getLogger("truncwilson")

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_CHECKPOINT = 0, 1, 2, 3
DEFAULT_SEGMENT = 10**6
MIN_SEGMENT = 10**3
FORMATS = ("csv", "json", "table")


class UsageError(Exception):
    pass


def parse_natural(text: str) -> int:
    """Accept 10000, 10_000, 1e4 or 10^4."""
    s = text.strip().replace("_", "")
    m = re.fullmatch(r"(\d+)\^(\d+)", s) or re.fullmatch(r"(\d+)[eE](\d+)", s)
    if m:
        base, exp = int(m.group(1)), int(m.group(2))
        return base**exp if "^" in s else base * 10**exp
    if s.isdigit():
        return int(s)
    raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return parse_natural(lo), parse_natural(hi)


@dataclass(frozen=True)
class RunConfig:
    command: str
    lo: int
    hi: int
    segment_size: int = DEFAULT_SEGMENT
    threads: int = 1
    format: str = "csv"
    checkpoint_dir: Path | None = None
    engine: str = "half"
    oracle: bool = False

    def __post_init__(self):
        if self.segment_size < MIN_SEGMENT:
            raise UsageError(f"--segment-size must be at least {MIN_SEGMENT}")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.engine not in ENGINES:
            raise UsageError(f"unknown engine {self.engine!r}")
        if self.lo > self.hi:
            raise UsageError(f"empty range {self.lo}:{self.hi}")

    @property
    def prime_range(self) -> PrimeRange:
        return PrimeRange(self.lo, self.hi)


def _default_threads() -> int:
    env = os.environ.get("TWL_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TWL_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def _run_parts(
    items: list, compute: Callable, path_of: Callable | None, threads: int, kind: type
) -> list:
    """Compute each item (or reload it from its checkpoint), preserving order."""

    def one(item):
        path = path_of(item) if path_of else None
        if path is not None and path.exists():
            log.info("resume %s", path.name)
            loaded = checkpoint_read(path)
            lo, hi = _span_of(item)
            if not isinstance(loaded, kind) or any(a < lo or b > hi for a, b in loaded.ranges):
                raise IntegrityError(f"{path}: does not hold {kind.__name__} for [{lo}, {hi})")
            return loaded
        result = compute(item)
        if path is not None:
            checkpoint_write(result, path)
        log.info("done %s", item)
        return result

    if threads == 1 or len(items) <= 1:
        return [one(i) for i in items]
    with ThreadPoolExecutor(min(threads, len(items))) as pool:
        return list(pool.map(one, items))


def _span_of(item) -> tuple[int, int]:
    if isinstance(item, Interval):
        return 2 * item.lo + 1, 2 * item.hi
    return item.lo, item.hi


def run_count(cfg: RunConfig) -> str:
    segments = cfg.prime_range.split(cfg.segment_size)
    path_of = None
    if cfg.checkpoint_dir is not None:
        cfg.checkpoint_dir.mkdir(parents=True, exist_ok=True)
        path_of = lambda s: cfg.checkpoint_dir / f"count-{s.lo}-{s.hi}.ckpt"  # noqa: E731
    parts = _run_parts(
        segments, lambda s: segment_histogram(s, cfg.engine), path_of, cfg.threads, Histogram
    )
    hist = merge_all(parts)
    if hist.total == 0:
        raise UsageError(f"no primes in [{cfg.lo}, {cfg.hi})")
    return render_table1(table1_report(hist), cfg.format, hist.ranges)


def _halffact_checkpoints(lo: int, hi: int) -> list[int]:
    return [x for x in decade_checkpoints(hi) if x > lo]


def run_halffact(cfg: RunConfig) -> str:
    lo, hi = cfg.lo, cfg.hi
    xs = _halffact_checkpoints(lo, hi)
    top = (hi + 1) // 2
    bottom = max(1, (lo - 1) // 2)
    intervals = Interval(bottom, top).split(cfg.segment_size) if top > bottom else []

    def compute(iv: Interval) -> CumulativeHalfFact:
        if cfg.oracle:
            ps = primes_3mod4_in(iv.odd_range()).tolist()
            results = [half_factorial_direct(p) for p in ps]
        else:
            results = half_factorial_batch(iv)
        results = [r for r in results if lo <= r.p < hi]
        span = (max(lo, 2 * iv.lo + 1), min(hi, 2 * iv.hi))
        return table2_report(results, xs, [span])

    path_of = None
    if cfg.checkpoint_dir is not None:
        cfg.checkpoint_dir.mkdir(parents=True, exist_ok=True)
        path_of = lambda iv: cfg.checkpoint_dir / f"halffact-{iv.lo}-{iv.hi}.ckpt"  # noqa: E731
    parts = _run_parts(intervals, compute, path_of, cfg.threads, CumulativeHalfFact)
    cum = CumulativeHalfFact(())
    for part in parts:
        cum = merge_cumulative(cum, part)
    if not cum.checkpoints:
        cum = table2_report([], xs, [(lo, hi)])
    return render_table2(cum, cfg.format)


def run_conjecture(max_n: int, fmt: str) -> str:
    rows = [(n, round_float(conjecture_probability(n), 7)) for n in range(max_n + 1)]
    consts = naive_constants()
    named = [("e_inv", round_float(consts.e_inv, 7)), ("e_34", round_float(consts.e_34, 7)),
             ("main", round_float(consts.main, 7))]
    if fmt == "json":
        body = {
            "rows": [{"N": n, "conjecture": float(v)} for n, v in rows],
            "constants": {k: getattr(consts, k) for k, _ in named},
        }
        return json.dumps(body, indent=2) + "\n"
    if fmt == "csv":
        lines = ["N,conjecture"] + [f"{n},{v}" for n, v in rows]
        lines += ["", "constant,value"] + [f"{k},{v}" for k, v in named]
        return "\n".join(lines) + "\n"
    lines = [f"{'N':>3}  {'conjecture':>10}"] + [f"{n:>3}  {v:>10}" for n, v in rows]
    lines += [""] + [f"{k:>5}  {v}" for k, v in named]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    where = common.add_mutually_exclusive_group()
    where.add_argument("--bound", type=parse_natural, help="primes p < BOUND (e.g. 10^6)")
    where.add_argument("--range", type=parse_range, metavar="LO:HI", help="primes LO <= p < HI")
    common.add_argument("--segment-size", type=parse_natural, default=DEFAULT_SEGMENT)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $TWL_THREADS or CPU count)")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--checkpoint-dir", type=Path, default=None)
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="twl", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="solution-count histogram")
    c.add_argument("--engine", choices=ENGINES, default="half")

    h = sub.add_parser("halffact", parents=[common], help="half-factorial statistics")
    h.add_argument("--oracle", action="store_true", help="direct per-prime evaluation")

    j = sub.add_parser("conjecture", help="conjectured distribution")
    j.add_argument("--max-n", type=int, default=13)
    j.add_argument("--format", choices=FORMATS, default="csv")

    v = sub.add_parser("verify", help="identity and oracle self-checks")
    v.add_argument("--bound", type=parse_natural, default=10**4)
    v.add_argument("--inject-fault", type=parse_natural, default=None, metavar="P",
                   help="corrupt one truncated product of prime P (negative control)")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")

    try:
        if args.command == "conjecture":
            if args.max_n < 0:
                raise UsageError("--max-n must be nonnegative")
            out.write(run_conjecture(args.max_n, args.format))
            return EXIT_OK
        if args.command == "verify":
            fault = Fault(args.inject_fault) if args.inject_fault else None
            results = run_suite(args.bound, fault, report=lambda r: out.write(r.line() + "\n"))
            return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT

        if args.range is not None:
            lo, hi = args.range
        elif args.bound is not None:
            lo, hi = 2, args.bound
        else:
            raise UsageError("one of --bound or --range is required")
        cfg = RunConfig(
            command=args.command,
            lo=lo,
            hi=hi,
            segment_size=args.segment_size,
            threads=args.threads if args.threads is not None else _default_threads(),
            format=args.format,
            checkpoint_dir=args.checkpoint_dir,
            engine=getattr(args, "engine", "half"),
            oracle=getattr(args, "oracle", False),
        )
        PrimeRange(cfg.lo, cfg.hi)
        text = run_count(cfg) if cfg.command == "count" else run_halffact(cfg)
    except IntegrityError as exc:
        print(f"twl: checkpoint corrupt: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except (UsageError, CapacityError, DomainError) as exc:
        print(f"twl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
