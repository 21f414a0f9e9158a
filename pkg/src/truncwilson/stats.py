"""Histograms of solution counts and cumulative half-factorial statistics.

Partial results over disjoint ranges merge by pointwise addition, so any
partition of a range gives the same final tables.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import DomainError, MergeError
from .heuristics import conjecture_probability
from .primes import PrimeRange

TABLE1_COLUMNS = ("N", "count", "proportion", "conjecture")
TABLE2_COLUMNS = ("X", "primes_3mod4", "r_p_eq_1", "proportion")
TABLE1_DIGITS = 7
TABLE2_DIGITS = 10

Ranges = tuple[tuple[int, int], ...]


def _normalize_ranges(ranges: Iterable[tuple[int, int]]) -> Ranges:
    spans = sorted((int(lo), int(hi)) for lo, hi in ranges if hi > lo)
    out: list[list[int]] = []
    for lo, hi in spans:
        if out and lo < out[-1][1]:
            raise MergeError(f"range [{lo}, {hi}) overlaps [{out[-1][0]}, {out[-1][1]})")
        if out and lo == out[-1][1]:
            out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


def _join_ranges(a: Ranges, b: Ranges) -> Ranges:
    return _normalize_ranges(list(a) + list(b))


def round_ratio(num: int, den: int, digits: int) -> str:
    """``num/den`` rounded half-to-even to ``digits`` decimals, computed exactly."""
    if den <= 0:
        raise ZeroDivisionError("ratio with nonpositive denominator")
    scale = 10**digits
    q, r = divmod(num * scale, den)
    if 2 * r > den or (2 * r == den and q % 2 == 1):
        q += 1
    whole, frac = divmod(q, scale)
    return f"{whole}.{frac:0{digits}d}"


def round_float(x: float, digits: int) -> str:
    """Half-to-even rounding of a binary float at its exact value."""
    num, den = x.as_integer_ratio()
    return round_ratio(num, den, digits)


@dataclass(frozen=True)
class Histogram:
    """Number of primes with exactly N nontrivial solutions, for each N."""

    ranges: Ranges = ()
    counts: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "ranges", _normalize_ranges(self.ranges))
        clean = {}
        for n, c in self.counts.items():
            n, c = int(n), int(c)
            if n < 0 or c < 0:
                raise ValueError(f"negative histogram entry {n}: {c}")
            if c:
                clean[n] = c
        object.__setattr__(self, "counts", dict(sorted(clean.items())))

    @classmethod
    def empty(cls) -> Histogram:
        return cls()

    @classmethod
    def from_range(cls, rng: PrimeRange, counts: Mapping[int, int]) -> Histogram:
        return cls(((rng.lo, rng.hi),), counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def range(self) -> PrimeRange | None:
        """The covered range when it is a single contiguous span."""
        if len(self.ranges) != 1:
            return None
        return PrimeRange(*self.ranges[0])

    def __getitem__(self, n: int) -> int:
        return self.counts.get(n, 0)

    def max_n(self) -> int:
        return max(self.counts, default=0)


def merge(h1: Histogram, h2: Histogram) -> Histogram:
    """Combine histograms over disjoint ranges."""
    counts = dict(h1.counts)
    for n, c in h2.counts.items():
        counts[n] = counts.get(n, 0) + c
    return Histogram(_join_ranges(h1.ranges, h2.ranges), counts)


def merge_all(parts: Iterable[Histogram]) -> Histogram:
    out = Histogram.empty()
    for h in parts:
        out = merge(out, h)
    return out


@dataclass(frozen=True)
class Table1Row:
    n: int | str
    count: int
    proportion: str
    conjecture: str

    def as_tuple(self) -> tuple:
        return (self.n, self.count, self.proportion, self.conjecture)


def table1_report(h: Histogram, max_n: int | None = None) -> list[Table1Row]:
    """Rows N = 0..max_n with counts, observed proportion and conjecture, then Total."""
    total = h.total
    if total <= 0:
        raise DomainError("histogram is empty")
    top = h.max_n() if max_n is None else max_n
    rows = [
        Table1Row(
            n,
            h[n],
            round_ratio(h[n], total, TABLE1_DIGITS),
            round_float(conjecture_probability(n), TABLE1_DIGITS),
        )
        for n in range(top + 1)
    ]
    # The conjectured distribution sums to one; its 40-term partial sum rounds to it.
    conj_total = sum(conjecture_probability(n) for n in range(max(top, 40) + 1))
    rows.append(
        Table1Row("Total", total, round_ratio(total, total, TABLE1_DIGITS),
                  round_float(conj_total, TABLE1_DIGITS))
    )
    return rows


@dataclass(frozen=True)
class HalfFactCheckpoint:
    x: int
    primes_3mod4: int
    r_p_eq_1: int

    @property
    def proportion(self) -> str:
        if self.primes_3mod4 == 0:
            return "nan"
        return round_ratio(self.r_p_eq_1, self.primes_3mod4, TABLE2_DIGITS)

    def as_tuple(self) -> tuple:
        return (self.x, self.primes_3mod4, self.r_p_eq_1, self.proportion)


@dataclass(frozen=True)
class CumulativeHalfFact:
    """Cumulative counts of p = 3 mod 4 and of r_p = 1 below each checkpoint X."""

    checkpoints: tuple[HalfFactCheckpoint, ...]
    ranges: Ranges = ()

    def __post_init__(self):
        object.__setattr__(self, "checkpoints", tuple(self.checkpoints))
        object.__setattr__(self, "ranges", _normalize_ranges(self.ranges))

    def row(self, x: int) -> HalfFactCheckpoint:
        for c in self.checkpoints:
            if c.x == x:
                return c
        raise KeyError(x)


def table2_report(
    results: Iterable, checkpoints: Sequence[int], ranges: Iterable[tuple[int, int]] = ()
) -> CumulativeHalfFact:
    """Tally ascending ``HalfFactResult`` records below each checkpoint."""
    xs = sorted(set(int(x) for x in checkpoints))
    below = [0] * len(xs)
    ones = [0] * len(xs)
    last = -1
    for res in results:
        p, rp = res.p, res.residue
        if p <= last:
            raise DomainError(f"results not strictly ascending: {p} after {last}")
        last = p
        for i, x in enumerate(xs):
            if p < x:
                below[i] += 1
                ones[i] += rp == 1
    rows = tuple(HalfFactCheckpoint(x, c, o) for x, c, o in zip(xs, below, ones))
    return CumulativeHalfFact(rows, tuple(ranges))


def merge_cumulative(c1: CumulativeHalfFact, c2: CumulativeHalfFact) -> CumulativeHalfFact:
    """Sum two tallies built over disjoint ranges with the same checkpoints."""
    if not c1.checkpoints:
        return CumulativeHalfFact(c2.checkpoints, _join_ranges(c1.ranges, c2.ranges))
    if not c2.checkpoints:
        return CumulativeHalfFact(c1.checkpoints, _join_ranges(c1.ranges, c2.ranges))
    x1 = [c.x for c in c1.checkpoints]
    if x1 != [c.x for c in c2.checkpoints]:
        raise MergeError("checkpoint lists differ")
    rows = tuple(
        HalfFactCheckpoint(a.x, a.primes_3mod4 + b.primes_3mod4, a.r_p_eq_1 + b.r_p_eq_1)
        for a, b in zip(c1.checkpoints, c2.checkpoints)
    )
    return CumulativeHalfFact(rows, _join_ranges(c1.ranges, c2.ranges))


def decade_checkpoints(bound: int) -> list[int]:
    """Powers of ten below ``bound``, followed by ``bound`` itself."""
    xs = []
    x = 10
    while x < bound:
        xs.append(x)
        x *= 10
    xs.append(bound)
    return xs


# ---------------------------------------------------------------- rendering


def _render(columns: Sequence[str], rows: list[tuple], fmt: str, meta: dict) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        body = dict(meta)
        body["rows"] = [dict(zip(columns, r)) for r in rows]
        return json.dumps(body, indent=2) + "\n"
    if fmt == "table":
        cells = [list(map(str, columns))] + [[str(v) for v in r] for r in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
        lines = ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_table1(rows: list[Table1Row], fmt: str = "csv", ranges: Ranges = ()) -> str:
    if fmt == "json":
        body = [r for r in rows if r.n != "Total"]
        total = next(r for r in rows if r.n == "Total")
        tuples = [(r.n, r.count, float(r.proportion), float(r.conjecture)) for r in body]
        meta = {"table": "solutions", "ranges": [list(r) for r in ranges], "total": total.count}
        return _render(TABLE1_COLUMNS, tuples, fmt, meta)
    return _render(TABLE1_COLUMNS, [r.as_tuple() for r in rows], fmt, {})


def render_table2(cum: CumulativeHalfFact, fmt: str = "csv") -> str:
    if fmt == "json":
        tuples = [
            (c.x, c.primes_3mod4, c.r_p_eq_1, None if c.primes_3mod4 == 0 else float(c.proportion))
            for c in cum.checkpoints
        ]
        meta = {"table": "half_factorial", "ranges": [list(r) for r in cum.ranges]}
        return _render(TABLE2_COLUMNS, tuples, fmt, meta)
    return _render(TABLE2_COLUMNS, [c.as_tuple() for c in cum.checkpoints], fmt, {})
