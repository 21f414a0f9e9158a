"""Line-delimited checkpoint files for partial histograms and half-factorial tallies.

Layout, one canonical JSON object per line::

    {"kind": ..., "schema": "truncwilson-checkpoint", "version": 1}
    {"crc": ..., "record": "range", "lo": ..., "hi": ...}                 (one per span)
    {"crc": ..., "record": "counts", "N": ..., "count": ...}             (histogram)
    {"crc": ..., "record": "checkpoint", "X": ..., "primes_3mod4": ..., "r_p_eq_1": ...}
    {"crc": ..., "record": "end", "records": n}

Every record carries a CRC-32 of its own canonical encoding (without the crc
field), so a damaged line is reported by line number instead of silently
skewing a merge.
"""

from __future__ import annotations

import json
import os
import zlib
from pathlib import Path

from .errors import IntegrityError
from .stats import CumulativeHalfFact, HalfFactCheckpoint, Histogram

SCHEMA = "truncwilson-checkpoint"
VERSION = 1


def _canon(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _sealed(obj: dict) -> str:
    crc = zlib.crc32(_canon(obj).encode())
    return _canon({**obj, "crc": f"{crc:08x}"})


def dumps(obj: Histogram | CumulativeHalfFact) -> str:
    if isinstance(obj, Histogram):
        kind = "histogram"
        body = [{"record": "counts", "N": n, "count": c} for n, c in obj.counts.items()]
    elif isinstance(obj, CumulativeHalfFact):
        kind = "half_factorial"
        body = [
            {"record": "checkpoint", "X": c.x, "primes_3mod4": c.primes_3mod4,
             "r_p_eq_1": c.r_p_eq_1}
            for c in obj.checkpoints
        ]
    else:
        raise TypeError(f"cannot checkpoint {type(obj).__name__}")
    records = [{"record": "range", "lo": lo, "hi": hi} for lo, hi in obj.ranges] + body
    lines = [_canon({"schema": SCHEMA, "version": VERSION, "kind": kind})]
    lines += [_sealed(r) for r in records]
    lines.append(_sealed({"record": "end", "records": len(records)}))
    return "\n".join(lines) + "\n"


def loads(text: str, source: str = "<string>") -> Histogram | CumulativeHalfFact:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    else:
        raise IntegrityError(f"{source}: missing final newline (truncated?)")
    if not lines:
        raise IntegrityError(f"{source}: empty checkpoint")

    def bad(lineno: int, why: str) -> IntegrityError:
        return IntegrityError(f"{source}:{lineno}: {why}: {lines[lineno - 1][:80]!r}")

    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        raise bad(1, "unreadable header") from None
    if not isinstance(header, dict) or header.get("schema") != SCHEMA:
        raise bad(1, "not a checkpoint header")
    if header.get("version") != VERSION:
        raise bad(1, f"unsupported version {header.get('version')!r}")
    kind = header.get("kind")
    if kind not in ("histogram", "half_factorial"):
        raise bad(1, f"unknown kind {kind!r}")

    records = []
    end_seen = False
    for lineno, line in enumerate(lines[1:], start=2):
        if end_seen:
            raise bad(lineno, "data after end record")
        try:
            rec = json.loads(line)
            crc = rec.pop("crc")
        except (json.JSONDecodeError, KeyError, AttributeError, TypeError):
            raise bad(lineno, "malformed record") from None
        if f"{zlib.crc32(_canon(rec).encode()):08x}" != crc:
            raise bad(lineno, "checksum mismatch")
        if rec.get("record") == "end":
            if rec.get("records") != len(records):
                raise bad(lineno, f"expected {rec.get('records')} records, found {len(records)}")
            end_seen = True
        else:
            records.append((lineno, rec))
    if not end_seen:
        raise IntegrityError(f"{source}: no end record (truncated?)")

    ranges, counts, rows = [], {}, []
    try:
        for lineno, rec in records:
            tag = rec["record"]
            if tag == "range":
                ranges.append((int(rec["lo"]), int(rec["hi"])))
            elif tag == "counts" and kind == "histogram":
                counts[int(rec["N"])] = int(rec["count"])
            elif tag == "checkpoint" and kind == "half_factorial":
                rows.append(
                    HalfFactCheckpoint(int(rec["X"]), int(rec["primes_3mod4"]), int(rec["r_p_eq_1"]))
                )
            else:
                raise bad(lineno, f"unexpected record {tag!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, IntegrityError):
            raise
        raise bad(lineno, f"invalid field ({exc})") from None

    if kind == "histogram":
        return Histogram(tuple(ranges), counts)
    return CumulativeHalfFact(tuple(rows), tuple(ranges))


def checkpoint_write(obj: Histogram | CumulativeHalfFact, path: str | os.PathLike) -> None:
    """Atomically write ``obj`` to ``path``; a second concurrent writer fails."""
    path = Path(path)
    lock = path.with_name(path.name + ".lock")
    fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    try:
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(dumps(obj))
        os.replace(tmp, path)
    finally:
        os.close(fd)
        os.unlink(lock)


def checkpoint_read(path: str | os.PathLike) -> Histogram | CumulativeHalfFact:
    path = Path(path)
    return loads(path.read_text(), str(path))
