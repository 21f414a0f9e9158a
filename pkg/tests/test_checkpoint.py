import pytest

from truncwilson.checkpoint import checkpoint_read, checkpoint_write, dumps, loads
from truncwilson.errors import IntegrityError
from truncwilson.primes import PrimeRange
from truncwilson.remainder_tree import half_factorial_bound
from truncwilson.stats import Histogram, decade_checkpoints, merge_all, table2_report
from truncwilson.wilson import solutions_histogram


@pytest.fixture
def hist():
    return solutions_histogram(PrimeRange(2, 5000))


def test_round_trip_histogram(tmp_path, hist):
    path = tmp_path / "h.ckpt"
    checkpoint_write(hist, path)
    back = checkpoint_read(path)
    assert back == hist
    assert dumps(back) == path.read_text()


def test_round_trip_cumulative(tmp_path):
    cum = table2_report(list(half_factorial_bound(10**4)), decade_checkpoints(10**4), [(2, 10**4)])
    path = tmp_path / "c.ckpt"
    checkpoint_write(cum, path)
    assert checkpoint_read(path) == cum
    assert dumps(checkpoint_read(path)) == path.read_text()


def test_round_trip_empty():
    assert loads(dumps(Histogram.empty())) == Histogram.empty()


def test_truncated_file(tmp_path, hist):
    text = dumps(hist)
    for cut in (len(text) - 1, len(text) // 2, 10):
        with pytest.raises(IntegrityError):
            loads(text[:cut])
    lines = text.splitlines(keepends=True)
    with pytest.raises(IntegrityError, match="no end record"):
        loads("".join(lines[:-1]))


def test_corrupt_record_reports_line(hist):
    lines = dumps(hist).splitlines(keepends=True)
    lines[3] = lines[3].replace('"count":', '"count":1', 1)
    with pytest.raises(IntegrityError, match=r":4: checksum mismatch"):
        loads("".join(lines))


def test_bad_header():
    with pytest.raises(IntegrityError):
        loads('{"schema":"other"}\n')
    with pytest.raises(IntegrityError):
        loads("not json\n")
    with pytest.raises(IntegrityError):
        loads("")


def test_single_writer(tmp_path, hist):
    path = tmp_path / "h.ckpt"
    (tmp_path / "h.ckpt.lock").write_text("")
    with pytest.raises(FileExistsError):
        checkpoint_write(hist, path)
    assert not path.exists()


@pytest.mark.slow
def test_hundred_segment_checkpoints_merge_to_single_pass(tmp_path, histogram_1e6):
    rng = PrimeRange(2, 10**6)
    for i, seg in enumerate(rng.split(10**4)):
        checkpoint_write(solutions_histogram(seg), tmp_path / f"{i:03d}.ckpt")
    files = sorted(tmp_path.glob("*.ckpt"))
    assert len(files) == 100
    merged = merge_all(checkpoint_read(f) for f in files)
    assert merged == histogram_1e6
