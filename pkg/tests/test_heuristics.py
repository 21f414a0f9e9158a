from math import exp

import pytest

from truncwilson.heuristics import (
    base_distribution,
    base_distribution_convolution,
    conjecture_distribution,
    conjecture_probability,
    conjecture_probability_closed,
    naive_constants,
    p_odd,
    q_even,
)
from truncwilson.stats import round_float

TABLE1_CONJECTURE = [0.3542749, 0.2952291, 0.1918989, 0.0959495, 0.0402865, 0.0151612,
                     0.0050358, 0.0015638, 0.0004423, 0.0001190, 0.0000298, 0.0000071,
                     0.0000016, 0.0000004]


def test_p_odd_examples():
    assert p_odd(0) == pytest.approx(0.7788008, abs=5e-8)
    assert p_odd(1) == pytest.approx(0.1947002, abs=5e-8)
    assert sum(p_odd(k) for k in range(21)) == pytest.approx(1.0, abs=1e-12)


def test_q_even_examples():
    assert q_even(0) == pytest.approx(0.6065307, abs=5e-8)
    assert q_even(2) == pytest.approx(0.0758163, abs=5e-8)
    assert sum(q_even(k) for k in range(31)) == pytest.approx(1.0, abs=1e-12)


def test_base_distribution_examples():
    assert base_distribution(0) == pytest.approx(exp(-0.75), abs=1e-15)
    assert round(base_distribution(0), 5) == 0.47237
    assert base_distribution(1) == pytest.approx(exp(-0.75) / 2, abs=1e-15)
    assert base_distribution(2) == pytest.approx(3 * exp(-0.75) / 8, abs=1e-15)
    assert base_distribution(-1) == 0.0


@pytest.mark.parametrize("n", range(41))
def test_convolution_and_closed_forms_agree(n):
    assert abs(base_distribution(n) - base_distribution_convolution(n)) < 1e-12
    assert abs(conjecture_probability(n) - conjecture_probability_closed(n)) < 1e-12


def test_normalization():
    assert abs(sum(conjecture_probability(n) for n in range(41)) - 1) < 1e-9
    assert abs(sum(conjecture_probability_closed(n) for n in range(41)) - 1) < 1e-9
    conv = sum(0.75 * base_distribution_convolution(n) + 0.25 * base_distribution_convolution(n - 1)
               for n in range(41))
    assert abs(conv - 1) < 1e-9


def test_zero_term_is_main_constant():
    assert abs(conjecture_probability(0) - 0.75 * exp(-0.75)) < 1e-12


@pytest.mark.parametrize("n, value", list(enumerate(TABLE1_CONJECTURE)))
def test_table1_column(n, value):
    assert abs(conjecture_probability(n) - value) <= 5e-8
    assert round_float(conjecture_probability(n), 7) == f"{value:.7f}"


def test_distribution_shape():
    dist = conjecture_distribution(40)
    terms = [dist.terms[n] for n in range(41)]
    assert all(t >= 0 for t in terms)
    cum = dist.cumulative()
    assert all(a <= b <= 1 + 1e-12 for a, b in zip(cum, cum[1:]))
    assert all(a > b for a, b in zip(terms[1:], terms[2:]))


def test_naive_constants():
    c = naive_constants()
    assert round(c.e_inv, 5) == 0.36788
    assert round(c.e_34, 5) == 0.47237
    assert round(c.main, 7) == 0.3542749


def test_negative_arguments():
    for fn in (p_odd, q_even, conjecture_probability):
        with pytest.raises(ValueError):
            fn(-1)
