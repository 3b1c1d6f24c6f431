"""Convergence of the q-family to the additive family as q -> 1."""

import mpmath
import pytest

from dualracah.backend import rat
from dualracah.errors import InadmissibleParams
from dualracah.params import R, make_params
from dualracah.qlimit import float_tables, matched_q_params, qlimit_check
from conftest import std_params


@pytest.mark.parametrize("D", [(), (1,), (1, 2)])
def test_convergence_ladder(D):
    rep = qlimit_check(std_params(R, 5), D)
    assert rep.within_tolerance
    assert rep.monotone
    with mpmath.workprec(rep.precision):
        for k, gap in zip(rep.ks, rep.p_gaps):
            assert gap < mpmath.mpf(10) ** (-k + 2)


def test_matched_tuple_shape():
    p = std_params(R, 4)
    pq = matched_q_params(p, 4)
    with mpmath.workprec(256):
        assert abs(pq.q - (1 - mpmath.mpf(10) ** -4)) < mpmath.mpf(10) ** -70
        assert abs(pq.a * pq.q ** 4 - 1) < mpmath.mpf(10) ** -70
        assert 0 < pq.d < 1


def test_float_tables_normalization():
    p = std_params(R, 4)
    pq = matched_q_params(p, 3)
    pdn, qvals = float_tables(pq, (1,))
    with mpmath.workprec(256):
        for n in range(5):
            assert abs(pdn[n][0] - 1) < mpmath.mpf(10) ** -70
        for x in range(5):
            assert qvals[x][0] == 1


def test_inadmissible_reference_rejected():
    bad = make_params(R, 5, b=5, c=rat(1, 2), d=rat(2, 5))
    with pytest.raises(InadmissibleParams):
        qlimit_check(bad, (1,))
