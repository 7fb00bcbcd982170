"""Efficiency ratios and the universal bounds."""

from fractions import Fraction

import pytest

from gkmfactor import rootsystem as rsys
from gkmfactor.efficiency import (
    adjoint_record,
    eta_bound,
    eta_graph,
    eta_rep,
    series_report,
)


def test_exceptional_bounds():
    assert eta_bound("E", 6) == Fraction(1, 18)
    assert eta_bound("E", 7) == Fraction(1, 25)
    assert eta_bound("E", 8) == Fraction(1, 38)


def test_classical_closed_forms():
    for l in range(1, 9):
        assert eta_bound("A", l) == Fraction(1, 2 * l + 1)
    for l in range(3, 9):
        assert eta_bound("D", l) == Fraction(1, 3 * l - 2)


def test_closed_forms_match_constructed_roots():
    for t, l in [("A", 1), ("A", 4), ("D", 4), ("E", 6), ("E", 7), ("E", 8)]:
        rs = rsys.build(t, l)
        assert eta_bound(t, l) == Fraction(rs.rank, rs.rank**2 + rs.num_roots)


def test_large_rank_limit():
    assert eta_bound("A", 1000) < Fraction(1, 2000)


def test_eta_bound_rejects_unknown():
    with pytest.raises(rsys.UnsupportedRootSystem):
        eta_bound("E", 5)


def test_eta_rep_analytic_e6():
    rs = rsys.build("E", 6)
    theta = rs.highest_root
    zero = rsys.zero_vec(rs)
    assert eta_rep(theta, zero, theta, theta, rs, numerator="analytic") == Fraction(1, 18)


def test_eta_rep_stalk_a2():
    rs = rsys.build("A", 2)
    theta = rs.highest_root
    zero = rsys.zero_vec(rs)
    assert eta_rep(theta, zero, theta, theta, rs) == Fraction(1, 5)


def test_eta_rep_top_weight():
    rs = rsys.build("A", 2)
    theta = rs.highest_root
    top = tuple(2 * x for x in theta)
    assert eta_rep(top, top, theta, theta, rs) == Fraction(1, 1)


def test_eta_rep_errors():
    rs = rsys.build("A", 2)
    theta = rs.highest_root
    zero = rsys.zero_vec(rs)
    with pytest.raises(ValueError):
        eta_rep(theta, (9, 9, 9), theta, theta, rs)
    with pytest.raises(ValueError):
        eta_rep(theta, zero, theta, theta, rs, numerator="guess")
    with pytest.raises(ValueError):
        # analytic numerator is only defined for the adjoint class at zero
        eta_rep(theta, theta, theta, theta, rs, numerator="analytic")


def test_eta_graph_a2():
    rs = rsys.build("A", 2)
    assert eta_graph(rs.highest_root, rsys.zero_vec(rs), rs) == Fraction(1, 4)


def test_eta_graph_singleton():
    rs = rsys.build("A", 2)
    zero = rsys.zero_vec(rs)
    assert eta_graph(zero, zero, rs) == Fraction(1, 1)


def test_eta_graph_at_most_one():
    rs = rsys.build("A", 2)
    theta = rs.highest_root
    for v in [theta, rsys.zero_vec(rs)]:
        assert eta_graph(theta, v, rs) <= 1


def test_eta_rep_bounded_when_stalk_computed():
    for t, l in [("A", 1), ("A", 2), ("A", 3)]:
        rs = rsys.build(t, l)
        theta = rs.highest_root
        zero = rsys.zero_vec(rs)
        val = eta_rep(theta, zero, theta, theta, rs)
        assert val <= eta_bound(t, l)
        assert val == eta_bound(t, l)  # adjoint stalk rank equals the Cartan rank


def test_adjoint_record_stalk_small():
    rec = adjoint_record("A", 2, mode="stalk")
    assert rec.numerator_source == "stalk"
    assert rec.geometric_rank == 2
    assert rec.eta == rec.bound == Fraction(1, 5)


def test_adjoint_record_caps_oversized():
    rec = adjoint_record("E", 6, mode="stalk", cell_cap=10_000)
    assert rec.geometric_rank == 6
    assert rec.numerator_source.startswith("analytic")
    assert "cap" in rec.numerator_source


def test_series_report_monotone():
    report = series_report(8)
    assert report.ok
    labels = [f"{r.type_label}{r.rank}" for r in report.records]
    assert labels[:3] == ["A1", "A2", "A3"]
    assert labels[-3:] == ["E6", "E7", "E8"]
    e_bounds = [r.bound for r in report.records if r.type_label == "E"]
    assert e_bounds == [Fraction(1, 18), Fraction(1, 25), Fraction(1, 38)]
    a6 = next(r for r in report.records if (r.type_label, r.rank) == ("A", 6))
    assert a6.bound == Fraction(1, 13) > Fraction(1, 18)


def test_series_report_validates_rank():
    with pytest.raises(ValueError):
        series_report(0)
