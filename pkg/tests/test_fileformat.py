"""Parser and renderer for the network/kinetics text format."""

from fractions import Fraction

import numpy as np
import pytest

import crnbalance as cb
from crnbalance.fileformat import (MissingKineticsRowError, NegativeRateError,
                                   ParseError, UnknownSpeciesError, parse_crn,
                                   render_crn)

from conftest import data_path


def test_parse_re1_matches_fixture(re1_powerlaw):
    net_fx, kin_fx = re1_powerlaw
    net, kin = parse_crn(data_path("re1_powerlaw.crn").read_text())
    assert net.y == net_fx.y
    assert net.ia == net_fx.ia
    assert [rx.label for rx in net.reactions] == [f"r{i}" for i in range(1, 9)]
    assert np.array_equal(kin.orders, kin_fx.orders)
    assert kin.exact_orders == kin_fx.exact_orders
    assert np.array_equal(kin.rates, kin_fx.rates)


def test_parse_counterexample_rates(counterexample):
    net, kin = parse_crn(data_path("counterexample.crn").read_text())
    assert np.allclose(kin.rates, [1, 1, 1, 1, 1.5])
    assert net.num_complexes == 4


def test_parse_massaction():
    net, kin = parse_crn(data_path("re1_massaction.crn").read_text())
    cls = cb.classify(kin, net)
    assert cls.mass_action is True


def test_parse_polypl(mm_polypl):
    net_fx, kin_fx = mm_polypl
    net, kin = parse_crn(data_path("mm_polypl.crn").read_text())
    assert isinstance(kin, cb.PolyPLKinetics)
    for a, b in zip(kin.term_orders, kin_fx.term_orders):
        assert np.array_equal(a, b)
    assert net.y == net_fx.y


def test_parse_hill():
    net, kin = parse_crn(data_path("hill_single.crn").read_text())
    assert isinstance(kin, cb.HillKinetics)
    assert kin.orders[0, 0] == 1 and kin.dissoc[0, 0] == 0.5
    x = np.array([2.0])
    assert np.isclose(cb.evaluate(kin, x)[0], 2.0 / 2.5)


def test_parse_zero_complex_and_fractions():
    text = """
species A B
r1: 0 -> A rate 3/2
r2: A -> 1/2 A + B rate 1
kinetics powerlaw
order r1:
order r2: A=1, B=-0.25
"""
    net, kin = parse_crn(text)
    assert net.complexes[0].coeffs == (Fraction(0), Fraction(0))
    assert net.complexes[2].coeffs == (Fraction(1, 2), Fraction(1))
    assert kin.rates[0] == 1.5
    assert np.array_equal(kin.orders[0], [0, 0])
    assert kin.orders[1, 1] == -0.25
    assert kin.exact_orders is None  # a decimal literal demotes exactness


def test_parse_errors():
    base = "species A B\nr1: A -> B rate {rate}\nkinetics massaction\n"
    with pytest.raises(NegativeRateError):
        parse_crn(base.format(rate="-1"))
    with pytest.raises(NegativeRateError):
        parse_crn(base.format(rate="0"))
    with pytest.raises(UnknownSpeciesError):
        parse_crn("species A\nr1: A -> C rate 1\nkinetics massaction\n")
    with pytest.raises(ParseError, match="duplicate reaction label"):
        parse_crn("species A B\nr1: A -> B rate 1\nr1: B -> A rate 1\n"
                  "kinetics massaction\n")
    with pytest.raises(ParseError, match="kinetics"):
        parse_crn("species A B\nr1: A -> B rate 1\n")


def test_missing_kinetics_row_names_the_reaction():
    text = ("species A B\nr1: A -> B rate 1\nr2: B -> A rate 1\nr3: A -> 2 A rate 1\n"
            "kinetics powerlaw\norder r1: A=1\norder r2: B=1\n")
    with pytest.raises(MissingKineticsRowError, match="r3"):
        parse_crn(text)


def test_parse_error_carries_line_number():
    try:
        parse_crn("species A B\nr1: A -> B rate 1\nr1: B -> A rate 1\n"
                  "kinetics massaction\n")
    except ParseError as exc:
        assert exc.line == 3
    else:
        pytest.fail("expected a ParseError")


@pytest.mark.parametrize("name", ["re1_powerlaw.crn", "mm_polypl.crn",
                                  "hill_single.crn", "counterexample.crn"])
def test_round_trip(name):
    net, kin = parse_crn(data_path(name).read_text())
    net2, kin2 = parse_crn(render_crn(net, kin))
    assert net2.species == net.species
    assert net2.y == net.y
    assert net2.ia == net.ia
    assert [r.label for r in net2.reactions] == [r.label for r in net.reactions]
    assert np.array_equal(kin2.rates, kin.rates)
    if isinstance(kin, cb.PowerLawKinetics):
        assert np.array_equal(kin2.orders, kin.orders)
        assert kin2.exact_orders == kin.exact_orders
    elif isinstance(kin, cb.PolyPLKinetics):
        for a, b in zip(kin2.term_orders, kin.term_orders):
            assert np.array_equal(a, b)
        for a, b in zip(kin2.term_coeffs, kin.term_coeffs):
            assert np.array_equal(a, b)
    elif isinstance(kin, cb.HillKinetics):
        assert np.array_equal(kin2.orders, kin.orders)
        assert np.array_equal(kin2.dissoc, kin.dissoc)


def test_round_trip_massaction_becomes_powerlaw():
    net, kin = parse_crn(data_path("re1_massaction.crn").read_text())
    net2, kin2 = parse_crn(render_crn(net, kin))
    assert np.array_equal(kin2.orders, kin.orders)
    assert cb.classify(kin2, net2).mass_action is True
