"""Kinetics evaluation, classification, normalization."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import crnbalance as cb


def test_evaluate_re1_at_ones(re1_powerlaw):
    net, kin = re1_powerlaw
    assert np.allclose(cb.evaluate(kin, np.ones(3)), np.ones(8))


def test_evaluate_counterexample_at_ones(counterexample):
    _, kin = counterexample
    assert np.allclose(cb.evaluate(kin, np.ones(3)), [1, 1, 1, 1, 1.5])


def test_evaluate_rational_rows(mm_rational):
    _, kq = mm_rational
    vals = cb.evaluate(kq, np.ones(4))
    assert np.allclose(vals, [1, 1, 1 / 3, 1 / 3])


def test_mass_action_from_examples(re1_net):
    net = cb.build_network(["A", "B", "C"], [[1, 1, 0], [0, 0, 1]], [(0, 1)])
    kin = cb.mass_action_from(net, [2])
    assert np.array_equal(kin.orders, [[1, 1, 0]])
    assert kin.rates[0] == 2

    kin1 = cb.mass_action_from(re1_net, [1] * 8)
    assert np.array_equal(kin1.orders[0], [2, 0, 0])
    for q, rx in enumerate(re1_net.reactions):
        assert kin1.exact_orders[q] == re1_net.complexes[rx.reactant].coeffs

    zero_net = cb.build_network(["A"], [[0], [1]], [(0, 1)])
    kin2 = cb.mass_action_from(zero_net, [1])
    assert np.array_equal(kin2.orders, [[0]])


def test_classify_re1(re1_powerlaw):
    net, kin = re1_powerlaw
    cls = cb.classify(kin, net)
    assert cls.pl_rdk is True
    assert cls.pl_nik is False
    assert cls.por is False  # column X1 has no negative entry
    assert cls.mass_action is False


def test_classify_counterexample(counterexample):
    net, kin = counterexample
    cls = cb.classify(kin, net)
    assert cls.pl_rdk is True
    assert cls.por is True
    assert cls.pl_nik is False


def test_classify_zero_orders():
    net = cb.build_network(["A", "B"], [[1, 0], [0, 1]], [(0, 1)])
    kin = cb.power_law([[0, 0]], [1])
    cls = cb.classify(kin, net)
    assert cls.pl_nik is True and cls.por is False


def test_mass_action_is_rdk_and_fss(re1_massaction):
    net, kin = re1_massaction
    t = cb.build_t_matrices(net, kin)
    cls = cb.classify(kin, net, t)
    assert cls.mass_action and cls.pl_rdk and cls.factor_span_surjective


def test_por_nik_mutually_exclusive():
    rng = np.random.default_rng(3)
    net = cb.build_network(["A", "B"], [[1, 0], [0, 1]], [(0, 1), (1, 0)])
    for _ in range(25):
        kin = cb.power_law(rng.integers(-2, 3, size=(2, 2)), [1, 1])
        cls = cb.classify(kin, net)
        assert not (cls.por and cls.pl_nik)


def test_not_applicable(mm_polypl):
    net, kin = mm_polypl
    cls = cb.classify(kin, net)
    assert cls.pl_rdk is None
    with pytest.raises(cb.NotApplicableError):
        cls.require("pl_rdk")
    assert cls.require("cf") is False  # shared reactant rows differ termwise


def test_hill_classification_and_supp():
    net = cb.build_network(["X"], [[1], [2]], [(0, 1)])
    kin = cb.hill([[1]], [[0.5]], [1])
    cls = cb.classify(kin, net)
    assert cls.por is False
    with pytest.raises(cb.InvalidKineticsError):
        cb.hill([[1]], [[0]], [1])  # support mismatch


def test_normalize_thirds(mm_polypl):
    _, kin = mm_polypl
    norm = cb.normalize_poly_pl(kin)
    assert norm.length == 3 and norm.is_normalized
    assert np.allclose(norm.term_coeffs[2], [1 / 3, 1 / 3, 1 / 3])
    assert norm.exact_term_coeffs[2] == (Fraction(1, 3),) * 3
    # idempotence
    again = cb.normalize_poly_pl(norm)
    assert all(np.array_equal(a, b) for a, b in
               zip(again.term_coeffs, norm.term_coeffs))


def test_normalize_split_preserves_evaluation():
    net = cb.build_network(["A", "B"], [[1, 0], [0, 1]], [(0, 1), (1, 0)])
    kin = cb.poly_pl(
        [[(2, (1, 0))],
         [(1, (0, 1)), (1, (0, 2)), (1, (1, 1)), (1, (2, 0))]],
        [1, 1])
    norm = cb.normalize_poly_pl(kin)
    assert norm.length == 4
    assert np.allclose(norm.term_coeffs[0], [0.5, 0.5, 0.5, 0.5])
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = np.exp(rng.uniform(-2, 2, 2))
        assert np.allclose(cb.evaluate(kin, x), cb.evaluate(norm, x), rtol=1e-14)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=25, deadline=None)
def test_normalize_preserves_evaluation_random(seed):
    rng = np.random.default_rng(seed)
    r, m = 2, 2
    terms = []
    for _ in range(r):
        h_q = int(rng.integers(1, 4))
        terms.append([(float(rng.uniform(0.1, 2.0)),
                       tuple(float(v) for v in rng.uniform(-1, 2, m)))
                      for _ in range(h_q)])
    kin = cb.poly_pl(terms, rng.uniform(0.5, 2.0, r))
    norm = cb.normalize_poly_pl(kin)
    assert norm.is_normalized
    x = np.exp(rng.uniform(-1.5, 1.5, m))
    assert np.allclose(cb.evaluate(kin, x), cb.evaluate(norm, x), rtol=1e-12)
    again = cb.normalize_poly_pl(norm)
    assert all(np.allclose(a, b) for a, b in zip(again.term_coeffs, norm.term_coeffs))


def test_evaluate_multiplicative_in_rates(counterexample):
    _, kin = counterexample
    doubled = cb.power_law(kin.orders, kin.rates * 2)
    x = np.array([0.7, 1.3, 2.1])
    assert np.allclose(2 * cb.evaluate(kin, x), cb.evaluate(doubled, x))


def test_nonpositive_state_policy():
    kin_neg = cb.power_law([[-1, 0]], [1])
    with pytest.raises(cb.NonPositiveStateError):
        cb.evaluate(kin_neg, [0.0, 1.0])
    with pytest.raises(cb.NonPositiveStateError):
        cb.evaluate(kin_neg, [-1.0, 1.0])
    kin_pos = cb.power_law([[2, 1]], [1])
    assert cb.evaluate(kin_pos, [0.0, 1.0])[0] == 0.0
    # a zero coordinate is fine when no exponent on it is negative
    assert cb.evaluate(kin_neg, [2.0, 0.0])[0] == 0.5


def test_hill_evaluation_rewrite_at_zero():
    # negative exponent: x^f / (d + x^f) = 1 / (d x^|f| + 1), defined at 0
    kin = cb.hill([[-2]], [[3.0]], [1])
    assert np.isclose(cb.evaluate(kin, [0.0])[0], 1.0)
    x = 1.7
    expected = x ** -2 / (3.0 + x ** -2)
    assert np.isclose(cb.evaluate(kin, [x])[0], expected, rtol=1e-14)


@pytest.mark.parametrize("family", ["powerlaw", "polypl", "hill", "rational"])
def test_log_jacobian_matches_finite_differences(family, mm_rational):
    rng = np.random.default_rng(17)
    if family == "powerlaw":
        kin = cb.power_law(rng.uniform(-2, 2, (3, 2)), rng.uniform(0.5, 2, 3))
        m = 2
    elif family == "polypl":
        kin = cb.poly_pl(
            [[(0.5, tuple(rng.uniform(-1, 2, 2))), (1.2, tuple(rng.uniform(-1, 2, 2)))],
             [(0.8, tuple(rng.uniform(-1, 2, 2)))]],
            [1.0, 2.0])
        m = 2
    elif family == "hill":
        kin = cb.hill([[1, -2], [0, 1]], [[0.5, 2.0], [0, 1.5]], [1.0, 0.7])
        m = 2
    else:
        kin = mm_rational[1]
        m = 4
    u = rng.uniform(-0.5, 0.5, m)
    x = np.exp(u)
    k, jac = cb.kinetics.log_jacobian(kin, x)
    assert np.allclose(k, cb.evaluate(kin, x), rtol=1e-12)
    eps = 1e-6
    for i in range(m):
        up = u.copy()
        up[i] += eps
        dn = u.copy()
        dn[i] -= eps
        fd = (cb.evaluate(kin, np.exp(up)) - cb.evaluate(kin, np.exp(dn))) / (2 * eps)
        assert np.allclose(jac[:, i], fd, rtol=1e-5, atol=1e-8)


def test_rates_balancing_all_ones(re1_net):
    k = cb.rates_balancing_all_ones(re1_net)
    ia = np.array(re1_net.ia, dtype=float)
    assert np.allclose(ia @ np.array([float(v) for v in k]), 0.0)
    assert all(v > 0 for v in k)
    irreversible = cb.build_network(["A", "B"], [[1, 0], [0, 1]], [(0, 1)])
    with pytest.raises(cb.CrnError):
        cb.rates_balancing_all_ones(irreversible)


def test_mass_action_classification_on_integer_networks():
    rng = np.random.default_rng(31)
    from conftest import random_network
    for _ in range(10):
        net = random_network(rng)
        kin = cb.mass_action_from(net, [1] * net.num_reactions)
        cls = cb.classify(kin, net)
        assert cls.pl_rdk is True and cls.pl_nik is True
