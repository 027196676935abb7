import random

import pytest

from boolcum import model
from boolcum.model import ONE, X, Y, AlgElement, JointState, MomentOrderError
from boolcum.scalar import MomentSeq, moments_to_cumulants


@pytest.fixture
def state(rng):
    return model.random_state(rng, 12)


def test_algebra_words():
    assert (X * Y).terms == {"XY": 1}
    assert ((X + Y) ** 2).terms == {"XX": 1, "XY": 1, "YX": 1, "YY": 1}
    assert (X * ONE) == X
    assert (X - X) == AlgElement.zero()
    assert (2 * X).terms == {"X": 2}


def test_runs():
    assert model.runs("XXYXYY") == [("X", 2), ("Y", 1), ("X", 1), ("Y", 2)]
    assert model.runs("") == []


def test_phi_factorizes_over_runs():
    s = JointState(MomentSeq([2, 3, 5]), MomentSeq([7, 11, 13]))
    assert model.phi_word(s, "") == 1
    assert model.phi_word(s, "XXY") == 3 * 7
    assert model.phi_word(s, "XYX") == 2 * 7 * 2
    assert model.phi_word(s, "YYYX") == 13 * 2
    with pytest.raises(MomentOrderError):
        model.phi_word(s, "XXXX")


def test_stream_agrees_with_expansion(state, rng):
    for _ in range(20):
        factors = model.random_entries(rng, rng.randint(1, 5))
        product = ONE
        for a in factors:
            product = product * a
        assert model.phi_product(state, factors) == model.phi_elem(state, product)


def test_joint_moments_streamed_vs_expanded(state):
    Z = X + Y + X * Y
    assert model.joint_moments(state, Z, 5) == model.joint_moments_expanded(state, Z, 5)


def test_single_letter_cumulants_match_scalar(state):
    b = moments_to_cumulants(state.mX)
    for n in range(1, 7):
        assert model.mixed_cumulant(state, [X] * n) == b[n]


def test_mixed_cumulant_prefixes(state, rng):
    entries = model.random_entries(rng, 5)
    pref = model.mixed_cumulants_of_prefixes(state, entries)
    assert pref == [model.mixed_cumulant(state, entries[:k]) for k in range(1, 6)]
    with pytest.raises(ValueError):
        model.mixed_cumulant(state, [])


def test_two_letter_vanishing_example(state):
    assert model.mixed_cumulant(state, [X, Y]) == 0
    assert model.mixed_cumulant(state, [X * X, Y, X]) == 0


def test_sweeps_pass(state):
    rng = random.Random(7)
    for n in range(3):
        assert model.verify_vanishing(state, n, 2 - n, rng).ok
    assert model.verify_unit_rules(state, 3, rng).ok
    assert model.verify_product_rules(state, 3, rng).ok


def test_product_rule_vanishing_skipped_past_max_length(state):
    rng = random.Random(0)
    long = model.verify_product_rules(state, 4, rng, draws=1, max_length=5)
    full = model.verify_product_rules(state, 3, rng, draws=1, max_length=5)
    assert long.checked == 5 and full.checked == 4 * 4


def test_json_roundtrip(state):
    assert JointState.from_json(state.to_json()) == state
    a = X * Y + ONE.scale(3)
    assert AlgElement.from_json(a.to_json()) == a


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        JointState(MomentSeq([1]), MomentSeq([1, 2]))


def test_phi_examples():
    s = JointState(MomentSeq([2, 3, 5]), MomentSeq([7, 11, 13]))
    assert model.phi_word(s, "XY") == 2 * 7
    assert model.phi_word(s, "XXX") == 5
    assert model.phi_word(s, "XXYX") == 3 * 7 * 2
    assert model.phi_elem(s, ONE) == 1
    assert model.phi_elem(s, X + Y) == 9


def test_phi_expansion_at_unit_moments():
    s = JointState(MomentSeq([1, 1, 1, 1]), MomentSeq([1, 1, 1, 1]))
    Z = X + Y + X * Y
    # every word has phi = 1, so phi(Z^2) counts the 9 words of (X+Y+XY)^2
    assert model.phi_elem(s, Z * Z) == 9


def test_named_cumulant_facts(state, rng):
    bX = moments_to_cumulants(state.mX)
    assert model.mixed_cumulant(state, [X * Y]) == model.mixed_cumulant(state, [X]) * model.mixed_cumulant(state, [Y])
    assert model.mixed_cumulant(state, [ONE, X]) == 0
    assert model.mixed_cumulant(state, [X, X]) == bX[2] == state.mX[2] - state.mX[1] ** 2
    a1, a2 = model.random_entries(rng, 2)
    assert model.mixed_cumulant(state, [a1, ONE, a2]) == model.mixed_cumulant(state, [a1, a2])
    assert model.mixed_cumulant(state, [X * Y, X * Y]) == 0


def test_contrast_same_letter_does_not_vanish():
    s = JointState(MomentSeq([1, 3]), MomentSeq([1, 1]))
    assert model.mixed_cumulant(s, [X, X]) == 2
