from __future__ import annotations

import pytest

from foldesk.interpolation import (
    InterpolationConfig, InterpolationFailed, InterpolationTask, UnsupportedShape,
    ground_ipol, interpolate, interpolate_full, lift_interpolant, reduce_so_entailment,
    symmetric_interpolate,
)
from foldesk.prover import ProverLimits, equivalent
from foldesk.syntax import conj, parse_formula

from oracles import fo_entails, polarities, signature, tt_entails
from suites import check_interpolant, interpolation_suite


def test_constructed_entailments_sample():
    n, computed, failures = interpolation_suite(seed=31, counts=(20, 20, 10, 10, 10))
    assert computed == n == 70
    assert failures == []


def test_worked_example():
    F = parse_formula("all(x, p(a, x)), q")
    G = parse_formula("ex(x, p(x, b)) ; r")
    res = interpolate_full(F, G)
    assert check_interpolant(F, G, "fo", res) == []
    assert equivalent(res.interpolant, parse_formula("ex(x, all(y, p(x, y)))"))


def test_task_object_and_shape_option():
    task = InterpolationTask(parse_formula("p, q"), parse_formula("q ; r"),
                             InterpolationConfig(shape="c6"))
    H = interpolate(task)
    assert tt_entails(parse_formula("p, q"), H) and tt_entails(H, parse_formula("q ; r"))
    assert set(signature(H)[0]) <= {"q"}


def test_equality_interpolant():
    F = parse_formula("a = b, p(a)")
    G = parse_formula("p(b) ; r")
    res = interpolate_full(F, G)
    assert check_interpolant(F, G, "fo", res) == []


def test_lyndon_polarity_is_respected():
    F = parse_formula("(p -> q), ~q")
    G = parse_formula("~p ; r")
    H = interpolate(F, G)
    assert polarities(H).get("p", {-1}) == {-1}


def test_second_order_prefixes_are_reduced():
    F = parse_formula("ex2(p, (p(a), all(x, (p(x) -> q(x)))))")
    G = parse_formula("ex(x, q(x))")
    H = interpolate(F, G)
    assert "p" not in signature(H)[0]
    assert fo_entails(H, G) and equivalent(H, parse_formula("ex(x, q(x))"))
    F1, G1 = reduce_so_entailment(F, G)
    # the bound predicate survives only under a fresh name
    (renamed,) = set(signature(F1)[0]) - {"q"}
    assert renamed != "p" and G1 == G


def test_wrong_second_order_polarity_is_rejected():
    with pytest.raises(UnsupportedShape):
        interpolate(parse_formula("all2(p, p(a))"), parse_formula("q ; ~q"))


def test_non_entailment_fails_cleanly():
    cfg = InterpolationConfig(limits=ProverLimits(max_depth=4, time_limit=2.0))
    with pytest.raises(InterpolationFailed):
        interpolate(parse_formula("p"), parse_formula("q"), cfg)


def test_symmetric_interpolation():
    Fs = [parse_formula("p, (p -> q)"), parse_formula("q -> r")]
    G = parse_formula("r ; s")
    Hs = symmetric_interpolate(Fs, G)
    assert len(Hs) == 2
    for Fi, Hi in zip(Fs, Hs):
        assert tt_entails(Fi, Hi)
    assert tt_entails(conj(Hs), G)


def test_ground_extraction_and_lifting_directly():
    F = parse_formula("p(c)")
    G = parse_formula("ex(x, p(x))")
    res = interpolate_full(F, G)
    assert ground_ipol(res.ground_tableau) == res.ground
    lifted = lift_interpolant(res.ground, {"p", "c"}, {"p"})
    assert equivalent(lifted, parse_formula("ex(x, p(x))"))
