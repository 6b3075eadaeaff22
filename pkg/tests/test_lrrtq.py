import itertools

import numpy as np
import pytest

from lrrtq.fuzzy import FisDefinition, FuzzyError, fire_rules, infer
from lrrtq.preset import build_lrrtq, sample_surface

from oracles import centroid, discrete_centroid, trap


def test_preset_shape():
    fis = build_lrrtq()
    assert [v.name for v in fis.inputs] == ["LNOP", "LABT"]
    assert fis.output.name == "LOTmQm"
    assert (fis.input("LNOP").lo, fis.input("LNOP").hi) == (1, 10)
    assert (fis.input("LABT").lo, fis.input("LABT").hi) == (1, 12)
    assert (fis.output.lo, fis.output.hi) == (1, 5)
    assert all(len(v.terms) == 3 for v in (*fis.inputs, fis.output))
    assert len(fis.rules) == 9
    combos = [tuple(t for _, t in r.antecedents) for r in fis.rules]
    assert sorted(combos) == sorted(itertools.product(["fewer", "ordinary", "more"], ["small", "average", "large"]))
    assert all(r.weight == 1 for r in fis.rules)


def test_rule_nine():
    r = build_lrrtq().rules[8]
    assert r.antecedents == (("LNOP", "more"), ("LABT", "large"))
    assert r.consequent == ("LOTmQm", "medium")


def test_table_parameters():
    fis = build_lrrtq()
    assert fis.input("LNOP").term("fewer").breakpoints == (-2, 0.5, 1.5, 4)
    assert fis.input("LABT").term("large").breakpoints == (7.5, 10, 11, 13.5)
    assert fis.output.term("medium").breakpoints == (1.5, 2.2, 2.8, 3.8)


def test_build_is_idempotent():
    assert build_lrrtq() == build_lrrtq()


def test_single_rule_reduction_fewer_large():
    fis = build_lrrtq()
    fired = fire_rules(fis, {"LNOP": 1, "LABT": 10.5})
    assert [i for i, (_, a) in enumerate(fired) if a > 0] == [2]
    large = lambda u: trap(u, 3.5, 4.5, 5, 6)
    got = infer(fis, {"LNOP": 1, "LABT": 10.5})
    # closed form over [1, 5]: (0.5 * (3.5 + 2/3) + 0.5 * 4.75) / 1 = 4.458333
    assert centroid(large, 1, 5, [3.5, 4.5]) == pytest.approx(4.458333333, abs=1e-9)
    assert got == pytest.approx(4.458333333, abs=4 / 1000)
    assert got == pytest.approx(discrete_centroid(large, 1, 5, 1001), abs=1e-9)


def test_surface_corners():
    grid = sample_surface(build_lrrtq(), 2, 2)
    assert grid.nop_axis.tolist() == [1, 10]
    assert grid.abt_axis.tolist() == [1, 12]
    assert np.all((grid.values >= 1) & (grid.values <= 5))


def test_surface_hits_paper_points():
    # axes 1..10 step 1 and 1..12 step 1 contain (4, 6) and (3, 8)
    fis = build_lrrtq()
    grid = sample_surface(fis, 10, 12)
    assert grid.values[3, 5] == infer(fis, {"LNOP": 4, "LABT": 6})
    assert grid.values[3, 5] == pytest.approx(2.61, abs=0.05)
    assert grid.values[2, 7] == pytest.approx(3.06, abs=0.05)


def test_surface_is_deterministic():
    fis = build_lrrtq()
    a, b = sample_surface(fis, 7, 9), sample_surface(fis, 7, 9)
    assert np.array_equal(a.values, b.values)


def test_surface_needs_two_inputs():
    fis = build_lrrtq()
    one = FisDefinition(fis.inputs[:1], fis.output, ())
    with pytest.raises(FuzzyError):
        sample_surface(one, 3, 3)
    with pytest.raises(FuzzyError):
        sample_surface(fis, 1, 3)
