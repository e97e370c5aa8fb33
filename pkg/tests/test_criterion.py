import cmath
import math

import numpy as np
import pytest

from gadgetcert.catalog import named_generator_set
from gadgetcert.criterion import (
    DENSE, DISCRETE_RULES, INCONCLUSIVE, Outcome, beta, commutator_trace, density_pipeline,
    discrete_pair, expand_words, gamma, is_discrete, is_elementary, is_elementary_pair,
    is_loxodromic, jorgensen_lhs,
)
from gadgetcert.errors import DimMismatch, NotInverseClosed, Singular
from gadgetcert.gadget import GeneratorSet
from gadgetcert.linalg import Tolerance, trace
from gadgetcert import reference as ref

I2 = np.eye(2, dtype=complex)


def synthetic_pair(t2, c, b=0.7):
    """Unit-determinant (g, h) with tr(g)^2 = t2 and tr[g, h] = c."""
    a = cmath.sqrt(t2)
    # tr[g, h] = tr(g)^2 + tr(h)^2 + tr(gh)^2 - tr(g) tr(h) tr(gh) - 2
    t = (a * b + cmath.sqrt((a * b) ** 2 - 4 * (a * a + b * b - 2 - c))) / 2
    s = (-t + cmath.sqrt(t * t - 4)) / 2
    g = np.array([[a, 1], [-1, 0]], dtype=complex)
    h = np.array([[0, s], [-1 / s, b]], dtype=complex)
    return g, h


SYNTHETIC = {
    "J4": (4.2, 2.3 + 0.1j),
    "T6": (2, 1.5),
    "T8": (2.3, 1),
    "T10": (1.3, 0.5),
    "T12": (1, 0.4),
    "T14": (1, 1.4),
    "T16": (1.5 + 0.4j, 1.5 + 0.4j),
    "T18": (1.4, 1),
}


def test_every_rule_has_a_synthetic_case():
    assert set(SYNTHETIC) == set(DISCRETE_RULES)


@pytest.mark.parametrize("rule", list(SYNTHETIC))
def test_synthetic_pair_fires_rule_first(rule):
    t2, c = SYNTHETIC[rule]
    g, h = synthetic_pair(t2, c)
    assert abs(np.linalg.det(g) - 1) < 1e-12 and abs(np.linalg.det(h) - 1) < 1e-12
    assert abs(trace(g) ** 2 - t2) < 1e-12
    assert abs(commutator_trace(g, h) - c) < 1e-12
    fired, notes = discrete_pair(g, h)
    assert fired[0][0] == rule
    assert notes == []
    v = is_discrete(GeneratorSet((("g", g), ("h", h))))
    assert v.outcome is Outcome.NO and v.rule == rule and v.witness == ("g", "h")


def test_beta_examples():
    assert beta(I2) == 0
    assert beta(ref.c0(2 * math.pi / 3)) == pytest.approx(28 / 9, abs=1e-9)
    with pytest.raises(DimMismatch):
        beta(np.eye(4))


def test_gamma_examples():
    g = ref.E
    assert gamma(g, g) == pytest.approx(0, abs=1e-12)
    assert gamma(ref.E, ref.F) == pytest.approx(0.25, abs=1e-9)
    with pytest.raises(Singular):
        gamma(np.zeros((2, 2)), I2)


def test_gamma_non_unit_det_path():
    g = np.array([[2, 1], [0, 3]], dtype=complex)
    h = np.array([[1, 0], [4, 5]], dtype=complex)
    direct = trace(g @ h @ np.linalg.inv(g) @ np.linalg.inv(h)) - 2
    assert gamma(g, h) == pytest.approx(direct)


def test_elementary_pair_examples():
    pe = is_elementary_pair(I2, I2)
    assert pe.elementary and pe.clause == "ii"
    assert not is_elementary_pair(ref.E, ref.F).elementary
    # an elliptic pair sharing an axis is elementary
    r = np.diag([cmath.exp(0.3j), cmath.exp(-0.3j)])
    assert is_elementary_pair(r, r @ r).elementary


def test_elementary_near_boundary_warns():
    # gamma = 1e-7 i: within warn_band of clause (ii), so not elementary but reported
    g, h = synthetic_pair(2, 2 + 1e-7j)
    pe = is_elementary_pair(g, h)
    assert not pe.elementary
    assert pe.margin == pytest.approx(1e-7, rel=1e-3)
    assert pe.warnings


def test_jorgensen_examples():
    assert jorgensen_lhs(I2, I2) == 0
    assert jorgensen_lhs(ref.F, ref.E) == pytest.approx(0.75, abs=1e-9)


def test_is_elementary_trivial_and_iqp():
    assert is_elementary(GeneratorSet((("I", I2),))).outcome is Outcome.IDK
    v = is_elementary(named_generator_set("IQP"))
    assert v.outcome is Outcome.NO and v.witness == ("B", "C")


def test_t4p_elementary_witness():
    v = is_elementary(named_generator_set("T4P"))
    assert v.witness == ("H", "I")


def test_discrete_examples():
    ccc = is_discrete(named_generator_set("CCC"))
    assert (ccc.rule, ccc.witness) == ("J4", ("F", "E"))
    assert ccc.margin == pytest.approx(0.25, abs=1e-9)
    iqp = is_discrete(named_generator_set("IQP"))
    assert (iqp.rule, iqp.witness) == ("T16", ("B", "A"))
    assert iqp.value == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    t4p = is_discrete(named_generator_set("T4P"))
    assert (t4p.rule, t4p.witness) == ("T6", ("H", "I"))
    assert t4p.value == pytest.approx(math.sqrt(409) / 25, abs=1e-9)


def test_loxodromic_examples():
    v = is_loxodromic(named_generator_set("IQP"))
    assert v.witness == ("C",)
    assert v.value == pytest.approx(cmath.sqrt(2 + 2j), abs=1e-9)
    v = is_loxodromic(named_generator_set("CCC"))
    assert v.witness == ("D",) and v.value == pytest.approx(-1j / math.sqrt(2), abs=1e-9)
    real = GeneratorSet((("a", np.array([[2, 1], [1, 1]], dtype=complex)),))
    assert is_loxodromic(real).outcome is Outcome.IDK


def test_pipeline_examples():
    assert density_pipeline(named_generator_set("IQP")).overall == DENSE
    assert density_pipeline(named_generator_set("CZZ_A", 2 * math.pi / 3)).overall == DENSE
    rep = density_pipeline(GeneratorSet((("I", I2), ("-I", -I2))))
    assert rep.overall == INCONCLUSIVE and rep.stage == "elementary"
    with pytest.raises(NotInverseClosed):
        density_pipeline(GeneratorSet((("a", ref.E),)))


def test_overall_matches_stage_outcomes():
    for case in ("IQP", "CCC", "T4P"):
        rep = density_pipeline(named_generator_set(case))
        assert rep.dense == (rep.outcomes() == ("NO", "NO", "YES"))
        for v in (rep.elementary, rep.discrete, rep.loxodromic):
            if v.outcome is not Outcome.IDK:
                assert v.witness and v.rule


def test_strict_inequality_on_boundary_does_not_fire():
    # T6 quantity exactly at 1 (within warn_band): must not fire, must warn
    g, h = synthetic_pair(2, 2.0 + 1e-8)
    fired, notes = discrete_pair(g, h, stop_at_first=False)
    assert "T6" not in [r for r, _, _ in fired]
    assert any("T6" in n for n in notes)


def test_all_rules_flag_accumulates():
    gs = named_generator_set("IQP")
    v = is_discrete(gs, all_rules=True)
    assert v.rule == "T16"
    assert len(v.firings) > 1


def test_word_depth():
    gs = named_generator_set("CCC")
    assert len(expand_words(gs, 2)) > len(gs)
    with pytest.raises(ValueError):
        expand_words(gs, 5)
    assert density_pipeline(gs, word_depth=2).dense


def test_tolerance_is_respected():
    loose = Tolerance(eq_eps=1e-3, det_eps=1e-12, warn_band=1e-2)
    g, h = synthetic_pair(2, 1.995)
    fired, notes = discrete_pair(g, h, loose)
    assert notes
