"""Density test for finitely generated subgroups of SL(2, C).

Three one-sided tests are combined: a pairwise elementarity test (returns NO
when the group is certainly non-elementary), a pairwise discreteness test
built from Jorgensen's inequality and Tan's conditions (returns NO when the
group is certainly non-discrete), and a strict-loxodromy test (returns YES when
some generator has a non-real trace). The group is dense when the answers are
NO, NO, YES.

All comparisons are three-valued. A strict inequality whose value lies within
``warn_band`` of its threshold does not fire and is reported as a warning, so a
rounding error can never produce a DENSE verdict on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DimMismatch, NotInverseClosed, Singular
from .gadget import GeneratorSet, check_inverse_closure
from .linalg import DEFAULT_TOL, Tolerance, det, inv2, mat_close, sl2_scale, trace


class Outcome(str, Enum):
    NO = "NO"
    YES = "YES"
    IDK = "IDK"


DENSE = "DENSE"
INCONCLUSIVE = "INCONCLUSIVE"

# c stands for tr(g h g^-1 h^-1); rule ids carry the line of the discreteness test
RULES = {
    "J4": "pair non-elementary and |tr^2 g - 4| + |c - 2| < 1",
    "T6": "c != 1 and |tr^2 g - 2| + |c - 1| < 1",
    "T8": "c = 1 and tr^2 g != 2 and |tr^2 g - 2| <= 1/2",
    "T10": "tr^2 g != 1 and |tr^2 g - 1| + |c| < 1",
    "T12": "tr^2 g = 1 and |c| <= 1/2 and c != 0",
    "T14": "tr^2 g = 1 and |c - 1| <= 1/2 and c != 1",
    "T16": "c != 1 and |tr^2 g - c| + |c - 1| < 1",
    "T18": "c = 1 and tr^2 g != 1 and |tr^2 g - 1| <= 1/2",
}
DISCRETE_RULES = tuple(RULES)

ELEMENTARY_CLAUSES = {
    "i": "beta(g), beta(h) in [-4, 0] and gamma in [-beta(g) beta(h) / 4, 0]",
    "ii": "gamma = 0",
    "iii-a": "beta(g) = gamma and beta(h) = -4",
    "iii-b": "beta(g) = -4 and beta(h) = gamma",
    "iii-c": "beta(g) = -4 and beta(h) = -4",
}


@dataclass
class Firing:
    witness: tuple[str, ...]
    rule: str
    margin: float
    value: float | complex | None = None


@dataclass
class Verdict:
    outcome: Outcome
    witness: tuple[str, ...] | None = None
    rule: str | None = None
    margin: float | None = None
    value: float | complex | None = None
    warnings: list[str] = field(default_factory=list)
    firings: list[Firing] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "witness": list(self.witness) if self.witness else None,
            "rule": self.rule,
            "rule_text": RULES.get(self.rule) or ELEMENTARY_CLAUSES.get(self.rule or ""),
            "margin": self.margin,
            "value": _num(self.value),
            "warnings": list(self.warnings),
            "firings": [{"witness": list(f.witness), "rule": f.rule, "margin": f.margin,
                         "value": _num(f.value)} for f in self.firings],
        }


@dataclass
class CriterionReport:
    elementary: Verdict
    discrete: Verdict
    loxodromic: Verdict
    overall: str
    stage: str | None = None
    invariants: list[dict] = field(default_factory=list)

    @property
    def dense(self) -> bool:
        return self.overall == DENSE

    def outcomes(self) -> tuple[str, str, str]:
        return (self.elementary.outcome.value, self.discrete.outcome.value,
                self.loxodromic.outcome.value)

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "stage": self.stage,
            "elementary": self.elementary.to_dict(),
            "discrete": self.discrete.to_dict(),
            "loxodromic": self.loxodromic.to_dict(),
            "invariants": self.invariants,
        }


@dataclass
class PairInvariants:
    beta_g: complex
    beta_h: complex
    gamma: complex


def _num(z):
    if z is None:
        return None
    if isinstance(z, complex):
        return [z.real, z.imag]
    return float(z)


def _check2(*mats: np.ndarray) -> None:
    for m in mats:
        if np.shape(m) != (2, 2):
            raise DimMismatch(f"expected a 2x2 matrix, got shape {np.shape(m)}")


def beta(g: np.ndarray) -> complex:
    _check2(g)
    t = trace(g)
    return t * t - 4


def _unit_det(m: np.ndarray, tol: Tolerance) -> bool:
    return abs(det(m) - 1) <= 10 * tol.eq_eps * sl2_scale(m)


def gamma(g: np.ndarray, h: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> complex:
    """tr(g h g^-1 h^-1) - 2.

    For unit-determinant inputs the identity tr[g, h] - 2 = -det(gh - hg) is
    used; it avoids the cancellation of the four-fold product when one factor
    has large entries. Other invertible inputs use explicit 2x2 inverses.
    """
    _check2(g, h)
    for m in (g, h):
        if abs(det(m)) <= tol.det_eps:
            raise Singular("gamma needs invertible matrices")
    if _unit_det(g, tol) and _unit_det(h, tol):
        return -det(g @ h - h @ g)
    return trace(g @ h @ inv2(g) @ inv2(h)) - 2


def commutator_trace(g: np.ndarray, h: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> complex:
    return gamma(g, h, tol) + 2


def pair_invariants(g, h, tol: Tolerance = DEFAULT_TOL) -> PairInvariants:
    return PairInvariants(beta(g), beta(h), gamma(g, h, tol))


def jorgensen_lhs(g: np.ndarray, h: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> float:
    return abs(beta(g)) + abs(gamma(g, h, tol))


# --- three-valued comparisons -------------------------------------------------

def _interval_dist(z: complex, lo: float, hi: float) -> float:
    """Box distance from z to the real segment [lo, hi]."""
    x = z.real
    off = lo - x if x < lo else (x - hi if x > hi else 0.0)
    return max(abs(z.imag), off)


class _Log:
    """Collects near-boundary notes for one decision."""

    def __init__(self, tol: Tolerance, where: str):
        self.tol = tol
        self.where = where
        self.notes: list[str] = []

    def _note(self, what: str, dist: float):
        self.notes.append(f"{self.where}: {what} at distance {dist:.2e} from its boundary")

    def eq(self, z: complex, c: complex, what: str) -> bool:
        d = abs(z - c)
        if self.tol.eq_eps < d <= self.tol.warn_band:
            self._note(what, d)
        return d <= self.tol.eq_eps

    def ne(self, z: complex, c: complex, what: str) -> bool:
        d = abs(z - c)
        if self.tol.eq_eps < d <= self.tol.warn_band:
            self._note(what, d)
            return False
        return d > self.tol.eq_eps

    def lt(self, v: float, t: float, what: str) -> bool:
        if abs(v - t) <= self.tol.warn_band:
            self._note(what, abs(v - t))
            return False
        return v < t

    def le(self, v: float, t: float, what: str) -> bool:
        if abs(v - t) <= self.tol.warn_band:
            self._note(what, abs(v - t))
        return v <= t + self.tol.eq_eps


# --- elementarity ---------------------------------------------------------------

@dataclass
class PairElementarity:
    elementary: bool
    clause: str | None
    margin: float
    invariants: PairInvariants
    warnings: list[str]


def _clause_distances(bg: complex, bh: complex, gm: complex) -> dict[str, float]:
    # for beta values in [-4, 0] the bound is <= 0; otherwise clause (i) fails anyway
    bound = min(-(bg * bh).real / 4, 0.0)
    return {
        "i": max(_interval_dist(bg, -4, 0), _interval_dist(bh, -4, 0),
                 _interval_dist(gm, bound, 0)),
        "ii": abs(gm),
        "iii-a": max(abs(bg - gm), abs(bh + 4)),
        "iii-b": max(abs(bg + 4), abs(bh - gm)),
        "iii-c": max(abs(bg + 4), abs(bh + 4)),
    }


# when several clauses hold, report the most specific one
_CLAUSE_PREFERENCE = ("ii", "iii-a", "iii-b", "iii-c", "i")


def is_elementary_pair(g, h, tol: Tolerance = DEFAULT_TOL,
                       inv: PairInvariants | None = None) -> PairElementarity:
    """Whether one of the elementary-pair clauses holds for (g, h).

    Each clause is measured by how far the invariants are from satisfying it;
    a clause holds when that distance is at most ``eq_eps``. The returned
    margin is the smallest distance, i.e. how far the pair is from being
    declared elementary.
    """
    inv = inv or pair_invariants(g, h, tol)
    dist = _clause_distances(inv.beta_g, inv.beta_h, inv.gamma)
    clause, m = min(dist.items(), key=lambda kv: kv[1])
    held = [k for k in _CLAUSE_PREFERENCE if dist[k] <= tol.eq_eps]
    if held:
        clause = held[0]
    notes = []
    if tol.eq_eps < m <= tol.warn_band:
        notes.append(f"elementary clause ({clause}) missed by {m:.3g}")
    return PairElementarity(m <= tol.eq_eps, clause if m <= tol.eq_eps else None, m, inv, notes)


# --- words ---------------------------------------------------------------------

def expand_words(gamma_set: GeneratorSet, depth: int = 1,
                 tol: Tolerance = DEFAULT_TOL) -> GeneratorSet:
    """Products of up to ``depth`` generators, deduplicated up to sign."""
    if not 1 <= depth <= 4:
        raise ValueError("word depth must be between 1 and 4")
    if depth == 1:
        return gamma_set
    base = list(gamma_set)
    out = list(base)
    frontier = list(base)
    for _ in range(depth - 1):
        nxt = []
        for lbl, m in frontier:
            for lbl2, m2 in base:
                w = m @ m2
                if any(mat_close(w, x, tol)[0] or mat_close(w, -x, tol)[0] for _, x in out):
                    continue
                item = (f"{lbl}*{lbl2}", w)
                out.append(item)
                nxt.append(item)
        frontier = nxt
    return GeneratorSet(tuple(out))


def _ordered_pairs(n: int):
    return ((i, j) for i in range(n) for j in range(n) if i != j)


def is_elementary(gamma_set: GeneratorSet, tol: Tolerance = DEFAULT_TOL, word_depth: int = 1,
                  all_rules: bool = False) -> Verdict:
    gs = expand_words(gamma_set, word_depth, tol)
    labels, mats = gs.labels, gs.matrices
    verdict = Verdict(Outcome.IDK)
    for i, j in _ordered_pairs(len(mats)):
        pe = is_elementary_pair(mats[i], mats[j], tol)
        verdict.warnings += [f"({labels[i]}, {labels[j]}) {w}" for w in pe.warnings]
        if not pe.elementary:
            f = Firing((labels[i], labels[j]), "not-elementary", pe.margin, pe.invariants.gamma)
            verdict.firings.append(f)
            if verdict.outcome is Outcome.IDK:
                verdict.outcome = Outcome.NO
                verdict.witness, verdict.rule = f.witness, f.rule
                verdict.margin, verdict.value = f.margin, f.value
            if not all_rules:
                break
    return verdict


# --- discreteness ----------------------------------------------------------------

def discrete_rule_values(g, h, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
    """The left-hand side of every inequality, for reporting and tests."""
    t2 = trace(g) ** 2
    c = commutator_trace(g, h, tol)
    return {
        "J4": abs(t2 - 4) + abs(c - 2),
        "T6": abs(t2 - 2) + abs(c - 1),
        "T8": abs(t2 - 2),
        "T10": abs(t2 - 1) + abs(c),
        "T12": abs(c),
        "T14": abs(c - 1),
        "T16": abs(t2 - c) + abs(c - 1),
        "T18": abs(t2 - 1),
    }


def discrete_pair(g, h, tol: Tolerance = DEFAULT_TOL, label: str = "",
                  stop_at_first: bool = True) -> tuple[list[tuple[str, float, float]], list[str]]:
    """Evaluate the discreteness rules in order for the ordered pair (g, h).

    Returns the fired rules as ``(rule, margin, value)`` and the warnings.
    """
    t2 = trace(g) ** 2
    c = commutator_trace(g, h, tol)
    v = discrete_rule_values(g, h, tol)
    log = _Log(tol, label)
    fired = []

    def fire(rule, threshold):
        fired.append((rule, threshold - v[rule], v[rule]))
        return stop_at_first

    pe = is_elementary_pair(g, h, tol)
    log.notes += pe.warnings
    if not pe.elementary and log.lt(v["J4"], 1, "J4") and fire("J4", 1):
        return fired, log.notes
    if log.ne(c, 1, "T6 c != 1") and log.lt(v["T6"], 1, "T6") and fire("T6", 1):
        return fired, log.notes
    if (log.eq(c, 1, "T8 c = 1") and log.ne(t2, 2, "T8 tr^2 != 2")
            and log.le(v["T8"], 0.5, "T8") and fire("T8", 0.5)):
        return fired, log.notes
    if log.ne(t2, 1, "T10 tr^2 != 1") and log.lt(v["T10"], 1, "T10") and fire("T10", 1):
        return fired, log.notes
    if (log.eq(t2, 1, "T12 tr^2 = 1") and log.le(v["T12"], 0.5, "T12")
            and log.ne(c, 0, "T12 c != 0") and fire("T12", 0.5)):
        return fired, log.notes
    if (log.eq(t2, 1, "T14 tr^2 = 1") and log.le(v["T14"], 0.5, "T14")
            and log.ne(c, 1, "T14 c != 1") and fire("T14", 0.5)):
        return fired, log.notes
    if log.ne(c, 1, "T16 c != 1") and log.lt(v["T16"], 1, "T16") and fire("T16", 1):
        return fired, log.notes
    if (log.eq(c, 1, "T18 c = 1") and log.ne(t2, 1, "T18 tr^2 != 1")
            and log.le(v["T18"], 0.5, "T18") and fire("T18", 0.5)):
        return fired, log.notes
    return fired, log.notes


def is_discrete(gamma_set: GeneratorSet, tol: Tolerance = DEFAULT_TOL, word_depth: int = 1,
                all_rules: bool = False) -> Verdict:
    gs = expand_words(gamma_set, word_depth, tol)
    labels, mats = gs.labels, gs.matrices
    verdict = Verdict(Outcome.IDK)
    for i, j in _ordered_pairs(len(mats)):
        fired, notes = discrete_pair(mats[i], mats[j], tol, f"({labels[i]}, {labels[j]})",
                                     stop_at_first=not all_rules)
        verdict.warnings += notes
        for rule, margin, value in fired:
            f = Firing((labels[i], labels[j]), rule, margin, value)
            verdict.firings.append(f)
            if verdict.outcome is Outcome.IDK:
                verdict.outcome = Outcome.NO
                verdict.witness, verdict.rule = f.witness, f.rule
                verdict.margin, verdict.value = f.margin, f.value
        if fired and not all_rules:
            break
    return verdict


# --- loxodromy -------------------------------------------------------------------

def is_loxodromic(gamma_set: GeneratorSet, tol: Tolerance = DEFAULT_TOL, word_depth: int = 1,
                  all_rules: bool = False) -> Verdict:
    gs = expand_words(gamma_set, word_depth, tol)
    verdict = Verdict(Outcome.IDK)
    for lbl, m in gs:
        t = trace(m)
        im = abs(t.imag)
        if tol.eq_eps < im <= tol.warn_band:
            verdict.warnings.append(f"({lbl}) |Im tr| = {im:.3g} is near 0")
        if im > tol.eq_eps:
            f = Firing((lbl,), "non-real-trace", im, t)
            verdict.firings.append(f)
            if verdict.outcome is Outcome.IDK:
                verdict.outcome = Outcome.YES
                verdict.witness, verdict.rule = f.witness, f.rule
                verdict.margin, verdict.value = f.margin, f.value
            if not all_rules:
                break
    return verdict


# --- pipeline ---------------------------------------------------------------------

def generator_invariants(gamma_set: GeneratorSet, tol: Tolerance = DEFAULT_TOL) -> list[dict]:
    rows = []
    for lbl, m in gamma_set:
        t = trace(m)
        rows.append({"label": lbl, "trace": [t.real, t.imag],
                     "beta": _num(beta(m)), "det": _num(det(m))})
    return rows


def density_pipeline(gamma_set: GeneratorSet, tol: Tolerance = DEFAULT_TOL, word_depth: int = 1,
                     all_rules: bool = False) -> CriterionReport:
    closure = check_inverse_closure(gamma_set, tol)
    if not closure.closed:
        raise NotInverseClosed(closure.unmatched)
    el = is_elementary(gamma_set, tol, word_depth, all_rules)
    di = is_discrete(gamma_set, tol, word_depth, all_rules)
    lo = is_loxodromic(gamma_set, tol, word_depth, all_rules)
    stage = None
    if el.outcome is not Outcome.NO:
        stage = "elementary"
    elif di.outcome is not Outcome.NO:
        stage = "discrete"
    elif lo.outcome is not Outcome.YES:
        stage = "loxodromic"
    overall = DENSE if stage is None else INCONCLUSIVE
    return CriterionReport(el, di, lo, overall, stage, generator_invariants(gamma_set, tol))


def pair_table(gamma_set: GeneratorSet, tol: Tolerance = DEFAULT_TOL) -> list[dict]:
    """beta/gamma/rule quantities for every ordered pair, for machine reports."""
    rows = []
    labels, mats = gamma_set.labels, gamma_set.matrices
    for i, j in _ordered_pairs(len(mats)):
        inv = pair_invariants(mats[i], mats[j], tol)
        rows.append({"g": labels[i], "h": labels[j], "beta_g": _num(inv.beta_g),
                     "beta_h": _num(inv.beta_h), "gamma": _num(inv.gamma),
                     "rules": discrete_rule_values(mats[i], mats[j], tol)})
    return rows


def sign_flip(gamma_set: GeneratorSet, flips: Sequence[bool]) -> GeneratorSet:
    return GeneratorSet(tuple((lbl, -m if f else m) for (lbl, m), f in zip(gamma_set, flips)),
                        gamma_set.provenance)


def conjugate(gamma_set: GeneratorSet, w: np.ndarray) -> GeneratorSet:
    wi = inv2(w)
    return gamma_set.map(lambda m: w @ m @ wi)


__all__ = [
    "Outcome", "Verdict", "CriterionReport", "PairInvariants", "Firing", "RULES",
    "DENSE", "INCONCLUSIVE", "beta", "gamma", "commutator_trace", "pair_invariants",
    "jorgensen_lhs", "is_elementary_pair", "is_elementary", "is_discrete", "is_loxodromic",
    "density_pipeline", "discrete_rule_values", "discrete_pair", "expand_words",
    "pair_table", "sign_flip", "conjugate",
]
