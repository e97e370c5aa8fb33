"""Randomized invariants, each over at least 200 seeded cases.

The ``check_*`` functions return a list of failure descriptions so the
acceptance suite can reuse them.
"""

import math

import numpy as np

from gadgetcert import catalog as cat
from gadgetcert.circuit import Circuit, GateSet, Placement, assemble_unitary
from gadgetcert.classify import CLIFFORDS
from gadgetcert.criterion import conjugate, density_pipeline, gamma, sign_flip
from gadgetcert.gadget import Gadget, GeneratorSet, compute_action, project, raw_action_via_basis
from gadgetcert.linalg import DEFAULT_TOL, principal_root, sl2_scale

from conftest import random_sl2

SEED = 1729
N = 200


def catalog_sets(rng, n):
    """n generator sets cycling through the named catalog sets and random CZ+Z angles."""
    fixed = {c: cat.named_generator_set(c) for c in ("IQP", "CCC", "T4P")}
    out = []
    for i in range(n):
        k = i % 4
        if k < 3:
            out.append(fixed[("IQP", "CCC", "T4P")[k]])
            continue
        while True:
            t = rng.uniform(0.05, 2 * math.pi - 0.05)
            if min(abs(math.remainder(t, math.pi / 2)), abs(t - 0.8), abs(t - 2.2)) > 0.05:
                break
        out.append(cat.named_generator_set(f"CZZ_{cat.czz_interval(t)}", t))
    return out


def _signature(rep):
    return [(v.outcome, v.witness, v.rule) for v in (rep.elementary, rep.discrete, rep.loxodromic)]


def check_sign_flip(n=N, seed=SEED):
    rng = np.random.default_rng(seed)
    bad = []
    for i, gs in enumerate(catalog_sets(rng, n)):
        flips = rng.integers(0, 2, len(gs)).astype(bool)
        a, b = density_pipeline(gs), density_pipeline(sign_flip(gs, flips))
        if _signature(a) != _signature(b) or a.overall != b.overall:
            bad.append(f"case {i}: {_signature(a)} vs {_signature(b)}")
    return bad


def check_conjugation(n=N, seed=SEED, margin_tol=1e-6):
    rng = np.random.default_rng(seed)
    bad = []
    for i, gs in enumerate(catalog_sets(rng, n)):
        while True:
            w = random_sl2(rng)
            if np.linalg.cond(w) < 1e3:
                break
        a, b = density_pipeline(gs), density_pipeline(conjugate(gs, w))
        if _signature(a) != _signature(b):
            bad.append(f"case {i}: {_signature(a)} vs {_signature(b)}")
            continue
        for va, vb in zip((a.elementary, a.discrete, a.loxodromic),
                          (b.elementary, b.discrete, b.loxodromic)):
            if va.margin is not None and abs(va.margin - vb.margin) > margin_tol:
                bad.append(f"case {i}: margin {va.margin} vs {vb.margin}")
    return bad


def check_gamma_symmetry(n=N, seed=SEED):
    rng = np.random.default_rng(seed)
    bad = []
    for i in range(n):
        g, h = random_sl2(rng), random_sl2(rng)
        d = abs(gamma(g, h) - gamma(h, g))
        if d > 100 * DEFAULT_TOL.eq_eps:
            bad.append(f"case {i}: {d:.3g}")
    return bad


_GATES = GateSet("mixed", (cat.gate("H"), cat.gate("T"), cat.gate("S"), cat.gate("CZ"),
                           cat.gate("CNOT"), cat.gate("C", ("X", "Y")), cat.gate("T4"),
                           cat.gate("Rx", 0.37)))


def random_gadget(rng, name="g"):
    j = int(rng.integers(1, 5))
    moments = []
    for _ in range(int(rng.integers(0, 6))):
        free = list(rng.permutation(j))
        moment = []
        for gate in rng.permutation(_GATES.gates):
            if gate.arity <= len(free) and rng.random() < 0.5:
                moment.append(Placement(gate.name, tuple(int(q) for q in free[:gate.arity])))
                free = free[gate.arity:]
        if moment:
            moments.append(tuple(moment))
    anc_q = [int(q) for q in rng.permutation(j)[: j - 1]]
    post_q = [int(q) for q in rng.permutation(j)[: j - 1]]
    anc = {q: int(rng.integers(2)) for q in anc_q}
    post = {q: int(rng.integers(2)) for q in post_q}
    return Gadget(name, Circuit(j, tuple(moments)), anc, post)


def check_path_equivalence(n=N, seed=SEED):
    rng = np.random.default_rng(seed)
    bad = []
    for i in range(n):
        g = random_gadget(rng)
        a = project(assemble_unitary(g.circuit, _GATES), g)
        b = raw_action_via_basis(g, _GATES)
        d = float(np.max(np.abs(a - b)))
        if d > 100 * DEFAULT_TOL.eq_eps:
            bad.append(f"case {i}: {d:.3g}")
    return bad


def check_unit_det(n=N, seed=SEED):
    rng = np.random.default_rng(seed)
    bad = []
    done = 0
    while done < n:
        act = compute_action(random_gadget(rng), _GATES)
        if act.normalized is None:
            continue
        done += 1
        d = abs(np.linalg.det(act.normalized) - 1)
        if d > 10 * DEFAULT_TOL.eq_eps * max(1.0, sl2_scale(act.normalized)):
            bad.append(f"case {done}: {d:.3g}")
    return bad


def clifford_sets(n=100, seed=SEED):
    """Inverse-closed sets drawn from the unit-determinant Clifford image."""
    rng = np.random.default_rng(seed)
    cl = [(w, m / principal_root(np.linalg.det(m), 2)) for w, m in CLIFFORDS]
    out = []
    for _ in range(n):
        pick = rng.choice(len(cl), size=int(rng.integers(2, 7)), replace=False)
        items = []
        for k in pick:
            w, m = cl[k]
            sign = -1 if rng.random() < 0.5 else 1
            items.append((w, sign * m))
            items.append((f"{w}^-1", np.linalg.inv(m)))
        out.append(GeneratorSet(tuple(items)))
    return out


def check_clifford_never_dense(n=100, seed=SEED):
    return [f"set {i}" for i, gs in enumerate(clifford_sets(n, seed))
            if density_pipeline(gs).dense]


def test_sign_flip_invariance():
    assert check_sign_flip() == []


def test_conjugation_invariance():
    assert check_conjugation() == []


def test_gamma_symmetry():
    assert check_gamma_symmetry() == []


def test_path_equivalence():
    assert check_path_equivalence() == []


def test_normalized_unit_determinant():
    assert check_unit_det() == []


def test_clifford_soundness():
    assert check_clifford_never_dense() == []


def test_clifford_discrete_never_fires():
    from gadgetcert.criterion import Outcome, is_discrete
    for gs in clifford_sets(50, SEED + 1):
        assert is_discrete(gs).outcome is Outcome.IDK
