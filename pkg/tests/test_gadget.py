import numpy as np
import pytest

from gadgetcert import catalog as cat
from gadgetcert.circuit import Circuit, GateSet, circuit
from gadgetcert.errors import DegenerateGadget, InvalidGadget, NotSingleQubit
from gadgetcert.gadget import (
    Gadget, GeneratorSet, build_generator_set, check_inverse_closure, compute_action,
    identity_gadget, normalize_action, raw_action_via_basis,
)
from gadgetcert.linalg import det

S = GateSet("s", (cat.gate("H"), cat.gate("T"), cat.gate("CZ"), cat.gate("X")))


def test_identity_gadget_action():
    g = identity_gadget(1)
    act = compute_action(g, S)
    assert np.allclose(act.normalized, np.eye(2))
    assert np.allclose(compute_action(identity_gadget(2), S).normalized, np.eye(4))


def test_gadget_structure_validation():
    c = Circuit(2)
    with pytest.raises(InvalidGadget):
        Gadget("g", c, {0: 0}, {})
    with pytest.raises(InvalidGadget):
        Gadget("g", c, {0: 0, 1: 0}, {0: 0, 1: 0})
    with pytest.raises(InvalidGadget):
        Gadget("g", c, {0: 2}, {0: 0})
    g = Gadget("g", circuit(3, []), {0: 1}, {2: 0})
    assert g.k == 2 and g.inputs == [1, 2] and g.outputs == [0, 1]


def test_projection_block_and_oracle():
    c = circuit(2, [[("H", [0]), ("H", [1])], [("CZ", [0, 1])], [("T", [1])], [("H", [1])]])
    g = Gadget("g", c, {1: 0}, {1: 0})
    act = compute_action(g, S)
    assert np.allclose(act.raw, raw_action_via_basis(g, S))
    assert abs(det(act.normalized) - 1) < 1e-12


def test_degenerate_and_multi_qubit():
    # X on the ancilla then post-select the old value: zero action
    g = Gadget("z", circuit(2, [[("X", [1])]]), {1: 0}, {1: 0})
    assert compute_action(g, S).degenerate
    with pytest.raises(DegenerateGadget):
        build_generator_set([g], S)
    with pytest.raises(NotSingleQubit):
        build_generator_set([identity_gadget(2)], S)
    with pytest.raises(DegenerateGadget):
        normalize_action(np.zeros((2, 2)), 1)


def test_inverse_closure_signs():
    a = cat.rx(0.4)
    gs = GeneratorSet((("a", a), ("b", -np.linalg.inv(a))))
    res = check_inverse_closure(gs)
    assert res.closed and res.matches["a"] == ("b", -1)
    res = check_inverse_closure(GeneratorSet((("a", a),)))
    assert not res.closed and res.unmatched == ["a"]
    assert check_inverse_closure(GeneratorSet(())).closed


def test_generator_set_access():
    gs = GeneratorSet((("x", np.eye(2)), ("y", -np.eye(2))))
    assert gs.labels == ["x", "y"] and len(gs) == 2
    assert np.allclose(gs["y"], -np.eye(2))
    with pytest.raises(KeyError):
        gs["z"]
    with pytest.raises(NotSingleQubit):
        GeneratorSet((("w", np.eye(4)),))
    assert gs.unit_det_violations() == []
