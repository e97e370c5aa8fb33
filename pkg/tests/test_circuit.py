import numpy as np
import pytest

from gadgetcert import catalog as cat
from gadgetcert.circuit import (
    Circuit, Gate, GateSet, apply_to_basis, assemble_unitary, basis_index, circuit,
    is_entangling,
)
from gadgetcert.errors import InvalidCircuit, OverlappingTargets, TooManyQubits, UnknownGate

from conftest import random_unitary

S = GateSet("t", (cat.gate("H"), cat.gate("T"), cat.gate("CZ"), cat.gate("CNOT"),
                  cat.gate("T4")))


def test_qubit_zero_is_msb():
    x = GateSet("x", (cat.gate("X"),))
    u = assemble_unitary(circuit(2, [[("X", [0])]]), x)
    assert u[basis_index([1, 0]), basis_index([0, 0])] == 1
    assert basis_index([1, 0]) == 2


def test_cnot_orientation_follows_target_order():
    u = assemble_unitary(circuit(2, [[("CNOT", (1, 0))]]), S)
    # control is qubit 1 now: |01> -> |11>
    assert u[basis_index([1, 1]), basis_index([0, 1])] == 1


def test_validation_errors():
    with pytest.raises(UnknownGate):
        assemble_unitary(circuit(1, [[("Q", [0])]]), S)
    with pytest.raises(OverlappingTargets):
        assemble_unitary(circuit(2, [[("H", [0]), ("T", [0])]]), S)
    with pytest.raises(OverlappingTargets):
        assemble_unitary(circuit(2, [[("CZ", [1, 1])]]), S)
    with pytest.raises(InvalidCircuit):
        assemble_unitary(circuit(2, [[("CZ", [0])]]), S)
    with pytest.raises(InvalidCircuit):
        assemble_unitary(circuit(2, [[("H", [2])]]), S)
    with pytest.raises(TooManyQubits):
        Circuit(13).validate(S)
    with pytest.raises(InvalidCircuit):
        Gate("bad", np.array([[1, 1], [0, 1]]))


def test_unitarity_of_assembled(rng):
    names = ["H", "T", "CZ", "CNOT"]
    for _ in range(30):
        moments = []
        for _ in range(5):
            g = names[rng.integers(4)]
            t = list(rng.choice(3, size=2 if g in ("CZ", "CNOT") else 1, replace=False))
            moments.append([(g, t)])
        u = assemble_unitary(circuit(3, moments), S)
        assert np.abs(u.conj().T @ u - np.eye(8)).max() <= 1e-8


def test_depth_and_then():
    a = circuit(2, [[("H", [0])]])
    b = circuit(2, [[("CZ", [0, 1])], [("H", [1])]])
    assert a.then(b).depth == 3
    with pytest.raises(InvalidCircuit):
        a.then(Circuit(3))


def test_apply_to_basis_matches_column():
    c = circuit(4, [[("T4", [0, 1, 2, 3])], [("H", [2]), ("CNOT", [3, 0])]])
    u = assemble_unitary(c, S)
    for x in ["0000", "1011", "0110"]:
        assert np.allclose(apply_to_basis(c, S, x), u[:, basis_index([int(b) for b in x])])


def test_is_entangling():
    assert is_entangling(cat.gate("CZ"))
    assert is_entangling(cat.gate("T4"))
    assert not is_entangling(cat.gate("H"))
    rng = np.random.default_rng(3)
    prod = Gate("prod", np.kron(random_unitary(rng), random_unitary(rng)))
    assert not is_entangling(prod)
    assert S.has_entangler()
    assert GateSet("1q", (cat.gate("H"), cat.gate("T"))).validate()
