"""Gates, gate sets and layered circuits.

Qubit 0 is the most significant bit of a basis-state index, so ``|x_0 x_1 ...>``
reads left to right exactly like a ket string. A circuit is a list of moments;
moment ``t`` is applied after moment ``t - 1``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidCircuit, OverlappingTargets, TooManyQubits, UnknownGate
from .linalg import DEFAULT_TOL, Tolerance, as_cmat, identity, is_unitary

MAX_QUBITS = 12


@dataclass(frozen=True, eq=False)
class Gate:
    name: str
    matrix: np.ndarray

    def __post_init__(self):
        m = as_cmat(self.matrix)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if not is_unitary(m, 10 * DEFAULT_TOL.eq_eps * max(1, m.shape[0])):
            raise InvalidCircuit(f"gate {self.name!r} is not unitary")

    @property
    def arity(self) -> int:
        return self.matrix.shape[0].bit_length() - 1


@dataclass(frozen=True, eq=False)
class GateSet:
    name: str
    gates: tuple[Gate, ...]
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        index = {}
        for g in gates:
            if g.name in index:
                raise InvalidCircuit(f"duplicate gate name {g.name!r} in {self.name!r}")
            index[g.name] = g
        object.__setattr__(self, "_index", index)

    def __getitem__(self, name: str) -> Gate:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGate(f"gate {name!r} not in gate set {self.name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.gates]

    def has_entangler(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return any(g.arity >= 2 and is_entangling(g, tol) for g in self.gates)

    def validate(self, tol: Tolerance = DEFAULT_TOL) -> list[str]:
        """Return warnings; a set with no entangling gate is allowed but flagged."""
        notes = []
        if not self.has_entangler(tol):
            notes.append(f"gate set {self.name!r} contains no entangling gate")
        return notes

    def union(self, other: "GateSet", name: str | None = None) -> "GateSet":
        gates = list(self.gates) + [g for g in other.gates if g.name not in self]
        return GateSet(name or self.name, tuple(gates))


@dataclass(frozen=True)
class Placement:
    gate: str
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))


@dataclass(frozen=True)
class Circuit:
    qubits: int
    moments: tuple[tuple[Placement, ...], ...] = ()

    def __post_init__(self):
        moments = tuple(tuple(m) for m in self.moments)
        object.__setattr__(self, "moments", moments)
        if self.qubits < 1:
            raise InvalidCircuit("a circuit needs at least one qubit")

    @property
    def depth(self) -> int:
        return len(self.moments)

    def validate(self, s: GateSet) -> None:
        if self.qubits > MAX_QUBITS:
            raise TooManyQubits(f"{self.qubits} qubits exceeds the limit of {MAX_QUBITS}")
        for t, moment in enumerate(self.moments):
            used: set[int] = set()
            for p in moment:
                gate = s[p.gate]
                if len(p.targets) != gate.arity:
                    raise InvalidCircuit(
                        f"moment {t}: {p.gate} needs {gate.arity} targets, got {len(p.targets)}")
                if len(set(p.targets)) != len(p.targets):
                    raise OverlappingTargets(f"moment {t}: repeated target in {p.targets}")
                for q in p.targets:
                    if not 0 <= q < self.qubits:
                        raise InvalidCircuit(f"moment {t}: target {q} out of range")
                    if q in used:
                        raise OverlappingTargets(f"moment {t}: qubit {q} targeted twice")
                    used.add(q)

    def then(self, other: "Circuit") -> "Circuit":
        if other.qubits != self.qubits:
            raise InvalidCircuit("cannot concatenate circuits of different widths")
        return Circuit(self.qubits, self.moments + other.moments)


def circuit(qubits: int, moments: Iterable[Iterable[tuple[str, Sequence[int]]]]) -> Circuit:
    """Build a circuit from ``[[(gate, targets), ...], ...]``."""
    return Circuit(qubits, tuple(tuple(Placement(g, tuple(t)) for g, t in m) for m in moments))


def _apply_tensor(psi: np.ndarray, gate: np.ndarray, targets: tuple[int, ...], j: int) -> np.ndarray:
    """Apply ``gate`` to the leading ``j`` axes of ``psi`` listed in ``targets``.

    Contracting over the target axes and moving the result back is the index
    permutation that brings the targets together, applies the gate and undoes
    the permutation.
    """
    k = len(targets)
    g = gate.reshape((2,) * (2 * k))
    out = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), list(targets)))
    return np.moveaxis(out, list(range(k)), list(targets))


def assemble_unitary(c: Circuit, s: GateSet) -> np.ndarray:
    c.validate(s)
    j = c.qubits
    dim = 2 ** j
    u = identity(dim).reshape((2,) * j + (dim,))
    for moment in c.moments:
        for p in moment:
            u = _apply_tensor(u, s[p.gate].matrix, p.targets, j)
    return np.ascontiguousarray(u.reshape(dim, dim))


def basis_index(bits: Sequence[int]) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def apply_to_basis(c: Circuit, s: GateSet, x) -> np.ndarray:
    """State ``Q|x>`` computed gate by gate on a vector.

    Uses explicit index arithmetic, independent of the tensor contraction in
    ``assemble_unitary``, so the two paths can check each other.
    """
    c.validate(s)
    j = c.qubits
    bits = [int(ch) for ch in x] if isinstance(x, str) else [int(b) for b in x]
    if len(bits) != j or any(b not in (0, 1) for b in bits):
        raise InvalidCircuit(f"basis label {x!r} does not match {j} qubits")
    dim = 2 ** j
    psi = np.zeros(dim, dtype=np.complex128)
    psi[basis_index(bits)] = 1.0
    idx = np.arange(dim)
    for moment in c.moments:
        for p in moment:
            psi = _apply_indexed(psi, s[p.gate].matrix, p.targets, j, idx)
    return psi


def _apply_indexed(psi, gate, targets, j, idx):
    k = len(targets)
    shifts = [j - 1 - q for q in targets]
    # local index of each basis state on the target qubits, MSB = targets[0]
    local = np.zeros_like(idx)
    for q_shift in shifts:
        local = (local << 1) | ((idx >> q_shift) & 1)
    mask = 0
    for q_shift in shifts:
        mask |= 1 << q_shift
    base = idx & ~mask
    out = np.zeros_like(psi)
    for col in range(2 ** k):
        # basis index obtained by writing local value `col` onto the targets
        src = base.copy()
        for pos, q_shift in enumerate(shifts):
            bit = (col >> (k - 1 - pos)) & 1
            src |= bit << q_shift
        out += gate[local, col] * psi[src]
    return out


def is_entangling(g: Gate, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``g`` is not a tensor product of single-qubit unitaries.

    The operator-Schmidt rank across a cut is the rank of the realigned matrix,
    found from singular values with threshold ``eq_eps``; a product of
    single-qubit gates has rank 1 across every cut.
    """
    k = g.arity
    if k < 2:
        return False
    t = g.matrix.reshape((2,) * (2 * k))
    for mask in range(1, 2 ** (k - 1)):
        left = [q for q in range(k) if mask >> q & 1]
        right = [q for q in range(k) if not mask >> q & 1]
        order = left + [k + q for q in left] + right + [k + q for q in right]
        r = t.transpose(order).reshape(4 ** len(left), 4 ** len(right))
        sv = np.linalg.svd(r, compute_uv=False)
        if np.sum(sv > tol.eq_eps) > 1:
            return True
    return False


def warn_if_no_entangler(s: GateSet, tol: Tolerance = DEFAULT_TOL) -> None:
    for note in s.validate(tol):
        warnings.warn(note, stacklevel=2)
