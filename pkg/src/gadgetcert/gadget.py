"""Post-selection gadgets, their actions and normalized actions.

A j-to-k gadget fixes ``j - k`` ancilla qubits to given bits, runs a circuit and
projects ``j - k`` qubits onto given bits. Its action is the
``2**k x 2**k`` block ``<b|_B Q |a>_A``; inputs and outputs are indexed by the
remaining free qubits in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from .circuit import Circuit, GateSet, apply_to_basis, assemble_unitary
from .errors import DegenerateGadget, InvalidGadget, NotSingleQubit, ZeroRoot
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    det,
    inv2,
    mat_close,
    principal_root,
    sl2_scale,
)


@dataclass(frozen=True)
class Gadget:
    name: str
    circuit: Circuit
    ancilla: Mapping[int, int] = field(default_factory=dict)
    postselect: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        anc = {int(q): int(b) for q, b in dict(self.ancilla).items()}
        post = {int(q): int(b) for q, b in dict(self.postselect).items()}
        object.__setattr__(self, "ancilla", anc)
        object.__setattr__(self, "postselect", post)
        j = self.circuit.qubits
        if len(anc) != len(post):
            raise InvalidGadget(f"{self.name}: {len(anc)} ancillae but {len(post)} post-selections")
        if len(anc) >= j:
            raise InvalidGadget(f"{self.name}: no free qubits left (k must be >= 1)")
        for what, m in (("ancilla", anc), ("postselect", post)):
            for q, b in m.items():
                if not 0 <= q < j:
                    raise InvalidGadget(f"{self.name}: {what} qubit {q} out of range")
                if b not in (0, 1):
                    raise InvalidGadget(f"{self.name}: {what} bit for qubit {q} must be 0 or 1")

    @property
    def j(self) -> int:
        return self.circuit.qubits

    @property
    def k(self) -> int:
        return self.circuit.qubits - len(self.ancilla)

    @property
    def inputs(self) -> list[int]:
        return [q for q in range(self.j) if q not in self.ancilla]

    @property
    def outputs(self) -> list[int]:
        return [q for q in range(self.j) if q not in self.postselect]


@dataclass(frozen=True, eq=False)
class GadgetAction:
    raw: np.ndarray
    det_raw: complex
    normalized: np.ndarray | None

    @property
    def degenerate(self) -> bool:
        return self.normalized is None


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """Labelled 2x2 unit-determinant matrices, in a fixed order."""

    elements: tuple[tuple[str, np.ndarray], ...] = ()
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        elems = tuple((str(lbl), np.asarray(m, dtype=np.complex128)) for lbl, m in self.elements)
        object.__setattr__(self, "elements", elems)
        if not self.provenance:
            object.__setattr__(self, "provenance", tuple(lbl for lbl, _ in elems))
        for lbl, m in elems:
            if m.shape != (2, 2):
                raise NotSingleQubit(f"generator {lbl!r} has shape {m.shape}")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[str, np.ndarray]]) -> "GeneratorSet":
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[tuple[str, np.ndarray]]:
        return iter(self.elements)

    def __getitem__(self, label: str) -> np.ndarray:
        for lbl, m in self.elements:
            if lbl == label:
                return m
        raise KeyError(label)

    @property
    def labels(self) -> list[str]:
        return [lbl for lbl, _ in self.elements]

    @property
    def matrices(self) -> list[np.ndarray]:
        return [m for _, m in self.elements]

    def map(self, fn) -> "GeneratorSet":
        return GeneratorSet(tuple((lbl, fn(m)) for lbl, m in self.elements), self.provenance)

    def unit_det_violations(self, tol: Tolerance = DEFAULT_TOL) -> list[str]:
        return [lbl for lbl, m in self.elements
                if abs(det(m) - 1) > 10 * tol.eq_eps * sl2_scale(m)]


def _bits(value: int, width: int) -> list[int]:
    return [(value >> (width - 1 - t)) & 1 for t in range(width)]


def _full_index(j: int, free: Sequence[int], free_bits: Sequence[int], fixed: Mapping[int, int]) -> int:
    bits = [0] * j
    for q, b in zip(free, free_bits):
        bits[q] = b
    for q, b in fixed.items():
        bits[q] = b
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def project(u: np.ndarray, g: Gadget) -> np.ndarray:
    """Cut the action block ``<b|_B u |a>_A`` out of a full unitary."""
    k = g.k
    rows = [_full_index(g.j, g.outputs, _bits(i, k), g.postselect) for i in range(2 ** k)]
    cols = [_full_index(g.j, g.inputs, _bits(i, k), g.ancilla) for i in range(2 ** k)]
    return u[np.ix_(rows, cols)]


def raw_action_via_basis(g: Gadget, s: GateSet) -> np.ndarray:
    """Same block as ``project(assemble_unitary(...))``, one input column at a time."""
    k = g.k
    rows = [_full_index(g.j, g.outputs, _bits(i, k), g.postselect) for i in range(2 ** k)]
    out = np.zeros((2 ** k, 2 ** k), dtype=np.complex128)
    for c in range(2 ** k):
        bits = [0] * g.j
        for q, b in zip(g.inputs, _bits(c, k)):
            bits[q] = b
        for q, b in g.ancilla.items():
            bits[q] = b
        out[:, c] = apply_to_basis(g.circuit, s, bits)[rows]
    return out


def normalize_action(raw: np.ndarray, k: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    d = det(raw)
    try:
        root = principal_root(d, 2 ** k, tol)
    except ZeroRoot:
        raise DegenerateGadget("<raw>", d) from None
    return raw / root


def compute_action(g: Gadget, s: GateSet, tol: Tolerance = DEFAULT_TOL,
                   unitary: np.ndarray | None = None) -> GadgetAction:
    """Raw and normalized action; degenerate gadgets get ``normalized=None``.

    ``unitary`` may be passed to reuse an already assembled circuit unitary.
    """
    u = assemble_unitary(g.circuit, s) if unitary is None else unitary
    raw = project(u, g)
    d = det(raw)
    if abs(d) <= tol.det_eps:
        return GadgetAction(raw, d, None)
    return GadgetAction(raw, d, raw / principal_root(d, 2 ** g.k, tol))


@dataclass
class InverseClosure:
    closed: bool
    matches: dict[str, tuple[str, int]]
    unmatched: list[str]


def check_inverse_closure(gamma: GeneratorSet, tol: Tolerance = DEFAULT_TOL) -> InverseClosure:
    """For each element find another (or itself) equal to plus or minus its inverse.

    Either sign suffices: if ``h = -w^-1`` then ``w h = -I`` lies in the
    generated group, hence so does ``w^-1 = (w h) h``.
    """
    mats = gamma.matrices
    labels = gamma.labels
    matches: dict[str, tuple[str, int]] = {}
    unmatched = []
    for lbl, w in zip(labels, mats):
        wi = inv2(w)
        found = None
        for sign in (1, -1):
            for lbl2, h in zip(labels, mats):
                ok, _ = mat_close(h, sign * wi, tol)
                if ok:
                    found = (lbl2, sign)
                    break
            if found:
                break
        if found:
            matches[lbl] = found
        else:
            unmatched.append(lbl)
    return InverseClosure(not unmatched, matches, unmatched)


def build_generator_set(gadgets: Sequence[Gadget], s: GateSet, tol: Tolerance = DEFAULT_TOL,
                        labels: Sequence[str] | None = None) -> GeneratorSet:
    """Normalized actions of 1-qubit gadgets; any degenerate gadget is an error."""
    elements = []
    for i, g in enumerate(gadgets):
        if g.k != 1:
            raise NotSingleQubit(f"gadget {g.name!r} acts on {g.k} qubits")
        act = compute_action(g, s, tol)
        if act.degenerate:
            raise DegenerateGadget(g.name, act.det_raw)
        elements.append((labels[i] if labels else g.name, act.normalized))
    return GeneratorSet(tuple(elements), tuple(g.name for g in gadgets))


def identity_gadget(k: int = 1, name: str = "id") -> Gadget:
    return Gadget(name, Circuit(k))


__all__ = [
    "Gadget", "GadgetAction", "GeneratorSet", "InverseClosure",
    "compute_action", "normalize_action", "check_inverse_closure", "build_generator_set",
    "project", "raw_action_via_basis", "identity_gadget",
]
