"""Gates, gate sets and gadget tables for the circuit families studied here.

Gadget tables are transcribed wire for wire: conjugated families carry an
explicit ``U`` layer on every wire before the interstitial Clifford layers and
a ``U^dagger`` layer after them. Each table comes with the gate set its
circuits refer to (``table_gate_set``), which contains the family's own gate
set as a subset.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .circuit import Circuit, Gate, GateSet, Placement
from .errors import BadParam, DegenerateGadget, NoTable, ThetaOutOfInterval, UnknownGate
from .gadget import Gadget, GeneratorSet, build_generator_set, compute_action
from .linalg import DEFAULT_TOL, Tolerance, dagger

SQ2 = math.sqrt(2)
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / SQ2
S = np.diag([1, 1j]).astype(complex)
T = np.diag([1, np.exp(1j * math.pi / 4)])
CZ = np.diag([1, 1, 1, -1]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
PAULI = {"X": X, "Y": Y, "Z": Z}


def kron(*ms: np.ndarray) -> np.ndarray:
    return reduce(np.kron, ms)


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def euler_unitary(alpha: float, phi: float, theta: float, lam: float) -> np.ndarray:
    """e^{i alpha} Rz(phi) Rx(theta) Rz(lam)."""
    return np.exp(1j * alpha) * rz(phi) @ rx(theta) @ rz(lam)


def generalized_cnot(p: str, q: str) -> np.ndarray:
    """C(P, Q) = (I.I + P.I + I.Q - P.Q) / 2."""
    a, b = PAULI[p], PAULI[q]
    return (kron(I2, I2) + kron(a, I2) + kron(I2, b) - kron(a, b)) / 2


def rotation_pi_half(p: str) -> np.ndarray:
    """R_X = (I - iX)/sqrt 2, R_Y = (I - iY)/sqrt 2, R_Z = S."""
    if p == "Z":
        return S.copy()
    return (I2 - 1j * PAULI[p]) / SQ2


def theta_gate(p: str, q: str, sign: str = "+") -> np.ndarray:
    """(P + Q)/sqrt 2 or (P - Q)/sqrt 2; theta_{X+Z} is H."""
    s = 1 if sign == "+" else -1
    return (PAULI[p] + s * PAULI[q]) / SQ2


def parity_flip(two_k: int) -> np.ndarray:
    """T_{2k}: complement every bit when the input parity is odd."""
    if two_k < 2 or two_k % 2:
        raise BadParam("T_{2k} needs an even number of qubits >= 2")
    dim = 2 ** two_k
    m = np.zeros((dim, dim), dtype=complex)
    full = dim - 1
    for x in range(dim):
        y = x ^ full if bin(x).count("1") % 2 else x
        m[y, x] = 1
    return m


def _pauli_arg(p) -> str:
    p = str(p).upper()
    if p not in PAULI:
        raise BadParam(f"expected a Pauli letter X/Y/Z, got {p!r}")
    return p


def gate(name: str, params=()) -> Gate:
    """Construct a named gate. Parametrized gates take ``params`` as a tuple."""
    params = tuple(params) if isinstance(params, (tuple, list)) else (params,)
    fixed = {"I": I2, "H": H, "T": T, "S": S, "X": X, "Y": Y, "Z": Z, "CZ": CZ, "CNOT": CNOT}
    if name in fixed:
        return Gate(name, fixed[name])
    try:
        if name in ("Rx", "Rz"):
            (theta,) = params
            fn = rx if name == "Rx" else rz
            return Gate(f"{name}({float(theta):.12g})", fn(float(theta)))
        if name in ("RX", "RY", "RZ", "R_X", "R_Y", "R_Z"):
            return Gate(name.replace("_", ""), rotation_pi_half(name[-1]))
        if name == "thetaPQ":
            p, q = _pauli_arg(params[0]), _pauli_arg(params[1])
            sign = params[2] if len(params) > 2 else "+"
            if sign not in "+-" or p == q:
                raise BadParam(f"bad theta gate parameters {params}")
            return Gate(f"theta_{p}{sign}{q}", theta_gate(p, q, sign))
        if name == "C":
            p, q = _pauli_arg(params[0]), _pauli_arg(params[1])
            return Gate(f"C({p},{q})", generalized_cnot(p, q))
        m = re.fullmatch(r"T(\d+)", name)
        if m and int(m.group(1)) >= 2:
            return Gate(name, parity_flip(int(m.group(1))))
    except (ValueError, TypeError) as e:
        raise BadParam(f"bad parameters {params!r} for gate {name!r}: {e}") from None
    raise UnknownGate(f"unknown gate {name!r}")


def conjugated(name: str, m: np.ndarray, u: np.ndarray) -> Gate:
    """(U^dagger)^{(x)k} M U^{(x)k} as a gate called ``name``."""
    k = m.shape[0].bit_length() - 1
    uk = kron(*([u] * k))
    return Gate(name, dagger(uk) @ m @ uk)


# --- families ---------------------------------------------------------------------

FAMILIES = ("IQP", "CCC", "CZ", "CZ_Z", "CZ_S", "FRAGMENT")
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class FamilySpec:
    family: str
    fragment: str | None = None
    u_params: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        fam = self.family.upper().replace("+", "_")
        if fam not in FAMILIES:
            raise BadParam(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if (fam == "FRAGMENT") != (self.fragment is not None):
            raise BadParam("a fragment name is required exactly for the FRAGMENT family")
        if len(self.u_params) != 4:
            raise BadParam("u_params must be (alpha, phi, theta, lambda)")
        object.__setattr__(self, "u_params", tuple(float(a) % TWO_PI for a in self.u_params))
        if self.fragment is not None:
            parse_fragment(self.fragment)

    @classmethod
    def rx(cls, family: str, theta: float, fragment: str | None = None) -> "FamilySpec":
        return cls(family, fragment, (0.0, 0.0, theta, 0.0))

    def unitary(self) -> np.ndarray:
        return euler_unitary(*self.u_params)


def parse_fragment(name: str) -> tuple[str, str | None, str | None]:
    """Split a fragment name into (kind, Pauli letter, extra).

    ``"T4+P"`` is T4 with the Pauli group. ``"C(X,X)"``, ``"C(X,X)+X"`` and
    ``"C(X,X)+R_X"`` are the generalized-CNOT fragments; in ``"C(X,X)+P"`` the
    letter P stands for the same Pauli as the CNOT.
    """
    s = name.replace(" ", "")
    if s.upper() == "T4+P":
        return "T4+P", None, None
    m = re.fullmatch(r"C\(([XYZ]),([XYZ])\)(?:\+(R_?[XYZP]|[XYZP]))?", s)
    if not m or m.group(1) != m.group(2):
        raise BadParam(f"unsupported fragment {name!r}")
    p, extra = m.group(1), m.group(3)
    if extra is None:
        return "C(P,P)", p, None
    letter = extra[-1]
    if letter not in ("P", p):
        raise BadParam(f"fragment {name!r} mixes Pauli letters")
    return ("C(P,P)+R_P", p, "R") if extra.startswith("R") else ("C(P,P)+P", p, "P")


def gate_set(spec: FamilySpec) -> GateSet:
    u = spec.unitary()
    fam = spec.family
    if fam == "IQP":
        hh = kron(H, H)
        return GateSet("IQP", (Gate("HTH", H @ T @ H), Gate("HCZH", hh @ CZ @ hh)))
    if fam == "CCC":
        return GateSet("CCC", (conjugated("H_U", H, u), conjugated("S_U", S, u),
                               conjugated("CZ_U", CZ, u)))
    if fam == "CZ":
        return GateSet("CZ", (conjugated("CZ_U", CZ, u),))
    if fam == "CZ_Z":
        return GateSet("CZ+Z", (conjugated("Z_U", Z, u), conjugated("CZ_U", CZ, u)))
    if fam == "CZ_S":
        return GateSet("CZ+S", (conjugated("S_U", S, u), conjugated("CZ_U", CZ, u)))
    kind, p, _ = parse_fragment(spec.fragment)
    if kind == "T4+P":
        gates = [conjugated("T4_U", parity_flip(4), u)]
        gates += [conjugated(f"{q}_U", PAULI[q], u) for q in "XYZ"]
        return GateSet("T4+P", tuple(gates))
    gates = [conjugated(f"C({p},{p})_U", generalized_cnot(p, p), u)]
    if kind == "C(P,P)+P":
        gates.append(conjugated(f"{p}_U", PAULI[p], u))
    elif kind == "C(P,P)+R_P":
        gates.append(conjugated(f"R{p}_U", rotation_pi_half(p), u))
    return GateSet(spec.fragment, tuple(gates))


# --- gadget tables -------------------------------------------------------------------

def _moments(spec):
    return tuple(tuple(Placement(g, tuple(t)) for g, t in m) for m in spec)


def _conj_circuit(n: int, middle) -> Circuit:
    first = [("U", (q,)) for q in range(n)]
    last = [("Udg", (q,)) for q in range(n)]
    return Circuit(n, _moments([first, *middle, last]))


def _g(name, circ, anc, post) -> Gadget:
    return Gadget(name, circ, anc, post)


def _iqp_table() -> list[Gadget]:
    hh = [("H", (0,)), ("H", (1,))]
    cz = [("CZ", (0, 1))]
    c1 = lambda ms: Circuit(1, _moments(ms))  # noqa: E731
    c2 = lambda ms: Circuit(2, _moments(ms))  # noqa: E731
    return [
        _g("a", c1([[("H", (0,))], [("T", (0,))], [("H", (0,))]]), {}, {}),
        _g("b", c2([hh, [("T", (0,)), ("T^4", (1,))], cz, hh]), {1: 0}, {0: 0}),
        _g("c", c2([hh, [("T", (1,))], cz, hh]), {1: 0}, {1: 0}),
        _g("a^-1", c1([[("H", (0,))], [("T^7", (0,))], [("H", (0,))]]), {}, {}),
        _g("b^-1", c2([hh, cz, [("T^4", (0,)), ("T^7", (1,))], hh]), {1: 0}, {0: 0}),
        _g("c^-1", c2([hh, cz, [("T^4", (0,)), ("T^3", (1,))], hh]), {1: 0}, {1: 0}),
    ]


def _ccc_table() -> list[Gadget]:
    z1 = [("Z", (1,))]
    z0 = [("Z", (0,))]
    cz = [("CZ", (0, 1))]
    return [
        _g("d", _conj_circuit(2, [z1, cz]), {1: 0}, {1: 0}),
        _g("e", _conj_circuit(2, [z1, cz]), {1: 0}, {0: 0}),
        _g("f", _conj_circuit(2, [z0, cz]), {1: 0}, {1: 0}),
        _g("d^-1", _conj_circuit(2, [z0, cz]), {1: 1}, {1: 1}),
        _g("e^-1", _conj_circuit(2, [z1, cz]), {1: 1}, {0: 1}),
        _g("f^-1", _conj_circuit(2, [z1, cz]), {1: 1}, {1: 1}),
    ]


def _czz_table() -> list[Gadget]:
    cz01, cz12 = ("CZ", (0, 1)), ("CZ", (1, 2))
    c01 = [[cz01, ("Z", (2,))], [("Z", (0,)), cz12]]
    z0, z1 = [("Z", (0,))], [("Z", (1,))]
    cz = [("CZ", (0, 1))]
    return [
        _g("c0", _conj_circuit(3, c01), {0: 0, 1: 0}, {1: 0, 2: 0}),
        _g("c1", _conj_circuit(3, c01), {1: 0, 2: 0}, {1: 0, 2: 0}),
        _g("c2", _conj_circuit(3, [[("Z", (1,))], [cz01], [cz12]]), {1: 0, 2: 0}, {1: 0, 2: 0}),
        _g("c3", _conj_circuit(2, [z1, cz]), {1: 0}, {1: 0}),
        _g("c4", _conj_circuit(2, [z0, cz]), {1: 0}, {1: 0}),
        _g("c0^-1", _conj_circuit(3, c01), {1: 0, 2: 1}, {0: 1, 1: 0}),
        _g("c1^-1", _conj_circuit(3, [[cz01], [cz12]]), {1: 1, 2: 1}, {1: 1, 2: 1}),
        _g("c2^-1", _conj_circuit(3, [[("Z", (0,)), ("Z", (1,)), ("Z", (2,))], [cz01], [cz12]]),
           {1: 1, 2: 1}, {1: 1, 2: 1}),
        _g("c3^-1", _conj_circuit(2, [z0, cz]), {1: 1}, {1: 1}),
        _g("c4^-1", _conj_circuit(2, [z1, cz]), {1: 1}, {1: 1}),
    ]


def _cz_table() -> list[Gadget]:
    return [_g("g", _conj_circuit(3, [[("CZ", (0, 1))], [("CZ", (1, 2))]]), {1: 0, 2: 1}, {1: 1, 2: 0})]


def _t4p_table() -> list[Gadget]:
    t4 = [("T4", (0, 1, 2, 3))]

    def paulis(word):
        return [(p, (q,)) for q, p in enumerate(word)]

    return [
        _g("h", _conj_circuit(4, [t4, paulis("ZYYX")]), {0: 0, 1: 0, 3: 0}, {1: 1, 2: 0, 3: 1}),
        _g("i", _conj_circuit(4, [t4, paulis("ZXZX")]), {1: 1, 2: 0, 3: 0}, {1: 0, 2: 0, 3: 0}),
        _g("j", _conj_circuit(4, [t4, paulis("YXYX")]), {1: 0, 2: 0, 3: 0}, {1: 0, 2: 0, 3: 0}),
        _g("h^-1", _conj_circuit(4, [paulis("ZYYX"), t4]), {1: 0, 2: 0, 3: 0}, {0: 1, 2: 1, 3: 0}),
        _g("i^-1", _conj_circuit(4, [paulis("XZXZ"), t4]), {1: 1, 2: 0, 3: 0}, {1: 0, 2: 0, 3: 0}),
        _g("j^-1", _conj_circuit(4, [paulis("YXXY"), t4]), {1: 1, 2: 1, 3: 1}, {1: 1, 2: 1, 3: 1}),
    ]


def _has_table(spec: FamilySpec) -> str:
    fam = spec.family
    if fam in ("IQP", "CCC", "CZ_Z", "CZ"):
        return fam
    if fam == "FRAGMENT" and parse_fragment(spec.fragment)[0] == "T4+P":
        return "T4+P"
    if fam == "CZ_S":
        raise NoTable("CZ+S has no gadget table of its own; its analysis goes through CZ+Z")
    raise NoTable(f"no gadget table for {spec.family} {spec.fragment or ''}".strip())


def gadget_table(spec: FamilySpec) -> list[Gadget]:
    kind = _has_table(spec)
    return {"IQP": _iqp_table, "CCC": _ccc_table, "CZ_Z": _czz_table,
            "CZ": _cz_table, "T4+P": _t4p_table}[kind]()


def table_gate_set(spec: FamilySpec) -> GateSet:
    """Gate set referenced by ``gadget_table(spec)``: wire primitives plus S."""
    kind = _has_table(spec)
    base = gate_set(spec)
    if kind == "IQP":
        prims = [Gate("H", H), Gate("T", T), Gate("CZ", CZ)]
        prims += [Gate(f"T^{p}", np.linalg.matrix_power(T, p)) for p in (3, 4, 7)]
    else:
        u = spec.unitary()
        prims = [Gate("U", u), Gate("Udg", dagger(u)), Gate("CZ", CZ),
                 Gate("X", X), Gate("Y", Y), Gate("Z", Z), Gate("T4", parity_flip(4))]
    return base.union(GateSet("primitives", tuple(prims)), name=base.name + " (wires)")


# --- generator sets ----------------------------------------------------------------

CCC_U = (0.0, 0.0, 2 * math.pi / 3, 0.0)
T4P_U = (math.pi / 8, math.pi / 4, 2 * math.pi / 3, 0.0)  # T Rx(2 pi / 3)

_SETS = {
    "IQP": (FamilySpec("IQP"),
            [("a", "A"), ("a^-1", "A^-1"), ("b", "B"), ("b^-1", "B^-1"),
             ("c", "C"), ("c^-1", "-C^-1")]),
    "CCC": (FamilySpec("CCC", None, CCC_U),
            [("d", "D"), ("d^-1", "D^-1"), ("e", "E"), ("e^-1", "E^-1"),
             ("f", "F"), ("f^-1", "F^-1")]),
    "T4P": (FamilySpec("FRAGMENT", "T4+P", T4P_U),
            [("h", "H"), ("h^-1", "-H^-1"), ("i", "I"), ("i^-1", "I^-1"),
             ("j", "J"), ("j^-1", "J^-1")]),
}
_CZZ = {
    "A": [("c0", "C0"), ("c0^-1", "C0^-1"), ("c1", "C1"), ("c1^-1", "C1^-1"),
          ("c3", "C3"), ("c3^-1", "C3^-1"), ("c4", "C4"), ("c4^-1", "C4^-1")],
    "B": [("c0", "C0"), ("c0^-1", "C0^-1"), ("c2", "C2"), ("c2^-1", "-C2^-1"),
          ("c3", "C3"), ("c3^-1", "C3^-1"), ("c4", "C4"), ("c4^-1", "C4^-1")],
}


def czz_interval(theta: float) -> str:
    """'A' for theta in (pi/2, 3pi/2) and 'B' otherwise (angles taken mod 2 pi)."""
    t = theta % TWO_PI
    return "A" if math.pi / 2 < t < 3 * math.pi / 2 else "B"


def lattice_distance(x: float, step: float) -> float:
    r = math.remainder(x, step)
    return abs(r)


def generator_gadgets(case: str, theta: float | None = None) -> tuple[FamilySpec, list[tuple[str, str]]]:
    case = case.upper()
    if case in _SETS:
        return _SETS[case]
    if case in ("CZZ_A", "CZZ_B"):
        if theta is None:
            raise BadParam(f"{case} needs theta")
        return FamilySpec.rx("CZ_Z", theta), _CZZ[case[-1]]
    raise BadParam(f"unknown generator set {case!r}")


def named_generator_set(case: str, theta: float | None = None,
                        tol: Tolerance = DEFAULT_TOL) -> GeneratorSet:
    """One of the named generator sets: IQP, CCC, CZZ_A(theta), CZZ_B(theta), T4P."""
    spec, rows = generator_gadgets(case, theta)
    table = {g.name: g for g in gadget_table(spec)}
    s = table_gate_set(spec)
    gadgets = [table[name] for name, _ in rows]
    if case.upper().startswith("CZZ"):
        t = theta % TWO_PI
        want = case.upper()[-1]
        if czz_interval(t) != want:
            raise ThetaOutOfInterval(f"theta = {theta:.12g} is not in interval {want}")
        if lattice_distance(t, math.pi / 2) <= tol.warn_band:
            acts = [(g.name, compute_action(g, s, tol).det_raw) for g in gadgets]
            name, d = min(acts, key=lambda kv: abs(kv[1]))
            raise DegenerateGadget(name, d, f"theta = {theta:.12g} is within warn_band of (pi/2)Z")
    return build_generator_set(gadgets, s, tol, labels=[lbl for _, lbl in rows])
