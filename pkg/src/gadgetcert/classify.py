"""Simulability classification of conjugated circuit families, and theta sweeps
that cross-check it against the density pipeline.

Every family handled here is decided by angle conditions on the Euler
decomposition ``U = e^{i alpha} Rz(phi) Rx(theta) Rz(lambda)``. Lattice
membership ``x in (pi/2)Z`` is tested as ``dist(x, (pi/2)Z) <= eq_eps``.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import catalog as cat
from . import reference as ref
from .catalog import H, S, euler_unitary, rx
from .criterion import CriterionReport, beta, density_pipeline, gamma
from .errors import DegenerateGadget, NotUnitary, UnsupportedFamily
from .gadget import compute_action, normalize_action
from .linalg import DEFAULT_TOL, Tolerance, dagger, det, is_unitary, max_abs, trace, up_to_sign

TWO_PI = 2 * math.pi
HALF_PI = math.pi / 2
# below this modulus an Euler entry is treated as exactly zero (gimbal lock)
_GIMBAL = 1e-12


@dataclass(frozen=True)
class EulerDecomp:
    alpha: float
    phi: float
    theta: float
    lam: float

    def unitary(self) -> np.ndarray:
        return euler_unitary(self.alpha, self.phi, self.theta, self.lam)


def _mod2pi(x: float) -> float:
    r = math.fmod(x, TWO_PI)
    if r < 0:
        r += TWO_PI
    return 0.0 if r >= TWO_PI else r


def euler_zxz(u: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> EulerDecomp:
    """Canonical ZXZ Euler angles with theta in [0, pi] and lambda = 0 at gimbal lock."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2) or not is_unitary(u, 10 * tol.eq_eps):
        raise NotUnitary("euler_zxz needs a 2x2 unitary")
    a, b = abs(u[0, 0]), abs(u[1, 0])
    theta = 2 * math.atan2(b, a)
    if b <= _GIMBAL:
        phi, lam = cmath.phase(u[1, 1]) - cmath.phase(u[0, 0]), 0.0
    elif a <= _GIMBAL:
        phi, lam = cmath.phase(u[1, 0]) - cmath.phase(u[0, 1]), 0.0
    else:
        s = cmath.phase(u[1, 1]) - cmath.phase(u[0, 0])
        d = cmath.phase(u[1, 0]) - cmath.phase(u[0, 1])
        phi, lam = (s + d) / 2, (s - d) / 2
    # halving the phase sums leaves a joint shift of phi and lam by pi undetermined
    gimbal = a <= _GIMBAL or b <= _GIMBAL
    best = None
    for shift in ((0.0,) if gimbal else (0.0, math.pi)):
        p, lm = _mod2pi(phi + shift), _mod2pi(lam + shift)
        r = euler_unitary(0.0, p, theta, lm)
        alpha = _mod2pi(cmath.phase(np.trace(dagger(r) @ u)))
        err = max_abs(np.exp(1j * alpha) * r - u)
        if best is None or err < best[0]:
            best = (err, EulerDecomp(alpha, p, theta, lm))
    return best[1]


def lattice_dist(x: float, step: float) -> float:
    return abs(math.remainder(x, step))


def in_lattice(x: float, step: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    return lattice_dist(x, step) <= tol.eq_eps


def _phase_key(m: np.ndarray) -> tuple:
    flat = m.flatten()
    k = int(np.argmax(np.abs(flat) > 1e-9))
    m = m * abs(flat[k]) / flat[k]
    return tuple(np.round(m.flatten(), 9).tolist())


def _clifford_list() -> list[tuple[str, np.ndarray]]:
    """The 24 single-qubit Cliffords modulo phase, breadth first over words in H and S."""
    out = [("I", np.eye(2, dtype=complex))]
    seen = {_phase_key(out[0][1])}
    i = 0
    while i < len(out):
        word, m = out[i]
        for name, g in (("H", H), ("S", S)):
            n = m @ g
            key = _phase_key(n)
            if key not in seen:
                seen.add(key)
                out.append((name if word == "I" else word + name, n))
        i += 1
    return out


CLIFFORDS = _clifford_list()


@dataclass(frozen=True)
class Certificate:
    """``U = e^{i alpha} P Rz(phi) C Rz(lam)`` with prefix P in {I, H, theta_{Y+Z}}."""

    clifford: str
    alpha: float
    phi: float
    lam: float
    prefix: str = "I"

    def matrix(self) -> np.ndarray:
        return dict(CLIFFORDS)[self.clifford]

    def unitary(self) -> np.ndarray:
        core = np.exp(1j * self.alpha) * cat.rz(self.phi) @ self.matrix() @ cat.rz(self.lam)
        return _prefix_matrix(self.prefix) @ core


@dataclass(frozen=True)
class ClassVerdict:
    family: str
    simulable: bool
    reason: str
    euler: EulerDecomp
    certificate: Certificate | None = None

    @property
    def status(self) -> str:
        return "simulable" if self.simulable else "intractable"

    def to_dict(self) -> dict:
        d = {"family": self.family, "status": self.status, "reason": self.reason,
             "euler": asdict(self.euler)}
        d["certificate"] = asdict(self.certificate) if self.certificate else None
        return d


def _prefix_matrix(prefix: str) -> np.ndarray:
    if prefix == "H":
        return H
    if prefix == "theta_Y+Z":
        return cat.theta_gate("Y", "Z")
    return np.eye(2, dtype=complex)


def _certificate_rz_c_rz(u: np.ndarray, tol: Tolerance, prefix: str) -> Certificate | None:
    e = euler_zxz(u, tol)
    for word, c in CLIFFORDS:
        ec = euler_zxz(c, tol)
        if abs(ec.theta - e.theta) > 10 * tol.eq_eps:
            continue
        phi, lam = _mod2pi(e.phi - ec.phi), _mod2pi(e.lam - ec.lam)
        core = cat.rz(phi) @ c @ cat.rz(lam)
        alpha = _mod2pi(cmath.phase(np.trace(dagger(core) @ u)))
        cert = Certificate(word, alpha, phi, lam, prefix)
        if max_abs(np.exp(1j * alpha) * core - u) <= 10 * tol.eq_eps:
            return cert
    return None


def _certificate_c_rz(u: np.ndarray, tol: Tolerance) -> Certificate | None:
    for word, c in CLIFFORDS:
        m = dagger(c) @ u
        if max(abs(m[0, 1]), abs(m[1, 0])) > 10 * tol.eq_eps:
            continue
        lam = _mod2pi(cmath.phase(m[1, 1]) - cmath.phase(m[0, 0]))
        core = c @ cat.rz(lam)
        alpha = _mod2pi(cmath.phase(np.trace(dagger(core) @ u)))
        return Certificate(word, alpha, 0.0, lam)
    return None


FAMILY_NAMES = ("CCC", "CZ", "CZ_Z", "CZ_S")


def _normalize_family(family: str, fragment: str | None) -> tuple[str, str | None]:
    f = family.strip()
    up = f.upper().replace("+", "_")
    if up in FAMILY_NAMES:
        return up, None
    if up == "FRAGMENT":
        if fragment is None:
            raise UnsupportedFamily("FRAGMENT needs a fragment name")
        f = fragment
    try:
        kind, p, _ = cat.parse_fragment(f)
    except Exception:
        raise UnsupportedFamily(f"no classification for family {family!r}") from None
    if kind == "T4+P":
        raise UnsupportedFamily("the T4+P fragment has no known simulability classification")
    return "FRAGMENT", f


def classify(u: np.ndarray, family: str, fragment: str | None = None,
             tol: Tolerance = DEFAULT_TOL) -> ClassVerdict:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2) or not is_unitary(u, 10 * tol.eq_eps):
        raise NotUnitary("classify needs a 2x2 unitary")
    fam, frag = _normalize_family(family, fragment)
    e = euler_zxz(u, tol)

    if fam == "CCC":
        if in_lattice(e.theta, math.pi, tol):
            sim, why = True, "ccc: theta in pi*Z"
        elif in_lattice(e.theta, HALF_PI, tol) and in_lattice(e.phi, HALF_PI, tol):
            sim, why = True, "ccc: phi and theta in (pi/2)Z"
        elif in_lattice(e.theta, HALF_PI, tol):
            sim, why = False, "ccc: theta odd multiple of pi/2, phi not in (pi/2)Z"
        else:
            sim, why = False, "ccc: theta not in (pi/2)Z"
        cert = _certificate_c_rz(u, tol) if sim else None
        return ClassVerdict("CCC", sim, why, e, cert)

    prefix = "I"
    target = u
    label = {"CZ": "cz", "CZ_Z": "cz+z", "CZ_S": "cz+s (via cz+z)"}.get(fam, "")
    if fam == "FRAGMENT":
        kind, p, _ = cat.parse_fragment(frag)
        label = f"{kind.replace('P', p)}"
        if p == "X":
            prefix = "H"
        elif p == "Y":
            prefix = "theta_Y+Z"
        target = _prefix_matrix(prefix) @ u
    et = euler_zxz(target, tol)
    sim = in_lattice(et.theta, HALF_PI, tol)
    pre = "" if prefix == "I" else f"{prefix}.U: "
    why = f"{label}: {pre}theta {'in' if sim else 'not in'} (pi/2)Z"
    cert = _certificate_rz_c_rz(target, tol, prefix) if sim else None
    return ClassVerdict(frag or fam, sim, why, e, cert)


# --- sweeps ----------------------------------------------------------------------

DET_ZERO_ANGLES = (2 * math.atan(math.sqrt(math.sqrt(2) - 1)),
                   2 * math.atan(math.sqrt(math.sqrt(2) + 1)))


def singular_distance(theta: float) -> float:
    """Distance from theta to (pi/2)Z or to a zero of det A(c1), det A(c2)."""
    d = lattice_dist(theta, HALF_PI)
    for z in DET_ZERO_ANGLES:
        d = min(d, lattice_dist(theta - z, TWO_PI), lattice_dist(theta + z, TWO_PI))
    return d


def czz_dets(theta: float, phi: float = 0.0, tol: Tolerance = DEFAULT_TOL) -> dict[str, complex]:
    spec = cat.FamilySpec("CZ_Z", None, (0.0, phi, theta, 0.0))
    s = cat.table_gate_set(spec)
    return {g.name: compute_action(g, s, tol).det_raw
            for g in cat.gadget_table(spec) if not g.name.endswith("^-1")}


@dataclass
class SweepRow:
    index: int
    theta: float
    interval: str
    status: str  # judged | flagged | degenerate
    verdict: ClassVerdict
    pipeline: str | None
    dets: dict[str, complex]
    consistent: bool
    report: CriterionReport | None = field(default=None, repr=False)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "index": self.index, "theta": self.theta, "interval": self.interval,
            "status": self.status, "class": self.verdict.status, "reason": self.verdict.reason,
            "pipeline": self.pipeline, "consistent": self.consistent, "note": self.note,
            "dets": {k: [v.real, v.imag] for k, v in self.dets.items()},
        }


def _sweep_row(i: int, theta: float, family: str, phi: float, tol: Tolerance,
               fragment: str | None) -> SweepRow:
    u = cat.rz(phi) @ rx(theta)
    verdict = classify(u, family, fragment, tol)
    interval = cat.czz_interval(theta)
    dets = czz_dets(theta, phi, tol)
    if singular_distance(theta % TWO_PI) <= tol.warn_band:
        return SweepRow(i, theta, interval, "flagged", verdict, None, dets, True,
                        note="within warn_band of a singular angle")
    try:
        gs = cat.named_generator_set(f"CZZ_{interval}", theta, tol)
    except DegenerateGadget as e:
        return SweepRow(i, theta, interval, "degenerate", verdict, None, dets, True, note=str(e))
    rep = density_pipeline(gs, tol)
    outcome = rep.overall
    consistent = not (outcome == "DENSE" and verdict.simulable)
    return SweepRow(i, theta, interval, "judged", verdict, outcome, dets, consistent, rep)


def sweep(family: str, theta_grid, phi: float = 0.0, tol: Tolerance = DEFAULT_TOL,
          fragment: str | None = None, workers: int = 1) -> list[SweepRow]:
    """Classify ``Rz(phi) Rx(theta)`` per grid point and run the CZ+Z pipeline.

    The pipeline uses the CZ+Z generator sets; Rz(phi) commutes with Z and CZ,
    so phi does not change them. A DENSE verdict is evidence of hardness for
    every family whose gate set contains or simulates conjugated CZ+Z.
    """
    grid = [float(t) for t in theta_grid]
    if not all(math.isfinite(t) for t in grid):
        raise ValueError("grid points must be finite")
    args = [(i, t, family, phi, tol, fragment) for i, t in enumerate(grid)]
    if workers <= 1:
        return [_sweep_row(*a) for a in args]
    with ThreadPoolExecutor(workers) as ex:
        return list(ex.map(lambda a: _sweep_row(*a), args))


def default_grid(steps: int = 997) -> list[float]:
    return [TWO_PI * i / steps for i in range(steps)]


# --- closed-form checks -------------------------------------------------------------

@dataclass
class FormulaCheck:
    name: str
    form: str  # printed | corrected
    points: int
    max_delta: float
    worst_theta: float | None
    bound_ok: bool | None
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _rel(a: complex, b: complex) -> float:
    """Absolute error, scaled down for values larger than 1 in modulus."""
    return abs(a - b) / max(1.0, abs(b))


def czz_quantities(theta: float, tol: Tolerance = DEFAULT_TOL) -> dict[str, complex]:
    """Matrix-computed invariants of the CZ+Z generators at one theta."""
    interval = cat.czz_interval(theta)
    gs = cat.named_generator_set(f"CZZ_{interval}", theta, tol)
    c0, c3, c4 = gs["C0"], gs["C3"], gs["C4"]
    out = {"beta(C0)": beta(c0), "tr(C3)": trace(c3), "tr(C4)": trace(c4)}
    if interval == "A":
        c1 = gs["C1"]
        out["beta(C1)"] = beta(c1)
        out["gamma(C0,C1)"] = gamma(c0, c1, tol)
        out["jorgensen_A"] = abs(beta(c1)) + abs(gamma(c1, c0, tol))
    else:
        c2 = gs["C2"]
        out["beta(C2)"] = beta(c2)
        out["gamma(C0,C2)"] = gamma(c0, c2, tol)
        out["jorgensen_B"] = abs(beta(c2)) + abs(gamma(c2, c0, tol))
    return out


def _agg(name, form, pts, bound_ok=None, tol_abs=1e-9, note=""):
    if not pts:
        return FormulaCheck(name, form, 0, 0.0, None, bound_ok, False, "no valid grid points")
    worst = max(pts, key=lambda p: p[1])
    ok = worst[1] <= tol_abs and (bound_ok is not False)
    return FormulaCheck(name, form, len(pts), worst[1], worst[0], bound_ok, ok, note)


def verify_czz_formulas(theta_grid, tol: Tolerance = DEFAULT_TOL,
                             agree: float = 1e-9) -> list[FormulaCheck]:
    """Compare each closed form with the matrix computation on the valid grid points.

    Differences are absolute for values of modulus at most 1 and relative above.
    Printed forms that disagree are reported as failing rows next to a passing
    corrected form.
    """
    grid = [float(t) % TWO_PI for t in theta_grid]
    valid = [t for t in grid if singular_distance(t) > tol.warn_band]
    dets: dict[int, list] = {i: [] for i in range(5)}
    vals: dict[str, list] = {}
    for t in valid:
        d = czz_dets(t, 0.0, tol)
        for i in range(5):
            dets[i].append((t, abs(d[f"c{i}"] - ref.det_c(i, t))))
        for name, v in czz_quantities(t, tol).items():
            vals.setdefault(name, []).append((t, v))
    rows = [_agg(f"det A(c{i})", "printed", dets[i], tol_abs=agree) for i in range(5)]
    for name, (printed, corrected) in ref.CZZ_FORMULAS.items():
        pts = vals.get(name, [])
        bound = None
        if name.startswith("jorgensen"):
            bound = all(printed(t) < 1 and abs(v) < 1 for t, v in pts) if pts else None
        rows.append(_agg(name, "printed", [(t, _rel(v, printed(t))) for t, v in pts],
                         bound, agree))
        if corrected is not None:
            rows.append(_agg(name, "corrected", [(t, _rel(v, corrected(t))) for t, v in pts],
                             None, agree))
    return rows


def det_zero_loci(xtol: float = 1e-14, scan: int = 400) -> dict[str, tuple[float, float]]:
    """Zeros of det A(c1) and det A(c2) in (0, pi), from the contraction path.

    Each zero is bracketed by a sign change of the (real) determinant on a
    uniform scan and then refined by Brent's method, so the predicted angle
    plays no part in locating it. Returns ``name -> (located zero, predicted)``.
    """
    from scipy.optimize import brentq

    grid = np.linspace(1e-3, math.pi - 1e-3, scan)
    out = {}
    for name, z in (("c1", DET_ZERO_ANGLES[0]), ("c2", DET_ZERO_ANGLES[1])):
        f = lambda t, n=name: czz_dets(t)[n].real  # noqa: E731
        vals = [f(t) for t in grid]
        roots = [brentq(f, grid[i], grid[i + 1], xtol=xtol)
                 for i in range(scan - 1) if vals[i] * vals[i + 1] < 0]
        if len(roots) != 1:
            raise ValueError(f"expected one zero of det A({name}) in (0, pi), found {len(roots)}")
        out[name] = (float(roots[0]), z)
    return out


def cz_gadget_check(theta: float, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
    """Errors of the CZ gadget against its explicit matrix and both identity forms."""
    spec = cat.FamilySpec.rx("CZ", theta)
    g = cat.gadget_table(spec)[0]
    act = compute_action(g, cat.table_gate_set(spec), tol)
    n = normalize_action(act.raw, 1, tol)
    return {
        "det": abs(act.det_raw - (-math.sin(theta) ** 4 / 4)),
        "matrix": up_to_sign(n, ref.g_matrix(theta))[0],
        "identity_printed": up_to_sign(n, ref.g_identity_printed(theta))[0],
        "identity_corrected": up_to_sign(n, ref.g_identity_corrected(theta))[0],
    }


__all__ = [
    "EulerDecomp", "Certificate", "ClassVerdict", "SweepRow", "FormulaCheck", "CLIFFORDS",
    "euler_zxz", "classify", "sweep", "default_grid", "verify_czz_formulas",
    "czz_quantities", "czz_dets", "det_zero_loci", "cz_gadget_check", "singular_distance",
    "in_lattice", "lattice_dist",
]
