"""Command-line interface.

Commands: check, verify-paper, sweep, search, classify. Text mode prints
tab-delimited tables; ``--machine`` prints one JSON object per line, preceded by
a version header. Exit codes: 0 success (DENSE for ``check``), 2 inconclusive
or nothing found, 1 any error or failed check.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from . import catalog as cat
from . import classify as cl
from . import reference as ref
from . import search as se
from .circuit import Circuit, Gate, GateSet, Placement
from .criterion import (
    CriterionReport, beta, commutator_trace, density_pipeline, discrete_rule_values, gamma,
)
from .errors import GadgetCertError, ParseError
from .gadget import Gadget, build_generator_set, compute_action, normalize_action
from .linalg import Tolerance, inv2, trace, up_to_sign

# --- parsing --------------------------------------------------------------------

_ANGLE = re.compile(r"^([+-]?)(\d+(?:\.\d*)?|\.\d+)?\*?(pi)?(?:/(\d+(?:\.\d*)?))?$")


@dataclass(frozen=True)
class Angle:
    """An angle kept as an exact multiple of pi when written that way."""

    pi_multiple: Fraction | None
    value: float

    def __float__(self) -> float:
        return self.value


def parse_angle(text: str) -> Angle:
    """Decimal radians, or rational multiples of pi such as ``pi/4``, ``-3pi/4``, ``2*pi/3``."""
    s = text.strip().replace(" ", "").lower()
    m = _ANGLE.match(s)
    if not s or not m or (m.group(2) is None and m.group(3) is None):
        raise ParseError(f"cannot parse angle {text!r}")
    sign = -1 if m.group(1) == "-" else 1
    if m.group(3):
        num = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        den = Fraction(m.group(4)) if m.group(4) else Fraction(1)
        frac = sign * num / den
        return Angle(frac, float(frac) * math.pi)
    val = sign * Fraction(m.group(2)) / (Fraction(m.group(4)) if m.group(4) else 1)
    return Angle(None, float(val))


def _split_top(expr: str, sep: str = "*") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in expr:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_unitary(expr: str) -> np.ndarray:
    """Product of ``Rz(x)``, ``Rx(x)``, ``H``, ``S``, ``T``, ``I`` joined by ``*``."""
    u = np.eye(2, dtype=complex)
    col = 1
    for tok in _split_top(expr.strip()):
        t = tok.strip()
        m = re.fullmatch(r"(R[xz])\((.*)\)", t, flags=re.IGNORECASE)
        if m:
            ang = float(parse_angle(m.group(2)))
            g = cat.rx(ang) if m.group(1).lower() == "rx" else cat.rz(ang)
        elif t.upper() in ("H", "S", "T", "I"):
            g = {"H": cat.H, "S": cat.S, "T": cat.T, "I": np.eye(2)}[t.upper()]
        else:
            raise ParseError(f"unknown factor {t!r} in unitary expression", 1, col)
        u = u @ g
        col += len(tok) + 1
    return u


def _cmat(rows, where: str) -> np.ndarray:
    try:
        return np.array([[complex(x[0], x[1]) for x in row] for row in rows], dtype=complex)
    except (TypeError, IndexError, ValueError):
        raise ParseError(f"{where}: matrices are nested arrays of [re, im] pairs") from None


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    if not text.strip():
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg}", e.lineno, e.colno) from None


def _builtin_spec(name: str, theta: Angle | None, u_params) -> tuple[str, cat.FamilySpec]:
    name = name.lower()
    if name == "iqp":
        return "IQP", cat.FamilySpec("IQP")
    if name == "ccc":
        return "CCC", cat.FamilySpec("CCC", None, u_params or cat.CCC_U)
    if name == "t4p":
        return "T4P", cat.FamilySpec("FRAGMENT", "T4+P", u_params or cat.T4P_U)
    if name in ("czz", "czz_a", "czz_b", "cz", "cz_s"):
        if theta is None and u_params is None:
            raise ParseError(f"builtin:{name} needs --theta or --u")
        params = u_params or (0.0, 0.0, float(theta), 0.0)
        fam = {"cz": "CZ", "cz_s": "CZ_S"}.get(name, "CZ_Z")
        return name.upper(), cat.FamilySpec(fam, None, params)
    raise ParseError(f"unknown builtin {name!r}")


def load_gateset(ref_: str, theta: Angle | None = None, u_params=None) -> GateSet:
    if ref_.startswith("builtin:"):
        _, spec = _builtin_spec(ref_[8:], theta, u_params)
        try:
            return cat.table_gate_set(spec)
        except GadgetCertError:
            return cat.gate_set(spec)
    data = _load_json(ref_)
    if not isinstance(data, dict) or not isinstance(data.get("gates"), dict):
        raise ParseError(f"{ref_}: expected an object with a 'gates' mapping")
    gates = []
    for name, body in data["gates"].items():
        if isinstance(body, dict):
            if "builtin" not in body:
                raise ParseError(f"{ref_}: gate {name!r} needs 'builtin' or a matrix")
            params = [float(parse_angle(str(p))) if isinstance(p, str) and "pi" in p else p
                      for p in body.get("params", [])]
            m = cat.gate(body["builtin"], tuple(params)).matrix
        else:
            m = _cmat(body, f"{ref_}: gate {name!r}")
        gates.append(Gate(name, m))
    return GateSet(data.get("name", ref_), tuple(gates))


def _gadget_from_json(obj, where: str) -> Gadget:
    try:
        moments = tuple(tuple(Placement(p["gate"], tuple(p["targets"])) for p in m)
                        for m in obj.get("moments", []))
        anc = {int(k): int(v) for k, v in obj.get("ancilla", {}).items()}
        post = {int(k): int(v) for k, v in obj.get("postselect", {}).items()}
        return Gadget(obj.get("name", where), Circuit(int(obj["qubits"]), moments), anc, post)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ParseError(f"{where}: malformed gadget ({e})") from None


def load_gadgets(ref_: str) -> tuple[list[Gadget], list[str] | None]:
    data = _load_json(ref_)
    if data is None:
        return [], None
    items = data.get("gadgets", []) if isinstance(data, dict) else data
    if not isinstance(items, list):
        raise ParseError(f"{ref_}: expected a list of gadgets")
    gadgets = [_gadget_from_json(o, f"{ref_}[{i}]") for i, o in enumerate(items)]
    labels = [o.get("label", g.name) for o, g in zip(items, gadgets)]
    return gadgets, labels


# --- output -----------------------------------------------------------------------

def _num(z) -> object:
    if isinstance(z, (complex, np.complexfloating)):
        return [float(z.real), float(z.imag)]
    if isinstance(z, np.floating):
        return float(z)
    if isinstance(z, np.bool_):
        return bool(z)
    return z


def _fmt(z) -> str:
    if isinstance(z, complex):
        if abs(z.imag) < 1e-12:
            return f"{z.real:.12g}"
        return f"{z.real:.12g}{z.imag:+.12g}i"
    if isinstance(z, float):
        return f"{z:.6g}"
    return str(z)


class Out:
    def __init__(self, machine: bool, command: str, stream=None):
        self.machine = machine
        self.stream = stream or sys.stdout
        if machine:
            self.record({"tool": "gadgetcert", "version": __version__,
                         "numpy": np.__version__, "command": command})

    def record(self, obj: dict) -> None:
        self.stream.write(json.dumps(obj, sort_keys=True, default=_num) + "\n")

    def line(self, text: str) -> None:
        if not self.machine:
            self.stream.write(text + "\n")

    def table(self, header: Sequence[str], rows: Sequence[Sequence]) -> None:
        if self.machine:
            for r in rows:
                self.record(dict(zip(header, (_num(x) for x in r))))
            return
        self.stream.write("\t".join(header) + "\n")
        for r in rows:
            self.stream.write("\t".join(_fmt(x) for x in r) + "\n")


def render_report(out: Out, rep: CriterionReport) -> None:
    if out.machine:
        out.record({"report": rep.to_dict()})
        return
    for name, v in (("elementary", rep.elementary), ("discrete", rep.discrete),
                    ("loxodromic", rep.loxodromic)):
        w = ",".join(v.witness) if v.witness else "-"
        out.line(f"{name}\t{v.outcome.value}\twitness={w}\trule={v.rule or '-'}"
                 f"\tmargin={_fmt(v.margin) if v.margin is not None else '-'}")
        for note in v.warnings:
            out.line(f"  warning: {note}")
    out.line(f"overall\t{rep.overall}" + (f"\tstopped at {rep.stage}" if rep.stage else ""))


# --- regression table --------------------------------------------------------------

@dataclass
class Check:
    case: str
    claim: str
    expected: object
    computed: object
    delta: float
    passed: bool
    note: str = ""


def _scalar(case, claim, expected, computed, tol=1e-9, note=""):
    d = abs(complex(computed) - complex(expected))
    return Check(case, claim, complex(expected), complex(computed), d, d <= tol, note)


def _iqp_rows(t):
    g = cat.named_generator_set("IQP", tol=t)
    A, B, C = g["A"], g["B"], g["C"]
    c = commutator_trace(B, A, t)
    k = ref.CLAIMS["IQP"]
    return [
        _scalar("iqp", "beta(B)", k["beta_B"], beta(B),
                note="the printed B gives -3 + 1/sqrt 2"),
        _scalar("iqp", "beta(C)", k["beta_C"], beta(C)),
        _scalar("iqp", "gamma(B,C)", k["gamma_BC"], gamma(B, C, t)),
        _scalar("iqp", "tr(BAB^-1A^-1)", k["commutator_BA"], c),
        _scalar("iqp", "T16 quantity", k["rule_value"], discrete_rule_values(B, A, t)["T16"]),
        _scalar("iqp", "tr(C)", k["tr_C"], trace(C)),
    ]


def _ccc_rows(t):
    g = cat.named_generator_set("CCC", tol=t)
    D, E, F = g["D"], g["E"], g["F"]
    k = ref.CLAIMS["CCC"]
    return [
        _scalar("ccc", "beta(E)", k["beta_E"], beta(E)),
        _scalar("ccc", "beta(F)", k["beta_F"], beta(F)),
        _scalar("ccc", "gamma(E,F)", k["gamma_EF"], gamma(E, F, t)),
        _scalar("ccc", "J4 quantity (F,E)", k["jorgensen_FE"], discrete_rule_values(F, E, t)["J4"]),
        _scalar("ccc", "tr(D)", k["tr_D"], trace(D)),
    ]


def _t4p_rows(t):
    g = cat.named_generator_set("T4P", tol=t)
    H, I, J = g["H"], g["I"], g["J"]
    k = ref.CLAIMS["T4P"]
    return [
        _scalar("t4p", "beta(H)", k["beta_H"], beta(H)),
        _scalar("t4p", "beta(I)", k["beta_I"], beta(I)),
        _scalar("t4p", "gamma(H,I)", k["gamma_HI"], gamma(H, I, t)),
        _scalar("t4p", "tr(HIH^-1I^-1)", k["gamma_HI"] + 2, commutator_trace(H, I, t)),
        _scalar("t4p", "T6 quantity = sqrt(409)/25", k["tan_lhs"],
                discrete_rule_values(H, I, t)["T6"]),
        _scalar("t4p", "tr(J)", k["tr_J"], trace(J)),
    ]


SAMPLE_THETAS = (2.0, 2 * math.pi / 3, 0.7, 5.5, 4.0)


def printed_matrix_errors(t: Tolerance) -> dict[str, float]:
    """Max +-1-aligned entry error of each printed matrix against the computed action."""
    errs = {}
    for case, names in (("IQP", "ABC"), ("CCC", "DEF"), ("T4P", "HIJ")):
        g = cat.named_generator_set(case, tol=t)
        for n in names:
            errs[n] = up_to_sign(g[n], ref.PRINTED[n])[0]
    per = {"C0": [], "C1": [], "C2": [], "C3": [], "C4": []}
    for th in SAMPLE_THETAS:
        iv = cat.czz_interval(th)
        g = cat.named_generator_set(f"CZZ_{iv}", th, t)
        per["C0"].append(up_to_sign(g["C0"], ref.c0(th))[0])
        per["C3"].append(up_to_sign(g["C3"], ref.c3(th))[0])
        per["C4"].append(up_to_sign(g["C4"], ref.c4(th))[0])
        if iv == "A":
            per["C1"].append(up_to_sign(g["C1"], normalize_action(ref.raw_c1(th), 1, t))[0])
        else:
            per["C2"].append(up_to_sign(g["C2"], normalize_action(ref.raw_c2(th), 1, t))[0])
    errs.update({k: max(v) for k, v in per.items()})
    return errs


def _printed_rows(t):
    notes = {"I": "the printed I has determinant != 1"}
    return [Check("printed", f"matrix {k}", 0.0, e, e, e <= 1e-9, notes.get(k, ""))
            for k, e in printed_matrix_errors(t).items()]


def inverse_sign_errors(t: Tolerance) -> list[tuple[str, str, float]]:
    """For every inverse gadget: (set, label, error of A(x^-1) = sign * A(x)^-1)."""
    out = []
    sets = [("IQP", None), ("CCC", None), ("T4P", None), ("CZZ_A", 2.0), ("CZZ_B", 0.7)]
    for case, th in sets:
        g = cat.named_generator_set(case, th, t)
        for lbl in g.labels:
            if "^-1" not in lbl:
                continue
            sign = -1 if lbl.startswith("-") else 1
            base = lbl.lstrip("-").replace("^-1", "")
            err = float(np.max(np.abs(g[lbl] - sign * inv2(g[base]))))
            out.append((case, lbl, err))
    return out


def _inverse_rows(t):
    return [Check("inverse", f"{case}: A~({lbl.lstrip('-').replace('^-1', '').lower()}^-1) = {lbl}",
                  0.0, e, e, e <= 1e-9) for case, lbl, e in inverse_sign_errors(t)]


def _czz_rows(t):
    rows = []
    for f in cl.verify_czz_formulas(cl.default_grid(997), t):
        note = f"{f.points} points"
        if f.bound_ok is not None:
            note += f"; < 1 everywhere: {f.bound_ok}"
        rows.append(Check("czz", f"{f.name} [{f.form}]", 0.0, f.max_delta, f.max_delta,
                          f.passed, note))
    for name, (found, pred) in cl.det_zero_loci().items():
        d = abs(found - pred)
        rows.append(Check("czz", f"zero of det A({name})", pred, found, d, d <= 1e-8))
    return rows


def _cz_rows(t):
    grid = [0.05 + i * (2 * math.pi - 0.1) / 49 for i in range(50)]
    grid = [x for x in grid if cl.lattice_dist(x, math.pi / 2) > 1e-3]
    agg: dict[str, float] = {}
    for th in grid:
        for k, v in cl.cz_gadget_check(th, t).items():
            agg[k] = max(agg.get(k, 0.0), v)
    notes = {"identity_printed": "operator order reversed; the explicit matrix holds"}
    return [Check("cz", f"gadget g: {k}", 0.0, v, v, v <= 1e-9, notes.get(k, ""))
            for k, v in agg.items()]


def _pipeline_rows(t):
    rows = []
    cases = [("IQP", None, ("B", "C"), "T16", ("C",)), ("CCC", None, None, "J4", None),
             ("T4P", None, ("H", "I"), "T6", None), ("CZZ_A", 2 * math.pi / 3, None, None, None),
             ("CZZ_B", 0.7, None, None, None)]
    for case, th, ew, rule, lw in cases:
        rep = density_pipeline(cat.named_generator_set(case, th, t), t)
        ok = rep.dense
        if ew:
            ok = ok and rep.elementary.witness == ew
        if rule:
            ok = ok and rep.discrete.rule == rule
        if lw:
            ok = ok and rep.loxodromic.witness == lw
        what = f"{case}" + (f"({th:.6g})" if th is not None else "")
        rows.append(Check("pipeline", f"{what} DENSE", "DENSE", rep.overall, 0.0 if ok else 1.0,
                          ok, f"discrete {rep.discrete.rule} at {rep.discrete.witness}"))
    return rows


VERIFY_CASES = {
    "iqp": _iqp_rows, "ccc": _ccc_rows, "t4p": _t4p_rows, "printed": _printed_rows,
    "inverse": _inverse_rows, "czz": _czz_rows, "cz": _cz_rows, "pipeline": _pipeline_rows,
}


def verify_rows(case: str, tol: Tolerance) -> list[Check]:
    case = case.lower()
    if case == "all":
        return [r for fn in VERIFY_CASES.values() for r in fn(tol)]
    if case not in VERIFY_CASES:
        raise ParseError(f"unknown case {case!r}; choose from all, {', '.join(VERIFY_CASES)}")
    return VERIFY_CASES[case](tol)


# --- commands ----------------------------------------------------------------------

def _u_params(args) -> tuple | None:
    if getattr(args, "u", None):
        e = cl.euler_zxz(parse_unitary(args.u))
        return (e.alpha, e.phi, e.theta, e.lam)
    return None


def cmd_check(args, tol, out) -> int:
    theta = parse_angle(args.theta) if args.theta else None
    if args.gadgets.startswith("builtin:"):
        name = args.gadgets[8:].lower()
        if name in ("czz", "czz_a", "czz_b"):
            if theta is None:
                raise ParseError("builtin:czz needs --theta")
            case = f"CZZ_{cat.czz_interval(float(theta))}" if name == "czz" else name.upper()
        else:
            case, _ = _builtin_spec(name, theta, None)
        gs = cat.named_generator_set(case, float(theta) if theta is not None else None, tol)
    else:
        if not args.gateset:
            raise ParseError("--gateset is required with a gadget file")
        s = load_gateset(args.gateset, theta, _u_params(args))
        gadgets, labels = load_gadgets(args.gadgets)
        gs = build_generator_set(gadgets, s, tol, labels)
    rep = density_pipeline(gs, tol, args.word_depth, args.all_rules)
    out.line("generators\t" + " ".join(gs.labels))
    render_report(out, rep)
    return 0 if rep.dense else 2


def cmd_verify(args, tol, out) -> int:
    rows = verify_rows(args.case, tol)
    out.table(["case", "claim", "expected", "computed", "delta", "pass", "note"],
              [(r.case, r.claim, r.expected, r.computed, r.delta,
                "PASS" if r.passed else "FAIL", r.note) for r in rows])
    failed = [r for r in rows if not r.passed]
    out.line(f"{len(rows) - len(failed)}/{len(rows)} passed")
    return 0 if not failed else 1


_FAMILY_ALIASES = {"czz": "CZ_Z", "cz_z": "CZ_Z", "cz": "CZ", "cz_s": "CZ_S", "czs": "CZ_S",
                   "ccc": "CCC"}


def _family(name: str) -> tuple[str, str | None]:
    fam = _FAMILY_ALIASES.get(name.lower())
    return (fam, None) if fam else ("FRAGMENT", name)


def cmd_sweep(args, tol, out) -> int:
    fam, frag = _family(args.family)
    grid = cl.default_grid(args.steps)
    rows = cl.sweep(fam, grid, float(parse_angle(args.phi)), tol, frag, args.workers)
    out.table(["index", "theta", "interval", "status", "class", "pipeline", "consistent"],
              [(r.index, r.theta, r.interval, r.status, r.verdict.status, r.pipeline or "-",
                r.consistent) for r in rows])
    bad = sum(not r.consistent for r in rows)
    out.line(f"rows {len(rows)}\tflagged {sum(r.status != 'judged' for r in rows)}"
             f"\tcontradictions {bad}")
    return 0 if bad == 0 else 1


def cmd_search(args, tol, out) -> int:
    s = load_gateset(args.gateset, parse_angle(args.theta) if args.theta else None,
                     _u_params(args))
    if args.gateset.startswith("builtin:"):
        _, spec = _builtin_spec(args.gateset[8:], parse_angle(args.theta) if args.theta else None,
                                _u_params(args))
        s = cat.gate_set(spec)
    b = se.SearchBounds(args.max_qubits, args.max_depth, args.max_set, args.dedupe_eps,
                        args.budget)
    res = se.find_witnesses(s, b, tol, args.cursor, args.workers)
    if out.machine:
        out.record(res.to_dict())
    else:
        for k, v in res.to_dict().items():
            out.line(f"{k}\t{v}")
    if res.found:
        for g in res.gadgets:
            desc = " | ".join(" ".join(f"{p.gate}{list(p.targets)}" for p in m)
                              for m in g.circuit.moments)
            out.line(f"gadget {g.name}\tqubits={g.j}\tancilla={g.ancilla}"
                     f"\tpostselect={g.postselect}\t{desc}")
        rep = density_pipeline(res.witness, tol)
        out.line(f"re-verified\t{rep.overall}")
        render_report(out, rep)
        return 0 if rep.dense else 1
    return 2


def cmd_classify(args, tol, out) -> int:
    u = parse_unitary(args.u)
    fam, frag = _family(args.family)
    v = cl.classify(u, fam, frag, tol)
    if out.machine:
        out.record(v.to_dict())
        return 0
    out.line(f"{v.family}\t{v.status}\t{v.reason}")
    e = v.euler
    out.line(f"euler\talpha={e.alpha:.12g}\tphi={e.phi:.12g}\ttheta={e.theta:.12g}"
             f"\tlambda={e.lam:.12g}")
    if v.certificate:
        c = v.certificate
        out.line(f"certificate\tC={c.clifford}\tprefix={c.prefix}\talpha={c.alpha:.12g}"
                 f"\tphi={c.phi:.12g}\tlambda={c.lam:.12g}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gadgetcert", description=__doc__.splitlines()[0])
    p.add_argument("--eps", type=float, default=1e-9, help="equality tolerance")
    p.add_argument("--warn-band", type=float, default=1e-6)
    p.add_argument("--det-eps", type=float, default=1e-12)
    p.add_argument("--machine", action="store_true", help="JSON lines output")
    p.add_argument("--word-depth", type=int, default=1)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="run the density pipeline on a gadget set")
    c.add_argument("--gadgets", required=True, help="file or builtin:iqp|ccc|t4p|czz")
    c.add_argument("--gateset", help="file or builtin:NAME")
    c.add_argument("--theta")
    c.add_argument("--u")
    c.add_argument("--all-rules", action="store_true")

    v = sub.add_parser("verify-paper", help="regression table of reference values")
    v.add_argument("--case", default="all")

    w = sub.add_parser("sweep", help="theta sweep: classification vs pipeline")
    w.add_argument("--family", default="czz")
    w.add_argument("--steps", type=int, default=997)
    w.add_argument("--phi", default="0")
    w.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("search", help="search for a certified gadget set")
    s.add_argument("--gateset", required=True)
    s.add_argument("--theta")
    s.add_argument("--u")
    s.add_argument("--max-qubits", type=int, default=3)
    s.add_argument("--max-depth", type=int, default=4)
    s.add_argument("--max-set", type=int, default=6)
    s.add_argument("--dedupe-eps", type=float, default=1e-8)
    s.add_argument("--budget", type=int)
    s.add_argument("--cursor")
    s.add_argument("--workers", type=int, default=1)

    k = sub.add_parser("classify", help="simulability of a conjugated family")
    k.add_argument("--family", required=True)
    k.add_argument("--u", required=True)
    return p


COMMANDS = {"check": cmd_check, "verify-paper": cmd_verify, "sweep": cmd_sweep,
            "search": cmd_search, "classify": cmd_classify}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        tol = Tolerance(args.eps, args.det_eps, args.warn_band)
        out = Out(args.machine, args.command)
        return COMMANDS[args.command](args, tol, out)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (GadgetCertError, ValueError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
