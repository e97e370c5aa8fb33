import json
import math
from fractions import Fraction

import numpy as np
import pytest

from gadgetcert import catalog as cat
from gadgetcert.cli import main, parse_angle, parse_unitary
from gadgetcert.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_angle():
    a = parse_angle("pi/4")
    assert a.pi_multiple == Fraction(1, 4) and a.value == pytest.approx(math.pi / 4)
    assert parse_angle("-3pi/4").pi_multiple == Fraction(-3, 4)
    assert parse_angle("2*pi/3").pi_multiple == Fraction(2, 3)
    assert parse_angle("0.7").pi_multiple is None
    with pytest.raises(ParseError):
        parse_angle("pie")


def test_parse_unitary_order():
    u = parse_unitary("Rz(0.3)*Rx(1.0)")
    assert np.allclose(u, cat.rz(0.3) @ cat.rx(1.0))
    assert np.allclose(parse_unitary("T*H"), cat.T @ cat.H)
    with pytest.raises(ParseError):
        parse_unitary("Q")


def test_check_builtin_iqp(capsys):
    code, out, _ = run(capsys, "check", "--gadgets", "builtin:iqp")
    assert code == 0 and "DENSE" in out


def test_check_degenerate_theta(capsys):
    code, _, err = run(capsys, "check", "--gadgets", "builtin:czz", "--theta", "1.5707963")
    assert code == 1
    assert err.startswith("error:") and "DegenerateGadget" in err
    assert len(err.strip().splitlines()) == 1


def _gateset_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"name": "iqp", "gates": {
        "HTH": {"builtin": "H"}, "CZ": {"builtin": "CZ"}}}))
    return str(p)


def test_check_empty_gadget_file(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text("[]")
    code, out, _ = run(capsys, "check", "--gadgets", str(g), "--gateset", _gateset_file(tmp_path))
    assert code == 2 and "INCONCLUSIVE" in out and "elementary" in out


def test_check_gadget_file_roundtrip(capsys, tmp_path):
    s = tmp_path / "s.json"
    s.write_text(json.dumps({"gates": {
        "H": {"builtin": "H"}, "T": {"builtin": "T"},
        "Tdg": [[[1, 0], [0, 0]], [[0, 0], [math.sqrt(0.5), -math.sqrt(0.5)]]]}}))
    g = tmp_path / "g.json"
    g.write_text(json.dumps([
        {"label": "A", "qubits": 1, "moments": [[{"gate": "H", "targets": [0]}],
                                               [{"gate": "T", "targets": [0]}],
                                               [{"gate": "H", "targets": [0]}]]},
        {"label": "Ainv", "qubits": 1, "moments": [[{"gate": "H", "targets": [0]}],
                                                  [{"gate": "Tdg", "targets": [0]}],
                                                  [{"gate": "H", "targets": [0]}]]},
    ]))
    code, out, _ = run(capsys, "check", "--gadgets", str(g), "--gateset", str(s))
    # a single elliptic element and its inverse commute
    assert code == 2 and "INCONCLUSIVE" in out


def test_malformed_json_reports_position(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text('[\n  {"qubits": 1,,}\n]')
    code, _, err = run(capsys, "check", "--gadgets", str(g), "--gateset", _gateset_file(tmp_path))
    assert code == 1 and err.startswith("error:") and "line 2" in err


def test_unknown_command_is_error(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1 and err.startswith("error:")


def test_verify_case_filters(capsys):
    code, out, _ = run(capsys, "verify-paper", "--case", "iqp")
    rows = [l for l in out.splitlines()[1:] if l.startswith("iqp\t")]
    assert len(rows) == 6
    # the printed beta(B) carries a sign error, so this case cannot pass in full
    assert code == 1
    code, out, _ = run(capsys, "verify-paper", "--case", "t4p")
    assert code == 0 and "sqrt(409)/25" in out


def test_sweep_small(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "czz", "--steps", "24")
    assert code == 0 and "DENSE" in out


def test_classify_cmd(capsys):
    code, out, _ = run(capsys, "classify", "--family", "ccc", "--u", "Rz(0.3)*Rx(1.0)")
    assert code == 0 and "intractable" in out


def test_search_cmd(capsys):
    code, out, _ = run(capsys, "search", "--gateset", "builtin:iqp", "--max-depth", "4")
    assert code == 0 and "re-verified\tDENSE" in out


def test_machine_output_is_stable(capsys):
    args = ["--machine", "check", "--gadgets", "builtin:ccc"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    lines = [json.loads(l) for l in a.splitlines()]
    assert lines[0]["tool"] == "gadgetcert" and lines[0]["command"] == "check"
    assert any(r.get("report", {}).get("overall") == "DENSE" for r in lines[1:])


def test_machine_complex_as_pairs(capsys):
    _, out, _ = run(capsys, "--machine", "check", "--gadgets", "builtin:iqp")
    rec = json.loads(out.splitlines()[1])
    inv = rec["report"]["invariants"][0]
    assert isinstance(inv["beta"], list) and len(inv["beta"]) == 2
