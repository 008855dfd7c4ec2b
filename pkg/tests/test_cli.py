import json
from pathlib import Path

from subtile import build, serialize_graph, verify_tiling
from subtile.certs import parse_tiling_certificate
from subtile.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_params_c4(capsys, tmp_path):
    path = tmp_path / "c4.el"
    path.write_text(serialize_graph(build("C4")))
    code, out, _ = run_cli(capsys, "params", str(path))
    assert code == 0
    assert "xi 2\n" in out
    assert "hcf INFINITY" in out
    assert "xi_star 2" in out
    assert "threshold_even 1/2" in out and "threshold_odd 1/2" in out


def test_params_accepts_expressions(capsys):
    code, out, _ = run_cli(capsys, "params", "K7", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["xi"] == "4/3" and payload["hcf"] == 2
    assert payload["threshold_odd"] == "1/2"


def test_report_kr_table(capsys):
    code, out, _ = run_cli(capsys, "report", "--family", "kr", "--max", "8")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("pattern\t")
    rows = {ln.split("\t")[0]: ln.split("\t") for ln in lines[1:]}
    assert rows["K7"][1:6] == ["4/3", "2", "3/2", "1/3", "1/2"]
    assert all(row[-1] == "True" for row in rows.values())


def test_report_json_schema(capsys):
    code, out, _ = run_cli(capsys, "report", "--family", "kr", "--max", "6",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert len(payload["rows"]) == 5
    assert all(row["match"] for row in payload["rows"])


def test_report_deterministic(capsys):
    _, first, _ = run_cli(capsys, "report", "--family", "kr", "--max", "8")
    _, second, _ = run_cli(capsys, "report", "--family", "kr", "--max", "8")
    assert first == second


def test_tile_round_trip(capsys, tmp_path):
    host = tmp_path / "host.el"
    pattern = tmp_path / "pattern.el"
    host.write_text(serialize_graph(build("C6")))
    pattern.write_text(serialize_graph(build("K3")))
    code, out, _ = run_cli(capsys, "tile", str(host), str(pattern))
    assert code == 0
    assert out.startswith("TILING FOUND\n")
    cert = parse_tiling_certificate(out.split("\n", 1)[1])
    assert verify_tiling(build("C6"), build("K3"), cert)


def test_tile_negative(capsys):
    code, out, _ = run_cli(capsys, "tile", "K(1,3)", "K2")
    assert code == 0 and "NO TILING" in out


def test_obstruct(capsys):
    from subtile import parse_obstruction, validate_obstruction
    from subtile.tiling import serialize_obstruction

    code, out, _ = run_cli(capsys, "obstruct", "K(3,9)", "K5")
    assert code == 0
    assert "OBSTRUCTION ratio" in out and "3 > 2" in out
    # the emitted certificate block re-validates when re-read
    block = out.split("\n", 1)[1]
    cert = parse_obstruction(block)
    assert validate_obstruction(build("K(3,9)"), build("K5"), cert)
    assert serialize_obstruction(cert) == block

    code, out, _ = run_cli(capsys, "obstruct", "C6", "K3")
    assert code == 0 and "NO OBSTRUCTION" in out


def test_gadget_emit_and_verify(capsys):
    code, out, _ = run_cli(capsys, "gadget", "K3", "--kind", "T1HAT",
                           "--verify")
    assert code == 0
    assert "# kind T1HAT" in out
    assert "VERIFICATION OK" in out


def test_extremal_cli(capsys):
    code, out, _ = run_cli(capsys, "extremal", "K7", "--n", "9",
                           "--which", "P34", "--brute-force")
    assert code == 0
    assert "# which P34" in out
    assert "check brute_force: pass" in out
    assert "VERIFICATION OK" in out


def test_hat_cli(capsys):
    code, out, _ = run_cli(capsys, "hat", "K7")
    assert code == 0
    assert "order 16" in out and "sides 7 9" in out and "imbalance 2" in out


def test_dominate_cli(capsys, tmp_path):
    path = tmp_path / "pet.el"
    path.write_text((FIXTURES / "petersen.el").read_text())
    code, out, _ = run_cli(capsys, "dominate", str(path))
    assert code == 0
    assert "exact 3" in out and "bound_holds True" in out


def test_absorb_cli(capsys):
    code, out, _ = run_cli(capsys, "absorb",
                           str(FIXTURES / "absorb_fixture.system"),
                           "--p", "1/4", "--seed", "42", "--cap", "8")
    assert code == 0
    golden = (FIXTURES / "absorb_golden.selection").read_text()
    assert out.startswith(golden)
    assert "check disjointness: pass" in out


def test_usage_error_exit_2(capsys):
    assert run_cli(capsys, "params")[0] == 2
    assert run_cli(capsys, "unknown-command")[0] == 2
    assert run_cli(capsys, "params", "no_such_file.el")[0] == 2


def test_budget_exceeded_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("SUBTILE_BUDGET", "3")
    code, _, err = run_cli(capsys, "tile", "C6", "K3")
    assert code == 3
    assert "nodes" in err


def test_hat_infinite_imbalance_is_input_error(capsys):
    code, _, err = run_cli(capsys, "hat", "C4")
    assert code == 2
    assert "imbalance" in err


def test_graph6_input(capsys, tmp_path):
    path = tmp_path / "c4.g6"
    path.write_text("Cl\n")
    code, out, _ = run_cli(capsys, "params", str(path), "--format", "graph6")
    assert code == 0 and "xi 2\n" in out
