import json
import math

import pytest

import condcasimir.crosscheck as crosscheck
from condcasimir.cli import main


@pytest.fixture(autouse=True)
def _clean_perturb():
    yield
    crosscheck._PERTURB.clear()


def _run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_planar_perfect(capsys):
    code, payload = _run_json(capsys, ["planar", "--eta", "inf"])
    assert code == 0
    assert payload["eta"] == "inf"
    assert payload["q_total"] == pytest.approx(-math.pi**2 / 720.0, rel=1e-8)
    assert payload["q_tm"] == pytest.approx(payload["q_te"], rel=1e-10)


def test_planar_zero_eta(capsys):
    code, payload = _run_json(capsys, ["planar", "--eta", "0"])
    assert code == 0
    assert payload["q_total"] == 0.0


def test_planar_energy_ev(capsys):
    code, payload = _run_json(
        capsys, ["planar", "--eta", "inf", "--d", "100nm", "--unit", "eV"])
    assert code == 0
    assert payload["separation_nm"] == 100.0
    assert payload["unit"] == "eV"
    expect = 197.3269804 * (-math.pi**2 / 720.0) / 1e6
    assert payload["energy"] == pytest.approx(expect, rel=1e-8)


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["planar", "--eta", "garbage"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["planar", "--eta", "1", "--d", "-5nm"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["planar"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_negative_tol_exit_2(capsys):
    code = main(["planar", "--eta", "1", "--tol=-1e-8"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_sphere_breakdown(capsys):
    code, payload = _run_json(
        capsys, ["sphere", "--eta", "inf", "--l-max", "20"])
    assert code == 0
    assert payload["q_te_as"] == pytest.approx(17.0 / 128.0, rel=1e-14)
    assert payload["q_tm_as"] == pytest.approx(-11.0 / 128.0, rel=1e-14)
    assert payload["q_total"] == pytest.approx(0.0462, abs=1e-3)


def test_sphere_energy(capsys):
    code, payload = _run_json(
        capsys, ["sphere", "--eta", "2", "--l-max", "20",
                 "--radius", "50nm", "--unit", "eV"])
    assert code == 0
    assert payload["radius_nm"] == 50.0
    assert payload["energy"] == pytest.approx(
        197.3269804 * payload["q_total"] / 50.0, rel=1e-12)


def test_sweep_planar_csv_deterministic(capsys, tmp_path):
    argv = ["sweep", "--geometry", "planar", "--eta-min", "0.1",
            "--eta-max", "10", "--points", "3", "--log", "--csv"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    lines = first.splitlines()
    assert lines[0] == "eta,q_te,q_tm,q_total,abs_error"
    assert len(lines) == 4
    row = [float(tok) for tok in lines[1].split(",")]
    assert row[0] == pytest.approx(0.1, rel=1e-15)
    assert row[3] == pytest.approx(row[1] + row[2], rel=1e-12)
    # --out writes identical bytes with LF endings
    path = tmp_path / "sweep.csv"
    assert main(argv + ["--out", str(path)]) == 0
    capsys.readouterr()
    assert path.read_bytes() == first.encode()
    assert b"\r" not in path.read_bytes()


def test_sweep_bad_range_exit_2(capsys):
    code = main(["sweep", "--geometry", "planar", "--eta-min", "5",
                 "--eta-max", "1", "--csv"])
    assert code == 2
    code = main(["sweep", "--geometry", "planar", "--eta-min", "1",
                 "--eta-max", "2", "--points", "1", "--csv"])
    assert code == 2
    capsys.readouterr()


def test_sweep_sphere_with_figure(capsys, tmp_path):
    fig = tmp_path / "curves.png"
    code, payload = _run_json(
        capsys, ["sweep", "--geometry", "sphere", "--eta-min", "0.5",
                 "--eta-max", "2", "--points", "2", "--l-max", "20",
                 "--fig", str(fig)])
    assert code == 0
    assert payload["columns"] == ["eta", "q_te", "q_tm", "q_total",
                                  "q_te_as", "q_te_num", "q_tm_as",
                                  "q_tm_num", "abs_error"]
    assert len(payload["rows"]) == 2
    for row in payload["rows"]:
        assert row["q_total"] == pytest.approx(row["q_te"] + row["q_tm"],
                                               rel=1e-12)
    assert fig.exists() and fig.stat().st_size > 0


def test_verify_ok(capsys):
    code, report = _run_json(capsys, ["verify", "--eta-grid", "0.5,2.0"])
    assert code == 0
    assert report["ok"]
    assert report["eta_grid"] == [0.5, 2.0]


def test_verify_perturbed_fails(capsys):
    code, report = _run_json(
        capsys, ["verify", "--eta-grid", "2.0", "--perturb", "M1=1e-6"])
    assert code == 3
    assert not report["ok"]
    assert not report["pieces"]["M1"]["ok"]


def test_verify_bad_perturb(capsys):
    code = main(["verify", "--perturb", "NOPE=1"])
    assert code == 2
    capsys.readouterr()


def test_constants(capsys):
    code, payload = _run_json(capsys, ["constants"])
    assert code == 0
    for key in ("q_planar_perfect", "q_sphere_perfect", "eta_critical",
                "eta_graphene", "hbar_c_ev_nm", "alpha"):
        assert key in payload
    assert payload["q_planar_perfect"]["value"] == pytest.approx(
        -math.pi**2 / 720.0, rel=1e-15)
