import json
import subprocess
import sys
from pathlib import Path

import pytest

from hkgeom.cli import main

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"
GOLDEN = FIXTURES / "golden"

GOLDEN_RUNS = [
    ("lattice_signature_k3.json", ["lattice", "signature", "-i", "k3_lattice.json"], 0),
    ("llv_closure_diag.json", ["llv", "closure", "-i", "llv_closure_job.json"], 0),
    ("llv_fujiki_k3.json", ["llv", "fujiki", "-i", "llv_fujiki_job.json"], 0),
    ("llv_hodge_diag.json", ["llv", "hodge", "-i", "hodge_job.json"], 0),
    ("cech_solve_octahedron.json", ["cech", "solve", "-i", "cech_solve_octahedron.json"], 1),
    (
        "cech_cohomology_octahedron.json",
        ["cech", "cohomology", "-i", "cech_cohomology_job.json"],
        0,
    ),
    ("walls_enum_u3.json", ["walls", "enum", "-i", "walls_enum_job.json"], 0),
    ("spinor_swap_u3.json", ["lattice", "spinor", "-i", "spinor_job.json"], 0),
    (
        "period_sample_u3_seed7.json",
        ["period", "sample", "-i", "u3_lattice.json", "--seed", "7"],
        0,
    ),
    ("twistor_chain_u3.json", ["twistor", "chain", "-i", "chain_job_u3.json"], 0),
    ("period_cone_u3.json", ["period", "cone", "-i", "cone_job_u3.json"], 0),
]


def run_cli(argv, capsys):
    argv = list(argv)
    for i, a in enumerate(argv):
        if a == "-i":
            argv[i + 1] = str(FIXTURES / argv[i + 1])
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("golden,argv,expected_code", GOLDEN_RUNS)
def test_golden_outputs(golden, argv, expected_code, capsys):
    code, out = run_cli(argv, capsys)
    assert code == expected_code
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")
    # round trip: the serialized output parses back to the same object
    assert json.dumps(json.loads(out), sort_keys=True) + "\n" == out


def test_byte_identical_repeat_runs(capsys):
    _, out1 = run_cli(["period", "sample", "-i", "u3_lattice.json", "--seed", "7"], capsys)
    _, out2 = run_cli(["period", "sample", "-i", "u3_lattice.json", "--seed", "7"], capsys)
    assert out1 == out2


def test_signature_expected_value(capsys):
    code, out = run_cli(["lattice", "signature", "-i", "k3_lattice.json"], capsys)
    assert code == 0
    assert json.loads(out)["result"] == [3, 19]


def test_llv_closure_expected_value(capsys):
    code, out = run_cli(["llv", "closure", "-i", "llv_closure_job.json"], capsys)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["dimension"] == 10
    assert result["by_degree"] == {"-2": 3, "0": 4, "2": 3}


def test_cech_solve_obstruction_exit_code(capsys):
    code, out = run_cli(["cech", "solve", "-i", "cech_solve_octahedron.json"], capsys)
    assert code == 1
    data = json.loads(out)
    assert data["ok"] is False
    assert data["obstruction"] == [1]


def test_usage_error_exit_3(capsys):
    code = main(["lattice", "nonsense", "-i", "whatever"])
    out = capsys.readouterr().out
    assert code == 3
    assert json.loads(out)["error"]["type"] == "usage"


def test_domain_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rank": 2, "gram": [[1, 1], [1, 1]]}))
    code = main(["lattice", "signature", "-i", str(bad)])
    out = capsys.readouterr().out
    assert code == 1
    data = json.loads(out)
    assert data["ok"] is False
    assert "degenerate" in data["error"]["message"]


def test_numerical_error_exit_2(tmp_path, capsys):
    job = json.loads((FIXTURES / "chain_job_u3.json").read_text())
    bad = tmp_path / "chain.json"
    bad.write_text(json.dumps(job))
    code = main(["twistor", "chain", "-i", str(bad), "--max-links", "0"])
    out = capsys.readouterr().out
    assert code == 2
    assert json.loads(out)["error"]["type"] == "numerical"


def test_sample_requires_seed(capsys):
    code, out = run_cli(["period", "sample", "-i", "u3_lattice.json"], capsys)
    assert code == 1
    assert "seed" in json.loads(out)["error"]["message"]


def test_tolerance_flag_roundtrip(tmp_path, capsys):
    # a slightly off-isotropic point passes only with a loosened tolerance
    job = {
        "lattice": json.loads((FIXTURES / "u3_lattice.json").read_text()),
        "point": {"re": [1, 1, 1e-5, 0, 0, 0], "im": [0, 0, 1, 1, 0, 0]},
    }
    path = tmp_path / "point.json"
    path.write_text(json.dumps(job))
    code = main(["period", "validate", "-i", str(path)])
    capsys.readouterr()
    assert code == 1
    code = main(["period", "validate", "-i", str(path), "--tol-iso", "1e-2"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["ok"]


def test_config_file_and_env(tmp_path, capsys, monkeypatch):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"seed": 7}))
    monkeypatch.setenv("HKGEOM_CONFIG", str(cfgfile))
    code, out = run_cli(["period", "sample", "-i", "u3_lattice.json"], capsys)
    assert code == 0
    assert out == (GOLDEN / "period_sample_u3_seed7.json").read_text(encoding="utf-8")


def test_walls_ueps_subcommand(tmp_path, capsys):
    job = {
        "lattice": json.loads((FIXTURES / "u3_lattice.json").read_text()),
        "span": json.loads((FIXTURES / "diagonal_plane_u3.json").read_text())["span"],
        "vector": [1, -1, 0, 0, 0, 0],
        "eps": 0.5,
    }
    path = tmp_path / "ueps.json"
    path.write_text(json.dumps(job))
    code = main(["walls", "ueps", "-i", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["result"]["contains"] is True


def test_irrational_subcommands(tmp_path, capsys):
    job = {"vectors": [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0]]}
    path = tmp_path / "vec.json"
    path.write_text(json.dumps(job))
    code = main(["irrational", "closure", "-i", str(path), "--mode", "exact"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["result"]["closure_dim"] == 2
    code = main(["irrational", "test", "-i", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["result"]["fully_irrational"] is False


def test_period_convert_round_trip(tmp_path, capsys):
    job = {
        "lattice": json.loads((FIXTURES / "u3_lattice.json").read_text()),
        "point": {"re": [1, 1, 0, 0, 0, 0], "im": [0, 0, 1, 1, 0, 0]},
    }
    path = tmp_path / "pt.json"
    path.write_text(json.dumps(job))
    code = main(["period", "convert", "-i", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    plane = json.loads(out)["result"]["plane"]
    job2 = {"lattice": job["lattice"], "plane": plane}
    path.write_text(json.dumps(job2))
    code = main(["period", "convert", "-i", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    point = json.loads(out)["result"]["point"]
    assert point["re"] == pytest.approx([x / 2**0.5 for x in [1, 1, 0, 0, 0, 0]])


def test_fixtures_are_current():
    result = subprocess.run(
        [sys.executable, str(REPO / "scripts" / "regen_fixtures.py")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0, result.stdout + result.stderr


def test_console_script_smoke():
    result = subprocess.run(
        [sys.executable, "-m", "hkgeom.cli", "lattice", "signature", "-i",
         str(FIXTURES / "u3_lattice.json")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["result"] == [3, 3]
