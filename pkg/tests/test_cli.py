import json

import pytest

from trotterlab.cli import main


def _run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, json.loads(out)


def test_lattice_output_and_idempotence(capsys, tmp_path):
    rc, doc = _run(capsys, ["lattice", "--family", "acene", "--n", "1"])
    assert rc == 0
    assert doc["n_sites"] == 6
    assert doc["n_bonds"] == 6
    assert doc["version"]
    assert doc["config"]["family"] == "acene"
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    main(["lattice", "--family", "acene", "--n", "1", "--out", str(p1)])
    main(["lattice", "--family", "acene", "--n", "1", "--out", str(p2)])
    assert p1.read_bytes() == p2.read_bytes()


def test_config_file_with_flag_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "acene", "size_n": 1}))
    rc, doc = _run(capsys, ["lattice", "--config", str(cfg), "--n", "2"])
    assert rc == 0
    assert doc["n_sites"] == 10  # flag wins over the file


def test_malformed_config_exits_2(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["lattice", "--family", "acene"])  # size_n missing
    assert exc.value.code == 2
    record = json.loads(capsys.readouterr().err)
    assert record["field"] == "size_n"

    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"family": "grahpene", "size_n": 2}))
    with pytest.raises(SystemExit) as exc:
        main(["lattice", "--config", str(cfg)])
    assert exc.value.code == 2
    record = json.loads(capsys.readouterr().err)
    assert record["field"] == "family"


def test_hamiltonian_counts(capsys):
    rc, doc = _run(capsys, ["hamiltonian", "--family", "acene", "--n", "3"])
    assert rc == 0
    assert doc["potential_terms"] == 406
    assert doc["shifted_potential_terms"] == 290


def test_norms_seeded_repeatable(capsys):
    argv = ["norms", "--family", "acene", "--n", "1", "--samples", "500",
            "--seed", "7"]
    rc1, d1 = _run(capsys, argv)
    rc2, d2 = _run(capsys, argv)
    assert rc1 == rc2 == 0
    assert d1["vtv"]["value"] == d2["vtv"]["value"]
    assert d1["vtv"]["seed"] == 7
    assert d1["vtv"]["standard_error"] > 0


def test_freefermion_subcommand(capsys):
    rc, doc = _run(capsys, ["freefermion", "--family", "acene", "--n", "3",
                            "--samples", "200", "--seed", "1"])
    assert rc == 0
    assert doc["gate_counts"] == {"rotations": 52, "t_gates": 104}
    assert doc["worst_case"]["constant"] > 0
    assert doc["worst_case"]["r_squared"] > 0.999
    assert doc["average_case"]["seed"] == 1


def test_freefermion_missing_tiling(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["freefermion", "--family", "acene", "--n", "2"])
    assert exc.value.code == 2
    record = json.loads(capsys.readouterr().err)
    assert record["field"] == "tiling"


def test_spectral_subcommand_with_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TROTTERLAB_CACHE", str(tmp_path))
    argv = ["spectral", "--family", "acene", "--n", "1", "--scheme", "SO",
            "--t", "0.01", "--states", "2"]
    rc, doc = _run(capsys, argv)
    assert rc == 0
    cached = list(tmp_path.glob("eig_*.npz"))
    assert len(cached) == 1
    rc2, doc2 = _run(capsys, argv)  # second run hits the checkpoint
    assert doc2["states"] == doc["states"]
    gap = doc["pairs"][0]
    assert abs(gap["exact_gap"] - gap["effective_gap"]) < 1e-3


def test_resources_per_step_file(capsys, tmp_path):
    ps = tmp_path / "per_step.json"
    ps.write_text(json.dumps({"n_rotations": 342, "n_t_gates": 104,
                              "n_sites": 14}))
    rc, doc = _run(capsys, ["resources", "--per-step", str(ps), "--mode", "gap",
                            "--t", "0.1"])
    assert rc == 0
    assert doc["n_steps"] == 840
    assert doc["n_runs"] == 2
    assert abs(doc["total_T"] / 2 - 1.0e7) / 1.0e7 < 0.01
    with pytest.raises(SystemExit) as exc:
        main(["resources", "--per-step", str(ps), "--mode", "error"])
    assert exc.value.code == 2
    record = json.loads(capsys.readouterr().err)
    assert record["field"] == "constant"


def test_resources_hwp_from_molecule(capsys):
    rc, doc = _run(capsys, ["resources", "--family", "triangulene", "--n", "2",
                            "--hwp"])
    assert rc == 0
    assert doc["hwp"]["rotations_per_step"] < doc["inputs"]["n_rotations"]
    n = 13  # 2-triangulene sites
    assert doc["logical_qubits"] == 2 * n + 1 + (n - 1) + 1


def test_reproduce_table1(capsys):
    rc, doc = _run(capsys, ["reproduce", "table1"])
    assert rc == 0
    assert doc["overall"] == "pass"
    assert len(doc["rows"]) == 6


def test_reproduce_fig7(capsys):
    rc, doc = _run(capsys, ["reproduce", "fig7"])
    assert rc == 0
    assert doc["overall"] == "pass"


def test_reproduce_fig5(capsys):
    rc, doc = _run(capsys, ["reproduce", "fig5"])
    assert rc == 0
    row = doc["rows"][0]
    assert abs(row["computed"] - row["reference"]) <= row["tolerance"]


def test_reproduce_table4_desk(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TROTTERLAB_CACHE", str(tmp_path))
    rc, doc = _run(capsys, ["reproduce", "table4"])
    assert rc == 0
    assert doc["overall"] == "pass"
    assert {r["molecule"] for r in doc["rows"]} == {"acene2"}
