import json

import pytest

from homstab import verifier
from homstab.verifier import (
    load_config, config_hash, predicted_ranges, run_axioms,
    run_connectivity, run_degree, run_homology, run_stability,
    report_emit, exit_code,
)
from homstab.cli import main as cli_main


def _cfg(**over):
    base = {
        "family": {"kind": "symmetric", "params": {}},
        "A": 0, "X": 1,
        "coeff": {"kind": "constant", "params": {"rank": 1}},
        "k": 2, "n_max": 4, "i_max": 1,
        "theorems": ["3.1"],
        "budgets": {"group_order": 5040, "bar_cells": 2_000_000,
                    "pi1_steps": 200_000},
        "seed": 0,
    }
    base.update(over)
    return load_config(base)


def test_config_validation():
    with pytest.raises(ValueError):
        _cfg(k=1)
    with pytest.raises(ValueError):
        _cfg(theorems=["3.4"], k=2)   # abelian ranges need k >= 3
    with pytest.raises(ValueError):
        _cfg(X=0)


def test_config_hash_stable():
    assert config_hash(_cfg()) == config_hash(_cfg())
    assert config_hash(_cfg()) != config_hash(_cfg(n_max=5))


def test_predicted_ranges_31():
    p = predicted_ranges("3.1", 2)
    assert p.epi_max(4) == 2 and p.iso_max(4) == 1
    assert p.epi_max(5) == 2 and p.iso_max(5) == 2


def test_predicted_ranges_34():
    p = predicted_ranges("3.4", 3)
    assert p.epi_max(4) == 1 and p.iso_max(4) == 0
    with pytest.raises(ValueError):
        predicted_ranges("3.4", 2)


def test_predicted_ranges_A_and_420():
    p = predicted_ranges("A", 2, r=1, N=0)
    assert p.epi_max(4) == 1 and p.iso_max(4) == 0
    v = predicted_ranges("4.20", 2, r=1, N=0)
    assert v.rel_vanish_from(1) == 4
    s = predicted_ranges("4.20", 2, r=1, N=0, split=True)
    assert s.rel_vanish_from(1) == 3


def test_epi_iso_gap_bound():
    for theorem in ("3.1", "A"):
        p = predicted_ranges(theorem, 2, r=1)
        for n in range(0, 40):
            assert 0 <= p.epi_max(n) - p.iso_max(n) <= 2


def test_run_axioms_passes():
    rep = run_axioms(_cfg(n_max=3))
    assert rep["passed"]
    assert any(c["name"].startswith("groupoid") for c in rep["checks"])


def test_run_connectivity_symmetric():
    rep = run_connectivity(_cfg(n_max=4))
    assert rep["passed"]
    for cell in rep["cells"]:
        assert cell["meets_target_topological"]


def test_run_degree_constant():
    rep = run_degree(_cfg())
    assert rep["degree"]["r"] == 0 and rep["degree"]["N"] == 0
    assert rep["split"]["witness_found"]


def test_run_homology_grid_and_cache(tmp_path):
    cfg = _cfg(n_max=3)
    rep = run_homology(cfg, cache_dir=str(tmp_path), jobs=2)
    values = {(c["n"], c["i"]): c["H"] for c in rep["cells"]}
    assert values[(3, 1)] == "Z/2"
    assert values[(2, 0)] == "Z"
    rep2 = run_homology(cfg, cache_dir=str(tmp_path))
    assert all(c["cached"] for c in rep2["cells"])


def test_run_stability_constant_consistent():
    rep = run_stability(_cfg(n_max=5, i_max=1), jobs=2)
    assert rep["summary"]["VIOLATION"] == 0
    assert rep["summary"]["consistent"] >= 5
    assert exit_code(rep) == 0
    # H_1 stabilization observed iso from n = 2 on
    cells = {(c["n"], c["i"]): c for c in rep["cells"]}
    assert cells[(3, 1)]["is_iso"]


def test_run_stability_budget_starved():
    cfg = _cfg(n_max=3, i_max=1)
    cfg.budgets["bar_cells"] = 10
    rep = run_stability(cfg)
    assert rep["summary"]["skipped"] > 0
    assert rep["summary"]["VIOLATION"] == 0
    assert exit_code(rep) == 3
    skipped = [c for c in rep["cells"] if c["verdict"] == "skipped"]
    assert all("repro" in c for c in skipped)


def test_twisted_grid_with_la_420():
    cfg = _cfg(coeff={"kind": "standard", "params": {"r_max": 2,
                                                     "N_max": 0}},
               theorems=["A", "4.20"], n_max=4, i_max=1)
    rep = run_stability(cfg, jobs=2)
    assert rep["summary"]["VIOLATION"] == 0
    assert rep["degree"] == {"r": 1, "N": 0, "split": True, "window": 4}
    for c in rep["cells"]:
        if "les_exact" in c:
            assert c["les_exact"]


def test_report_determinism_across_jobs():
    cfg = _cfg(n_max=4, i_max=1)
    r1 = run_stability(cfg, jobs=1)
    r8 = run_stability(cfg, jobs=8)
    t1 = json.dumps(r1, sort_keys=True)
    t8 = json.dumps(r8, sort_keys=True)
    assert t1 == t8


def test_report_emit_json_roundtrip(capsys):
    rep = run_degree(_cfg())
    text = report_emit(rep, "json")
    assert json.loads(text)["command"] == "degree"
    report_emit(rep, "table")
    out = capsys.readouterr().out
    assert "degree" in out


def test_cli_exit_codes(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "family": {"kind": "symmetric", "params": {}},
        "A": 0, "X": 1,
        "coeff": {"kind": "constant", "params": {}},
        "k": 2, "n_max": 3, "i_max": 1,
        "theorems": ["3.1"], "budgets": {}, "seed": 0,
    }))
    assert cli_main(["stability", "--config", str(path)]) == 0
    capsys.readouterr()
    assert cli_main(["stability", "--config", str(path),
                     "--budget-cells", "10"]) == 3
    capsys.readouterr()


def test_custom_coeff_loader(tmp_path, sym_cat):
    # rank-1 trivial system written out as JSON
    from homstab.groupoids import make_symmetric
    desc = {
        "n_max": 2,
        "modules": [
            {"free_rank": 1, "torsion": [],
             "actions": [[[1]] for _ in
                         make_symmetric().aut(n).generators]}
            for n in range(3)
        ],
        "s_mats": [[[1]], [[1]]],
    }
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(desc))
    cfg = _cfg(coeff={"kind": "custom",
                      "params": {"path": str(path), "r_max": 1,
                                 "N_max": 0}},
               n_max=2)
    rep = run_degree(cfg)
    assert rep["degree"]["r"] == 0
