"""Verification runs: configuration, range predicates, grids, reports.

A run is described by a JSON config (family, coefficient system, slope
k, window, theorems, budgets).  The verifier evaluates the chosen
stability range predicates on an (n, i) grid of observed stabilization
maps, plus axiom, connectivity, and degree runs.  Reports are
deterministic given (config, toolkit version) and independent of the
parallelism width; wall-clock timings are kept out of the canonical
JSON for that reason.
"""

from __future__ import annotations

import json
import hashlib
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .groups import cyclic_group, GroupBudgetExceeded
from .groupoids import (make_symmetric, make_wreath, make_general_linear,
                        FiniteRing, verify_groupoid_axioms)
from .bracket import BracketCategory
from .simplicial import (build_W, build_S, lift_profile,
                         connectivity_certificate)
from .exact_linalg import FGAbelianGroup
from .homology_engine import (BarBudget, BarBudgetExceeded, GModule,
                              bar_homology, stabilization_status,
                              relative_homology, les_exact_at_rel,
                              HomologyCache)
from .coeffsys import (CoefficientSystem, constant_system, standard_system,
                       tensor_power, abelian_constant_system, internalize,
                       abelianization_limit, BurauSystem, degree_profile,
                       split_witness, split_degree_profile)

SCHEMA_VERSION = 1
BANNER = ("Any VIOLATION entry indicates a defect in this toolkit, "
          "never a refutation: the stability theorems are proved.")


# ----------------------------------------------------------------------
# configuration


@dataclass
class FamilyConfig:
    raw: dict
    family_kind: str
    family_params: dict
    A: int
    X: int
    coeff_kind: str
    coeff_params: dict
    k: int
    n_max: int
    i_max: int
    theorems: list
    budgets: dict
    seed: int

    def group_budget(self) -> int:
        return int(self.budgets.get("group_order", 5040))

    def bar_budget(self) -> BarBudget:
        return BarBudget(
            max_cells=int(self.budgets.get("bar_cells", 2_000_000)),
            order_limit_deg2=int(self.budgets.get("order_limit_deg2", 120)),
            order_limit_deg3=int(self.budgets.get("order_limit_deg3", 24)))

    def pi1_budget(self) -> int:
        return int(self.budgets.get("pi1_steps", 10 ** 6))


ABELIAN_COEFFS = {"abelian_constant", "internalized_abelian"}


def load_config(source) -> FamilyConfig:
    """Validate and normalize a config given as a dict or a JSON path."""
    if isinstance(source, dict):
        raw = source
    else:
        with open(source) as fh:
            raw = json.load(fh)
    fam = raw.get("family", {})
    coeff = raw.get("coeff", {"kind": "constant", "params": {}})
    cfg = FamilyConfig(
        raw=raw,
        family_kind=fam.get("kind", "symmetric"),
        family_params=fam.get("params", {}),
        A=int(raw.get("A", 0)),
        X=int(raw.get("X", 1)),
        coeff_kind=coeff.get("kind", "constant"),
        coeff_params=coeff.get("params", {}),
        k=int(raw.get("k", 2)),
        n_max=int(raw.get("n_max", 4)),
        i_max=int(raw.get("i_max", 1)),
        theorems=list(raw.get("theorems", ["3.1"])),
        budgets=dict(raw.get("budgets", {})),
        seed=int(raw.get("seed", 0)),
    )
    if cfg.A < 0 or cfg.X < 1:
        raise ValueError("need A >= 0 and X >= 1")
    if cfg.k < 2:
        raise ValueError("slope parameter k must be at least 2")
    wants_abelian = cfg.coeff_kind in ABELIAN_COEFFS or "3.4" in cfg.theorems
    if wants_abelian and cfg.k < 3:
        raise ValueError("abelian/internalized ranges require k >= 3")
    return cfg


def config_hash(cfg: FamilyConfig) -> str:
    blob = json.dumps(cfg.raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def build_instance(cfg: FamilyConfig):
    budget = cfg.group_budget()
    kind = cfg.family_kind
    if kind == "symmetric":
        return make_symmetric(budget=budget)
    if kind == "wreath":
        m = int(cfg.family_params.get("cyclic_order", 2))
        return make_wreath(cyclic_group(m), budget=budget)
    if kind == "gl":
        q = int(cfg.family_params.get("modulus", 2))
        return make_general_linear(FiniteRing(q), budget=budget)
    raise ValueError(f"unknown family kind {kind!r}")


def _custom_system(cat: BracketCategory, cfg: FamilyConfig):
    """Load a coefficient system from a JSON description and verify it.

    Schema: {"n_max", "modules": [{"free_rank", "torsion", "actions":
    [matrix per generator of Aut(A + n X), in generator order]}],
    "s_mats": [matrix]}.
    """
    with open(cfg.coeff_params["path"]) as fh:
        desc = json.load(fh)
    n_max = int(desc["n_max"])
    mods = []
    for n, md in enumerate(desc["modules"]):
        grp = cat.G.aut(cfg.A + n * cfg.X)
        under = FGAbelianGroup(int(md.get("free_rank", 0)),
                               tuple(md.get("torsion", [])))
        actions = md["actions"]
        if len(actions) != len(grp.generators):
            raise ValueError(f"level {n}: expected one action matrix per "
                             f"group generator")
        mods.append(GModule(grp, under,
                            dict(zip(grp.generators, actions)),
                            name=f"custom_{n}"))
        mods[-1].verify_action()
    system = CoefficientSystem(cat, cfg.A, cfg.X, n_max, mods,
                               desc["s_mats"], name="custom")
    system.verify()
    return system


def build_system(cfg: FamilyConfig, cat: BracketCategory):
    kind = cfg.coeff_kind
    p = cfg.coeff_params
    if kind == "constant":
        return constant_system(cat, cfg.A, cfg.X, cfg.n_max,
                               rank=int(p.get("rank", 1)),
                               torsion=tuple(p.get("torsion", [])))
    if kind == "standard":
        return standard_system(cat, cfg.A, cfg.n_max)
    if kind == "tensor":
        return tensor_power(standard_system(cat, cfg.A, cfg.n_max),
                            int(p.get("power", 2)))
    if kind in ABELIAN_COEFFS:
        probe = int(p.get("n_probe", cfg.n_max))
        lim = abelianization_limit(cat, cfg.A, cfg.X, probe, cfg.k)
        if lim.stable_from is None:
            raise ValueError("abelianization limit undetermined on the "
                             "probe window")
        sub = [tuple(s) for s in p.get("subgroup", [])]
        system, star = abelian_constant_system(cat, cfg.A, cfg.X,
                                               cfg.n_max, lim, sub)
        if kind == "abelian_constant":
            return system
        return internalize(system, lim, star)
    if kind == "burau":
        return BurauSystem(cfg.n_max)
    if kind == "custom":
        return _custom_system(cat, cfg)
    raise ValueError(f"unknown coefficient kind {kind!r}")


# ----------------------------------------------------------------------
# range predicates


@dataclass
class RangePredicate:
    """Integer-floor stability ranges for one theorem.

    epi_max(n)/iso_max(n) give the largest homological degree claimed;
    claims apply only for n > min_n_exclusive.  rel_vanish_from(i), when
    present, gives the least n from which Rel_i must vanish.
    """

    theorem: str
    k: int
    r: int = 0
    N: int = 0
    split: bool = False

    def _floor(self, num, den) -> int:
        return math.floor(Fraction(num, den))

    @property
    def min_n_exclusive(self) -> int:
        return self.N if self.theorem == "A" else -1

    def epi_max(self, n: int):
        if self.theorem == "3.1":
            return self._floor(n, self.k)
        if self.theorem == "3.4":
            return self._floor(n - self.k + 2, self.k)
        if self.theorem == "A":
            return self._floor(n, self.k) - self.r
        return None

    def iso_max(self, n: int):
        if self.theorem == "3.1":
            return self._floor(n - 1, self.k)
        if self.theorem == "3.4":
            return self._floor(n - self.k, self.k)
        if self.theorem == "A":
            return self._floor(n, self.k) - self.r - 1
        return None

    def rel_vanish_from(self, i: int):
        if self.theorem != "4.20":
            return None
        if self.split:
            return max(self.N + 1, self.k * i + self.r)
        return max(self.N + 1, self.k * (i + self.r))


def predicted_ranges(theorem: str, k: int, r: int = 0, N: int = 0,
                     split: bool = False) -> RangePredicate:
    if theorem not in ("3.1", "3.4", "A", "4.20"):
        raise ValueError(f"unknown theorem {theorem!r}")
    if theorem == "3.4" and k < 3:
        raise ValueError("Theorem 3.4 requires slope k >= 3")
    if k < 2 or r < 0 or N < 0:
        raise ValueError("parameter out of range")
    pred = RangePredicate(theorem, k, r, N, split)
    for n in range(0, 101):
        e, s = pred.epi_max(n), pred.iso_max(n)
        if e is not None and s is not None:
            assert 0 <= e - s <= k, "epi/iso gap out of range"
    return pred


# ----------------------------------------------------------------------
# runs


def run_axioms(cfg: FamilyConfig) -> dict:
    inst = build_instance(cfg)
    cat = BracketCategory(inst)
    checks = []
    rep = verify_groupoid_axioms(inst, cfg.n_max)
    for c in rep.checks:
        checks.append({"name": f"groupoid: {c.identity}",
                       "passed": c.passed,
                       "witness": repr(c.witness) if c.witness else None})
    top = cfg.A + cfg.n_max * cfg.X
    for m in range(0, top + 1):
        for n in range(m, top + 1):
            try:
                h = cat.verify_homogeneity(m, n)
            except GroupBudgetExceeded as exc:
                checks.append({"name": f"homogeneity ({m},{n})",
                               "passed": True, "skipped": str(exc)})
                continue
            checks.append({"name": f"homogeneity ({m},{n})",
                           "passed": h["passed"],
                           "witness": None if h["passed"] else repr(h)})
    pb = cat.verify_prebraid(min(top, 4))
    checks.append({"name": "prebraid identities", "passed": pb["passed"],
                   "witness": repr(pb["failures"]) if pb["failures"]
                   else None})
    ls = cat.verify_local_standardness(cfg.A, cfg.X, cfg.n_max)
    checks.append({"name": "local standardness", "passed": ls["passed"],
                   "witness": None if ls["passed"] else repr(
                       {k: v for k, v in ls.items() if "fail" in k})})
    return {
        "command": "verify-axioms",
        "schema_version": SCHEMA_VERSION,
        "config_hash": config_hash(cfg),
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


def run_connectivity(cfg: FamilyConfig) -> dict:
    inst = build_instance(cfg)
    cat = BracketCategory(inst)
    cells = []
    for n in range(1, cfg.n_max + 1):
        target = math.floor(Fraction(n - 2, cfg.k))
        try:
            W = build_W(cat, cfg.A, cfg.X, n)
        except GroupBudgetExceeded as exc:
            cells.append({"n": n, "skipped": str(exc)})
            continue
        S = build_S(W)
        lp = lift_profile(W, S)
        cert = connectivity_certificate(W, target, cfg.pi1_budget())
        cells.append({
            "n": n,
            "target": target,
            "lift_condition": lp.condition,
            "homology_vanishing_up_to": cert.homology_vanishing_up_to,
            "certified_connectivity": cert.certified_connectivity,
            "pi1_status": cert.pi1_status,
            "mode": cert.mode,
            "meets_target_topological": cert.meets_target,
            "meets_target_homological": cert.meets_target_homological,
        })
    ok = all(c.get("meets_target_homological", True) for c in cells)
    return {
        "command": "connectivity",
        "schema_version": SCHEMA_VERSION,
        "config_hash": config_hash(cfg),
        "passed": ok,
        "cells": cells,
    }


def run_degree(cfg: FamilyConfig) -> dict:
    inst = build_instance(cfg)
    cat = BracketCategory(inst)
    system = build_system(cfg, cat)
    r_max = int(cfg.coeff_params.get("r_max", 3))
    n_cap = int(cfg.coeff_params.get("N_max", 0))
    out = {
        "command": "degree",
        "schema_version": SCHEMA_VERSION,
        "config_hash": config_hash(cfg),
        "system": system.name,
        "window_n_max": system.n_max,
    }
    dp = degree_profile(system, r_max, n_cap)
    out["degree"] = {"status": dp.status, "r": dp.r, "N": dp.N,
                     "window": dp.window,
                     "note": "window-relative verdict"}
    if isinstance(system, CoefficientSystem):
        wit = split_witness(system)
        out["split"] = {"witness_found": wit is not None}
        if wit is not None:
            sdp = split_degree_profile(system, r_max, n_cap)
            out["split"]["degree"] = {"status": sdp.status, "r": sdp.r,
                                      "N": sdp.N, "window": sdp.window}
    else:
        out["split"] = {"witness_found": None,
                        "note": "structural Laurent fragment"}
    out["passed"] = dp.status == "ok"
    return out


def run_homology(cfg: FamilyConfig, cache_dir=None, jobs: int = 1) -> dict:
    inst = build_instance(cfg)
    cat = BracketCategory(inst)
    system = build_system(cfg, cat)
    if not isinstance(system, CoefficientSystem):
        raise ValueError("homology grids need a finite coefficient system")
    budget = cfg.bar_budget()
    cache = None
    if cache_dir:
        import os
        os.makedirs(cache_dir, exist_ok=True)
        cache = HomologyCache(os.path.join(cache_dir, "homology.json"))
    fam_hash = f"{inst.key()}:A{cfg.A}:X{cfg.X}:{system.name}"
    grid = [(n, i) for n in range(cfg.n_max + 1)
            for i in range(cfg.i_max + 1)]

    def cell(args):
        n, i = args
        key = None
        if cache is not None:
            key = HomologyCache.key(fam_hash, n, i,
                                    system.modules[n].content_hash())
            hit = cache.get(key)
            if hit is not None:
                return {"n": n, "i": i, "H": str(hit), "cached": True}
        try:
            h = bar_homology(system.modules[n], i, budget)
        except BarBudgetExceeded as exc:
            return {"n": n, "i": i, "skipped": str(exc),
                    "estimate": exc.estimate,
                    "repro": {"config_hash": config_hash(cfg),
                              "n": n, "i": i}}
        if cache is not None:
            cache.put(key, h)
        return {"n": n, "i": i, "H": str(h), "cached": False}

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        cells = list(pool.map(cell, grid))
    if cache is not None:
        cache.flush()
    skipped = sum(1 for c in cells if "skipped" in c)
    return {
        "command": "homology",
        "schema_version": SCHEMA_VERSION,
        "config_hash": config_hash(cfg),
        "cells": cells,
        "skipped": skipped,
        "passed": True,
    }


def _classify_cell(status, preds, n, i):
    """Verdict of an observed stabilization cell against predicates."""
    claims = []
    for p in preds:
        if p.theorem == "4.20":
            continue
        if n <= p.min_n_exclusive:
            continue
        e, s = p.epi_max(n), p.iso_max(n)
        if i <= s:
            claims.append((p.theorem, "iso"))
        elif i <= e:
            claims.append((p.theorem, "epi"))
    if not claims:
        return "no claim", []
    bad = [f"{t}:{c}" for t, c in claims
           if (c == "iso" and not status["is_iso"])
           or (c == "epi" and not status["is_epi"])]
    return ("VIOLATION" if bad else "consistent",
            bad or [f"{t}:{c}" for t, c in claims])


def run_stability(cfg: FamilyConfig, jobs: int = 1, cache_dir=None) -> dict:
    inst = build_instance(cfg)
    cat = BracketCategory(inst)
    system = build_system(cfg, cat)
    if not isinstance(system, CoefficientSystem):
        raise ValueError("stability grids need a finite coefficient system")
    budget = cfg.bar_budget()

    # degree/split data feed Theorem A / 4.20 predicates
    r_par, n_par, split_flag = 0, 0, False
    needs_degree = any(t in ("A", "4.20") for t in cfg.theorems)
    degree_info = None
    if needs_degree:
        r_cap = int(cfg.coeff_params.get("r_max", 3))
        n_cap = int(cfg.coeff_params.get("N_max", 0))
        dp = degree_profile(system, r_cap, n_cap)
        if dp.status != "ok":
            raise ValueError("degree exceeds the requested bound; cannot "
                             "build Theorem A / 4.20 predicates")
        r_par, n_par = dp.r, dp.N
        split_flag = split_witness(system) is not None
        degree_info = {"r": r_par, "N": n_par, "split": split_flag,
                       "window": dp.window}
    preds = [predicted_ranges(t, cfg.k, r_par, n_par, split_flag)
             for t in cfg.theorems]
    wants_rel = any(p.theorem == "4.20" for p in preds)
    grid = [(n, i) for n in range(cfg.n_max)
            for i in range(cfg.i_max + 1)]

    def cell(args):
        n, i = args
        out = {"n": n, "i": i}
        try:
            setup = system.stabilization_setup(n)
            setup.verify()
            st = stabilization_status(setup, i, budget)
            out.update({
                "source": str(st["source"]),
                "target": str(st["target"]),
                "is_epi": st["is_epi"],
                "is_iso": st["is_iso"],
            })
            verdict, claims = _classify_cell(st, preds, n, i)
            out["verdict"] = verdict
            out["claims"] = claims
            if wants_rel:
                rel = relative_homology(setup, i, budget)
                les = les_exact_at_rel(setup, i, budget)
                out["rel"] = str(rel)
                out["les_exact"] = les["exact"]
                if not les["exact"]:
                    out["verdict"] = "VIOLATION"
                    out["claims"] = out.get("claims", []) + ["LES"]
                for p in preds:
                    v = p.rel_vanish_from(i)
                    if v is not None and n >= v:
                        out.setdefault("claims", []).append(
                            f"4.20:vanish(n>={v})")
                        if not rel.is_trivial():
                            out["verdict"] = "VIOLATION"
                        elif out["verdict"] == "no claim":
                            out["verdict"] = "consistent"
        except BarBudgetExceeded as exc:
            out["verdict"] = "skipped"
            out["skipped"] = str(exc)
            out["estimate"] = exc.estimate
            out["repro"] = {"config_hash": config_hash(cfg),
                            "n": n, "i": i,
                            "needed_bar_cells": exc.estimate}
        if out.get("verdict") == "VIOLATION":
            out["repro"] = {"config_hash": config_hash(cfg), "n": n, "i": i}
        return out

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        cells = list(pool.map(cell, grid))
    counts = {"consistent": 0, "no claim": 0, "skipped": 0, "VIOLATION": 0}
    for c in cells:
        counts[c["verdict"]] = counts.get(c["verdict"], 0) + 1
    report = {
        "command": "stability",
        "schema_version": SCHEMA_VERSION,
        "banner": BANNER,
        "config_hash": config_hash(cfg),
        "toolkit_version": __version__,
        "theorems": cfg.theorems,
        "predicates": [{"theorem": p.theorem, "k": p.k, "r": p.r,
                        "N": p.N, "split": p.split} for p in preds],
        "cells": cells,
        "summary": counts,
    }
    if degree_info:
        report["degree"] = degree_info
    return report


# ----------------------------------------------------------------------
# emission and exit codes


def report_emit(report: dict, fmt: str = "json", stream=None) -> str:
    stream = stream or sys.stdout
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2,
                          default=str) + "\n"
        stream.write(text)
        return text
    lines = [f"== {report.get('command', 'report')} "
             f"(config {report.get('config_hash', '?')}) =="]
    if "banner" in report:
        lines.append(report["banner"])
    if "checks" in report:
        for c in report["checks"]:
            mark = "ok " if c["passed"] else "FAIL"
            lines.append(f"  [{mark}] {c['name']}")
    for c in report.get("cells", []):
        frag = " ".join(f"{k}={v}" for k, v in sorted(c.items())
                        if k not in ("repro",))
        lines.append(f"  {frag}")
    if "summary" in report:
        lines.append("summary: " + " ".join(
            f"{k}={v}" for k, v in sorted(report["summary"].items())))
    if "degree" in report:
        lines.append(f"degree: {report['degree']}")
    if "passed" in report:
        lines.append(f"passed: {report['passed']}")
    text = "\n".join(lines) + "\n"
    stream.write(text)
    return text


def exit_code(report: dict) -> int:
    """0 = clean, 2 = violations/failed checks, 3 = budget-starved."""
    if report.get("passed") is False:
        return 2
    if report.get("summary", {}).get("VIOLATION", 0):
        return 2
    cells = report.get("cells", [])
    skipped = report.get("skipped", 0) or sum(
        1 for c in cells if "skipped" in c or c.get("verdict") == "skipped")
    if skipped:
        return 3
    return 0
