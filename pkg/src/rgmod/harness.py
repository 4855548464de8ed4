"""Monte Carlo experiments and the empirical checks of the theoretical bounds.

Trial ``i`` of an experiment always uses seed ``base_seed + i``; results are
sorted by trial index before they are written, so a config reproduces the
same CSV and JSON byte for byte.
"""

from __future__ import annotations

import configparser
import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds as B
from .generators import (PAParams, RegularParams, SPAParams, gen_pa, gen_pairing, gen_spa,
                         random_connected_graph, random_tree, undirect)
from .graph import Graph, GraphError, Partition
from .modularity import (check_expansion_inequality, exact_modularity, isoperimetric_number,
                         modularity, modularity_regular_form, second_eigenvalue)
from .partition import (avg_degree_threshold, decompose_connected, default_omega,
                        local_search_refine, majority_color_pa, partition_avg_degree,
                        partition_forest, strip_partition)
from .validation import check_random_state

log = logging.getLogger(__name__)

RESULT_SCHEMA_VERSION = 1

# Published values used as regression targets.
REFERENCE_REGULAR_UPPER = {
    3: (0.9386, 0.8771, 0.8038), 4: (0.8900, 0.7800, 0.6834),
    5: (0.8539, 0.7078, 0.6024), 6: (0.8261, 0.6521, 0.5435),
    7: (0.8038, 0.6076, 0.4984), 8: (0.7855, 0.5710, 0.4624),
    9: (0.7702, 0.5403, 0.4330), 10: (0.7570, 0.5140, 0.4083),
}
REFERENCE_PA_LOWER = {
    7: (0.142, 0.156), 8: (0.125, 0.136), 9: (0.111, 0.136),
    10: (0.100, 0.123), 100: (0.0100, 0.0397), 1000: (0.0010, 0.0126),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        info = ", ".join(f"{k}={_fmt(v)}" for k, v in self.detail.items())
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {info}"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


# ------------------------------------------------------ distributional checks


def pa_checkpoints(c: float, n: int, ratio: float = 1.2) -> list[int]:
    cn = c * n
    pts = []
    j = 0
    while True:
        s = math.ceil(cn * ratio ** j)
        if s > n:
            break
        if not pts or s != pts[-1]:
            pts.append(s)
        j += 1
    if not pts or pts[-1] != n:
        pts.append(n)
    return pts


def early_volume_trajectory(g: Graph, c: float, checkpoints) -> np.ndarray:
    """``Y_s``, the total degree of the first ``floor(c n)`` vertices in ``G_m^s``."""
    n = g.n
    m = g.n_edges // n
    cn = int(math.floor(c * n))
    inside = (g.edges[:, 1] < cn).astype(np.int64)
    cum = np.concatenate([[0], np.cumsum(inside)])
    base = 2 * m * cn
    out = []
    for s in checkpoints:
        s = int(s)
        out.append(base + (cum[s * m] - cum[cn * m] if s > cn else 0))
    return np.asarray(out, dtype=np.int64)


def martingale_check(m: int, c: float, n: int, trials: int, seed: int = 0) -> float:
    """Fraction of trials where ``|Y_s - 2mn sqrt(cs/n)| <= (mn)^{2/3}`` at every checkpoint.

    Checkpoints are ``ceil(cn 1.2^j)`` up to ``n``, plus ``n`` itself.
    """
    if c * n < 1:
        raise GraphError("need c * n >= 1")
    pts = pa_checkpoints(c, n)
    band = (m * n) ** (2.0 / 3.0)
    expected = 2.0 * m * n * np.sqrt(c * np.asarray(pts) / n)
    passed = 0
    for t in range(trials):
        g = gen_pa(PAParams(n=n, m=m, seed=seed + t))
        y = early_volume_trajectory(g, c, pts)
        passed += bool(np.all(np.abs(y - expected) <= band))
    return passed / trials


def age_binned_indegree(sg, bins: int = 15, statistic: str = "mean"):
    """Per geometric age bin: ``(log(n / i), log(A1 * deg_in + A2))``.

    ``statistic='mean'`` averages ``A1 * deg_in + A2`` inside each bin, which
    grows like ``(n/i)^{p A1}``; ``'max'`` uses the bin maximum instead.
    """
    prm = sg.params
    n = sg.n
    A1, A2 = (prm.A1, prm.A2) if prm is not None else (1.0, 1.0)
    weight = A1 * sg.indegree + A2
    edges = np.unique(np.geomspace(1, n + 1, bins + 1).astype(np.int64))
    xs, ys = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        w = weight[a - 1:b - 1]
        if w.size == 0:
            continue
        i_mid = math.exp(np.mean(np.log(np.arange(a, b, dtype=float))))
        xs.append(math.log(n / i_mid))
        ys.append(math.log(w.mean() if statistic == "mean" else w.max()))
    return np.asarray(xs), np.asarray(ys)


def degree_growth_check(spa_params: SPAParams, n: int | None = None, bins: int = 15,
                        statistic: str = "mean") -> float:
    """Fitted exponent of in-degree growth against ``n / i`` (compare with ``p A1``)."""
    if n is not None:
        spa_params = SPAParams(**{**asdict(spa_params), "n": n})
    sg = gen_spa(spa_params)
    xs, ys = age_binned_indegree(sg, bins, statistic)
    return float(np.polyfit(xs, ys, 1)[0])


def outdegree_log_ratio(sg) -> float:
    """``max out-degree / (ln n)^2``; bounded when out-degrees are ``O(log^2 n)``."""
    return float(sg.outdegree.max()) / math.log(sg.n) ** 2


def expected_pa_components(n: int) -> tuple[float, float]:
    """Exact mean and variance of the number of components of ``G_1^n``."""
    p = 1.0 / (2.0 * np.arange(1, n + 1) - 1.0)
    return float(p.sum()), float(np.sum(p * (1 - p)))


def component_count_check(m: int, n: int, trials: int, seed: int = 0) -> float:
    """Mean number of components of ``G_1^n`` over ``trials`` seeds."""
    if m != 1:
        raise GraphError("component count check is for m = 1 (G_m^n is connected a.a.s. for m >= 2)")
    return float(np.mean([gen_pa(PAParams(n=n, m=1, seed=seed + t)).n_components()
                          for t in range(trials)]))


def power_law_check(m: int, n: int, trials: int = 1, seed: int = 0,
                    k_max: float | None = None) -> float:
    """Log-log slope of the degree complementary CDF over ``k = m..k_max``.

    ``k_max`` defaults to ``n^{1/3}``, well below the ``~sqrt(n)`` maximum degree.
    """
    if n < 100:
        raise GraphError("insufficient range: need n >= 100")
    k_max = n ** (1.0 / 3.0) if k_max is None else k_max
    ks = np.arange(m, int(math.floor(k_max)) + 1)
    if ks.size < 3:
        raise GraphError("insufficient range of degrees for a slope")
    deg = np.concatenate([gen_pa(PAParams(n=n, m=m, seed=seed + t)).degrees()
                          for t in range(trials)])
    counts = np.bincount(deg, minlength=ks[-1] + 1)
    ccdf = 1.0 - np.concatenate([[0], np.cumsum(counts)])[ks] / deg.size
    return float(np.polyfit(np.log(ks), np.log(ccdf), 1)[0])


# ----------------------------------------------------------------- experiments


@dataclass
class ExperimentConfig:
    model: str = "regular"
    model_params: dict = field(default_factory=lambda: {"n": 10000, "d": 3})
    method: str = "avgdeg"
    method_params: dict = field(default_factory=dict)
    trials: int = 5
    base_seed: int = 0
    out_csv: str | None = None
    out_json: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.model not in ("regular", "pa", "spa"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.method not in ("tree", "forest", "avgdeg", "majority", "strips", "refine"):
            raise ValueError(f"unknown partition method {self.method!r}")


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    trials: list[dict]
    summary: dict

    @property
    def passed(self) -> bool:
        return all(all(t["asserted"].values()) for t in self.trials)


_INT_KEYS = {"n", "d", "m", "dim", "trials", "base_seed", "omega", "max_passes"}


def _coerce(key, value):
    if key in _INT_KEYS:
        return int(value)
    if key in ("require_simple",):
        return str(value).lower() in ("1", "true", "yes", "on")
    try:
        return float(value)
    except ValueError:
        return value


def load_config(path, overrides: dict | None = None) -> ExperimentConfig:
    """Read an INI file with sections ``[experiment]``, ``[model]``, ``[method]``, ``[output]``.

    Non-``None`` entries of ``overrides`` replace the file's values.
    """
    cp = configparser.ConfigParser()
    with open(path) as fh:
        cp.read_file(fh)
    exp = dict(cp["experiment"]) if cp.has_section("experiment") else {}
    kwargs = {
        "model": exp.get("model", "regular"),
        "method": exp.get("method", "avgdeg"),
        "trials": int(exp.get("trials", 5)),
        "base_seed": int(exp.get("base_seed", 0)),
    }
    if cp.has_section("model"):
        kwargs["model_params"] = {k: _coerce(k, v) for k, v in cp["model"].items()}
    if cp.has_section("method"):
        kwargs["method_params"] = {k: _coerce(k, v) for k, v in cp["method"].items()}
    if cp.has_section("output"):
        kwargs["out_csv"] = cp["output"].get("csv")
        kwargs["out_json"] = cp["output"].get("json")
    for k, v in (overrides or {}).items():
        if v is not None:
            kwargs[k] = v
    return ExperimentConfig(**kwargs)


def _generate(cfg: ExperimentConfig, seed: int):
    prm = dict(cfg.model_params)
    if cfg.model == "regular":
        return gen_pairing(RegularParams(n=prm["n"], d=prm["d"],
                                         require_simple=prm.get("require_simple", True),
                                         seed=seed)), None
    if cfg.model == "pa":
        return gen_pa(PAParams(n=prm["n"], m=prm.get("m", 1), seed=seed)), None
    sg = gen_spa(SPAParams(n=prm["n"], dim=prm.get("dim", 2), p=prm.get("p", 0.7),
                           A1=prm.get("a1", prm.get("A1", 1.0)),
                           A2=prm.get("a2", prm.get("A2", 1.0)),
                           norm=prm.get("norm", "linf"), seed=seed))
    return undirect(sg), sg


def _partition(cfg: ExperimentConfig, g: Graph, sg, seed: int) -> Partition:
    mp = cfg.method_params
    if cfg.method == "tree":
        return decompose_connected(g, float(mp.get("h", avg_degree_threshold(g))))
    if cfg.method == "forest":
        return partition_forest(g)
    if cfg.method == "avgdeg":
        return partition_avg_degree(g)
    if cfg.method == "majority":
        return majority_color_pa(g, float(mp.get("eps", 0.05)), seed=seed)
    if cfg.method == "strips":
        if sg is None:
            raise GraphError("strip partition needs the SPA model")
        omega = mp.get("omega")
        return strip_partition(sg, None if omega is None else int(omega))
    base = partition_avg_degree(g) if g.is_connected() else Partition(g.components())
    return local_search_refine(g, base, int(mp.get("max_passes", 20)), seed=seed)


def _bounds_for(cfg: ExperimentConfig, g: Graph, sg, q: float, seed: int):
    """``(reported, asserted)`` flag dictionaries for one trial."""
    bounds, reported, asserted = {}, {}, {}
    n, delta = g.n, g.max_degree()
    dbar = 2.0 * g.n_edges / n
    if cfg.method == "avgdeg":
        bounds["avg_degree_lower"] = B.avg_degree_lower(n, delta, dbar)
        asserted["avg_degree_lower"] = q >= bounds["avg_degree_lower"] - 1e-12
    if cfg.method == "forest":
        active = int(np.count_nonzero(g.degrees()))
        bounds["forest_lower"] = B.forest_lower(active, delta)
        asserted["forest_lower"] = q >= bounds["forest_lower"] - 1e-12
    if cfg.model == "regular":
        d = int(cfg.model_params["d"])
        if d >= 3:
            bounds["U3"] = B.u3(d)
            asserted["U3"] = q <= bounds["U3"]
        spec = second_eigenvalue(g, tol=1e-6, seed=seed)
        bounds["spectral"] = B.spectral_upper(spec.lambda_, d)
        asserted["spectral"] = q <= bounds["spectral"] + 1e-9
        bounds["two_over_d"] = 2.0 / d
        reported["two_over_d"] = q >= bounds["two_over_d"]
    if cfg.model == "pa":
        m = int(cfg.model_params.get("m", 1))
        bounds["L1"] = B.pa_lower_l1(m)
        bounds["L2"] = B.pa_lower_l2(m)
        reported["L1"] = q >= bounds["L1"]
        reported["L2"] = q >= bounds["L2"]
        if m >= 2:
            bounds["pa_upper"] = B.pa_upper(m)
            asserted["pa_upper"] = q <= bounds["pa_upper"]
    if cfg.model == "spa":
        prm = sg.params
        bounds["spa_rate"] = B.spa_rate(n, prm.dim, prm.p * prm.A1)
        bounds["omega_default"] = default_omega(n, prm.dim, prm.p * prm.A1)
    asserted["q_le_1"] = q <= 1.0
    return bounds, reported, asserted


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    rows = []
    for t in range(cfg.trials):
        seed = cfg.base_seed + t
        g, sg = _generate(cfg, seed)
        p = _partition(cfg, g, sg, seed)
        br = modularity(g, p)
        bnds, reported, asserted = _bounds_for(cfg, g, sg, br.q, seed)
        rows.append({
            "trial": t, "seed": seed, "n": g.n, "n_edges": g.n_edges, "parts": p.k,
            "q": br.q, "edge_contribution": br.edge_contribution, "degree_tax": br.degree_tax,
            "bounds": bnds, "reported": reported, "asserted": asserted,
        })
        log.info("trial %d seed %d q=%.6f", t, seed, br.q)
    rows.sort(key=lambda r: r["trial"])
    qs = np.array([r["q"] for r in rows])
    summary = {
        "q_mean": float(qs.mean()),
        "q_std": float(qs.std(ddof=1)) if qs.size > 1 else 0.0,
        "edge_contribution_mean": float(np.mean([r["edge_contribution"] for r in rows])),
        "degree_tax_mean": float(np.mean([r["degree_tax"] for r in rows])),
        "all_asserted_pass": all(all(r["asserted"].values()) for r in rows),
    }
    result = ExperimentResult(cfg, rows, summary)
    if cfg.out_csv:
        write_result_csv(result, cfg.out_csv)
    if cfg.out_json:
        write_result_json(result, cfg.out_json)
    return result


def write_result_csv(result: ExperimentResult, path) -> None:
    names = sorted({k for r in result.trials for k in r["bounds"]})
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "seed", "n", "n_edges", "parts", "q", "edge_contribution",
                    "degree_tax", *names, "asserted_pass"])
        for r in result.trials:
            w.writerow([r["trial"], r["seed"], r["n"], r["n_edges"], r["parts"],
                        f"{r['q']:.10f}", f"{r['edge_contribution']:.10f}",
                        f"{r['degree_tax']:.10f}",
                        *[f"{r['bounds'][k]:.10f}" if k in r["bounds"] else "" for k in names],
                        int(all(r["asserted"].values()))])


def write_result_json(result: ExperimentResult, path) -> None:
    config = asdict(result.config)
    # output locations do not affect results; leaving them out keeps reruns byte-identical
    config.pop("out_csv")
    config.pop("out_json")
    doc = {
        "schema_version": RESULT_SCHEMA_VERSION,
        "config": config,
        "summary": result.summary,
        "trials": result.trials,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(type(o))


# ------------------------------------------------------------ verification suite


def check_regular_upper_table(tol: float = 5e-4) -> CheckResult:
    worst = 0.0
    for d, ref in REFERENCE_REGULAR_UPPER.items():
        got = (B.u1(d), B.u2(d), B.u3(d))
        worst = max(worst, max(abs(a - b) for a, b in zip(got, ref)))
    return CheckResult("regular_upper_bound_table", worst <= tol,
                       {"max_abs_err": worst, "tol": tol, "entries": 24})


def check_pa_lower_table(tol: float = 1e-3) -> CheckResult:
    worst = 0.0
    for m, ref in REFERENCE_PA_LOWER.items():
        got = (B.pa_lower_l1(m), B.pa_lower_l2(m))
        worst = max(worst, max(abs(a - b) for a, b in zip(got, ref)))
    return CheckResult("pa_lower_bound_table", worst <= tol,
                       {"max_abs_err": worst, "tol": tol, "entries": 12})


def check_u4(tol: float = 5e-4) -> CheckResult:
    value, k = B.u4(3)
    gap = abs(value - B.u3(3))
    return CheckResult("u4_argmax_k45", k == 45 and gap <= tol,
                       {"argmax_k": k, "u4": value, "gap_to_u3": gap})


def small_random_graphs(count: int, seed=0, max_n: int = 10):
    """Mixed corpus of small graphs: simple regular, sparse random, trees and PA multigraphs."""
    rng = check_random_state(seed)
    out = []
    while len(out) < count:
        kind = len(out) % 4
        n = int(rng.integers(4, max_n + 1))
        if kind == 0:
            ds = [d for d in range(2, min(n - 1, 5)) if (d * n) % 2 == 0]
            d = int(rng.choice(ds))
            g = gen_pairing(RegularParams(n=n, d=d, require_simple=True, seed=rng))
        elif kind == 1:
            g = random_connected_graph(n, int(rng.integers(0, 2 * n)), seed=rng)
        elif kind == 2:
            g = random_tree(n, seed=rng)
        else:
            g = gen_pa(PAParams(n=n, m=int(rng.integers(1, 4)), seed=rng))
        if g.n_edges:
            out.append(g)
    return out


def check_oracle_equivalence(count: int = 200, partitions_per_graph: int = 100,
                             seed: int = 0) -> CheckResult:
    rng = check_random_state(seed)
    graphs = small_random_graphs(count, seed=rng)
    worst_form = 0.0
    enum_fail = trivial_fail = spectral_fail = regular = 0
    for g in graphs:
        qstar, arg = exact_modularity(g)
        d = g.is_regular()
        for _ in range(partitions_per_graph):
            p = Partition(rng.integers(0, int(rng.integers(1, g.n + 1)), size=g.n))
            q = modularity(g, p).q
            if q > qstar + 1e-12:
                enum_fail += 1
            if d:
                worst_form = max(worst_form, abs(modularity_regular_form(g, p) - q))
        if d:
            regular += 1
            rho = isoperimetric_number(g)
            lam = second_eigenvalue(g, tol=1e-10, seed=rng).lambda_
            if qstar > B.trivial_upper(rho, d) + 1e-12:
                trivial_fail += 1
            if qstar > B.spectral_upper(lam, d) + 1e-9:
                spectral_fail += 1
    ok = worst_form <= 1e-12 and enum_fail == spectral_fail == trivial_fail == 0
    return CheckResult("oracle_equivalence", ok, {
        "graphs": len(graphs), "regular": regular, "max_form_gap": worst_form,
        "enumeration_violations": enum_fail, "trivial_bound_violations": trivial_fail,
        "spectral_bound_violations": spectral_fail})


def forest_instances(count: int, seed=0):
    rng = check_random_state(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(1000, 10001))
        kind = i % 4
        if kind == 0:
            g = random_tree(n, seed=rng)
        elif kind == 1:
            t = random_tree(n, seed=rng)
            keep = rng.random(t.n_edges) > rng.uniform(0.001, 0.05)
            g = Graph(n, t.edges[keep])
        elif kind == 2:
            pa = gen_pa(PAParams(n=n, m=1, seed=rng))
            g = Graph(n, pa.edges[pa.edges[:, 0] != pa.edges[:, 1]])
        else:
            g = Graph(n, [[j, j + 1] for j in range(n - 1)])
        out.append(g)
    return out


def connected_instances(count: int, seed=0):
    rng = check_random_state(seed)
    out = []
    i = 0
    while len(out) < count:
        n = int(rng.integers(1000, 10001))
        kind = i % 4
        i += 1
        if kind == 0:
            n += n % 2
            g = gen_pairing(RegularParams(n=n, d=3, require_simple=True, seed=rng))
        elif kind == 1:
            g = gen_pa(PAParams(n=n, m=int(rng.integers(2, 5)), seed=rng))
        elif kind == 2:
            g = random_connected_graph(n, int(rng.integers(0, 3 * n)), seed=rng)
        else:
            g = Graph(n, [[j, (j + 1) % n] for j in range(n)])
        if g.is_connected():
            out.append(g)
    return out


def check_deterministic_lower_bounds(n_forests: int = 100, n_connected: int = 50,
                                     seed: int = 0) -> CheckResult:
    forest_fail = conn_fail = 0
    worst_forest = worst_conn = math.inf
    for g in forest_instances(n_forests, seed):
        q = modularity(g, partition_forest(g)).q
        bound = B.forest_lower(int(np.count_nonzero(g.degrees())), g.max_degree())
        worst_forest = min(worst_forest, q - bound)
        forest_fail += q < bound
    for g in connected_instances(n_connected, seed + 1):
        q = modularity(g, partition_avg_degree(g)).q
        bound = B.avg_degree_lower(g.n, g.max_degree(), 2.0 * g.n_edges / g.n)
        worst_conn = min(worst_conn, q - bound)
        conn_fail += q < bound
    return CheckResult("deterministic_lower_bounds", forest_fail == conn_fail == 0, {
        "forests": n_forests, "forest_failures": forest_fail, "min_forest_margin": worst_forest,
        "connected": n_connected, "avgdeg_failures": conn_fail,
        "min_avgdeg_margin": worst_conn})


def decomposition_violations(g: Graph, h: float, p: Partition) -> list[str]:
    """Reasons the decomposition ``p`` of ``g`` breaks the connected-parts volume bounds."""
    problems = []
    vol = p.volumes(g)
    delta = g.max_degree()
    if np.any(vol > h + 1e-9):
        problems.append("volume above h")
    if vol.sum() > h and np.any(vol < h / delta - 1 - 1e-9):
        problems.append("volume below h/Delta - 1")
    for part in p.parts():
        mask = np.zeros(g.n, dtype=bool)
        mask[part] = True
        sub = Graph(g.n, g.subgraph_edges(mask))
        comp = sub.components()[part]
        if np.unique(comp).size != 1:
            problems.append("disconnected part")
            break
    return problems


def check_decomposition(instances: int = 100, seed: int = 0) -> CheckResult:
    rng = check_random_state(seed)
    failures = 0
    for i in range(instances):
        n = int(rng.integers(20, 3000))
        kind = i % 3
        if kind == 0:
            g = random_connected_graph(n, int(rng.integers(0, 2 * n)), seed=rng)
        elif kind == 1:
            g = gen_pa(PAParams(n=n, m=int(rng.integers(2, 5)), seed=rng))
            if not g.is_connected():
                g = random_tree(n, seed=rng)
        else:
            g = random_tree(n, seed=rng)
        total = float(g.degrees().sum())
        h = float(math.exp(rng.uniform(math.log(g.max_degree()), math.log(total * 1.2))))
        failures += bool(decomposition_violations(g, h, decompose_connected(g, h)))
    return CheckResult("decomposition_volume_bounds", failures == 0,
                       {"instances": instances, "failures": failures})


def check_majority(m: int = 8, n: int = 100_000, seeds: int = 20, base_seed: int = 0,
                   eps: float = 0.05, tol: float = 0.02) -> CheckResult:
    qs, taxes = [], []
    for s in range(seeds):
        g = gen_pa(PAParams(n=n, m=m, seed=base_seed + s))
        br = modularity(g, majority_color_pa(g, eps, seed=base_seed + s))
        qs.append(br.q)
        taxes.append(br.degree_tax)
    target = B.pa_lower_l2(m)
    q_mean, tax_mean = float(np.mean(qs)), float(np.mean(taxes))
    ok = abs(q_mean - target) <= tol and abs(tax_mean - 0.5) <= tol
    return CheckResult("pa_majority_colouring", ok,
                       {"q_mean": q_mean, "L2": target, "degree_tax_mean": tax_mean,
                        "seeds": seeds})


def check_martingale(m: int = 2, c: float = 0.25, n: int = 100_000, trials: int = 50,
                     seed: int = 0, threshold: float = 0.95) -> CheckResult:
    frac = martingale_check(m, c, n, trials, seed)
    return CheckResult("martingale_concentration", frac >= threshold,
                       {"pass_fraction": frac, "threshold": threshold, "trials": trials})


def simple_fraction(n: int, d: int, samples: int, seed=0) -> float:
    rng = check_random_state(seed)
    hits = 0
    for _ in range(samples):
        hits += gen_pairing(RegularParams(n=n, d=d, seed=rng)).is_simple()
    return hits / samples


def check_pairing(d: int = 3, n: int = 100, samples: int = 10_000, seed: int = 0,
                  tol: float = 0.02) -> CheckResult:
    frac = simple_fraction(n, d, samples, seed)
    target = math.exp(-(d * d - 1) / 4.0)
    return CheckResult("pairing_simple_fraction", abs(frac - target) <= tol,
                       {"fraction": frac, "target": target, "tol": tol})


def check_pa_structure(n: int = 100_000, trials: int = 30, seed: int = 0,
                       connected_trials: int = 30) -> CheckResult:
    mean_c = component_count_check(1, n, trials, seed)
    target = math.log(n) / 2.0
    connected = float(np.mean([gen_pa(PAParams(n=n, m=2, seed=seed + t)).is_connected()
                               for t in range(connected_trials)]))
    exact_mean, _ = expected_pa_components(n)
    ok = abs(mean_c - target) <= 1.0 and connected >= 0.95
    return CheckResult("pa_structure", ok, {
        "mean_components": mean_c, "half_log_n": target, "exact_expectation": exact_mean,
        "m2_connected_fraction": connected})


def spa_strip_trend(ns=(1000, 10_000, 100_000), seeds: int = 10, base_seed: int = 0,
                    omega: int | None = None, **spa_kwargs) -> dict:
    """Mean strip-partition modularity per ``n``.

    One strip count is used for the whole sweep: ``omega`` if given, otherwise
    the default formula evaluated at the largest ``n``.
    """
    prm = {"dim": 2, "p": 0.7, "A1": 1.0, "A2": 1.0, **spa_kwargs}
    if omega is None:
        omega = default_omega(max(ns), prm["dim"], prm["p"] * prm["A1"])
    out = {"omega": omega, "q": {}, "q_default_omega": {}}
    for n in ns:
        qs, qd = [], []
        for s in range(seeds):
            sg = gen_spa(SPAParams(n=n, seed=base_seed + s, **prm))
            g = undirect(sg)
            qs.append(modularity(g, strip_partition(sg, omega)).q)
            qd.append(modularity(g, strip_partition(sg)).q)
        out["q"][n] = float(np.mean(qs))
        out["q_default_omega"][n] = float(np.mean(qd))
    return out


def check_spa_trend(ns=(1000, 10_000, 100_000), seeds: int = 10, base_seed: int = 0,
                    min_gain: float = 0.05) -> CheckResult:
    res = spa_strip_trend(ns, seeds, base_seed)
    q = [res["q"][n] for n in ns]
    ok = all(a < b for a, b in zip(q, q[1:])) and q[-1] - q[0] >= min_gain
    detail = {"omega": res["omega"]}
    detail.update({f"q(n={n})": res["q"][n] for n in ns})
    detail.update({f"q_default_omega(n={n})": res["q_default_omega"][n] for n in ns})
    return CheckResult("spa_strip_trend", ok, detail)


def check_spectral(n: int = 1000, d: int = 3, seeds: int = 20, subsets: int = 1000,
                   base_seed: int = 0, slack: float = 0.1) -> CheckResult:
    limit = 2.0 * math.sqrt(d - 1) + slack
    below = violations = 0
    worst = 0.0
    for s in range(seeds):
        g = gen_pairing(RegularParams(n=n, d=d, require_simple=True, seed=base_seed + s))
        lam = second_eigenvalue(g, tol=1e-8, seed=base_seed + s).lambda_
        worst = max(worst, lam)
        below += lam <= limit
        ok, _ = check_expansion_inequality(g, lam, subsets, seed=base_seed + s)
        violations += not ok
    frac = below / seeds
    return CheckResult("spectral_friedman_and_expansion", frac >= 0.95 and violations == 0,
                       {"fraction_below": frac, "max_lambda": worst, "limit": limit,
                        "expansion_violations": violations})


def run_verification(full: bool = False) -> list[CheckResult]:
    """Every acceptance check; ``full=False`` shrinks the Monte Carlo sizes."""
    if full:
        return [check_regular_upper_table(), check_pa_lower_table(), check_u4(), check_oracle_equivalence(),
                check_deterministic_lower_bounds(), check_decomposition(), check_majority(),
                check_martingale(), check_pairing(), check_pa_structure(),
                check_spa_trend(), check_spectral()]
    return [check_regular_upper_table(), check_pa_lower_table(), check_u4(),
            check_oracle_equivalence(count=40, partitions_per_graph=20),
            check_deterministic_lower_bounds(n_forests=12, n_connected=8),
            check_decomposition(instances=30),
            check_majority(n=20_000, seeds=4, tol=0.03),
            check_martingale(n=20_000, trials=10, threshold=0.9),
            check_pairing(samples=2000, tol=0.03),
            check_spectral(seeds=4, subsets=200)]
