"""Seeded experiment drivers with machine-readable CSV output.

Each driver writes one result file: "# " comment lines echo the
configuration as JSON, then a fixed-order CSV. Wall-clock timings go to a
separate ``<out>.timing.csv`` sidecar so the main file is byte-identical
across runs with the same configuration.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import baselines, data, estimator, geometry, models, presets

SCHEMA = "truncsm-result-v1"
COLUMNS = ["experiment", "seed", "n", "method", "weight", "params",
           "error", "iterations", "objective"]


@dataclass
class ExperimentConfig:
    experiment: str
    seeds: list = field(default_factory=lambda: list(range(10)))
    n: list = field(default_factory=list)           # sample-size grid
    methods: list = field(default_factory=list)
    metric: Optional[str] = None                    # euclidean | mahalanobis | l1
    cap: list = field(default_factory=list)         # cap grid (c values)
    particles: list = field(default_factory=lambda: [500_000])
    restarts: Optional[int] = None
    domain_file: Optional[str] = None
    points_file: Optional[str] = None
    sigma: list = field(default_factory=list)
    b_grid: list = field(default_factory=list)
    d_grid: list = field(default_factory=list)
    out: str = "result.csv"

    def as_dict(self):
        return dataclasses.asdict(self)


class ExperimentError(ValueError):
    pass


def _fmt(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_results(cfg: ExperimentConfig, rows: list, timings: Optional[list] = None):
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    rows = sorted(rows, key=lambda r: tuple(str(r.get(c, "")) for c in COLUMNS))
    lines = [f"# schema={SCHEMA}",
             "# config=" + json.dumps(cfg.as_dict(), sort_keys=True)]
    lines.append(",".join(COLUMNS))
    for r in rows:
        lines.append(",".join(_fmt(r.get(c, "")) for c in COLUMNS))
    out.write_text("\n".join(lines) + "\n")
    if timings:
        tpath = out.with_suffix(out.suffix + ".timing.csv")
        tlines = ["key,wall_time_s"]
        for key, wt in timings:
            tlines.append(f"{key},{wt:.6f}")
        tpath.write_text("\n".join(tlines) + "\n")
    return out


def _params_str(**kv) -> str:
    return ";".join(f"{k}={_fmt(v)}" for k, v in kv.items() if v is not None and v != "")


def parse_params(s: str) -> dict:
    out = {}
    for part in str(s).split(";"):
        if "=" in part:
            k, v = part.split("=", 1)
            out[k] = v
    return out


def _weight_name(spec: geometry.WeightSpec) -> str:
    if spec.constant:
        return "constant"
    name = type(spec.metric).__name__.lower()
    if spec.cap is not None:
        return f"{name}-cap{spec.cap:g}"
    return name


def _centers_str(theta, d) -> str:
    c = np.asarray(theta).reshape(-1, d)
    return "|".join(":".join(f"{v:.10g}" for v in row) for row in c)


# ---------------------------------------------------------------------------


def run_gmm_polygon(cfg: ExperimentConfig):
    """Four-center truncated mixture on the polygon window."""
    domain = geometry.load_polygon(cfg.domain_file) if cfg.domain_file \
        else presets.default_polygon()
    family = models.IsotropicGMM(d=2, K=4, sigma2=1.0)
    truth = presets.GMM_TRUE_CENTERS.reshape(-1)
    n_generated = cfg.n[0] if cfg.n else 10_000
    methods = cfg.methods or ["truncsm", "rjmle"]
    restarts = cfg.restarts or 10
    weight = geometry.WeightSpec(metric=geometry.Euclidean())

    rows, timings = [], []
    for seed in cfg.seeds:
        ds = data.sample_truncated(family, truth, domain, n_generated, seed)
        for method in methods:
            opts = estimator.FitOptions(restarts=restarts, seed=seed,
                                        init_style="kmeans++")
            if method in ("truncsm", "sm-constant"):
                spec = weight if method == "truncsm" \
                    else geometry.WeightSpec(constant=True)
                t0 = time.perf_counter()
                rep = estimator.fit(family, ds, domain, spec, opts)
                wt = time.perf_counter() - t0
                err, _, _ = estimator.match_centers(rep.theta_hat, truth, 2)
                rows.append({"experiment": cfg.experiment, "seed": seed,
                             "n": ds.n, "method": method,
                             "weight": _weight_name(spec),
                             "params": _params_str(centers=_centers_str(rep.theta_hat, 2)),
                             "error": err,
                             "iterations": len(rep.objective_trace) - 1,
                             "objective": rep.objective_trace[-1][1]})
                timings.append((f"{seed}:{method}", wt))
            elif method == "rjmle":
                ropts = estimator.FitOptions(restarts=min(restarts, 3), seed=seed,
                                             init_style="kmeans++")
                for N in cfg.particles:
                    t0 = time.perf_counter()
                    rep = baselines.fit_rjmle(family, ds, domain, N, ropts)
                    wt = time.perf_counter() - t0
                    err, _, _ = estimator.match_centers(rep.theta_hat, truth, 2)
                    rows.append({"experiment": cfg.experiment, "seed": seed,
                                 "n": ds.n, "method": method,
                                 "weight": "none",
                                 "params": _params_str(particles=N,
                                                       centers=_centers_str(rep.theta_hat, 2)),
                                 "error": err,
                                 "iterations": len(rep.objective_trace) - 1,
                                 "objective": rep.objective_trace[-1][1]})
                    timings.append((f"{seed}:{method}:{N}", wt))
            else:
                raise ExperimentError(f"unknown method {method!r} for gmm-polygon")
    return write_results(cfg, rows, timings)


def run_maha_vs_euclid(cfg: ExperimentConfig):
    """Single Gaussian on an elliptical window, two weight metrics."""
    rhos = cfg.sigma or [0.3, 0.9]
    n_grid = cfg.n or [250, 1000, 4000]
    theta_true = np.array([0.5, 0.5])
    family = models.GaussianMean(2)

    rows, timings = [], []
    for rho in rhos:
        if not 0.0 <= rho < 1.0:
            raise ExperimentError("correlation must lie in [0, 1)")
        Sigma = np.array([[1.0, -rho], [-rho, 1.0]])
        domain = geometry.MetricBall(geometry.Mahalanobis(Sigma), 1.0)
        specs = {"euclidean": geometry.WeightSpec(metric=geometry.Euclidean()),
                 "mahalanobis": geometry.WeightSpec(metric=geometry.Mahalanobis(Sigma))}
        if cfg.metric:
            specs = {cfg.metric: specs[cfg.metric]}
        for n in n_grid:
            for seed in cfg.seeds:
                ds = data.sample_truncated_n(family, theta_true, domain, n, seed)
                for name, spec in specs.items():
                    t0 = time.perf_counter()
                    rep = estimator.fit(family, ds, domain, spec,
                                        estimator.FitOptions(seed=seed))
                    wt = time.perf_counter() - t0
                    err = float(np.linalg.norm(rep.theta_hat - theta_true))
                    rows.append({"experiment": cfg.experiment, "seed": seed,
                                 "n": n, "method": "truncsm", "weight": name,
                                 "params": _params_str(rho=rho),
                                 "error": err,
                                 "iterations": len(rep.objective_trace) - 1,
                                 "objective": rep.objective_trace[-1][1]})
                    timings.append((f"{rho}:{n}:{seed}:{name}", wt))
    return write_results(cfg, rows, timings)


def run_capped_scaling(cfg: ExperimentConfig):
    """Capped weights while the truncation window scales up."""
    b_grid = cfg.b_grid or [0.5, 1.0, 2.0, 4.0, 16.0]
    c_grid = cfg.cap or [0.1, 10.0, 100.0]
    n_generated = cfg.n[0] if cfg.n else 1600
    theta_true = np.array([0.5, 0.5])
    family = models.GaussianMean(2)
    templates = ["square", "disjoint"]

    rows, timings = [], []
    for template in templates:
        for b in b_grid:
            domain = geometry.template_domain(template, b)
            for seed in cfg.seeds:
                ds = data.sample_truncated(family, theta_true, domain,
                                           n_generated, seed)
                raw = geometry.distance_batch(
                    domain, geometry.WeightSpec(metric=geometry.Euclidean()), ds.points)
                for c in c_grid:
                    frac = float((c * raw.g[:, 0] >= 1.0).mean())
                    spec = geometry.WeightSpec(metric=geometry.Euclidean(), cap=c)
                    t0 = time.perf_counter()
                    rep = estimator.fit(family, ds, domain, spec,
                                        estimator.FitOptions(seed=seed))
                    wt = time.perf_counter() - t0
                    err = float(np.linalg.norm(rep.theta_hat - theta_true))
                    rows.append({"experiment": cfg.experiment, "seed": seed,
                                 "n": ds.n, "method": "truncsm",
                                 "weight": _weight_name(spec),
                                 "params": _params_str(template=template, b=b, c=c,
                                                       capped_fraction=frac),
                                 "error": err,
                                 "iterations": len(rep.objective_trace) - 1,
                                 "objective": rep.objective_trace[-1][1]})
                    timings.append((f"{template}:{b}:{seed}:{c}", wt))
    return write_results(cfg, rows, timings)


def run_l1_vs_l2(cfg: ExperimentConfig):
    """L1 vs Euclidean weight metric on the hemi-l1-ball window."""
    d_grid = cfg.d_grid or [2, 4, 8]
    n = cfg.n[0] if cfg.n else 150

    rows, timings = [], []
    for d in d_grid:
        if d > 12:
            raise ExperimentError("d > 12 not supported (facet blowup)")
        domain = geometry.hemi_l1_ball(d)
        family = models.GaussianMean(d)
        theta_true = np.full(d, 0.5)
        specs = {"l2": geometry.WeightSpec(metric=geometry.Euclidean()),
                 "l1": geometry.WeightSpec(metric=geometry.L1())}
        for seed in cfg.seeds:
            ds = data.sample_gaussian_in_l1_hemiball(theta_true, n, seed)
            for name, spec in specs.items():
                t0 = time.perf_counter()
                rep = estimator.fit(family, ds, domain, spec,
                                    estimator.FitOptions(seed=seed))
                wt = time.perf_counter() - t0
                err = float(np.linalg.norm(rep.theta_hat - theta_true))
                rows.append({"experiment": cfg.experiment, "seed": seed,
                             "n": n, "method": "truncsm", "weight": name,
                             "params": _params_str(dim=d),
                             "error": err,
                             "iterations": len(rep.objective_trace) - 1,
                             "objective": rep.objective_trace[-1][1]})
                timings.append((f"{d}:{seed}:{name}", wt))
    return write_results(cfg, rows, timings)


def run_chicago(cfg: ExperimentConfig):
    """Two-component mixture on city-style point data, or the synthetic
    western-truncation stand-in when no points file is supplied."""
    if cfg.points_file:
        return _chicago_real(cfg)
    return _chicago_synthetic(cfg)


def _chicago_real(cfg: ExperimentConfig):
    if not cfg.domain_file:
        raise ExperimentError("chicago needs --domain-file with the boundary polygon")
    if not cfg.sigma:
        raise ExperimentError("chicago needs --sigma (component standard deviation)")
    sigma = float(cfg.sigma[0])
    domain = geometry.load_polygon(cfg.domain_file)
    ds = data.load_points_csv(cfg.points_file, lon_col="longitude", lat_col="latitude")
    ds = data.clip_to_domain(ds, domain)
    family = models.IsotropicGMM(d=2, K=2, sigma2=sigma ** 2)
    restarts = cfg.restarts or 500
    methods = cfg.methods or ["truncsm", "rjmle", "mle"]
    seed = cfg.seeds[0] if cfg.seeds else 0
    box = geometry.bounding_box(domain)
    diag = float(np.linalg.norm(box.upper - box.lower))
    weight = geometry.WeightSpec(metric=geometry.Euclidean())

    rows, timings, center_lines = [], [], ["method,restart,component,x,y"]
    X = ds.points
    wt_table = geometry.distance_batch(domain, weight, X)
    normalizer = None
    if "rjmle" in methods:
        normalizer = baselines.make_normalizer(domain, cfg.particles[0], seed=seed)

    for method in methods:
        t0 = time.perf_counter()
        centers = []
        rng = np.random.default_rng(seed)
        mu_q = X.mean(axis=0)
        for r_i in range(restarts):
            theta0 = np.tile(mu_q, family.K) + 0.06 * rng.standard_normal(family.r)
            if method == "truncsm":
                res = estimator.minimize_qn(
                    lambda th: estimator.objective_and_grad(family, th, X, wt_table),
                    theta0)
                theta = res.x
            elif method == "rjmle":
                opts = estimator.FitOptions(restarts=1, seed=seed, init=theta0)
                rep = baselines.fit_rjmle(family, ds, domain, cfg.particles[0],
                                          opts, normalizer=normalizer)
                theta = rep.theta_hat
            elif method == "mle":
                theta, _, _ = baselines._em_fixed_variance(family, X, theta0,
                                                           tol=1e-8, max_iters=500)
            else:
                raise ExperimentError(f"unknown method {method!r} for chicago")
            centers.append(theta)
            for k, c in enumerate(theta.reshape(family.K, 2)):
                center_lines.append(f"{method},{r_i},{k},{c[0]:.10g},{c[1]:.10g}")
        wt = time.perf_counter() - t0
        C = np.array(centers)
        # align component labels to the first restart before aggregating
        ref = C[0]
        aligned = []
        for th in C:
            _, _, perm = estimator.match_centers(th, ref, 2)
            aligned.append(th.reshape(family.K, 2)[perm].reshape(-1))
        A = np.array(aligned)
        sd = float(A.std(axis=0).max())
        rows.append({"experiment": cfg.experiment, "seed": seed, "n": ds.n,
                     "method": method, "weight": _weight_name(weight) if method == "truncsm" else "none",
                     "params": _params_str(restarts=restarts, center_sd=sd,
                                           bbox_diag=diag,
                                           mean_centers=_centers_str(A.mean(axis=0), 2)),
                     "error": "", "iterations": restarts, "objective": ""})
        timings.append((method, wt))
    out = write_results(cfg, rows, timings)
    centers_path = Path(cfg.out).with_suffix(".centers.csv")
    centers_path.write_text("\n".join(center_lines) + "\n")
    return out


def _chicago_synthetic(cfg: ExperimentConfig):
    """Western half-plane truncation stand-in for the qualitative effect."""
    theta_true = np.array([-0.5, 0.0])
    domain = geometry.Box(np.array([0.0, -3.0]), np.array([6.0, 3.0]))
    family = models.GaussianMean(2)
    n = cfg.n[0] if cfg.n else 1000
    weight = geometry.WeightSpec(metric=geometry.Euclidean())
    methods = cfg.methods or ["truncsm", "mle"]

    rows, timings = [], []
    for seed in cfg.seeds:
        ds = data.sample_truncated_n(family, theta_true, domain, n, seed)
        for method in methods:
            t0 = time.perf_counter()
            if method in ("truncsm", "sm-constant"):
                spec = weight if method == "truncsm" \
                    else geometry.WeightSpec(constant=True)
                rep = estimator.fit(family, ds, domain, spec,
                                    estimator.FitOptions(seed=seed))
            elif method == "mle":
                rep = baselines.fit_mle_untruncated(family, ds)
            else:
                raise ExperimentError(f"unknown method {method!r}")
            wt = time.perf_counter() - t0
            err = float(np.linalg.norm(rep.theta_hat - theta_true))
            rows.append({"experiment": cfg.experiment, "seed": seed, "n": n,
                         "method": method,
                         "weight": _weight_name(spec) if method in ("truncsm", "sm-constant") else "none",
                         "params": _params_str(center_x=float(rep.theta_hat[0]),
                                               center_y=float(rep.theta_hat[1])),
                         "error": err,
                         "iterations": len(rep.objective_trace) - 1,
                         "objective": rep.objective_trace[-1][1]})
            timings.append((f"{seed}:{method}", wt))
    return write_results(cfg, rows, timings)


def run_identity_check(cfg: ExperimentConfig):
    """Monte Carlo verification of the integration-by-parts identity."""
    n = cfg.n[0] if cfg.n else 100_000
    domain = geometry.unit_square()
    family = models.GaussianMean(2)
    theta = np.array([0.2, 0.2])
    weight = geometry.WeightSpec(metric=geometry.Euclidean())
    true_score = lambda X: -X  # standard Gaussian data score

    rows, timings = [], []
    for seed in cfg.seeds:
        t0 = time.perf_counter()
        ds = data.sample_truncated_n(models.GaussianMean(2), np.zeros(2), domain,
                                     n, seed, batch=200_000)
        table = geometry.distance_batch(domain, weight, ds.points)
        lhs, rhs, z = estimator.ibp_identity_check(family, theta, ds.points,
                                                   true_score, table)
        wt = time.perf_counter() - t0
        rows.append({"experiment": cfg.experiment, "seed": seed, "n": n,
                     "method": "truncsm", "weight": _weight_name(weight),
                     "params": _params_str(lhs=lhs, rhs=rhs, zscore=z),
                     "error": "", "iterations": "", "objective": ""})
        timings.append((str(seed), wt))
    return write_results(cfg, rows, timings)


DRIVERS = {
    "gmm-polygon": run_gmm_polygon,
    "maha-vs-euclid": run_maha_vs_euclid,
    "capped-scaling": run_capped_scaling,
    "l1-vs-l2": run_l1_vs_l2,
    "chicago": run_chicago,
    "identity-check": run_identity_check,
}


def run(cfg: ExperimentConfig):
    if cfg.experiment not in DRIVERS:
        raise ExperimentError(f"unknown experiment {cfg.experiment!r}")
    return DRIVERS[cfg.experiment](cfg)
