"""Experiment runner: benchmark sweeps, bound verification, model I/O.

Four experiment families, all sweeping the shadow parameter ell:

* embedding      -- aligned embedding error and eigenvalue deviation of
                    each method against full KPCA on a held-out split;
* classification -- k-NN accuracy under stratified cross-validation;
* rsde_compare   -- the classification pipeline with the reduced set
                    built by each selector (shadow/kmeans/paring/herding);
* bounds         -- the four worst-case bounds against their empirical
                    quantities per ell.

Comparison methods get their landmark count m from the mean shadow m at
the same ell, recomputed per ell.  All scientific outputs (\\*.csv and
the non-timing panel_\\*.dat files) are byte-reproducible from the spec
and seed; wall-clock data goes to timing.dat and the speedup panels,
which are excluded from that guarantee.

Heavy imports happen inside functions so --threads can cap the BLAS
thread pools before the numerical stack loads.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

EXPERIMENTS = ("embedding", "classification", "rsde_compare", "bounds")
EMBED_METHODS = ("full", "shadow", "subsampled", "nystrom", "wnystrom")
SELECTORS = ("shadow", "kmeans", "paring", "herding")

CONFIG_KEYS = {
    "experiment", "methods", "repetitions", "rank", "seed",
    "dataset.path", "dataset.format", "dataset.label_column",
    "dataset.minmax", "dataset.name",
    "kernel.family", "kernel.sigma",
    "sweep.ell_min", "sweep.ell_max", "sweep.ell_step",
    "knn.k", "cv.folds", "split.fraction", "bounds.D", "timing.repeats",
}


@dataclass(frozen=True)
class ExperimentSpec:
    experiment: str
    dataset: object
    kernel: object
    methods: tuple
    ell_grid: tuple
    repetitions: int = 10
    rank: int = 5
    seed: int = 0
    knn_k: int = 3
    folds: int = 10
    split_fraction: float = 0.8
    bounds_d: int = 1
    timing_repeats: int = 3

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if not self.ell_grid or list(self.ell_grid) != sorted(set(self.ell_grid)):
            raise ValueError("ell grid must be nonempty and strictly ascending")
        if self.repetitions < 1:
            raise ValueError("need at least one repetition")
        allowed = SELECTORS if self.experiment == "rsde_compare" else EMBED_METHODS
        for method in self.methods:
            if method not in allowed:
                raise ValueError(f"unknown method {method!r}; choose from {allowed}")


def ell_grid(lo: float, hi: float, step: float) -> tuple:
    """Inclusive ascending grid lo, lo+step, ..., hi (endpoints rounded)."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"empty sweep: {lo} > {hi}")
    count = int(round((hi - lo) / step)) + 1
    return tuple(round(lo + i * step, 10) for i in range(count))


def load_dataset(path, fmt=None, label_column=None, minmax=False):
    from rskpca import dataio

    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "sparse"
    if fmt == "csv":
        ds = dataio.load_csv(path, label_column=label_column)
    elif fmt == "sparse":
        ds = dataio.load_sparse(path)
    else:
        raise ValueError(f"unknown dataset format {fmt!r}")
    return dataio.minmax_scale(ds) if minmax else ds


def spec_from_config(cfg: dict, base_dir=".") -> ExperimentSpec:
    """Resolve a flat dotted-key config dict into an ExperimentSpec."""
    from rskpca import kernels

    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "experiment" not in cfg:
        raise ValueError("config needs an 'experiment' key")
    if "dataset.path" not in cfg:
        raise ValueError("config needs a 'dataset.path' key")
    if "kernel.sigma" not in cfg:
        raise ValueError("config needs a 'kernel.sigma' key")
    experiment = cfg["experiment"]
    dataset = load_dataset(
        Path(base_dir) / cfg["dataset.path"],
        fmt=cfg.get("dataset.format"),
        label_column=cfg.get("dataset.label_column"),
        minmax=bool(cfg.get("dataset.minmax", False)),
    )
    methods = cfg.get("methods")
    if methods is None:
        methods = SELECTORS if experiment == "rsde_compare" else EMBED_METHODS
        if experiment == "bounds":
            methods = ("shadow",)
    return ExperimentSpec(
        experiment=experiment,
        dataset=dataset,
        kernel=kernels.KernelConfig(cfg.get("kernel.family", "gaussian"), cfg["kernel.sigma"]),
        methods=tuple(methods),
        ell_grid=ell_grid(
            cfg.get("sweep.ell_min", 3.0),
            cfg.get("sweep.ell_max", 5.0),
            cfg.get("sweep.ell_step", 0.1),
        ),
        repetitions=int(cfg.get("repetitions", 10)),
        rank=int(cfg.get("rank", 5)),
        seed=int(cfg.get("seed", 0)),
        knn_k=int(cfg.get("knn.k", 3)),
        folds=int(cfg.get("cv.folds", 10)),
        split_fraction=float(cfg.get("split.fraction", 0.8)),
        bounds_d=int(cfg.get("bounds.D", 1)),
        timing_repeats=int(cfg.get("timing.repeats", 3)),
    )


def _child_seeds(seed: int, rep: int, count: int) -> list:
    import numpy as np

    rng = np.random.default_rng([seed, rep])
    return [int(s) for s in rng.integers(0, 2**31 - 1, size=count)]


def fit_method(method, points, cfg, r, m=None, ell=None, seed=0):
    """Fit one named method; m applies to landmark methods, ell to shadow."""
    from rskpca import kpca, rsde

    n = len(getattr(points, "points", points))
    if m is not None:
        m = max(r, min(int(m), n))
    if method == "full":
        return kpca.fit_full(points, cfg, r)
    if method == "shadow":
        return kpca.fit_reduced(rsde.shadow_select(points, cfg, ell), cfg, r)
    if method == "subsampled":
        return kpca.fit_subsampled(points, cfg, m, r, seed)
    if method == "nystrom":
        return kpca.fit_nystrom(points, cfg, m, r, seed)
    if method == "wnystrom":
        return kpca.fit_wnystrom(points, cfg, m, r, seed)
    if method == "kmeans":
        return kpca.fit_reduced(rsde.kmeans_select(points, m, seed), cfg, r)
    if method == "paring":
        return kpca.fit_reduced(rsde.pare_select(points, m, seed), cfg, r)
    if method == "herding":
        return kpca.fit_reduced(rsde.herd_select(points, cfg, m), cfg, r)
    raise ValueError(f"unknown method {method!r}")


def timed_fit(method, train_pts, cfg, r, test_pts, m=None, ell=None, seed=0, repeats=3):
    """Fit with phase timing; returns (model, PhaseTiming)."""
    import numpy as np

    from rskpca import evaluation, kernels, kpca, numerics, rsde

    n = len(train_pts)
    model = fit_method(method, train_pts, cfg, r, m=m, ell=ell, seed=seed)
    phases = {"project": lambda: kpca.project(model, test_pts)}
    if method == "full":
        k = kernels.gram(cfg, train_pts)
        phases["gram"] = lambda: kernels.gram(cfg, train_pts)
        phases["eig"] = lambda: numerics.sym_eig(k / n)
        m_used = n
    elif method in ("shadow", "kmeans", "paring", "herding"):
        rs = model.reduced
        if method == "shadow":
            phases["rsde"] = lambda: rsde.shadow_select(train_pts, cfg, ell)
        elif method == "kmeans":
            phases["rsde"] = lambda: rsde.kmeans_select(train_pts, m, seed)
        elif method == "paring":
            phases["rsde"] = lambda: rsde.pare_select(train_pts, m, seed)
        else:
            phases["rsde"] = lambda: rsde.herd_select(train_pts, cfg, m)
        g = kernels.weighted_gram(cfg, rs)
        phases["gram"] = lambda: kernels.weighted_gram(cfg, rs)
        phases["eig"] = lambda: numerics.sym_eig(g / n)
        m_used = rs.m
    elif method == "subsampled":
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(n, size=m, replace=False))
        sub = train_pts[idx]
        k = kernels.gram(cfg, sub)
        phases["rsde"] = lambda: np.sort(np.random.default_rng(seed).choice(n, size=m, replace=False))
        phases["gram"] = lambda: kernels.gram(cfg, sub)
        phases["eig"] = lambda: numerics.sym_eig(k / m)
        m_used = m
    elif method in ("nystrom", "wnystrom"):
        if method == "nystrom":
            rng = np.random.default_rng(seed)
            idx = np.sort(rng.choice(n, size=m, replace=False))
            centers, rootw = train_pts[idx], np.ones(m)
            phases["rsde"] = lambda: np.sort(np.random.default_rng(seed).choice(n, size=m, replace=False))
            k_small = kernels.gram(cfg, centers) / m
        else:
            rs = rsde.kmeans_select(train_pts, m, seed)
            centers, rootw = rs.centers, np.sqrt(rs.weights)
            phases["rsde"] = lambda: rsde.kmeans_select(train_pts, m, seed)
            k_small = kernels.weighted_gram(cfg, rs) / n
        cross = kernels.cross_gram(cfg, train_pts, centers) * rootw[None, :]
        phases["gram"] = lambda: kernels.cross_gram(cfg, train_pts, centers) * rootw[None, :]
        dec = numerics.sym_eig(k_small)

        def extend():
            mu = dec.eigenvalues[:r]
            return (cross @ dec.eigenvectors[:, :r]) / (n * mu)[None, :]

        phases["eig"] = extend
        m_used = m
    else:
        raise ValueError(f"unknown method {method!r}")
    timing = evaluation.time_phases(phases, n=n, m=m_used, r=r, repeats=repeats)
    return model, timing


def run_embedding_experiment(spec: ExperimentSpec):
    """Per (ell, method): embedding/eigenvalue error vs full KPCA, speedups.

    Each repetition re-splits the dataset; errors are the Frobenius norm
    after least-squares alignment to the full model's test embedding,
    averaged over repetitions.  Returns one TrialResult per (ell, method).
    """
    import numpy as np

    from rskpca import dataio, evaluation, kpca, metrics, rsde

    cfg, r = spec.kernel, spec.rank
    reps = []
    for rep in range(spec.repetitions):
        seeds = _child_seeds(spec.seed, rep, 5)
        train, test = dataio.split(spec.dataset, spec.split_fraction, seeds[0])
        full_model, full_timing = timed_fit(
            "full", train.points, cfg, r, test.points, repeats=spec.timing_repeats
        )
        o_full = kpca.project(full_model, test.points)
        shadows = {ell: rsde.shadow_select(train.points, cfg, ell) for ell in spec.ell_grid}
        reps.append(
            {
                "train": train,
                "test": test,
                "full_model": full_model,
                "full_timing": full_timing,
                "o_full": o_full,
                "shadows": shadows,
                "seeds": seeds,
            }
        )

    mean_m = {
        ell: max(r, int(round(np.mean([rep["shadows"][ell].m for rep in reps]))))
        for ell in spec.ell_grid
    }

    rows = []
    for ell in spec.ell_grid:
        for method in spec.methods:
            emb_err, eig_err, speed, m_vals = [], [], [], []
            for rep in reps:
                train, test = rep["train"], rep["test"]
                if method == "full":
                    model, timing = rep["full_model"], rep["full_timing"]
                elif method == "shadow":
                    rs = rep["shadows"][ell]
                    model, timing = timed_fit(
                        "shadow", train.points, cfg, r, test.points,
                        ell=ell, repeats=spec.timing_repeats,
                    )
                else:
                    model, timing = timed_fit(
                        method, train.points, cfg, r, test.points,
                        m=mean_m[ell], seed=rep["seeds"][1], repeats=spec.timing_repeats,
                    )
                emb = kpca.project(model, test.points)
                emb_err.append(metrics.align_embeddings(rep["o_full"], emb).error)
                eig_err.append(
                    float(np.linalg.norm(rep["full_model"].eigenvalues - model.eigenvalues))
                )
                speed.append(evaluation.speedup(rep["full_timing"], timing))
                if method == "full":
                    m_vals.append(train.n)
                elif method == "shadow":
                    m_vals.append(model.reduced.m)
                else:
                    m_vals.append(mean_m[ell])
            speed = np.asarray(speed)
            m_mean = float(np.mean(m_vals))
            rows.append(
                evaluation.TrialResult(
                    method=method,
                    ell=ell,
                    m=m_mean,
                    accuracy=None,
                    embedding_error=float(np.mean(emb_err)),
                    eigenvalue_error=float(np.mean(eig_err)),
                    train_speedup=float(np.mean(speed[:, 0])),
                    test_speedup=float(np.mean(speed[:, 1])),
                    total_speedup=float(np.mean(speed[:, 2])),
                    retained_fraction=m_mean / reps[0]["train"].n,
                )
            )
    return rows


def _cv_experiment(spec: ExperimentSpec):
    """Shared driver for the classification and rsde_compare experiments."""
    import numpy as np

    from rskpca import evaluation, kpca, rsde

    ds, cfg, r = spec.dataset, spec.kernel, spec.rank
    if ds.labels is None:
        raise ValueError(f"the {spec.experiment} experiment needs labels")

    def pipeline(method, ell, m, seed):
        def run(train, test):
            m_eff = None if m is None else min(m, train.n)
            model = fit_method(method, train.points, cfg, r, m=m_eff, ell=ell, seed=seed)
            emb_train = kpca.project(model, train.points)
            emb_test = kpca.project(model, test.points)
            return evaluation.knn_classify(emb_train, train.labels, emb_test, spec.knn_k)

        return run

    acc: dict = {}
    m_by_rep_ell: dict = {}
    for rep in range(spec.repetitions):
        seeds = _child_seeds(spec.seed, rep, 4)
        fold_of = evaluation.fold_assignment(ds.labels, spec.folds, seeds[0])
        for ell in spec.ell_grid:
            fold_ms = [
                rsde.shadow_select(ds.points[fold_of != f], cfg, ell).m
                for f in range(spec.folds)
            ]
            m_by_rep_ell[rep, ell] = max(r, int(round(float(np.mean(fold_ms)))))
        for ell in spec.ell_grid:
            for method in spec.methods:
                m = None if method in ("full", "shadow") else m_by_rep_ell[rep, ell]
                mean_acc, _ = evaluation.kfold_cv(
                    ds, pipeline(method, ell, m, seeds[1]), spec.folds, seeds[0]
                )
                acc.setdefault((ell, method), []).append(mean_acc)

    timing_base = {}
    timing_other = {}
    for ell in spec.ell_grid:
        _, timing_base[ell] = timed_fit(
            "full", ds.points, cfg, r, ds.points, repeats=spec.timing_repeats
        )
        for method in spec.methods:
            m = None if method in ("full", "shadow") else m_by_rep_ell[0, ell]
            _, timing_other[ell, method] = timed_fit(
                method, ds.points, cfg, r, ds.points,
                m=m, ell=ell, seed=_child_seeds(spec.seed, 0, 4)[1],
                repeats=spec.timing_repeats,
            )

    rows = []
    for ell in spec.ell_grid:
        for method in spec.methods:
            timing = timing_other[ell, method]
            train_s, test_s, total_s = evaluation.speedup(timing_base[ell], timing)
            rows.append(
                evaluation.TrialResult(
                    method=method,
                    ell=ell,
                    m=float(timing.m),
                    accuracy=float(np.mean(acc[ell, method])),
                    embedding_error=None,
                    eigenvalue_error=None,
                    train_speedup=train_s,
                    test_speedup=test_s,
                    total_speedup=total_s,
                    retained_fraction=timing.m / ds.n,
                )
            )
    return rows


def run_classification_experiment(spec: ExperimentSpec):
    """k-NN accuracy under stratified CV per (ell, method), plus speedups."""
    return _cv_experiment(spec)


def run_rsde_compare_experiment(spec: ExperimentSpec):
    """The classification pipeline with each reduced-set selector."""
    return _cv_experiment(spec)


def run_bounds_experiment(spec: ExperimentSpec):
    """All four bound reports per ell on the whole dataset."""
    from rskpca import metrics, rsde

    reports = []
    for ell in spec.ell_grid:
        rs = rsde.shadow_select(spec.dataset.points, spec.kernel, ell)
        reports.extend(metrics.bound_reports(spec.kernel, spec.dataset.points, rs, spec.bounds_d))
    return reports


def _write(path: Path, lines) -> Path:
    path.write_text("".join(line + "\n" for line in lines))
    return path


def emit_report(table, out_dir) -> list:
    """Write an experiment table as CSV plus gnuplot-ready panel files.

    TrialResult tables produce results.csv (deterministic), timing.dat
    (wall-clock speedups, excluded from reproducibility guarantees), and
    one panel_<name>.dat per metric (x = ell, one column per method).
    BoundReport tables produce bounds.csv and one panel per theorem.
    """
    from rskpca import evaluation, metrics

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    if table and isinstance(table[0], metrics.BoundReport):
        written.append(
            _write(out_dir / "bounds.csv", [metrics.CSV_HEADER] + [r.csv_row() for r in table])
        )
        for theorem in dict.fromkeys(r.theorem_id for r in table):
            rows = [r for r in table if r.theorem_id == theorem]
            lines = ["# ell empirical bound"] + [
                f"{r.ell!r} {float(r.empirical)!r} {float(r.bound)!r}" for r in rows
            ]
            written.append(_write(out_dir / f"panel_bound_{theorem.lower()}.dat", lines))
        return written

    header = evaluation.TrialResult.DETERMINISTIC_HEADER
    written.append(
        _write(out_dir / "results.csv", [header] + [row.csv_row(header) for row in table])
    )
    written.append(
        _write(
            out_dir / "timing.dat",
            ["# " + evaluation.TrialResult.TIMING_HEADER.replace(",", " ")]
            + [row.csv_row(evaluation.TrialResult.TIMING_HEADER).replace(",", " ") for row in table],
        )
    )
    methods = list(dict.fromkeys(row.method for row in table))
    ells = sorted(set(row.ell for row in table))
    by_key = {(row.ell, row.method): row for row in table}
    panels = {
        "accuracy": "accuracy",
        "embedding_error": "embedding_error",
        "eigenvalue_error": "eigenvalue_error",
        "train_speedup": "train_speedup",
        "test_speedup": "test_speedup",
        "retained": "retained_fraction",
    }
    for panel, attr in panels.items():
        if all(getattr(row, attr) is None for row in table):
            continue
        lines = ["# ell " + " ".join(methods)]
        for ell in ells:
            cells = [repr(float(ell))]
            for method in methods:
                value = getattr(by_key[ell, method], attr)
                cells.append("nan" if value is None else repr(float(value)))
            lines.append(" ".join(cells))
        written.append(_write(out_dir / f"panel_{panel}.dat", lines))
    return written


RUNNERS = {
    "embedding": run_embedding_experiment,
    "classification": run_classification_experiment,
    "rsde_compare": run_rsde_compare_experiment,
    "bounds": run_bounds_experiment,
}


def _set_threads(threads) -> None:
    if threads is None:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS"):
        os.environ[var] = str(threads)


def _violations(reports) -> int:
    return sum(1 for r in reports if r.satisfied is False)


def cmd_run(args) -> int:
    from rskpca import dataio

    cfg = dataio.load_config(args.spec)
    if args.seed is not None:
        cfg["seed"] = args.seed
    spec = spec_from_config(cfg, base_dir=Path(args.spec).parent)
    table = RUNNERS[spec.experiment](spec)
    for path in emit_report(table, args.out_dir):
        print(f"wrote {path}")
    if spec.experiment == "bounds" and _violations(table):
        print(f"{_violations(table)} bound violation(s)", file=sys.stderr)
        return 1
    return 0


def cmd_bounds(args) -> int:
    from rskpca import kernels

    dataset = load_dataset(args.dataset, fmt=args.format, label_column=args.label_column)
    spec = ExperimentSpec(
        experiment="bounds",
        dataset=dataset,
        kernel=kernels.KernelConfig(args.family, args.sigma),
        methods=("shadow",),
        ell_grid=ell_grid(args.ell_min, args.ell_max, args.step),
        repetitions=1,
        rank=args.rank,
        seed=args.seed or 0,
        bounds_d=args.D,
    )
    table = run_bounds_experiment(spec)
    for path in emit_report(table, args.out_dir):
        print(f"wrote {path}")
    bad = _violations(table)
    if bad:
        print(f"{bad} bound violation(s)", file=sys.stderr)
        return 1
    return 0


def cmd_fit(args) -> int:
    from rskpca import kernels, kpca

    dataset = load_dataset(args.dataset, fmt=args.format, label_column=args.label_column)
    cfg = kernels.KernelConfig(args.family, args.sigma)
    model = fit_method(
        args.method, dataset.points, cfg, args.rank,
        m=args.m, ell=args.ell, seed=args.seed or 0,
    )
    kpca.save_model(model, args.out)
    basis = len(model.basis_points)
    print(f"fitted {model.variant} model: rank {model.rank}, basis {basis} of {dataset.n}")
    print(f"wrote {args.out}")
    return 0


def cmd_project(args) -> int:
    from rskpca import kpca

    model = kpca.load_model(args.model)
    dataset = load_dataset(args.dataset, fmt=args.format, label_column=args.label_column)
    emb = kpca.project(model, dataset.points)
    lines = [",".join(f"c{i + 1}" for i in range(emb.shape[1]))]
    lines += [",".join(repr(float(v)) for v in row) for row in emb]
    _write(Path(args.out), lines)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rskpca", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the config seed")
    common.add_argument("--out-dir", default=".", help="directory for report files")
    common.add_argument("--threads", type=int, default=None, help="cap BLAS thread pools")
    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--dataset", required=True, help="dataset file (csv or sparse)")
    data.add_argument("--format", choices=("csv", "sparse"), default=None)
    data.add_argument("--label-column", default=None)
    data.add_argument("--family", choices=("gaussian", "laplacian"), default="gaussian")

    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", parents=[common], help="run an experiment spec")
    p_run.add_argument("spec", help="flat dotted-key JSON experiment config")
    p_run.set_defaults(func=cmd_run)

    p_bounds = sub.add_parser("bounds", parents=[common, data], help="verify the worst-case bounds")
    p_bounds.add_argument("--sigma", type=float, required=True)
    p_bounds.add_argument("--ell-min", type=float, default=3.0)
    p_bounds.add_argument("--ell-max", type=float, default=5.0)
    p_bounds.add_argument("--step", type=float, default=0.1)
    p_bounds.add_argument("--rank", type=int, default=5)
    p_bounds.add_argument("-D", "--D", type=int, default=1, help="eigenspace dimension")
    p_bounds.set_defaults(func=cmd_bounds)

    p_fit = sub.add_parser("fit", parents=[common, data], help="fit and save a model")
    p_fit.add_argument("--sigma", type=float, required=True)
    p_fit.add_argument("--method", choices=EMBED_METHODS + SELECTORS[1:], default="shadow")
    p_fit.add_argument("--ell", type=float, default=4.0)
    p_fit.add_argument("--m", type=int, default=None, help="landmark count for m-based methods")
    p_fit.add_argument("--rank", type=int, default=5)
    p_fit.add_argument("--out", required=True, help="model file to write")
    p_fit.set_defaults(func=cmd_fit)

    p_project = sub.add_parser("project", parents=[common, data], help="project through a model")
    p_project.add_argument("--model", required=True, help="model file from fit")
    p_project.add_argument("--out", required=True, help="embedding CSV to write")
    p_project.set_defaults(func=cmd_project)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _set_threads(args.threads)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
