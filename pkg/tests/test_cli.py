"""Tests for the experiment runner and command-line interface."""

import json
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from rskpca import cli, dataio, evaluation, kpca, metrics
from rskpca.evaluation import PhaseTiming, TrialResult
from rskpca.kernels import KernelConfig
from rskpca.metrics import BoundReport

GAUSS3 = KernelConfig("gaussian", 3.0)


def blob_dataset(n=60, seed=0, spread=0.4):
    return dataio.synth_blobs(n=n, d=2, clusters=3, spread=spread, seed=seed)


def write_blob_csv(tmp_path, n=60, seed=0):
    ds = blob_dataset(n=n, seed=seed)
    path = tmp_path / "blobs.csv"
    lines = ["x,y,cls"]
    lines += [
        f"{p[0]!r},{p[1]!r},{l}" for p, l in zip(ds.points.tolist(), ds.labels)
    ]
    path.write_text("\n".join(lines) + "\n")
    return path


class TestEllGrid:
    def test_canonical_sweep_has_21_points(self):
        grid = cli.ell_grid(3.0, 5.0, 0.1)
        assert len(grid) == 21
        assert grid[0] == 3.0 and grid[-1] == 5.0

    def test_rounding_avoids_float_drift(self):
        grid = cli.ell_grid(3.0, 5.0, 0.1)
        assert 3.3 in grid and 4.7 in grid

    def test_single_point_when_endpoints_coincide(self):
        assert cli.ell_grid(4.0, 4.0, 0.1) == (4.0,)

    def test_rejects_nonpositive_step(self):
        with pytest.raises(ValueError, match="step must be positive"):
            cli.ell_grid(3.0, 5.0, 0.0)

    def test_rejects_reversed_endpoints(self):
        with pytest.raises(ValueError, match="empty sweep"):
            cli.ell_grid(5.0, 3.0, 0.1)


class TestExperimentSpec:
    def _spec(self, **over):
        base = dict(
            experiment="embedding",
            dataset=blob_dataset(),
            kernel=GAUSS3,
            methods=("full", "shadow"),
            ell_grid=(3.0, 4.0),
        )
        base.update(over)
        return cli.ExperimentSpec(**base)

    def test_defaults(self):
        spec = self._spec()
        assert spec.repetitions == 10
        assert spec.rank == 5
        assert spec.folds == 10

    def test_rejects_unknown_experiment(self):
        with pytest.raises(ValueError, match="unknown experiment"):
            self._spec(experiment="benchmark")

    def test_rejects_unsorted_grid(self):
        with pytest.raises(ValueError, match="strictly ascending"):
            self._spec(ell_grid=(4.0, 3.0))

    def test_rejects_empty_grid(self):
        with pytest.raises(ValueError, match="strictly ascending"):
            self._spec(ell_grid=())

    def test_rejects_zero_repetitions(self):
        with pytest.raises(ValueError, match="at least one repetition"):
            self._spec(repetitions=0)

    def test_selector_methods_only_for_rsde_compare(self):
        spec = self._spec(experiment="rsde_compare", methods=("shadow", "kmeans"))
        assert spec.methods == ("shadow", "kmeans")
        with pytest.raises(ValueError, match="unknown method 'kmeans'"):
            self._spec(methods=("kmeans",))
        with pytest.raises(ValueError, match="unknown method 'nystrom'"):
            self._spec(experiment="rsde_compare", methods=("nystrom",))


class TestSpecFromConfig:
    def test_minimal_config_fills_defaults(self, tmp_path):
        csv = write_blob_csv(tmp_path)
        cfg = {
            "experiment": "embedding",
            "dataset.path": csv.name,
            "dataset.label_column": "cls",
            "kernel.sigma": 3.0,
        }
        spec = cli.spec_from_config(cfg, base_dir=tmp_path)
        assert spec.methods == cli.EMBED_METHODS
        assert len(spec.ell_grid) == 21
        assert spec.kernel == GAUSS3
        assert spec.dataset.n == 60
        assert spec.dataset.labels is not None

    def test_bounds_defaults_to_shadow_only(self, tmp_path):
        csv = write_blob_csv(tmp_path)
        cfg = {
            "experiment": "bounds",
            "dataset.path": csv.name,
            "kernel.sigma": 3.0,
        }
        spec = cli.spec_from_config(cfg, base_dir=tmp_path)
        assert spec.methods == ("shadow",)

    def test_rejects_unknown_keys(self, tmp_path):
        csv = write_blob_csv(tmp_path)
        cfg = {
            "experiment": "bounds",
            "dataset.path": csv.name,
            "kernel.sigma": 3.0,
            "kernel.gamma": 1.0,
        }
        with pytest.raises(ValueError, match="unknown config keys.*kernel.gamma"):
            cli.spec_from_config(cfg, base_dir=tmp_path)

    @pytest.mark.parametrize("missing", ["experiment", "dataset.path", "kernel.sigma"])
    def test_rejects_missing_required_key(self, tmp_path, missing):
        csv = write_blob_csv(tmp_path)
        cfg = {
            "experiment": "bounds",
            "dataset.path": csv.name,
            "kernel.sigma": 3.0,
        }
        del cfg[missing]
        with pytest.raises(ValueError, match=missing):
            cli.spec_from_config(cfg, base_dir=tmp_path)


class TestFitMethod:
    @pytest.mark.parametrize(
        "method,variant",
        [
            ("full", "full"),
            ("shadow", "reduced"),
            ("subsampled", "subsampled"),
            ("nystrom", "nystrom"),
            ("wnystrom", "wnystrom"),
            ("kmeans", "reduced"),
            ("paring", "reduced"),
            ("herding", "reduced"),
        ],
    )
    def test_dispatch(self, method, variant):
        ds = blob_dataset()
        model = cli.fit_method(method, ds.points, GAUSS3, 3, m=10, ell=4.0, seed=0)
        assert model.variant == variant
        assert model.rank == 3

    def test_m_is_clamped_to_at_least_rank(self):
        ds = blob_dataset()
        model = cli.fit_method("subsampled", ds.points, GAUSS3, 4, m=1, seed=0)
        assert model.basis_points.shape[0] == 4

    def test_m_is_clamped_to_at_most_n(self):
        ds = blob_dataset(n=20)
        model = cli.fit_method("nystrom", ds.points, GAUSS3, 3, m=500, seed=0)
        assert model.eigenvalues.shape == (3,)

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="unknown method"):
            cli.fit_method("magic", blob_dataset().points, GAUSS3, 3)


class TestTimedFit:
    def test_full_times_gram_eig_project(self):
        ds = blob_dataset()
        model, timing = cli.timed_fit(
            "full", ds.points, GAUSS3, 3, ds.points, repeats=1
        )
        assert model.variant == "full"
        assert timing.rsde_ms == 0.0
        assert timing.gram_ms > 0.0
        assert timing.eig_ms > 0.0
        assert timing.project_ms > 0.0
        assert (timing.n, timing.m, timing.r) == (60, 60, 3)

    def test_shadow_reports_reduced_size(self):
        ds = blob_dataset()
        model, timing = cli.timed_fit(
            "shadow", ds.points, GAUSS3, 3, ds.points, ell=4.0, repeats=1
        )
        assert timing.m == model.reduced.m
        assert timing.rsde_ms > 0.0

    @pytest.mark.parametrize("method", ["subsampled", "nystrom", "wnystrom", "kmeans"])
    def test_landmark_methods_report_m(self, method):
        ds = blob_dataset()
        _, timing = cli.timed_fit(
            method, ds.points, GAUSS3, 3, ds.points, m=12, seed=0, repeats=1
        )
        assert timing.m == 12


class TestRunEmbeddingExperiment:
    def _spec(self, **over):
        base = dict(
            experiment="embedding",
            dataset=blob_dataset(),
            kernel=GAUSS3,
            methods=("full", "shadow", "subsampled"),
            ell_grid=(3.0, 4.0),
            repetitions=2,
            rank=3,
            timing_repeats=1,
        )
        base.update(over)
        return cli.ExperimentSpec(**base)

    def test_one_row_per_ell_method_pair(self):
        rows = cli.run_embedding_experiment(self._spec())
        assert len(rows) == 6
        assert {(r.ell, r.method) for r in rows} == {
            (ell, m) for ell in (3.0, 4.0) for m in ("full", "shadow", "subsampled")
        }

    def test_full_rows_are_the_baseline(self):
        rows = cli.run_embedding_experiment(self._spec())
        for row in rows:
            if row.method == "full":
                assert row.embedding_error < 1e-10
                assert row.eigenvalue_error == 0.0
                assert row.retained_fraction == 1.0
                assert row.m == 48  # 80% train split of 60

    def test_shadow_rows_retain_fewer_points(self):
        rows = cli.run_embedding_experiment(self._spec())
        for row in rows:
            if row.method == "shadow":
                assert row.m < 48
                assert row.retained_fraction < 1.0
                assert row.accuracy is None

    def test_deterministic_rows_are_reproducible(self):
        header = TrialResult.DETERMINISTIC_HEADER
        a = [r.csv_row(header) for r in cli.run_embedding_experiment(self._spec())]
        b = [r.csv_row(header) for r in cli.run_embedding_experiment(self._spec())]
        assert a == b


class TestCvExperiments:
    def _spec(self, **over):
        base = dict(
            experiment="classification",
            dataset=blob_dataset(),
            kernel=GAUSS3,
            methods=("full", "shadow"),
            ell_grid=(4.0,),
            repetitions=1,
            rank=3,
            folds=3,
            knn_k=1,
            timing_repeats=1,
        )
        base.update(over)
        return cli.ExperimentSpec(**base)

    def test_separated_blobs_classify_perfectly(self):
        rows = cli.run_classification_experiment(self._spec())
        assert len(rows) == 2
        for row in rows:
            assert row.accuracy == 1.0
            assert row.embedding_error is None

    def test_identity_reduction_matches_full_accuracy(self):
        # a huge ell makes every point its own center, so the shadow
        # pipeline is the full pipeline
        rows = cli.run_classification_experiment(self._spec(ell_grid=(1000.0,)))
        by_method = {r.method: r for r in rows}
        assert by_method["shadow"].accuracy == by_method["full"].accuracy
        assert by_method["shadow"].m == 60.0

    def test_selector_comparison_runs_all_selectors(self):
        spec = self._spec(
            experiment="rsde_compare",
            methods=("shadow", "kmeans", "paring", "herding"),
        )
        rows = cli.run_rsde_compare_experiment(spec)
        assert {r.method for r in rows} == {"shadow", "kmeans", "paring", "herding"}
        for row in rows:
            assert 0.0 <= row.accuracy <= 1.0

    def test_requires_labels(self):
        unlabeled = dataio.DataSet(points=blob_dataset().points)
        with pytest.raises(ValueError, match="needs labels"):
            cli.run_classification_experiment(self._spec(dataset=unlabeled))


class TestRunBoundsExperiment:
    def test_four_reports_per_ell(self):
        spec = cli.ExperimentSpec(
            experiment="bounds",
            dataset=blob_dataset(),
            kernel=GAUSS3,
            methods=("shadow",),
            ell_grid=(3.0, 4.0, 5.0),
            repetitions=1,
        )
        reports = cli.run_bounds_experiment(spec)
        assert len(reports) == 12
        assert [r.theorem_id for r in reports[:4]] == ["MMD", "Eigen", "HS", "Projection"]
        for r in reports:
            if r.theorem_id != "Projection":
                assert r.satisfied is True


class TestEmitReport:
    def _trial(self, method="shadow", ell=3.0, **over):
        base = dict(
            method=method,
            ell=ell,
            m=10,
            accuracy=0.9,
            embedding_error=None,
            eigenvalue_error=None,
            train_speedup=5.0,
            test_speedup=6.0,
            total_speedup=5.5,
            retained_fraction=0.2,
        )
        base.update(over)
        return TrialResult(**base)

    def test_trial_table_files(self, tmp_path):
        table = [
            self._trial("full", 3.0, m=50, retained_fraction=1.0),
            self._trial("shadow", 3.0),
            self._trial("full", 4.0, m=50, retained_fraction=1.0),
            self._trial("shadow", 4.0),
        ]
        written = {p.name for p in cli.emit_report(table, tmp_path)}
        assert "results.csv" in written
        assert "timing.dat" in written
        assert "panel_accuracy.dat" in written
        assert "panel_retained.dat" in written
        # all-None metrics are skipped entirely
        assert "panel_embedding_error.dat" not in written
        results = (tmp_path / "results.csv").read_text().splitlines()
        assert results[0] == TrialResult.DETERMINISTIC_HEADER
        assert len(results) == 5
        panel = (tmp_path / "panel_accuracy.dat").read_text().splitlines()
        assert panel[0] == "# ell full shadow"
        assert len(panel) == 3

    def test_empty_table_writes_headers_only(self, tmp_path):
        written = {p.name for p in cli.emit_report([], tmp_path)}
        assert written == {"results.csv", "timing.dat"}
        assert (tmp_path / "results.csv").read_text().splitlines() == [
            TrialResult.DETERMINISTIC_HEADER
        ]

    def test_bound_table_files(self, tmp_path):
        reports = [
            BoundReport("MMD", 3.0, 1.0, 100, 10, 0.1, 0.5),
            BoundReport("HS", 3.0, 1.0, 100, 10, 0.2, 0.7),
            BoundReport("MMD", 4.0, 1.0, 100, 12, 0.05, 0.3),
        ]
        written = {p.name for p in cli.emit_report(reports, tmp_path)}
        assert written == {"bounds.csv", "panel_bound_mmd.dat", "panel_bound_hs.dat"}
        lines = (tmp_path / "bounds.csv").read_text().splitlines()
        assert lines[0] == metrics.CSV_HEADER
        assert lines[1].startswith("MMD,3.0,1.0,100,10,,0.1,0.5,true")
        panel = (tmp_path / "panel_bound_mmd.dat").read_text().splitlines()
        assert panel[0] == "# ell empirical bound"
        assert len(panel) == 3

    def test_reruns_are_byte_identical_for_deterministic_files(self, tmp_path):
        spec = cli.ExperimentSpec(
            experiment="classification",
            dataset=blob_dataset(),
            kernel=GAUSS3,
            methods=("full", "shadow"),
            ell_grid=(4.0,),
            repetitions=1,
            rank=3,
            folds=3,
            timing_repeats=1,
        )
        for d in ("a", "b"):
            cli.emit_report(cli.run_classification_experiment(spec), tmp_path / d)
        for name in ("results.csv", "panel_accuracy.dat", "panel_retained.dat"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()


class TestCommandLine:
    def test_bounds_command_writes_reports(self, tmp_path, capsys):
        csv = write_blob_csv(tmp_path)
        code = cli.main(
            [
                "bounds",
                "--dataset", str(csv),
                "--label-column", "cls",
                "--sigma", "3.0",
                "--ell-min", "3.0",
                "--ell-max", "4.0",
                "--step", "0.5",
                "--out-dir", str(tmp_path / "out"),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "bounds.csv" in out
        lines = (tmp_path / "out" / "bounds.csv").read_text().splitlines()
        assert lines[0] == metrics.CSV_HEADER
        assert len(lines) == 1 + 3 * 4  # three ells, four theorems

    def test_run_command_with_config(self, tmp_path):
        csv = write_blob_csv(tmp_path)
        cfg_path = tmp_path / "exp.json"
        cfg_path.write_text(
            json.dumps(
                {
                    "experiment": "bounds",
                    "dataset.path": csv.name,
                    "dataset.label_column": "cls",
                    "kernel.sigma": 3.0,
                    "sweep.ell_min": 3.0,
                    "sweep.ell_max": 3.0,
                    "sweep.ell_step": 0.1,
                }
            )
        )
        code = cli.main(["run", str(cfg_path), "--out-dir", str(tmp_path / "out")])
        assert code == 0
        assert (tmp_path / "out" / "bounds.csv").exists()

    def test_missing_dataset_exits_2(self, tmp_path, capsys):
        code = cli.main(
            ["bounds", "--dataset", str(tmp_path / "nope.csv"), "--sigma", "1.0"]
        )
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_invalid_config_exits_2(self, tmp_path, capsys):
        cfg_path = tmp_path / "bad.json"
        cfg_path.write_text(json.dumps({"experiment": "bounds"}))
        code = cli.main(["run", str(cfg_path)])
        assert code == 2
        assert "dataset.path" in capsys.readouterr().err

    def test_bound_violation_exits_1(self, tmp_path, capsys, monkeypatch):
        csv = write_blob_csv(tmp_path)
        violating = BoundReport("MMD", 3.0, 1.0, 60, 10, empirical=9.9, bound=0.1)
        monkeypatch.setattr(cli, "run_bounds_experiment", lambda spec: [violating])
        code = cli.main(
            [
                "bounds",
                "--dataset", str(csv),
                "--label-column", "cls",
                "--sigma", "3.0",
                "--out-dir", str(tmp_path / "out"),
            ]
        )
        assert code == 1
        assert "1 bound violation(s)" in capsys.readouterr().err

    def test_fit_then_project_round_trip(self, tmp_path):
        csv = write_blob_csv(tmp_path)
        model_path = tmp_path / "model.json"
        emb_path = tmp_path / "emb.csv"
        assert (
            cli.main(
                [
                    "fit",
                    "--dataset", str(csv),
                    "--label-column", "cls",
                    "--sigma", "3.0",
                    "--method", "shadow",
                    "--ell", "4.0",
                    "--rank", "3",
                    "--out", str(model_path),
                ]
            )
            == 0
        )
        assert (
            cli.main(
                [
                    "project",
                    "--dataset", str(csv),
                    "--label-column", "cls",
                    "--model", str(model_path),
                    "--out", str(emb_path),
                ]
            )
            == 0
        )
        lines = emb_path.read_text().splitlines()
        assert lines[0] == "c1,c2,c3"
        emb = np.loadtxt(str(emb_path), delimiter=",", skiprows=1)
        assert emb.shape == (60, 3)
        # the CSV agrees with projecting through the loaded model
        model = kpca.load_model(model_path)
        ds = dataio.load_csv(csv, label_column="cls")
        assert_allclose(emb, kpca.project(model, ds.points), rtol=1e-15)

    def test_threads_flag_caps_blas_pools(self):
        saved = {
            var: os.environ.get(var)
            for var in (
                "OMP_NUM_THREADS",
                "OPENBLAS_NUM_THREADS",
                "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS",
            )
        }
        try:
            cli._set_threads(2)
            for var in saved:
                assert os.environ[var] == "2"
        finally:
            for var, value in saved.items():
                if value is None:
                    os.environ.pop(var, None)
                else:
                    os.environ[var] = value

    def test_seed_flag_overrides_config(self, tmp_path, monkeypatch):
        csv = write_blob_csv(tmp_path)
        cfg_path = tmp_path / "exp.json"
        cfg_path.write_text(
            json.dumps(
                {
                    "experiment": "bounds",
                    "dataset.path": csv.name,
                    "kernel.sigma": 3.0,
                    "seed": 0,
                }
            )
        )
        seen = {}

        def spy(spec):
            seen["seed"] = spec.seed
            return []

        monkeypatch.setitem(cli.RUNNERS, "bounds", spy)
        code = cli.main(
            ["run", str(cfg_path), "--seed", "7", "--out-dir", str(tmp_path / "out")]
        )
        assert code == 0
        assert seen["seed"] == 7
