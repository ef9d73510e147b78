import numpy as np
import pandas as pd
import pytest

from helmwave.experiments.config import ExperimentConfig
from helmwave.experiments.tables import (
    TABLE_COLUMNS,
    table_runs,
    make_problem,
    run_table,
    solve_entry,
)


def _small(**fields):
    values = dict(
        experiment="custom",
        kappa=10,
        levels=[0, 1, 2],
        coarse_cells=4,
        algorithm="alg2",
        smoother="gs",
    )
    values.update(fields)
    return ExperimentConfig(**values)


def test_table_runs():
    runs = table_runs(ExperimentConfig.load("table3"))
    assert len(runs) == 8
    assert {run.scheme for run in runs} == {"shifted", "cip_smoothing"}
    assert {run.beta for run in runs if run.scheme == "shifted"} == {0.2}
    assert {run.beta for run in runs if run.scheme != "shifted"} == {None}
    assert [run.level for run in runs[:4]] == [1, 2, 3, 4]

    runs = table_runs(ExperimentConfig.load("table7"))
    assert len(runs) == 16
    assert runs[0].kappa == 180 and runs[0].kappa1 == 60 and runs[0].q == 3


def test_default_penalty_follows_the_order():
    config = _small()
    runs = table_runs(_small(p=[1, 2]))
    first, last = make_problem(config, runs[0]), make_problem(config, runs[-1])
    assert first.sigma == pytest.approx(-0.07 + 0.01j)
    assert last.sigma == pytest.approx(-0.035 + 0.005j)

    custom = _small(gamma_e="0.02+0.1j")
    assert make_problem(custom, runs[0]).sigma == pytest.approx(-0.1 + 0.02j)


def test_small_table():
    table, written = run_table(_small())
    assert list(table.columns) == TABLE_COLUMNS
    assert written == []
    assert list(table.dofs) == [25, 81, 289]

    direct = table.iloc[0]
    assert direct.solver == "direct" and direct.iter == "0"
    assert list(table.solver[1:]) == ["pgmres", "pgmres"]
    assert table.converged.all()
    assert np.all(np.isfinite(table.error))


def test_gaussian_rows_have_no_error():
    config = _small(problem="gaussian", kappa2=[30], q=[3], levels=[1])
    row, outputs = solve_entry(config, table_runs(config)[0])
    assert row["problem"] == "gaussian"
    assert row["kappa1"] == 10 and row["q"] == 3
    assert np.isnan(row["error"])
    assert outputs["report"].converged


def test_saved_outputs(tmp_path):
    config = _small(levels=[0, 1], save_matrices=True)
    table, written = run_table(config, output_dir=tmp_path, verbose=True)
    names = {path.name for path in written}

    for prefix in ("run00", "run01"):
        for suffix in ("matrix.mtx", "rhs.txt", "solution.txt", "grid.txt"):
            assert f"{prefix}_{suffix}" in names
    assert "run01_residuals.csv" in names
    assert "run00_residuals.csv" not in names
    assert all(path.exists() for path in written)

    trace = pd.read_csv(tmp_path / "cycle_trace.csv")
    assert list(trace.columns) == [
        "run",
        "sweep",
        "stage",
        "level",
        "kind",
        "residual",
    ]
    assert set(trace.run) == {1}

    history = pd.read_csv(tmp_path / "run01_residuals.csv")
    assert history.relres.iloc[0] == 1.0
    assert len(history) == int(table.iter.iloc[1]) + 1


def test_non_converged_label():
    row, _ = solve_entry(
        _small(max_iter=1, tol=1e-12, levels=[2]),
        table_runs(_small(levels=[2]))[0],
    )
    assert row["iter"] == ">1"
    assert not row["converged"]


# ---------------------------------------------------------------------------- #
#                                  acceptance                                  #
# ---------------------------------------------------------------------------- #


@pytest.mark.slow
def test_iterations_do_not_grow_with_levels():
    config = ExperimentConfig.load("table6")
    config.p = [1]
    table, _ = run_table(config)
    iterations = table.iter.astype(int)

    assert list(table.dofs) == [16641, 66049, 263169]
    assert iterations.between(9, 21).all()
    assert iterations.max() - iterations.min() <= 3


@pytest.mark.slow
def test_cip_everywhere_at_kappa_100():
    config = ExperimentConfig.load("table1")
    config.p, config.levels = [1], [1, 2]
    table, _ = run_table(config)
    assert list(table.dofs) == [16641, 66049]
    assert table.converged.all()

    level1, level2 = table.iter.astype(int)
    assert 16 <= level1 <= 38
    assert 14 <= level2 <= 34


@pytest.mark.slow
def test_piecewise_constant_wave_number():
    config = ExperimentConfig.load("table7")
    config.kappa2, config.q, config.p, config.levels = [180], [3], [1], [2]
    table, _ = run_table(config)
    assert table.dofs.iloc[0] == 263169
    assert table.converged.all()
    assert 16 <= int(table.iter.iloc[0]) <= 39


@pytest.mark.slow
def test_cip_correction_beats_fem_everywhere():
    config = ExperimentConfig.load("table2")
    config.kappa, config.m2, config.levels = [100.0], [1], [1]
    fem, _ = run_table(config)

    config = ExperimentConfig.load("table3")
    config.scheme, config.levels = ["cip_smoothing"], [1]
    cip, _ = run_table(config)

    assert cip.converged.all()
    assert fem.dofs.iloc[0] == cip.dofs.iloc[0] == 16641
    fem_iterations = int(fem.iter.iloc[0].lstrip(">"))
    assert fem_iterations >= 2 * int(cip.iter.iloc[0])
