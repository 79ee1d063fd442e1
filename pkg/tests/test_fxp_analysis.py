import csv
import io
import math

import numpy as np
import pytest

from cholinv import ALL_METHODS, QFormat, make_prng
from cholinv.fxp_analysis import (
    ERROR_CSV_HEADER,
    ErrorReport,
    FxpFailure,
    SweepConfig,
    evaluate_matrix,
    fxp_invert,
    run_sweep,
    run_trial,
    trial_matrix,
)

Q213 = QFormat(2, 13)


@pytest.mark.parametrize("method", ALL_METHODS, ids=str)
def test_identity_exact(method):
    res = evaluate_matrix(np.eye(2), method, Q213)
    assert not res.failed
    assert res.rel_err == 0.0 and res.residual == 0.0


@pytest.mark.parametrize("method", ALL_METHODS, ids=str)
def test_wide_format_matches_double(method):
    wide = QFormat(2, 52)
    for t in range(3):
        res = run_trial(8, method, wide, make_prng(7, 8, t))
        assert res.rel_err <= 1e-9


def test_trial_deterministic():
    a = run_trial(6, "proposed-chol", Q213, make_prng(42, 6, 0))
    b = run_trial(6, "proposed-chol", Q213, make_prng(42, 6, 0))
    assert a == b


def test_trial_matrix_fits_format():
    a = trial_matrix(16, Q213, make_prng(42, 16, 3), 0.1)
    assert np.abs(a.real).max() <= Q213.max_value
    assert np.array_equal(a, a.conj().T)


def test_fxp_invert_reports_failures():
    # quantizes to zero: first pivot vanishes
    with pytest.raises(FxpFailure):
        fxp_invert(np.eye(2) * 1e-6, "proposed-ldl", Q213)
    with pytest.raises(FxpFailure):
        fxp_invert(np.eye(2) * 1e-6, "proposed-chol", Q213)
    res = evaluate_matrix(np.eye(2) * 1e-6, "trimat", Q213)
    assert res.failed and math.isnan(res.rel_err)


def test_saturated_pivot_fails():
    fmt = QFormat(1, 8)
    res = evaluate_matrix(np.diag([5.0, 1.0]), "eqsolve-ldl", fmt)
    assert res.failed


def test_single_cell_equals_run_trial():
    cfg = SweepConfig(sizes=[6], methods=["trimat"], formats=[Q213], trials=1, seed=3)
    report = run_sweep(cfg)
    assert len(report.rows) == 1
    row = report.rows[0]
    trial = run_trial(6, "trimat", Q213, make_prng(3, 6, 0), cfg.delta)
    assert row.failures == 0 and row.trials == 1
    assert row.mean_rel_err == trial.rel_err
    assert row.mean_residual == trial.residual


def test_default_shape():
    cfg = SweepConfig(trials=1)
    assert len(cfg.cells()) == 3 * 5
    out = list(csv.reader(io.StringIO(ErrorReport([]).to_csv())))
    assert tuple(out[0]) == ERROR_CSV_HEADER


def test_csv_rows_sorted_and_complete():
    cfg = SweepConfig(sizes=[5, 3], methods=["trimat", "eqsolve-ldl"],
                      formats=[QFormat(2, 13), QFormat(2, 8)], trials=2)
    rows = list(csv.reader(io.StringIO(run_sweep(cfg).to_csv())))[1:]
    keys = [(int(r[0]), r[1], int(r[3])) for r in rows]
    assert keys == sorted(keys) and len(keys) == 8
    for r in rows:
        assert int(r[5]) <= int(r[4])


def test_failures_excluded_from_means():
    # delta tiny: the inverse leaves the Q1.4 range and pivots underflow
    cfg = SweepConfig(sizes=[8], methods=["proposed-ldl"], formats=[QFormat(1, 4)], trials=10, delta=1e-3)
    row = run_sweep(cfg).rows[0]
    assert row.failures > 0
    if row.failures == row.trials:
        assert math.isnan(row.mean_rel_err)


def test_jobs_invariance():
    cfg = SweepConfig(sizes=[4, 6], methods=["proposed-chol", "trimat"], trials=3)
    assert run_sweep(cfg, jobs=1).to_csv() == run_sweep(cfg, jobs=2).to_csv()


def test_order_independent():
    cfg1 = SweepConfig(sizes=[4, 6], methods=["trimat", "proposed-chol"], trials=3)
    cfg2 = SweepConfig(sizes=[6, 4], methods=["proposed-chol", "trimat"], trials=3)
    assert run_sweep(cfg1).to_csv() == run_sweep(cfg2).to_csv()


def test_monotone_in_fraction_bits():
    fmts = [QFormat(2, f) for f in (8, 13, 23)]
    cfg = SweepConfig(sizes=[8], methods=ALL_METHODS, formats=fmts, trials=10)
    report = run_sweep(cfg)
    for m in ALL_METHODS:
        errs = [report.lookup(8, m, f).mean_rel_err for f in fmts]
        assert all(b <= a * 1.05 for a, b in zip(errs, errs[1:])), (m, errs)


@pytest.mark.parametrize("bad", [
    dict(trials=0), dict(sizes=[1]), dict(sizes=[]), dict(delta=0.0), dict(methods=["gauss"]),
])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        SweepConfig(**bad)


def test_lookup_missing():
    with pytest.raises(KeyError):
        ErrorReport([]).lookup(4, "trimat", Q213)
