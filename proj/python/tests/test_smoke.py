"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import isentropy


def ramp_members(offsets, nx=6, ny=5):
    base = np.add.outer(np.arange(ny, dtype=float), np.arange(nx, dtype=float))
    return np.stack([base + off for off in offsets])


def test_make_ensemble_and_members():
    field = isentropy.make_ensemble(ramp_members([-0.5, 0.0, 0.5]), name="ramp")
    assert field.member_count == 3
    assert (field.dims.nx, field.dims.ny, field.dims.nz) == (6, 5, 1)
    np.testing.assert_allclose(field.member(1), ramp_members([0.0])[0])


def test_entropy_pipeline_deterministic_field_is_zero():
    field = isentropy.make_ensemble(ramp_members([0.0, 0.0, 0.0]))
    models = isentropy.fit_model(field, "gaussian")
    ef = isentropy.entropy_field(models, 4.2)
    assert ef.total_entropy == 0.0
    assert ef.cells.shape == (4, 5)


def test_maximal_uncertainty_cell():
    members = np.stack([np.zeros((2, 2)), np.ones((2, 2))])
    field = isentropy.make_ensemble(members)
    ef = isentropy.entropy_field(isentropy.fit_model(field, "uniform"), 0.5)
    assert ef.cells.shape == (1, 1)
    assert ef.total_entropy == pytest.approx(4.0)


def test_inject_noise_uniform_support_and_determinism():
    base = np.zeros((4, 4))
    a = isentropy.inject_noise(base, "uniform", magnitude=0.3, members=20, seed=9)
    b = isentropy.inject_noise(base, "uniform", magnitude=0.3, members=20, seed=9)
    for m in range(20):
        vals = a.member(m)
        assert np.all(np.abs(vals) <= 0.3)
        np.testing.assert_array_equal(vals, b.member(m))


def test_compare_models_rows_and_baseline():
    base = np.sin(0.4 * np.arange(12))[None, :] * np.ones((12, 1))
    field = isentropy.inject_noise(base.T, "gaussian", magnitude=0.2, members=15, seed=1)
    rows = isentropy.compare_models(field, ["uniform", "histogram:5"], [0.1])
    assert [r["model"] for r in rows] == ["full", "uniform", "histogram"]
    assert rows[0]["delta_from_baseline"] == 0.0
    assert rows[2]["bins"] == 5
    assert rows[2]["storage_values_per_vertex"] == 7.0


def test_bin_sweep_one_bin_collapse():
    base = np.cos(0.3 * np.arange(10))[None, :] * np.ones((8, 1))
    field = isentropy.inject_noise(base, "gaussian", magnitude=0.15, members=12, seed=4)
    sweep = isentropy.bin_sweep(field, "quantile", 0.2, [1, 2, 5])
    uniform_total = isentropy.compare_models(field, ["uniform"], [0.2])[1]["total_entropy_bits"]
    assert sweep["points"][0][0] == 1
    assert math.isclose(sweep["points"][0][1], uniform_total, abs_tol=1e-12)


def test_storage_cost_and_normal_cdf():
    assert isentropy.storage_cost("quantile:5", 20) == 6
    assert isentropy.storage_cost("full", 15) == 15
    assert isentropy.normal_cdf(0.0) == pytest.approx(0.5)
    assert isentropy.normal_cdf(1.0) == pytest.approx(0.8413447460685429, abs=1e-9)


def test_slice_and_subsample(tmp_path):
    members = np.stack([np.arange(64, dtype=float).reshape(4, 4, 4) + off for off in (0.0, 1.0)])
    field = isentropy.make_ensemble(members)
    plane = isentropy.slice_z(field, 2)
    assert plane.dims.nz == 1
    np.testing.assert_array_equal(plane.member(0), members[0, 2])
    small = isentropy.subsample(field, 2)
    assert (small.dims.nx, small.dims.ny, small.dims.nz) == (2, 2, 2)

    manifest = tmp_path / "vol.json"
    isentropy.write_ensemble(field, str(manifest))
    back = isentropy.load_ensemble(str(manifest))
    np.testing.assert_allclose(back.member(1), members[1], rtol=1e-6)
