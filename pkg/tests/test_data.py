import numpy as np
import pytest
from scipy.stats import norm

from truncsm import data
from truncsm.data import (
    DataError,
    Dataset,
    clip_to_domain,
    load_points_csv,
    read_dataset,
    sample_gaussian_in_l1_hemiball,
    sample_truncated,
    sample_truncated_n,
    write_dataset,
)
from truncsm.geometry import Box, Polygon, contains_batch, hemi_l1_ball, unit_square
from truncsm.models import GaussianMean


def test_kept_fraction_matches_orthant_probability():
    fam = GaussianMean(2)
    n_gen = 10_000
    ds = sample_truncated(fam, np.array([0.5, 0.5]), unit_square(), n_gen, seed=0)
    p = (norm.cdf(0.5) - norm.cdf(-0.5)) ** 2  # ~0.1468
    se = np.sqrt(p * (1 - p) / n_gen)
    assert abs(ds.n / n_gen - p) < 3 * se
    assert ds.meta["n_generated"] == n_gen and ds.meta["n_kept"] == ds.n


def test_huge_box_keeps_everything():
    fam = GaussianMean(2)
    box = Box([-10.0, -10.0], [10.0, 10.0])
    ds = sample_truncated(fam, np.zeros(2), box, 5000, seed=1)
    assert ds.n == 5000


def test_sampling_deterministic():
    fam = GaussianMean(2)
    a = sample_truncated(fam, np.array([0.5, 0.5]), unit_square(), 2000, seed=7)
    b = sample_truncated(fam, np.array([0.5, 0.5]), unit_square(), 2000, seed=7)
    assert np.array_equal(a.points, b.points)


def test_sample_truncated_n_exact_count():
    fam = GaussianMean(2)
    ds = sample_truncated_n(fam, np.array([0.5, 0.5]), unit_square(), 1234, seed=0)
    assert ds.n == 1234
    assert np.all(contains_batch(unit_square(), ds.points))


def test_sample_validation():
    with pytest.raises(DataError):
        sample_truncated(GaussianMean(2), np.zeros(2), unit_square(), 0, seed=0)
    with pytest.raises(DataError):
        sample_truncated_n(GaussianMean(2), np.zeros(2), unit_square(), 0, seed=0)


def test_load_points_csv_skips_malformed(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("longitude,latitude\n-87.6,41.8\nbad,41.9\n-87.7,41.9\n")
    ds = load_points_csv(p, "longitude", "latitude")
    assert ds.n == 2
    assert ds.meta["skipped"] == 1
    assert ds.meta["projection"] == "equirectangular"


def test_load_points_csv_header_only(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("longitude,latitude\n")
    with pytest.raises(DataError, match="zero valid rows"):
        load_points_csv(p, "longitude", "latitude")


def test_load_points_csv_missing_columns(tmp_path):
    p = tmp_path / "cols.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(DataError):
        load_points_csv(p, "longitude", "latitude")


def test_dataset_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    ds = Dataset(points=rng.standard_normal((50, 3)), meta={"seed": 0})
    path = tmp_path / "ds.csv"
    write_dataset(ds, path)
    back = read_dataset(path)
    assert np.allclose(back.points, ds.points, atol=1e-9)
    assert back.meta["seed"] == 0


def test_clip_identity_when_inside():
    rng = np.random.default_rng(1)
    pts = rng.uniform(0.05, 0.95, size=(100, 2))
    ds = clip_to_domain(Dataset(points=pts), unit_square())
    assert ds.n == 100 and ds.meta["n_removed_by_clip"] == 0


def test_clip_vertex_point_removed():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    pts = np.array([[0.0, 0.0], [0.2, 0.2]])
    ds = clip_to_domain(Dataset(points=pts), tri)
    assert ds.n == 1 and ds.meta["n_removed_by_clip"] == 1


def test_clip_half_in_half_out():
    pts = np.vstack([np.full((10, 2), 0.5), np.full((10, 2), 1.5)])
    ds = clip_to_domain(Dataset(points=pts), unit_square())
    assert ds.n == 10


def test_clip_all_removed_errors():
    with pytest.raises(DataError):
        clip_to_domain(Dataset(points=np.full((5, 2), 2.0)), unit_square())


def test_hemiball_sampler_inside_and_deterministic():
    for d in (2, 4, 8):
        ds = sample_gaussian_in_l1_hemiball(np.full(d, 0.5), 200, seed=0)
        assert ds.n == 200
        assert np.all(contains_batch(hemi_l1_ball(d), ds.points))
        again = sample_gaussian_in_l1_hemiball(np.full(d, 0.5), 200, seed=0)
        assert np.array_equal(ds.points, again.points)


def test_hemiball_sampler_matches_direct_rejection():
    # at d=2 direct rejection from the Gaussian is feasible; compare moments
    d = 2
    mean = np.full(d, 0.5)
    ds = sample_gaussian_in_l1_hemiball(mean, 20_000, seed=0)
    rng = np.random.default_rng(1)
    dom = hemi_l1_ball(d)
    direct = []
    while sum(len(a) for a in direct) < 20_000:
        Z = mean + rng.standard_normal((200_000, d))
        keep = contains_batch(dom, Z)
        direct.append(Z[keep])
    D = np.concatenate(direct)[:20_000]
    # mean within 4 combined standard errors per coordinate
    se = np.sqrt(ds.points.var(axis=0) / ds.n + D.var(axis=0) / len(D))
    assert np.all(np.abs(ds.points.mean(axis=0) - D.mean(axis=0)) < 4 * se)
    se2 = np.sqrt(ds.points.var(axis=0) ** 2 / ds.n + D.var(axis=0) ** 2 / len(D)) * np.sqrt(2)
    assert np.all(np.abs(ds.points.var(axis=0) - D.var(axis=0)) < 4 * se2)
