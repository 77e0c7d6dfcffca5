import numpy as np
import pytest

from symbidisc.geometry import (
    GammaPoint,
    RegionTag,
    classify_point,
    point_roots,
    symmetrize_point,
)


class TestSymmetrizePoint:
    def test_basic(self):
        pt = symmetrize_point(0.5, -0.5)
        assert pt.s == 0 and pt.p == -0.25

    def test_double(self):
        pt = symmetrize_point(1, 1)
        assert pt.s == 2 and pt.p == 1

    def test_zero(self):
        pt = symmetrize_point(0, 0)
        assert pt.s == 0 and pt.p == 0

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            symmetrize_point(float("inf"), 0)


class TestPointRoots:
    def test_inverse_of_symmetrization(self):
        assert point_roots(GammaPoint(0, -0.25)) == (0.5, -0.5)

    def test_double_root(self):
        assert point_roots(GammaPoint(2, 1)) == (1, 1)

    def test_repeated_half(self):
        z1, z2 = point_roots(GammaPoint(1, 0.25))
        assert abs(z1 - 0.5) <= 1e-14 and abs(z2 - 0.5) <= 1e-14

    def test_roundtrip_on_random_pairs(self):
        rng = np.random.default_rng(21)
        for _ in range(10000):
            z1 = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
            z2 = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
            r1, r2 = point_roots(symmetrize_point(z1, z2))
            direct = abs(r1 - z1) + abs(r2 - z2)
            swapped = abs(r1 - z2) + abs(r2 - z1)
            assert min(direct, swapped) <= 1e-10

    def test_recovers_point(self):
        rng = np.random.default_rng(22)
        for _ in range(200):
            s = 2 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
            p = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
            z1, z2 = point_roots(GammaPoint(s, p))
            back = symmetrize_point(z1, z2)
            scale = 1 + abs(s) + abs(p)
            assert abs(back.s - s) + abs(back.p - p) <= 1e-12 * scale


class TestClassifyPoint:
    def test_boundary_but_not_distinguished(self):
        assert classify_point(GammaPoint(1, 0)) == RegionTag.BOUNDARY_NOT_BGAMMA

    def test_diagonal_distinguished_point(self):
        assert classify_point(GammaPoint(2, 1)) == RegionTag.BDGAMMA

    def test_origin(self):
        assert classify_point(GammaPoint(0, 0)) == RegionTag.INTERIOR_G

    def test_outside(self):
        assert classify_point(GammaPoint(4, 1)) == RegionTag.OUTSIDE

    def test_open_bidisc_maps_to_interior(self):
        rng = np.random.default_rng(23)
        for _ in range(10000):
            z1 = 0.999 * np.sqrt(rng.uniform(0, 1)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            z2 = 0.999 * np.sqrt(rng.uniform(0, 1)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            assert classify_point(symmetrize_point(z1, z2)) == RegionTag.INTERIOR_G

    def test_torus_maps_to_distinguished_boundary(self):
        rng = np.random.default_rng(24)
        for _ in range(10000):
            t1, t2 = rng.uniform(0, 2 * np.pi, 2)
            tag = classify_point(symmetrize_point(np.exp(1j * t1), np.exp(1j * t2)))
            assert tag in (RegionTag.BGAMMA_NOT_BDGAMMA, RegionTag.BDGAMMA)
            gap = abs(np.exp(1j * t1) - np.exp(1j * t2))
            if gap > 1e-6:
                assert tag == RegionTag.BGAMMA_NOT_BDGAMMA

    def test_coincident_torus_angles_hit_the_diagonal(self):
        rng = np.random.default_rng(25)
        for _ in range(50):
            t = rng.uniform(0, 2 * np.pi)
            z = np.exp(1j * t)
            assert classify_point(symmetrize_point(z, z)) == RegionTag.BDGAMMA
