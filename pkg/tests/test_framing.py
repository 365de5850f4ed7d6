import numpy as np
import pytest

from kirbyfront.framing import (
    f_profile,
    frame_extension,
    frame_rotation,
    framing_map_check,
    g_profile,
    stereographic_point,
)


def test_rotation_n2_is_double_angle():
    t = np.pi / 2
    m = frame_rotation([1.0], t)
    want = np.array([[np.cos(2 * t), -np.sin(2 * t)], [np.sin(2 * t), np.cos(2 * t)]])
    assert np.allclose(m, want, atol=1e-12)
    assert abs(np.linalg.det(m) - 1.0) < 1e-12


def test_rotation_identity_at_zero():
    rng = np.random.default_rng(3)
    for n in range(2, 9):
        v = rng.normal(size=n - 1)
        p = v / np.linalg.norm(v)
        assert np.allclose(frame_rotation(p, 0.0), np.eye(n), atol=1e-12)


def test_profiles_satisfy_constraint():
    for r in np.linspace(0.0, 1.0, 101):
        f, g = f_profile(r), g_profile(r)
        assert abs(f * f + (g * r) ** 2 - 1.0) < 1e-12
    assert f_profile(0.0) == -1.0
    assert f_profile(1.0) == 1.0
    assert abs(g_profile(0.0) - 2.0) < 1e-12


def test_extension_first_column_is_stereographic():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        v = rng.normal(size=n - 1)
        p = v / np.linalg.norm(v)
        r = float(rng.uniform(0, 1))
        t = float(rng.uniform(0, np.pi))
        m = frame_extension(p, r, t)
        assert np.allclose(m[:, 0], stereographic_point(p, r, t), atol=1e-12)


def test_extension_boundary_reproduces_rotation():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        v = rng.normal(size=n - 1)
        p = v / np.linalg.norm(v)
        t = float(rng.uniform(0, np.pi))
        m = frame_extension(p, 1.0, t)
        assert np.allclose(m[1:, 1:], frame_rotation(p, t), atol=1e-12)
        assert np.allclose(m[0, 1:], 0.0, atol=1e-12)
        assert np.allclose(m[1:, 0], 0.0, atol=1e-12)


def test_framing_map_check_passes():
    for n in (2, 5, 8):
        report = framing_map_check(n, samples=200, tol=1e-9, seed=11)
        assert report.passed
        assert report.max_rotation_orth < 1e-9
        assert report.max_extension_det < 1e-9


def test_framing_map_check_validates_arguments():
    with pytest.raises(ValueError):
        framing_map_check(1)
    with pytest.raises(ValueError):
        framing_map_check(3, samples=0)
    with pytest.raises(ValueError):
        framing_map_check(3, tol=0.0)


def test_framing_map_check_deterministic():
    a = framing_map_check(4, samples=50, seed=21).as_dict()
    b = framing_map_check(4, samples=50, seed=21).as_dict()
    assert a == b
