import numpy as np
import pytest

from braesslab import ballsearch
from braesslab import _ballsearch_py


def _random_cloud(n, d, seed):
    rng = np.random.Generator(np.random.Philox(key=seed))
    return np.ascontiguousarray(rng.standard_normal((n, d)))


def test_backend_identifier():
    assert ballsearch.BACKEND in ("compiled", "python")


def test_single_point():
    pts = np.zeros((1, 2))
    count, idx = ballsearch.max_ball_count(pts, pts, 0.5)
    assert count == 1 and idx == 0


def test_count_matches_bruteforce():
    pts = _random_cloud(500, 3, 1)
    centers = pts[:50]
    r = 1.2
    count, idx = ballsearch.max_ball_count(pts, centers, r)
    d2 = ((pts[None, :, :] - centers[:, None, :]) ** 2).sum(axis=2)
    brute = (d2 <= r * r + 1e-9 * (1 + r * r)).sum(axis=1)
    assert count == brute.max()
    assert brute[idx] == count


def test_python_fallback_matches_active_backend():
    for seed, d, r in ((2, 1, 0.7), (3, 2, 1.0), (4, 5, 2.0)):
        pts = _random_cloud(400, d, seed)
        centers = pts[:64]
        a = ballsearch.max_ball_count(pts, centers, r)
        b = _ballsearch_py.max_ball_count(pts, centers, r)
        assert a == b


def test_integer_lattice_boundary_points():
    # centers on lattice points, radius exactly hitting neighbors: both
    # backends must count boundary points identically
    pts = np.ascontiguousarray(np.arange(20, dtype=float)[:, None])
    a = ballsearch.max_ball_count(pts, pts, 1.0)
    b = _ballsearch_py.max_ball_count(pts, pts, 1.0)
    assert a == b
    assert a[0] == 3  # center plus both neighbors


@pytest.mark.skipif(
    ballsearch.BACKEND != "compiled", reason="compiled backend unavailable"
)
def test_compiled_backend_in_use_by_default():
    from braesslab import _ballsearch_cy

    pts = _random_cloud(300, 2, 9)
    assert _ballsearch_cy.max_ball_count(pts, pts[:32], 1.5) == \
        _ballsearch_py.max_ball_count(pts, pts[:32], 1.5)
