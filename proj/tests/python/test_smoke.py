"""Smoke tests for the _ctrlgraph python module."""

import math
import sys

import _ctrlgraph as cg


def test_sampling_reproducible():
    a = cg.sample_gnp(12, 0.5, seed=7, trial=3)
    b = cg.sample_gnp(12, 0.5, seed=7, trial=3)
    assert a == b
    c = cg.sample_gnp(12, 0.5, seed=7, trial=4)
    assert a != c
    for i in range(12):
        assert a[i][i] == 0
        for j in range(12):
            assert a[i][j] == a[j][i]
            assert a[i][j] in (0, 1)


def test_known_verdicts():
    p2 = [[0, 1], [1, 0]]
    v = cg.is_controllable(p2)
    assert not v["controllable"]
    assert v["rank"] == 1

    diag = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    v = cg.is_controllable(diag)
    assert v["controllable"]
    assert v["rank"] == 3
    assert v["certificate"] == "full-rank-proved"

    exact = cg.is_controllable(diag, policy="exact")
    assert exact["controllable"]
    assert exact["certificate"] == "exact-rational"


def test_simple_spectrum_and_profile():
    k2 = [[0, 1], [1, 0]]
    assert cg.simple_spectrum(k2)
    k3 = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert not cg.simple_spectrum(k3)

    prof = cg.eigvec_dot_profile([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert len(prof) == 3
    assert all(abs(d - 1.0) < 1e-9 for d in prof)


def test_lcd_bounds():
    n = 8
    x = [1.0 / math.sqrt(n)] * n
    r = cg.lcd(x, L=2.0)
    assert r["lower"] >= 2.0
    assert r["lower"] >= math.sqrt(n) / 2 - 1e-9


def test_classify_flat_vector():
    n = 24
    x = [1.0 / math.sqrt(n)] * n
    rep = cg.classify(x)
    assert rep["incompressible"]
    expected = math.sqrt((n - math.floor(0.1 * n)) / n)
    assert abs(rep["sparse_distance"] - expected) < 1e-9


def test_enumeration_matches_frozen_counts():
    assert cg.enumerate_small(1) == (1, 1)
    assert cg.enumerate_small(2) == (2, 0)
    assert cg.enumerate_small(3) == (8, 0)
    assert cg.enumerate_small(4) == (64, 0)


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
