import importlib
import random
from fractions import Fraction

import numpy as np
import pytest

from gbsdual import kernels
from gbsdual.algebra import hafnian
from gbsdual.errors import SizeLimitError
from gbsdual.graphs import complete_graph

needs_ext = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")


def random_rows(rng, k, frac=False, high=4):
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            v = rng.randint(-high, high)
            rows[i][j] = rows[j][i] = Fraction(v, rng.randint(1, 3)) if frac else v
    return rows


def submatrix(rows, mask):
    idx = [i for i in range(len(rows)) if mask >> i & 1]
    return [[rows[i][j] for j in idx] for i in idx]


@pytest.mark.parametrize("backend", ["python", pytest.param("cython", marks=needs_ext)])
def test_subset_table_matches_hafnian(backend):
    rng = random.Random(3)
    for k in range(0, 9):
        for frac in (False, True):
            rows = random_rows(rng, k, frac)
            table = kernels.subset_hafnians(rows, backend=backend)
            assert len(table) == 1 << k
            for mask in range(1 << k):
                assert table[mask] == hafnian(submatrix(rows, mask))


@pytest.mark.parametrize("backend", ["python", pytest.param("cython", marks=needs_ext)])
def test_graded_sums_match_subset_table(backend):
    rng = random.Random(5)
    rows = random_rows(rng, 7)
    table = kernels.subset_hafnians(rows, backend="python")
    graded = kernels.graded_hafnian_sums(rows, backend=backend)
    for mask in range(1 << 7):
        for s in range(8):
            expect = sum(table[t] for t in range(1 << 7) if t & ~mask == 0 and bin(t).count("1") == s)
            assert graded[mask][s] == expect


@needs_ext
def test_backends_agree_on_larger_input():
    rng = random.Random(9)
    rows = random_rows(rng, 14)
    assert kernels.subset_hafnians(rows, backend="python") == kernels.subset_hafnians(rows, backend="cython")


@needs_ext
def test_int64_overflow_falls_back_to_exact():
    big = 10**12
    rows = [[0 if i == j else big for j in range(8)] for i in range(8)]
    # 105 perfect matchings of K8, each a product of four entries ~ 1e48
    assert kernels.subset_hafnians(rows)[-1] == 105 * big**4


@pytest.mark.parametrize("backend", ["python", pytest.param("cython", marks=needs_ext)])
def test_float_kernel(backend):
    rng = np.random.default_rng(0)
    a = rng.normal(size=(10, 10))
    a = (a + a.T) / 2
    exact = hafnian([[Fraction(float(v)) for v in r] for r in a])
    assert kernels.hafnian_float(a, backend=backend) == pytest.approx(float(exact), rel=1e-10)
    assert kernels.hafnian_float(np.zeros((3, 3)), backend=backend) == 0.0
    assert kernels.hafnian_float(np.asarray(complete_graph(6).rows, float), backend=backend) == 15


def test_size_limits():
    with pytest.raises(SizeLimitError):
        kernels.subset_hafnians([[0] * 25 for _ in range(25)])
    with pytest.raises(SizeLimitError):
        kernels.graded_hafnian_sums([[0] * 19 for _ in range(19)])


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.subset_hafnians([[0, 1], [1, 0]], backend="fortran")


def test_env_var_forces_python(monkeypatch):
    monkeypatch.setenv("GBSDUAL_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(kernels)
        assert mod.BACKEND == "python"
        assert mod.subset_hafnians(complete_graph(4).rows)[-1] == 3
    finally:
        monkeypatch.delenv("GBSDUAL_PURE_PYTHON")
        importlib.reload(kernels)
