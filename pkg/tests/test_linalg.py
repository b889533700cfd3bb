import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qcorr import linalg
from qcorr.errors import DimMismatch, NonHermitian


def rand_herm(d, seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2


def test_is_hermitian():
    assert linalg.is_hermitian(rand_herm(4, 0))
    assert not linalg.is_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_herm_eig_rejects_nonhermitian():
    with pytest.raises(NonHermitian):
        linalg.herm_eig(np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_mat_func_sqrt_squares_back():
    rng = np.random.default_rng(3)
    g = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    r = linalg.mat_func(rho, "sqrt")
    assert_allclose(r @ r, rho, atol=1e-12)


def test_mat_func_pow_matches_eig():
    rho = np.diag([0.5, 0.3, 0.2])
    out = linalg.mat_func(rho, "pow", alpha=0.7)
    assert_allclose(np.diag(out), np.diag(rho) ** 0.7, atol=1e-14)


def test_mat_func_log2_support_convention():
    rho = np.diag([1.0, 0.0])
    out = linalg.mat_func(rho, "log2")
    assert_allclose(out, np.zeros((2, 2)), atol=1e-14)


class TestPartialOps:
    def test_partial_trace_of_kron(self):
        a = rand_herm(2, 1)
        b = rand_herm(3, 2)
        m = np.kron(a, b)
        assert_allclose(linalg.partial_trace(m, (2, 3), "A"),
                        a * np.trace(b), atol=1e-12)
        assert_allclose(linalg.partial_trace(m, (2, 3), "B"),
                        b * np.trace(a), atol=1e-12)

    def test_partial_trace_shape_check(self):
        with pytest.raises(DimMismatch):
            linalg.partial_trace(np.eye(5), (2, 3), "A")

    def test_partial_transpose_involution(self):
        m = rand_herm(6, 4)
        pt = linalg.partial_transpose(m, (2, 3), "A")
        assert_allclose(linalg.partial_transpose(pt, (2, 3), "A"), m,
                        atol=1e-14)

    def test_partial_transpose_bell_spectrum(self):
        phi = np.zeros(4)
        phi[0] = phi[3] = 1 / np.sqrt(2)
        rho = np.outer(phi, phi)
        w = np.linalg.eigvalsh(linalg.partial_transpose(rho, (2, 2), "A"))
        assert_allclose(sorted(w), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)

    def test_both_sides_related_by_full_transpose(self):
        m = rand_herm(4, 7)
        pa = linalg.partial_transpose(m, (2, 2), "A")
        pb = linalg.partial_transpose(m, (2, 2), "B")
        assert_allclose(pa.T, pb, atol=1e-14)


def test_schatten_norms_against_svd():
    rng = np.random.default_rng(9)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    sv = np.linalg.svd(m, compute_uv=False)
    assert_allclose(linalg.schatten_norm(m, 1), sv.sum(), rtol=1e-12)
    assert_allclose(linalg.schatten_norm(m, 2), np.sqrt((sv ** 2).sum()),
                    rtol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_partial_trace_preserves_trace(seed):
    m = rand_herm(6, seed)
    t = np.trace(m)
    for keep in ("A", "B"):
        assert_allclose(np.trace(linalg.partial_trace(m, (2, 3), keep)), t,
                        atol=1e-12)
