"""Dense Hermitian linear algebra used by every other module.

Everything here works on plain numpy arrays. Dimensions stay small
(products of subsystem dimensions, at most a few dozen), so dense
eigendecompositions are always the right tool.
"""
from __future__ import annotations

import numpy as np

from .errors import DimMismatch, NonHermitian, NotPSD

TOL_HERM = 1e-9
TOL_PSD = 1e-9


def is_hermitian(mat: np.ndarray, tol: float = TOL_HERM) -> bool:
    """Entrywise check |M - M^dagger| <= tol."""
    return bool(np.max(np.abs(mat - mat.conj().T)) <= tol)


def herm_eig(mat: np.ndarray, tol: float = TOL_HERM):
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, V) with eigenvalues w ascending and columns of V the
    corresponding orthonormal eigenvectors. Raises NonHermitian when the
    input fails the entrywise Hermiticity check.
    """
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {mat.shape}")
    if not is_hermitian(mat, tol):
        dev = float(np.max(np.abs(mat - mat.conj().T)))
        raise NonHermitian(f"max |M - M^dagger| = {dev:.3e} exceeds {tol:.1e}")
    w, v = np.linalg.eigh((mat + mat.conj().T) / 2.0)
    return w, v


def mat_func(mat: np.ndarray, f: str, alpha: float | None = None) -> np.ndarray:
    """Apply a scalar function to a Hermitian PSD matrix via its spectrum.

    f is one of "sqrt", "log2", "pow" (the latter needs alpha). Eigenvalues
    in [-TOL_PSD, 0) are clamped to 0; anything below -TOL_PSD raises NotPSD.
    Zero eigenvalues follow the support convention: log2 maps them to 0
    (so that 0*log(0) terms vanish downstream) and pow maps them to 0.
    """
    w, v = herm_eig(mat)
    if w[0] < -TOL_PSD:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below -{TOL_PSD:.1e}")
    w = np.where(w < 0.0, 0.0, w)
    if f == "sqrt":
        fw = np.sqrt(w)
    elif f == "log2":
        fw = np.zeros_like(w)
        pos = w > 0.0
        fw[pos] = np.log2(w[pos])
    elif f == "pow":
        if alpha is None:
            raise ValueError("mat_func('pow') needs alpha")
        fw = np.zeros_like(w)
        pos = w > 0.0
        fw[pos] = w[pos] ** alpha
    else:
        raise ValueError(f"unknown matrix function {f!r}")
    return (v * fw) @ v.conj().T


def _check_bipartite_shape(mat: np.ndarray, dims) -> tuple[int, int]:
    d_a, d_b = int(dims[0]), int(dims[1])
    n = d_a * d_b
    if mat.shape != (n, n):
        raise DimMismatch(f"shape {mat.shape} incompatible with dims {d_a}x{d_b}")
    return d_a, d_b


def partial_trace(mat: np.ndarray, dims, keep: str) -> np.ndarray:
    """Trace out one subsystem of a (d_a*d_b) x (d_a*d_b) operator.

    keep="A" returns the d_a x d_a reduction, keep="B" the d_b x d_b one.
    """
    mat = np.asarray(mat)
    d_a, d_b = _check_bipartite_shape(mat, dims)
    r = mat.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ibjb->ij", r)
    if keep == "B":
        return np.einsum("apaq->pq", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(mat: np.ndarray, dims, side: str = "A") -> np.ndarray:
    """Transpose one tensor factor; involutive for each side."""
    mat = np.asarray(mat)
    d_a, d_b = _check_bipartite_shape(mat, dims)
    r = mat.reshape(d_a, d_b, d_a, d_b)
    if side == "A":
        out = r.transpose(2, 1, 0, 3)
    elif side == "B":
        out = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return out.reshape(d_a * d_b, d_a * d_b)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product (thin wrapper, kept for a uniform call surface)."""
    return np.kron(np.asarray(a), np.asarray(b))


def schatten_norm(mat: np.ndarray, p: int) -> float:
    """Schatten norm for p in {1, 2}.

    p=1 is the trace norm (sum of singular values), p=2 the Frobenius norm.
    """
    mat = np.asarray(mat)
    if p == 1:
        if is_hermitian(mat):
            w = np.linalg.eigvalsh((mat + mat.conj().T) / 2.0)
            return float(np.sum(np.abs(w)))
        return float(np.sum(np.linalg.svd(mat, compute_uv=False)))
    if p == 2:
        return float(np.linalg.norm(mat))
    raise ValueError(f"only p in {{1, 2}} supported, got {p}")
