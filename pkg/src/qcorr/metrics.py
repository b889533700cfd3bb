"""Entropies, distances, fidelity, Chernoff quantity, skew and Fisher information.

All entropic quantities use log base 2 (bits).
"""
from __future__ import annotations

import numpy as np

from . import linalg, optimizer
from .errors import DimMismatch, DomainError, NonHermitian

DISTANCE_IDS = ("RE", "S1", "S2", "Bures", "Hellinger", "L1", "Chernoff")

_EIG_ZERO = 1e-15


def _mat(x) -> np.ndarray:
    if hasattr(x, "matrix"):
        x = x.matrix
    return np.asarray(x, dtype=complex)


def entropy_of_probs(p) -> float:
    """Shannon entropy in bits with the 0 log 0 = 0 convention."""
    p = np.asarray(p, dtype=float)
    p = p[p > _EIG_ZERO]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho) -> float:
    return entropy_of_probs(np.linalg.eigvalsh(_mat(rho)))


def mutual_information(state) -> float:
    """S(rho_A) + S(rho_B) - S(rho_AB) in bits."""
    return (von_neumann_entropy(state.rho_a())
            + von_neumann_entropy(state.rho_b())
            - von_neumann_entropy(state.matrix))


def relative_entropy(rho, sigma) -> float:
    """Tr(rho log2 rho - rho log2 sigma); +inf when rho leaves sigma's support.

    Support test: an eigenvector of sigma counts as outside the support when
    its eigenvalue is below 1e-12, and the violation fires only when rho puts
    more than 1e-9 of weight on it. The two thresholds keep eigensolver noise
    from producing spurious infinities.
    """
    rho = _mat(rho)
    sigma = _mat(sigma)
    if rho.shape != sigma.shape:
        raise DimMismatch(f"{rho.shape} vs {sigma.shape}")
    mw, mv = np.linalg.eigh(sigma)
    weights = np.einsum("ij,jk,ki->i", mv.conj().T, rho, mv).real
    dead = mw < 1e-12
    if np.any(weights[dead] > 1e-9):
        return float("inf")
    live = ~dead
    cross = float(np.sum(weights[live] * np.log2(np.clip(mw[live], 1e-300, None))))
    rw = np.linalg.eigvalsh(rho)
    rw = rw[rw > _EIG_ZERO]
    own = float(np.sum(rw * np.log2(rw)))
    return own - cross


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity (squared overlap convention): ||sqrt(rho) sqrt(sigma)||_1^2."""
    rho = _mat(rho)
    sigma = _mat(sigma)
    if rho.shape != sigma.shape:
        raise DimMismatch(f"{rho.shape} vs {sigma.shape}")
    prod = linalg.mat_func(rho, "sqrt") @ linalg.mat_func(sigma, "sqrt")
    val = float(np.linalg.svd(prod, compute_uv=False).sum()) ** 2
    return min(max(val, 0.0), 1.0)


def _chernoff_parts(rho, sigma):
    lw, lv = np.linalg.eigh(rho)
    mw, mv = np.linalg.eigh(sigma)
    lw = np.clip(lw, 0.0, None)
    mw = np.clip(mw, 0.0, None)
    overlap = np.abs(lv.conj().T @ mv) ** 2
    pos_l = lw > 1e-14
    pos_m = mw > 1e-14
    blk = overlap[np.ix_(pos_l, pos_m)]
    wts = (blk * mw[pos_m][None, :]).ravel()
    exps = np.subtract.outer(np.log(lw[pos_l]), np.log(mw[pos_m])).ravel()
    # endpoint values with the support-projector convention rho^0 = P_rho
    f0 = float(np.sum(overlap[pos_l, :] * mw[None, :]))
    f1 = float(np.sum(overlap[:, pos_m] * lw[:, None]))
    return wts, exps, f0, f1


def chernoff_C(rho, sigma) -> float:
    """min over s in [0,1] of Tr(rho^s sigma^(1-s)).

    The map is convex in s, so a golden-section search to an s-resolution of
    1e-6 is sound on the interior; the s = 0 and s = 1 endpoints are compared
    separately with powers taken on the supports.
    """
    rho = _mat(rho)
    sigma = _mat(sigma)
    if rho.shape != sigma.shape:
        raise DimMismatch(f"{rho.shape} vs {sigma.shape}")
    wts, exps, f0, f1 = _chernoff_parts(rho, sigma)

    def f(s):
        return float(np.exp(s * exps) @ wts)

    _, val = optimizer.min_scalar(f, 1e-9, 1.0 - 1e-9, tol=1e-6, unimodal=True)
    val = min(val, f0, f1)
    return min(max(val, 0.0), 1.0)


def trace_distance(rho, sigma) -> float:
    return linalg.schatten_norm(_mat(rho) - _mat(sigma), 1)


def distance(distance_id: str, rho, sigma, basis=None) -> float:
    """Dispatch on DISTANCE_IDS; L1 takes an explicit product basis (unitary).

    Conventions: S2 is the squared Hilbert-Schmidt norm, Bures and Hellinger
    are the squared versions 2(1 - sqrt(F)) and 2(1 - Tr sqrt(rho) sqrt(sigma)),
    Chernoff is the complement 1 - min_s Tr(rho^s sigma^(1-s)).
    """
    rho = _mat(rho)
    sigma = _mat(sigma)
    if rho.shape != sigma.shape:
        raise DimMismatch(f"{rho.shape} vs {sigma.shape}")
    if distance_id == "RE":
        return relative_entropy(rho, sigma)
    if distance_id == "S1":
        return trace_distance(rho, sigma)
    if distance_id == "S2":
        return linalg.schatten_norm(rho - sigma, 2) ** 2
    if distance_id == "Bures":
        return 2.0 * (1.0 - np.sqrt(fidelity(rho, sigma)))
    if distance_id == "Hellinger":
        aff = np.trace(linalg.mat_func(rho, "sqrt")
                       @ linalg.mat_func(sigma, "sqrt")).real
        return 2.0 * (1.0 - float(aff))
    if distance_id == "L1":
        if basis is not None:
            u = np.asarray(basis, dtype=complex)
            rho = u.conj().T @ rho @ u
            sigma = u.conj().T @ sigma @ u
        return float(np.abs(rho - sigma).sum())
    if distance_id == "Chernoff":
        return 1.0 - chernoff_C(rho, sigma)
    raise DomainError(f"unknown distance id {distance_id!r}")


def skew_information(rho, k) -> float:
    """-1/2 Tr([sqrt(rho), K]^2) = Tr(rho K^2) - Tr(sqrt(rho) K sqrt(rho) K)."""
    rho = _mat(rho)
    k = np.asarray(k, dtype=complex)
    if not linalg.is_hermitian(k):
        raise NonHermitian("observable must be Hermitian")
    sq = linalg.mat_func(rho, "sqrt")
    val = np.trace(rho @ k @ k).real - np.trace(sq @ k @ sq @ k).real
    return max(float(val), 0.0)


def merged_spectrum(w: np.ndarray) -> np.ndarray:
    """Replace runs of eigenvalues with consecutive gaps below 1e-10 by their
    mean, so near-degenerate sectors are treated as exactly degenerate."""
    merged = np.asarray(w, dtype=float).copy()
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > 1e-10:
            merged[start:i] = w[start:i].mean()
            start = i
    return merged


def quantum_fisher_information(rho, k) -> float:
    """4 sum_{m<n} (q_m - q_n)^2 / (q_m + q_n) |<m|K|n>|^2 over merged sectors.

    Eigenvalues closer than 1e-10 are merged to their common value before the
    sum; pairs with q_m + q_n <= 1e-12 are skipped.
    """
    rho = _mat(rho)
    k = np.asarray(k, dtype=complex)
    if not linalg.is_hermitian(k):
        raise NonHermitian("observable must be Hermitian")
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    merged = merged_spectrum(w)
    kk = v.conj().T @ k @ v
    qm = merged[:, None]
    qn = merged[None, :]
    ssum = qm + qn
    sdif = qm - qn
    mask = (ssum > 1e-12) & (np.abs(sdif) > 0.0)
    coeff = np.zeros_like(ssum)
    coeff[mask] = sdif[mask] ** 2 / ssum[mask]
    val = 2.0 * float(np.sum(coeff * np.abs(kk) ** 2))
    return max(val, 0.0)
