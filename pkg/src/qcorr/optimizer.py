"""Deterministic minimization over measurement bases, observables, and scalars.

Two search spaces are supported: qubit bases through the (theta, phi) chart
with b0 = (cos(theta/2), e^{i phi} sin(theta/2)), and general d-dimensional
bases through U = exp(iH) with H parametrized by d^2 real numbers. Both run
a fixed evaluation grid (or multistart set) followed by Nelder-Mead
refinement, so every returned value is an upper bound on the true infimum
and is never worse than the best grid/seed candidate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize


@dataclass(frozen=True)
class OptConfig:
    grid_theta: int = 24
    grid_phi: int = 48
    multistarts: int = 16
    refine_iters: int = 200
    tol_opt: float = 1e-7
    seed: int = 0

    def snapshot(self) -> dict:
        return {
            "grid_theta": self.grid_theta,
            "grid_phi": self.grid_phi,
            "multistarts": self.multistarts,
            "refine_iters": self.refine_iters,
            "tol_opt": self.tol_opt,
            "seed": self.seed,
        }


@dataclass
class OptResult:
    value: float
    params: np.ndarray
    unitary: np.ndarray
    kind: str
    n_evaluations: int
    bound: str = "upper"


def qubit_unitary(theta: float, phi: float) -> np.ndarray:
    """Basis-as-unitary for the qubit chart; columns are the basis vectors."""
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    e = np.exp(1j * phi)
    return np.array([[c, -np.conj(e) * s], [e * s, c]], dtype=complex)


def qubit_unitaries(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Stack of qubit basis unitaries, shape (N, 2, 2)."""
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    c = np.cos(thetas / 2.0)
    s = np.sin(thetas / 2.0)
    e = np.exp(1j * phis)
    u = np.empty((thetas.size, 2, 2), dtype=complex)
    u[:, 0, 0] = c
    u[:, 1, 0] = e * s
    u[:, 0, 1] = -np.conj(e) * s
    u[:, 1, 1] = c
    return u


def qubit_grid_angles(n_theta: int, n_phi: int) -> np.ndarray:
    """Fixed (theta, phi) evaluation grid, shape (n_theta*n_phi, 2)."""
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return np.stack([tt.ravel(), pp.ravel()], axis=1)


def angles_from_qubit_unitary(u: np.ndarray) -> np.ndarray:
    """Invert the qubit chart for an arbitrary basis unitary.

    Only the ray of the first column matters; the result reproduces the same
    measurement basis up to column phases.
    """
    b0 = np.asarray(u)[:, 0]
    phase = np.exp(-1j * np.angle(b0[0])) if abs(b0[0]) > 1e-12 else 1.0
    b0 = b0 * phase
    c = min(max(float(np.real(b0[0])), -1.0), 1.0)
    theta = 2.0 * np.arccos(c)
    phi = float(np.angle(b0[1])) if abs(b0[1]) > 1e-12 else 0.0
    return np.array([theta, phi % (2.0 * np.pi)])


def hermitian_from_params(d: int, x: np.ndarray) -> np.ndarray:
    """Hermitian matrix from d^2 real parameters (diagonal + upper triangle)."""
    x = np.asarray(x, dtype=float)
    h = np.zeros((d, d), dtype=complex)
    h[np.diag_indices(d)] = x[:d]
    n_off = d * (d - 1) // 2
    iu = np.triu_indices(d, k=1)
    h[iu] = x[d:d + n_off] + 1j * x[d + n_off:d + 2 * n_off]
    h = h + np.tril(h.conj().T, k=-1)
    return h


def unitary_from_params(d: int, x: np.ndarray) -> np.ndarray:
    """U = exp(iH) through the eigendecomposition of H."""
    h = hermitian_from_params(d, x)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def _nm(fun, x0, max_iter: int, tol: float):
    return minimize(fun, x0, method="Nelder-Mead",
                    options={"maxiter": max_iter, "xatol": 1e-8,
                             "fatol": tol * 1e-3, "adaptive": False})


def min_over_bases(d: int, objective, cfg: OptConfig,
                   batch_objective=None, seed_unitaries=()) -> OptResult:
    """Minimize objective(U) over d-dimensional orthonormal bases.

    objective takes a d x d unitary (columns = basis vectors) and returns a
    real number. For d=2 a fixed angle grid is scanned (batch_objective, when
    given, evaluates a whole (N,2,2) stack at once) and the best candidates
    are polished by Nelder-Mead in the chart coordinates. For d>2 the same
    scheme runs over cfg.multistarts random exp(iH) points with per-start
    seeds derived from (cfg.seed, start index). Seed unitaries are always
    evaluated and refined too, so supplying warm starts can only improve the
    result.
    """
    if d == 2:
        return _min_qubit(objective, cfg, batch_objective, seed_unitaries)
    return _min_general(d, objective, cfg, seed_unitaries)


def _min_qubit(objective, cfg, batch_objective, seed_unitaries) -> OptResult:
    angles = qubit_grid_angles(cfg.grid_theta, cfg.grid_phi)
    for u in seed_unitaries:
        angles = np.vstack([angles, angles_from_qubit_unitary(u)])
    stack = qubit_unitaries(angles[:, 0], angles[:, 1])
    if batch_objective is not None:
        values = np.asarray(batch_objective(stack), dtype=float)
    else:
        values = np.array([objective(stack[i]) for i in range(len(stack))])
    n_evals = len(values)

    order = np.argsort(values, kind="stable")
    starts = order[:3].tolist()
    # seed candidates are always worth a polish even if the grid beat them
    starts += [i for i in range(len(angles) - len(seed_unitaries), len(angles))
               if i not in starts]

    def f(x):
        return objective(qubit_unitary(x[0], x[1]))

    best_val = float(values[order[0]])
    best_x = angles[order[0]].copy()
    for i in starts:
        res = _nm(f, angles[i], cfg.refine_iters, cfg.tol_opt)
        n_evals += res.nfev
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = np.asarray(res.x, dtype=float)
    u_best = qubit_unitary(best_x[0], best_x[1])
    return OptResult(value=float(objective(u_best)), params=best_x,
                     unitary=u_best, kind="qubit_angles", n_evaluations=n_evals)


def _min_general(d, objective, cfg, seed_unitaries) -> OptResult:
    n_par = d * d
    candidates = []   # (value, params, base_unitary or None)
    n_evals = 0

    def f_from(base):
        if base is None:
            return lambda x: objective(unitary_from_params(d, x))
        return lambda x: objective(base @ unitary_from_params(d, x))

    eye = np.eye(d, dtype=complex)
    candidates.append((float(objective(eye)), np.zeros(n_par), None))
    n_evals += 1
    for k in range(cfg.multistarts):
        rng = np.random.default_rng([cfg.seed, k])
        x0 = rng.normal(scale=np.pi / 2.0, size=n_par)
        candidates.append((float(objective(unitary_from_params(d, x0))), x0, None))
        n_evals += 1
    for u in seed_unitaries:
        u = np.asarray(u, dtype=complex)
        candidates.append((float(objective(u)), np.zeros(n_par), u))
        n_evals += 1

    best_val, best_u = np.inf, eye
    best_x = np.zeros(n_par)
    for val, x0, base in candidates:
        if val < best_val:
            best_val, best_x = val, x0
            best_u = (base if base is not None else np.eye(d)) @ unitary_from_params(d, x0)
    order = sorted(range(len(candidates)), key=lambda i: candidates[i][0])
    for i in order[:max(4, len(seed_unitaries) + 1)]:
        val, x0, base = candidates[i]
        fun = f_from(base)
        res = _nm(fun, x0, cfg.refine_iters, cfg.tol_opt)
        n_evals += res.nfev
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = np.asarray(res.x)
            best_u = (base if base is not None else np.eye(d)) @ unitary_from_params(d, res.x)
    return OptResult(value=float(objective(best_u)), params=best_x,
                     unitary=best_u, kind="unitary_exp", n_evaluations=n_evals)


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def min_scalar(f, lo: float, hi: float, tol: float = 1e-6,
               unimodal: bool = True):
    """Golden-section minimization on [lo, hi]; returns (x, f(x)).

    With unimodal=False a dense pre-scan at step 1e-4 brackets the global
    minimum before the golden-section polish.
    """
    if not unimodal:
        xs = np.arange(lo, hi + 1e-12, (hi - lo) * 1e-4)
        vals = np.array([f(x) for x in xs])
        i = int(np.argmin(vals))
        lo = xs[max(i - 1, 0)]
        hi = xs[min(i + 1, len(xs) - 1)]
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d_ = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d_)
    while (b - a) > tol:
        if fc < fd:
            b, d_, fd = d_, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + _INVPHI * (b - a)
            fd = f(d_)
    x = (a + b) / 2.0
    return x, f(x)
