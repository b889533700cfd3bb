"""Density matrices, the reference state families, random ensembles, file I/O."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg, optimizer
from .errors import DomainError, InvalidState

TOL_STATE = 1e-9


def _coerce(mat) -> np.ndarray:
    if hasattr(mat, "matrix"):
        mat = mat.matrix
    return np.asarray(mat, dtype=complex)


def _validate_density(mat: np.ndarray, tol: float = TOL_STATE) -> np.ndarray:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InvalidState(f"not_square: shape {mat.shape}")
    dev = float(np.max(np.abs(mat - mat.conj().T)))
    if dev > tol:
        raise InvalidState(f"not_hermitian: max deviation {dev:.3e}")
    mat = (mat + mat.conj().T) / 2.0
    tr = float(np.trace(mat).real)
    if abs(tr - 1.0) > tol:
        raise InvalidState(f"trace_not_one: trace {tr!r}")
    w_min = float(np.linalg.eigvalsh(mat)[0])
    if w_min < -tol:
        raise InvalidState(f"not_positive: min eigenvalue {w_min:.3e}")
    return mat


class DensityMatrix:
    """Validated density operator. Stores the hermitized matrix."""

    def __init__(self, matrix):
        self.matrix = _validate_density(_coerce(matrix))
        self.dim = self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


class BipartiteState:
    """Density operator on A x B with declared subsystem dimensions.

    meta carries optional construction hints (e.g. the classical basis of a
    classical-quantum constructor) that downstream searches use as warm
    starts; it never affects validity.
    """

    def __init__(self, matrix, d_a: int, d_b: int, meta: dict | None = None):
        mat = _coerce(matrix)
        if mat.shape != (d_a * d_b, d_a * d_b):
            raise InvalidState(
                f"dims_mismatch: shape {mat.shape} vs {d_a}x{d_b}")
        self.matrix = _validate_density(mat)
        self.d_a = int(d_a)
        self.d_b = int(d_b)
        self.meta = dict(meta or {})

    @property
    def dim(self) -> int:
        return self.d_a * self.d_b

    def rho_a(self) -> np.ndarray:
        return linalg.partial_trace(self.matrix, (self.d_a, self.d_b), "A")

    def rho_b(self) -> np.ndarray:
        return linalg.partial_trace(self.matrix, (self.d_a, self.d_b), "B")

    def swapped(self) -> "BipartiteState":
        """The same state with subsystems exchanged (B becomes the first factor)."""
        r = self.matrix.reshape(self.d_a, self.d_b, self.d_a, self.d_b)
        m = r.transpose(1, 0, 3, 2).reshape(self.dim, self.dim)
        meta = dict(self.meta)
        a = meta.pop("classical_basis_a", None)
        b = meta.pop("classical_basis_b", None)
        if b is not None:
            meta["classical_basis_a"] = b
        if a is not None:
            meta["classical_basis_b"] = a
        return BipartiteState(m, self.d_b, self.d_a, meta)

    def __repr__(self):
        return f"BipartiteState(d_a={self.d_a}, d_b={self.d_b})"


@dataclass(frozen=True)
class FamilyPointXY:
    x: float
    y: float

    def __post_init__(self):
        if self.x < 0.0 or self.y < 0.0 or self.x + self.y > 1.0 + 1e-12:
            raise DomainError(
                f"family point needs x, y >= 0 and x + y <= 1, got ({self.x}, {self.y})")


def family_xy(x: float, y: float) -> BipartiteState:
    """Two-qubit family interpolating between classical and quantum regions.

    The diagonal carries (1-x-y, 4xy+y, 4xy+x, 1) and the inner 2x2 block
    plus the (|01>,|11>) and (|10>,|11>) coherences carry y, 4xy, x; the
    whole matrix is normalized by 2 + 8xy. Both axes (x=0 or y=0) are
    classical on one side; the interior is quantum-correlated.
    """
    pt = FamilyPointXY(float(x), float(y))
    x, y = pt.x, pt.y
    m = np.array([
        [1.0 - x - y, 0.0, 0.0, 0.0],
        [0.0, 4.0 * x * y + y, 4.0 * x * y, y],
        [0.0, 4.0 * x * y, 4.0 * x * y + x, x],
        [0.0, y, x, 1.0],
    ], dtype=complex) / (2.0 + 8.0 * x * y)
    return BipartiteState(m, 2, 2, meta={"family_xy": (x, y)})


_BELL_VECTORS = np.array([
    [1, 0, 0, 1],   # (|00> + |11>)/sqrt2
    [1, 0, 0, -1],  # (|00> - |11>)/sqrt2
    [0, 1, 1, 0],   # (|01> + |10>)/sqrt2
    [0, 1, -1, 0],  # (|01> - |10>)/sqrt2
], dtype=complex) / np.sqrt(2.0)


def bell_diagonal(probs) -> BipartiteState:
    """Mixture of the four Bell projectors; marginals are exactly I/2."""
    p = np.asarray(probs, dtype=float)
    if p.shape != (4,) or np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise DomainError("bell_diagonal needs four nonnegative probabilities summing to 1")
    m = np.zeros((4, 4), dtype=complex)
    for k in range(4):
        v = _BELL_VECTORS[k]
        m += p[k] * np.outer(v, v.conj())
    return BipartiteState(m, 2, 2)


def max_entangled(d: int) -> BipartiteState:
    """|Phi> = sum_i |ii> / sqrt(d)."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return BipartiteState(np.outer(v, v.conj()), d, d)


def product_state(rho_a, rho_b) -> BipartiteState:
    a = _coerce(rho_a)
    b = _coerce(rho_b)
    return BipartiteState(np.kron(a, b), a.shape[0], b.shape[0])


def classical_quantum(probs, sigmas, basis_a=None) -> BipartiteState:
    """sum_i p_i |a_i><a_i| (x) sigma_i with {|a_i>} the columns of basis_a."""
    p = np.asarray(probs, dtype=float)
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise DomainError("probabilities must be nonnegative and sum to 1")
    d_a = len(p)
    if len(sigmas) != d_a:
        raise DomainError("need one conditional state per probability")
    u = np.eye(d_a, dtype=complex) if basis_a is None else np.asarray(basis_a, dtype=complex)
    d_b = _coerce(sigmas[0]).shape[0]
    m = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
    for i in range(d_a):
        vec = u[:, i]
        m += p[i] * np.kron(np.outer(vec, vec.conj()), _coerce(sigmas[i]))
    return BipartiteState(m, d_a, d_b, meta={"classical_basis_a": u})


def classical_classical(pmat, basis_a=None, basis_b=None) -> BipartiteState:
    """sum_ij p_ij |a_i><a_i| (x) |b_j><b_j|."""
    p = np.asarray(pmat, dtype=float)
    if p.ndim != 2 or np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise DomainError("pmat must be a nonnegative matrix summing to 1")
    d_a, d_b = p.shape
    ua = np.eye(d_a, dtype=complex) if basis_a is None else np.asarray(basis_a, dtype=complex)
    ub = np.eye(d_b, dtype=complex) if basis_b is None else np.asarray(basis_b, dtype=complex)
    m = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
    for i in range(d_a):
        pa = np.outer(ua[:, i], ua[:, i].conj())
        for j in range(d_b):
            m += p[i, j] * np.kron(pa, np.outer(ub[:, j], ub[:, j].conj()))
    return BipartiteState(m, d_a, d_b,
                          meta={"classical_basis_a": ua, "classical_basis_b": ub})


def werner(p: float) -> BipartiteState:
    """Two-qubit Werner state p |Psi-><Psi-| + (1-p) I/4, p in [-1/3, 1].

    Convention note: several inequivalent parametrizations circulate; this
    constructor fixes the singlet-mixture one above and documents it here.
    """
    if p < -1.0 / 3.0 - 1e-12 or p > 1.0 + 1e-12:
        raise DomainError(f"werner parameter must lie in [-1/3, 1], got {p}")
    v = _BELL_VECTORS[3]
    m = p * np.outer(v, v.conj()) + (1.0 - p) * np.eye(4) / 4.0
    return BipartiteState(m, 2, 2)


def random_density(d: int, rank: int | None = None, seed: int = 0) -> DensityMatrix:
    """Ginibre-induced random state GG+/Tr(GG+), G of shape (d, rank)."""
    rank = d if rank is None else int(rank)
    if rank < 1 or rank > d:
        raise DomainError(f"rank must be in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_bipartite(d_a: int, d_b: int, rank: int | None = None,
                     seed: int = 0) -> BipartiteState:
    """Ginibre random state reshaped onto the A x B tensor factors."""
    rho = random_density(d_a * d_b, rank=rank, seed=seed)
    return BipartiteState(rho.matrix, d_a, d_b)


def random_pure_bipartite(d_a: int, d_b: int, seed: int = 0) -> BipartiteState:
    """Haar-random pure state on A x B."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(d_a * d_b) + 1j * rng.standard_normal(d_a * d_b)
    v = v / np.linalg.norm(v)
    return BipartiteState(np.outer(v, v.conj()), d_a, d_b)


# ---------------------------------------------------------------------------
# classicality tests

@dataclass
class ClassicalityReport:
    classical: bool
    value: float
    tol: float
    basis_a: np.ndarray | None = None
    basis_b: np.ndarray | None = None


def _dephase_a(rho4, u):
    """Dephase the first qubit-or-qudit factor in the basis given by u."""
    d_a = u.shape[0]
    d_b = rho4.shape[1]
    out = np.zeros_like(rho4)
    for a in range(d_a):
        vec = u[:, a]
        blk = np.einsum("i,ipjq,j->pq", vec.conj(), rho4, vec)
        out += np.einsum("i,pq,j->ipjq", vec, blk, vec.conj())
    return out


def _trace_distance_to_dephased_batch(state: BipartiteState, stack: np.ndarray,
                                      side: str) -> np.ndarray:
    """Batched ||rho - pi[rho]||_1 over a stack of measurement bases."""
    d_a, d_b = state.d_a, state.d_b
    if side == "B":
        state = state.swapped()
        d_a, d_b = state.d_a, state.d_b
    r4 = state.matrix.reshape(d_a, d_b, d_a, d_b)
    n = stack.shape[0]
    deph = np.zeros((n, d_a, d_b, d_a, d_b), dtype=complex)
    for a in range(d_a):
        vec = stack[:, :, a]
        blk = np.einsum("ni,ipjq,nj->npq", vec.conj(), r4, vec)
        deph += np.einsum("ni,npq,nj->nipjq", vec, blk, vec.conj())
    diff = r4[None] - deph
    diff = diff.reshape(n, d_a * d_b, d_a * d_b)
    w = np.linalg.eigvalsh(diff)
    return np.abs(w).sum(axis=1)


def _min_trace_distance_classical(state: BipartiteState, side: str,
                                  cfg: optimizer.OptConfig,
                                  decision_tol: float | None = None):
    """Search basis minimizing || rho - dephased(rho) ||_1 on one side.

    When decision_tol is given, the simplex refinement is skipped whenever the
    grid already decides the question. A grid candidate at or below the
    tolerance certifies classicality by itself. In the other direction the
    objective is 2-Lipschitz in the Bloch axis angle, so a classical qubit
    state always shows a grid value at most twice the half-spacing of the
    angle grid; a grid minimum safely above that band cannot hide a classical
    basis and is returned without refinement. Values inside the band get the
    full multistart refinement.
    """
    d = state.d_a if side == "A" else state.d_b
    seeds = []
    key = "classical_basis_a" if side == "A" else "classical_basis_b"
    if key in state.meta:
        seeds.append(np.asarray(state.meta[key], dtype=complex))

    work = state if side == "A" else state.swapped()
    r4 = work.matrix.reshape(work.d_a, work.d_b, work.d_a, work.d_b)

    def objective(u):
        deph = _dephase_a(r4, u)
        diff = (r4 - deph).reshape(work.dim, work.dim)
        return float(np.abs(np.linalg.eigvalsh(diff)).sum())

    batch = None
    if d == 2:
        def batch(stack):
            return _trace_distance_to_dephased_batch(state, stack, side)
        if decision_tol is not None:
            angles = optimizer.qubit_grid_angles(cfg.grid_theta, cfg.grid_phi)
            for u in seeds:
                angles = np.vstack([angles,
                                    optimizer.angles_from_qubit_unitary(u)])
            stack = optimizer.qubit_unitaries(angles[:, 0], angles[:, 1])
            vals = np.asarray(batch(stack), dtype=float)
            i = int(np.argmin(vals))
            half_step = 0.5 * float(np.hypot(
                np.pi / max(cfg.grid_theta - 1, 1),
                2.0 * np.pi / cfg.grid_phi))
            band = max(3.0 * half_step, 10.0 * decision_tol)
            if vals[i] <= decision_tol or vals[i] > band:
                return optimizer.OptResult(
                    value=float(vals[i]), params=angles[i],
                    unitary=stack[i], kind="qubit_grid_decision",
                    n_evaluations=len(vals))
    return optimizer.min_over_bases(d, objective, cfg,
                                    batch_objective=batch, seed_unitaries=seeds)


def is_classical_quantum(state: BipartiteState, tol: float = 1e-8,
                         cfg: optimizer.OptConfig | None = None,
                         side: str = "A") -> ClassicalityReport:
    """Certified-true / best-effort-false test for classicality on one side.

    Minimizes the trace distance between the state and its local dephasing
    over measurement bases. A minimum <= tol certifies classicality (the
    certifying basis is returned); a larger minimum reports non-classicality
    up to the quality of the search.
    """
    cfg = cfg or optimizer.OptConfig()
    res = _min_trace_distance_classical(state, side, cfg, decision_tol=tol)
    rep = ClassicalityReport(classical=bool(res.value <= tol),
                             value=float(res.value), tol=tol)
    if side == "A":
        rep.basis_a = res.unitary
    else:
        rep.basis_b = res.unitary
    return rep


def is_classical_classical(state: BipartiteState, tol: float = 1e-8,
                           cfg: optimizer.OptConfig | None = None) -> ClassicalityReport:
    """Classicality on both sides: both one-sided tests must certify."""
    cfg = cfg or optimizer.OptConfig()
    rep_a = is_classical_quantum(state, tol=tol, cfg=cfg, side="A")
    rep_b = is_classical_quantum(state, tol=tol, cfg=cfg, side="B")
    return ClassicalityReport(classical=rep_a.classical and rep_b.classical,
                              value=float(max(rep_a.value, rep_b.value)),
                              tol=tol, basis_a=rep_a.basis_a, basis_b=rep_b.basis_b)


# ---------------------------------------------------------------------------
# state files

def state_to_dict(state: BipartiteState) -> dict:
    return {
        "d_a": state.d_a,
        "d_b": state.d_b,
        "matrix": [[{"re": float(z.real), "im": float(z.imag)} for z in row]
                   for row in state.matrix],
    }


def save_state(state: BipartiteState, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(state), fh, indent=1, sort_keys=True)


def state_from_dict(doc: dict) -> BipartiteState:
    try:
        d_a = int(doc["d_a"])
        d_b = int(doc["d_b"])
        rows = doc["matrix"]
        mat = np.array([[complex(c["re"], c["im"]) for c in row] for row in rows])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidState(f"schema: {exc}") from exc
    return BipartiteState(mat, d_a, d_b)


def load_state(path: str) -> BipartiteState:
    """Parse and validate a state file; InvalidState names the failed invariant."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidState(f"schema: not valid JSON ({exc})") from exc
    return state_from_dict(doc)
