"""Local unitaries, projective measurements, POVMs, CPTP maps, premeasurement."""
from __future__ import annotations

import numpy as np

from . import optimizer
from .errors import (DegenerateSpectrum, DimMismatch, DomainError,
                     InvalidChannel, NotPSD, NotUnitary)
from .states import BipartiteState

TOL_UNITARY = 1e-10


def _unitarity_defect(u: np.ndarray) -> float:
    d = u.shape[1]
    return float(np.linalg.norm(u.conj().T @ u - np.eye(d)))


class LocalBasis:
    """Measurement basis on one subsystem; columns of `unitary` are the kets."""

    def __init__(self, unitary):
        u = np.asarray(unitary, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise DimMismatch(f"basis must be square, got {u.shape}")
        defect = _unitarity_defect(u)
        if defect > TOL_UNITARY:
            raise NotUnitary(f"basis defect {defect:.3e} > {TOL_UNITARY}")
        self.unitary = u
        self.dim = u.shape[0]

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "LocalBasis":
        """Qubit chart: columns (cos t/2, e^{i phi} sin t/2) and its complement."""
        return cls(optimizer.qubit_unitary(theta, phi))

    def ket(self, k: int) -> np.ndarray:
        return self.unitary[:, k]

    def projector(self, k: int) -> np.ndarray:
        v = self.unitary[:, k]
        return np.outer(v, v.conj())


class POVM:
    def __init__(self, elements):
        elems = [np.asarray(e, dtype=complex) for e in elements]
        d = elems[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for e in elems:
            if e.shape != (d, d):
                raise DimMismatch("POVM elements must share one square shape")
            w_min = float(np.linalg.eigvalsh((e + e.conj().T) / 2.0)[0])
            if w_min < -1e-9 or np.max(np.abs(e - e.conj().T)) > 1e-9:
                raise NotPSD(f"POVM element not PSD (min eig {w_min:.3e})")
            total += e
        if np.max(np.abs(total - np.eye(d))) > 1e-9:
            raise InvalidChannel("POVM elements do not sum to identity")
        self.elements = elems
        self.dim = d

    def __len__(self):
        return len(self.elements)


class KrausChannel:
    def __init__(self, kraus_ops):
        ops = [np.asarray(k, dtype=complex) for k in kraus_ops]
        if not ops:
            raise InvalidChannel("need at least one Kraus operator")
        d_in = ops[0].shape[1]
        total = np.zeros((d_in, d_in), dtype=complex)
        for k in ops:
            if k.ndim != 2 or k.shape[1] != d_in:
                raise DimMismatch("Kraus operators must share the input dimension")
            total += k.conj().T @ k
        if np.max(np.abs(total - np.eye(d_in))) > 1e-9:
            raise InvalidChannel("Kraus operators are not trace preserving")
        self.kraus_ops = ops
        self.d_in = d_in
        self.d_out = ops[0].shape[0]


def apply_local_unitary(state: BipartiteState, u, side: str) -> BipartiteState:
    u = np.asarray(u, dtype=complex)
    defect = _unitarity_defect(u)
    if defect > TOL_UNITARY:
        raise NotUnitary(f"defect {defect:.3e} > {TOL_UNITARY}")
    d = state.d_a if side == "A" else state.d_b
    if u.shape != (d, d):
        raise DimMismatch(f"unitary {u.shape} vs side {side} dim {d}")
    if side == "A":
        big = np.kron(u, np.eye(state.d_b))
    else:
        big = np.kron(np.eye(state.d_a), u)
    return BipartiteState(big @ state.matrix @ big.conj().T,
                          state.d_a, state.d_b)


def _dephase_first(r4: np.ndarray, u: np.ndarray) -> np.ndarray:
    d_a = u.shape[0]
    out = np.zeros_like(r4)
    for a in range(d_a):
        vec = u[:, a]
        blk = np.einsum("i,ipjq,j->pq", vec.conj(), r4, vec)
        out += np.einsum("i,pq,j->ipjq", vec, blk, vec.conj())
    return out


def lpm_apply(state: BipartiteState, basis_a: LocalBasis,
              basis_b: LocalBasis | None = None) -> BipartiteState:
    """Local projective measurement without readout: dephase in the given bases."""
    if basis_a.dim != state.d_a:
        raise DimMismatch(f"basis A dim {basis_a.dim} vs {state.d_a}")
    r4 = state.matrix.reshape(state.d_a, state.d_b, state.d_a, state.d_b)
    out = _dephase_first(r4, basis_a.unitary)
    if basis_b is not None:
        if basis_b.dim != state.d_b:
            raise DimMismatch(f"basis B dim {basis_b.dim} vs {state.d_b}")
        # dephase the B factor by swapping it to the front and back
        out = out.transpose(1, 0, 3, 2)
        out = _dephase_first(out, basis_b.unitary)
        out = out.transpose(1, 0, 3, 2)
    m = out.reshape(state.dim, state.dim)
    meta = {"classical_basis_a": basis_a.unitary}
    if basis_b is not None:
        meta["classical_basis_b"] = basis_b.unitary
    return BipartiteState(m, state.d_a, state.d_b, meta=meta)


def premeasurement_isometry(d_a: int, d_b: int, basis_a: LocalBasis) -> np.ndarray:
    """Isometry H_A (x) H_B -> H_A (x) H_B (x) H_A' copying the A record."""
    w = np.zeros((d_a * d_b * d_a, d_a * d_b), dtype=complex)
    eye_anc = np.eye(d_a)
    for a in range(d_a):
        w += np.kron(np.kron(basis_a.projector(a), np.eye(d_b)),
                     eye_anc[:, a][:, None])
    return w


def premeasurement_state(state: BipartiteState, basis_a: LocalBasis,
                         basis_b: LocalBasis | None = None) -> BipartiteState:
    """Coherent record of a local measurement on ancilla factors.

    One-sided: output lives on (A, B, A') and is declared as the split
    (A B) : A'. Two-sided: output on (A, B, A', B') declared as (A B) : (A' B').
    Tracing the ancillas reproduces lpm_apply exactly, and pure inputs stay
    pure because the construction is an isometry.
    """
    if basis_a.dim != state.d_a:
        raise DimMismatch(f"basis A dim {basis_a.dim} vs {state.d_a}")
    d_a, d_b = state.d_a, state.d_b
    if basis_b is None:
        w = premeasurement_isometry(d_a, d_b, basis_a)
        out = w @ state.matrix @ w.conj().T
        return BipartiteState(out, d_a * d_b, d_a)
    if basis_b.dim != d_b:
        raise DimMismatch(f"basis B dim {basis_b.dim} vs {d_b}")
    x = np.zeros((d_a * d_b * d_a * d_b, d_a * d_b), dtype=complex)
    ea = np.eye(d_a)
    eb = np.eye(d_b)
    for a in range(d_a):
        for b in range(d_b):
            blk = np.kron(basis_a.projector(a), basis_b.projector(b))
            x += np.kron(np.kron(blk, ea[:, a][:, None]), eb[:, b][:, None])
    out = x @ state.matrix @ x.conj().T
    return BipartiteState(out, d_a * d_b, d_a * d_b)


def apply_kraus(state: BipartiteState, ch: KrausChannel, side: str) -> BipartiteState:
    d = state.d_a if side == "A" else state.d_b
    if ch.d_in != d:
        raise InvalidChannel(f"channel input dim {ch.d_in} vs side {side} dim {d}")
    if side == "A":
        new_a, new_b = ch.d_out, state.d_b
        lift = [np.kron(k, np.eye(state.d_b)) for k in ch.kraus_ops]
    else:
        new_a, new_b = state.d_a, ch.d_out
        lift = [np.kron(np.eye(state.d_a), k) for k in ch.kraus_ops]
    out = np.zeros((new_a * new_b, new_a * new_b), dtype=complex)
    for k in lift:
        out += k @ state.matrix @ k.conj().T
    return BipartiteState(out, new_a, new_b)


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar-random unitary: QR of a Ginibre matrix with the phase fix."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    ph = np.diag(r).copy()
    ph = ph / np.abs(ph)
    return q * ph[None, :]


def random_cptp(d: int, kraus_count: int, seed) -> KrausChannel:
    """Random channel from a Haar isometry d -> d * kraus_count."""
    if kraus_count < 1:
        raise DomainError(f"kraus_count must be >= 1, got {kraus_count}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d * kraus_count, d)) + \
        1j * rng.standard_normal((d * kraus_count, d))
    q, r = np.linalg.qr(g)
    ph = np.diag(r).copy()
    ph = ph / np.abs(ph)
    q = q * ph[None, :]
    ops = [q[k * d:(k + 1) * d, :] for k in range(kraus_count)]
    return KrausChannel(ops)


def dephasing_channel(basis: LocalBasis) -> KrausChannel:
    """Full dephasing in a basis, as an explicit Kraus set of projectors."""
    return KrausChannel([basis.projector(k) for k in range(basis.dim)])


def harmonic_unitary(basis: LocalBasis) -> np.ndarray:
    """U = sum_k e^{2 pi i k / d} |b_k><b_k|; eigenvalues the d-th roots of unity."""
    d = basis.dim
    phases = np.exp(2j * np.pi * np.arange(d) / d)
    return (basis.unitary * phases[None, :]) @ basis.unitary.conj().T


def local_observable(basis: LocalBasis, spectrum) -> np.ndarray:
    """Hermitian observable with the given eigenbasis and eigenvalues."""
    gam = np.asarray(spectrum, dtype=float)
    if gam.shape != (basis.dim,):
        raise DimMismatch(f"need {basis.dim} eigenvalues, got shape {gam.shape}")
    srt = np.sort(gam)
    if basis.dim > 1 and float(np.min(np.diff(srt))) < 1e-9:
        raise DegenerateSpectrum("observable spectrum has a gap below 1e-9")
    return (basis.unitary * gam[None, :]) @ basis.unitary.conj().T
