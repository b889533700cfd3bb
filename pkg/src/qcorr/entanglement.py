"""Negativity, the PPT test, entanglement entropy, and the xy-family boundary."""
from __future__ import annotations

import numpy as np

from . import linalg, metrics
from .errors import NotPure
from .states import BipartiteState, FamilyPointXY


def negativity(state: BipartiteState) -> float:
    """||rho^{T_A}||_1 - 1, clamped to >= 0. Two-qubit maximally entangled -> 1."""
    pt = linalg.partial_transpose(state.matrix, (state.d_a, state.d_b), "A")
    val = linalg.schatten_norm(pt, 1) - 1.0
    return max(float(val), 0.0)


def is_ppt(state: BipartiteState) -> bool:
    """True iff the partial transpose has no eigenvalue below -1e-9.

    At 2x2 this doubles as a separability certificate; in higher dimensions it
    only certifies PPT.
    """
    pt = linalg.partial_transpose(state.matrix, (state.d_a, state.d_b), "A")
    return float(np.linalg.eigvalsh(pt)[0]) >= -1e-9


def entanglement_entropy(state: BipartiteState) -> float:
    """Marginal entropy of a pure state, in bits."""
    purity = float(np.trace(state.matrix @ state.matrix).real)
    if purity < 1.0 - 1e-9:
        raise NotPure(f"purity {purity!r} below 1 - 1e-9")
    return metrics.von_neumann_entropy(state.rho_a())


def xy_entanglement_polynomial(x: float, y: float) -> float:
    return (1.0 + 10.0 * x * y
            - 16.0 * x * x * y * y * (4.0 * x + 1.0) * (4.0 * y + 1.0)
            - 7.0 * (x * x + y * y)
            + 2.0 * (x + y) * (1.0 + 2.0 * (x * x - 4.0 * x * y + y * y)))


def xy_is_entangled(point: FamilyPointXY) -> bool:
    """Closed-form entanglement boundary of the xy family: polynomial < 0."""
    return xy_entanglement_polynomial(point.x, point.y) < 0.0
