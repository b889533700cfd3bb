import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcorr import channels, entanglement, states
from qcorr.errors import NotPure


def test_negativity_bell_and_product():
    assert_allclose(entanglement.negativity(states.max_entangled(2)), 1.0,
                    atol=1e-10)
    prod = states.product_state(np.diag([0.6, 0.4]), np.diag([0.2, 0.8]))
    assert_allclose(entanglement.negativity(prod), 0.0, atol=1e-9)


def test_negativity_local_unitary_invariance():
    st = states.family_xy(0.45, 0.45)
    base = entanglement.negativity(st)
    for seed in range(5):
        ua = channels.random_unitary(2, seed=seed)
        ub = channels.random_unitary(2, seed=100 + seed)
        moved = channels.apply_local_unitary(
            channels.apply_local_unitary(st, ua, "A"), ub, "B")
        assert_allclose(entanglement.negativity(moved), base, atol=1e-9)


def test_is_ppt():
    assert not entanglement.is_ppt(states.max_entangled(2))
    assert entanglement.is_ppt(
        states.product_state(np.eye(2) / 2, np.eye(3) / 3))
    assert entanglement.is_ppt(states.family_xy(0.25, 0.25))


def test_entanglement_entropy():
    assert_allclose(
        entanglement.entanglement_entropy(states.max_entangled(2)), 1.0,
        atol=1e-10)
    psi = np.kron([1.0, 0.0], [0.0, 1.0])
    pure_prod = states.BipartiteState(np.outer(psi, psi), 2, 2)
    assert_allclose(entanglement.entanglement_entropy(pure_prod), 0.0,
                    atol=1e-10)
    with pytest.raises(NotPure):
        entanglement.entanglement_entropy(states.random_bipartite(2, 2, seed=1))


def test_entropy_both_marginals_agree():
    st = states.random_pure_bipartite(2, 2, seed=11)
    sa = entanglement.entanglement_entropy(st)
    sb = entanglement.entanglement_entropy(st.swapped())
    assert_allclose(sa, sb, atol=1e-10)


class TestXYBoundary:
    def test_polynomial_values(self):
        assert_allclose(entanglement.xy_entanglement_polynomial(0.0, 0.0), 1.0,
                        atol=1e-12)
        assert_allclose(entanglement.xy_entanglement_polynomial(0.25, 0.25),
                        1.25, atol=1e-12)

    def test_is_entangled_examples(self):
        assert not entanglement.xy_is_entangled(states.FamilyPointXY(0.0, 0.0))
        assert not entanglement.xy_is_entangled(states.FamilyPointXY(0.25, 0.25))
        assert entanglement.xy_is_entangled(states.FamilyPointXY(0.45, 0.45))

    def test_polynomial_agrees_with_negativity_on_grid(self):
        step = 0.05
        n = int(round(1.0 / step))
        poly = entanglement.xy_entanglement_polynomial
        for i in range(n + 1):
            for j in range(n + 1 - i):
                x, y = i * step, j * step
                neg = entanglement.negativity(states.family_xy(x, y))
                if poly(x, y) < 0.0:
                    assert neg > 1e-8, (x, y)
                else:
                    assert neg <= 1e-8, (x, y)
