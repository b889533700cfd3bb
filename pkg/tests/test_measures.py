import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qcorr import channels, measures, metrics, optimizer, states
from qcorr.errors import DegenerateMarginal, DegenerateSpectrum, Unsupported

BELL = states.max_entangled(2)
TOL_OPT = optimizer.OptConfig().tol_opt


class TestBellPanel:
    def test_informational(self):
        assert_allclose(measures.discord(BELL).value, 1.0, atol=1e-6)
        assert_allclose(measures.deficit(BELL).value, 1.0, atol=1e-6)
        assert_allclose(measures.classical_correlations(BELL).value, 1.0,
                        atol=1e-6)

    def test_geometric(self):
        assert_allclose(measures.geometric(BELL, "S2").value, 0.5, atol=1e-6)
        assert_allclose(measures.geometric(BELL, "S1").value, 1.0, atol=1e-6)
        val = 2.0 - np.sqrt(2.0)
        assert_allclose(measures.geometric(BELL, "Bures").value, val,
                        atol=1e-6)
        assert_allclose(measures.geometric(BELL, "Hellinger").value, val,
                        atol=1e-6)

    def test_responses(self):
        assert_allclose(measures.unitary_response(BELL, "S1").value, 2.0,
                        atol=1e-6)
        assert_allclose(measures.unitary_response(BELL, "S2").value, 2.0,
                        atol=1e-6)
        assert_allclose(measures.unitary_response(BELL, "Hellinger").value,
                        2.0, atol=1e-6)

    def test_observable_based(self):
        assert_allclose(measures.lqu(BELL).value, 1.0, atol=1e-6)
        assert_allclose(measures.interferometric_power(BELL).value, 1.0,
                        atol=1e-6)
        assert_allclose(measures.discriminating_strength(BELL).value, 1.0,
                        atol=1e-6)

    def test_negativity_of_quantumness(self):
        for route in ("activation", "l1"):
            rep = measures.negativity_of_quantumness(BELL, route=route)
            assert_allclose(rep.value, 1.0, atol=1e-6)


def test_classical_states_give_zero():
    basis = channels.random_unitary(2, seed=6)
    cq = states.classical_quantum(
        np.array([0.65, 0.35]),
        [states.random_density(2, seed=40).matrix,
         states.random_density(2, seed=41).matrix], basis_a=basis)
    for fn in (measures.discord, measures.deficit, measures.lqu,
               measures.interferometric_power,
               measures.negativity_of_quantumness,
               measures.discriminating_strength):
        assert fn(cq).value <= 1e-8, fn.__name__
    assert measures.mig(cq, "S1").value <= 1e-8
    assert measures.geometric(cq, "Bures").value <= 1e-8
    assert measures.unitary_response(cq, "Hellinger").value <= 1e-8


def test_pure_state_reductions():
    st_ = states.random_pure_bipartite(2, 2, seed=33)
    ent = metrics.von_neumann_entropy(st_.rho_a())
    assert_allclose(measures.discord(st_).value, ent, atol=1e-3)
    assert_allclose(measures.deficit(st_).value, ent, atol=1e-3)
    # geometric S2 on pure states: linear entropy of the marginal
    tr2 = float((np.linalg.eigvalsh(st_.rho_a()) ** 2).sum())
    assert_allclose(measures.geometric(st_, "S2").value, 1.0 - tr2, atol=1e-3)


class TestIdentityChains:
    def test_entropy_gap_chain_exact(self):
        st_ = states.random_bipartite(2, 2, seed=0)
        a = measures.geometric(st_, "RE").value
        b = measures.mig(st_, "RE").value
        c = measures.deficit(st_).value
        assert_allclose(a, b, atol=1e-12)
        assert_allclose(b, c, atol=1e-12)

    def test_s2_geometric_equals_mig(self):
        st_ = states.random_bipartite(2, 2, seed=1)
        assert_allclose(measures.geometric(st_, "S2").value,
                        measures.mig(st_, "S2").value, atol=1e-12)

    def test_trace_distance_chain(self):
        st_ = states.random_bipartite(2, 2, seed=2)
        geo = measures.geometric(st_, "S1").value
        mig = measures.mig(st_, "S1").value
        noq_a = measures.negativity_of_quantumness(st_, route="activation").value
        noq_l = measures.negativity_of_quantumness(st_, route="l1").value
        ur = measures.unitary_response(st_, "S1").value
        assert_allclose(geo, mig, atol=1e-6)
        assert_allclose(mig, noq_a, atol=1e-3)
        assert_allclose(noq_a, noq_l, atol=2 * TOL_OPT)
        assert_allclose(ur, 2.0 * geo, atol=1e-3)

    def test_response_from_geometric(self):
        # response = 4 g - g^2 for the fidelity based distances
        st_ = states.random_bipartite(2, 2, seed=3)
        for did in ("Bures", "Hellinger"):
            g = measures.geometric(st_, did).value
            u = measures.unitary_response(st_, did).value
            assert_allclose(u, 4.0 * g - g * g, atol=1e-3, err_msg=did)

    def test_hellinger_response_is_twice_lqu(self):
        st_ = states.random_bipartite(2, 2, seed=4)
        assert_allclose(measures.unitary_response(st_, "Hellinger").value,
                        2.0 * measures.lqu(st_).value, atol=1e-3)

    def test_discriminating_strength_equals_lqu(self):
        st_ = states.random_bipartite(2, 2, seed=5)
        assert_allclose(measures.discriminating_strength(st_).value,
                        measures.lqu(st_).value, atol=3 * TOL_OPT)

    def test_lqu_below_interferometric_power(self):
        st_ = states.random_bipartite(2, 2, seed=6)
        assert (measures.lqu(st_).value
                <= measures.interferometric_power(st_).value + 3 * TOL_OPT)


def test_oracle_spot_checks():
    import pathlib
    path = pathlib.Path(__file__).parent / "oracles" / "oracles.json"
    table = json.loads(path.read_text())["two_qubit_grid"]
    for seed in ("0", "1", "2"):
        st_ = states.random_bipartite(2, 2, seed=int(seed))
        row = table[seed]
        assert_allclose(measures.discord(st_).value, row["discord_A"],
                        atol=1e-4)
        assert_allclose(measures.deficit(st_).value, row["deficit_A"],
                        atol=1e-4)
        assert_allclose(measures.lqu(st_).value, row["lqu_spectral"],
                        atol=1e-4)


class TestFixedBasisFamily:
    def test_mid_dominates_two_sided_discord(self):
        st_ = states.family_xy(0.3, 0.2)
        mid = measures.fixed_basis_informational(st_, "MID").value
        disc_ab = measures.discord(st_, side="AB").value
        assert mid >= disc_ab - 1e-9

    def test_amid_is_two_sided_discord(self):
        st_ = states.family_xy(0.3, 0.2)
        rep = measures.fixed_basis_informational(st_, "AMID")
        assert rep.measure_id == "amid"
        assert_allclose(rep.value, measures.discord(st_, side="AB").value,
                        atol=1e-9)

    def test_diagonal_discord_equals_thermal(self):
        for seed in (50, 51):
            st_ = states.random_bipartite(2, 2, seed=seed)
            dd = measures.fixed_basis_informational(st_, "diagonal_discord")
            td = measures.fixed_basis_informational(st_, "thermal_diagonal")
            assert_allclose(dd.value, td.value, atol=1e-10)
            assert dd.bound == "exact"

    def test_degenerate_marginal_raises(self):
        with pytest.raises(DegenerateMarginal):
            measures.fixed_basis_informational(BELL, "MID")


def test_wheel_arrows_hold():
    arrows = (
        ("discord_lgm_A", "discord_lpm_A"),
        ("discord_lpm_A", "deficit_A"),
        ("discord_lgm_AB", "discord_lpm_AB"),
        ("discord_lpm_AB", "deficit_AB"),
        ("discord_lgm_A", "discord_lgm_AB"),
        ("discord_lpm_A", "discord_lpm_AB"),
        ("deficit_A", "deficit_AB"),
    )
    for seed in (60, 61):
        vals = measures.wheel_values(states.random_bipartite(2, 2, seed=seed))
        for lo, hi in arrows:
            assert vals[lo] <= vals[hi] + 1e-9, (seed, lo, hi)


def test_local_unitary_invariance():
    st_ = states.random_bipartite(2, 2, seed=70)
    ua = channels.random_unitary(2, seed=71)
    ub = channels.random_unitary(2, seed=72)
    moved = channels.apply_local_unitary(
        channels.apply_local_unitary(st_, ua, "A"), ub, "B")
    base = measures.discord(st_)
    seeded = [ua @ base.argmin] if isinstance(base.argmin, np.ndarray) else []
    after = measures.discord(moved, seeds=seeded)
    assert_allclose(after.value, base.value, atol=1e-3)


def test_discord_monotone_under_channel_on_b():
    st_ = states.random_bipartite(2, 2, seed=80)
    before = measures.discord(st_)
    ch = channels.random_cptp(2, kraus_count=2, seed=81)
    out = channels.apply_kraus(st_, ch, side="B")
    after = measures.discord(out, seeds=[before.argmin])
    assert after.value <= before.value + 1e-3


class TestReportsAndDispatch:
    def test_report_fields(self):
        rep = measures.discord(states.family_xy(0.3, 0.2))
        assert rep.bound == "upper"
        assert rep.side == "A"
        assert rep.presented >= 0.0
        doc = rep.to_dict()
        json.dumps(doc)  # serializable as-is
        assert doc["measure_id"] == "discord"

    def test_compute_aliases(self):
        st_ = states.family_xy(0.3, 0.2)
        a = measures.compute(st_, "negativity-of-quantumness").value
        b = measures.compute(st_, "noq").value
        assert_allclose(a, b, atol=1e-9)
        assert_allclose(measures.compute(st_, "ur-hellinger").value,
                        measures.compute(st_, "unitary-response-hellinger").value,
                        atol=1e-9)

    def test_compute_unknown_measure(self):
        with pytest.raises(Unsupported):
            measures.compute(BELL, "does-not-exist")

    def test_mig_l1_unsupported(self):
        with pytest.raises(Unsupported):
            measures.mig(BELL, "L1")

    def test_geometric_exact_route_needs_qubit(self):
        big = states.random_bipartite(3, 2, seed=90)
        with pytest.raises(Unsupported):
            measures.geometric(big, "S1", route="exact")


def test_spectrum_gamma_validation():
    with pytest.raises(DegenerateSpectrum):
        measures.SpectrumGamma((1.0, 1.0 + 1e-12))
    g = measures.default_gamma(3)
    assert g.values == (0.0, 1.0, 2.0)


def test_lqu_gamma_rescaling():
    st_ = states.random_bipartite(2, 2, seed=95)
    base = measures.lqu(st_).value
    wide = measures.lqu(st_, gamma=measures.SpectrumGamma((3.0, -1.0))).value
    assert_allclose(wide, 4.0 * base, rtol=1e-6)


def test_interferometric_power_metadata():
    rep = measures.interferometric_power(states.family_xy(0.3, 0.2))
    assert_allclose(rep.metadata["raw_qfi_minimum"], 4.0 * rep.value,
                    rtol=1e-9)


def test_unitary_response_hellinger_closed_route():
    rep = measures.unitary_response(states.random_bipartite(2, 2, seed=97),
                                    "Hellinger")
    assert_allclose(rep.metadata["closed_route_value"], rep.value, atol=1e-6)


@settings(max_examples=10, deadline=None)
@given(st.floats(min_value=0.01, max_value=0.95),
       st.floats(min_value=0.0, max_value=1.0))
def test_family_measure_bounds(x, frac):
    y = (1.0 - x) * frac * 0.95
    st_ = states.family_xy(x, y)
    d = measures.discord(st_).value
    assert -1e-9 <= d <= 1.0 + 1e-9
    assert measures.unitary_response(st_, "S1").value <= 2.0 + 1e-9
