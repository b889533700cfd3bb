"""Acceptance gates. Each test prints one PASS or FAIL line.

These run the full-size corpora and the complete region map, so the file
takes on the order of twenty minutes end to end on one core.
"""
import time

import numpy as np
from numpy.testing import assert_allclose

from qcorr import entanglement, harness, measures, states


def _gate(name, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_bell_panel():
    bell = states.max_entangled(2)
    t0 = time.perf_counter()
    got = {
        "discord_A": measures.discord(bell).value,
        "deficit_A": measures.deficit(bell).value,
        "geometric_S2": measures.geometric(bell, "S2").value,
        "geometric_S1": measures.geometric(bell, "S1").value,
        "noq_A": measures.negativity_of_quantumness(bell).value,
        "response_S1": measures.unitary_response(bell, "S1").value,
        "geometric_Bures": measures.geometric(bell, "Bures").value,
        "lqu": measures.lqu(bell).value,
        "interferometric_power": measures.interferometric_power(bell).value,
        "response_S2": measures.unitary_response(bell, "S2").value,
        "response_Hellinger": measures.unitary_response(bell, "Hellinger").value,
    }
    elapsed = time.perf_counter() - t0
    want = {
        "discord_A": 1.0,
        "deficit_A": 1.0,
        "geometric_S2": 0.5,
        "geometric_S1": 1.0,
        "noq_A": 1.0,
        "response_S1": 2.0,
        "geometric_Bures": 2.0 - np.sqrt(2.0),
        "lqu": 1.0,
        "interferometric_power": 1.0,
        "response_S2": 2.0,
        "response_Hellinger": 2.0,
    }
    gaps = {k: abs(got[k] - want[k]) for k in want}
    worst = max(gaps, key=gaps.get)
    ok = gaps[worst] <= 1e-6 and elapsed < 10.0
    _gate("bell-panel", ok,
          f"11 values, worst gap {gaps[worst]:.2e} ({worst}), "
          f"{elapsed:.2f}s of 10s")
    assert_allclose(got["response_Hellinger"], 2.0 * got["lqu"], atol=1e-6)


def test_region_map_full():
    step = 0.01
    t0 = time.perf_counter()
    rows = harness.region_map(step)
    elapsed = time.perf_counter() - t0

    axis_bad = interior_bad = 0
    for r in rows:
        on_x, on_y = r["y"] < 1e-12, r["x"] < 1e-12
        classical = r["class"] in ("classical_cc", "classical_cq_only",
                                   "classical_qc_only", "product")
        if on_x or on_y:
            if not classical:
                axis_bad += 1
        elif classical:
            interior_bad += 1

    poly = entanglement.xy_entanglement_polynomial

    def near_boundary(x, y):
        vals = [poly(x + dx, y + dy)
                for dx in (-step, 0.0, step) for dy in (-step, 0.0, step)
                if x + dx >= -1e-12 and y + dy >= -1e-12
                and x + dx + y + dy <= 1.0 + 1e-12]
        return min(vals) <= 0.0 <= max(vals)

    boundary_bad = 0
    for r in rows:
        want = poly(r["x"], r["y"]) < 0.0
        seen = r["negativity"] > 1e-8
        if want != seen and not near_boundary(r["x"], r["y"]):
            boundary_bad += 1

    ok = (len(rows) == 5151 and axis_bad == 0 and interior_bad == 0
          and boundary_bad == 0 and elapsed < 600.0)
    _gate("region-map", ok,
          f"{len(rows)} points, axis misses {axis_bad}, "
          f"interior classical {interior_bad}, boundary misses off the "
          f"polynomial cell {boundary_bad}, {elapsed:.0f}s of 600s "
          f"({harness.thread_count()} thread(s))")


def test_identity_suite_200():
    t0 = time.perf_counter()
    rep = harness.run_suite("identities", corpus_size=200)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and elapsed < 600.0
    _gate("identities-200", ok,
          f"{rep.cases} states, {len(rep.failures)} failures, "
          f"{elapsed:.0f}s of 600s")


def test_wheel_200():
    rep = harness.run_suite("wheel", corpus_size=200)
    _gate("wheel-200", rep.passed,
          f"{rep.cases} states, 7 arrows each at 1e-9, "
          f"{len(rep.failures)} violations")


def test_distance_block_500():
    rep = harness.run_suite("distance_inequalities", corpus_size=500)
    _gate("distance-500", rep.passed,
          f"{rep.cases} pairs, {len(rep.failures)} violations beyond 1e-9")


def test_requirement_suite():
    rep = harness.run_suite("requirements", corpus_size=200)
    ancilla_seen = any("ancilla" in r.check for r in rep.expected_violations)
    ok = rep.passed and ancilla_seen
    _gate("requirements", ok,
          f"{rep.cases} cases (50 classical, 20 invariance, 100 pure, "
          f"10 monotone), {len(rep.failures)} failures, "
          f"ancilla regression seen={ancilla_seen}")


def test_oracle_equivalence():
    rep = harness.run_suite("regressions", corpus_size=10)
    _gate("oracle-equivalence", rep.passed,
          f"{rep.cases} checks against the frozen brute-force tables, "
          f"{len(rep.failures)} failures")
