"""End-to-end acceptance checks, one test per headline criterion.

Each test re-derives its numbers through the public verification entry point
and prints one PASS/FAIL line per claim; the whole file stays under a minute.
"""

from ulab import verify


def run_group(name):
    results = verify.run_claims(only=[name])
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    assert not failed, f"failed claims: {failed}"


def test_01_bell_states_reach_unit_lqu():
    run_group("bell_lqu")


def test_02_separable_x_maximum_is_half_at_extremal_params():
    run_group("separable_x")


def test_03_closed_form_matches_numeric_on_random_x_states():
    run_group("closed_form")


def test_04_bell_diagonal_line_formula_and_separable_third():
    run_group("bell_diagonal")


def test_05_dissonance_via_rank2_purification():
    run_group("dissonance")


def test_06_mixing_sweep_entropies_monotonicity_and_crossing():
    run_group("chi")


def test_07_noisy_family_separable_with_gap_peak_at_one():
    run_group("noisy")


def test_08_geometric_discord_argmax_coincides():
    run_group("gd")


def test_09_property_suites():
    run_group("properties")


def test_10_separable_lqu_ceiling_probe():
    run_group("conjecture")
