"""Top-level acceptance run: one test per shipped guarantee.

Each test drives the corresponding checker in pacalloc.suite at full
strength and fixed seed, so `pytest -v tests/test_acceptance.py` prints
one pass/fail line per guarantee.
"""

from pacalloc import suite

SEED = 42


def check(number):
    fn = getattr(suite, f"criterion_{number}")
    result = fn(seed=SEED, quick=False)
    assert result["passed"], result["detail"]


def test_criterion_01_lp_approximation_bound():
    check(1)


def test_criterion_02_equilibrium_nonexistence():
    check(2)


def test_criterion_03_free_rider_gap():
    check(3)


def test_criterion_04_stability_price_band():
    check(4)


def test_criterion_05_oracle_agreement():
    check(5)


def test_criterion_06_monotonicity():
    check(6)


def test_criterion_07_payment_audit():
    check(7)


def test_criterion_08_payment_uniqueness():
    check(8)


def test_criterion_09_cover_reduction():
    check(9)


def test_criterion_10_expected_plan():
    check(10)


def test_criterion_11_oblivious_witness():
    check(11)
