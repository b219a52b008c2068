import random

import pytest

from resonance.stirling import (
    StirlingCombination,
    betti2_closed,
    betti3_closed,
    betti_bound_holds,
    betti_upper_bound,
    fit_stirling_coefficients,
    region_log2_bound,
    stirling2,
    stirling2_altsum,
)
from resonance.table1 import GOLDEN_BETTI, GOLDEN_REGIONS

from oracles import stirling_oracle

B2_ROW = GOLDEN_BETTI[2]
B3_ROW = GOLDEN_BETTI[3]


def test_stirling_diagonal_and_edges():
    for n in range(0, 12):
        assert stirling2(n, n) == 1
        if n >= 1:
            assert stirling2(n, 1) == 1
        assert stirling2(n, n + 3) == 0


def test_stirling_small_values_by_enumeration():
    assert stirling2(4, 2) == stirling_oracle(4, 2) == 7
    assert stirling2(4, 3) == stirling_oracle(4, 3) == 6
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert stirling2(n, k) == stirling_oracle(n, k)


def test_recurrence_agrees_with_alternating_sum():
    for n in range(0, 31):
        for k in range(0, 31):
            assert stirling2(n, k) == stirling2_altsum(n, k)


def test_recurrence_identity_holds():
    for n in range(1, 20):
        for k in range(1, n + 1):
            assert stirling2(n, k) == k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def test_betti2_closed_row():
    assert betti2_closed(1) == 0
    assert betti2_closed(3) == 15
    assert betti2_closed(9) == 120975
    for n, v in B2_ROW.items():
        assert betti2_closed(n) == v


def test_betti3_closed_row():
    assert betti3_closed(3) == 9
    assert betti3_closed(4) == 170
    assert betti3_closed(9) == 17153460
    for n, v in B3_ROW.items():
        assert betti3_closed(n) == v


def test_fit_recovers_known_combinations():
    assert fit_stirling_coefficients(1, [1, 3]).coefficients == {2: 1}
    assert fit_stirling_coefficients(2, [0, 2, 15, 80]).coefficients == {3: 2, 4: 3}
    b3_inputs = [B3_ROW[n] for n in range(1, 9)]
    assert fit_stirling_coefficients(3, b3_inputs).coefficients == {
        4: 9, 5: 80, 6: 345, 7: 840, 8: 840,
    }


def test_fit_round_trips_random_combinations():
    from math import comb, factorial

    rng = random.Random(11)
    for i in (1, 2, 3, 4):
        for _ in range(10):
            coeffs = {}
            for k in range(i + 1, 2**i + 1):
                cap = comb(2**i - 1, k - 1) * factorial(k - 1) // factorial(i)
                c = rng.randint(0, min(5, cap))
                if c:
                    coeffs[k] = c
            combo = StirlingCombination(i, coeffs)
            values = [combo.evaluate(n) for n in range(1, 2**i + 1)]
            assert fit_stirling_coefficients(i, values).coefficients == coeffs


def test_fit_rejects_wrong_input_count():
    with pytest.raises(ValueError):
        fit_stirling_coefficients(2, [0, 2, 15])


def test_fit_rejects_inconsistent_inputs():
    with pytest.raises(ValueError):
        fit_stirling_coefficients(2, [1, 2, 15, 80])  # b2(A_1) = 1 is impossible


def test_combination_rejects_bound_violation():
    # c_{2,4} is capped at 3 = C(3,3) * 3! / 2!
    with pytest.raises(ValueError):
        StirlingCombination(2, {4: 4})


def test_upper_bound_values():
    assert betti_upper_bound(2, 3) == 32
    assert betti_upper_bound(1, 4) == 16
    assert betti_upper_bound(3, 4) == 682


def test_bounds_hold_on_golden_cells():
    for i, row in GOLDEN_BETTI.items():
        for n, value in row.items():
            if value is None:
                continue
            assert betti_bound_holds(i, n, value)
            assert value < betti_upper_bound(i, n) or value == 0


def test_region_log2_bound_values():
    assert region_log2_bound(2)[0] == 3
    assert region_log2_bound(3)[0] == 7
    assert region_log2_bound(6)[0] == 31


def test_region_log2_bound_covers_known_chamber_counts():
    for n, regions in GOLDEN_REGIONS.items():
        if regions is None or n < 2:
            continue
        exponent, _ = region_log2_bound(n)
        assert regions < 2**exponent


def test_summed_bound_anomaly_at_two():
    # The term-by-term bounds sum to 13 > 8 at n = 2; the chamber-count
    # inequality itself still holds (6 < 8).  From n = 3 on, the summed
    # form holds too.
    exponent, holds = region_log2_bound(2)
    assert exponent == 3 and not holds
    for n in range(3, 10):
        assert region_log2_bound(n)[1]
