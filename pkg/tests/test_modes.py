"""Mode lattice enumeration: counts, ordering, structural identities."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waveguide_rate import (
    ChannelGeometry,
    ModeIndex,
    Species,
    WeightedTransversePair,
    enumerate_transverse,
    sorted_by_kappa,
)
from waveguide_rate.modes import interior_kappa_multiset


def test_cutoff_one():
    pairs = enumerate_transverse(1)
    as_dict = {(p.n1, p.n2): p.degeneracy for p in pairs}
    assert as_dict == {(1, 1): 2, (1, 0): 1, (0, 1): 1}
    assert sum(p.degeneracy for p in pairs) == 4


def test_weighted_counts():
    assert sum(p.degeneracy for p in enumerate_transverse(2)) == 12
    assert sum(p.degeneracy for p in enumerate_transverse(10)) == 220


def test_weighted_count_formula_exact_up_to_100():
    for n in range(1, 101):
        assert sum(p.degeneracy for p in enumerate_transverse(n)) == 2 * n * n + 2 * n


def test_invalid_cutoff():
    with pytest.raises(ValueError):
        enumerate_transverse(0)


def test_no_pair_is_origin_and_degeneracies_consistent():
    for p in enumerate_transverse(7):
        assert (p.n1, p.n2) != (0, 0)
        expected = 2 if (p.n1 >= 1 and p.n2 >= 1) else 1
        assert p.degeneracy == expected


def test_square_symmetry():
    pairs = enumerate_transverse(6)
    multiset = sorted((p.n1, p.n2, p.degeneracy) for p in pairs)
    swapped = sorted((p.n2, p.n1, p.degeneracy) for p in pairs)
    assert multiset == swapped


def test_sorted_by_kappa_examples():
    pairs = [
        WeightedTransversePair(1, 1, 2),
        WeightedTransversePair(1, 0, 1),
        WeightedTransversePair(0, 1, 1),
    ]
    ordered = sorted_by_kappa(pairs)
    assert [(p.n1, p.n2) for p in ordered] == [(0, 1), (1, 0), (1, 1)]

    singleton = [WeightedTransversePair(2, 3, 2)]
    assert sorted_by_kappa(singleton) == singleton

    tie = [WeightedTransversePair(5, 0, 1), WeightedTransversePair(3, 4, 2)]
    assert [(p.n1, p.n2) for p in sorted_by_kappa(tie)] == [(3, 4), (5, 0)]


def test_sorted_by_kappa_empty():
    with pytest.raises(ValueError):
        sorted_by_kappa([])


def test_sorted_by_kappa_is_ascending():
    ordered = sorted_by_kappa(enumerate_transverse(9))
    kappas = [p.kappa for p in ordered]
    assert kappas == sorted(kappas)


@settings(max_examples=30, deadline=None)
@given(cutoff=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_half_sum_identity_on_random_symmetric_h(cutoff, seed):
    # For symmetric h, half the degeneracy-weighted sum over the full
    # multiset equals the interior sum plus one edge sum: the exact
    # arithmetic structure of the capacity mode sum.
    rng = np.random.default_rng(seed)
    table = rng.standard_normal((cutoff + 1, cutoff + 1))
    table = table + table.T  # h(n1, n2) = h(n2, n1)

    def h(n1, n2):
        return table[n1, n2]

    weighted = sum(p.degeneracy * h(p.n1, p.n2) for p in enumerate_transverse(cutoff))
    direct = (
        sum(h(n1, n2) for n1 in range(1, cutoff + 1) for n2 in range(1, cutoff + 1))
        + sum(h(n1, 0) for n1 in range(1, cutoff + 1))
    )
    assert 0.5 * weighted == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_interior_multiset_matches_enumeration():
    cutoff = 25
    kap, cnt = interior_kappa_multiset(cutoff)
    # rebuild from the explicit pair list restricted to the quarter disk
    expected = {}
    for p in enumerate_transverse(cutoff):
        if p.n1 >= 1 and p.n2 >= 1 and p.n1**2 + p.n2**2 <= cutoff**2:
            k2 = p.n1**2 + p.n2**2
            expected[k2] = expected.get(k2, 0) + 1
    got = {int(round(k * k)): int(c) for k, c in zip(kap, cnt)}
    assert got == expected
    assert np.all(np.diff(kap) > 0)


def test_interior_multiset_cache_consistent_after_growth():
    small_k, small_c = interior_kappa_multiset(10)
    interior_kappa_multiset(40)  # grow the cache
    again_k, again_c = interior_kappa_multiset(10)
    assert np.array_equal(small_k, again_k)
    assert np.array_equal(small_c, again_c)


def test_mode_index_validation():
    with pytest.raises(ValueError):
        ModeIndex(0, 0, Species.TM)
    with pytest.raises(ValueError):
        ModeIndex(0, 3, Species.TE)  # TE needs both indices >= 1
    assert ModeIndex(0, 3, Species.TM).kappa == 3.0


def test_weighted_pair_validation():
    with pytest.raises(ValueError):
        WeightedTransversePair(1, 1, 1)  # interior pairs host both species
    with pytest.raises(ValueError):
        WeightedTransversePair(1, 0, 2)  # edge pairs host one


def test_channel_geometry():
    geom = ChannelGeometry(2e-3, 8e-3)
    assert geom.area == pytest.approx(1.6e-5)
    assert geom.aspect_ratio == pytest.approx(2.0)
    assert not geom.is_square
    assert ChannelGeometry(1e-3, 1e-3).is_square
    with pytest.raises(ValueError):
        ChannelGeometry(0.0, 1.0)
