from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from partlab.distributions import CAUCHY, DistributionSpec, RngState, generate_array
from partlab.sorting import (
    ALGORITHMS,
    OpCounter,
    as_keys,
    get_algorithm,
    heap_sort,
    partition,
    partition_sort,
    quick_sort,
)

SORTS = [partition_sort, quick_sort, heap_sort]
int_lists = st.lists(st.integers(-50, 50), max_size=200)
float_lists = st.lists(st.floats(-1e6, 1e6, allow_nan=False), max_size=200)


# --- partition ------------------------------------------------------------


def test_partition_singleton():
    a = np.array([5])
    c = OpCounter()
    assert partition(a, c) == 0
    assert a.tolist() == [5]
    assert c.comparisons == 0


def test_partition_pair():
    a = np.array([2, 1])
    assert partition(a) == 1
    assert a.tolist() == [1, 2]


def test_partition_eight_against_sorted_copy():
    data = [3, 1, 4, 1, 5, 9, 2, 6]
    a = np.array(data)
    k = partition(a)
    oracle = sorted(data)
    assert k == 4
    assert Counter(a[:4].tolist()) == Counter(oracle[:4])
    assert Counter(a[4:].tolist()) == Counter(oracle[4:])


def test_partition_rejects_empty():
    with pytest.raises(ValueError):
        partition(np.array([], dtype=np.int64))


@given(st.lists(st.integers(0, 6), min_size=1, max_size=300))
@settings(max_examples=300, deadline=None)
def test_partition_predicate_with_duplicates(data):
    a = np.array(data, dtype=np.int64)
    k = partition(a)
    assert k == len(data) // 2
    assert Counter(a.tolist()) == Counter(data)
    if k > 0:
        assert a[:k].max() <= a[k:].min()


def test_partition_counts_swaps_bounded():
    rng = np.random.default_rng(3)
    for n in (2, 3, 17, 256, 1001):
        a = rng.random(n)
        c = OpCounter()
        partition(a, c)
        assert c.swaps <= n // 2


# --- sorts ----------------------------------------------------------------


@pytest.mark.parametrize("sort", SORTS)
def test_empty(sort):
    out = sort([])
    assert out.keys.tolist() == []
    assert out.counter.as_tuple() == (0, 0, 0)


@pytest.mark.parametrize("sort", SORTS)
def test_small_cases(sort):
    assert sort([3, 1, 2]).keys.tolist() == [1, 2, 3]
    assert sort([1]).keys.tolist() == [1]
    assert sort([2, 2, 2, 2]).keys.tolist() == [2, 2, 2, 2]
    assert sort(list(range(63, -1, -1))).keys.tolist() == list(range(64))


@pytest.mark.parametrize("sort", SORTS)
@pytest.mark.parametrize("name", ["uniform01", "normal", "cauchy", "binomial", "sorted", "reversed", "allequal"])
def test_against_reference_sort(sort, name):
    spec = DistributionSpec.binomial(20, 0.4) if name == "binomial" else DistributionSpec(name)
    keys = generate_array(spec, 100, RngState(17))
    out = sort(keys)
    assert np.array_equal(out.keys, np.sort(keys, kind="stable"))


@pytest.mark.parametrize("sort", SORTS)
@given(data=st.one_of(int_lists, float_lists))
@settings(max_examples=150, deadline=None)
def test_permutation_and_order(sort, data):
    out = sort(data)
    assert out.keys.tolist() == sorted(data)


@pytest.mark.parametrize("sort", SORTS)
def test_input_not_mutated(sort):
    a = np.array([5, 3, 1, 4])
    sort(a)
    assert a.tolist() == [5, 3, 1, 4]


@pytest.mark.parametrize("sort", SORTS)
def test_counts_deterministic(sort):
    keys = generate_array(CAUCHY, 2000, RngState(4))
    a, b = sort(keys), sort(keys)
    assert a.counter.as_tuple() == b.counter.as_tuple()
    assert a.elapsed >= 0


def test_counter_accumulates_and_weights():
    c = OpCounter()
    partition_sort([3, 1, 2], c)
    first = c.as_tuple()
    partition_sort([3, 1, 2], c)
    assert c.as_tuple() == tuple(2 * v for v in first)
    assert c.weighted_total() == sum(c.as_tuple())
    assert c.weighted_total((2, 0, 0)) == 2 * c.comparisons


def test_partition_sort_sorted_input_costs_n_log_n_minus_n_plus_1():
    # each level verifies every block with one comparison per key minus one
    for e in range(1, 12):
        n = 2 ** e
        c = partition_sort(np.arange(n)).counter
        assert c.comparisons == n * e - n + 1
        assert c.swaps == 0 and c.moves == 0


def test_quick_sort_equal_keys_quadratic_but_terminates():
    n = 500
    c = quick_sort(np.zeros(n)).counter
    assert c.comparisons == n * (n - 1) // 2


def test_heap_sort_comparisons_n_log_n():
    rng = np.random.default_rng(0)
    n = 4096
    c = heap_sort(rng.random(n)).counter
    assert c.comparisons <= 2 * n * np.log2(n)


def test_key_domain():
    assert as_keys([1, 2]).dtype == np.int64
    assert as_keys([1.5, 2]).dtype == np.float64
    assert as_keys(np.array([True, False])).dtype == np.int64
    with pytest.raises(ValueError):
        as_keys([1.0, float("nan")])
    with pytest.raises(TypeError):
        as_keys(["a", "b"])
    with pytest.raises(ValueError):
        as_keys([[1, 2]])


def test_algorithm_registry():
    assert set(ALGORITHMS) == {"partition", "quick", "heap"}
    assert get_algorithm("heap") is heap_sort
    with pytest.raises(ValueError):
        get_algorithm("bogo")
