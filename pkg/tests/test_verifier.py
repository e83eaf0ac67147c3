import random
from collections import Counter
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from bhgsets.constructions import golomb_set, modular_reduce, moment_curve, translate_union
from bhgsets.errors import BudgetExceeded
from bhgsets.finite_field import FieldSpec
from bhgsets.groups import BhgSet, GroupSpec, group_add
from bhgsets.verifier import is_bhg, min_g, rep_profile

REF_B = [1, 2, 7, 9, 10, 15, 25, 26, 31]


def ordered_oracle(bset, h):
    """Independent count: all ordered h-tuples, folded with group_add,
    deduplicated as sorted tuples."""
    seen = set()
    counts = Counter()
    for tup in product(bset.elements, repeat=h):
        key = tuple(sorted(tup))
        if key in seen:
            continue
        seen.add(key)
        acc = tup[0]
        for x in tup[1:]:
            acc = group_add(bset.spec, acc, x)
        counts[acc] += 1
    return counts


def test_sidon_in_z8():
    prof = rep_profile(BhgSet(GroupSpec.product(8), ((1,), (2,), (7,))), 2)
    assert prof.max_count == 1
    assert sorted(k[0] for k in prof.counts) == [0, 1, 2, 3, 4, 6]


def test_translate_union_profile_example():
    prof = rep_profile(BhgSet.integers(REF_B, GroupSpec.box(1, 32)), 2)
    assert prof.max_count == 2
    assert prof.witness == ((11,), (((1,), (10,)), ((2,), (9,))))


def test_single_element():
    assert rep_profile(BhgSet(GroupSpec.product(5), ((0,),)), 3).max_count == 1


def test_min_g_examples():
    F17 = FieldSpec(17)
    G = golomb_set(F17, F17.element(3), F17.element(5), F17.element(1))
    assert min_g(G, 2) == 1
    assert min_g(modular_reduce(G, (2, 2)), 2) <= 4
    assert min_g(moment_curve(FieldSpec(7), 3), 3) == 1


def test_is_bhg_examples():
    B = BhgSet.integers(REF_B)
    assert is_bhg(B, 2, 2)
    check = is_bhg(B, 2, 1)
    assert not check
    assert check.witness == ((11,), (((1,), (10,)), ((2,), (9,))))
    assert is_bhg(BhgSet(GroupSpec.product(5), ((0,), (1,))), 2, 1)


def test_is_bhg_witness_has_g_plus_one_reps():
    s = BhgSet(GroupSpec.product(4), tuple((i,) for i in range(4)))
    check = is_bhg(s, 2, 1)
    target, reps = check.witness
    assert len(reps) == 2 and len(set(reps)) == 2
    assert all(group_add(s.spec, *r) == target for r in reps)


def test_budget_refusal():
    s = BhgSet(GroupSpec.product(50), tuple((i,) for i in range(50)))
    with pytest.raises(BudgetExceeded) as exc:
        rep_profile(s, 3, budget=1000)
    assert exc.value.required == comb(52, 3)


sets = st.one_of(
    st.tuples(st.just(GroupSpec.product(7, 3)), st.sets(st.tuples(st.integers(0, 6), st.integers(0, 2)), min_size=1, max_size=8)),
    st.tuples(st.just(GroupSpec.box(2, 4)), st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=8)),
    st.tuples(st.just(GroupSpec.product(12)), st.sets(st.tuples(st.integers(0, 11)), min_size=1, max_size=8)),
)


@settings(max_examples=60, deadline=None)
@given(sets, st.integers(2, 3))
def test_profile_matches_ordered_oracle(args, h):
    spec, elems = args
    bset = BhgSet(spec, tuple(elems))
    prof = rep_profile(bset, h)
    assert prof.counts == dict(ordered_oracle(bset, h))
    assert prof.total == comb(len(elems) + h - 1, h)


@settings(max_examples=40, deadline=None)
@given(sets, st.randoms(use_true_random=False))
def test_order_independence_and_monotonicity(args, rnd):
    spec, elems = args
    elems = list(elems)
    a = rep_profile(BhgSet(spec, tuple(elems)), 2)
    rnd.shuffle(elems)
    b = rep_profile(BhgSet(spec, tuple(reversed(elems))), 2)
    assert a.counts == b.counts and a.witness == b.witness
    sub = elems[: rnd.randint(1, len(elems))]
    assert min_g(BhgSet(spec, tuple(sub)), 2) <= a.max_count


def test_field_group_profile():
    f = FieldSpec(3, 2, (1, 2))
    A = moment_curve(f, 2)
    prof = rep_profile(A, 2)
    assert prof.counts == dict(ordered_oracle(A, 2))
    assert prof.max_count == 1


def test_threads_give_identical_profile():
    U = translate_union([1, 2, 7], 8, [0, 1, 3])
    s = BhgSet.integers(range(0, 40, 3))
    for bset in (U, s):
        one = rep_profile(bset, 3)
        many = rep_profile(bset, 3, threads=3)
        assert one == many


def test_subsets_of_constructions_stay_bhg():
    rnd = random.Random(7)
    F13 = FieldSpec(13)
    base = moment_curve(F13, 3)
    for _ in range(20):
        sub = rnd.sample(base.elements, rnd.randint(1, len(base)))
        assert is_bhg(BhgSet(base.spec, tuple(sub)), 3, 1)
