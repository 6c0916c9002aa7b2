import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sessub.inductive import Claim, EMPTY_CONTEXT, Judgement, StepLimitExceeded, derive
from sessub.memo import MemoState, check_memo, subtype_memo
from sessub.randgen import random_type
from sessub.subterms import sub_pair
from sessub.syntax import End, InvalidSessionType
from sessub.textio import parse


class TestSubtypeMemo:
    def test_end_end(self):
        delta = subtype_memo(MemoState(), EMPTY_CONTEXT, End(), End())
        assert not delta.failed
        assert delta.visited == {Judgement(EMPTY_CONTEXT, Claim.make(End(), End()))}

    def test_rec_unfolding(self):
        delta = subtype_memo(
            MemoState(), EMPTY_CONTEXT, parse("rec X. ?[end].X"), parse("?[end].rec X. ?[end].X")
        )
        assert not delta.failed

    def test_failed_propagates(self):
        delta = MemoState(failed=True)
        out = subtype_memo(delta, EMPTY_CONTEXT, End(), End())
        assert out.failed and not out.visited


class TestCheckMemo:
    def test_end_end(self):
        r = check_memo(parse("end"), parse("end"))
        assert r.subtype and r.nodes_expanded == 1

    def test_select_narrowing(self):
        assert check_memo(parse("+{a: end, b: end}"), parse("+{a: end}")).subtype

    def test_constructor_mismatch(self):
        assert not check_memo(parse("?[end].end"), parse("![end].end")).subtype

    def test_validates_inputs(self):
        with pytest.raises(InvalidSessionType):
            check_memo(parse("rec X. X"), parse("end"))

    def test_step_limit(self):
        with pytest.raises(StepLimitExceeded):
            check_memo(parse("rec X. ?[end].X"), parse("rec X. ?[end].X"), step_limit=2)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_agreement_and_dominance(seed):
    rng = random.Random(seed)
    t = random_type(rng, 25)
    u = random_type(rng, 25)
    try:
        ind = derive(t, u, step_limit=10**6)
    except StepLimitExceeded:
        return
    memo = check_memo(t, u)
    assert memo.subtype == ind.subtype
    assert memo.nodes_expanded <= ind.nodes_expanded


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_memo_soundness_vs_unmemoized(seed):
    rng = random.Random(seed)
    t = random_type(rng, 15)
    u = random_type(rng, 15)
    memo = check_memo(t, u)
    plain = MemoState(memo_enabled=False, step_limit=10**6)
    try:
        plain = subtype_memo(plain, EMPTY_CONTEXT, t, u)
    except StepLimitExceeded:
        return
    assert memo.subtype == (not plain.failed)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_visited_confinement_and_bound(seed):
    rng = random.Random(seed)
    t = random_type(rng, 18)
    u = random_type(rng, 18)
    r = check_memo(t, u)
    pool = sub_pair(t, u)
    n = len(pool)
    assert r.nodes_expanded <= (2 ** (n * n)) * n * n
    delta = subtype_memo(MemoState(), EMPTY_CONTEXT, t, u)
    for j in delta.visited:
        assert j.goal.lhs in pool and j.goal.rhs in pool
        for c in j.sigma:
            assert c.lhs in pool and c.rhs in pool
