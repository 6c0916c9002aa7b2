import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sessub.inductive import Claim, EMPTY_CONTEXT, Judgement
from sessub.randgen import random_type
from sessub.syntax import Branch, End, Input, Output, Rec, Select, Var, alpha_equal
from sessub.textio import ParseError, encode_judgement, parse, print_type, tokenize


class TestParse:
    def test_end(self):
        assert parse("end") == End()

    def test_rec_input(self):
        assert parse("rec X. ?[end].X") == Rec("X", Input((End(),), Var("X")))

    def test_select(self):
        assert parse("+{a: end, b: ![end].end}") == Select(
            (("a", End()), ("b", Output((End(),), End())))
        )

    def test_branch(self):
        assert parse("&{a: end}") == Branch((("a", End()),))

    def test_parens(self):
        assert parse("((end))") == End()

    def test_comments_and_whitespace(self):
        assert parse("rec X.  # loop\n ?[ end ] . X") == Rec("X", Input((End(),), Var("X")))

    def test_dot_right_associative(self):
        # the continuation extends maximally
        assert parse("?[end].?[end].end") == Input((End(),), Input((End(),), End()))

    def test_multi_payload(self):
        assert parse("![end, X].end") == Output((End(), Var("X")), End())

    def test_accepts_invalid_semantics(self):
        # duplicate labels and non-contractive bodies parse; validate rejects
        parse("+{a: end, a: end}")
        parse("rec X. X")

    def test_error_has_span_and_expected(self):
        with pytest.raises(ParseError) as ei:
            parse("?[end]")
        assert ei.value.span.line == 1
        assert "." in ei.value.expected

    def test_error_bad_char(self):
        with pytest.raises(ParseError):
            parse("rec X. $")

    def test_error_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse("end end")


class TestPrint:
    def test_end(self):
        assert print_type(End()) == "end"

    def test_rec_input(self):
        assert print_type(Rec("X", Input((End(),), Var("X")))) == "rec X. ?[end].X"

    def test_alt_order_preserved(self):
        t = parse("+{b: end, a: end}")
        assert print_type(t) == "+{b: end, a: end}"


class TestEncodeJudgement:
    def test_empty_sigma(self):
        j = Judgement(EMPTY_CONTEXT, Claim.make(End(), End()))
        assert encode_judgement(j) == {"sigma": [], "goal": {"lhs": "end", "rhs": "end"}}

    def test_single_entry(self):
        c = Claim.make(parse("rec X. ?[end].X"), End())
        j = Judgement(frozenset({c}), c)
        enc = encode_judgement(j)
        assert len(enc["sigma"]) == 1
        assert enc["sigma"][0]["rhs"] == "end"

    def test_sigma_sorted(self):
        c1 = Claim.make(End(), End())
        c2 = Claim.make(parse("![end].end"), End())
        j = Judgement(frozenset({c1, c2}), c1)
        enc = encode_judgement(j)
        assert enc["sigma"] == sorted(enc["sigma"], key=lambda e: (e["lhs"], e["rhs"]))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip(seed):
    rng = random.Random(seed)
    t = random_type(rng, 40)
    assert alpha_equal(parse(print_type(t)), t)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_print_never_unparseable(seed):
    rng = random.Random(seed)
    t = random_type(rng, 40, free=("F",))
    parse(print_type(t))


def test_tokenize_positions():
    toks = tokenize("rec X.\n  end")
    assert toks[0].span.line == 1 and toks[0].span.column == 1
    assert toks[-2].kind == "end" and toks[-2].span.line == 2 and toks[-2].span.column == 3
