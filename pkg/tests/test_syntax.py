import pytest
from hypothesis import given, settings, strategies as st

from kleene_truth.syntax import (PA_MONUS, And, Eq, Exists, Forall, Func, Not, Num,
                                 Or, ParseError, Plus, Succ, Times, Tr, Var, ZERO,
                                 is_positive, match_instance, neq, parse, parse_term,
                                 substitute, substitute_predicate, succ, to_text, val)
from oracles import naive_qf, naive_val


def test_parse_print_round_trip_golden():
    src = "(forall x (or (= (+ x (S 0)) (* 2 x)) (not (T (num 5)))))"
    f = parse(src)
    assert f == Forall("x", Or(Eq(Plus(Var("x"), Num(1)), Times(Num(2), Var("x"))),
                               Not(Tr(Num(5)))))
    assert to_text(f) == "(forall x (or (= (+ x (num 1)) (* (num 2) x)) (not (T (num 5)))))"
    assert parse(to_text(f)) == f


def test_successor_of_numeral_is_normalised():
    assert succ(Num(3)) == Num(4)
    assert parse_term("(S (S 0))") == Num(2)
    assert isinstance(succ(Var("x")), Succ)


@pytest.mark.parametrize("text, pos", [
    ("(= 0", 4),
    ("(foo 0 0)", 1),
    ("(forall 3 (= 0 0))", 8),
    ("(= 0 0) extra", 8),
    ("(T (monus 1 2))", 4),
])
def test_parse_errors_carry_offsets(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos == pos


def test_monus_needs_its_profile():
    t = parse_term("(monus 3 5)", PA_MONUS)
    assert val(t, PA_MONUS) == 0
    assert val(parse_term("(monus 5 3)", PA_MONUS), PA_MONUS) == 2


def test_code_literal_uses_the_codec(codec):
    f = parse("(T (code (= 0 0)))", codec=codec)
    assert f == Tr(Num(codec.encode(Eq(ZERO, ZERO))))
    with pytest.raises(ParseError):
        parse("(T (code (= 0 0)))")


def test_substitute_only_touches_free_occurrences():
    f = parse("(and (= x 0) (exists x (= x 1)))")
    assert to_text(substitute(f, "x", Num(7))) == "(and (= (num 7) 0) (exists x (= x (num 1))))"
    with pytest.raises(ValueError):
        substitute(f, "x", Var("y"))


def test_substitute_predicate_renames_to_avoid_capture():
    # replace T(t) by "exists x (t = x + x)"; the outer binder x must not capture
    f = parse("(forall x (T x))")
    g = substitute_predicate(f, parse("(exists x (= h (+ x x)))"), hole="h")
    assert g.is_sentence
    assert isinstance(g, Forall) and g.var != "x"
    inner = g.body
    assert isinstance(inner, Exists)
    assert inner.body.left == Var(g.var)


def test_positivity():
    assert is_positive(parse("(or (T 0) (not (not (T 1))))"))
    assert not is_positive(parse("(and (T 0) (not (T 1)))"))


def test_match_instance_recovers_the_term():
    pattern = parse("(exists y (and (= y x) (T x)))")
    target = substitute(pattern, "x", Num(42))
    assert match_instance(pattern, "x", target) == Num(42)
    assert match_instance(pattern, "x", parse("(exists y (and (= y 1) (T 2)))")) is None


def test_neq_and_sentence_flags():
    f = neq(Num(1), Num(2))
    assert f == Not(Eq(Num(1), Num(2)))
    assert f.is_sentence and not f.has_truth
    assert parse("(T x)").free_vars == {"x"}


terms = st.recursive(
    st.integers(0, 30).map(Num) | st.sampled_from([Var("a"), Var("b")]),
    lambda inner: st.one_of(
        inner.map(succ),
        st.tuples(inner, inner).map(lambda p: Plus(*p)),
        st.tuples(inner, inner).map(lambda p: Times(*p)),
        st.tuples(inner, inner).map(lambda p: Func("monus", p)),
    ),
    max_leaves=12,
)


@settings(max_examples=1000, deadline=None)
@given(terms, st.integers(0, 20), st.integers(0, 20))
def test_val_matches_plain_recursion(t, a, b):
    env = {"a": a, "b": b}
    assert val(t, PA_MONUS, env) == naive_val(t, env, {"monus": lambda x, y: max(x - y, 0)})


@settings(max_examples=300, deadline=None)
@given(terms)
def test_term_print_parse_round_trip(t):
    assert parse_term(to_text(t), PA_MONUS) == t


closed_terms = st.recursive(
    st.integers(0, 50).map(Num),
    lambda inner: st.one_of(inner.map(succ), st.tuples(inner, inner).map(lambda p: Plus(*p))),
    max_leaves=4,
)
qf = st.recursive(
    st.tuples(closed_terms, closed_terms).map(lambda p: Eq(*p)),
    lambda inner: st.one_of(inner.map(Not), st.tuples(inner, inner).map(lambda p: And(*p)),
                            st.tuples(inner, inner).map(lambda p: Or(*p))),
    max_leaves=8,
)


@settings(max_examples=300, deadline=None)
@given(qf)
def test_formula_print_parse_round_trip(f):
    assert parse(to_text(f)) == f
    assert naive_qf(parse(to_text(f))) == naive_qf(f)
