import cmath

import pytest

from maxsurf.expr import (
    Add,
    Call,
    Const,
    Div,
    EvalError,
    Mul,
    ParseError,
    Pow,
    Sconj,
    Var,
    compile_fn,
    differentiate,
    evaluate,
    format_expr,
    parse,
    sconj,
    substitute,
)

CORPUS = [
    "z",
    "1",
    "i",
    "1/z^2",
    "(1+i)*exp(z)",
    "z^3-2*z+1",
    "exp(z)*sin(z)",
    "sconj(exp(z))/(1+z^2)",
    "cos(z)*sinh(z)-tanh(z)",
    "sqrt(1+z^2)",
    "log(2+z)",
    "-z^2+0.5*z",
    "exp(-i*z)*(1-2*i)",
    "sconj(cos(i*z))",
    "(z-0.25)/(z+3)",
    "cosh(z/2)^3",
]

SAMPLE_POINTS = [0.3 + 0.4j, -0.2 + 0.7j, 0.9 - 0.1j, -0.5 - 0.5j, 0.01 + 0.99j]


def test_parse_division_power_shape():
    e = parse("1/z^2")
    assert e == Div(Const(1), Pow(Var(), 2))


def test_parse_product_shape():
    e = parse("(1+i)*exp(z)")
    assert e == Mul(Add(Const(1), Const(1j)), Call("exp", Var()))


def test_parse_error_position_unbalanced():
    with pytest.raises(ParseError) as exc:
        parse("(z")
    assert exc.value.offset == 2


@pytest.mark.parametrize(
    "text,offset",
    [("", 0), ("1+", 2), ("z^z", 2), ("2i", 1), ("foo(z)", 0), ("z @ 1", 2)],
)
def test_parse_error_offsets_within_input(text, offset):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.offset == offset
    assert 0 <= exc.value.offset <= len(text)


def test_parse_rejects_absolute_value_syntax():
    with pytest.raises(ParseError):
        parse("|z|")


def test_eval_square():
    assert evaluate(parse("z^2"), 1 + 1j) == 2j


def test_eval_schwarz_conjugate_of_square():
    assert evaluate(sconj(parse("z^2")), 1 + 1j) == 2j


def test_eval_inverse_square():
    assert evaluate(parse("1/z^2"), 2) == 0.25


def test_eval_precedence():
    assert evaluate(parse("-z^2"), 2) == -4
    assert evaluate(parse("1-2-3"), 0) == -4
    assert evaluate(parse("2*z^3"), 2) == 16
    assert evaluate(parse("z^-1"), 4) == 0.25


def test_eval_faults_carry_the_offending_node():
    with pytest.raises(EvalError) as exc:
        evaluate(parse("1/z"), 0)
    assert "1/z" in str(exc.value)
    with pytest.raises(EvalError):
        evaluate(parse("log(z)"), 0)
    with pytest.raises(EvalError):
        evaluate(parse("z^-2"), 0)
    with pytest.raises(EvalError):
        evaluate(parse("exp(z)"), 1e6)


def test_derivative_power_rule():
    d = differentiate(parse("z^2"))
    for z in SAMPLE_POINTS:
        assert d and evaluate(d, z) == 2 * z


def test_derivative_exponential():
    d = differentiate(parse("exp(z)"))
    for z in SAMPLE_POINTS:
        assert evaluate(d, z) == cmath.exp(z)


def test_derivative_matches_finite_difference_oracle():
    # central difference at z = 2 for 1/z: expected -1/4
    e = parse("1/z")
    h = 1e-6
    fd = (evaluate(e, 2 + h) - evaluate(e, 2 - h)) / (2 * h)
    d = evaluate(differentiate(e), 2)
    assert abs(d - fd) <= 1e-8
    assert abs(d - (-0.25)) <= 1e-12


@pytest.mark.parametrize("text", CORPUS)
def test_derivative_finite_difference_corpus(text):
    e = parse(text)
    d = differentiate(e)
    h = 1e-6
    for z in SAMPLE_POINTS:
        try:
            exact = evaluate(d, z)
            fd = (evaluate(e, z + h) - evaluate(e, z - h)) / (2 * h)
        except EvalError:
            continue
        assert abs(exact - fd) <= 1e-6 * (1 + abs(exact))


@pytest.mark.parametrize("text", CORPUS)
def test_format_round_trip_is_structural(text):
    e = parse(text)
    assert parse(format_expr(e)) == e


@pytest.mark.parametrize("text", CORPUS)
def test_format_round_trip_evaluates_equal(text):
    e = parse(text)
    r = parse(format_expr(e))
    for z in SAMPLE_POINTS:
        try:
            a = evaluate(e, z)
        except EvalError:
            continue
        assert abs(evaluate(r, z) - a) < 1e-13 * (1 + abs(a))


def test_format_derivative_round_trips_pointwise():
    # derivative trees may print constants like 2*i whose re-parse is a
    # product node; the round-trip contract is pointwise evaluation
    for text in CORPUS:
        d = differentiate(parse(text))
        r = parse(format_expr(d))
        for z in SAMPLE_POINTS:
            try:
                a = evaluate(d, z)
            except EvalError:
                continue
            assert abs(evaluate(r, z) - a) <= 1e-14 * (1 + abs(a))


def test_format_sconj_keyword():
    e = Sconj(Call("exp", Var()))
    assert format_expr(e) == "sconj(exp(z))"


def test_format_real_constant_is_plain():
    assert format_expr(Const(1 + 0j)) == "1"
    assert format_expr(Const(2.5)) == "2.5"
    assert format_expr(Const(1j)) == "i"
    assert format_expr(Const(1 + 1j)) == "(1+i)"
    assert format_expr(Const(-2j)) == "-2*i"


@pytest.mark.parametrize("text", CORPUS)
def test_schwarz_conjugate_identity_exact(text):
    e = parse(text)
    s = sconj(e)
    for z in SAMPLE_POINTS:
        try:
            expected = evaluate(e, z.conjugate()).conjugate()
        except EvalError:
            continue
        assert evaluate(s, z) == expected


@pytest.mark.parametrize("text", CORPUS)
def test_sconj_is_involutive(text):
    e = parse(text)
    assert sconj(sconj(e)) == e


def test_sconj_distributes_over_arithmetic():
    e = parse("(1+2*i)*z + exp(z)/z")
    s = sconj(e)

    # the wrapper survives only on function applications
    def wrapped_nodes(node):
        if isinstance(node, Sconj):
            yield node.arg
        for name in ("arg", "left", "right", "base"):
            child = getattr(node, name, None)
            if child is not None and not isinstance(child, (int, str)):
                yield from wrapped_nodes(child)

    assert all(isinstance(w, Call) for w in wrapped_nodes(s))
    for z in SAMPLE_POINTS:
        assert evaluate(s, z) == evaluate(e, z.conjugate()).conjugate()


def test_sconj_derivative_rule():
    for text in CORPUS:
        e = parse(text)
        d_of_s = differentiate(sconj(e))
        s_of_d = sconj(differentiate(e))
        for z in SAMPLE_POINTS:
            try:
                a = evaluate(d_of_s, z)
                b = evaluate(s_of_d, z)
            except EvalError:
                continue
            assert abs(a - b) <= 1e-14 * (1 + abs(a))


def test_substitute_composition():
    e = parse("z^2+1")
    w = parse("1/z")
    composed = substitute(e, w)
    for z in SAMPLE_POINTS:
        assert abs(evaluate(composed, z) - (1 / z**2 + 1)) < 1e-14


def test_substitute_through_sconj():
    e = parse("sconj(exp(z))")
    w = parse("i*z")
    composed = substitute(e, w)
    for z in SAMPLE_POINTS:
        manual = cmath.exp((1j * z).conjugate()).conjugate()
        assert abs(evaluate(composed, z) - manual) < 1e-14


@pytest.mark.parametrize("text", CORPUS)
def test_compiled_matches_interpreter(text):
    e = parse(text)
    fn = compile_fn(e)
    for z in SAMPLE_POINTS:
        try:
            a = evaluate(e, z)
        except EvalError:
            continue
        assert fn(z) == a


def test_exprs_are_immutable_and_hashable():
    e = parse("z^2+i")
    with pytest.raises(Exception):
        e.left = Const(0)
    assert hash(e) == hash(parse("z^2+i"))
