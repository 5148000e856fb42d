import random
from fractions import Fraction

import pytest

from qsl2.algebra import AlgebraParams, AlgElement, generator, uq_params
from qsl2.exprs import (ExprSyntaxError, ast_to_string, element_to_json,
                        evaluate, format_cyc, format_element, parse_expr)

CORPUS = [
    "E[0]*F[0] - F[0]*E[0]",
    "1",
    "0",
    "q",
    "q^2",
    "q^-1",
    "3/2",
    "-2",
    "E(4)",
    "F(2)*E(1)",
    "K[0]",
    "Kinv[1]",
    "K[1]^2",
    "K[0]^-2",
    "(E[0] + F[0])^2",
    "E[0]^2*F[0]",
    "q*E[0] - q^-1*F[0]",
    "2/3*q^2*F(1)",
    "(1 + q)*K[0]",
    "E[1]*F[1] - F[1]*E[1]",
    "E[0]*E[1] - E[1]*E[0]",
    "K[0]*E[0] - q^2*E[0]*K[0]",
    "(E(2) + F(2))*K[1]",
    "1/2 + 1/3",
    "-q^2 + q - 1",
    "E[0]*(F[0] + K[0])",
    "((E[0]))",
    "E(1)*E(3)",
    "F(4)*K[0]^2*E(1)",
    "5*E[0]",
    "q^3*K[1]",
    "Kinv[0]*K[0]",
    "E[0] - E[0]",
    "(q - q^-1)*F[0]",
    "2*3",
    "E(8)",
    "F(8)*E(8)",
    "K[0]*K[1]*K[0]",
    "(1/3)*E[0]",
    "q^-2*Kinv[1]",
    "E[0] + E[0] + E[0]",
    "(E[0] + 1)*(F[0] - 1)",
    "-(E[0])",
    "-1 + q",
    "7/5*K[1]^2",
    "E(2)*F(2)*E(2)",
    "(K[0] - Kinv[0])^2",
    "q^9",
    "1 - 1",
    "2/3 + 5/3*q",
    "E[1]^2",
    "F[1]*F[0]*E[0]*E[1]",
]


def test_corpus_is_big_enough():
    assert len(CORPUS) >= 50


def test_parse_pretty_parse_fixed_point():
    params = AlgebraParams(3, 1)
    for text in CORPUS:
        ast = parse_expr(text, params)
        rendered = ast_to_string(ast)
        assert parse_expr(rendered, params) == ast, text


def test_parse_examples():
    params = AlgebraParams(3, 1)
    ast = parse_expr("E[0]*F[0] - F[0]*E[0]", params)
    from qsl2.exprs import Add
    assert isinstance(ast, Add) and len(ast.terms) == 2
    node = parse_expr("E(4)", params)
    from qsl2.exprs import DivPow
    assert node == DivPow("E", 4)


def test_index_out_of_range():
    params = AlgebraParams(3, 1)
    with pytest.raises(ExprSyntaxError, match="index 2 exceeds level 1"):
        parse_expr("E[2]", params)
    with pytest.raises(ExprSyntaxError, match="exceeds bound"):
        parse_expr("E(9)", params)


def test_syntax_error_details():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("E[0] +", None)
    assert err.value.offset == 6
    with pytest.raises(ExprSyntaxError):
        parse_expr("E[0] @ F[0]", None)
    with pytest.raises(ExprSyntaxError, match="negative powers"):
        parse_expr("E[0]^-1", None)
    with pytest.raises(ExprSyntaxError):
        parse_expr("E[0] F[0]", None)  # missing operator


def test_evaluate_bracket():
    params = uq_params(3)
    x = evaluate(parse_expr("E[0]*F[0] - F[0]*E[0]", params), params)
    field = params.field
    inv = (field.lam() - field.lambda_pow(-1)).inverse()
    expected = (generator(params, "K", 0)
                - generator(params, "Kinv", 0)).scaled(inv)
    assert x == expected


def test_evaluate_k_negative_power():
    params = uq_params(3)
    x = evaluate(parse_expr("K[0]^-2", params), params)
    assert x == generator(params, "Kinv", 0) ** 2


def test_format_element_round_trips_by_value():
    params = AlgebraParams(3, 1)
    rng = random.Random(8)
    field = params.field
    for _ in range(40):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            mono = (rng.randrange(9), rng.randrange(9), rng.randrange(9))
            coeff = field.rational(Fraction(rng.randint(-3, 3), rng.randint(1, 2))) \
                * field.lambda_pow(rng.randrange(3))
            if not coeff.is_zero():
                terms[mono] = coeff
        x = AlgElement(params, terms)
        rendered = format_element(x)
        back = evaluate(parse_expr(rendered, params), params)
        assert back == x, rendered


def test_format_element_simple_cases():
    params = uq_params(3)
    assert format_element(AlgElement.zero(params)) == "0"
    assert format_element(AlgElement.unit(params)) == "1"
    assert format_element(generator(params, "E", 0)) == "E(1)"
    x = generator(params, "E", 0).scaled(-1)
    assert format_element(x) == "-E(1)"


def test_format_cyc():
    field = uq_params(3).field
    assert format_cyc(field.zero()) == "0"
    assert format_cyc(field.one() - field.lam() * 2) == "1 - 2*q"


def test_element_to_json():
    params = uq_params(3)
    data = element_to_json(generator(params, "E", 0))
    assert data["ell"] == 3 and data["level"] == 0
    assert data["terms"] == [{"f": 0, "k": 0, "e": 1, "coeff": ["1", "0"]}]
