import math
import random

import pytest

from qsl2.hyperalgebra import (HypParams, additive_group_product,
                               erratum_report, erratum_text, format_hyp,
                               frobenius_pi, ga_gm_models, hx_normal_order,
                               hy_normal_order, hyp_basis, hyp_monomial,
                               hyp_multiply, kernel_dimensions,
                               multiplicative_group_product,
                               printed_xy_closed_form, xy_normal_order)


def test_xy_bracket_is_h():
    for p in (2, 3, 5):
        params = HypParams(p, 1)
        table = dict(xy_normal_order(params, 1, 1))
        assert table.pop((1, 0, 1)) == 1      # Y X term
        assert table == {(0, 1, 0): 1}        # plus H


def test_xy_degenerate_sides():
    params = HypParams(3, 2)
    assert xy_normal_order(params, 4, 0) == {(0, 0, 4): 1}
    assert xy_normal_order(params, 0, 7) == {(7, 0, 0): 1}


def test_hx_examples():
    params = HypParams(5, 1)
    # H X = X H + 2 X, from coefficient extraction
    assert hx_normal_order(params, 1, 1) == {(0, 1, 1): 1, (0, 0, 1): 2}
    assert hx_normal_order(params, 2, 0) == {(0, 2, 0): 1}
    # Y version picks up the negative weight
    assert hy_normal_order(params, 1, 1) == {(1, 1, 0): 1, (1, 0, 0): 5 - 2}


def test_h_commutator_with_powers():
    # [H^(p^m), X^(p^n)] at p = 3, m, n <= 1.  The delta_mn 2 X^(p^n) claim
    # holds for m <= n; for m > n the oracle produces extra terms (recorded
    # in the erratum report), e.g. [H^(3), X] = X H + 2 X H^(2).
    params = HypParams(3, 2)

    def bracket(m, n):
        hm, xn = 3 ** m, 3 ** n
        lhs = hyp_multiply(params, hyp_monomial(params, 0, hm, 0),
                           hyp_monomial(params, 0, 0, xn))
        rhs = hyp_multiply(params, hyp_monomial(params, 0, 0, xn),
                           hyp_monomial(params, 0, hm, 0))
        comm = dict(lhs)
        for k, v in rhs.items():
            val = (comm.get(k, 0) - v) % 3
            if val:
                comm[k] = val
            else:
                comm.pop(k, None)
        return comm

    assert bracket(0, 0) == {(0, 0, 1): 2}
    assert bracket(1, 1) == {(0, 0, 3): 2}
    assert bracket(0, 1) == {}
    assert bracket(1, 0) == {(0, 0, 1): 1, (0, 2, 1): 2}


def test_merge_examples():
    params = HypParams(5, 1)
    h1 = hyp_monomial(params, 0, 1, 0)
    assert hyp_multiply(params, h1, h1) == {(0, 1, 0): 1, (0, 2, 0): 2}
    x1 = hyp_monomial(params, 0, 0, 1)
    assert hyp_multiply(params, x1, x1) == {(0, 0, 2): 2}


def test_divided_power_nilpotency():
    for p in (2, 3, 5):
        params = HypParams(p, 1)
        x = hyp_monomial(params, 0, 0, 1)
        acc = dict(x)
        for _ in range(p - 1):
            acc = hyp_multiply(params, acc, x)
        assert acc == {}  # X^(1)^p = p! X^(p) = 0


def test_hyp_associativity_sampled():
    params = HypParams(3, 2)
    rng = random.Random(0)
    for _ in range(400):
        a, b, c = ({(rng.randrange(9), rng.randrange(9), rng.randrange(9)): 1}
                   for _ in range(3))
        lhs = hyp_multiply(params, hyp_multiply(params, a, b), c)
        rhs = hyp_multiply(params, a, hyp_multiply(params, b, c))
        assert lhs == rhs


def test_frobenius_pi_examples():
    params = HypParams(3, 2)
    assert frobenius_pi(params, hyp_monomial(params, 0, 0, 3), 1) == {(0, 0, 1): 1}
    assert frobenius_pi(params, hyp_monomial(params, 0, 0, 1), 1) == {}
    with pytest.raises(ValueError):
        frobenius_pi(HypParams(3, 1), {(0, 0, 1): 1}, 1)


def test_frobenius_pi_multiplicative_exhaustive_p2():
    params = HypParams(2, 2)
    low = HypParams(2, 1)
    monos = list(hyp_basis(params))
    for a in monos:
        for b in monos:
            x, y = hyp_monomial(params, *a), hyp_monomial(params, *b)
            lhs = frobenius_pi(params, hyp_multiply(params, x, y), 1)
            rhs = hyp_multiply(low, frobenius_pi(params, x, 1),
                               frobenius_pi(params, y, 1))
            assert lhs == rhs


def test_kernel_dimensions_p2():
    report = kernel_dimensions(HypParams(2, 2), 1)
    assert report["kernel_dim"] == 64 - 8 == report["kernel_dim_expected"]
    assert report["ideal_spans_kernel"]
    assert report["products_contained_in_kernel"]


def test_warmup_algebras():
    models = ga_gm_models(5, cap=4)
    assert models["additive_closed_form_matches"]
    # gamma_1 gamma_1 = 2 gamma_2
    assert models["additive"][(1, 1)] == {2: 2}
    # gamma_m gamma_0 = gamma_m
    assert models["additive"][(3, 0)] == {3: 1}
    # pi_1 pi_1 = pi_1 + 2 pi_2 by the duality oracle
    assert models["multiplicative"][(1, 1)] == {1: 1, 2: 2}


def test_gm_oracle_matches_digit_corrected_formula():
    for p in (3, 5):
        for a in range(5):
            for b in range(5):
                oracle = multiplicative_group_product(p, a, b, 10)
                expected = {}
                for i in range(min(a, b) + 1):
                    coeff = (math.factorial(a + b - i)
                             // (math.factorial(a - i) * math.factorial(b - i)
                                 * math.factorial(i))) % p
                    if coeff:
                        idx = a + b - i
                        expected[idx] = (expected.get(idx, 0) + coeff) % p
                expected = {k: v for k, v in expected.items() if v}
                assert oracle == expected


def test_erratum_report_contents():
    report = erratum_report(3, 1)
    assert not report["xy_closed_form"]["agrees"]
    assert not report["xy_bracket_case"]["agrees"]
    assert not report["gm_product"]["as_printed_agrees"]
    assert report["gm_product"]["digit_corrected_agrees"]
    text = erratum_text(report)
    assert "disagree" in text
    # the printed closed form differs from the oracle exactly by a constant
    oracle = xy_normal_order(HypParams(3, 1), 1, 1)
    printed = printed_xy_closed_form(3, 1, 1)
    diff = dict(printed)
    for k, v in oracle.items():
        val = (diff.get(k, 0) - v) % 3
        if val:
            diff[k] = val
        else:
            diff.pop(k, None)
    assert diff == {(0, 0, 0): 2}  # the spurious -1 (= 2 mod 3)


def test_nonprime_rejected():
    with pytest.raises(ValueError):
        HypParams(6, 1)
    with pytest.raises(ValueError):
        ga_gm_models(4)


def test_format_hyp():
    assert format_hyp({}) == "0"
    assert format_hyp({(1, 0, 1): 1, (0, 1, 0): 2}) == "2*H(1) + Y(1)*X(1)"
