import random

import pytest

from qsl2.algebra import AlgebraParams, AlgElement, generator, uq_params
from qsl2.modules import (ModuleRep, SteinbergError, character,
                          divided_power_matrix, element_matrix,
                          extend_by_trivial_top, monomial_matrix,
                          primitive_vectors, pullback_via_pi,
                          rep_relation_check, simple, steinberg_intertwiner,
                          tensor_rep, trivial_rep, uq_simple, verma)
from qsl2.qcomb import q_binom, q_int, to_digits


def all_zero(report):
    return all(e["zero"] for e in report)


def test_verma_actions_examples():
    p = AlgebraParams(3, 1)
    rep = verma(p, 5)  # digits z = (2, 1)
    field = p.field
    # F[0] v_0 = [1] v_1 = v_1
    assert rep.mat("F", 0).get(1, 0) == field.one()
    # E[0] v_1 = [z_0 + 1 - 1] v_0 = [2] v_0
    assert rep.mat("E", 0).get(0, 1) == q_int(field, 2)
    # E[i] v_0 = 0 for all i
    for i in range(2):
        assert all(c != 0 for (r, c) in rep.mat("E", i).entries)


def test_verma_satisfies_relations():
    for (ell, level) in ((3, 1), (5, 1)):
        p = AlgebraParams(ell, level)
        rng = random.Random(ell)
        for z in [0, p.bound - 1] + [rng.randrange(p.bound) for _ in range(3)]:
            assert all_zero(rep_relation_check(verma(p, z)))


def test_verma_matches_uq_action_formulas():
    # level-0 universal module against the displayed divided-power actions
    for ell in (3, 5):
        p = uq_params(ell)
        field = p.field
        for z in range(ell):
            rep = verma(p, z)
            for m in range(ell):
                fmat = divided_power_matrix(rep, "F", m)
                emat = divided_power_matrix(rep, "E", m)
                for n in range(ell):
                    for r in range(ell):
                        expect_f = q_binom(field, m + n, m) \
                            if r == m + n else field.zero()
                        assert fmat.get(r, n) == expect_f
                        expect_e = q_binom(field, z + m - n, m) \
                            if r == n - m and n - m >= 0 else field.zero()
                        assert emat.get(r, n) == expect_e


def test_uq_simple_dimensions():
    for ell in (3, 5):
        for z in range(ell):
            assert uq_simple(ell, z).dim == z + 1
    assert uq_simple(3, 0).dim == 1
    assert uq_simple(3, 2).dim == 3


def test_simple_examples():
    p = AlgebraParams(3, 1)
    triv = simple(p, 0)
    assert triv.dim == 1
    assert triv.mat("E", 0).is_zero_matrix()
    assert triv.mat("K", 1).get(0, 0) == p.field.one()
    assert simple(p, 5).dim == 6
    assert simple(p, 8).dim == 9


def test_simple_dimension_product_formula():
    for (ell, level) in ((3, 1), (5, 1)):
        p = AlgebraParams(ell, level)
        for weight in range(p.bound):
            digs = to_digits(weight, ell, level + 1)
            expected = 1
            for d in digs:
                expected *= d + 1
            assert simple(p, weight).dim == expected


def test_character_of_verma_is_multiplicity_free():
    # justifies the coordinate-submodule argument: all weight spaces are lines
    p = AlgebraParams(3, 1)
    for z in (0, 4, 8):
        table = character(verma(p, z))
        assert len(table) == 9
        assert set(table.values()) == {1}


def test_character_totals():
    p = AlgebraParams(3, 1)
    assert character(trivial_rep(p)) == {(0, 0): 1}
    for weight in (3, 5, 7):
        rep = simple(p, weight)
        assert sum(character(rep).values()) == rep.dim


def test_primitive_vectors():
    p = AlgebraParams(3, 1)
    rep = verma(p, 5)
    prims = primitive_vectors(rep)
    weights = [w for _, w in prims]
    assert (2, 1) in weights  # v_0 of weight digits (2, 1)
    assert any(vec == {0: p.field.one()} for vec, _ in prims)
    for weight in range(9):
        assert len(primitive_vectors(simple(p, weight))) == 1
    # all digits maximal: only v_0 is primitive in the universal module
    assert len(primitive_vectors(verma(p, 8))) == 1


def test_restriction_of_small_weight_simples():
    # weight < ell^N: the top generators act trivially
    p = AlgebraParams(3, 1)
    for weight in range(3):
        rep = simple(p, weight)
        assert rep.mat("E", 1).is_zero_matrix()
        assert rep.mat("F", 1).is_zero_matrix()
        from qsl2.linalg import Mat
        assert rep.mat("K", 1) == Mat.identity(rep.dim, p.field)


def test_simples_pairwise_distinct_highest_weights():
    p = AlgebraParams(3, 1)
    tops = set()
    for weight in range(9):
        rep = simple(p, weight)
        (vec, w), = primitive_vectors(rep)
        tops.add(w)
    assert len(tops) == 9


def test_pullback():
    p = AlgebraParams(3, 1)
    u = uq_simple(3, 2)
    rep = pullback_via_pi(u, p)
    assert all_zero(rep_relation_check(rep))
    assert rep.mat("E", 0).is_zero_matrix()
    # pullback of L(p_N) has the same character as simple(p_N * ell^N)
    target = simple(p, 2 * 3)
    assert rep.dim == target.dim
    assert character(rep) == character(target)
    triv = pullback_via_pi(uq_simple(3, 0), p)
    assert character(triv) == character(trivial_rep(p))


def test_tensor_action_formulas():
    p = AlgebraParams(3, 1)
    u = uq_simple(3, 1)
    w = verma(p, 4)
    t = tensor_rep(u, w)
    assert all_zero(rep_relation_check(t))
    field = p.field
    # E[1](v (x) w) = Ev (x) w + Kv (x) E[1]w on a chosen coordinate
    ue, uk = u.mat("E", 0), u.mat("K", 0)
    we1 = w.mat("E", 1)
    vec = {1 * w.dim + 4: field.one()}  # v_1 (x) w_4
    image = t.mat("E", 1).matvec(vec)
    expected = {}
    for (r, c), val in ue.entries.items():
        if c == 1:
            expected[r * w.dim + 4] = expected.get(r * w.dim + 4, field.zero()) + val
    kv = uk.get(1, 1)
    for (r, c), val in we1.entries.items():
        if c == 4:
            key = 1 * w.dim + r
            expected[key] = expected.get(key, field.zero()) + kv * val
    expected = {k: v for k, v in expected.items() if not v.is_zero()}
    assert image == expected
    # low generators act on the right factor alone
    vec = {0 * w.dim + 1: field.one()}
    image = t.mat("E", 0).matvec(vec)
    expected = {0 * w.dim + r: val for (r, c), val in w.mat("E", 0).entries.items()
                if c == 1}
    assert image == expected


def test_tensor_with_trivial_left_factor():
    p = AlgebraParams(3, 1)
    w = simple(p, 4)
    t = tensor_rep(uq_simple(3, 0), w)
    assert t.dim == w.dim
    for gid in w.generator_ids():
        assert t.mat(*gid).entries == w.mat(*gid).entries


@pytest.mark.parametrize("ell,level", [(3, 1), (5, 1)])
def test_steinberg_all_weights(ell, level):
    p = AlgebraParams(ell, level)
    for weight in range(p.bound):
        result = steinberg_intertwiner(p, weight)
        assert result.dim == simple(p, weight).dim


def test_steinberg_level_two():
    p = AlgebraParams(3, 2)
    for weight in (0, 5, 13, 26):
        result = steinberg_intertwiner(p, weight)
        assert result.dim == simple(p, weight).dim


def test_steinberg_needs_positive_level():
    with pytest.raises(ValueError):
        steinberg_intertwiner(uq_params(3), 1)


def test_extension_satisfies_relations():
    p0 = uq_params(3)
    rep = extend_by_trivial_top(simple(p0, 2))
    assert rep.params.level == 1
    assert all_zero(rep_relation_check(rep))


def test_element_matrix_is_multiplicative():
    p = AlgebraParams(3, 1)
    rep = verma(p, 6)
    rng = random.Random(2)
    for _ in range(60):
        a = (rng.randrange(9), rng.randrange(9), rng.randrange(9))
        b = (rng.randrange(9), rng.randrange(9), rng.randrange(9))
        ea = AlgElement(p, {a: p.field.one()})
        eb = AlgElement(p, {b: p.field.one()})
        assert element_matrix(rep, ea * eb) == \
            monomial_matrix(rep, a) @ monomial_matrix(rep, b)
