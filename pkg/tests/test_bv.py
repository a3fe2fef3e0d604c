"""Gerstenhaber/BV layer: generated brackets, predicates, pipelines."""

from fractions import Fraction

import pytest

from hptmaster import instances
from hptmaster.bv import (BVData, GerstenhaberAlgebra,
                          addendum_382_flat_identity, bracket_from_generator,
                          kahler_formality_check, koszul_identity_check,
                          proposition_37_check, regrade_to_lie,
                          theorem_38_pipeline, validate_bv)
from hptmaster.dgla import validate_dgla
from hptmaster.graded import GradedMap, GradedVectorSpace

F = Fraction


def exterior_two():
    # Lambda(x, y) with Delta(xy) = x
    space = GradedVectorSpace([("1", 0), ("x", 1), ("y", 1), ("xy", 2)])
    prod = {(1, 2): {3: F(1)}}
    delta = GradedMap(space, space, -1, {(1, 3): F(1)})
    return space, prod, delta


def test_bracket_from_generator_hand():
    space, prod, delta = exterior_two()
    alg = GerstenhaberAlgebra(space, prod)
    table = bracket_from_generator(alg, delta)
    # [x, y] = (-1)^1 (Delta(xy) - 0 - 0) = -x, and
    # [y, xy] = -(Delta(y xy) - 0 + y Delta(xy)) = -(0 + yx) = xy
    assert table == {(1, 2): {1: F(-1)}, (2, 3): {3: F(1)}}


def test_koszul_identity_and_weak_differential():
    space, prod, delta = exterior_two()
    alg0 = GerstenhaberAlgebra(space, prod)
    table = bracket_from_generator(alg0, delta)
    bv = BVData(GerstenhaberAlgebra(space, prod, table), delta)
    assert bv.generates_bracket()
    assert bv.delta_exact()
    assert koszul_identity_check(bv)["passed"]
    assert proposition_37_check(bv)["passed"]


def test_proposition_37_requires_commuting_generator():
    space, prod, delta = exterior_two()
    d = GradedMap(space, space, 1, {(3, 1): F(1)})  # d(x) = xy
    alg0 = GerstenhaberAlgebra(space, prod, d=d)
    table = bracket_from_generator(alg0, delta)
    bv = BVData(GerstenhaberAlgebra(space, prod, table, d=d), delta)
    assert not bv.weak_differential()
    with pytest.raises(ValueError):
        proposition_37_check(bv)


def test_regrade_to_lie():
    space, prod, delta = exterior_two()
    alg0 = GerstenhaberAlgebra(space, prod)
    table = bracket_from_generator(alg0, delta)
    g = regrade_to_lie(GerstenhaberAlgebra(space, prod, table))
    assert g.space.degrees == [1, 0, 0, -1]
    assert validate_dgla(g)["passed"]


def test_validate_bv_flags_broken_associativity():
    space = GradedVectorSpace([("1", 0), ("a", 0), ("b", 0)])
    prod = {(1, 1): {2: F(1)}, (1, 2): {0: F(1)}, (2, 2): {}}
    alg = GerstenhaberAlgebra(space, prod)
    bv = BVData(alg, GradedMap.zero(space, space, -1))
    report = validate_bv(bv)
    assert not report["associative"]
    assert report["associativity_witness"] == ("a", "a", "b")
    assert not report["passed"]


def test_validate_bv_flags_non_commuting_generator():
    bv = instances.kahler_bv_instance()
    sp = bv.algebra.space
    ix = sp.index
    bad_delta = GradedMap(sp, sp, -1, {(ix["c"], ix["p"]): F(1),
                                       (ix["e"], ix["t"]): F(1)})
    broken = BVData(GerstenhaberAlgebra(sp, bv.algebra.product_table,
                                        bv.algebra.bracket_table,
                                        d=bv.algebra.d), bad_delta)
    report = validate_bv(broken)
    assert not report["d_delta_commute"]


def test_kahler_instance_passes_everything():
    bv = instances.kahler_bv_instance()
    assert validate_bv(bv)["passed"]
    assert koszul_identity_check(bv)["passed"]
    assert proposition_37_check(bv)["passed"]
    predicate = kahler_formality_check(bv)
    assert predicate["passed"], predicate


def test_kahler_predicate_fails_without_exactness_interplay():
    # d(x) = y escapes im Delta = 0, so the projection is not a chain map
    space = GradedVectorSpace([("1", 0), ("x", 1), ("y", 2)])
    d = GradedMap(space, space, 1, {(2, 1): F(1)})
    bv = BVData(GerstenhaberAlgebra(space, {}, d=d),
                GradedMap.zero(space, space, -1))
    report = kahler_formality_check(bv)
    assert not report["projection_chain_map"]
    assert not report["passed"]


def test_theorem_38_pipeline_full():
    bv = instances.kahler_bv_instance()
    result, report = theorem_38_pipeline(bv, 3)
    assert report["passed"], report
    assert report["delta_tau_zero"]
    assert report["pi_tau_universal"]
    assert report["tau_k_in_im_delta"]
    assert report["D_zero"]
    # the quadratic component is genuinely nonzero
    lengths = {result.coalg.word_length(s)
               for (_, s) in result.tau.hom.entries}
    assert 2 in lengths


def test_theorem_38_tau2_is_hodge_partner():
    # tau_2 on the word (s[alpha], s[beta]) must be a multiple of c = Delta p
    bv = instances.kahler_bv_instance()
    result, report = theorem_38_pipeline(bv, 3)
    m_dim = result.g.space.dim
    two = [(t, s) for (t, s) in result.tau.hom.entries
           if result.coalg.word_length(s) == 2]
    assert len(two) == 1
    assert report["tau_k_in_im_delta"]


def test_addendum_382_flat_unit():
    bv = instances.kahler_bv_instance()
    result, report = addendum_382_flat_identity(bv, 3)
    assert report["passed"], report
    assert report["tau_k_avoids_unit"]


def test_addendum_382_rejects_fat_degree_zero():
    space = GradedVectorSpace([("1", 0), ("z", 0)])
    bv = BVData(GerstenhaberAlgebra(space, {}),
                GradedMap.zero(space, space, -1))
    with pytest.raises(ValueError):
        addendum_382_flat_identity(bv, 3)
