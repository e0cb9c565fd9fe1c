from fractions import Fraction

import pytest

from jetalg import (
    ConsistencyError,
    LinearMap,
    OOperatorSpec,
    check_o_operator,
    check_scalar_deformation,
    derive_deformation,
    induce_splitting,
    post_poisson_module,
    qcl,
    regular_bimodule,
    regular_bimodule_jet,
    regular_module,
    transfer_qcl_operator,
    tridendriform_bimodule,
    tridendriform_bimodule_jet,
)
from jetalg.structures import StructurePresentation

ONE = Fraction(1)


def comm_base(poly):
    return StructurePresentation(
        poly.space, {"circ": poly.presentation.op("dot")},
        "commutative-associative")


def diagonal_spec(poly):
    return OOperatorSpec(poly.operator, ONE, regular_bimodule(comm_base(poly)))


def test_diagonal_operator_is_weight_one(poly3):
    rep = check_o_operator(diagonal_spec(poly3))
    assert rep.passed
    assert rep.checked == ("OCirc",)


def test_identity_is_weight_one_for_the_splitting_bimodule(poly3):
    m = tridendriform_bimodule(poly3.presentation)
    spec = OOperatorSpec(LinearMap.identity(poly3.space), ONE, m)
    assert check_o_operator(spec).passed


def test_wrong_weight_fails():
    from jetalg import truncated_polynomial_algebra

    p = truncated_polynomial_algebra(3)
    base = StructurePresentation(p.space, p.ops, "commutative-associative")
    spec = OOperatorSpec(LinearMap.identity(p.space), ONE, regular_bimodule(base))
    rep = check_o_operator(spec)
    # id against the regular bimodule counts every product three times
    assert not rep.passed
    assert rep.failures[0].axiom == "OCirc"


def test_operator_dimension_mismatch_rejected(poly3, poly2):
    with pytest.raises(ValueError):
        OOperatorSpec(poly2.operator, ONE, regular_bimodule(comm_base(poly3)))


def test_induced_splitting_reproduces_the_example(poly3):
    assert induce_splitting(diagonal_spec(poly3)) == poly3.presentation


def test_identity_on_zinbiel_gives_the_dendriform_pair(zin2):
    from jetalg import BilinearOp

    succ, prec = zin2.dendriform.op("succ"), zin2.dendriform.op("prec")
    half = tridendriform_bimodule(
        StructurePresentation(zin2.space, {
            "succ": succ,
            "prec": prec,
            "dot": BilinearOp.zero(zin2.space, zin2.space, zin2.space),
        }, "tridendriform"))
    spec = OOperatorSpec(LinearMap.identity(zin2.space), Fraction(0), half)
    assert check_o_operator(spec).passed
    assert induce_splitting(spec) == zin2.dendriform


def test_scalar_deformation_orderwise(poly3):
    base_jet = derive_deformation(comm_base(poly3), poly3.derivations, 3)
    rep = check_scalar_deformation(diagonal_spec(poly3),
                                   regular_bimodule_jet(base_jet))
    assert rep.passed


def test_scalar_deformation_context_must_match(poly3):
    mj = tridendriform_bimodule_jet(poly3.jet)
    with pytest.raises(ValueError):
        check_scalar_deformation(diagonal_spec(poly3), mj)


def test_identity_scalar_deformation(poly3):
    mj = tridendriform_bimodule_jet(poly3.jet)
    spec = OOperatorSpec(LinearMap.identity(poly3.space), ONE, mj.layer0())
    assert check_scalar_deformation(spec, mj).passed


def test_operator_survives_the_poisson_limit(poly3):
    base_jet = derive_deformation(comm_base(poly3), poly3.derivations, 3)
    limit = qcl(base_jet)
    spec = OOperatorSpec(poly3.operator, ONE, regular_bimodule(limit))
    assert check_o_operator(spec).passed
    split = induce_splitting(spec)
    assert split.kind == "post-poisson"


def test_identity_on_the_post_poisson_limit(poly3):
    pp = qcl(poly3.jet)
    spec = OOperatorSpec(LinearMap.identity(poly3.space), ONE,
                         post_poisson_module(pp))
    assert check_o_operator(spec).passed


def test_transfer_requires_the_jet_to_pass(poly3):
    base_jet = derive_deformation(comm_base(poly3), poly3.derivations, 3)
    mj = regular_bimodule_jet(base_jet)
    spec = diagonal_spec(poly3)
    rep = transfer_qcl_operator(spec, mj)
    assert rep.passed

    broken = OOperatorSpec(
        poly3.operator.add(LinearMap.identity(poly3.space)), ONE, spec.context)
    with pytest.raises(ValueError):
        transfer_qcl_operator(broken, mj)


def test_poisson_family_checks_both_identities(poly2):
    base_jet = derive_deformation(comm_base(poly2), poly2.derivations, 3)
    limit = qcl(base_jet)
    spec = OOperatorSpec(poly2.operator, ONE, regular_bimodule(limit))
    rep = check_o_operator(spec)
    assert rep.passed
    assert set(rep.checked) == {"OCirc", "OBracket"}
