"""Relative Rota-Baxter style operators: checking, deformation, splitting.

An operator is a linear map from a module carrier into the base structure.
The defining identity depends on the base family (associative, Lie,
Poisson); the weight scales the carrier operations.  All checks run the
same code over rational or jet-valued module data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .deform import ModuleDeformationJet, qcl
from .errors import ConsistencyError
from .linalg import BilinearOp, LinearMap, vec_clean, vec_iadd, vec_is_zero, vec_sub, vec_unit
from .scalars import Jet
from .structures import (
    AxiomFailure,
    AxiomReport,
    ModuleData,
    StructurePresentation,
    as_bimodule_layout,
)


@dataclass(frozen=True)
class OOperatorSpec:
    """A candidate operator T: carrier -> base with a weight and its context."""

    operator: LinearMap
    weight: Fraction
    context: ModuleData

    def __post_init__(self):
        if self.operator.domain != self.context.carrier:
            raise ValueError("operator domain must be the module carrier")
        if self.operator.codomain != self.context.base.space:
            raise ValueError("operator codomain must be the base space")

    @property
    def family(self) -> str:
        kind = self.context.kind
        if kind in ("associative", "commutative-associative"):
            return "associative"
        return kind  # "lie" or "poisson"


def _act(table, xvec: Mapping, w: Mapping) -> dict:
    """Apply the action of a sparse base vector to a carrier vector."""
    acc = {}
    for p, c in xvec.items():
        vec_iadd(acc, table[p].apply(w), c)
    return vec_clean(acc)


def _residual_order(residual):
    from .structures import _residual_order as ro
    return ro(residual)


def _o_operator_failures(spec: OOperatorSpec):
    m = spec.context
    T = spec.operator
    lam = spec.weight
    nv = m.carrier.dim
    failures = []

    def record(axiom, a, b, residual):
        if not vec_is_zero(residual):
            failures.append(AxiomFailure(axiom, (a, b), residual, _residual_order(residual)))

    kind = m.kind
    if kind in ("associative", "commutative-associative"):
        circ = m.base.op("circ")
        dot = m.carrier_ops["dot"]
        if kind == "associative":
            left, right = m.actions["left"], m.actions["right"]
        else:
            left = right = m.actions["act"]
        for a in range(nv):
            tu = T.column(a)
            for b in range(nv):
                tv = T.column(b)
                u, v = vec_unit(a), vec_unit(b)
                lhs = circ.apply(tu, tv)
                rhs = dict(T.apply(_act(left, tu, v)))
                vec_iadd(rhs, T.apply(_act(right, tv, u)))
                if lam:
                    vec_iadd(rhs, T.apply(dot.apply(u, v)), lam)
                record("OCirc", a, b, vec_sub(lhs, rhs))
        checked = ("OCirc",)
    elif kind == "lie":
        br = m.base.op("bracket")
        cbr = m.carrier_ops["bracket"]
        table = m.actions["bracket_act"]
        for a in range(nv):
            tu = T.column(a)
            for b in range(nv):
                tv = T.column(b)
                u, v = vec_unit(a), vec_unit(b)
                lhs = br.apply(tu, tv)
                rhs = dict(T.apply(_act(table, tu, v)))
                vec_iadd(rhs, T.apply(_act(table, tv, u)), -1)
                if lam:
                    vec_iadd(rhs, T.apply(cbr.apply(u, v)), lam)
                record("OBracket", a, b, vec_sub(lhs, rhs))
        checked = ("OBracket",)
    elif kind == "poisson":
        br, circ = m.base.op("bracket"), m.base.op("circ")
        cbr, cdot = m.carrier_ops["bracket"], m.carrier_ops["dot"]
        tb, tc = m.actions["bracket_act"], m.actions["circ_act"]
        for a in range(nv):
            tu = T.column(a)
            for b in range(nv):
                tv = T.column(b)
                u, v = vec_unit(a), vec_unit(b)
                lhs = br.apply(tu, tv)
                rhs = dict(T.apply(_act(tb, tu, v)))
                vec_iadd(rhs, T.apply(_act(tb, tv, u)), -1)
                if lam:
                    vec_iadd(rhs, T.apply(cbr.apply(u, v)), lam)
                record("OBracket", a, b, vec_sub(lhs, rhs))
                lhs = circ.apply(tu, tv)
                rhs = dict(T.apply(_act(tc, tu, v)))
                vec_iadd(rhs, T.apply(_act(tc, tv, u)))
                if lam:
                    vec_iadd(rhs, T.apply(cdot.apply(u, v)), lam)
                record("OCirc", a, b, vec_sub(lhs, rhs))
        checked = ("OBracket", "OCirc")
    else:  # pragma: no cover
        raise ValueError(f"no operator identity for base kind {kind!r}")
    return failures, checked


def check_o_operator(spec: OOperatorSpec, subject: str = "") -> AxiomReport:
    """Verify the operator identity of the context's family on all carrier pairs."""
    failures, checked = _o_operator_failures(spec)
    return AxiomReport(not failures, tuple(failures), checked,
                       subject or f"weight-{spec.weight} operator over {spec.context.kind} base")


def check_scalar_deformation(spec: OOperatorSpec, mj: ModuleDeformationJet,
                             subject: str = "") -> AxiomReport:
    """Check that the unchanged matrix of T stays an operator for the deformed
    module data, order by order; failures carry the first failing h-order."""
    layer0 = as_bimodule_layout(spec.context)
    if mj.layer0() != layer0:
        raise ValueError("module jet does not deform the operator's context")
    jet_context = mj.jet_module()
    jet_spec = OOperatorSpec(spec.operator, spec.weight, jet_context)
    failures, checked = _o_operator_failures(jet_spec)
    return AxiomReport(not failures, tuple(failures), checked,
                       subject or f"operator with coefficients through order {mj.order}")


def induce_splitting(spec: OOperatorSpec) -> StructurePresentation:
    """Split the base product through T into shifted operations on the carrier.

    Associative contexts give dendriform or tridendriform presentations;
    Poisson contexts give pre- or post-Poisson; Lie contexts give pre- or
    post-Lie.  The carrier operations enter scaled by the weight.
    """
    m = spec.context
    T = spec.operator
    lam = spec.weight
    nv = m.carrier.dim
    carrier = m.carrier

    def op_from(fn):
        items = []
        for a in range(nv):
            for b in range(nv):
                for k, c in fn(a, b).items():
                    items.append((a, b, k, c))
        return BilinearOp.on(carrier, items)

    kind = m.kind
    if kind in ("associative", "commutative-associative"):
        if kind == "associative":
            left, right = m.actions["left"], m.actions["right"]
        else:
            left = right = m.actions["act"]
        succ = op_from(lambda a, b: _act(left, T.column(a), vec_unit(b)))
        prec = op_from(lambda a, b: _act(right, T.column(b), vec_unit(a)))
        dot = m.carrier_ops["dot"].scale(lam)
        if dot.is_zero():
            return StructurePresentation(carrier, {"succ": succ, "prec": prec}, "dendriform")
        return StructurePresentation(
            carrier, {"succ": succ, "prec": prec, "dot": dot}, "tridendriform")
    if kind == "poisson":
        tb, tc = m.actions["bracket_act"], m.actions["circ_act"]
        triangle = op_from(lambda a, b: _act(tb, T.column(a), vec_unit(b)))
        succ = op_from(lambda a, b: _act(tc, T.column(a), vec_unit(b)))
        bracket = m.carrier_ops["bracket"].scale(lam)
        dot = m.carrier_ops["dot"].scale(lam)
        if bracket.is_zero() and dot.is_zero():
            return StructurePresentation(
                carrier, {"triangle": triangle, "succ": succ}, "pre-poisson")
        return StructurePresentation(
            carrier,
            {"bracket": bracket, "triangle": triangle, "succ": succ, "dot": dot},
            "post-poisson")
    if kind == "lie":
        table = m.actions["bracket_act"]
        triangle = op_from(lambda a, b: _act(table, T.column(a), vec_unit(b)))
        bracket = m.carrier_ops["bracket"].scale(lam)
        if bracket.is_zero():
            return StructurePresentation(carrier, {"triangle": triangle}, "pre-lie")
        return StructurePresentation(
            carrier, {"bracket": bracket, "triangle": triangle}, "post-lie")
    raise ValueError(f"no splitting for base kind {kind!r}")  # pragma: no cover


def transfer_qcl_operator(spec: OOperatorSpec, mj: ModuleDeformationJet) -> AxiomReport:
    """Push the operator through the quasiclassical limit of its deformed context.

    Hypotheses (T stays an operator for the jet; commutative layer 0) are
    input errors when violated.  The limit check itself is guaranteed, so a
    failure there raises ConsistencyError.
    """
    jet_report = check_scalar_deformation(spec, mj)
    if not jet_report.passed:
        raise ValueError(
            "operator does not survive the deformation:\n" + jet_report.summary())
    limit = qcl(mj)
    limit_spec = OOperatorSpec(spec.operator, spec.weight, limit)
    report = check_o_operator(
        limit_spec, f"weight-{spec.weight} operator on quasiclassical limit")
    if not report.passed:
        raise ConsistencyError(
            "operator failed on the quasiclassical limit although the jet check "
            "passed; this should be impossible:\n" + report.summary())
    return report
