"""Structure kinds, axiom checking, semidirect products and duals.

A StructurePresentation is a based space with one BilinearOp per named role;
the kind tag fixes the roles and the defining identities.  check_structure
evaluates every identity on every basis tuple and reports exact residuals.
Module data is validated through its semidirect product: the data is valid
precisely when the assembled structure on base + carrier passes the checker
of the base kind.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .linalg import (
    BilinearOp,
    LinearMap,
    Space,
    direct_sum,
    vec_clean,
    vec_iadd,
    vec_is_zero,
    vec_sub,
    vec_unit,
)
from .scalars import Jet, scalar_low_order

KIND_ROLES = {
    "associative": ("circ",),
    "commutative-associative": ("circ",),
    "lie": ("bracket",),
    "poisson": ("bracket", "circ"),
    "zinbiel": ("succ",),
    "dendriform": ("succ", "prec"),
    "tridendriform": ("succ", "prec", "dot"),
    "pre-lie": ("triangle",),
    "post-lie": ("bracket", "triangle"),
    "pre-poisson": ("triangle", "succ"),
    "post-poisson": ("bracket", "triangle", "succ", "dot"),
}

# kinds whose operations sum to an associative / Lie / Poisson total
SPLITTING_TOTALS = {
    "dendriform": "associative",
    "tridendriform": "associative",
    "zinbiel": "commutative-associative",
    "pre-lie": "lie",
    "post-lie": "lie",
    "pre-poisson": "poisson",
    "post-poisson": "poisson",
}

MODULE_BASE_KINDS = ("associative", "commutative-associative", "lie", "poisson")

MODULE_ACTION_ROLES = {
    "associative": ("left", "right"),
    "commutative-associative": ("act",),
    "lie": ("bracket_act",),
    "poisson": ("bracket_act", "circ_act"),
}

MODULE_CARRIER_ROLES = {
    "associative": ("dot",),
    "commutative-associative": ("dot",),
    "lie": ("bracket",),
    "poisson": ("bracket", "dot"),
}


@dataclass(frozen=True)
class StructurePresentation:
    space: Space
    ops: Mapping[str, BilinearOp]
    kind: str

    def __post_init__(self):
        if self.kind not in KIND_ROLES:
            raise ValueError(f"unknown structure kind {self.kind!r}")
        roles = KIND_ROLES[self.kind]
        got = tuple(sorted(self.ops))
        if got != tuple(sorted(roles)):
            raise ValueError(
                f"kind {self.kind!r} needs roles {sorted(roles)}, got {sorted(got)}"
            )
        for role, op in self.ops.items():
            if (op.left, op.right, op.out) != (self.space, self.space, self.space):
                raise ValueError(f"operation {role!r} does not live on the space")
        object.__setattr__(self, "ops", dict(self.ops))

    def op(self, role: str) -> BilinearOp:
        return self.ops[role]

    def map_scalars(self, fn) -> "StructurePresentation":
        return StructurePresentation(
            self.space, {r: op.map_scalars(fn) for r, op in self.ops.items()}, self.kind
        )

    def __eq__(self, other):
        if not isinstance(other, StructurePresentation):
            return NotImplemented
        return (self.space, self.kind) == (other.space, other.kind) and self.ops == other.ops

    __hash__ = None


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    indices: tuple[int, ...]
    residual: Mapping[int, object]
    order: int | None = None

    def describe(self, space: Space | None = None) -> str:
        if space is not None:
            where = ", ".join(space.label(i) for i in self.indices)
        else:
            where = ", ".join(map(str, self.indices))
        at = "" if self.order is None else f" at order h^{self.order}"
        parts = []
        for k in sorted(self.residual):
            coord = space.label(k) if space is not None else str(k)
            val = self.residual[k]
            text = str(val) if isinstance(val, (Fraction, int)) else repr(val)
            parts.append(f"{coord}: {text}")
        return f"{self.axiom} fails on ({where}){at}: residual {{{', '.join(parts)}}}"


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    failures: tuple[AxiomFailure, ...]
    checked: tuple[str, ...]
    subject: str = ""

    def failing_axioms(self) -> tuple[str, ...]:
        seen = []
        for f in self.failures:
            if f.axiom not in seen:
                seen.append(f.axiom)
        return tuple(seen)

    def first_failing_order(self):
        orders = [f.order for f in self.failures if f.order is not None]
        return min(orders) if orders else None

    def summary(self, space: Space | None = None, limit: int = 6) -> str:
        head = f"{self.subject or 'check'}: {'PASS' if self.passed else 'FAIL'}"
        lines = [head, f"  axioms checked: {', '.join(self.checked)}"]
        for f in self.failures[:limit]:
            lines.append("  " + f.describe(space))
        extra = len(self.failures) - limit
        if extra > 0:
            lines.append(f"  ... and {extra} more failures")
        return "\n".join(lines)


def _residual_order(residual):
    orders = [scalar_low_order(c) for c in residual.values()]
    orders = [o for o in orders if o is not None]
    return min(orders) if orders else None


# ---------------------------------------------------------------------------
# axiom catalogue
#
# Each axiom is (id, arity, fn) where fn consumes sparse basis vectors and
# returns the residual vector of lhs - rhs.

def _axioms_for(kind: str, ops: Mapping[str, BilinearOp]):
    axioms = []

    def comm(op, name):
        axioms.append((name, 2, lambda x, y: vec_sub(op.apply(x, y), op.apply(y, x))))

    def antisym(op, name="AntiSym"):
        axioms.append((name, 2, lambda x, y: vec_clean(
            vec_iadd(dict(op.apply(x, y)), op.apply(y, x)))))

    def assoc(op, name="Assoc"):
        axioms.append((name, 3, lambda x, y, z: vec_sub(
            op.apply(op.apply(x, y), z), op.apply(x, op.apply(y, z)))))

    def jacobi(b, name="Jacobi"):
        def fn(x, y, z):
            acc = dict(b.apply(b.apply(x, y), z))
            vec_iadd(acc, b.apply(b.apply(y, z), x))
            vec_iadd(acc, b.apply(b.apply(z, x), y))
            return vec_clean(acc)
        axioms.append((name, 3, fn))

    def leibniz(b, c, name="Leibniz"):
        def fn(x, y, z):
            lhs = b.apply(x, c.apply(y, z))
            rhs = vec_iadd(dict(c.apply(b.apply(x, y), z)), c.apply(y, b.apply(x, z)))
            return vec_sub(lhs, rhs)
        axioms.append((name, 3, fn))

    def dendriform(s, p, c, tag=""):
        axioms.append((f"Den1{tag}", 3, lambda x, y, z: vec_sub(
            p.apply(p.apply(x, y), z), p.apply(x, c.apply(y, z)))))
        axioms.append((f"Den2{tag}", 3, lambda x, y, z: vec_sub(
            p.apply(s.apply(x, y), z), s.apply(x, p.apply(y, z)))))
        axioms.append((f"Den3{tag}", 3, lambda x, y, z: vec_sub(
            s.apply(c.apply(x, y), z), s.apply(x, s.apply(y, z)))))

    def tridendriform(s, p, d, c):
        axioms.append(("Tri1", 3, lambda x, y, z: vec_sub(
            p.apply(p.apply(x, y), z), p.apply(x, c.apply(y, z)))))
        axioms.append(("Tri2", 3, lambda x, y, z: vec_sub(
            p.apply(s.apply(x, y), z), s.apply(x, p.apply(y, z)))))
        axioms.append(("Tri3", 3, lambda x, y, z: vec_sub(
            s.apply(c.apply(x, y), z), s.apply(x, s.apply(y, z)))))
        axioms.append(("Tri4", 3, lambda x, y, z: vec_sub(
            d.apply(s.apply(x, y), z), s.apply(x, d.apply(y, z)))))
        axioms.append(("Tri5", 3, lambda x, y, z: vec_sub(
            d.apply(p.apply(x, y), z), d.apply(x, s.apply(y, z)))))
        axioms.append(("Tri6", 3, lambda x, y, z: vec_sub(
            p.apply(d.apply(x, y), z), d.apply(x, p.apply(y, z)))))
        axioms.append(("Tri7", 3, lambda x, y, z: vec_sub(
            d.apply(d.apply(x, y), z), d.apply(x, d.apply(y, z)))))

    def prelie(t, name="PreLie"):
        def fn(x, y, z):
            acc = dict(t.apply(x, t.apply(y, z)))
            vec_iadd(acc, t.apply(t.apply(x, y), z), -1)
            vec_iadd(acc, t.apply(y, t.apply(x, z)), -1)
            vec_iadd(acc, t.apply(t.apply(y, x), z))
            return vec_clean(acc)
        axioms.append((name, 3, fn))

    def postlie(b, t):
        axioms.append(("PostL1", 3, lambda x, y, z: vec_sub(
            t.apply(x, b.apply(y, z)),
            vec_iadd(dict(b.apply(t.apply(x, y), z)), b.apply(y, t.apply(x, z))))))

        def postl2(x, y, z):
            acc = dict(t.apply(b.apply(x, y), z))
            vec_iadd(acc, t.apply(x, t.apply(y, z)), -1)
            vec_iadd(acc, t.apply(t.apply(x, y), z))
            vec_iadd(acc, t.apply(y, t.apply(x, z)))
            vec_iadd(acc, t.apply(t.apply(y, x), z), -1)
            return vec_clean(acc)
        axioms.append(("PostL2", 3, postl2))

    def post_poisson_compat(b, b_full, t, s, d, c):
        # b is the bare bracket role, b_full / c the assembled bracket and product
        def pp2a(x, y, z):
            acc = dict(b.apply(x, s.apply(y, z)))
            vec_iadd(acc, s.apply(y, b.apply(x, z)), -1)
            vec_iadd(acc, d.apply(z, t.apply(y, x)))
            return vec_clean(acc)
        axioms.append(("PostP2a", 3, pp2a))
        axioms.append(("PostP2b", 3, lambda x, y, z: vec_sub(
            t.apply(x, d.apply(y, z)),
            vec_iadd(dict(d.apply(t.apply(x, y), z)), d.apply(y, t.apply(x, z))))))
        axioms.append(("PostP5a", 3, lambda x, y, z: vec_sub(
            t.apply(c.apply(x, y), z),
            vec_iadd(dict(s.apply(x, t.apply(y, z))), s.apply(y, t.apply(x, z))))))
        axioms.append(("PostP5b", 3, lambda x, y, z: vec_sub(
            t.apply(x, s.apply(y, z)),
            vec_iadd(dict(s.apply(y, t.apply(x, z))), s.apply(b_full.apply(x, y), z)))))

    if kind == "associative":
        assoc(ops["circ"])
    elif kind == "commutative-associative":
        comm(ops["circ"], "Comm")
        assoc(ops["circ"])
    elif kind == "lie":
        antisym(ops["bracket"])
        jacobi(ops["bracket"])
    elif kind == "poisson":
        antisym(ops["bracket"])
        jacobi(ops["bracket"])
        comm(ops["circ"], "Comm")
        assoc(ops["circ"])
        leibniz(ops["bracket"], ops["circ"])
    elif kind == "zinbiel":
        s = ops["succ"]
        p = s.arg_swap()
        dendriform(s, p, s.add(p))
    elif kind == "dendriform":
        s, p = ops["succ"], ops["prec"]
        dendriform(s, p, s.add(p))
    elif kind == "tridendriform":
        s, p, d = ops["succ"], ops["prec"], ops["dot"]
        tridendriform(s, p, d, s.add(p).add(d))
    elif kind == "pre-lie":
        prelie(ops["triangle"])
    elif kind == "post-lie":
        antisym(ops["bracket"])
        jacobi(ops["bracket"])
        postlie(ops["bracket"], ops["triangle"])
    elif kind == "pre-poisson":
        t, s = ops["triangle"], ops["succ"]
        p = s.arg_swap()
        c = s.add(p)
        zero = BilinearOp.zero(s.left, s.right, s.out)
        prelie(t)
        dendriform(s, p, c)
        post_poisson_compat(zero, t.sub(t.arg_swap()), t, s, zero, c)
    elif kind == "post-poisson":
        b, t, s, d = ops["bracket"], ops["triangle"], ops["succ"], ops["dot"]
        p = s.arg_swap()
        c = s.add(p).add(d)
        antisym(b)
        jacobi(b)
        postlie(b, t)
        comm(d, "CommDot")
        tridendriform(s, p, d, c)
        b_full = t.sub(t.arg_swap()).add(b)
        leibniz(b_full, c, "PostP1")
        post_poisson_compat(b, b_full, t, s, d, c)
    else:  # pragma: no cover
        raise ValueError(f"no axiom set for kind {kind!r}")
    return axioms


def check_structure(p: StructurePresentation, subject: str = "") -> AxiomReport:
    """Evaluate every defining identity of p.kind on every basis tuple."""
    n = p.space.dim
    axioms = _axioms_for(p.kind, p.ops)
    failures = []
    for name, arity, fn in axioms:
        if arity == 2:
            tuples = ((i, j) for i in range(n) for j in range(n))
        else:
            tuples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
        for idx in tuples:
            residual = fn(*(vec_unit(i) for i in idx))
            if not vec_is_zero(residual):
                failures.append(AxiomFailure(name, idx, residual, _residual_order(residual)))
    return AxiomReport(
        passed=not failures,
        failures=tuple(failures),
        checked=tuple(name for name, _, _ in axioms),
        subject=subject or f"{p.kind} on dim {n}",
    )


def commutativity_failures(p: StructurePresentation) -> tuple[AxiomFailure, ...]:
    """Symmetry conditions needed before taking a quasiclassical limit."""
    fails = []

    def sym_check(op_a, op_b, name):
        n = p.space.dim
        for i in range(n):
            for j in range(n):
                r = vec_sub(op_a.basis(i, j), op_b.basis(j, i))
                if not vec_is_zero(r):
                    fails.append(AxiomFailure(name, (i, j), r, _residual_order(r)))

    if p.kind in ("associative", "commutative-associative"):
        c = p.op("circ")
        sym_check(c, c, "Comm")
    elif p.kind in ("dendriform", "tridendriform"):
        sym_check(p.op("succ"), p.op("prec"), "SuccPrecMirror")
        if p.kind == "tridendriform":
            d = p.op("dot")
            sym_check(d, d, "CommDot")
    elif p.kind == "zinbiel":
        pass  # mirrored by definition
    else:
        raise ValueError(f"no commutativity notion for kind {p.kind!r}")
    return tuple(fails)


# ---------------------------------------------------------------------------
# modules

@dataclass(frozen=True)
class ModuleData:
    """A module (algebra) over a base structure, given by action matrices.

    actions[role][i] is the matrix of the action of base basis vector e_i on
    the carrier.  carrier_ops hold the operations on the carrier itself; an
    all-zero family presents a plain module.
    """

    base: StructurePresentation
    carrier: Space
    carrier_ops: Mapping[str, BilinearOp]
    actions: Mapping[str, tuple[LinearMap, ...]]

    def __post_init__(self):
        kind = self.base.kind
        if kind not in MODULE_BASE_KINDS:
            raise ValueError(f"no module notion for base kind {kind!r}")
        if tuple(sorted(self.actions)) != tuple(sorted(MODULE_ACTION_ROLES[kind])):
            raise ValueError(
                f"base kind {kind!r} needs action roles {MODULE_ACTION_ROLES[kind]}"
            )
        if tuple(sorted(self.carrier_ops)) != tuple(sorted(MODULE_CARRIER_ROLES[kind])):
            raise ValueError(
                f"base kind {kind!r} needs carrier roles {MODULE_CARRIER_ROLES[kind]}"
            )
        for role, table in self.actions.items():
            if len(table) != self.base.space.dim:
                raise ValueError(f"action {role!r} needs one matrix per base basis vector")
            for m in table:
                if (m.domain, m.codomain) != (self.carrier, self.carrier):
                    raise ValueError(f"action {role!r} matrices must be carrier endomorphisms")
        for role, op in self.carrier_ops.items():
            if (op.left, op.right, op.out) != (self.carrier, self.carrier, self.carrier):
                raise ValueError(f"carrier operation {role!r} does not live on the carrier")
        object.__setattr__(self, "carrier_ops", dict(self.carrier_ops))
        object.__setattr__(self, "actions", {r: tuple(t) for r, t in self.actions.items()})

    @property
    def kind(self) -> str:
        return self.base.kind

    def is_plain(self) -> bool:
        return all(op.is_zero() for op in self.carrier_ops.values())

    def action(self, role: str, i: int) -> LinearMap:
        return self.actions[role][i]

    def map_scalars(self, fn) -> "ModuleData":
        return ModuleData(
            self.base.map_scalars(fn),
            self.carrier,
            {r: op.map_scalars(fn) for r, op in self.carrier_ops.items()},
            {r: tuple(m.map_scalars(fn) for m in t) for r, t in self.actions.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, ModuleData):
            return NotImplemented
        return (
            self.base == other.base
            and self.carrier == other.carrier
            and self.carrier_ops == other.carrier_ops
            and self.actions == other.actions
        )

    __hash__ = None


def semidirect(m: ModuleData) -> StructurePresentation:
    """Assemble the product(s) on base + carrier from the module data."""
    base = m.base
    na = base.space.dim
    total = direct_sum(base.space, m.carrier)

    def base_entries(op):
        for (i, j, k), c in op.entries.items():
            yield i, j, k, c

    def carrier_entries(op):
        for (i, j, k), c in op.entries.items():
            yield na + i, na + j, na + k, c

    def left_entries(table, sign=1):
        # base element acts from the left: (e_i, v_b) -> table[i] v_b
        for i, mat in enumerate(table):
            for r in range(m.carrier.dim):
                for c in range(m.carrier.dim):
                    v = mat.matrix[r][c]
                    yield i, na + c, na + r, v if sign == 1 else -v

    def right_entries(table, sign=1):
        # base element acts from the right: (v_a, e_j) -> table[j] v_a
        for j, mat in enumerate(table):
            for r in range(m.carrier.dim):
                for c in range(m.carrier.dim):
                    v = mat.matrix[r][c]
                    yield na + c, j, na + r, v if sign == 1 else -v

    def build(parts):
        items = [x for part in parts for x in part]
        return BilinearOp.from_entries(total, total, total, items, combine=True)

    kind = base.kind
    if kind == "associative":
        circ = build([
            base_entries(base.op("circ")),
            left_entries(m.actions["left"]),
            right_entries(m.actions["right"]),
            carrier_entries(m.carrier_ops["dot"]),
        ])
        return StructurePresentation(total, {"circ": circ}, "associative")
    if kind == "commutative-associative":
        circ = build([
            base_entries(base.op("circ")),
            left_entries(m.actions["act"]),
            right_entries(m.actions["act"]),
            carrier_entries(m.carrier_ops["dot"]),
        ])
        return StructurePresentation(total, {"circ": circ}, "commutative-associative")
    if kind == "lie":
        bracket = build([
            base_entries(base.op("bracket")),
            left_entries(m.actions["bracket_act"]),
            right_entries(m.actions["bracket_act"], sign=-1),
            carrier_entries(m.carrier_ops["bracket"]),
        ])
        return StructurePresentation(total, {"bracket": bracket}, "lie")
    if kind == "poisson":
        bracket = build([
            base_entries(base.op("bracket")),
            left_entries(m.actions["bracket_act"]),
            right_entries(m.actions["bracket_act"], sign=-1),
            carrier_entries(m.carrier_ops["bracket"]),
        ])
        circ = build([
            base_entries(base.op("circ")),
            left_entries(m.actions["circ_act"]),
            right_entries(m.actions["circ_act"]),
            carrier_entries(m.carrier_ops["dot"]),
        ])
        return StructurePresentation(total, {"bracket": bracket, "circ": circ}, "poisson")
    raise ValueError(f"no semidirect assembly for base kind {kind!r}")  # pragma: no cover


def check_module(m: ModuleData, subject: str = "") -> AxiomReport:
    """Module validity is defined through the semidirect criterion."""
    total = semidirect(m)
    report = check_structure(total, subject or f"module over {m.kind} base")
    return report


def bimodule_equations_report(m: ModuleData, subject: str = "") -> AxiomReport:
    """Direct equational form of bimodule(-algebra) validity over an
    associative base; used only to cross-check the semidirect criterion."""
    if m.kind != "associative":
        raise ValueError("equational cross-check is implemented for associative bases")
    base = m.base
    circ = base.op("circ")
    dot = m.carrier_ops["dot"]
    left, right = m.actions["left"], m.actions["right"]
    na, nv = base.space.dim, m.carrier.dim
    failures = []

    def lmap_of(vec, table):
        acc = LinearMap.zero(m.carrier, m.carrier)
        for p, c in vec.items():
            acc = acc.add(table[p].scale(c))
        return acc

    def record(name, idx, lhs, rhs):
        r = vec_sub(lhs, rhs)
        if not vec_is_zero(r):
            failures.append(AxiomFailure(name, idx, r, _residual_order(r)))

    for i in range(na):
        for j in range(na):
            prod = circ.basis(i, j)
            lhs_l = lmap_of(prod, left)
            rhs_l = left[i].compose(left[j])
            if lhs_l != rhs_l:
                for b in range(nv):
                    record("BimComp1", (i, j, b), lhs_l.column(b), rhs_l.column(b))
            mid_l = left[i].compose(right[j])
            mid_r = right[j].compose(left[i])
            if mid_l != mid_r:
                for b in range(nv):
                    record("BimComp2", (i, j, b), mid_l.column(b), mid_r.column(b))
            lhs_r = lmap_of(prod, right)
            rhs_r = right[j].compose(right[i])
            if lhs_r != rhs_r:
                for b in range(nv):
                    record("BimComp3", (i, j, b), lhs_r.column(b), rhs_r.column(b))

    for i in range(na):
        for a in range(nv):
            for b in range(nv):
                u, v = vec_unit(a), vec_unit(b)
                record("BimAlg1", (i, a, b),
                       left[i].apply(dot.apply(u, v)),
                       dot.apply(left[i].apply(u), v))
                record("BimAlg2", (i, a, b),
                       dot.apply(right[i].apply(u), v),
                       dot.apply(u, left[i].apply(v)))
                record("BimAlg3", (i, a, b),
                       right[i].apply(dot.apply(u, v)),
                       dot.apply(u, right[i].apply(v)))

    checked = ("BimComp1", "BimComp2", "BimComp3", "BimAlg1", "BimAlg2", "BimAlg3")
    return AxiomReport(not failures, tuple(failures), checked,
                       subject or "bimodule equations")


def as_bimodule_layout(m: ModuleData) -> ModuleData:
    """View a commutative module algebra as an associative bimodule algebra."""
    if m.kind == "associative":
        return m
    if m.kind != "commutative-associative":
        raise ValueError(f"no bimodule layout for base kind {m.kind!r}")
    base = StructurePresentation(m.base.space, {"circ": m.base.op("circ")}, "associative")
    return ModuleData(base, m.carrier, {"dot": m.carrier_ops["dot"]},
                      {"left": m.actions["act"], "right": m.actions["act"]})


def dualize_module(m: ModuleData) -> ModuleData:
    """Dual module on the dual carrier; requires a plain module.

    The dual action pairs by <f(x)u*, v> = -<u*, g(x)v> against the matching
    original action g, which in matrix form is the positive transpose; for
    Lie-type actions (bracket side) the coadjoint rule -transpose applies.
    """
    if not m.is_plain():
        raise ValueError("dualize_module needs trivial carrier operations")
    dual = m.carrier.dual()

    def t(mat, sign=1):
        return mat.transpose(dual, dual).scale(sign)

    kind = m.kind
    if kind == "associative":
        actions = {
            "left": tuple(t(mat) for mat in m.actions["right"]),
            "right": tuple(t(mat) for mat in m.actions["left"]),
        }
    elif kind == "commutative-associative":
        actions = {"act": tuple(t(mat) for mat in m.actions["act"])}
    elif kind == "lie":
        actions = {"bracket_act": tuple(t(mat, -1) for mat in m.actions["bracket_act"])}
    elif kind == "poisson":
        actions = {
            "bracket_act": tuple(t(mat, -1) for mat in m.actions["bracket_act"]),
            "circ_act": tuple(t(mat) for mat in m.actions["circ_act"]),
        }
    else:  # pragma: no cover
        raise ValueError(f"no dual for base kind {kind!r}")
    carrier_ops = {
        role: BilinearOp.zero(dual, dual, dual) for role in MODULE_CARRIER_ROLES[kind]
    }
    return ModuleData(m.base, dual, carrier_ops, actions)


# ---------------------------------------------------------------------------
# assembly and derived module data

def assemble_total(p: StructurePresentation) -> StructurePresentation:
    """Sum the split operations into the associative / Lie / Poisson total."""
    target = SPLITTING_TOTALS.get(p.kind)
    if target is None:
        raise ValueError(f"kind {p.kind!r} has no assembled total")
    if p.kind == "dendriform":
        circ = p.op("succ").add(p.op("prec"))
        return StructurePresentation(p.space, {"circ": circ}, "associative")
    if p.kind == "tridendriform":
        circ = p.op("succ").add(p.op("prec")).add(p.op("dot"))
        return StructurePresentation(p.space, {"circ": circ}, "associative")
    if p.kind == "zinbiel":
        s = p.op("succ")
        circ = s.add(s.arg_swap())
        return StructurePresentation(p.space, {"circ": circ}, "commutative-associative")
    if p.kind == "pre-lie":
        t = p.op("triangle")
        return StructurePresentation(p.space, {"bracket": t.sub(t.arg_swap())}, "lie")
    if p.kind == "post-lie":
        t = p.op("triangle")
        bracket = t.sub(t.arg_swap()).add(p.op("bracket"))
        return StructurePresentation(p.space, {"bracket": bracket}, "lie")
    if p.kind == "pre-poisson":
        t, s = p.op("triangle"), p.op("succ")
        return StructurePresentation(
            p.space,
            {"bracket": t.sub(t.arg_swap()), "circ": s.add(s.arg_swap())},
            "poisson",
        )
    if p.kind == "post-poisson":
        t, s, d = p.op("triangle"), p.op("succ"), p.op("dot")
        bracket = t.sub(t.arg_swap()).add(p.op("bracket"))
        circ = s.add(s.arg_swap()).add(d)
        return StructurePresentation(p.space, {"bracket": bracket, "circ": circ}, "poisson")
    raise ValueError(f"kind {p.kind!r} has no assembled total")  # pragma: no cover


def left_multiplications(op: BilinearOp) -> tuple[LinearMap, ...]:
    """L(e_i): x -> op(e_i, x) for each basis vector of the left space."""
    n = op.left.dim
    maps = []
    for i in range(n):
        cols = [op.basis(i, j) for j in range(op.right.dim)]
        maps.append(LinearMap.from_columns(op.right, op.out, cols))
    return tuple(maps)


def right_multiplications(op: BilinearOp) -> tuple[LinearMap, ...]:
    """R(e_j): x -> op(x, e_j) for each basis vector of the right space."""
    n = op.right.dim
    maps = []
    for j in range(n):
        cols = [op.basis(i, j) for i in range(op.left.dim)]
        maps.append(LinearMap.from_columns(op.left, op.out, cols))
    return tuple(maps)


def _zero_carrier(kind: str, carrier: Space):
    return {role: BilinearOp.zero(carrier, carrier, carrier)
            for role in MODULE_CARRIER_ROLES[kind]}


def regular_bimodule(p: StructurePresentation) -> ModuleData:
    """The structure acting on itself, carrier operations included."""
    kind = p.kind
    if kind == "associative":
        circ = p.op("circ")
        return ModuleData(p, p.space, {"dot": circ},
                          {"left": left_multiplications(circ),
                           "right": right_multiplications(circ)})
    if kind == "commutative-associative":
        circ = p.op("circ")
        return ModuleData(p, p.space, {"dot": circ},
                          {"act": left_multiplications(circ)})
    if kind == "lie":
        b = p.op("bracket")
        return ModuleData(p, p.space, {"bracket": b},
                          {"bracket_act": left_multiplications(b)})
    if kind == "poisson":
        b, c = p.op("bracket"), p.op("circ")
        return ModuleData(p, p.space, {"bracket": b, "dot": c},
                          {"bracket_act": left_multiplications(b),
                           "circ_act": left_multiplications(c)})
    raise ValueError(f"no regular module for kind {kind!r}")


def regular_module(p: StructurePresentation) -> ModuleData:
    """Regular actions with the carrier operations forgotten."""
    full = regular_bimodule(p)
    return ModuleData(full.base, full.carrier, _zero_carrier(p.kind, full.carrier),
                      full.actions)


def as_tridendriform(p: StructurePresentation) -> StructurePresentation:
    """Embed dendriform (zero dot) and zinbiel (mirrored, zero dot) presentations."""
    if p.kind == "tridendriform":
        return p
    if p.kind == "dendriform":
        zero = BilinearOp.zero(p.space, p.space, p.space)
        return StructurePresentation(
            p.space, {"succ": p.op("succ"), "prec": p.op("prec"), "dot": zero},
            "tridendriform")
    if p.kind == "zinbiel":
        s = p.op("succ")
        zero = BilinearOp.zero(p.space, p.space, p.space)
        return StructurePresentation(
            p.space, {"succ": s, "prec": s.arg_swap(), "dot": zero}, "tridendriform")
    raise ValueError(f"cannot view kind {p.kind!r} as tridendriform")


def as_post_poisson(p: StructurePresentation) -> StructurePresentation:
    if p.kind == "post-poisson":
        return p
    if p.kind == "pre-poisson":
        zero = BilinearOp.zero(p.space, p.space, p.space)
        return StructurePresentation(
            p.space,
            {"bracket": zero, "triangle": p.op("triangle"),
             "succ": p.op("succ"), "dot": zero},
            "post-poisson")
    raise ValueError(f"cannot view kind {p.kind!r} as post-poisson")


def tridendriform_bimodule(p: StructurePresentation, commutative: bool = False) -> ModuleData:
    """(carrier, dot, L_succ, R_prec) over the assembled associative total.

    With commutative=True the mirrored presentation collapses to a module
    algebra over the commutative total with the single action L_succ.
    """
    q = as_tridendriform(p)
    total = assemble_total(q)
    succ, prec, dot = q.op("succ"), q.op("prec"), q.op("dot")
    if commutative:
        fails = commutativity_failures(q)
        if fails:
            raise ValueError("presentation is not commutative: " + fails[0].describe(q.space))
        base = StructurePresentation(total.space, total.ops, "commutative-associative")
        return ModuleData(base, q.space, {"dot": dot},
                          {"act": left_multiplications(succ)})
    return ModuleData(total, q.space, {"dot": dot},
                      {"left": left_multiplications(succ),
                       "right": right_multiplications(prec)})


def post_poisson_module(p: StructurePresentation) -> ModuleData:
    """(carrier, bracket, dot, L_triangle, L_succ) over the assembled Poisson total."""
    q = as_post_poisson(p)
    total = assemble_total(q)
    return ModuleData(total, q.space,
                      {"bracket": q.op("bracket"), "dot": q.op("dot")},
                      {"bracket_act": left_multiplications(q.op("triangle")),
                       "circ_act": left_multiplications(q.op("succ"))})


def post_lie_module(p: StructurePresentation) -> ModuleData:
    """(carrier, bracket, L_triangle) over the assembled Lie total."""
    q = as_post_poisson(p) if p.kind in ("pre-poisson", "post-poisson") else p
    if q.kind == "post-poisson":
        lie_total = StructurePresentation(
            q.space, {"bracket": assemble_total(q).op("bracket")}, "lie")
        return ModuleData(lie_total, q.space, {"bracket": q.op("bracket")},
                          {"bracket_act": left_multiplications(q.op("triangle"))})
    if q.kind in ("post-lie", "pre-lie"):
        if q.kind == "pre-lie":
            zero = BilinearOp.zero(q.space, q.space, q.space)
            q = StructurePresentation(
                q.space, {"bracket": zero, "triangle": q.op("triangle")}, "post-lie")
        lie_total = assemble_total(q)
        return ModuleData(lie_total, q.space, {"bracket": q.op("bracket")},
                          {"bracket_act": left_multiplications(q.op("triangle"))})
    raise ValueError(f"cannot derive a Lie module from kind {p.kind!r}")
