#!/usr/bin/env python3
"""End-to-end verification run, writing every intermediate artifact to disk.

Generates the worked example, checks its axioms and its deformation order by
order, extracts the quasiclassical limit, validates the operators at every
stage, verifies the commuting-diagram routes, builds the solution bundles and
pushes one solution through the limit.  Exits nonzero on the first failure.
"""

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from jetalg import (
    DIAGRAM_TAGS,
    LinearMap,
    OOperatorSpec,
    StructurePresentation,
    check_deformation,
    check_o_operator,
    check_scalar_deformation,
    check_structure,
    construct_solutions,
    deformation_transfer,
    derive_deformation,
    dual_semidirect_jet,
    gen_truncated_poly_example,
    qcl,
    regular_bimodule,
    regular_bimodule_jet,
    save_deformation,
    save_structure,
    save_tensor,
    tridendriform_bimodule,
    tridendriform_bimodule_jet,
    verify_diagram,
)


def step(name, ok, detail=""):
    mark = "ok" if ok else "FAIL"
    print(f"  [{mark}] {name}" + (f" ({detail})" if detail else ""))
    if not ok:
        sys.exit(1)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q1", type=int, default=2)
    ap.add_argument("--q2", type=int, default=3)
    ap.add_argument("--D", type=int, default=2, help="maximal monomial degree")
    ap.add_argument("--N", type=int, default=3, help="jet truncation order")
    ap.add_argument("--outdir", default="verification-run")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()

    print(f"generating the worked example (q1={args.q1}, q2={args.q2}, "
          f"D={args.D}, N={args.N})")
    ex = gen_truncated_poly_example(args.q1, args.q2, args.D, args.N)
    save_structure(ex.presentation, out / "splitting.json")
    save_deformation(ex.jet, out / "jet.json")

    print("structure and deformation checks")
    step("splitting axioms", check_structure(ex.presentation).passed)
    step("orderwise deformation", check_deformation(ex.jet).passed)

    limit = qcl(ex.jet)
    save_structure(limit, out / "limit.json")
    step("quasiclassical limit axioms", check_structure(limit).passed)
    step("limit equals closed form", limit == ex.qcl_closed)

    print("operator checks")
    base = StructurePresentation(
        ex.space, {"circ": ex.presentation.op("dot")}, "commutative-associative")
    diag = OOperatorSpec(ex.operator, Fraction(1), regular_bimodule(base))
    ident = OOperatorSpec(LinearMap.identity(ex.space), Fraction(1),
                          tridendriform_bimodule(ex.presentation))
    step("diagonal operator, weight one", check_o_operator(diag).passed)
    step("identity operator, weight one", check_o_operator(ident).passed)
    base_jet = derive_deformation(base, ex.derivations, args.N)
    step("diagonal operator under the jet",
         check_scalar_deformation(diag, regular_bimodule_jet(base_jet)).passed)
    step("identity operator under the jet",
         check_scalar_deformation(ident,
                                  tridendriform_bimodule_jet(ex.jet)).passed)

    print("commuting diagram routes")
    for tag in DIAGRAM_TAGS:
        t = time.perf_counter()
        if tag in ("pro-skews", "dendriform-final"):
            rep = verify_diagram(tag)
        else:
            rep = verify_diagram(tag, q1=args.q1, q2=args.q2)
        step(tag, rep.passed, f"{time.perf_counter() - t:.2f}s, "
                              f"{len(rep.checked)} steps")

    print("solution bundles")
    bundle = construct_solutions("tri-aybe", ex.presentation)
    save_structure(bundle.ambient, out / "ambient.json")
    for name in sorted(bundle.tensors):
        save_tensor(bundle.tensors[name], out / f"{name}.json")
    step("eight doubled-dual tensors",
         len(bundle.tensors) == 8, f"ambient dim {bundle.ambient.space.dim}")

    pbundle = construct_solutions("post-pybe", limit)
    step("Poisson-side tensors", len(pbundle.tensors) == 8,
         f"ambient dim {pbundle.ambient.space.dim}")

    print("transfer through the limit")
    ehat = dual_semidirect_jet(tridendriform_bimodule_jet(ex.jet).semidirect_jet())
    save_deformation(ehat, out / "ambient-jet.json")
    rep = deformation_transfer(bundle.tensors["alpha1-plus"], ehat)
    step("orderwise transfer", rep.passed)
    rep = deformation_transfer(bundle.tensors["alpha1-plus"], ehat,
                               invariance_only=True)
    step("invariance-only transfer", rep.passed)

    print(f"all checks passed in {time.perf_counter() - t0:.2f}s; "
          f"artifacts in {out}/")


if __name__ == "__main__":
    main()
