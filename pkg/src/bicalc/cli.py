"""Command line interface for building calculi and verifying their identities.

Exit codes: 0 when every check passes (or the query succeeds), 1 when a
verification or flatness check fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gauge, suites
from .expressions import (
    ExpressionError,
    parse_form,
    parse_generator_function,
    split_components,
)
from .rn_calculus import (
    CalculusError,
    make_calculus,
    tangent_space_from_c,
    translation_closure_holds,
)
from .scalars import ScalarError

_ALGEBRA_SUITES = ("hopf", "casimir", "bralie", "check-L")


def _emit_reports(reports, as_json: bool) -> int:
    if as_json:
        print("[" + ", ".join(r.to_json() for r in reports) + "]")
    else:
        for i, rep in enumerate(reports):
            if i:
                print()
            print(rep.to_text())
        if len(reports) > 1:
            passed = sum(r.passed for r in reports)
            failed = sum(r.failed for r in reports)
            print(f"\ntotal: {passed} passed, {failed} failed")
    return 0 if all(r.all_passed for r in reports) else 1


def _cmd_suq2(args) -> int:
    names = _ALGEBRA_SUITES if args.suite == "all" else (args.suite,)
    return _emit_reports([suites.run_suite(n) for n in names], args.json)


def _cmd_verify(args) -> int:
    names = suites.SUITE_ORDER if args.suite == "all" else (args.suite,)
    return _emit_reports([suites.run_suite(n) for n in names], args.json)


def _cmd_tangent(args) -> int:
    c = parse_generator_function(args.c, args.vars)
    space = tangent_space_from_c(c)
    closed = translation_closure_holds(space)
    if args.json:
        payload = {
            "dimension": space.dimension,
            "basis": [
                {"label": label, "element": rendered}
                for label, rendered in zip(space.labels, space.render_basis())
            ],
            "closed_under_translation": closed,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"tangent space dimension: {space.dimension}")
        for label, rendered in zip(space.labels, space.render_basis()):
            print(f"  {label} = {rendered}")
        print(f"closed under translations: {'yes' if closed else 'NO'}")
    return 0 if closed else 1


def _sample_function(spec):
    alg = spec.algebra
    if hasattr(alg, "symbol"):
        return alg.symbol("f"), "f"
    if alg.nvars == 2:
        f = alg.coordinate(0) * alg.coordinate(1)
        return f, "x*y"
    f = alg.coordinate(0) ** 2
    return f, "x^2"


def _cmd_calculus(args) -> int:
    spec = make_calculus(args.spec, symbolic=args.symbolic)
    flavor = "opaque coefficients" if args.symbolic else "rational coefficients"
    lines = [f"calculus {spec.name}, {flavor}"]
    one_names = spec.one_form_names
    if args.show == "relations":
        lines.append("one-form basis: " + ", ".join(one_names))
        f, fname = _sample_function(spec)
        for i, name in enumerate(one_names):
            prod = spec.left_mult(f, spec.basis_one_form(i))
            lines.append(f"{fname} * {name} = {prod.render()}")
        lines.append(f"d({fname}) = {spec.d0(f).render()}")
        for i in range(len(one_names)):
            lines.append(
                f"partial_{i + 1}({fname}) = {spec.partial(i, f).render()}"
            )
    if spec.two_form_names is None:
        lines.append("second degree: not constructed for this calculus")
    elif not spec.two_form_names:
        lines.append("second degree: zero module")
        if args.show == "omega2":
            f, fname = _sample_function(spec)
            lines.append(f"d(d({fname})) = {spec.d(spec.d0(f)).render()}")
    else:
        lines.append("two-form basis: " + ", ".join(spec.two_form_names))
        for i, name in enumerate(one_names):
            lines.append(f"d({name}) = {spec.d(spec.basis_one_form(i)).render()}")
        for i, n1 in enumerate(one_names):
            for j, n2 in enumerate(one_names):
                w = spec.wedge(spec.basis_one_form(i), spec.basis_one_form(j))
                lines.append(f"{n1} ^ {n2} = {w.render()}")
        if args.show == "omega2":
            f, fname = _sample_function(spec)
            for k, name in enumerate(spec.two_form_names):
                coeffs = [0] * len(spec.two_form_names)
                coeffs[k] = 1
                basis_two = spec.two_form(*coeffs)
                prod = spec.left_mult(f, basis_two)
                lines.append(f"{fname} * {name} = {prod.render()}")
    print("\n".join(lines))
    return 0


def _parse_scalar_arg(text: str, spec, what: str):
    form = parse_form(text, spec)
    if form.degree != 0:
        raise CalculusError(
            f"{what} must be a function, not a form of degree {form.degree}"
        )
    return form.coeffs[0]


def _parse_connection(text: str, spec):
    parts = split_components(text)
    width = spec.basis_size(1)
    if len(parts) > 1:
        if len(parts) != width:
            raise CalculusError(
                f"expected {width} connection components, got {len(parts)}"
            )
        return spec.one_form(*(_parse_scalar_arg(p, spec, "component") for p in parts))
    form = parse_form(text, spec)
    if form.degree == 0 and width == 1:
        return spec.one_form(form.coeffs[0])
    if form.degree != 1:
        raise CalculusError("the connection must be a one-form")
    return form


def _cmd_gauge(args) -> int:
    spec = make_calculus(args.spec, symbolic=args.symbolic)
    alpha = _parse_connection(args.alpha, spec)
    gamma_text = args.gamma or ("gam" if args.symbolic else "x")
    psi_text = args.psi or ("psi" if args.symbolic else "x")

    if args.op == "lemmas":
        gamma = _parse_scalar_arg(gamma_text, spec, "gamma")
        psi = _parse_scalar_arg(psi_text, spec, "psi")
        report = gauge.verify_gauge_lemmas(spec, alpha, gamma, psi)
        print(report.to_json() if args.json else report.to_text())
        return 0 if report.all_passed else 1

    payload = {"spec": spec.name, "alpha": alpha.render(), "op": args.op}
    if args.op == "curvature":
        F = gauge.curvature(spec, alpha)
        payload["curvature"] = F.render()
        payload["flat"] = F.is_zero
        code = 0
    elif args.op == "flat":
        F = gauge.curvature(spec, alpha)
        payload["curvature"] = F.render()
        payload["flat"] = F.is_zero
        code = 0 if F.is_zero else 1
    else:  # transform
        gamma = _parse_scalar_arg(gamma_text, spec, "gamma")
        transformed = gauge.gauge_transform(spec, alpha, gamma)
        payload["gamma"] = gamma.render()
        payload["transformed"] = transformed.render()
        payload["transformed_curvature"] = gauge.curvature(spec, transformed).render()
        code = 0

    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key in ("spec", "alpha", "gamma", "op"):
            if key in payload:
                print(f"{key}: {payload[key]}")
        for key in ("curvature", "transformed", "transformed_curvature"):
            if key in payload:
                print(f"{key}: {payload[key]}")
        if "flat" in payload:
            print(f"flat: {'yes' if payload['flat'] else 'no'}")
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicalc",
        description="Exact bicovariant differential calculi and gauge theory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "suq2", help="verify the q-deformed enveloping algebra identities"
    )
    p.add_argument(
        "--suite", choices=_ALGEBRA_SUITES + ("all",), default="all",
        help="which identity suite to run (default: all)",
    )
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=_cmd_suq2)

    p = sub.add_parser(
        "tangent", help="tangent space spanned by a translation generator"
    )
    p.add_argument(
        "--c", required=True, metavar="EXPR",
        help="generator, e.g. 'p^3/6' or 'exp(lam*p)/lam^2'",
    )
    p.add_argument(
        "--vars", type=int, choices=(1, 2), default=None,
        help="number of momentum variables (default: inferred)",
    )
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=_cmd_tangent)

    p = sub.add_parser("calculus", help="show the relations of a calculus")
    p.add_argument(
        "--spec", required=True, metavar="SPEC",
        help="calculus name: jet:<n>, fd:1, or fd:2",
    )
    p.add_argument(
        "--symbolic", action="store_true",
        help="use opaque coefficient functions instead of rational ones",
    )
    p.add_argument(
        "--show", choices=("relations", "omega2"), default="relations",
        help="what to display (default: relations)",
    )
    p.set_defaults(func=_cmd_calculus)

    p = sub.add_parser("gauge", help="curvature and gauge transformations")
    p.add_argument("--spec", required=True, metavar="SPEC",
                   help="calculus name: jet:<n>, fd:1, or fd:2")
    p.add_argument(
        "--alpha", required=True, metavar="EXPR",
        help="connection one-form, e.g. 'dx*a + w*b' or components 'a, b'",
    )
    p.add_argument("--gamma", metavar="EXPR", default=None,
                   help="gauge function (default: gam symbolic, x rational)")
    p.add_argument("--psi", metavar="EXPR", default=None,
                   help="matter function for the lemmas op")
    p.add_argument(
        "--op", choices=("curvature", "transform", "flat", "lemmas"),
        default="curvature", help="operation to perform (default: curvature)",
    )
    p.add_argument("--symbolic", action="store_true",
                   help="use opaque coefficient functions")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=_cmd_gauge)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument(
        "--suite", choices=suites.SUITE_ORDER + ("all",), default="all",
        help="which suite to run (default: all)",
    )
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ExpressionError, CalculusError, ScalarError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
