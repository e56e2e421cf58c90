"""Named verification suites: every identity the engine claims, re-verified.

Each suite builds its objects from scratch, checks the identities by
exact computation, and returns a Report.  The suites are deterministic:
random sampling uses fixed seeds, so two runs produce byte-identical
output.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import gauge as gauge_mod
from . import uqsu2
from .linalg import SpanBasis
from .reports import Report
from .rn_calculus import (
    finite_difference_generator,
    jet_generator,
    make_calculus,
    tangent_space_from_c,
    translation_closure_holds,
)
from .scalars import QFIELD
from .uqsu2 import (
    K,
    K_INV,
    Mat2,
    PBWMonomial,
    TensorElement,
    UqElement,
    XM,
    XP,
    antipode,
    antipode_axioms_hold,
    braided_lie_basis,
    braided_lie_table,
    casimir,
    casimir_tangent_space,
    change_of_basis_check,
    check_tangent_space,
    coassociativity_holds,
    coproduct,
    counit,
    counit_laws_hold,
    expected_bracket_relations,
    fundamental_rep,
    is_central,
    q_limit_diagnostic,
)


def random_uq_element(rng: random.Random, max_degree: int = 3) -> UqElement:
    """Small random element: a few PBW monomials with q-power coefficients."""
    el = UqElement.zero()
    for _ in range(rng.randint(1, 3)):
        while True:
            a, c = rng.randint(0, 2), rng.randint(0, 2)
            b = rng.randint(-2, 2)
            if a + c + abs(b) <= max_degree:
                break
        coeff = QFIELD.half_power(rng.randint(-2, 2)) * rng.randint(-3, 3)
        el = el + UqElement.monomial(PBWMonomial(a, b, c), coeff)
    return el


# ---------------------------------------------------------------------------
# q-deformed enveloping algebra suites
# ---------------------------------------------------------------------------

def suite_hopf(sample: int = 10, seed: int = 20260816) -> Report:
    report = Report("hopf")
    rng = random.Random(seed)
    elements = [random_uq_element(rng) for _ in range(sample)]
    report.true(
        "coproduct is coassociative on seeded sample",
        all(coassociativity_holds(u) for u in elements),
        f"{sample} elements, seed {seed}",
    )
    report.true(
        "counit laws hold on seeded sample",
        all(counit_laws_hold(u) for u in elements),
        f"{sample} elements, seed {seed}",
    )
    report.true(
        "antipode axioms hold on seeded sample",
        all(antipode_axioms_hold(u) for u in elements),
        f"{sample} elements, seed {seed}",
    )
    pairs = list(zip(elements, reversed(elements)))
    report.true(
        "coproduct is an algebra map on seeded pairs",
        all(coproduct(u * v) == coproduct(u) * coproduct(v) for u, v in pairs),
        f"{len(pairs)} pairs",
    )
    report.true(
        "counit is an algebra map on seeded pairs",
        all(counit(u * v) == counit(u) * counit(v) for u, v in pairs),
        f"{len(pairs)} pairs",
    )
    report.true(
        "antipode reverses products on seeded pairs",
        all(antipode(u * v) == antipode(v) * antipode(u) for u, v in pairs),
        f"{len(pairs)} pairs",
    )
    q = QFIELD.gen("q")
    report.equal("S(K) = K^-1", antipode(K), K_INV)
    report.equal("S(Xp) = -q Xp", antipode(XP), -(XP * q))
    report.equal("S(Xm) = -q^-1 Xm", antipode(XM), -(XM * q.inverse()))
    report.equal(
        "K Xp = q Xp K", uqsu2.multiply(K, XP), uqsu2.multiply(XP, K) * q
    )
    report.equal(
        "Xm Xp - Xp Xm = -(K^2 - K^-2)/(q - q^-1)",
        uqsu2.multiply(XM, XP) - uqsu2.multiply(XP, XM),
        (K * K - K_INV * K_INV) / (q.inverse() - q),
    )
    return report


def suite_casimir() -> Report:
    report = Report("casimir")
    q = QFIELD.gen("q")
    C, c = casimir()
    report.true("C is central", is_central(C), C.render())
    report.equal("eps(C) = q + q^-1", counit(C), q + q.inverse())
    report.equal("S(C) = C", antipode(C), C)
    report.equal("eps(c) = 0", counit(c), QFIELD.zero)

    lam2 = (q - q.inverse()) ** 2
    five = (
        TensorElement.of(C, K * K)
        + TensorElement.of(K_INV * K_INV, C)
        + TensorElement.of((K_INV * K_INV).scaled(-(q + q.inverse())), K * K)
        + TensorElement.of((XP * K_INV).scaled(lam2), K * XM)
        + TensorElement.of((K_INV * XM).scaled(lam2), XP * K)
    )
    report.equal("coproduct of C has the five-term expansion", coproduct(C), five)

    rho = fundamental_rep(C)
    report.true(
        "fundamental representation sends C to (q^2 + q^-2) I",
        rho == Mat2.identity() * (q**2 + q**-2),
        f"rho(C) diagonal entry: {rho.entry(0, 0).render()}",
    )

    ts = casimir_tangent_space()
    report.true(
        "tangent space of the normalized Casimir has dimension 4",
        ts.dimension == 4,
        f"dimension {ts.dimension}, labels {', '.join(ts.labels)}",
    )
    for cond in check_tangent_space(ts.elements):
        report.true(cond.name, cond.passed, "; ".join(cond.details) or "all elements")

    bad = check_tangent_space([XP])
    report.true(
        "span{Xp} fails the coproduct condition",
        not bad[2].passed and bad[0].passed,
        "; ".join(bad[2].details),
    )

    diag = q_limit_diagnostic()
    angle_text = ", ".join(f"1e-{k}: {a:.3e}" for k, a in diag["angles"])
    report.true(
        "diagonal directions merge as q approaches 1 (numeric diagnostic)",
        diag["monotone_decreasing"] and diag["angles"][-1][1] < 1e-4,
        angle_text,
    )
    return report


def suite_braided_lie() -> Report:
    report = Report("bralie")
    basis = braided_lie_basis()
    table = braided_lie_table()
    for n1, n2, expected in expected_bracket_relations():
        report.equal(f"[{n1}, {n2}] matches", table[(n1, n2)], expected)

    span = SpanBasis(QFIELD, [basis[n].terms for n in ("h", "x", "y", "gamma")])
    report.true(
        "all sixteen brackets close on the span",
        all(span.contains(v.terms) for v in table.values()),
        "brackets of h, x, y, gamma",
    )
    gamma = basis["gamma"]
    report.true(
        "brackets with the central element scale by the counit",
        all(
            uqsu2.adjoint(u, gamma) == gamma.scaled(counit(u))
            for u in basis.values()
        ),
        "[u, gamma] = eps(u) gamma",
    )
    cob = change_of_basis_check()
    report.true(
        "matrix-functional and braided bases are exact linear combinations",
        cob["passed"],
        f"coordinates over {', '.join(cob['forward_names'])}",
    )
    return report


def suite_tangent_conditions() -> Report:
    report = Report("check-L")
    ts = casimir_tangent_space()
    for cond in check_tangent_space(ts.elements):
        report.true(
            f"Casimir span: {cond.name}",
            cond.passed,
            "; ".join(cond.details) or f"{ts.dimension} elements",
        )
    bad = check_tangent_space([XP])
    report.true(
        "span{Xp}: counit condition holds",
        bad[0].passed,
        "eps(Xp) = 0",
    )
    report.true(
        "span{Xp}: coproduct condition fails",
        not bad[2].passed,
        "; ".join(bad[2].details),
    )
    hxyg = list(braided_lie_basis().values())
    for cond in check_tangent_space(hxyg):
        report.true(f"braided basis span: {cond.name}", cond.passed,
                    "; ".join(cond.details) or "h, x, y, gamma")
    return report


# ---------------------------------------------------------------------------
# line and plane calculi suites
# ---------------------------------------------------------------------------

def _seeded_functions(alg, rng, nvars):
    coords = [alg.coordinate(i) for i in range(nvars)]
    atoms = list(coords)
    atoms.append(coords[0] ** 2 + 1)
    if nvars == 2:
        atoms.append(coords[0] * coords[1])
    atoms.append(alg.coerce(1) / (sum(coords, alg.coerce(1)) + 1))
    f = alg.coerce(rng.randint(1, 3))
    for _ in range(rng.randint(1, 2)):
        pick = atoms[rng.randrange(len(atoms))]
        f = f * pick if rng.random() < 0.5 else f + pick
    return f


def suite_jets(pairs: int = 10, seed: int = 11) -> Report:
    report = Report("jets")
    for n in range(1, 6):
        space = tangent_space_from_c(jet_generator(n))
        report.true(
            f"generator p^{n + 1}/{n + 1}! spans a tangent space of dimension {n}",
            space.dimension == n and translation_closure_holds(space),
            ", ".join(space.render_basis()),
        )

    spec = make_calculus("jet:2", symbolic=True)
    alg = spec.algebra
    f = alg.symbol("f")
    dx, w = spec.basis_one_form(0), spec.basis_one_form(1)
    report.equal(
        "f dx = dx f + 2 w f'",
        spec.left_mult(f, dx),
        spec.right_mult(dx, f) + spec.right_mult(w, 2 * alg.diff(f)),
    )
    report.equal("f w = w f", spec.left_mult(f, w), spec.right_mult(w, f))
    report.equal(
        "d f = dx f' + w f''",
        spec.d0(f),
        spec.right_mult(dx, alg.diff(f)) + spec.right_mult(w, alg.diff(alg.diff(f))),
    )
    report.equal("d w = (dx)^2", spec.d(w), spec.two_form(1, 0))
    report.equal("w ^ dx = -(dx ^ w)", spec.wedge(w, dx), -spec.wedge(dx, w))
    report.true("w ^ w = 0", spec.wedge(w, w).is_zero, "top-degree square")
    two = spec.two_form(alg.symbol("a"), alg.symbol("b"))
    report.equal(
        "two-forms are central",
        spec.left_mult(f, two),
        spec.right_mult(two, f),
    )

    rational = make_calculus("jet:2")
    x = rational.algebra.coordinate(0)
    report.equal(
        "w = (x dx - dx x)/2",
        rational.right_mult(
            rational.left_mult(x, rational.basis_one_form(0))
            - rational.right_mult(rational.basis_one_form(0), x),
            Fraction(1, 2),
        ),
        rational.basis_one_form(1),
    )

    rng = random.Random(seed)
    ok_leibniz = True
    ok_d2 = True
    for _ in range(pairs):
        ff = _seeded_functions(rational.algebra, rng, 1)
        gg = _seeded_functions(rational.algebra, rng, 1)
        lhs = rational.d0(ff * gg)
        rhs = rational.right_mult(rational.d0(ff), gg) + rational.left_mult(
            ff, rational.d0(gg)
        )
        ok_leibniz = ok_leibniz and lhs == rhs
        ok_d2 = ok_d2 and rational.d(rational.d0(ff)).is_zero
    report.true(
        "derivative is a bimodule derivation on seeded pairs",
        ok_leibniz,
        f"{pairs} pairs, seed {seed}",
    )
    report.true("d squared vanishes on seeded sample", ok_d2, f"{pairs} functions")
    return report


def suite_finite_differences(pairs: int = 10, seed: int = 7) -> Report:
    report = Report("finite-diff")
    space1 = tangent_space_from_c(finite_difference_generator(1))
    report.true(
        "exponential generator spans a 1-dimensional tangent space",
        space1.dimension == 1 and translation_closure_holds(space1),
        ", ".join(space1.render_basis()),
    )
    space2 = tangent_space_from_c(finite_difference_generator(2))
    report.true(
        "plane exponential generator spans a 2-dimensional tangent space",
        space2.dimension == 2 and translation_closure_holds(space2),
        ", ".join(space2.render_basis()),
    )

    fd1 = make_calculus("fd:1")
    alg = fd1.algebra
    x, lam = alg.coordinate(0), alg.spacing(0)
    dx = fd1.basis_one_form(0)
    report.equal(
        "x dx - dx x = lam dx",
        fd1.left_mult(x, dx) - fd1.right_mult(dx, x),
        fd1.right_mult(dx, lam),
    )
    report.equal(
        "d x^2 = dx (2x + lam)",
        fd1.d0(x**2),
        fd1.right_mult(dx, 2 * x + lam),
    )
    report.true(
        "the line calculus has no forms above degree one",
        fd1.basis_size(2) == 0 and fd1.d(fd1.d0(x**3)).is_zero,
        "second degree is the zero module",
    )

    fd2 = make_calculus("fd:2", symbolic=True)
    alg2 = fd2.algebra
    f = alg2.symbol("f")
    dxf, dyf = fd2.basis_one_form(0), fd2.basis_one_form(1)
    report.equal(
        "f dx = dx f(x+lam, y)",
        fd2.left_mult(f, dxf),
        fd2.right_mult(dxf, alg2.shift(f, 0)),
    )
    report.equal(
        "f dy = dy f(x, y+mu)",
        fd2.left_mult(f, dyf),
        fd2.right_mult(dyf, alg2.shift(f, 1)),
    )
    report.equal("dy ^ dx = -(dx ^ dy)", fd2.wedge(dyf, dxf), -fd2.wedge(dxf, dyf))
    report.true(
        "(dx)^2 and (dy)^2 vanish",
        fd2.wedge(dxf, dxf).is_zero and fd2.wedge(dyf, dyf).is_zero,
        "diagonal wedges",
    )
    vol = fd2.two_form(1)
    report.equal(
        "f (dx^dy) = (dx^dy) f(x+lam, y+mu)",
        fd2.left_mult(f, vol),
        fd2.right_mult(vol, alg2.shift(alg2.shift(f, 0), 1)),
    )

    rational = make_calculus("fd:2")
    rng = random.Random(seed)
    ok_leibniz = True
    ok_d2 = True
    ok_braided = True
    for _ in range(pairs):
        ff = _seeded_functions(rational.algebra, rng, 2)
        gg = _seeded_functions(rational.algebra, rng, 2)
        lhs = rational.d0(ff * gg)
        rhs = rational.right_mult(rational.d0(ff), gg) + rational.left_mult(
            ff, rational.d0(gg)
        )
        ok_leibniz = ok_leibniz and lhs == rhs
        ok_d2 = ok_d2 and rational.d(rational.d0(ff)).is_zero
        for i in range(2):
            lhs2 = rational.partial(i, ff * gg)
            rhs2 = rational.partial(i, ff) * gg
            for j, h in rational.braiding_inverse(ff, i):
                rhs2 = rhs2 + h * rational.partial(j, gg)
            ok_braided = ok_braided and (lhs2 - rhs2).is_zero
    report.true(
        "derivative is a bimodule derivation on seeded pairs",
        ok_leibniz,
        f"{pairs} pairs, seed {seed}",
    )
    report.true("d squared vanishes on seeded sample", ok_d2, f"{pairs} functions")
    report.true(
        "partials satisfy the braided product rule on seeded pairs",
        ok_braided,
        f"{pairs} pairs",
    )
    return report


# ---------------------------------------------------------------------------
# gauge suites
# ---------------------------------------------------------------------------

def suite_gauge_jet() -> Report:
    report = Report("gauge-jet")
    spec = make_calculus("jet:2", symbolic=True)
    alg = spec.algebra
    a, b, gam, psi = (alg.symbol(n) for n in ("a", "b", "gam", "psi"))
    alpha = spec.one_form(a, b)

    F = gauge_mod.curvature(spec, alpha)
    report.equal(
        "curvature of dx a + w b matches its closed form",
        F,
        spec.two_form(*gauge_mod.jet2_curvature_components(spec, a, b)),
    )
    report.equal(
        "gauge transform matches its closed form",
        gauge_mod.gauge_transform(spec, alpha, gam),
        spec.one_form(*gauge_mod.jet2_gauge_components(spec, a, b, gam)),
    )
    report.true(
        "connection is flat exactly when a' = a^2 + b",
        gauge_mod.is_flat(
            spec, spec.one_form(a, alg.diff(a) - a * a)
        )
        and not gauge_mod.is_flat(spec, spec.one_form(a, alg.diff(a) - a * a + 1)),
        "flatness defect a' - a^2 - b",
    )
    report.extend(gauge_mod.verify_gauge_lemmas(spec, alpha, gam, psi))

    rational = make_calculus("jet:2")
    x = rational.algebra.coordinate(0)
    report.equal(
        "pure gauge by gamma = x",
        gauge_mod.pure_gauge(rational, x).render(),
        "dx*(1/x) + w*(-2/x^2)",
    )
    report.true(
        "pure gauge connections by x, x^2, 1 + x^2 are flat",
        all(
            gauge_mod.is_flat(rational, gauge_mod.pure_gauge(rational, g))
            for g in (x, x**2, 1 + x**2)
        ),
        "curvature vanishes exactly",
    )

    adj = gauge_mod.covariant_expansion_report()
    report.true(
        "engine expansion of nabla on one-forms matches the derived form",
        adj["engine_matches_derived"] and not adj["engine_matches_variant"],
        "derived: " + "; ".join(
            f"{d['position']}: {d['derived']}" for d in adj["discrepancies"]
        ),
    )
    report.true(
        "the transcribed variant differs in two coefficients and is rejected",
        len(adj["discrepancies"]) == 2
        and adj["derived_satisfies_curvature_identity"]
        and not adj["variant_satisfies_curvature_identity"],
        "variant: " + "; ".join(
            f"{d['position']}: {d['variant']}" for d in adj["discrepancies"]
        ),
    )
    return report


def suite_gauge_fd() -> Report:
    report = Report("gauge-fd")
    spec = make_calculus("fd:2", symbolic=True)
    alg = spec.algebra
    a, b, gam, psi = (alg.symbol(n) for n in ("a", "b", "gam", "psi"))
    alpha = spec.one_form(a, b)

    F = gauge_mod.curvature(spec, alpha)
    report.equal(
        "curvature of dx a + dy b matches its closed form",
        F.coeffs[0],
        gauge_mod.fd2_curvature_component(spec, a, b),
    )
    report.equal(
        "gauge transform matches its closed form",
        gauge_mod.gauge_transform(spec, alpha, gam),
        spec.one_form(*gauge_mod.fd2_gauge_components(spec, a, b, gam)),
    )
    Ft = gauge_mod.curvature(spec, gauge_mod.gauge_transform(spec, alpha, gam))
    report.equal(
        "curvature transforms by gamma / gamma(x+lam, y+mu)",
        Ft,
        spec.right_mult(F, gauge_mod.fd2_curvature_transform_factor(spec, gam)),
    )
    report.extend(gauge_mod.verify_gauge_lemmas(spec, alpha, gam, psi))

    rational = make_calculus("fd:2")
    x = rational.algebra.coordinate(0)
    report.equal(
        "pure gauge by gamma = x",
        gauge_mod.pure_gauge(rational, x).render(),
        "dx*(1/(lam + x))",
    )
    report.true(
        "pure gauge connections by x, x^2, x + 3 are flat",
        all(
            gauge_mod.is_flat(rational, gauge_mod.pure_gauge(rational, g))
            for g in (x, x**2, x + 3)
        ),
        "curvature vanishes exactly",
    )
    return report


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITES = {
    "hopf": suite_hopf,
    "casimir": suite_casimir,
    "bralie": suite_braided_lie,
    "check-L": suite_tangent_conditions,
    "jets": suite_jets,
    "finite-diff": suite_finite_differences,
    "gauge-jet": suite_gauge_jet,
    "gauge-fd": suite_gauge_fd,
}

SUITE_ORDER = tuple(SUITES)


def run_suite(name: str) -> Report:
    try:
        builder = SUITES[name]
    except KeyError:
        raise KeyError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_ORDER)} or 'all'"
        ) from None
    return builder()


def run_all() -> list[Report]:
    return [SUITES[name]() for name in SUITE_ORDER]
