"""Expression parsing: round-trips against renders, modes, error positions."""

import random

import pytest

from bicalc.expressions import (
    ExpressionError,
    parse_coordinate_function,
    parse_form,
    parse_generator_function,
    parse_uq,
    split_components,
)
from bicalc.rn_calculus import (
    finite_difference_generator,
    jet_generator,
    make_calculus,
)
from bicalc.scalars import COORD_FIELD, QFIELD
from bicalc.suites import random_uq_element
from bicalc.uqsu2 import K, K_INV, ONE, XM, XP, UqElement, casimir
from bicalc import gauge

q = QFIELD.gen("q")


# -- algebra elements --------------------------------------------------------


def test_generators_parse():
    assert parse_uq("Xp") == XP
    assert parse_uq("K*K^-1") == ONE
    assert parse_uq("Xm*Xp - Xp*Xm") == parse_uq("(K^-2 - K^2)/(q - q^-1)")


def test_half_integer_powers_of_q():
    assert parse_uq("q^(1/2)") == ONE.scaled(QFIELD.half_power(1))
    assert parse_uq("q^(-3/2)") == ONE.scaled(QFIELD.half_power(-3))
    assert parse_uq("q^(1/2)*q^(1/2)") == ONE.scaled(q)


def test_casimir_renders_round_trip():
    C, c = casimir()
    assert parse_uq(C.render()) == C
    assert parse_uq(c.render()) == c


def test_random_elements_round_trip():
    rng = random.Random(3)
    for _ in range(30):
        u = random_uq_element(rng)
        assert parse_uq(u.render()) == u


def test_uq_parse_errors_carry_positions():
    with pytest.raises(ExpressionError) as err:
        parse_uq("Xp + ")
    assert err.value.pos == 5
    with pytest.raises(ExpressionError, match="half-integer"):
        parse_uq("K^(1/2)")
    with pytest.raises(ExpressionError, match="integer and half-integer"):
        parse_uq("q^(1/3)")
    with pytest.raises(ExpressionError, match="unknown symbol"):
        parse_uq("Xq")
    with pytest.raises(ExpressionError, match="invertible"):
        parse_uq("Xp^-1")
    with pytest.raises(ExpressionError, match="division"):
        parse_uq("1/Xp")


# -- coordinate functions ----------------------------------------------------


def test_coordinate_functions_round_trip():
    for text in ("x", "(lam + 2*x)/x^2", "1/(x*(lam + x))", "x^2*y - mu"):
        f = parse_coordinate_function(text)
        assert parse_coordinate_function(f.render()) == f


def test_coordinate_functions_reject_unknown_names():
    with pytest.raises(ExpressionError, match="unknown symbol"):
        parse_coordinate_function("z + 1")
    with pytest.raises(ExpressionError, match="division by zero"):
        parse_coordinate_function("1/(x - x)")


def test_coordinate_field_matches_package_field():
    f = parse_coordinate_function("x + lam")
    assert f == COORD_FIELD.gen("x") + COORD_FIELD.gen("lam")


# -- graded forms ------------------------------------------------------------


def test_rational_forms_round_trip():
    spec = make_calculus("jet:2")
    x = spec.algebra.coordinate(0)
    samples = [
        spec.d0(x**3),
        spec.one_form(1 / x, -2 / x**2),
        gauge.curvature(spec, spec.one_form(x, x**2)),
    ]
    for form in samples:
        assert parse_form(form.render(), spec) == form


def test_symbolic_forms_round_trip():
    spec = make_calculus("jet:2", symbolic=True)
    alg = spec.algebra
    a, b = alg.symbol("a"), alg.symbol("b")
    F = gauge.curvature(spec, spec.one_form(a, b))
    assert parse_form(F.render(), spec) == F
    nabla = gauge.cov_deriv_scalar(spec, spec.one_form(a, b), alg.symbol("psi"))
    assert parse_form(nabla.render(), spec) == nabla


def test_fd_forms_round_trip():
    fd2 = make_calculus("fd:2")
    x, y = fd2.algebra.coordinate(0), fd2.algebra.coordinate(1)
    for form in (fd2.d0(x * y + x**2), fd2.wedge(fd2.d0(x * y), fd2.d0(y))):
        assert parse_form(form.render(), fd2) == form


def test_two_form_atoms_tokenize_as_literals():
    spec = make_calculus("jet:2", symbolic=True)
    a = spec.algebra.symbol("a")
    assert parse_form("(dx)^2*a + dx^w*a'", spec) == spec.two_form(
        a, spec.algebra.diff(a)
    )


def test_primes_mean_derivatives_in_symbolic_forms():
    spec = make_calculus("jet:2", symbolic=True)
    alg = spec.algebra
    assert parse_form("a''", spec) == spec.function(alg.diff(alg.diff(alg.symbol("a"))))


def test_shift_names_in_symbolic_fd_forms():
    spec = make_calculus("fd:2", symbolic=True)
    alg = spec.algebra
    f = alg.symbol("f")
    rendered = spec.left_mult(f, spec.basis_one_form(0)).render()
    assert rendered == "dx*f(x+lam,y)"
    assert parse_form(rendered, spec) == spec.right_mult(
        spec.basis_one_form(0), alg.shift(f, 0)
    )


def test_bare_functions_become_degree_zero_forms():
    spec = make_calculus("fd:1")
    form = parse_form("x^2 + lam", spec)
    assert form.degree == 0


def test_form_parse_errors():
    spec = make_calculus("jet:2")
    with pytest.raises(ExpressionError):
        parse_form("dx*(", spec)
    with pytest.raises(ExpressionError, match="unknown symbol"):
        parse_form("dz*x", spec)
    with pytest.raises(ExpressionError):
        parse_form("dx*dx", spec)  # wedge needs the ^ table, * is not it
    symbolic = make_calculus("jet:2", symbolic=True)
    with pytest.raises(ExpressionError):
        parse_form("a'''''''", symbolic)  # beyond the derivative order cap


# -- generator functions -----------------------------------------------------


def test_jet_generators_parse_to_the_package_ones():
    for n, text in ((1, "p^2/2"), (2, "p^3/6"), (3, "p^4/24")):
        built = jet_generator(n)
        parsed = parse_generator_function(text)
        assert parsed.vector == built.vector
        assert parsed.rates == built.rates


def test_exponential_generator_parses_to_the_package_one():
    built = finite_difference_generator(1)
    parsed = parse_generator_function("exp(lam*p)/lam^2")
    assert parsed.vector == built.vector
    assert parsed.rates == built.rates


def test_two_variable_generators_infer_the_variable_count():
    g = parse_generator_function("p1^2/2 + p2^3/6")
    assert g.nvars == 2
    built = finite_difference_generator(2)
    parsed = parse_generator_function("exp(lam*p1)/lam^2 + exp(mu*p2)/mu^2")
    assert parsed.vector == built.vector
    assert parsed.rates == built.rates


def test_generator_parse_errors():
    with pytest.raises(ExpressionError, match="mix"):
        parse_generator_function("p + p1")
    with pytest.raises(ExpressionError):
        parse_generator_function("lam^2")  # no momentum dependence
    with pytest.raises(ExpressionError):
        parse_generator_function("exp(p^2)")  # exponent must be linear
    with pytest.raises(ExpressionError, match="one exponential rate"):
        parse_generator_function("exp(lam*p) + exp(mu*p)")


def test_cancelled_exponentials_do_not_pin_a_rate():
    g = parse_generator_function("0*exp(lam*p) + exp(mu*p)")
    assert g.rates == parse_generator_function("exp(mu*p)").rates


# -- component splitting -----------------------------------------------------


def test_split_components_respects_parentheses():
    assert split_components("a, b") == ["a", "b"]
    assert split_components("f(x, y), g") == ["f(x, y)", "g"]
    assert split_components("a") == ["a"]
