"""Tests for the line and plane calculi and their tangent spaces."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bicalc.rn_calculus import (
    CalculusError,
    GEN_FIELD,
    GeneratorFunction,
    GeneratorTerm,
    JetCalculus,
    finite_difference_generator,
    jet_generator,
    make_calculus,
    tangent_space_from_c,
    translation_closure_holds,
)
from bicalc.scalars import ScalarError


# ---------------------------------------------------------------------------
# frozen oracles: hand-computed values the engine must reproduce
# ---------------------------------------------------------------------------

def test_oracle_jet_partials_on_cube():
    jet2 = make_calculus("jet:2")
    x = jet2.algebra.coordinate(0)
    f = x**3
    assert jet2.partial(0, f) == 3 * x**2
    assert jet2.partial(1, f) == 6 * x
    assert jet2.d0(f).render() == "dx*(3*x^2) + w*(6*x)"


def test_oracle_fd_partial_is_difference_quotient():
    fd1 = make_calculus("fd:1")
    alg = fd1.algebra
    x = alg.coordinate(0)
    lam = alg.spacing(0)
    assert fd1.partial(0, x**2) == 2 * x + lam
    assert fd1.partial(0, alg.coerce(1) / x) == alg.coerce(-1) / (x * (x + lam))


def test_oracle_fd2_partials():
    fd2 = make_calculus("fd:2")
    alg = fd2.algebra
    x, y = alg.coordinate(0), alg.coordinate(1)
    mu = alg.spacing(1)
    assert fd2.partial(0, x * y) == y
    assert fd2.partial(1, x * y) == x
    assert fd2.partial(1, y**2) == 2 * y + mu


# ---------------------------------------------------------------------------
# two-jet calculus relations
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def jet2():
    return make_calculus("jet:2")


def test_jet2_dx_commutation(jet2):
    alg = jet2.algebra
    x = alg.coordinate(0)
    f = x**3 + alg.coerce(1) / (x + 2)
    dx = jet2.basis_one_form(0)
    w = jet2.basis_one_form(1)
    lhs = jet2.left_mult(f, dx)
    rhs = jet2.right_mult(dx, f) + jet2.right_mult(w, 2 * alg.diff(f))
    assert lhs == rhs


def test_jet2_w_commutes_with_functions(jet2):
    alg = jet2.algebra
    x = alg.coordinate(0)
    w = jet2.basis_one_form(1)
    f = x**2 - 3
    assert jet2.left_mult(f, w) == jet2.right_mult(w, f)


def test_jet2_w_is_half_commutator(jet2):
    x = jet2.algebra.coordinate(0)
    dx = jet2.basis_one_form(0)
    comm = jet2.left_mult(x, dx) - jet2.right_mult(dx, x)
    assert jet2.right_mult(comm, Fraction(1, 2)) == jet2.basis_one_form(1)


def test_jet2_second_degree_structure(jet2):
    dx = jet2.basis_one_form(0)
    w = jet2.basis_one_form(1)
    dx2 = jet2.two_form(1, 0)
    assert jet2.d(dx).is_zero
    assert jet2.d(w) == dx2
    assert jet2.wedge(w, dx) == -jet2.wedge(dx, w)
    assert jet2.wedge(w, w).is_zero
    assert jet2.wedge(dx, dx) == dx2


def test_jet2_two_forms_are_central(jet2):
    alg = jet2.algebra
    x = alg.coordinate(0)
    f = x**3 + alg.coerce(1) / x
    two = jet2.two_form(x, x**2 + 1)
    assert jet2.left_mult(f, two) == jet2.right_mult(two, f)


def test_jet2_exterior_derivative_squares_to_zero(jet2):
    alg = jet2.algebra
    x = alg.coordinate(0)
    for f in (x**5, alg.coerce(1) / (x - 1), (x**2 + 3) / (x**3 - 2)):
        assert jet2.d(jet2.d0(f)).is_zero


# ---------------------------------------------------------------------------
# general jet order
# ---------------------------------------------------------------------------

def test_jet_left_rule_binomials():
    jet3 = make_calculus("jet:3")
    x = jet3.algebra.coordinate(0)
    rule = jet3.left_rule(0, x**2)
    rendered = [(j, jet3.algebra.render(c)) for j, c in rule]
    assert rendered == [(0, "x^2"), (1, "4*x"), (2, "6")]
    rule_w = jet3.left_rule(1, x**2)
    rendered_w = [(j, jet3.algebra.render(c)) for j, c in rule_w]
    assert rendered_w == [(1, "x^2"), (2, "6*x")]


def test_jet_general_rule_specializes_to_two_jet():
    jet2 = make_calculus("jet:2")
    x = jet2.algebra.coordinate(0)
    f = x**4
    assert [(j, c) for j, c in jet2.left_rule(0, f)] == [
        (0, f),
        (1, 4 * x**3 * 2),
    ]


def test_jet_one_form_names():
    assert make_calculus("jet:1").one_form_names == ("dx",)
    assert make_calculus("jet:2").one_form_names == ("dx", "w")
    assert make_calculus("jet:4").one_form_names == ("dx", "w", "w3", "w4")


def test_jet_second_degree_only_for_two_jet():
    jet3 = make_calculus("jet:3")
    with pytest.raises(CalculusError):
        jet3.two_form(0, 0)
    with pytest.raises(CalculusError):
        jet3.d(jet3.d0(jet3.algebra.coordinate(0)))
    with pytest.raises(CalculusError):
        jet3.wedge(jet3.basis_one_form(0), jet3.basis_one_form(1))


def test_jet_dual_label_conversion():
    # the k-th projected derivative of the n-jet generator is a scaled monomial
    for n in (2, 3, 4):
        jet = JetCalculus(n)
        space = tangent_space_from_c(jet_generator(n))
        for k in range(1, n + 1):
            idx, scale = jet.dual_label(k)
            vec = space.vectors[k - 1]
            assert list(vec.keys()) == [("pow", 0, idx + 1)]
            assert vec[("pow", 0, idx + 1)] == GEN_FIELD.from_fraction(scale)


def test_jet_braiding_in_both_labelings():
    # monomial labels: the inverse braiding of f against p^m spreads over
    # p^(m-r) with binomial weights; in projected-derivative labels the same
    # map reads f against p_k going to p_(k+m) with 1/m! weights.
    n = 3
    jet = JetCalculus(n)
    alg = jet.algebra
    x = alg.coordinate(0)
    f = x**3 + x
    for k in range(1, n + 1):
        idx, scale = jet.dual_label(k)
        result = {}
        for j, h in jet.braiding_inverse(f, idx):
            result[j] = result.get(j, alg.zero) + h * scale
        g = f
        fact = 1
        for m in range(0, n - k + 1):
            if m:
                g = alg.diff(g)
                fact *= m
            idx2, sc2 = jet.dual_label(k + m)
            expected = g * sc2 / fact
            assert (result.get(idx2, alg.zero) - expected).is_zero
            result.pop(idx2, None)
        assert all(c.is_zero for c in result.values())


# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------

def test_fd1_bimodule_relation():
    fd1 = make_calculus("fd:1")
    alg = fd1.algebra
    x = alg.coordinate(0)
    lam = alg.spacing(0)
    dx = fd1.basis_one_form(0)
    comm = fd1.left_mult(x, dx) - fd1.right_mult(dx, x)
    assert comm == fd1.right_mult(dx, lam)
    assert fd1.left_mult(x**2, dx) == fd1.right_mult(dx, (x + lam) ** 2)


def test_fd1_second_degree_vanishes():
    fd1 = make_calculus("fd:1")
    x = fd1.algebra.coordinate(0)
    assert fd1.basis_size(2) == 0
    assert fd1.d(fd1.d0(x**3)).is_zero
    assert fd1.wedge(fd1.basis_one_form(0), fd1.basis_one_form(0)).is_zero


def test_fd2_bimodule_and_volume():
    fd2 = make_calculus("fd:2")
    alg = fd2.algebra
    x, y = alg.coordinate(0), alg.coordinate(1)
    lam, mu = alg.spacing(0), alg.spacing(1)
    dx, dy = fd2.basis_one_form(0), fd2.basis_one_form(1)
    assert fd2.left_mult(y, dx) == fd2.right_mult(dx, y)
    assert fd2.left_mult(x, dy) == fd2.right_mult(dy, x)
    assert fd2.left_mult(x, dx) - fd2.right_mult(dx, x) == fd2.right_mult(dx, lam)
    assert fd2.left_mult(y, dy) - fd2.right_mult(dy, y) == fd2.right_mult(dy, mu)
    assert fd2.wedge(dx, dx).is_zero
    assert fd2.wedge(dy, dy).is_zero
    assert fd2.wedge(dy, dx) == -fd2.wedge(dx, dy)
    vol = fd2.two_form(1)
    f = x * y
    shifted = alg.shift(alg.shift(f, 0), 1)
    assert fd2.left_mult(f, vol) == fd2.right_mult(vol, shifted)


def test_fd2_one_form_derivative():
    fd2 = make_calculus("fd:2")
    alg = fd2.algebra
    x, y = alg.coordinate(0), alg.coordinate(1)
    g = x * y**2
    form = fd2.right_mult(fd2.basis_one_form(0), g)
    expected = fd2.right_mult(fd2.two_form(1), -fd2.partial(1, g))
    assert fd2.d(form) == expected


# ---------------------------------------------------------------------------
# structural identities on random functions
# ---------------------------------------------------------------------------

def _functions_1d(spec):
    alg = spec.algebra
    x = alg.coordinate(0)
    atoms = [x, x**2 - 1, x**3, alg.coerce(1) / (x**2 + 1), (x + 2) / (x - 3)]
    return st.lists(st.sampled_from(range(len(atoms))), min_size=1, max_size=3).map(
        lambda ids: _combine(alg, [atoms[i] for i in ids])
    )


def _functions_2d(spec):
    alg = spec.algebra
    x, y = alg.coordinate(0), alg.coordinate(1)
    atoms = [x, y, x * y, x**2 + y, alg.coerce(1) / (x + y + 1)]
    return st.lists(st.sampled_from(range(len(atoms))), min_size=1, max_size=3).map(
        lambda ids: _combine(alg, [atoms[i] for i in ids])
    )


def _combine(alg, picks):
    out = alg.one
    for i, p in enumerate(picks):
        out = out * p if i % 2 == 0 else out + p
    return out


_SPECS = {
    "jet:2": make_calculus("jet:2"),
    "fd:1": make_calculus("fd:1"),
    "fd:2": make_calculus("fd:2"),
}


def _strategy(name):
    spec = _SPECS[name]
    return _functions_2d(spec) if name == "fd:2" else _functions_1d(spec)


@pytest.mark.parametrize("name", sorted(_SPECS))
def test_leibniz_rule(name):
    spec = _SPECS[name]

    @settings(max_examples=20, derandomize=True, deadline=None)
    @given(f=_strategy(name), g=_strategy(name))
    def run(f, g):
        lhs = spec.d0(f * g)
        rhs = spec.right_mult(spec.d0(f), g) + spec.left_mult(f, spec.d0(g))
        assert lhs == rhs

    run()


@pytest.mark.parametrize("name", sorted(_SPECS))
def test_braided_partial_leibniz(name):
    spec = _SPECS[name]

    @settings(max_examples=20, derandomize=True, deadline=None)
    @given(f=_strategy(name), g=_strategy(name))
    def run(f, g):
        for i in range(spec.basis_size(1)):
            lhs = spec.partial(i, f * g)
            rhs = spec.partial(i, f) * g
            for j, h in spec.braiding_inverse(f, i):
                rhs = rhs + h * spec.partial(j, g)
            assert (lhs - rhs).is_zero

    run()


@pytest.mark.parametrize("name", sorted(_SPECS))
def test_left_action_is_multiplicative(name):
    spec = _SPECS[name]

    @settings(max_examples=20, derandomize=True, deadline=None)
    @given(f=_strategy(name), g=_strategy(name))
    def run(f, g):
        for i in range(spec.basis_size(1)):
            theta = spec.basis_one_form(i)
            lhs = spec.left_mult(f, spec.left_mult(g, theta))
            rhs = spec.left_mult(f * g, theta)
            assert lhs == rhs

    run()


@pytest.mark.parametrize("name", ["jet:2", "fd:2"])
def test_wedge_middle_linearity(name):
    spec = _SPECS[name]

    @settings(max_examples=20, derandomize=True, deadline=None)
    @given(f=_strategy(name))
    def run(f):
        for i in range(spec.basis_size(1)):
            for j in range(spec.basis_size(1)):
                w1 = spec.basis_one_form(i)
                w2 = spec.basis_one_form(j)
                lhs = spec.wedge(spec.right_mult(w1, f), w2)
                rhs = spec.wedge(w1, spec.left_mult(f, w2))
                assert lhs == rhs

    run()


@pytest.mark.parametrize("name", sorted(_SPECS))
def test_d_squared_zero(name):
    spec = _SPECS[name]

    @settings(max_examples=20, derandomize=True, deadline=None)
    @given(f=_strategy(name))
    def run(f):
        assert spec.d(spec.d0(f)).is_zero

    run()


@pytest.mark.parametrize("name", ["jet:2", "fd:2"])
def test_graded_leibniz_for_one_forms(name):
    spec = _SPECS[name]

    @settings(max_examples=15, derandomize=True, deadline=None)
    @given(f=_strategy(name), g=_strategy(name))
    def run(f, g):
        for i in range(spec.basis_size(1)):
            theta_g = spec.right_mult(spec.basis_one_form(i), g)
            lhs = spec.d(spec.left_mult(f, theta_g))
            rhs = spec.wedge(spec.d0(f), theta_g) + spec.left_mult(f, spec.d(theta_g))
            assert lhs == rhs

    run()


# ---------------------------------------------------------------------------
# opaque coefficient modes
# ---------------------------------------------------------------------------

def test_opaque_1d_derivatives_and_display():
    spec = make_calculus("jet:2", symbolic=True)
    alg = spec.algebra
    a, b = alg.symbol("a"), alg.symbol("b")
    assert alg.render(alg.diff(a)) == "a'"
    assert alg.render(alg.diff(a * b)) == "a*b' + a'*b"
    assert alg.render(alg.diff(a / b)) == "(-a*b' + a'*b)/b^2"
    assert spec.d0(a).render() == "dx*a' + w*a''"
    assert spec.left_mult(a, spec.basis_one_form(0)).render() == "dx*a + w*(2*a')"
    third = alg.diff(alg.diff(alg.diff(a)))
    assert alg.render(third) == "a'''"


def test_opaque_1d_order_cap():
    alg = make_calculus("jet:2", symbolic=True).algebra
    f = alg.symbol("a", 6)
    with pytest.raises(CalculusError):
        alg.diff(f)
    with pytest.raises(CalculusError):
        alg.shift(alg.symbol("a"))
    with pytest.raises(CalculusError):
        alg.symbol("nosuch")


def test_opaque_2d_shifts_and_display():
    spec = make_calculus("fd:2", symbolic=True)
    alg = spec.algebra
    a = alg.symbol("a")
    assert alg.render(alg.shift(a, 0)) == "a(x+lam,y)"
    assert alg.render(alg.shift(alg.shift(a, 0), 1)) == "a(x+lam,y+mu)"
    assert alg.render(alg.shift(alg.shift(a, 0), 0)) == "a(x+2*lam,y)"
    d = spec.d0(a)
    assert d.render() == "dx*((-a + a(x+lam,y))/lam) + dy*((-a + a(x,y+mu))/mu)"
    vol = spec.two_form(1)
    assert spec.left_mult(a, vol).render() == "dx^dy*a(x+lam,y+mu)"


def test_opaque_2d_shift_cap_and_no_derivative():
    alg = make_calculus("fd:2", symbolic=True).algebra
    a = alg.symbol("a")
    s = alg.shift(alg.shift(a, 0), 0)
    with pytest.raises(CalculusError):
        alg.shift(s, 0)
    with pytest.raises(CalculusError):
        alg.diff(a)
    # shifting an expression only caps the atoms it actually contains
    b = alg.symbol("b")
    assert alg.render(alg.shift(b, 1)) == "b(x,y+mu)"


def test_opaque_leibniz_symbolically():
    for name in ("jet:2", "fd:2"):
        spec = make_calculus(name, symbolic=True)
        alg = spec.algebra
        f, g = alg.symbol("f"), alg.symbol("g")
        lhs = spec.d0(f * g)
        rhs = spec.right_mult(spec.d0(f), g) + spec.left_mult(f, spec.d0(g))
        assert lhs == rhs
        assert spec.d(spec.d0(f * g + f / g)).is_zero


def test_symbolic_fd1_not_provided():
    with pytest.raises(CalculusError):
        make_calculus("fd:1", symbolic=True)


# ---------------------------------------------------------------------------
# form bookkeeping errors
# ---------------------------------------------------------------------------

def test_form_errors():
    jet2 = make_calculus("jet:2")
    fd2 = make_calculus("fd:2")
    with pytest.raises(CalculusError):
        jet2.one_form(1)  # needs two coefficients
    with pytest.raises(CalculusError):
        jet2.basis_one_form(0) + fd2.basis_one_form(0)
    with pytest.raises(CalculusError):
        jet2.basis_one_form(0) + jet2.two_form(1, 0)
    with pytest.raises(CalculusError):
        jet2.wedge(jet2.two_form(1, 0), jet2.basis_one_form(0))
    with pytest.raises(CalculusError):
        jet2.d(jet2.two_form(1, 0))
    with pytest.raises(ScalarError):
        jet2.algebra.invert(jet2.algebra.zero)


def test_make_calculus_errors():
    with pytest.raises(CalculusError):
        make_calculus("jet:0")
    with pytest.raises(CalculusError):
        make_calculus("jet:x")
    with pytest.raises(CalculusError):
        make_calculus("fd:3")
    with pytest.raises(CalculusError):
        make_calculus("torus")


def test_render_zero_and_one_coefficients():
    jet2 = make_calculus("jet:2")
    assert jet2.zero_form(1).render() == "0"
    assert jet2.one_form(1, 0).render() == "dx"
    assert jet2.one_form(0, -1).render() == "w*(-1)"


# ---------------------------------------------------------------------------
# generator functions and tangent spaces
# ---------------------------------------------------------------------------

def test_jet_generator_dimensions():
    for n in range(1, 6):
        space = tangent_space_from_c(jet_generator(n))
        assert space.dimension == n
        assert space.labels == tuple(f"p_{k}" for k in range(1, n + 1))
        assert translation_closure_holds(space)


def test_jet_generator_vectors_are_scaled_monomials():
    space = tangent_space_from_c(jet_generator(2))
    assert space.render_basis() == ["(1/2)*p^2", "p"]


def test_exponential_generator_dimension_one_per_variable():
    space = tangent_space_from_c(finite_difference_generator(1))
    assert space.dimension == 1
    assert translation_closure_holds(space)
    space2 = tangent_space_from_c(finite_difference_generator(2))
    assert space2.dimension == 2
    assert space2.labels == ("p_(1,0)", "p_(0,1)")
    assert translation_closure_holds(space2)


def test_mixed_polynomial_generator():
    c = GeneratorFunction(
        1, [GeneratorTerm(0, "pow", 2), GeneratorTerm(0, "pow", 3)]
    )
    space = tangent_space_from_c(c)
    assert space.dimension == 2
    assert translation_closure_holds(space)


def test_polynomial_two_variable_generator():
    c = GeneratorFunction(
        2,
        [
            GeneratorTerm(0, "pow", 3, Fraction(1, 6)),
            GeneratorTerm(1, "pow", 2, Fraction(1, 2)),
        ],
    )
    space = tangent_space_from_c(c)
    assert space.dimension == 3
    assert space.labels == ("p_(1,0)", "p_(2,0)", "p_(0,1)")
    assert translation_closure_holds(space)


def test_generator_validation():
    with pytest.raises(CalculusError):
        GeneratorFunction(1, [GeneratorTerm(0, "pow", 0, 5)])  # constant only
    with pytest.raises(CalculusError):
        GeneratorFunction(1, [GeneratorTerm(0, "exp", 0, 1, 0)])  # zero rate
    with pytest.raises(CalculusError):
        GeneratorFunction(
            1,
            [
                GeneratorTerm(0, "pow", 2),
                GeneratorTerm(0, "exp", 0, 1, GEN_FIELD.gen("lam")),
            ],
        )
    with pytest.raises(CalculusError):
        GeneratorFunction(1, [GeneratorTerm(1, "pow", 2)])  # variable out of range
    with pytest.raises(CalculusError):
        GeneratorFunction(
            1,
            [
                GeneratorTerm(0, "exp", 0, 1, GEN_FIELD.gen("lam")),
                GeneratorTerm(0, "exp", 0, 1, GEN_FIELD.gen("mu")),
            ],
        )


def test_exponential_generator_rendering():
    space = tangent_space_from_c(finite_difference_generator(1))
    assert space.render_basis() == ["(1/lam)*exp(lam*p) + (-1/lam)"]
