"""Differential calculi on the line and the plane with deformed bimodule rules.

A calculus is specified by a basis of invariant one-forms theta_i, a
left-multiplication rule moving functions across them,

    f . theta_i = sum_j theta_j . g_j(f),

the dual partial operators defining d f = sum_i theta_i . partial_i(f),
and (where constructed) a basis of two-forms with a wedge table and the
derivatives of the theta_i.  Three families are provided:

  jet:n   n-jet calculus on the line; d f sees the first n derivatives,
          f . dx = dx . f + binomial corrections in higher forms.
  fd:1    finite differences on the line: f . dx = dx . f(x+lam),
          d f = dx . (f(x+lam) - f)/lam; the square of the calculus
          vanishes identically by construction.
  fd:2    finite differences on the plane, spacings lam and mu, with
          the one-dimensional rule in each direction and a volume form
          dx^dy.

Every form is stored in normal order, basis element times a right
coefficient.  Coefficients are either rational functions of the
coordinates or opaque function symbols carrying a formal derivative
(one-dimensional case) or formal shifts (two-dimensional case), so the
same normalization engine computes both concrete examples and fully
symbolic identities.

The quantum tangent spaces behind these calculi arise from a generator
function c of the momentum variable: the span of the projected
derivatives c^(n)(p) - c^(n)(0) is finite-dimensional for polynomial
and single-exponential c, and tangent_space_from_c computes it exactly
together with its dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple

from .linalg import SpanBasis
from .scalars import COORD_FIELD, Scalar, ScalarError, ScalarField


class CalculusError(Exception):
    """Unsupported operation for the chosen calculus or coefficient mode."""


# ---------------------------------------------------------------------------
# coefficient algebras
# ---------------------------------------------------------------------------

class RationalCoefficients:
    """Rational functions of the coordinates over Q(lam, mu)."""

    def __init__(self, nvars: int):
        if nvars not in (1, 2):
            raise CalculusError("only one or two coordinates are supported")
        self.nvars = nvars
        self.field = COORD_FIELD
        self.coords = ("x", "y")[:nvars]
        self.spacings = ("lam", "mu")[:nvars]
        self.zero = self.field.zero
        self.one = self.field.one
        self.lam = self.field.gen("lam")
        self.mu = self.field.gen("mu")

    def coerce(self, value) -> Scalar:
        return self.field.coerce(value)

    def coordinate(self, i: int = 0) -> Scalar:
        return self.field.gen(self.coords[i])

    def spacing(self, i: int = 0) -> Scalar:
        return self.field.gen(self.spacings[i])

    def diff(self, f: Scalar, var: int = 0) -> Scalar:
        return self.field.diff(f, self.coords[var])

    def shift(self, f: Scalar, var: int = 0) -> Scalar:
        name = self.coords[var]
        image = self.field.gen(name) + self.spacing(var)
        return self.field.substitute(f, {name: image})

    def invert(self, f: Scalar) -> Scalar:
        return self.coerce(f).inverse()

    def render(self, f: Scalar) -> str:
        return self.coerce(f).render()


_OPAQUE_NAMES = ("a", "b", "gam", "psi", "s", "t", "f", "g")
_MAX_ORDER = 6
_MAX_SHIFT = 2


class OpaqueCoefficients1D:
    """Opaque function symbols of one variable with a formal derivative.

    Atoms are a, a', a'', ... up to a fixed order; sums, products and
    quotients of atoms form the coefficient field, and the derivative
    acts by the chain rule.
    """

    def __init__(self):
        self.nvars = 1
        names = []
        self._successor: dict[str, str | None] = {}
        for base in _OPAQUE_NAMES:
            for k in range(_MAX_ORDER + 1):
                g = f"{base}_{k}"
                names.append(g)
                self._successor[g] = f"{base}_{k + 1}" if k < _MAX_ORDER else None

        def display(gen_name: str) -> str:
            base, order = gen_name.rsplit("_", 1)
            return base + "'" * int(order)

        self.field = ScalarField("opaque-1d", names, factor_display=display)
        self.zero = self.field.zero
        self.one = self.field.one
        self._ident = {g: self.field.gen(g).frac for g in names}

    def coerce(self, value) -> Scalar:
        return self.field.coerce(value)

    def symbol(self, base: str, order: int = 0) -> Scalar:
        if base not in _OPAQUE_NAMES:
            raise CalculusError(f"unknown opaque symbol {base!r}")
        if not 0 <= order <= _MAX_ORDER:
            raise CalculusError(f"derivative order {order} beyond {_MAX_ORDER}")
        return self.field.gen(f"{base}_{order}")

    def _lift(self, poly) -> Scalar:
        return Scalar(self.field, self.field._poly_substitute(poly, self._ident))

    def _poly_derivative(self, poly) -> Scalar:
        total = self.field.zero
        gens = self.field.gen_names
        for monom, coeff in poly.terms():
            for pos, e in enumerate(monom):
                if not e:
                    continue
                succ = self._successor[gens[pos]]
                if succ is None:
                    raise CalculusError(
                        f"formal derivative order beyond {_MAX_ORDER} on {gens[pos]}"
                    )
                term = self.field.from_int(int(coeff) * e)
                for pos2, e2 in enumerate(monom):
                    ee = e2 - (1 if pos2 == pos else 0)
                    if ee:
                        term = term * self.field.gen(gens[pos2]) ** ee
                term = term * self.field.gen(succ)
                total = total + term
        return total

    def diff(self, f: Scalar, var: int = 0) -> Scalar:
        f = self.coerce(f)
        num = self._lift(f.frac.numer)
        den = self._lift(f.frac.denom)
        dnum = self._poly_derivative(f.frac.numer)
        dden = self._poly_derivative(f.frac.denom)
        return (dnum * den - num * dden) / (den * den)

    def shift(self, f: Scalar, var: int = 0) -> Scalar:
        raise CalculusError("opaque one-dimensional symbols carry no shift")

    def invert(self, f: Scalar) -> Scalar:
        return self.coerce(f).inverse()

    def render(self, f: Scalar) -> str:
        return self.coerce(f).render()


class OpaqueCoefficients2D:
    """Opaque function symbols of two variables with formal shifts.

    Atoms are a, a(x+lam,y), a(x,y+mu), ... up to two lattice steps in
    each direction; shifting acts on atoms and extends to quotients.
    The spacings lam, mu live in the same field so difference quotients
    stay inside it.
    """

    def __init__(self):
        self.nvars = 2
        names = ["lam", "mu"]
        for base in _OPAQUE_NAMES:
            for i in range(_MAX_SHIFT + 1):
                for j in range(_MAX_SHIFT + 1):
                    names.append(f"{base}_{i}_{j}")

        def display(gen_name: str) -> str:
            if gen_name in ("lam", "mu"):
                return gen_name
            base, i, j = gen_name.split("_")
            i, j = int(i), int(j)
            if i == 0 and j == 0:
                return base
            xs = {0: "x", 1: "x+lam", 2: "x+2*lam"}[i]
            ys = {0: "y", 1: "y+mu", 2: "y+2*mu"}[j]
            return f"{base}({xs},{ys})"

        self.field = ScalarField("opaque-2d", names, factor_display=display)
        self.zero = self.field.zero
        self.one = self.field.one
        self.lam = self.field.gen("lam")
        self.mu = self.field.gen("mu")

    def coerce(self, value) -> Scalar:
        return self.field.coerce(value)

    def symbol(self, base: str, i: int = 0, j: int = 0) -> Scalar:
        if base not in _OPAQUE_NAMES:
            raise CalculusError(f"unknown opaque symbol {base!r}")
        if not (0 <= i <= _MAX_SHIFT and 0 <= j <= _MAX_SHIFT):
            raise CalculusError(f"shift ({i},{j}) beyond {_MAX_SHIFT} steps")
        return self.field.gen(f"{base}_{i}_{j}")

    def spacing(self, i: int = 0) -> Scalar:
        return self.lam if i == 0 else self.mu

    def diff(self, f: Scalar, var: int = 0) -> Scalar:
        raise CalculusError("opaque two-dimensional symbols carry shifts, not derivatives")

    def shift(self, f: Scalar, var: int = 0) -> Scalar:
        images = {}
        for g in self.field.gen_names:
            if g in ("lam", "mu"):
                continue
            base, i, j = g.split("_")
            i, j = int(i), int(j)
            if var == 0:
                i += 1
            else:
                j += 1
            if i > _MAX_SHIFT or j > _MAX_SHIFT:
                target = None
            else:
                target = f"{base}_{i}_{j}"
            images[g] = target
        f = self.coerce(f)
        used = set()
        for poly in (f.frac.numer, f.frac.denom):
            for monom, _ in poly.terms():
                for g, e in zip(self.field.gen_names, monom):
                    if e:
                        used.add(g)
        img_scalars = {}
        for g in used:
            if g in ("lam", "mu"):
                continue
            if images[g] is None:
                raise CalculusError(f"formal shift beyond {_MAX_SHIFT} steps on {g}")
            img_scalars[g] = self.field.gen(images[g])
        return self.field.substitute(f, img_scalars)

    def invert(self, f: Scalar) -> Scalar:
        return self.coerce(f).inverse()

    def render(self, f: Scalar) -> str:
        return self.coerce(f).render()


# ---------------------------------------------------------------------------
# graded forms
# ---------------------------------------------------------------------------

class GradedForm:
    """Element of degree 0, 1 or 2, in normal order: basis . coefficient."""

    __slots__ = ("spec", "degree", "coeffs")

    def __init__(self, spec: "CalculusSpec", degree: int, coeffs: Iterable[Scalar]):
        self.spec = spec
        self.degree = degree
        coeffs = tuple(spec.algebra.coerce(c) for c in coeffs)
        if len(coeffs) != spec.basis_size(degree):
            raise CalculusError(
                f"{spec.name}: degree {degree} expects {spec.basis_size(degree)} coefficients"
            )
        self.coeffs = coeffs

    def _check_mate(self, other: "GradedForm"):
        if not isinstance(other, GradedForm):
            raise CalculusError("not a graded form")
        if other.spec is not self.spec or other.degree != self.degree:
            raise CalculusError("forms live on different calculi or degrees")

    def __add__(self, other):
        self._check_mate(other)
        return GradedForm(
            self.spec, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check_mate(other)
        return GradedForm(
            self.spec, self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return GradedForm(self.spec, self.degree, [-a for a in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, GradedForm):
            return NotImplemented
        return (
            self.spec is other.spec
            and self.degree == other.degree
            and all((a - b).is_zero for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def render(self) -> str:
        names = self.spec.basis_names(self.degree)
        if self.degree == 0:
            return self.spec.algebra.render(self.coeffs[0])
        parts = []
        for name, c in zip(names, self.coeffs):
            if c.is_zero:
                continue
            cs = self.spec.algebra.render(c)
            if cs == "1":
                parts.append(name)
            else:
                atomic = not any(tok in cs for tok in (" + ", " - ", "*", "/")) and not cs.startswith("-")
                parts.append(f"{name}*{cs}" if atomic else f"{name}*({cs})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return self.render()


# ---------------------------------------------------------------------------
# calculi
# ---------------------------------------------------------------------------

class CalculusSpec:
    """Base class: holds the tables and assembles the graded operations."""

    name: str
    algebra: object
    one_form_names: tuple[str, ...]
    two_form_names: tuple[str, ...] | None  # None: not constructed; (): zero module

    def basis_size(self, degree: int) -> int:
        if degree == 0:
            return 1
        if degree == 1:
            return len(self.one_form_names)
        if degree == 2:
            if self.two_form_names is None:
                raise CalculusError(f"{self.name}: no second-degree data is constructed")
            return len(self.two_form_names)
        raise CalculusError("degree beyond the top of the calculus")

    def basis_names(self, degree: int) -> tuple[str, ...]:
        if degree == 0:
            return ("1",)
        if degree == 1:
            return self.one_form_names
        self.basis_size(2)
        return self.two_form_names

    # tables, provided by subclasses ------------------------------------

    def partial(self, i: int, f) -> Scalar:
        raise NotImplementedError

    def left_rule(self, i: int, f) -> list[tuple[int, Scalar]]:
        """Decompose f . theta_i as sum_j theta_j . (coefficient)."""
        raise NotImplementedError

    def braiding_inverse(self, f, i: int) -> list[tuple[int, Scalar]]:
        """Decompose the inverse braiding of f (x) e_i over e_j (x) coefficient."""
        raise NotImplementedError

    def wedge_table(self, i: int, j: int) -> list[tuple[int, int]]:
        raise NotImplementedError

    def d_theta(self, i: int) -> "GradedForm":
        raise NotImplementedError

    def two_left_rule(self, t: int, f) -> list[tuple[int, Scalar]]:
        raise NotImplementedError

    # constructors --------------------------------------------------------

    def function(self, f) -> GradedForm:
        return GradedForm(self, 0, [self.algebra.coerce(f)])

    def one_form(self, *coeffs) -> GradedForm:
        return GradedForm(self, 1, coeffs)

    def two_form(self, *coeffs) -> GradedForm:
        return GradedForm(self, 2, coeffs)

    def zero_form(self, degree: int) -> GradedForm:
        return GradedForm(self, degree, [self.algebra.zero] * self.basis_size(degree))

    def basis_one_form(self, i: int) -> GradedForm:
        coeffs = [self.algebra.zero] * self.basis_size(1)
        coeffs[i] = self.algebra.one
        return GradedForm(self, 1, coeffs)

    # assembled operations -------------------------------------------------

    def d(self, form: GradedForm) -> GradedForm:
        if form.degree == 0:
            return GradedForm(
                self, 1, [self.partial(i, form.coeffs[0]) for i in range(self.basis_size(1))]
            )
        if form.degree == 1:
            return self._d1(form)
        raise CalculusError(f"{self.name}: no exterior derivative beyond degree one")

    def d0(self, f) -> GradedForm:
        return self.d(self.function(f))

    def _d1(self, form: GradedForm) -> GradedForm:
        acc = self.zero_form(2)
        for i, f in enumerate(form.coeffs):
            if f.is_zero:
                continue
            acc = acc + self.right_mult(self.d_theta(i), f)
            acc = acc - self.wedge(self.basis_one_form(i), self.d0(f))
        return acc

    def left_mult(self, f, form: GradedForm) -> GradedForm:
        f = self.algebra.coerce(f)
        if form.degree == 0:
            return GradedForm(self, 0, [f * form.coeffs[0]])
        rule = self.left_rule if form.degree == 1 else self.two_left_rule
        acc = [self.algebra.zero] * self.basis_size(form.degree)
        for i, g in enumerate(form.coeffs):
            if g.is_zero:
                continue
            for j, h in rule(i, f):
                acc[j] = acc[j] + h * g
        return GradedForm(self, form.degree, acc)

    def right_mult(self, form: GradedForm, f) -> GradedForm:
        f = self.algebra.coerce(f)
        return GradedForm(self, form.degree, [c * f for c in form.coeffs])

    def wedge(self, w1: GradedForm, w2: GradedForm) -> GradedForm:
        if w1.spec is not self or w2.spec is not self:
            raise CalculusError("forms from a different calculus")
        total = w1.degree + w2.degree
        if total > 2:
            raise CalculusError(f"{self.name}: wedge beyond the top degree")
        if w1.degree == 0:
            return self.left_mult(w1.coeffs[0], w2)
        if w2.degree == 0:
            return self.right_mult(w1, w2.coeffs[0])
        acc = [self.algebra.zero] * self.basis_size(2)
        for i, f in enumerate(w1.coeffs):
            if f.is_zero:
                continue
            for j, g in enumerate(w2.coeffs):
                if g.is_zero:
                    continue
                # middle linearity: theta_i f ^ theta_j g = theta_i ^ (f.theta_j) g
                for k, h in self.left_rule(j, f):
                    for t, sign in self.wedge_table(i, k):
                        acc[t] = acc[t] + h * g * sign
        return GradedForm(self, 2, acc)


class JetCalculus(CalculusSpec):
    """n-jet calculus on the line: d f carries the first n derivatives."""

    def __init__(self, n: int, algebra=None):
        if n < 1:
            raise CalculusError("jet order must be at least 1")
        self.n = n
        self.name = f"jet:{n}"
        self.algebra = algebra if algebra is not None else RationalCoefficients(1)
        names = []
        for m in range(1, n + 1):
            names.append({1: "dx", 2: "w"}.get(m, f"w{m}"))
        self.one_form_names = tuple(names)
        self.two_form_names = ("(dx)^2", "dx^w") if n == 2 else None

    def partial(self, i: int, f) -> Scalar:
        f = self.algebra.coerce(f)
        for _ in range(i + 1):
            f = self.algebra.diff(f, 0)
        return f

    def left_rule(self, i: int, f) -> list[tuple[int, Scalar]]:
        m = i + 1
        f = self.algebra.coerce(f)
        out = []
        g = f
        for k in range(0, self.n - m + 1):
            if k:
                g = self.algebra.diff(g, 0)
            out.append((m + k - 1, g * comb(m + k, m)))
        return out

    def braiding_inverse(self, f, i: int) -> list[tuple[int, Scalar]]:
        m = i + 1
        f = self.algebra.coerce(f)
        out = []
        g = f
        for r in range(m):
            if r:
                g = self.algebra.diff(g, 0)
            out.append((m - r - 1, g * comb(m, r)))
        return out

    def dual_label(self, k: int) -> tuple[int, Fraction]:
        """Alternative labeling of the tangent basis by projected derivatives.

        The k-th projected derivative of the n-jet generator function is
        the monomial basis element of index n-k, divided by (n-k+1)!.
        """
        if not 1 <= k <= self.n:
            raise CalculusError("label out of range")
        power = self.n - k + 1
        fact = 1
        for i in range(2, power + 1):
            fact *= i
        return power - 1, Fraction(1, fact)

    def _need_two(self):
        if self.two_form_names is None:
            raise CalculusError(
                f"{self.name}: second-degree data is only constructed for jet:2"
            )

    def wedge_table(self, i: int, j: int) -> list[tuple[int, int]]:
        self._need_two()
        return {
            (0, 0): [(0, 1)],
            (0, 1): [(1, 1)],
            (1, 0): [(1, -1)],
            (1, 1): [],
        }[(i, j)]

    def d_theta(self, i: int) -> GradedForm:
        self._need_two()
        if i == 0:
            return self.zero_form(2)
        return self.two_form(self.algebra.one, self.algebra.zero)

    def two_left_rule(self, t: int, f) -> list[tuple[int, Scalar]]:
        self._need_two()
        return [(t, self.algebra.coerce(f))]


class FiniteDifference1D(CalculusSpec):
    """Finite differences on the line; the exterior square vanishes."""

    def __init__(self, algebra=None):
        self.name = "fd:1"
        self.algebra = algebra if algebra is not None else RationalCoefficients(1)
        self.one_form_names = ("dx",)
        self.two_form_names = ()

    def partial(self, i: int, f) -> Scalar:
        f = self.algebra.coerce(f)
        lam = self.algebra.spacing(0)
        return (self.algebra.shift(f, 0) - f) / lam

    def left_rule(self, i: int, f) -> list[tuple[int, Scalar]]:
        return [(0, self.algebra.shift(self.algebra.coerce(f), 0))]

    def braiding_inverse(self, f, i: int) -> list[tuple[int, Scalar]]:
        return [(0, self.algebra.shift(self.algebra.coerce(f), 0))]

    def wedge_table(self, i: int, j: int) -> list[tuple[int, int]]:
        return []

    def d_theta(self, i: int) -> GradedForm:
        return self.zero_form(2)

    def two_left_rule(self, t: int, f) -> list[tuple[int, Scalar]]:
        return []


class FiniteDifference2D(CalculusSpec):
    """Finite differences on the plane with the volume form dx^dy."""

    def __init__(self, algebra=None):
        self.name = "fd:2"
        self.algebra = algebra if algebra is not None else RationalCoefficients(2)
        self.one_form_names = ("dx", "dy")
        self.two_form_names = ("dx^dy",)

    def partial(self, i: int, f) -> Scalar:
        f = self.algebra.coerce(f)
        return (self.algebra.shift(f, i) - f) / self.algebra.spacing(i)

    def left_rule(self, i: int, f) -> list[tuple[int, Scalar]]:
        return [(i, self.algebra.shift(self.algebra.coerce(f), i))]

    def braiding_inverse(self, f, i: int) -> list[tuple[int, Scalar]]:
        return [(i, self.algebra.shift(self.algebra.coerce(f), i))]

    def wedge_table(self, i: int, j: int) -> list[tuple[int, int]]:
        if i == j:
            return []
        return [(0, 1)] if (i, j) == (0, 1) else [(0, -1)]

    def d_theta(self, i: int) -> GradedForm:
        return self.zero_form(2)

    def two_left_rule(self, t: int, f) -> list[tuple[int, Scalar]]:
        f = self.algebra.coerce(f)
        return [(0, self.algebra.shift(self.algebra.shift(f, 0), 1))]


def make_calculus(spec_string: str, symbolic: bool = False) -> CalculusSpec:
    """Build a calculus from 'jet:<n>', 'fd:1' or 'fd:2'."""
    s = spec_string.strip().lower()
    if s.startswith("jet:"):
        try:
            n = int(s[4:])
        except ValueError:
            raise CalculusError(f"bad jet order in {spec_string!r}") from None
        algebra = OpaqueCoefficients1D() if symbolic else None
        return JetCalculus(n, algebra)
    if s == "fd:1":
        if symbolic:
            raise CalculusError("symbolic coefficients are not provided for fd:1")
        return FiniteDifference1D()
    if s == "fd:2":
        algebra = OpaqueCoefficients2D() if symbolic else None
        return FiniteDifference2D(algebra)
    raise CalculusError(f"unknown calculus {spec_string!r}; use jet:<n>, fd:1 or fd:2")


# ---------------------------------------------------------------------------
# generator functions and their tangent spaces
# ---------------------------------------------------------------------------

# Coefficients of generator functions and of the resulting momentum-space
# vectors live in a field with two translation parameters t, u and two
# symbols et = exp(rate*t), eu = exp(rate*u), used only by the closure
# check under projected translation.
GEN_FIELD = ScalarField("genfun", ("lam", "mu", "t", "u", "et", "eu"))


class GeneratorTerm(NamedTuple):
    var: int
    kind: str  # 'pow' or 'exp'
    power: int = 0  # for 'pow'
    coeff: object = 1
    rate: object = None  # for 'exp'


# Momentum-space vectors are dicts keyed by ('one',) for the constant,
# ('pow', var, k) with k >= 1 for monomials, and ('exp', var) for the
# exponential of that variable; values are GEN_FIELD scalars.
_ONE = ("one",)


class GeneratorFunction:
    """Per-variable polynomial or single-exponential profile c(p).

    Terms are r*p^k (polynomial) or r*exp(rate*p) with a nonzero formal
    rate; each variable carries either polynomial terms or one
    exponential term, never both.
    """

    def __init__(self, nvars: int, terms: Iterable[GeneratorTerm]):
        if nvars not in (1, 2):
            raise CalculusError("generator functions take one or two variables")
        self.nvars = nvars
        merged: dict[tuple, Scalar] = {}
        rates: dict[int, Scalar] = {}
        kinds: dict[int, set] = {}
        for t in terms:
            if not 0 <= t.var < nvars:
                raise CalculusError("generator term for a variable out of range")
            coeff = GEN_FIELD.coerce(t.coeff)
            if t.kind == "pow":
                if t.power < 0:
                    raise CalculusError("negative powers are not generator terms")
                if t.power == 0:
                    key = _ONE
                else:
                    key = ("pow", t.var, t.power)
                    kinds.setdefault(t.var, set()).add("pow")
            elif t.kind == "exp":
                rate = GEN_FIELD.coerce(t.rate)
                if rate.is_zero:
                    raise CalculusError("exponential generator term needs a nonzero rate")
                prev = rates.get(t.var)
                if prev is not None and prev != rate:
                    raise CalculusError("one exponential rate per variable")
                rates[t.var] = rate
                key = ("exp", t.var)
                kinds.setdefault(t.var, set()).add("exp")
            else:
                raise CalculusError(f"unknown generator term kind {t.kind!r}")
            merged[key] = merged.get(key, GEN_FIELD.zero) + coeff
        for var, ks in kinds.items():
            if ks == {"pow", "exp"}:
                raise CalculusError(
                    "a variable's profile is either polynomial or a single exponential"
                )
        self.rates = rates
        self.vector = {k: v for k, v in merged.items() if not v.is_zero}
        if not any(k[0] in ("pow", "exp") for k in self.vector):
            raise CalculusError("generator function must depend on the momentum")

    # -- momentum-space helpers ----------------------------------------

    def _derivative(self, vec: dict, var: int) -> dict:
        out: dict[tuple, Scalar] = {}
        for key, coeff in vec.items():
            if key[0] == "pow" and key[1] == var:
                k = key[2]
                nk = _ONE if k == 1 else ("pow", var, k - 1)
                out[nk] = out.get(nk, GEN_FIELD.zero) + coeff * k
            elif key[0] == "exp" and key[1] == var:
                out[key] = out.get(key, GEN_FIELD.zero) + coeff * self.rates[var]
        return {k: v for k, v in out.items() if not v.is_zero}

    @staticmethod
    def _project(vec: dict) -> dict:
        """Subtract the value at zero momentum; exponentials count 1 there."""
        value = vec.get(_ONE, GEN_FIELD.zero)
        for key, coeff in vec.items():
            if key[0] == "exp":
                value = value + coeff
        out = dict(vec)
        residual = vec.get(_ONE, GEN_FIELD.zero) - value
        if residual.is_zero:
            out.pop(_ONE, None)
        else:
            out[_ONE] = residual
        return out

    def render_vector(self, vec: dict) -> str:
        return render_momentum_vector(self.nvars, vec, self.rates)


def render_momentum_vector(nvars: int, vec: dict, rates: dict[int, Scalar]) -> str:
    def varname(v: int) -> str:
        return "p" if nvars == 1 else f"p{v + 1}"

    parts = []
    for key in sorted(vec.keys(), key=repr):
        c = vec[key]
        cs = c.render()
        if key == _ONE:
            parts.append(cs if not _needs_parens(cs) else f"({cs})")
            continue
        if key[0] == "pow":
            _, var, k = key
            base = varname(var) if k == 1 else f"{varname(var)}^{k}"
        else:
            _, var = key
            rate = rates.get(var)
            rs = rate.render() if rate is not None else "1"
            if _needs_parens(rs):
                rs = f"({rs})"
            base = f"exp({rs}*{varname(var)})"
        if cs == "1":
            parts.append(base)
        elif cs == "-1":
            parts.append(f"-{base}")
        else:
            if _needs_parens(cs):
                cs = f"({cs})"
            parts.append(f"{cs}*{base}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out


def _needs_parens(s: str) -> bool:
    return any(tok in s for tok in (" + ", " - ", "*", "/")) or s.startswith("-")


@dataclass
class MomentumTangentSpace:
    """Finite basis of projected derivatives of a generator function."""

    nvars: int
    labels: tuple[str, ...]
    vectors: tuple[dict, ...]
    rates: dict[int, Scalar]
    span: SpanBasis

    @property
    def dimension(self) -> int:
        return self.span.rank

    def render_basis(self) -> list[str]:
        return [render_momentum_vector(self.nvars, v, self.rates) for v in self.vectors]


_MAX_DERIVATIVES = 200


def tangent_space_from_c(c: GeneratorFunction) -> MomentumTangentSpace:
    """Span of the projected derivatives c^(n)(p) - c^(n)(0), n >= 1.

    The sequence in each variable is generated by the projected
    derivative map; once a member lands in the span of its predecessors
    the whole tail does, so the loop stops exactly when the span stops
    growing.  Polynomial profiles terminate at their degree,
    exponential profiles after one step.
    """
    span = SpanBasis(GEN_FIELD)
    labels: list[str] = []
    vectors: list[dict] = []
    for var in range(c.nvars):
        vec = dict(c.vector)
        for n in range(1, _MAX_DERIVATIVES + 1):
            vec = c._derivative(vec, var)
            projected = GeneratorFunction._project(vec)
            if not projected:
                break
            if not span.add(projected):
                break
            if c.nvars == 1:
                labels.append(f"p_{n}")
            else:
                labels.append(f"p_({n},0)" if var == 0 else f"p_(0,{n})")
            vectors.append(projected)
            vec = projected
        else:
            raise AssertionError("projected derivatives failed to stabilize")
    return MomentumTangentSpace(c.nvars, tuple(labels), tuple(vectors), dict(c.rates), span)


def translation_closure_holds(space: MomentumTangentSpace) -> bool:
    """Projected translation invariance: f(p+t) - f(t) stays in the span.

    Polynomials pick up binomial lower-order terms; an exponential is
    scaled by the formal symbol exp(rate*t).  Both are checked exactly
    over the extended coefficient field.
    """
    t_syms = (GEN_FIELD.gen("t"), GEN_FIELD.gen("u"))
    e_syms = (GEN_FIELD.gen("et"), GEN_FIELD.gen("eu"))
    for vec in space.vectors:
        for var in range(space.nvars):
            translated: dict[tuple, Scalar] = {}
            for key, coeff in vec.items():
                if key[0] == "pow" and key[1] == var:
                    k = key[2]
                    for j in range(0, k + 1):
                        nk = _ONE if j == 0 else ("pow", var, j)
                        translated[nk] = translated.get(nk, GEN_FIELD.zero) + coeff * comb(
                            k, j
                        ) * t_syms[var] ** (k - j)
                elif key[0] == "exp" and key[1] == var:
                    translated[key] = (
                        translated.get(key, GEN_FIELD.zero) + coeff * e_syms[var]
                    )
                else:
                    translated[key] = translated.get(key, GEN_FIELD.zero) + coeff
            projected = GeneratorFunction._project(translated)
            if not space.span.contains(projected):
                return False
    return True


# convenient profile builders -------------------------------------------------

def jet_generator(n: int, nvars: int = 1, var: int = 0) -> GeneratorFunction:
    """c(p) = p^(n+1)/(n+1)!, the profile whose tangent space is the n-jet."""
    fact = 1
    for i in range(2, n + 2):
        fact *= i
    return GeneratorFunction(
        nvars,
        [GeneratorTerm(var, "pow", n + 1, GEN_FIELD.from_fraction(Fraction(1, fact)), None)],
    )


def finite_difference_generator(nvars: int = 1) -> GeneratorFunction:
    """c(p) = lam^-2 exp(lam p) (plus the mirrored term in two variables)."""
    lam = GEN_FIELD.gen("lam")
    mu = GEN_FIELD.gen("mu")
    terms = [GeneratorTerm(0, "exp", 0, lam**-2, lam)]
    if nvars == 2:
        terms.append(GeneratorTerm(1, "exp", 0, mu**-2, mu))
    return GeneratorFunction(nvars, terms)
