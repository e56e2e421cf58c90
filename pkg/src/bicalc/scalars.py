"""Exact scalar arithmetic: rational functions with integer coefficients.

Every coefficient in the engine lives in a field Q(params): canonical
reduced fractions of multivariate polynomials over the integers.  The
polynomial core is sympy's sparse fraction field, which keeps fractions
gcd-reduced with a sign-normalized denominator, so equality of scalars
is literal equality of normal forms.  The wrapper adds what the engine
needs on top: a declared parameter set per field, deterministic
canonical rendering, and exact evaluation at rational points with
explicit pole errors.

The quantum-group side works over Q(q) extended by q^(1/2).  That field
is realized with a single internal generator equal to q^(1/2); rendering
and evaluation translate back to powers of q, so q^(1/2) only ever
appears with half-integer exponents in output.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping

from sympy.polys.domains import ZZ
from sympy.polys.fields import field as _sympy_field


class ScalarError(ArithmeticError):
    """Inversion of zero, evaluation at a pole, or a field mismatch."""


def _exact_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    np, dp = isqrt(value.numerator), isqrt(value.denominator)
    if np * np == value.numerator and dp * dp == value.denominator:
        return Fraction(np, dp)
    return None


class ScalarField:
    """A field Q(g1, ..., gk) of reduced rational functions over Z."""

    def __init__(self, name: str, gen_names: Iterable[str], factor_display=None):
        self.name = name
        self.gen_names = tuple(gen_names)
        self._factor_display = factor_display
        created = _sympy_field(list(self.gen_names), ZZ)
        self._field = created[0]
        self._gens = tuple(created[1:])
        self._by_name = dict(zip(self.gen_names, self._gens))
        self.zero = Scalar(self, self._field.zero)
        self.one = Scalar(self, self._field.one)

    # -- construction -------------------------------------------------

    @property
    def params(self) -> tuple[str, ...]:
        """Public parameter names of the field."""
        return self.gen_names

    def gen(self, name: str) -> "Scalar":
        try:
            return Scalar(self, self._by_name[name])
        except KeyError:
            raise ScalarError(f"{self.name}: unknown parameter {name!r}") from None

    def from_int(self, n: int) -> "Scalar":
        return Scalar(self, self._field.one * n)

    def from_fraction(self, value: Fraction | int) -> "Scalar":
        f = Fraction(value)
        return Scalar(self, (self._field.one * f.numerator) / (self._field.one * f.denominator))

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ScalarError(f"scalar from {value.field.name} used in {self.name}")
            return value
        if isinstance(value, (int, Fraction)):
            return self.from_fraction(value)
        raise ScalarError(f"cannot coerce {value!r} into {self.name}")

    # -- calculus on generators (plumbing for coefficient algebras) ---

    def diff(self, s: "Scalar", name: str) -> "Scalar":
        s = self.coerce(s)
        return Scalar(self, s.frac.diff(self._by_name[name]))

    def substitute(self, s: "Scalar", images: Mapping[str, "Scalar"]) -> "Scalar":
        """Simultaneous substitution gen -> image, exact, pole-checked."""
        s = self.coerce(s)
        img = {}
        for gname, g in self._by_name.items():
            img[gname] = self.coerce(images.get(gname, Scalar(self, g))).frac
        num = self._poly_substitute(s.frac.numer, img)
        den = self._poly_substitute(s.frac.denom, img)
        if not den:
            raise ScalarError(f"{self.name}: substitution makes a denominator vanish")
        return Scalar(self, num / den)

    def _poly_substitute(self, poly, img):
        out = self._field.zero
        for monom, coeff in poly.terms():
            term = self._field.one * int(coeff)
            for gname, e in zip(self.gen_names, monom):
                if e:
                    term *= img[gname] ** e
            out += term
        return out

    # -- rendering -----------------------------------------------------

    def _factor_str(self, gen_name: str, exp: int) -> str:
        if self._factor_display is not None:
            gen_name = self._factor_display(gen_name)
        return gen_name if exp == 1 else f"{gen_name}^{exp}"

    def _poly_str(self, poly) -> str:
        terms = list(poly.terms())
        if not terms:
            return "0"
        parts = []
        for i, (monom, coeff) in enumerate(terms):
            c = int(coeff)
            factors = [
                self._factor_str(g, e) for g, e in zip(self.gen_names, monom) if e
            ]
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def render(self, s: "Scalar") -> str:
        num, den = s.frac.numer, s.frac.denom
        ns = self._poly_str(num)
        if den == 1:
            return ns
        ds = self._poly_str(den)
        if " + " in ns or " - " in ns:
            ns = f"({ns})"
        if " + " in ds or " - " in ds or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    # -- evaluation ----------------------------------------------------

    def _gen_values(self, values: Mapping[str, Fraction | int]) -> list[Fraction]:
        vals = []
        for gname in self.gen_names:
            if gname not in values:
                raise ScalarError(f"{self.name}: no value given for {gname!r}")
            vals.append(Fraction(values[gname]))
        return vals

    def _poly_eval(self, poly, gen_vals: list[Fraction]) -> Fraction:
        total = Fraction(0)
        for monom, coeff in poly.terms():
            term = Fraction(int(coeff))
            for v, e in zip(gen_vals, monom):
                if e:
                    term *= v**e
            total += term
        return total

    def evaluate(self, s: "Scalar", values: Mapping[str, Fraction | int]) -> Fraction:
        s = self.coerce(s)
        gen_vals = self._gen_values(values)
        den = self._poly_eval(s.frac.denom, gen_vals)
        if den == 0:
            raise ScalarError(f"{self.name}: evaluation hits a pole")
        return self._poly_eval(s.frac.numer, gen_vals) / den

    def __repr__(self):
        return f"ScalarField({self.name}, params={self.gen_names})"


class SqrtParamField(ScalarField):
    """Q(p^(1/2)) presented in terms of the parameter p itself.

    The single internal generator is the square root of the public
    parameter.  Output shows integer powers of p where possible and
    p^(k/2) otherwise; evaluation accepts a rational value for p and
    demands it be an exact square whenever half powers survive.
    """

    def __init__(self, name: str, param: str):
        self.param = param
        super().__init__(name, (f"sqrt_{param}",))

    @property
    def params(self) -> tuple[str, ...]:
        return (self.param,)

    def gen(self, name: str) -> "Scalar":
        if name == self.param:
            return Scalar(self, self._gens[0] ** 2)
        raise ScalarError(f"{self.name}: unknown parameter {name!r}")

    def root_gen(self) -> "Scalar":
        """The square root of the parameter as a scalar."""
        return Scalar(self, self._gens[0])

    def half_power(self, k: int) -> "Scalar":
        """The parameter raised to k/2."""
        return Scalar(self, self._gens[0] ** k) if k >= 0 else self.one / self.half_power(-k)

    def _factor_str(self, gen_name: str, exp: int) -> str:
        if exp % 2 == 0:
            half = exp // 2
            return self.param if half == 1 else f"{self.param}^{half}"
        return f"{self.param}^({exp}/2)"

    def _all_even(self, poly) -> bool:
        return all(monom[0] % 2 == 0 for monom, _ in poly.terms())

    def evaluate(self, s: "Scalar", values: Mapping[str, Fraction | int]) -> Fraction:
        s = self.coerce(s)
        if self.param not in values:
            raise ScalarError(f"{self.name}: no value given for {self.param!r}")
        v = Fraction(values[self.param])
        if self._all_even(s.frac.numer) and self._all_even(s.frac.denom):

            def eval_even(poly):
                total = Fraction(0)
                for monom, coeff in poly.terms():
                    total += Fraction(int(coeff)) * v ** (monom[0] // 2)
                return total

            den = eval_even(s.frac.denom)
            if den == 0:
                raise ScalarError(f"{self.name}: evaluation hits a pole")
            return eval_even(s.frac.numer) / den
        root = _exact_sqrt(v)
        if root is None:
            raise ScalarError(
                f"{self.name}: element involves {self.param}^(1/2) and "
                f"{v} is not an exact rational square"
            )
        return super().evaluate(s, {self.gen_names[0]: root})

    def _gen_values(self, values):
        if self.gen_names[0] in values:
            return [Fraction(values[self.gen_names[0]])]
        raise ScalarError(f"{self.name}: no value given for {self.param!r}")


class Scalar:
    """Element of a ScalarField: a canonical reduced rational function."""

    __slots__ = ("field", "frac")

    def __init__(self, field: ScalarField, frac):
        self.field = field
        self.frac = frac

    # -- predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.frac

    @property
    def is_one(self) -> bool:
        return self.frac == 1

    def constant_value(self) -> Fraction:
        """The value of a parameter-free scalar, as an exact fraction."""
        num, den = self.frac.numer, self.frac.denom
        for monom, _ in list(num.terms()) + list(den.terms()):
            if any(monom):
                raise ScalarError(f"{self.field.name}: scalar is not constant")
        return self.field._poly_eval(num, []) / self.field._poly_eval(den, [])

    # -- arithmetic ----------------------------------------------------

    def _lift(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ScalarError(
                    f"mixing scalars from {self.field.name} and {other.field.name}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else Scalar(self.field, self.frac + o.frac)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else Scalar(self.field, self.frac - o.frac)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else Scalar(self.field, o.frac - self.frac)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else Scalar(self.field, self.frac * o.frac)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ScalarError(f"{self.field.name}: division by zero")
        return Scalar(self.field, self.frac / o.frac)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar(self.field, -self.frac)

    def __pow__(self, exp: int):
        if not isinstance(exp, int):
            return NotImplemented
        if exp < 0 and self.is_zero:
            raise ScalarError(f"{self.field.name}: inversion of zero")
        return Scalar(self.field, self.frac**exp)

    def inverse(self) -> "Scalar":
        if self.is_zero:
            raise ScalarError(f"{self.field.name}: inversion of zero")
        return Scalar(self.field, self.frac**-1)

    # -- equality / hashing / display ----------------------------------

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except ScalarError:
            return False
        if o is None:
            return NotImplemented
        return self.frac == o.frac

    def __hash__(self):
        return hash((self.field.name, self.frac))

    def evaluate(self, values: Mapping[str, Fraction | int]) -> Fraction:
        return self.field.evaluate(self, values)

    def render(self) -> str:
        return self.field.render(self)

    def __repr__(self):
        return self.render()


# The engine's two ground fields.  QFIELD carries the deformation
# parameter q together with its square root; COORD_FIELD carries the
# lattice spacings and the coordinates of the (at most two-dimensional)
# base space.
QFIELD = SqrtParamField("Q(q^(1/2))", "q")
COORD_FIELD = ScalarField("Q(lam,mu)(x,y)", ("lam", "mu", "x", "y"))

RationalFunctionScalar = Scalar
