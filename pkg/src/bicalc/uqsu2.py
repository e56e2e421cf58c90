"""The standard q-deformation of the enveloping algebra of su(2).

Generators Xp, K, Xm (K invertible) subject to

    K Xp K^-1 = q Xp,   K Xm K^-1 = q^-1 Xm,
    Xm Xp = Xp Xm - (K^2 - K^-2)/(q - q^-1),

with Hopf structure

    Delta K   = K (x) K
    Delta Xpm = Xpm (x) K + K^-1 (x) Xpm
    eps(K) = 1, eps(Xpm) = 0,

over the scalar field Q(q^(1/2)).  Elements are stored in the ordered
monomial basis Xp^a K^b Xm^c (a, c >= 0, b in Z); every product is
straightened back into that basis by the relations above, so equality
of elements is literal equality of coefficient dictionaries.

The quantum tangent space of the 4D calculus is generated here from a
normalized Casimir element: pairing the 2x2 matrix corepresentation
against the left leg of its coproduct yields four elements, which are
also expressible in a braided-Lie basis h, x, y, gamma whose brackets
[u, v] = sum u_(1) v S(u_(2)) close on the span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import acos, sqrt
from typing import Iterable, NamedTuple

from .linalg import SpanBasis
from .scalars import QFIELD, Scalar, ScalarError


class PBWMonomial(NamedTuple):
    """Ordered monomial Xp^xp K^k Xm^xm."""

    xp: int
    k: int
    xm: int


UNIT_MONO = PBWMonomial(0, 0, 0)
_Q = QFIELD.gen("q")
_RQ = QFIELD.root_gen()


def _q_power(n: int) -> Scalar:
    return QFIELD.half_power(2 * n)


def _mono_sort_key(m: PBWMonomial):
    return (m.xp + m.xm, m.xp, m.k, m.xm)


class UqElement:
    """Finite linear combination of ordered monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[PBWMonomial, Scalar]):
        self.terms = {m: c for m, c in terms.items() if not c.is_zero}

    # -- constructors ---------------------------------------------------

    @classmethod
    def monomial(cls, m: PBWMonomial, coeff: Scalar | int = 1) -> "UqElement":
        return cls({m: QFIELD.coerce(coeff)})

    @classmethod
    def zero(cls) -> "UqElement":
        return cls({})

    @classmethod
    def one(cls) -> "UqElement":
        return cls.monomial(UNIT_MONO)

    # -- linear structure ----------------------------------------------

    def __add__(self, other):
        other = _lift_uq(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, QFIELD.zero) + c
        return UqElement(acc)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift_uq(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lift_uq(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return UqElement({m: -c for m, c in self.terms.items()})

    def scaled(self, s) -> "UqElement":
        s = QFIELD.coerce(s)
        return UqElement({m: c * s for m, c in self.terms.items()})

    # -- multiplication --------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, UqElement):
            return NotImplemented
        acc: dict[PBWMonomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                cc = c1 * c2
                for m, c in _mul_mono(m1, m2):
                    acc[m] = acc.get(m, QFIELD.zero) + cc * c
        return UqElement(acc)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scaled(QFIELD.coerce(other).inverse())
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = UqElement.one()
        for _ in range(n):
            out = out * self
        return out

    # -- comparison and display -------------------------------------------

    def __eq__(self, other):
        other = _lift_uq(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[PBWMonomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda mc: _mono_sort_key(mc[0]), reverse=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(_term_str(m, c))
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return self.render()


def _lift_uq(value) -> UqElement | None:
    if isinstance(value, UqElement):
        return value
    if isinstance(value, (int, Fraction, Scalar)):
        return UqElement.monomial(UNIT_MONO, QFIELD.coerce(value))
    return None


def _mono_str(m: PBWMonomial) -> str:
    if m == UNIT_MONO:
        return "1"
    factors = []
    if m.xp:
        factors.append("Xp" if m.xp == 1 else f"Xp^{m.xp}")
    if m.k:
        factors.append("K" if m.k == 1 else f"K^{m.k}")
    if m.xm:
        factors.append("Xm" if m.xm == 1 else f"Xm^{m.xm}")
    return "*".join(factors)


def _coeff_is_atomic(s: str) -> bool:
    return not (" + " in s or " - " in s or "/" in s or s.startswith("-"))


def _term_str(m: PBWMonomial, c: Scalar) -> str:
    mono = _mono_str(m)
    if m == UNIT_MONO:
        cs = c.render()
        return cs if _coeff_is_atomic(cs) or cs.startswith("-") else f"({cs})"
    if c.is_one:
        return mono
    if c == -1:
        return "-" + mono
    cs = c.render()
    if _coeff_is_atomic(cs):
        return f"{cs}*{mono}"
    if cs.startswith("-") and _coeff_is_atomic(cs[1:]):
        return f"-{cs[1:]}*{mono}"
    return f"({cs})*{mono}"


# -- generators -----------------------------------------------------------

XP = UqElement.monomial(PBWMonomial(1, 0, 0))
K = UqElement.monomial(PBWMonomial(0, 1, 0))
K_INV = UqElement.monomial(PBWMonomial(0, -1, 0))
XM = UqElement.monomial(PBWMonomial(0, 0, 1))
ONE = UqElement.one()

GENERATORS = {"Xp": XP, "K": K, "K^-1": K_INV, "Xm": XM}


# -- straightening ---------------------------------------------------------

_MUL_CACHE: dict[tuple[PBWMonomial, PBWMonomial], tuple[tuple[PBWMonomial, Scalar], ...]] = {}

# Xm Xp = Xp Xm - (K^2 - K^-2)/(q - q^-1)
_XM_XP_RULE = UqElement(
    {
        PBWMonomial(1, 0, 1): QFIELD.one,
        PBWMonomial(0, 2, 0): -(QFIELD.one / (_Q - _Q.inverse())),
        PBWMonomial(0, -2, 0): QFIELD.one / (_Q - _Q.inverse()),
    }
)


def _mul_mono(m1: PBWMonomial, m2: PBWMonomial) -> tuple[tuple[PBWMonomial, Scalar], ...]:
    key = (m1, m2)
    hit = _MUL_CACHE.get(key)
    if hit is not None:
        return hit
    a1, b1, c1 = m1
    a2, b2, c2 = m2
    if c1 == 0:
        # Xp^a1 K^b1 Xp^a2 ... : K^b1 hops over Xp^a2 at cost q^(b1 a2)
        result = ((PBWMonomial(a1 + a2, b1 + b2, c2), _q_power(b1 * a2)),)
    elif a2 == 0:
        # ... Xm^c1 K^b2 Xm^c2 : K^b2 hops left over Xm^c1 at cost q^(b2 c1)
        result = ((PBWMonomial(a1, b1 + b2, c1 + c2), _q_power(b2 * c1)),)
    else:
        left = UqElement.monomial(PBWMonomial(a1, b1, c1 - 1))
        right = UqElement.monomial(PBWMonomial(a2 - 1, b2, c2))
        product = (left * _XM_XP_RULE) * right
        result = tuple(product.terms.items())
    _MUL_CACHE[key] = result
    return result


def multiply(u: UqElement, v: UqElement) -> UqElement:
    return u * v


# -- tensor square ---------------------------------------------------------

class TensorElement:
    """Element of the tensor square, in the monomial-pair basis."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[PBWMonomial, PBWMonomial], Scalar]):
        self.terms = {p: c for p, c in terms.items() if not c.is_zero}

    @classmethod
    def of(cls, left: UqElement, right: UqElement) -> "TensorElement":
        acc = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                acc[(m1, m2)] = c1 * c2
        return cls(acc)

    def __add__(self, other):
        acc = dict(self.terms)
        for p, c in other.terms.items():
            acc[p] = acc.get(p, QFIELD.zero) + c
        return TensorElement(acc)

    def __sub__(self, other):
        return self + TensorElement({p: -c for p, c in other.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            s = QFIELD.coerce(other)
            return TensorElement({p: c * s for p, c in self.terms.items()})
        acc: dict[tuple[PBWMonomial, PBWMonomial], Scalar] = {}
        for (l1, r1), c in self.terms.items():
            for (l2, r2), d in other.terms.items():
                cd = c * d
                for ml, cl in _mul_mono(l1, l2):
                    for mr, cr in _mul_mono(r1, r2):
                        key = (ml, mr)
                        acc[key] = acc.get(key, QFIELD.zero) + cd * cl * cr
        return TensorElement(acc)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def left_grouping(self) -> dict[PBWMonomial, dict[PBWMonomial, Scalar]]:
        """Right components grouped by the left monomial."""
        groups: dict[PBWMonomial, dict[PBWMonomial, Scalar]] = {}
        for (l, r), c in self.terms.items():
            groups.setdefault(l, {})[r] = c
        return groups

    def render(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(
            self.terms.keys(),
            key=lambda p: (_mono_sort_key(p[0]), _mono_sort_key(p[1])),
            reverse=True,
        )
        parts = []
        for l, r in keys:
            c = self.terms[(l, r)]
            pair = f"({_mono_str(l)}) ⊗ ({_mono_str(r)})"
            if c.is_one:
                parts.append(pair)
            elif c == -1:
                parts.append("-" + pair)
            else:
                cs = c.render()
                cs = cs if _coeff_is_atomic(cs) else f"({cs})"
                parts.append(f"{cs}*{pair}")
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def __repr__(self):
        return self.render()


# -- structure maps ----------------------------------------------------------

_DELTA_CACHE: dict[PBWMonomial, TensorElement] = {}

_DELTA_XP = TensorElement(
    {
        (PBWMonomial(1, 0, 0), PBWMonomial(0, 1, 0)): QFIELD.one,
        (PBWMonomial(0, -1, 0), PBWMonomial(1, 0, 0)): QFIELD.one,
    }
)
_DELTA_XM = TensorElement(
    {
        (PBWMonomial(0, 0, 1), PBWMonomial(0, 1, 0)): QFIELD.one,
        (PBWMonomial(0, -1, 0), PBWMonomial(0, 0, 1)): QFIELD.one,
    }
)


def _delta_mono(m: PBWMonomial) -> TensorElement:
    hit = _DELTA_CACHE.get(m)
    if hit is not None:
        return hit
    out = TensorElement({(UNIT_MONO, UNIT_MONO): QFIELD.one})
    for _ in range(m.xp):
        out = out * _DELTA_XP
    if m.k:
        out = out * TensorElement(
            {(PBWMonomial(0, m.k, 0), PBWMonomial(0, m.k, 0)): QFIELD.one}
        )
    for _ in range(m.xm):
        out = out * _DELTA_XM
    _DELTA_CACHE[m] = out
    return out


def coproduct(u: UqElement) -> TensorElement:
    acc = TensorElement({})
    for m, c in u.terms.items():
        acc = acc + _delta_mono(m) * c
    return acc


def counit(u: UqElement) -> Scalar:
    total = QFIELD.zero
    for m, c in u.terms.items():
        if m.xp == 0 and m.xm == 0:
            total = total + c
    return total


_ANTIPODE_CACHE: dict[PBWMonomial, UqElement] = {}


def _antipode_generators() -> dict[str, UqElement]:
    """Solve the antipode axiom on generators.

    For a group-like g the axiom m(S (x) id)Delta(g) = eps(g) forces
    S(g) = g^-1.  For Xpm, with Delta Xpm = Xpm (x) K + K^-1 (x) Xpm,
    it reads S(Xpm) K + S(K^-1) Xpm = 0, so S(Xpm) = -K Xpm K^-1.
    """
    s_k = K_INV
    s_k_inv = K
    s_xp = -(K * XP * K_INV)
    s_xm = -(K * XM * K_INV)
    return {"K": s_k, "K^-1": s_k_inv, "Xp": s_xp, "Xm": s_xm}


_S_GEN = None


def _antipode_mono(m: PBWMonomial) -> UqElement:
    global _S_GEN
    hit = _ANTIPODE_CACHE.get(m)
    if hit is not None:
        return hit
    if _S_GEN is None:
        _S_GEN = _antipode_generators()
    # anti-multiplicative extension: S(Xp^a K^b Xm^c) = S(Xm)^c S(K)^b S(Xp)^a
    out = _S_GEN["Xm"] ** m.xm
    out = out * UqElement.monomial(PBWMonomial(0, -m.k, 0))
    out = out * (_S_GEN["Xp"] ** m.xp)
    _ANTIPODE_CACHE[m] = out
    return out


def antipode(u: UqElement) -> UqElement:
    acc = UqElement.zero()
    for m, c in u.terms.items():
        acc = acc + _antipode_mono(m).scaled(c)
    return acc


def adjoint(u: UqElement, v: UqElement) -> UqElement:
    """Quantum adjoint action  Ad_u(v) = sum u_(1) v S(u_(2))."""
    acc = UqElement.zero()
    for (m1, m2), c in coproduct(u).terms.items():
        acc = acc + (UqElement.monomial(m1) * v * _antipode_mono(m2)).scaled(c)
    return acc


# -- the defining axioms, checkable on any element --------------------------

def coassociativity_holds(u: UqElement) -> bool:
    """(Delta (x) id)Delta(u) equals (id (x) Delta)Delta(u)."""
    left: dict[tuple, Scalar] = {}
    right: dict[tuple, Scalar] = {}
    for (m1, m2), c in coproduct(u).terms.items():
        for (a, b), d in _delta_mono(m1).terms.items():
            key = (a, b, m2)
            left[key] = left.get(key, QFIELD.zero) + c * d
        for (a, b), d in _delta_mono(m2).terms.items():
            key = (m1, a, b)
            right[key] = right.get(key, QFIELD.zero) + c * d
    left = {k: v for k, v in left.items() if not v.is_zero}
    right = {k: v for k, v in right.items() if not v.is_zero}
    return left == right


def counit_laws_hold(u: UqElement) -> bool:
    """(eps (x) id)Delta(u) and (id (x) eps)Delta(u) both give back u."""
    lhs = UqElement.zero()
    rhs = UqElement.zero()
    for (m1, m2), c in coproduct(u).terms.items():
        lhs = lhs + UqElement.monomial(m2, c * counit(UqElement.monomial(m1)))
        rhs = rhs + UqElement.monomial(m1, c * counit(UqElement.monomial(m2)))
    return lhs == u and rhs == u


def antipode_axioms_hold(u: UqElement) -> bool:
    """Multiplying S into either leg of the coproduct gives eps(u) 1."""
    acc1 = UqElement.zero()
    acc2 = UqElement.zero()
    for (m1, m2), c in coproduct(u).terms.items():
        acc1 = acc1 + (_antipode_mono(m1) * UqElement.monomial(m2)).scaled(c)
        acc2 = acc2 + (UqElement.monomial(m1) * _antipode_mono(m2)).scaled(c)
    target = UqElement.one().scaled(counit(u))
    return acc1 == target and acc2 == target


# -- 2x2 matrix corepresentation ---------------------------------------------

class Mat2:
    """2x2 matrix over the q scalar field."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(QFIELD.coerce(e) for e in row) for row in rows)

    @classmethod
    def zero(cls) -> "Mat2":
        z = QFIELD.zero
        return cls(((z, z), (z, z)))

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(((QFIELD.one, QFIELD.zero), (QFIELD.zero, QFIELD.one)))

    def __add__(self, other):
        return Mat2(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            s = QFIELD.coerce(other)
            return Mat2(tuple(tuple(e * s for e in row) for row in self.rows))
        out = []
        for i in range(2):
            out.append(
                tuple(
                    self.rows[i][0] * other.rows[0][j] + self.rows[i][1] * other.rows[1][j]
                    for j in range(2)
                )
            )
        return Mat2(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.rows == other.rows

    __hash__ = None

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def __repr__(self):
        return f"[[{self.rows[0][0]}, {self.rows[0][1]}], [{self.rows[1][0]}, {self.rows[1][1]}]]"


_RHO_CACHE: dict[PBWMonomial, Mat2] = {}


def _rho_mono(m: PBWMonomial) -> Mat2:
    hit = _RHO_CACHE.get(m)
    if hit is not None:
        return hit
    z = QFIELD.zero
    one = QFIELD.one
    if m.xp >= 2 or m.xm >= 2:
        # the raising/lowering matrices square to zero
        out = Mat2.zero()
    else:
        out = Mat2.identity()
        if m.xp:
            out = out * Mat2(((z, one), (z, z)))
        out = out * Mat2(
            ((QFIELD.half_power(m.k), z), (z, QFIELD.half_power(-m.k)))
        )
        if m.xm:
            out = out * Mat2(((z, z), (one, z)))
    _RHO_CACHE[m] = out
    return out


def fundamental_rep(u: UqElement) -> Mat2:
    """The 2x2 representation rho: Xp, Xm to the matrix units, K to diag(q^(1/2), q^(-1/2))."""
    acc = Mat2.zero()
    for m, c in u.terms.items():
        acc = acc + _rho_mono(m) * c
    return acc


def matrix_pairing(i: int, j: int, subtract_unit: bool, u: UqElement) -> Scalar:
    """Pair u against the (i, j) matrix-coefficient functional.

    With subtract_unit the functional is t^i_j - delta_ij (the matrix
    coefficient minus the counit), which annihilates 1.
    """
    value = fundamental_rep(u).entry(i, j)
    if subtract_unit and i == j:
        value = value - counit(u)
    return value


# -- Casimir and the 4D tangent space ----------------------------------------

def casimir() -> tuple[UqElement, UqElement]:
    """The central element C and its zero-counit normalization c.

    C = q^-1 K^2 + q K^-2 + (q - q^-1)^2 Xp Xm;  c = (C - (q + q^-1)) / N
    with N = (q - q^-2)(q - 1), so that eps(c) = 0.
    """
    qq = _Q
    C = (
        K * K * qq.inverse()
        + K_INV * K_INV * qq
        + (XP * XM) * ((qq - qq.inverse()) ** 2)
    )
    N = (qq - qq**-2) * (qq - 1)
    c = (C - (qq + qq.inverse()) * ONE) / N
    return C, c


@dataclass
class TangentSpace:
    """Basis of a quantum tangent space with its span for membership tests."""

    labels: tuple[str, ...]
    elements: tuple[UqElement, ...]
    span: SpanBasis

    @property
    def dimension(self) -> int:
        return self.span.rank

    def contains(self, u: UqElement) -> bool:
        return self.span.contains(u.terms)

    def coordinates(self, u: UqElement):
        return self.span.coordinates(u.terms)


def is_central(u: UqElement) -> bool:
    return all(u * g == g * u for g in GENERATORS.values())


def tangent_space_from_central(c: UqElement) -> TangentSpace:
    """Tangent space spanned by pairing matrix functionals into Delta(c).

    For each functional a in {t11 - 1, t12, t21, t22 - 1} the element is
    x_a = <a, c_(1)> c_(2) - <a, c> 1.  Requires c central.
    """
    if not is_central(c):
        raise ValueError("tangent space construction requires a central element")
    dc = coproduct(c)
    labels = ("a-1", "b", "c", "d-1")
    positions = ((0, 0), (0, 1), (1, 0), (1, 1))
    elements = []
    for (i, j) in positions:
        acc = UqElement.zero()
        for (m1, m2), coeff in dc.terms.items():
            w = matrix_pairing(i, j, True, UqElement.monomial(m1))
            if not w.is_zero:
                acc = acc + UqElement.monomial(m2, coeff * w)
        whole = matrix_pairing(i, j, True, c)
        acc = acc - ONE.scaled(whole)
        elements.append(acc)
    span = SpanBasis(QFIELD, [e.terms for e in elements])
    return TangentSpace(labels, tuple(elements), span)


def casimir_tangent_space() -> TangentSpace:
    return tangent_space_from_central(casimir()[1])


# -- the tangent-space axioms -------------------------------------------------

@dataclass
class ConditionReport:
    name: str
    passed: bool
    details: list[str]


def check_tangent_space(elements: Iterable[UqElement]) -> list[ConditionReport]:
    """Test the three axioms for a finite-dimensional quantum tangent space.

    1. every element has zero counit;
    2. the span is stable under the adjoint action of the generators;
    3. (Delta - id (x) 1) maps the span into (everything) (x) span: after
       grouping by the left monomial, every right component lies in the
       span.  Monomials are a linear basis, so this grouping is exact.
    """
    elements = list(elements)
    span = SpanBasis(QFIELD, [e.terms for e in elements])
    reports = []

    details = []
    ok = True
    for idx, e in enumerate(elements):
        eps = counit(e)
        if not eps.is_zero:
            ok = False
            details.append(f"element {idx}: counit = {eps.render()}")
    reports.append(ConditionReport("counit vanishes on the span", ok, details))

    details = []
    ok = True
    for gname, g in GENERATORS.items():
        for idx, e in enumerate(elements):
            image = adjoint(g, e)
            if not span.contains(image.terms):
                ok = False
                details.append(f"Ad_{gname}(element {idx}) leaves the span")
    reports.append(ConditionReport("span is stable under the adjoint action", ok, details))

    details = []
    ok = True
    for idx, e in enumerate(elements):
        t = coproduct(e) - TensorElement.of(e, ONE)
        for left_mono, right_vec in sorted(
            t.left_grouping().items(), key=lambda kv: _mono_sort_key(kv[0])
        ):
            if not span.contains(right_vec):
                ok = False
                details.append(
                    f"element {idx}: right leg at left monomial {_mono_str(left_mono)} "
                    "is outside the span"
                )
    reports.append(
        ConditionReport("coproduct minus id (x) 1 lands in (algebra) (x) span", ok, details)
    )
    return reports


# -- braided-Lie basis ---------------------------------------------------------

def braided_lie_basis() -> dict[str, UqElement]:
    """The basis h, x, y, gamma of the 4D tangent space.

    h     = q^-1/(q^2 - 1) (C - (q + q^-1) K^2)
    x     = q^(-3/2) K Xm
    y     = q^(-3/2) Xp K
    gamma = q^-1/(q^2 - 1) (C - (q + q^-1))
    """
    C, _ = casimir()
    pref = _Q.inverse() / (_Q**2 - 1)
    h = (C - (K * K) * (_Q + _Q.inverse())).scaled(pref)
    x = (K * XM).scaled(QFIELD.half_power(-3))
    y = (XP * K).scaled(QFIELD.half_power(-3))
    gamma = (C - ONE * (_Q + _Q.inverse())).scaled(pref)
    return {"h": h, "x": x, "y": y, "gamma": gamma}


def braided_lie_table() -> dict[tuple[str, str], UqElement]:
    """All sixteen brackets [u, v] = Ad_u(v) on the basis h, x, y, gamma."""
    basis = braided_lie_basis()
    return {
        (n1, n2): adjoint(u, v) for n1, u in basis.items() for n2, v in basis.items()
    }


def expected_bracket_relations() -> list[tuple[str, str, UqElement]]:
    """The stated bracket values on the braided-Lie basis."""
    basis = braided_lie_basis()
    h, x, y, gamma = basis["h"], basis["x"], basis["y"], basis["gamma"]
    qi2 = _Q**-2
    lam4 = 1 - _Q**-4
    rel = [
        ("h", "x", x.scaled(qi2 + 1)),
        ("x", "h", x.scaled(-qi2 * (qi2 + 1))),
        ("h", "y", y.scaled(-(qi2 + 1) * qi2)),
        ("y", "h", y.scaled(qi2 + 1)),
        ("x", "y", h.scaled(qi2)),
        ("y", "x", h.scaled(-qi2)),
        ("h", "h", h.scaled(lam4)),
        ("gamma", "h", h.scaled(lam4)),
        ("gamma", "x", x.scaled(lam4)),
        ("gamma", "y", y.scaled(lam4)),
        # gamma is central, so [u, gamma] = eps(u) gamma = 0 on the basis
        ("h", "gamma", UqElement.zero()),
        ("x", "gamma", UqElement.zero()),
        ("y", "gamma", UqElement.zero()),
        ("gamma", "gamma", UqElement.zero()),
    ]
    return rel


def change_of_basis_check() -> dict[str, object]:
    """Exact coordinates between the matrix-functional and braided-Lie bases."""
    ts = casimir_tangent_space()
    basis = braided_lie_basis()
    lie_names = list(basis.keys())
    lie_span = SpanBasis(QFIELD, [basis[n].terms for n in lie_names] + [ONE.terms])
    forward = {}
    for label, elem in zip(ts.labels, ts.elements):
        coords = lie_span.coordinates(elem.terms)
        forward[label] = coords
    ts_span = SpanBasis(QFIELD, [e.terms for e in ts.elements] + [ONE.terms])
    backward = {}
    for name in lie_names:
        backward[name] = ts_span.coordinates(basis[name].terms)
    ok = all(v is not None for v in forward.values()) and all(
        v is not None for v in backward.values()
    )
    return {
        "forward": forward,
        "backward": backward,
        "forward_names": lie_names + ["1"],
        "backward_names": list(ts.labels) + ["1"],
        "passed": ok,
    }


# -- numeric diagnostic as q -> 1 ----------------------------------------------

def q_limit_diagnostic(ks: tuple[int, ...] = (2, 3, 4, 5, 6)) -> dict[str, object]:
    """Angle between the x_{a-1} and x_{d-1} coefficient directions near q = 1.

    Evaluates the monomial coefficient vectors exactly at q = 1 + 10^-k,
    normalizes, and reports the angle between the two directions with
    orientation ignored (the vectors become anti-parallel, i.e. the
    lines merge); this is the numeric shadow of the 4D space collapsing
    toward the 3D classical calculus.  Floats appear here and only here.
    """
    ts = casimir_tangent_space()
    va = ts.elements[0]
    vd = ts.elements[3]
    keys = sorted(set(va.terms) | set(vd.terms), key=_mono_sort_key)
    angles = []
    for k in ks:
        qv = 1 + Fraction(1, 10**k)
        a = [float(va.terms.get(m, QFIELD.zero).evaluate({"q": qv})) for m in keys]
        d = [float(vd.terms.get(m, QFIELD.zero).evaluate({"q": qv})) for m in keys]
        na = sqrt(sum(t * t for t in a))
        nd = sqrt(sum(t * t for t in d))
        dot = abs(sum(s * t for s, t in zip(a, d))) / (na * nd)
        angles.append((k, acos(min(1.0, dot))))
    decreasing = all(angles[i + 1][1] < angles[i][1] for i in range(len(angles) - 1))
    return {"angles": angles, "monotone_decreasing": decreasing}
