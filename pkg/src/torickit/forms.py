"""Homogeneous forms in two parameters (s, t) over the rationals.

Coefficient index i holds the coefficient of ``s^i * t^(degree-i)``.  The
zero form is the canonical empty tuple ("degree marker zero"); a nonzero form
of degree d always stores d+1 coefficients, leading zeros allowed (they are
roots at (1:0)).  Factorization into irreducibles goes through the
dehomogenization at t = 1, with the power of t tracked separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy


@dataclass(frozen=True)
class BinaryForm:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if coeffs and not any(coeffs):
            coeffs = ()
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls) -> "BinaryForm":
        return cls(())

    @classmethod
    def from_coefficients(cls, coeffs) -> "BinaryForm":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def constant(cls, value) -> "BinaryForm":
        v = Fraction(value)
        return cls((v,)) if v else cls(())

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Homogeneous degree; undefined (raises) for the zero form."""
        if self.is_zero:
            raise ValueError("the zero form has no degree")
        return len(self.coefficients) - 1

    def evaluate(self, s, t) -> Fraction:
        ss, tt = Fraction(s), Fraction(t)
        if self.is_zero:
            return Fraction(0)
        d = self.degree
        return sum(
            c * ss**i * tt ** (d - i) for i, c in enumerate(self.coefficients)
        )

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return BinaryForm(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero or other.is_zero:
            return BinaryForm.zero()
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    if b:
                        out[i + j] += a * b
        return BinaryForm(tuple(out))

    def __rmul__(self, scalar) -> "BinaryForm":
        c = Fraction(scalar)
        if c == 0 or self.is_zero:
            return BinaryForm.zero()
        return BinaryForm(tuple(c * x for x in self.coefficients))

    def power(self, e: int) -> "BinaryForm":
        if e < 0:
            raise ValueError("negative power of a form")
        out = BinaryForm((Fraction(1),))
        for _ in range(e):
            out = out * self
        return out


FORM_S = BinaryForm((Fraction(0), Fraction(1)))  # the form s
FORM_T = BinaryForm((Fraction(1), Fraction(0)))  # the form t


def _poly_divmod(num, den):
    """Euclidean division of dense coefficient lists (index = s power)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        q = num[i] / lead
        if q:
            quot[i - dn] = q
            for j in range(dn + 1):
                num[i - dn + j] -= q * den[j]
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_gcd(a, b):
    """Monic gcd of dense univariate rational polynomials (lists)."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def _dehomogenize(form: BinaryForm):
    """(power of t, dense polynomial in s) with f = t^power * hom(poly)."""
    if form.is_zero:
        raise ValueError("cannot dehomogenize the zero form")
    coeffs = list(form.coefficients)
    e = max(i for i, c in enumerate(coeffs) if c)
    return form.degree - e, coeffs[: e + 1]


def _homogenize(tpow: int, poly) -> BinaryForm:
    deg = len(poly) - 1 + tpow
    out = [Fraction(0)] * (deg + 1)
    for i, c in enumerate(poly):
        out[i] = Fraction(c)
    return BinaryForm(tuple(out))


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic-normalized gcd as a binary form (t powers included)."""
    if f.is_zero:
        return _normalize(g)
    if g.is_zero:
        return _normalize(f)
    tf, pf = _dehomogenize(f)
    tg, pg = _dehomogenize(g)
    return _homogenize(min(tf, tg), _poly_gcd(pf, pg))


def _normalize(form: BinaryForm) -> BinaryForm:
    if form.is_zero:
        return form
    tpow, poly = _dehomogenize(form)
    lead = poly[-1]
    return _homogenize(tpow, [c / lead for c in poly])


def form_gcd_many(forms) -> BinaryForm:
    out = BinaryForm.zero()
    for f in forms:
        out = form_gcd(out, f)
        if not out.is_zero and out.degree == 0:
            return out
    return out


_S = sympy.Symbol("s")


def factor_form(form: BinaryForm):
    """Irreducible factorization over Q: list of (BinaryForm, multiplicity).

    The factor list is sorted deterministically; a root at (1:0) appears as a
    power of the form t.  The constant content is dropped (factors are monic
    in the dehomogenization).
    """
    if form.is_zero:
        raise ValueError("cannot factor the zero form")
    tpow, poly = _dehomogenize(form)
    out = []
    if tpow:
        out.append((FORM_T, tpow))
    expr = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly)], _S
    )
    _, factors = expr.factor_list()
    for fac, mult in factors:
        cs = fac.all_coeffs()  # descending powers of s
        dense = [Fraction(c.p, c.q) for c in reversed(cs)]
        lead = dense[-1]
        dense = [c / lead for c in dense]
        out.append((_homogenize(0, dense), int(mult)))
    return sorted(out, key=lambda fm: (fm[0].degree, fm[0].coefficients))


def linear_root(form: BinaryForm):
    """The projective root (s0 : t0) of a degree-one form, as Fractions."""
    if form.is_zero or form.degree != 1:
        raise ValueError("root extraction needs a degree-one form")
    c0, c1 = form.coefficients  # c0*t + c1*s
    return (-c0, c1) if c1 else (Fraction(1), Fraction(0))


def params_equal(p, q) -> bool:
    """Equality of parameter values as points of the projective line."""
    (a, b), (c, d) = p, q
    a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
    if (a, b) == (0, 0) or (c, d) == (0, 0):
        raise ValueError("(0 : 0) is not a parameter value")
    return a * d == b * c
