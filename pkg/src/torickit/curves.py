"""Rational curves into toric varieties in Cox coordinates.

A curve is one binary form per ray; it is well defined when, for every
primitive collection of the fan, the member forms share no root.  Points are
Cox coordinate representatives; equality of points is decided exactly through
character equations of the grading.  Interpolation pins the representatives
at the prescribed parameters, so pass-through verification is exact, and the
avoidance check factors the pulled-back ideal over the rationals, so every
witness is exact too.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AvoidanceRetryExceededError,
    DegreeTooSmallError,
    GradingMismatchError,
    InhomogeneousError,
    InputError,
    InterpolationFailedError,
)
from .fans import Fan, Violation, primitive_collections
from .forms import (
    BinaryForm,
    factor_form,
    form_gcd_many,
    linear_root,
    params_equal,
)
from .grading import class_grading, wp_cover_weights
from .lattice import IntegerMatrix, integer_kernel, integer_solve, rational_rank

_MASK64 = (1 << 64) - 1
_SEED_STRIDE = 0x9E3779B97F4A7C15


def derive_seed(seed: int, attempt: int) -> int:
    """Stateless per-attempt seed; parallel retries never share a stream."""
    return (int(seed) ^ (attempt * _SEED_STRIDE)) & _MASK64


@dataclass(frozen=True)
class PointSpec:
    """A point in Cox coordinates; the vanishing pattern is derived."""

    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coordinates", tuple(Fraction(c) for c in self.coordinates)
        )

    @property
    def vanishing_pattern(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coordinates) if c == 0)


def point_on_fan(fan: Fan, point: PointSpec) -> bool:
    """The vanishing pattern avoids the irrelevant locus (lies in some cone)."""
    if len(point.coordinates) != len(fan.rays):
        return False
    pattern = set(point.vanishing_pattern)
    return any(pattern <= set(c) for c in fan.max_cones) or not pattern


@dataclass(frozen=True)
class CoxCurve:
    """Binary forms per ray plus the class of the degree vector."""

    target: Fan
    forms: tuple[BinaryForm, ...]
    degree_class: tuple[int, ...]


@dataclass(frozen=True)
class CurveValidation:
    valid: bool
    issues: tuple[Violation, ...]


def _degree_vector(curve: CoxCurve):
    """Per-coordinate degrees with zero coordinates completed so the weighted
    ray sum vanishes; None when no completion exists."""
    fan = curve.target
    fixed = {}
    zero_idx = []
    for i, f in enumerate(curve.forms):
        if f.is_zero:
            zero_idx.append(i)
        else:
            fixed[i] = f.degree
    residue = [
        -sum(fixed[i] * fan.rays[i][j] for i in fixed) for j in range(fan.rank)
    ]
    if not zero_idx:
        return tuple(fixed[i] for i in range(len(curve.forms))) if not any(residue) else None
    sol = integer_solve(
        IntegerMatrix.from_rows([fan.rays[i] for i in zero_idx]), residue
    )
    if sol is None:
        return None
    completion = dict(zip(zero_idx, sol))
    return tuple(
        fixed[i] if i in fixed else completion[i] for i in range(len(curve.forms))
    )


def validate_curve(curve: CoxCurve) -> CurveValidation:
    """Well-definedness in Cox coordinates, with diagnostics.

    Checks the form count, the grading consistency of the degrees, that the
    always-vanishing coordinates avoid the irrelevant locus, and that every
    primitive collection of forms has constant gcd.
    """
    fan = curve.target
    issues: list[Violation] = []
    if len(curve.forms) != len(fan.rays):
        issues.append(Violation("FormCount", "one form per ray is required"))
        return CurveValidation(False, tuple(issues))
    degrees = _degree_vector(curve)
    if degrees is None:
        issues.append(
            Violation("DegreeInconsistent", "degrees admit no grading-compatible completion")
        )
    else:
        grading = class_grading(fan)
        if grading.degree(degrees) != tuple(curve.degree_class):
            issues.append(
                Violation(
                    "DegreeClassMismatch",
                    f"declared class {tuple(curve.degree_class)} != computed {grading.degree(degrees)}",
                )
            )
    zero_set = {i for i, f in enumerate(curve.forms) if f.is_zero}
    if zero_set and not any(zero_set <= set(c) for c in fan.max_cones):
        issues.append(
            Violation("ZeroCoordinates", f"coordinates {sorted(zero_set)} vanish identically off every cone")
        )
    for coll in primitive_collections(fan):
        g = form_gcd_many([curve.forms[i] for i in coll])
        if g.is_zero or g.degree > 0:
            detail = "all forms vanish" if g.is_zero else f"common factor {g.coefficients}"
            issues.append(Violation("CommonRoot", f"primitive collection {coll}: {detail}"))
    return CurveValidation(not issues, tuple(issues))


def evaluate_curve(curve: CoxCurve, param) -> PointSpec:
    """Coordinate-wise evaluation at a parameter value (s : t)."""
    s, t = (Fraction(x) for x in param)
    if s == 0 and t == 0:
        raise InputError("(0 : 0) is not a parameter value")
    return PointSpec(tuple(f.evaluate(s, t) for f in curve.forms))


def points_equal(fan: Fan, a: PointSpec, b: PointSpec) -> bool:
    """Equality in the variety: same pattern and ratio vector in the image of
    the Cox torus, decided by the character equations of the grading."""
    for p in (a, b):
        if not point_on_fan(fan, p):
            raise InputError(f"{p.coordinates} does not describe a point of the variety")
    if a.vanishing_pattern != b.vanishing_pattern:
        return False
    nz = [i for i in range(len(fan.rays)) if i not in set(a.vanishing_pattern)]
    if not nz:
        return True
    ratios = [b.coordinates[i] / a.coordinates[i] for i in nz]
    k = len(fan.rays)
    rows = []
    for i in nz:
        rows.append(tuple(1 if j == i else 0 for j in range(k)))
    transpose = IntegerMatrix.from_rows(fan.rays).transpose()
    rows.extend(transpose.entries)
    kernel = integer_kernel(IntegerMatrix.from_rows(rows))
    for row in kernel.entries:
        value = Fraction(1)
        for ratio, m in zip(ratios, row[: len(nz)]):
            value *= ratio**m
        if value != 1:
            return False
    return True


def _linear_form_vanishing_at(param) -> BinaryForm:
    s0, t0 = param
    return BinaryForm((-Fraction(s0), Fraction(t0)))  # t0*s - s0*t


def _nonvanishing_linear(params) -> BinaryForm:
    c = 0
    while True:
        form = BinaryForm((Fraction(c), Fraction(1)))  # s + c*t
        if all(form.evaluate(*p) != 0 for p in params):
            return form
        c += 1


def _random_form(rng: random.Random, degree: int, bound: int) -> BinaryForm:
    return BinaryForm(tuple(Fraction(rng.randint(-bound, bound)) for _ in range(degree + 1)))


def interpolate_through_points(
    fan: Fan,
    points,
    params,
    degree: int,
    seed: int = 0,
    attempts: int = 8,
) -> CoxCurve:
    """A curve of the given degree through the prescribed points.

    Each coordinate of weight q carries a form of degree ``degree * q``; the
    Cox representatives are pinned exactly at the parameters (particular
    Lagrange solution) and the remaining freedom is drawn from the seeded
    stream, coefficients uniform in [-B, B], B doubling per retry.
    """
    weights = wp_cover_weights(fan)
    pts = [p if isinstance(p, PointSpec) else PointSpec(tuple(p)) for p in points]
    prm = [tuple(Fraction(x) for x in p) for p in params]
    r = len(pts)
    if len(prm) != r:
        raise InputError("one parameter value per point is required")
    # d+1 coefficients must fit r pinned values in every coordinate
    if degree + 1 < r:
        raise DegreeTooSmallError(f"degree {degree} cannot fit {r} points")
    for p in pts:
        if not point_on_fan(fan, p):
            raise InputError(f"{p.coordinates} does not describe a point of the variety")
    for i in range(r):
        for j in range(i + 1, r):
            if params_equal(prm[i], prm[j]):
                raise InputError("parameter values must be distinct")
            if points_equal(fan, pts[i], pts[j]):
                raise InputError("points must be distinct")

    vanish = [_linear_form_vanishing_at(p) for p in prm]
    eta = _nonvanishing_linear(prm) if prm else BinaryForm.constant(1)
    base = BinaryForm.constant(1)
    for v in vanish:
        base = base * v  # vanishes at every parameter; degree r

    grading = class_grading(fan)
    degree_vector = tuple(degree * q for q in weights)
    degree_class = grading.degree(degree_vector)

    for attempt in range(attempts):
        rng = random.Random(derive_seed(seed, attempt))
        bound = 10 * (degree + 1) * (1 << attempt)
        forms = []
        for i, q in enumerate(weights):
            d_i = degree * q
            particular = BinaryForm.zero()
            for j in range(r):
                y = pts[j].coordinates[i]
                if y == 0:
                    continue
                lagrange = BinaryForm.constant(1)
                for l in range(r):
                    if l != j:
                        lagrange = lagrange * vanish[l]
                lagrange = lagrange * eta.power(d_i - (r - 1))
                scale = lagrange.evaluate(*prm[j])
                particular = particular + (y / scale) * lagrange
            generic = base * _random_form(rng, d_i - r, bound)
            f = particular + generic if not particular.is_zero else generic
            if not f.is_zero and f.degree != d_i:
                raise AssertionError("interpolant degree drifted")
            forms.append(f)
        curve = CoxCurve(fan, tuple(forms), degree_class)
        if not validate_curve(curve).valid:
            continue
        if all(
            points_equal(fan, evaluate_curve(curve, prm[j]), pts[j]) for j in range(r)
        ):
            return curve
    raise InterpolationFailedError(
        f"no valid interpolant after {attempts} attempts (seed {seed})"
    )


@dataclass(frozen=True)
class CoxPolynomial:
    """Polynomial in the ray variables: (exponent vector, coefficient) terms."""

    variables: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        canon: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self.terms:
            e = tuple(int(x) for x in exps)
            if len(e) != self.variables or any(x < 0 for x in e):
                raise InputError("bad exponent vector")
            c = canon.get(e, Fraction(0)) + Fraction(coeff)
            canon[e] = c
        object.__setattr__(
            self,
            "terms",
            tuple(sorted((e, c) for e, c in canon.items() if c != 0)),
        )

    @classmethod
    def coordinate(cls, variables: int, index: int) -> "CoxPolynomial":
        exps = tuple(1 if j == index else 0 for j in range(variables))
        return cls(variables, ((exps, Fraction(1)),))

    def pullback(self, forms) -> BinaryForm:
        out = BinaryForm.zero()
        for exps, coeff in self.terms:
            term = BinaryForm.constant(coeff)
            for i, e in enumerate(exps):
                if e:
                    if forms[i].is_zero:
                        term = BinaryForm.zero()
                        break
                    term = term * forms[i].power(e)
            out = out + term
        return out


def orbit_closure_ideal(fan: Fan, cone_indices) -> tuple[CoxPolynomial, ...]:
    """Generators of an orbit closure: the coordinates of the cone's rays."""
    k = len(fan.rays)
    return tuple(CoxPolynomial.coordinate(k, i) for i in sorted(set(cone_indices)))


@dataclass(frozen=True)
class Witness:
    """One intersection event: a rational parameter or an irreducible factor."""

    parameter: tuple[Fraction, Fraction] | None
    factor: BinaryForm
    locus: str


@dataclass(frozen=True)
class AvoidanceReport:
    verdict: str  # "disjoint" or "meets"
    witnesses: tuple[Witness, ...]
    allowed_hits: tuple[Witness, ...]


def avoidance_verify(
    curve: CoxCurve, generators, allowed=(), locus: str = "S"
) -> AvoidanceReport:
    """Verify the curve meets the vanishing locus of the generators only at
    allowed (parameter, point) pairs.

    Pulls every generator back along the forms, takes the gcd over the
    rationals, and factors it; rational roots become witnesses matched
    against the allowed list, irreducible factors of higher degree stay
    blocking witnesses.
    """
    validation = validate_curve(curve)
    if not validation.valid:
        raise InputError("avoidance check requires a valid curve")
    grading = class_grading(curve.target)
    gens = tuple(generators)
    if not gens:
        raise InputError("the locus needs at least one generator")
    for g in gens:
        # a monomial's class is the degree of its exponent vector
        classes = {grading.degree(exps) for exps, _ in g.terms}
        if len(classes) > 1:
            raise InhomogeneousError("generator is not homogeneous for the grading")
    pullbacks = [g.pullback(curve.forms) for g in gens]
    gcd = form_gcd_many(pullbacks)
    witnesses: list[Witness] = []
    allowed_hits: list[Witness] = []
    allowed_norm = [
        ((Fraction(p[0]), Fraction(p[1])), pt if isinstance(pt, PointSpec) else PointSpec(tuple(pt)))
        for p, pt in allowed
    ]
    if gcd.is_zero:
        witnesses.append(Witness(None, BinaryForm.zero(), locus))
    elif gcd.degree > 0:
        for factor, _mult in factor_form(gcd):
            if factor.degree == 1:
                param = linear_root(factor)
                hit = None
                for ap, apoint in allowed_norm:
                    if params_equal(param, ap) and points_equal(
                        curve.target, evaluate_curve(curve, param), apoint
                    ):
                        hit = Witness(param, factor, locus)
                        break
                if hit is not None:
                    allowed_hits.append(hit)
                else:
                    witnesses.append(Witness(param, factor, locus))
            else:
                witnesses.append(Witness(None, factor, locus))
    verdict = "disjoint" if not witnesses else "meets"
    return AvoidanceReport(verdict, tuple(witnesses), tuple(allowed_hits))


def _linear_codimension_check(fan: Fan, generators) -> None:
    """For loci cut out by linear forms, require codimension at least two."""
    gens = tuple(generators)
    rows = []
    for g in gens:
        if any(sum(exps) != 1 for exps, _ in g.terms):
            return  # nonlinear generators: codimension declared by the caller
        row = [Fraction(0)] * len(fan.rays)
        for exps, coeff in g.terms:
            row[exps.index(1)] = coeff
        rows.append(row)
    if rows and rational_rank(rows) < 2:
        raise InputError("locus has codimension < 2")


def interpolate_avoiding(
    fan: Fan,
    points,
    params,
    generators,
    degree: int,
    seed: int = 0,
    budget: int = 8,
    locus: str = "S",
) -> CoxCurve:
    """Las Vegas loop: draw a seeded interpolant, verify avoidance, retry.

    The prescribed (parameter, point) pairs are the only allowed hits; on
    budget exhaustion the error carries the last report.
    """
    _linear_codimension_check(fan, generators)
    allowed = tuple(zip([tuple(Fraction(x) for x in p) for p in params], points))
    last: AvoidanceReport | None = None
    for attempt in range(budget):
        try:
            curve = interpolate_through_points(
                fan, points, params, degree, seed=derive_seed(seed, attempt), attempts=1
            )
        except InterpolationFailedError:
            continue
        report = avoidance_verify(curve, generators, allowed, locus)
        last = report
        if report.verdict == "disjoint":
            return curve
    raise AvoidanceRetryExceededError(last)


def pushforward_rank_one(curve: CoxCurve, target: Fan) -> CoxCurve:
    """Reinterpret the form tuple on a rank-one target sharing the rays.

    The weighted projective cover shares Cox coordinates, so the tuple
    transfers verbatim; only the grading is recomputed and revalidated.
    """
    if target.rays != curve.target.rays or target.max_cones != curve.target.max_cones:
        raise GradingMismatchError("target must share the cover's rays and cones")
    wp_cover_weights(target)  # rank-one targets only
    candidate = CoxCurve(target, curve.forms, curve.degree_class)
    degrees = _degree_vector(candidate)
    if degrees is None:
        raise GradingMismatchError("form degrees do not fit the target grading")
    grading = class_grading(target)
    out = CoxCurve(target, curve.forms, grading.degree(degrees))
    validation = validate_curve(out)
    if not validation.valid:
        raise GradingMismatchError(
            "; ".join(v.code for v in validation.issues) or "invalid on target"
        )
    return out
