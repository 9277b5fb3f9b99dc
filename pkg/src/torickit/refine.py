"""Fan subdivisions: stellar subdivision, simplicialization, resolution.

All rules are deterministic so that step logs replay byte-identically:

* simplicialization triangulates each non-simplicial cone by pulling at its
  least global ray index, recursing on facets (no new rays);
* the resolution loop subdivides at the primitive parallelepiped point that
  strictly decreases the (max multiplicity, count at max) pair, minimal by
  (barycentric coordinate sum, then lexicographic).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import (
    InputError,
    InvalidFanError,
    NotFixedPointError,
    NotSimplicialError,
    RayOutsideSupportError,
)
from .fans import (
    Cone,
    Fan,
    _geometry,
    cone_contains,
    cone_multiplicity,
    cone_relint_contains,
    is_simplicial,
    support_contains,
    validate_fan,
)
from .lattice import primitive_vector, solve_rational


@dataclass(frozen=True)
class SubdivisionStep:
    """One subdivision event; cone index sets refer to the output ray list,
    which extends the input's (a new ray, if any, is appended last)."""

    kind: str  # "stellar" or "triangulation"
    new_ray: tuple[int, ...] | None
    before: tuple[tuple[int, ...], ...]
    after: tuple[tuple[int, ...], ...]


def stellar_subdivision(fan: Fan, v) -> tuple[Fan, SubdivisionStep]:
    """Star subdivision at a primitive lattice point of the support.

    Every cone containing ``v`` is replaced by the joins of ``v`` with its
    facets not containing ``v``; all other cones survive unchanged.
    """
    vec = tuple(int(x) for x in v)
    if tuple(primitive_vector(vec)) != vec:
        raise InputError(f"subdivision ray {vec} is not primitive")
    if not support_contains(fan, vec):
        raise RayOutsideSupportError(f"{vec} lies outside the support of the fan")
    if vec in fan.rays:
        return fan, SubdivisionStep("stellar", vec, (), ())
    new_index = len(fan.rays)
    rays = fan.rays + (vec,)
    new_cones: list[tuple[int, ...]] = []
    before: list[tuple[int, ...]] = []
    after: list[tuple[int, ...]] = []
    for c in fan.max_cones:
        cone = fan.cone(c)
        if not cone_contains(cone, vec):
            new_cones.append(c)
            continue
        before.append(c)
        geo = _geometry(cone)
        for facet_positions in geo.facet_rays:
            facet_rays = tuple(cone.rays[p] for p in sorted(facet_positions))
            if cone_contains(Cone(fan.rank, facet_rays), vec):
                continue
            child = tuple(sorted({c[p] for p in facet_positions} | {new_index}))
            new_cones.append(child)
            after.append(child)
    result = Fan(fan.rank, rays, tuple(new_cones))
    return result, SubdivisionStep("stellar", vec, tuple(sorted(before)), tuple(sorted(set(after))))


def _pull_triangulate(fan: Fan, indices: tuple[int, ...]) -> list[tuple[int, ...]]:
    cone = fan.cone(indices)
    if len(indices) == cone.dim:
        return [tuple(indices)]
    v = min(indices)
    vpos = indices.index(v)
    geo = _geometry(cone)
    out = []
    for facet_positions in geo.facet_rays:
        if vpos in facet_positions:
            continue
        sub = tuple(sorted(indices[p] for p in facet_positions))
        for simplex in _pull_triangulate(fan, sub):
            out.append(tuple(sorted(set(simplex) | {v})))
    return out


def qfactorialize(fan: Fan) -> tuple[Fan, tuple[SubdivisionStep, ...]]:
    """Triangulate every non-simplicial cone using only its own rays.

    A small modification: the ray set is unchanged, so the induced map is an
    isomorphism in codimension one.
    """
    report = validate_fan(fan)
    if not report.ok:
        raise InvalidFanError("; ".join(v.code for v in report.violations))
    steps: list[SubdivisionStep] = []
    new_cones: list[tuple[int, ...]] = []
    for c in fan.max_cones:
        if len(c) == fan.cone(c).dim:
            new_cones.append(c)
            continue
        simplices = sorted(set(_pull_triangulate(fan, c)))
        steps.append(SubdivisionStep("triangulation", None, (c,), tuple(simplices)))
        new_cones.extend(simplices)
    return Fan(fan.rank, fan.rays, tuple(new_cones)), tuple(steps)


@lru_cache(maxsize=None)
def _generator_inverse(cone: Cone):
    """Rows of (rays-as-columns)^-1 for a full-dimensional simplicial cone,
    or None when the cone is singular or lower-dimensional."""
    rays = cone.rays
    n = cone.rank
    if len(rays) != n:
        return None
    m = [[Fraction(rays[i][j]) for i in range(n)] for j in range(n)]
    columns = []
    for i in range(n):
        rhs = [Fraction(1 if j == i else 0) for j in range(n)]
        sol = solve_rational(m, rhs)
        if sol is None:
            return None
        columns.append(sol)
    rows = tuple(tuple(columns[j][i] for j in range(n)) for i in range(n))
    # a rank-deficient square system may still return a pinned solution;
    # verify rows @ m is the identity before trusting the cache
    for i in range(n):
        for j in range(n):
            want = Fraction(1 if i == j else 0)
            if sum(rows[i][k] * m[k][j] for k in range(n)) != want:
                return None
    return rows


def _barycentric(cone: Cone, v):
    """Coordinates of ``v`` in the generators of a simplicial cone, or None."""
    rays = cone.rays
    inv = _generator_inverse(cone)
    if inv is not None:
        vec = tuple(Fraction(x) for x in v)
        return tuple(sum(row[j] * vec[j] for j in range(cone.rank)) for row in inv)
    cols = [[Fraction(rays[i][j]) for i in range(len(rays))] for j in range(cone.rank)]
    sol = solve_rational(cols, [Fraction(x) for x in v])
    if sol is None:
        return None
    for j in range(cone.rank):
        if sum(Fraction(rays[i][j]) * sol[i] for i in range(len(rays))) != Fraction(v[j]):
            return None
    return tuple(sol)


@lru_cache(maxsize=None)
def _parallelepiped_points(cone: Cone):
    """Nonzero lattice points with all generator coordinates in [0, 1)."""
    rays = cone.rays
    n = cone.rank
    lo = [sum(min(r[j], 0) for r in rays) for j in range(n)]
    hi = [sum(max(r[j], 0) for r in rays) for j in range(n)]
    out = []
    for pt in product(*(range(lo[j], hi[j] + 1) for j in range(n))):
        if not any(pt):
            continue
        lam = _barycentric(cone, pt)
        if lam is None:
            continue
        if all(0 <= x < 1 for x in lam):
            out.append((pt, lam))
    return tuple(out)


def _multiplicity_profile(fan: Fan) -> tuple[int, int]:
    """(max multiplicity, number of maximal cones achieving it)."""
    mults = [cone_multiplicity(fan.cone(c)) for c in fan.max_cones]
    m = max(mults, default=1)
    return m, sum(1 for x in mults if x == m)


def _trial_profile(current: Fan, mults: dict, v) -> tuple[int, int]:
    """Multiplicity profile after a stellar subdivision at ``v``, computed
    from barycentric data without building the subdivided fan.

    Replacing generator ``r_j`` of a simplicial cone by ``v`` scales the
    multiplicity by the j-th barycentric coordinate of ``v``.
    """
    trial: list[int] = []
    for c, m in mults.items():
        lam = _barycentric(current.cone(c), v)
        if lam is None or any(x < 0 for x in lam):
            trial.append(m)
            continue
        for x in lam:
            if x > 0:
                child = x * m
                if child.denominator != 1:
                    raise AssertionError("child multiplicity must be integral")
                trial.append(int(child))
    mx = max(trial, default=1)
    return mx, sum(1 for x in trial if x == mx)


def resolve_to_smooth(fan: Fan) -> tuple[Fan, tuple[SubdivisionStep, ...]]:
    """Stellar-subdivide until every cone is smooth.

    Each step inserts a primitive lattice point from the half-open
    parallelepiped of a non-smooth cone, chosen so the multiplicity profile
    strictly decreases; termination is checkable from the step log.
    """
    if not is_simplicial(fan):
        raise NotSimplicialError("resolve a simplicial fan (qfactorialize first)")
    current = fan
    steps: list[SubdivisionStep] = []
    while True:
        mults = {c: cone_multiplicity(current.cone(c)) for c in current.max_cones}
        bad = [c for c, m in mults.items() if m > 1]
        if not bad:
            return current, tuple(steps)
        mx = max(mults.values())
        profile = (mx, sum(1 for m in mults.values() if m == mx))
        candidates: dict[tuple[int, ...], tuple] = {}
        for c in bad:
            cone = current.cone(c)
            for pt, lam in _parallelepiped_points(cone):
                prim = primitive_vector(pt)
                nz = next(j for j, x in enumerate(pt) if x)
                g = pt[nz] // prim[nz]
                score = (sum(x / g for x in lam), prim)
                if prim not in candidates or score < candidates[prim]:
                    candidates[prim] = score
        chosen = None
        for prim, _score in sorted(candidates.items(), key=lambda kv: kv[1]):
            if _trial_profile(current, mults, prim) < profile:
                chosen = prim
                break
        if chosen is None:
            raise AssertionError("no multiplicity-reducing point; resolution is stuck")
        current, step = stellar_subdivision(current, chosen)
        steps.append(step)


def resolve_marked(fan: Fan, marked) -> tuple[Fan, tuple[SubdivisionStep, ...]]:
    """Resolve so each marked fixed point's preimage is divisorial.

    Marked cones must be full-dimensional cones of the fan (invariant fixed
    points); each is stellar-subdivided at the primitivized ray sum, placing
    an exceptional divisor over the point, then the fan is simplicialized and
    resolved.  Only singular or marked cones are refined, so the induced map
    is an isomorphism elsewhere.
    """
    marked_sets = [tuple(sorted(set(int(i) for i in m))) for m in marked]
    max_cones = set(fan.max_cones)
    for m in marked_sets:
        if m not in max_cones or fan.cone(m).dim != fan.rank:
            raise NotFixedPointError(f"{m} is not a full-dimensional cone of the fan")
    current = fan
    steps: list[SubdivisionStep] = []
    for m in sorted(marked_sets):
        center = primitive_vector(
            tuple(sum(fan.rays[i][j] for i in m) for j in range(fan.rank))
        )
        if not cone_relint_contains(fan.cone(m), center):
            raise AssertionError("ray sum must be interior to a full-dimensional cone")
        current, step = stellar_subdivision(current, center)
        steps.append(step)
    if not is_simplicial(current):
        current, tri_steps = qfactorialize(current)
        steps.extend(tri_steps)
    current, res_steps = resolve_to_smooth(current)
    steps.extend(res_steps)
    return current, tuple(steps)


def interior_ray_indices(fan: Fan, original: Fan, cone_indices) -> tuple[int, ...]:
    """Rays of ``fan`` interior to a (full-dimensional) cone of ``original``;
    these are the exceptional divisors over that fixed point."""
    cone = original.cone(cone_indices)
    return tuple(
        i for i, r in enumerate(fan.rays) if cone_relint_contains(cone, r)
    )


def apply_steps(fan: Fan, steps) -> Fan:
    """Replay a subdivision log; the log is a faithful certificate."""
    current = fan
    for step in steps:
        if step.kind == "stellar":
            current, replayed = stellar_subdivision(current, step.new_ray)
            if (replayed.before, replayed.after) != (step.before, step.after):
                raise InputError("stellar step does not replay on this fan")
        elif step.kind == "triangulation":
            cones = set(current.max_cones)
            for b in step.before:
                if b not in cones:
                    raise InputError("triangulation step does not match the fan")
                cones.remove(b)
            cones.update(step.after)
            current = Fan(current.rank, current.rays, tuple(sorted(cones)))
        else:
            raise InputError(f"unknown step kind {step.kind!r}")
    return current
