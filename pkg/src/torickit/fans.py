"""Fans, cones, and the orbit-cone correspondence, over exact arithmetic.

Cone geometry (spans, facets, membership) is derived on demand from the
generator description and cached; nothing here touches floating point.  The
completeness test is the wall-pairing criterion: pure of top dimension, every
wall shared by exactly two maximal cones, and the maximal cones connected
through walls.  That criterion is exact and sufficient for the complete fans
this toolkit targets; a support-volume fallback is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import InvalidFanError, NotSimplicialError
from .lattice import (
    IntegerMatrix,
    clear_denominators,
    hermite_normal_form,
    kernel_rational,
    primitive_vector,
    smith_normal_form,
    solve_rational,
)


@dataclass(frozen=True)
class Cone:
    """A polyhedral cone given by its generating rays in ``Z^rank``."""

    rank: int
    rays: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))

    @property
    def dim(self) -> int:
        return _geometry(self).dim


@dataclass(frozen=True)
class _ConeGeometry:
    """Cached derived data: span basis, facet inequalities, facet ray sets."""

    dim: int
    span: tuple[tuple[int, ...], ...]  # lattice basis rows of the saturated span
    # facet normals in span coordinates, oriented nonnegative on the cone
    facet_normals: tuple[tuple[Fraction, ...], ...]
    # per facet, the positions of the generating rays lying on it
    facet_rays: tuple[frozenset[int], ...]
    ray_span_coords: tuple[tuple[Fraction, ...], ...]


def _span_coords(span, v):
    """Coordinates of ``v`` in the span basis, or None if outside the span."""
    if not span:
        return () if not any(v) else None
    cols = [[Fraction(row[j]) for row in span] for j in range(len(v))]
    sol = solve_rational(cols, [Fraction(x) for x in v])
    if sol is None:
        return None
    # solve_rational pins free variables to 0; the span basis has full row
    # rank, so the solution, if it exists, is unique.
    for j in range(len(v)):
        if sum(Fraction(span[i][j]) * sol[i] for i in range(len(span))) != Fraction(v[j]):
            return None
    return tuple(sol)


@lru_cache(maxsize=None)
def _geometry(cone: Cone) -> _ConeGeometry:
    rays = cone.rays
    if not rays:
        return _ConeGeometry(0, (), (), (), ())
    h, _ = hermite_normal_form(IntegerMatrix.from_rows(rays))
    span = tuple(r for r in h.entries if any(r))
    d = len(span)
    coords = []
    for r in rays:
        c = _span_coords(span, r)
        if c is None:  # cannot happen: rays generate the span
            raise AssertionError("ray outside its own span")
        coords.append(c)
    coords = tuple(coords)

    normals: list[tuple[Fraction, ...]] = []
    facet_rays: list[frozenset[int]] = []
    if d == 1:
        signs = {c[0] > 0 for c in coords if c[0] != 0}
        if len(signs) == 1:
            sign = 1 if signs == {True} else -1
            normals.append((Fraction(sign),))
            facet_rays.append(frozenset())
        # mixed signs: a line, no facets
    elif d >= 2:
        seen = set()
        for subset in combinations(range(len(rays)), d - 1):
            mat = [list(coords[i]) for i in subset]
            kern = kernel_rational(mat) if mat else []
            if len(kern) != 1:
                continue
            normal = tuple(kern[0])
            vals = [sum(a * b for a, b in zip(normal, c)) for c in coords]
            if all(v >= 0 for v in vals):
                oriented = normal
            elif all(v <= 0 for v in vals):
                oriented = tuple(-x for x in normal)
                vals = [-v for v in vals]
            else:
                continue
            key = tuple(clear_denominators(oriented))
            if key in seen:
                continue
            seen.add(key)
            normals.append(tuple(Fraction(x) for x in key))
            facet_rays.append(frozenset(i for i, v in enumerate(vals) if v == 0))
    return _ConeGeometry(d, span, tuple(normals), tuple(facet_rays), coords)


def cone_contains(cone: Cone, v) -> bool:
    """Exact membership of an integer/rational vector in the cone."""
    vec = tuple(Fraction(x) for x in v)
    if not any(vec):
        return True
    geo = _geometry(cone)
    c = _span_coords(geo.span, vec)
    if c is None:
        return False
    if geo.dim >= 1 and not geo.facet_normals:
        return True  # the cone is its whole span
    return all(sum(a * b for a, b in zip(n, c)) >= 0 for n in geo.facet_normals)


def cone_relint_contains(cone: Cone, v) -> bool:
    """Membership in the relative interior of the cone."""
    vec = tuple(Fraction(x) for x in v)
    geo = _geometry(cone)
    if geo.dim == 0:
        return not any(vec)
    c = _span_coords(geo.span, vec)
    if c is None:
        return False
    if not geo.facet_normals:
        return True
    return all(sum(a * b for a, b in zip(n, c)) > 0 for n in geo.facet_normals)


def is_strongly_convex(cone: Cone) -> bool:
    """Whether the cone contains no line (its lineality space is zero)."""
    geo = _geometry(cone)
    if geo.dim == 0:
        return True
    if not geo.facet_normals:
        return False
    lineality = kernel_rational([list(n) for n in geo.facet_normals])
    return not lineality


def _redundant_ray_positions(cone: Cone) -> list[int]:
    """Positions of generators lying in the cone of the other generators."""
    out = []
    for i in range(len(cone.rays)):
        others = Cone(cone.rank, tuple(r for j, r in enumerate(cone.rays) if j != i))
        if cone_contains(others, cone.rays[i]):
            out.append(i)
    return out


def cone_faces(cone: Cone) -> set[frozenset[int]]:
    """All faces as subsets of generator positions (closed under intersection).

    Valid for strongly convex cones whose generators are the extreme rays;
    every face is an intersection of facets and is generated by the rays on it.
    """
    geo = _geometry(cone)
    full = frozenset(range(len(cone.rays)))
    faces = {full}
    frontier = {full}
    while frontier:
        nxt = set()
        for f in frontier:
            for fr in geo.facet_rays:
                g = f & fr
                if g not in faces:
                    faces.add(g)
                    nxt.add(g)
        frontier = nxt
    faces.add(frozenset())
    return faces


@lru_cache(maxsize=None)
def is_smooth_cone(cone: Cone) -> bool:
    """Whether the primitive generators extend to a basis of the lattice."""
    if not cone.rays:
        return True
    geo = _geometry(cone)
    if len(cone.rays) != geo.dim:
        return False
    snf = smith_normal_form(IntegerMatrix.from_rows(cone.rays))
    return all(d == 1 for d in snf.diagonal)


@lru_cache(maxsize=None)
def cone_multiplicity(cone: Cone) -> int:
    """Index of the lattice spanned by the generators inside the saturation
    of their span; 1 exactly for smooth cones."""
    geo = _geometry(cone)
    if len(cone.rays) != geo.dim:
        raise NotSimplicialError("multiplicity requires a simplicial cone")
    if not cone.rays:
        return 1
    snf = smith_normal_form(IntegerMatrix.from_rows(cone.rays))
    mult = 1
    for d in snf.nonzero:
        mult *= d
    return mult


@dataclass(frozen=True)
class Violation:
    """One validation finding; violations are data, not exceptions."""

    code: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class OrbitDescriptor:
    """A torus orbit, named by the ray-index set of its cone."""

    cone: tuple[int, ...]
    orbit_dim: int
    is_singular: bool


@dataclass(frozen=True)
class Fan:
    """A fan: global primitive rays plus maximal cones as ray-index sets."""

    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted({tuple(sorted(set(int(i) for i in c))) for c in self.max_cones}))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)

    def cone(self, indices) -> Cone:
        return Cone(self.rank, tuple(self.rays[i] for i in indices))

    @property
    def ray_count(self) -> int:
        return len(self.rays)


@lru_cache(maxsize=None)
def validate_fan(fan: Fan) -> ValidationReport:
    """Check the fan axioms; returns all violations found.

    Codes: BadRay, NonPrimitiveRay, DuplicateRay, UnusedRay, BadRayIndex,
    NotStronglyConvex, NotExtremeRay, ConeNotMaximal, NotFaceIntersection.
    """
    out: list[Violation] = []
    seen: dict[tuple[int, ...], int] = {}
    for i, r in enumerate(fan.rays):
        if len(r) != fan.rank or not any(r):
            out.append(Violation("BadRay", f"ray {i} = {r} is zero or has wrong length"))
            continue
        if tuple(primitive_vector(r)) != r:
            out.append(Violation("NonPrimitiveRay", f"ray {i} = {r} is not primitive"))
        if r in seen:
            out.append(Violation("DuplicateRay", f"ray {i} duplicates ray {seen[r]}"))
        else:
            seen[r] = i
    used = set()
    bad_index = False
    for c in fan.max_cones:
        for i in c:
            if not (0 <= i < len(fan.rays)):
                out.append(Violation("BadRayIndex", f"cone {c} references missing ray {i}"))
                bad_index = True
            else:
                used.add(i)
    for i in range(len(fan.rays)):
        if i not in used:
            out.append(Violation("UnusedRay", f"ray {i} appears in no cone"))
    if out and (bad_index or any(v.code == "BadRay" for v in out)):
        return ValidationReport(tuple(out))

    for c in fan.max_cones:
        cone = fan.cone(c)
        if not is_strongly_convex(cone):
            out.append(Violation("NotStronglyConvex", f"cone {c} contains a line"))
            continue
        redundant = _redundant_ray_positions(cone)
        for pos in redundant:
            out.append(
                Violation("NotExtremeRay", f"ray {c[pos]} is not extreme in cone {c}")
            )
    if any(v.code in ("NotStronglyConvex", "NotExtremeRay") for v in out):
        return ValidationReport(tuple(out))

    for a, b in combinations(range(len(fan.max_cones)), 2):
        ca, cb = fan.max_cones[a], fan.max_cones[b]
        if set(ca) <= set(cb) or set(cb) <= set(ca):
            out.append(Violation("ConeNotMaximal", f"cone {ca} nested with {cb}"))
            continue
        if not _intersection_is_common_face(fan, ca, cb):
            out.append(
                Violation(
                    "NotFaceIntersection",
                    f"cones {ca} and {cb} do not meet in a common face",
                )
            )
    return ValidationReport(tuple(out))


def _cone_constraints(cone: Cone):
    """Ambient-space description: equations (span) and inequalities (facets).

    Returns (equations, inequalities) as rational row functionals on Z^rank.
    """
    geo = _geometry(cone)
    n = cone.rank
    eqs: list[tuple[Fraction, ...]] = []
    if geo.dim < n:
        # rows orthogonal to the span
        kern = kernel_rational([list(map(Fraction, row)) for row in geo.span]) if geo.span else [
            [Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)
        ]
        eqs = [tuple(v) for v in kern]
    ineqs: list[tuple[Fraction, ...]] = []
    for normal in geo.facet_normals:
        # lift the span-coordinate functional w . (xi * span) to ambient w:
        # solve span @ w = normal; solvable since the span rows are independent
        sol = solve_rational([list(map(Fraction, row)) for row in geo.span], list(normal))
        if sol is None:
            raise AssertionError("facet lift failed")
        ineqs.append(tuple(sol))
    return eqs, ineqs


def _intersection_is_common_face(fan: Fan, ca, cb) -> bool:
    cone_a, cone_b = fan.cone(ca), fan.cone(cb)
    rays_w = _intersection_rays(cone_a, cone_b)
    return _is_face_generated_by(cone_a, rays_w) and _is_face_generated_by(cone_b, rays_w)


def _intersection_rays(cone_a: Cone, cone_b: Cone) -> tuple[tuple[int, ...], ...]:
    """Extreme rays of the intersection of two strongly convex cones."""
    n = cone_a.rank
    eq_a, in_a = _cone_constraints(cone_a)
    eq_b, in_b = _cone_constraints(cone_b)
    eqs = eq_a + eq_b
    joint = kernel_rational([list(e) for e in eqs]) if eqs else [
        [Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)
    ]
    if not joint:
        return ()
    e = len(joint)
    ineqs = in_a + in_b
    # restrict inequalities to joint-span coordinates
    restricted = [
        tuple(sum(f[j] * joint[i][j] for j in range(n)) for i in range(e)) for f in ineqs
    ]

    def to_ambient(coords):
        return tuple(sum(coords[i] * joint[i][j] for i in range(e)) for j in range(n))

    candidates: set[tuple[int, ...]] = set()
    if e == 1:
        for sign in (1, -1):
            pt = [Fraction(sign)]
            if all(sum(a * b for a, b in zip(r, pt)) >= 0 for r in restricted):
                candidates.add(clear_denominators(to_ambient(pt)))
    else:
        for subset in combinations(range(len(restricted)), e - 1):
            mat = [list(restricted[i]) for i in subset]
            kern = kernel_rational(mat)
            if len(kern) != 1:
                continue
            for sign in (1, -1):
                pt = [sign * x for x in kern[0]]
                if all(sum(a * b for a, b in zip(r, pt)) >= 0 for r in restricted):
                    candidates.add(clear_denominators(to_ambient(pt)))
    # drop rays that are nonneg combinations of the others (keep extreme only)
    rays = sorted(candidates)
    extreme = []
    for i, r in enumerate(rays):
        others = Cone(n, tuple(x for j, x in enumerate(rays) if j != i))
        if not cone_contains(others, r):
            extreme.append(r)
    return tuple(extreme)


def _is_face_generated_by(cone: Cone, rays_w) -> bool:
    """Whether cone(rays_w) is a face of ``cone`` (rays_w known inside it)."""
    geo = _geometry(cone)
    if not rays_w:
        return True  # the zero cone is a face of every strongly convex cone
    w_coords = []
    for r in rays_w:
        c = _span_coords(geo.span, r)
        if c is None:
            return False
        w_coords.append(c)
    active = [
        f
        for f, normal in enumerate(geo.facet_normals)
        if all(sum(a * b for a, b in zip(normal, c)) == 0 for c in w_coords)
    ]
    face_positions = frozenset(range(len(cone.rays)))
    for f in active:
        face_positions &= geo.facet_rays[f]
    w = Cone(cone.rank, tuple(rays_w))
    return all(cone_contains(w, cone.rays[p]) for p in face_positions)


def fan_cone_index_sets(fan: Fan) -> list[tuple[int, ...]]:
    """All cones of the fan as sorted global ray-index tuples (with the zero cone)."""
    out: set[tuple[int, ...]] = {()}
    for c in fan.max_cones:
        cone = fan.cone(c)
        for face in cone_faces(cone):
            out.add(tuple(sorted(c[p] for p in face)))
    return sorted(out, key=lambda t: (len(t), t))


def is_simplicial(fan: Fan) -> bool:
    """Every maximal cone has exactly dim-many rays."""
    return all(len(c) == fan.cone(c).dim for c in fan.max_cones)


@lru_cache(maxsize=None)
def fan_walls(fan: Fan) -> dict[frozenset[int], list[int]]:
    """Facet index-sets of maximal cones, mapped to the cones containing them."""
    walls: dict[frozenset[int], list[int]] = {}
    for ci, c in enumerate(fan.max_cones):
        cone = fan.cone(c)
        geo = _geometry(cone)
        for fr in geo.facet_rays:
            key = frozenset(c[p] for p in fr)
            walls.setdefault(key, []).append(ci)
    return walls


@lru_cache(maxsize=None)
def is_complete(fan: Fan) -> bool:
    """Wall-pairing completeness test (see module docstring)."""
    report = validate_fan(fan)
    if not report.ok:
        raise InvalidFanError("; ".join(v.code for v in report.violations))
    if not fan.max_cones:
        return fan.rank == 0
    if any(fan.cone(c).dim != fan.rank for c in fan.max_cones):
        return False
    walls = fan_walls(fan)
    if any(len(cones) != 2 for cones in walls.values()):
        return False
    adj: dict[int, set[int]] = {i: set() for i in range(len(fan.max_cones))}
    for cones in walls.values():
        a, b = cones
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(fan.max_cones)


def support_contains(fan: Fan, v) -> bool:
    return any(cone_contains(fan.cone(c), v) for c in fan.max_cones) or not any(v)


def list_orbits(fan: Fan) -> tuple[OrbitDescriptor, ...]:
    """One orbit per cone (torus included), sorted by decreasing orbit
    dimension, ties broken by the sorted ray-index set.

    With this order, every suffix of the list is closed under passing to
    superfaces, so the union of the closures of any suffix is closed.
    """
    descs = []
    for idx_set in fan_cone_index_sets(fan):
        cone = fan.cone(idx_set)
        descs.append(
            OrbitDescriptor(
                cone=idx_set,
                orbit_dim=fan.rank - cone.dim,
                is_singular=not is_smooth_cone(cone),
            )
        )
    return tuple(sorted(descs, key=lambda d: (-d.orbit_dim, d.cone)))


def codim2_orbits(fan: Fan) -> tuple[OrbitDescriptor, ...]:
    """Orbits of codimension at least 2; realizes the locus the avoidance
    pipeline reduces to, and contains every singular orbit."""
    return tuple(d for d in list_orbits(fan) if d.orbit_dim <= fan.rank - 2)


def primitive_collections(fan: Fan) -> tuple[tuple[int, ...], ...]:
    """Minimal sets of rays not contained in any single cone."""
    if not is_simplicial(fan):
        raise NotSimplicialError("primitive collections need a simplicial fan")
    cone_sets = [set(c) for c in fan.max_cones]
    k = len(fan.rays)

    def in_some_cone(s):
        return any(s <= c for c in cone_sets)

    out = []
    indices = list(range(k))
    for size in range(1, k + 1):
        for comb in combinations(indices, size):
            s = set(comb)
            if in_some_cone(s):
                continue
            if all(in_some_cone(s - {i}) for i in comb):
                out.append(tuple(comb))
    return tuple(sorted(out))
