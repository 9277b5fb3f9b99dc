"""Invariant divisors, ampleness, divisor polytopes, and Fano-type
certificates with klt verification.

A divisor is a rational coefficient per fan ray.  Per-cone linear data
(where it exists) drives the Q-Cartier and strict-convexity tests; the
Fano-type certificate packages the scaled polytope interior point, the
effective ample divisor it produces, and the fractional boundary whose log
anti-canonical class is ample again.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor

from .errors import (
    DimensionMismatchError,
    InputError,
    NoInteriorPointError,
    NotAmpleError,
    NotEffectiveError,
    NotQCartierError,
)
from .fans import Fan, fan_walls, is_complete
from .lattice import solve_rational


@dataclass(frozen=True)
class InvariantDivisor:
    """Rational coefficients indexed by the fan's rays."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    def __add__(self, other: "InvariantDivisor") -> "InvariantDivisor":
        if len(self.coefficients) != len(other.coefficients):
            raise DimensionMismatchError("divisors live on different fans")
        return InvariantDivisor(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __sub__(self, other: "InvariantDivisor") -> "InvariantDivisor":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "InvariantDivisor":
        s = Fraction(scalar)
        return InvariantDivisor(tuple(s * c for c in self.coefficients))

    def __neg__(self) -> "InvariantDivisor":
        return (-1) * self


def zero_divisor(fan: Fan) -> InvariantDivisor:
    return InvariantDivisor(tuple(Fraction(0) for _ in fan.rays))


def ray_divisor(fan: Fan, index: int) -> InvariantDivisor:
    return InvariantDivisor(
        tuple(Fraction(1 if i == index else 0) for i in range(len(fan.rays)))
    )


def canonical_divisor(fan: Fan) -> InvariantDivisor:
    """The canonical class representative: minus the sum of all ray divisors."""
    return InvariantDivisor(tuple(Fraction(-1) for _ in fan.rays))


def div_chi(fan: Fan, u) -> InvariantDivisor:
    """Divisor of the character for a dual vector ``u``: pairing per ray."""
    uu = tuple(Fraction(x) for x in u)
    if len(uu) != fan.rank:
        raise DimensionMismatchError("dual vector length must equal the rank")
    return InvariantDivisor(
        tuple(sum(a * b for a, b in zip(uu, ray)) for ray in fan.rays)
    )


@dataclass(frozen=True)
class CartierData:
    """Per maximal cone, the dual vector with pairing -d_i on the cone rays."""

    entries: tuple[tuple[tuple[int, ...], tuple[Fraction, ...]], ...]

    def vector(self, cone_indices) -> tuple[Fraction, ...]:
        key = tuple(sorted(cone_indices))
        for cone, vec in self.entries:
            if cone == key:
                return vec
        raise KeyError(key)

    @property
    def is_cartier(self) -> bool:
        return all(
            all(x.denominator == 1 for x in vec) for _, vec in self.entries
        )


def cartier_data(fan: Fan, divisor: InvariantDivisor) -> CartierData:
    """Solve for the per-cone linear data; raises NotQCartierError naming the
    first cone where no solution exists."""
    if len(divisor.coefficients) != len(fan.rays):
        raise DimensionMismatchError("divisor length does not match the ray count")
    entries = []
    for c in fan.max_cones:
        rows = [list(map(Fraction, fan.rays[i])) for i in c]
        rhs = [-divisor.coefficients[i] for i in c]
        sol = solve_rational(rows, rhs)
        if sol is None:
            raise NotQCartierError(c)
        entries.append((c, tuple(sol)))
    return CartierData(tuple(entries))


def is_ample(fan: Fan, divisor: InvariantDivisor) -> bool:
    """Strict convexity of the support data across every wall.

    For each wall between maximal cones the linear data of one side must
    strictly dominate on every ray of the other side that is off the wall.
    """
    if not is_complete(fan):
        raise InputError("ampleness is tested on complete fans")
    data = cartier_data(fan, divisor)
    vectors = [data.vector(c) for c in fan.max_cones]
    for wall, (a, b) in _paired_walls(fan).items():
        for src, dst in ((a, b), (b, a)):
            m_src, m_dst = vectors[src], vectors[dst]
            for i in fan.max_cones[dst]:
                if i in wall:
                    continue
                ray = fan.rays[i]
                lhs = sum(x * r for x, r in zip(m_src, ray))
                rhs = sum(x * r for x, r in zip(m_dst, ray))
                if not lhs > rhs:
                    return False
    return True


def _paired_walls(fan: Fan) -> dict[frozenset[int], tuple[int, int]]:
    walls = fan_walls(fan)
    out = {}
    for wall, cones in walls.items():
        if len(cones) != 2:
            raise InputError("fan has an unpaired wall; not complete")
        out[wall] = (cones[0], cones[1])
    return out


@dataclass(frozen=True)
class DivisorPolytope:
    """The rational polytope {m : <m, e_i> + d_i >= 0 for all rays}."""

    rank: int
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]

    def contains(self, m, strict: bool = False) -> bool:
        mm = tuple(Fraction(x) for x in m)
        for normal, off in zip(self.normals, self.offsets):
            val = sum(a * b for a, b in zip(mm, normal)) + off
            if val < 0 or (strict and val == 0):
                return False
        return True

    def scaled(self, k: int) -> "DivisorPolytope":
        return DivisorPolytope(
            self.rank, self.normals, tuple(k * o for o in self.offsets)
        )

    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """All basic feasible points; assumes the polytope is bounded."""
        out = set()
        idx = range(len(self.normals))
        for subset in combinations(idx, self.rank):
            rows = [list(map(Fraction, self.normals[i])) for i in subset]
            rhs = [-self.offsets[i] for i in subset]
            sol = solve_rational(rows, rhs)
            if sol is None:
                continue
            # solve_rational zero-fills free coordinates; accept only true
            # vertices, i.e. solutions of full-rank subsystems
            ok = all(
                sum(Fraction(a) * b for a, b in zip(self.normals[i], sol))
                == -self.offsets[i]
                for i in subset
            )
            if ok and self.contains(sol):
                out.add(tuple(sol))
        return tuple(sorted(out))


def divisor_polytope(fan: Fan, divisor: InvariantDivisor) -> DivisorPolytope:
    return DivisorPolytope(fan.rank, fan.rays, tuple(divisor.coefficients))


def interior_point_with_scaling(
    polytope: DivisorPolytope, bound: int | None = None
) -> tuple[int, tuple[int, ...]]:
    """Minimal ``k`` (up to the bound) so that ``k * polytope`` has an integer
    interior point, together with the lexicographically least such point.

    The bound defaults to ``2 * (rank + 1)``; for an ample divisor on a
    complete fan a point always appears within it.
    """
    if bound is None:
        bound = 2 * (polytope.rank + 1)
    base_verts = polytope.vertices()
    for k in range(1, bound + 1):
        # vertices scale linearly with k, so enumerate them only once
        verts = [tuple(k * x for x in v) for v in base_verts]
        if not verts:
            continue
        scaled = polytope.scaled(k)
        lo = [min(v[j] for v in verts) for j in range(polytope.rank)]
        hi = [max(v[j] for v in verts) for j in range(polytope.rank)]
        ranges = [range(ceil(l), floor(h) + 1) for l, h in zip(lo, hi)]
        for pt in product(*ranges):
            if scaled.contains(pt, strict=True):
                return k, tuple(int(x) for x in pt)
    raise NoInteriorPointError(f"no interior lattice point for k <= {bound}")


@dataclass(frozen=True)
class FTCertificate:
    """Evidence that the variety is of Fano type.

    ``ample`` is the scaled ample divisor kL; ``d_prime`` the coefficients of
    the effective ample divisor D = div(chi_u) + kL supported on the whole
    invariant boundary; ``boundary`` is the fractional boundary with all
    coefficients in (0, 1); epsilon scales D below 1 everywhere.
    """

    ample: InvariantDivisor
    u: tuple[int, ...]
    d_prime: tuple[Fraction, ...]
    epsilon: Fraction
    boundary: InvariantDivisor


def ft_certificate(fan: Fan, ample: InvariantDivisor) -> FTCertificate:
    """Build the Fano-type certificate from a verified ample divisor.

    The boundary has coefficients 1 - eps*d'_i in (0,1), the pair passes the
    klt test, and minus (canonical + boundary) is eps*D, ample again.
    """
    if not is_ample(fan, ample):
        raise NotAmpleError("the given divisor is not ample")
    k, u = interior_point_with_scaling(divisor_polytope(fan, ample))
    scaled = k * ample
    effective = div_chi(fan, u) + scaled
    d_prime = effective.coefficients
    if any(d <= 0 for d in d_prime):
        raise AssertionError("interior point must give strictly positive support")
    epsilon = Fraction(1, 1 + max(d_prime))
    boundary = InvariantDivisor(tuple(1 - epsilon * d for d in d_prime))
    return FTCertificate(scaled, u, d_prime, epsilon, boundary)


def klt_check(fan: Fan, boundary: InvariantDivisor) -> bool:
    """The toric klt criterion for invariant boundaries: all coefficients in
    [0, 1), asserted only under a successful Q-Cartier test for K + boundary."""
    if any(c < 0 for c in boundary.coefficients):
        raise NotEffectiveError("boundary has a negative coefficient")
    cartier_data(fan, canonical_divisor(fan) + boundary)
    return all(c < 1 for c in boundary.coefficients)


def linear_equivalence(fan: Fan, d1: InvariantDivisor, d2: InvariantDivisor) -> bool:
    """Rational linear equivalence: the difference is the divisor of a
    character with rational dual vector."""
    diff = d1 - d2
    rows = [list(map(Fraction, ray)) for ray in fan.rays]
    return solve_rational(rows, list(diff.coefficients)) is not None


def verify_ft_certificate(fan: Fan, cert: FTCertificate) -> bool:
    """Re-check every claim of a certificate independently of its builder."""
    eff = div_chi(fan, cert.u) + cert.ample
    if tuple(eff.coefficients) != tuple(cert.d_prime):
        return False
    if any(d <= 0 for d in cert.d_prime):
        return False
    if not (0 < cert.epsilon < 1):
        return False
    if any(not (0 < cert.epsilon * d < 1) for d in cert.d_prime):
        return False
    expected_boundary = tuple(1 - cert.epsilon * d for d in cert.d_prime)
    if tuple(cert.boundary.coefficients) != expected_boundary:
        return False
    if any(not (0 < b < 1) for b in cert.boundary.coefficients):
        return False
    if not klt_check(fan, cert.boundary):
        return False
    anti_log = -(canonical_divisor(fan) + cert.boundary)
    if not is_ample(fan, anti_log):
        return False
    return linear_equivalence(fan, anti_log, cert.epsilon * eff)
