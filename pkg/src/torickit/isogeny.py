"""Isogenies of toric varieties: finite-index lattice inclusions with a
shared fan.

An isogeny is stored as the ambient fan plus the source sublattice in ambient
coordinates; the basis is HNF-canonical so equal sublattices compare equal.
Rays get re-primitivized only when the fan is pulled back to source
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import DimensionMismatchError, InputError, NotSimplicialError
from .fans import Fan, OrbitDescriptor, fan_cone_index_sets, is_simplicial, list_orbits
from .lattice import (
    IntegerMatrix,
    SublatticeBasis,
    exponent_bound,
    hermite_normal_form,
    smith_normal_form,
    solve_rational,
    sublattice_index,
)


@dataclass(frozen=True)
class Isogeny:
    """A finite surjective toric morphism (N', fan) -> (N, fan).

    ``source_lattice`` holds N' inside the ambient N, rows in N-coordinates;
    ``degree`` is the index [N : N'].
    """

    fan: Fan
    source_lattice: SublatticeBasis
    degree: int


def make_isogeny(fan: Fan, basis_rows) -> Isogeny:
    """Construct an isogeny with an HNF-canonical source basis."""
    mat = IntegerMatrix.from_rows(basis_rows)
    if mat.rows != fan.rank or mat.cols != fan.rank:
        raise DimensionMismatchError("source basis must be square of the fan rank")
    h, _ = hermite_normal_form(mat)
    basis = SublatticeBasis(fan.rank, h)
    return Isogeny(fan, basis, sublattice_index(basis))


def identity_isogeny(fan: Fan) -> Isogeny:
    return make_isogeny(fan, IntegerMatrix.identity(fan.rank).entries)


def _coords_in_sublattice(basis: SublatticeBasis, v) -> tuple[Fraction, ...]:
    """Rational coordinates of ``v`` in the sublattice basis (rows)."""
    rows = basis.basis.entries
    cols = [[Fraction(rows[i][j]) for i in range(len(rows))] for j in range(basis.ambient_rank)]
    sol = solve_rational(cols, [Fraction(x) for x in v])
    if sol is None:
        raise AssertionError("full-rank basis must span rationally")
    return tuple(sol)


def pullback_fan(iso: Isogeny) -> Fan:
    """The same cone combinatorics with rays re-expressed in source
    coordinates and re-primitivized."""
    new_rays = []
    for ray in iso.fan.rays:
        coords = _coords_in_sublattice(iso.source_lattice, ray)
        m = 1
        for c in coords:
            m = lcm(m, c.denominator)
        new_rays.append(tuple(int(c * m) for c in coords))
    return Fan(iso.fan.rank, tuple(new_rays), iso.fan.max_cones)


def reverse_isogeny(iso: Isogeny) -> Isogeny:
    """The isogeny in the other direction, via the exponent ``r``.

    ``r`` is the minimal integer with ``r N`` inside ``N'``; the reverse has
    ambient fan in N'-coordinates and source ``r N``, so the composite chain
    is ``r N <= N' <= N`` and ``(r N, fan)`` is isomorphic to ``(N, fan)``.
    """
    n = iso.fan.rank
    r = exponent_bound(iso.source_lattice)
    rows = []
    for i in range(n):
        target = tuple(r if j == i else 0 for j in range(n))
        coords = _coords_in_sublattice(iso.source_lattice, target)
        if any(c.denominator != 1 for c in coords):
            raise AssertionError("exponent bound must clear all denominators")
        rows.append(tuple(int(c) for c in coords))
    return make_isogeny(pullback_fan(iso), rows)


def smoothing_isogeny(fan: Fan, cone_indices) -> Isogeny:
    """The isogeny that pulls a chosen simplicial cone back to a smooth one.

    The source lattice is generated by the primitive generators of the cone,
    extended by a lattice complement of the saturated span so that the index
    stays finite; its degree equals the cone multiplicity, and the designated
    cone is smooth in the pulled-back fan.
    """
    if not is_simplicial(fan):
        raise NotSimplicialError("smoothing isogenies need a simplicial fan")
    sigma = tuple(sorted(set(int(i) for i in cone_indices)))
    if sigma not in fan_cone_index_sets(fan):
        raise InputError(f"{sigma} is not a cone of the fan")
    n = fan.rank
    rays = [fan.rays[i] for i in sigma]
    if not rays:
        return identity_isogeny(fan)
    snf = smith_normal_form(IntegerMatrix.from_rows(rays))
    k = len(rays)
    # Column transform: right is unimodular with ray_matrix @ right diagonal
    # after the left transform; rows k..n of right^{-1} complement the
    # saturated span of the cone.
    right_inv = _integer_inverse(snf.right)
    basis_rows = list(rays) + [right_inv.entries[i] for i in range(k, n)]
    return make_isogeny(fan, basis_rows)


def _integer_inverse(mat: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a unimodular integer matrix, exactly."""
    n = mat.rows
    det = mat.det()
    if abs(det) != 1:
        raise InputError("matrix is not unimodular")
    rows = []
    for i in range(n):
        rhs = [Fraction(1) if j == i else Fraction(0) for j in range(n)]
        col = solve_rational([list(map(Fraction, r)) for r in mat.entries], rhs)
        rows.append(col)
    # rows currently hold columns of the inverse; transpose back
    inv = [[int(rows[j][i]) for j in range(n)] for i in range(n)]
    return IntegerMatrix.from_rows(inv)


def orbit_bijection(iso: Isogeny) -> tuple[tuple[OrbitDescriptor, OrbitDescriptor], ...]:
    """Cone-indexed orbit correspondence (source side first).

    Orbit dimensions agree pairwise and the orbit count matches on both
    sides, which is exactly what makes the count an isogeny-class invariant.
    """
    up = {d.cone: d for d in list_orbits(pullback_fan(iso))}
    down = {d.cone: d for d in list_orbits(iso.fan)}
    if set(up) != set(down):
        raise AssertionError("pullback changed the cone combinatorics")
    return tuple((up[c], down[c]) for c in sorted(down))


@dataclass(frozen=True)
class IsogenyChain:
    """Composable steps: each step's ambient fan is the previous pullback."""

    steps: tuple[Isogeny, ...]

    @property
    def composite_index(self) -> int:
        out = 1
        for s in self.steps:
            out *= s.degree
        return out


def compose(chain: IsogenyChain) -> Isogeny:
    """Collapse a chain into a single isogeny; degree is multiplicative."""
    if not chain.steps:
        raise InputError("cannot compose an empty chain")
    first = chain.steps[0]
    current = first
    basis = first.source_lattice.basis
    for step in chain.steps[1:]:
        if step.fan != pullback_fan(current):
            raise InputError("chain steps are not composable")
        basis = step.source_lattice.basis @ basis
        current = step
    out = make_isogeny(first.fan, basis.entries)
    if out.degree != chain.composite_index:
        raise AssertionError("degree must be multiplicative along the chain")
    return out
