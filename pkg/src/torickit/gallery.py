"""Standard complete fans used across tests, docs, and the CLI examples."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .divisors import InvariantDivisor
from .fans import Fan
from .refine import resolve_to_smooth, stellar_subdivision


def projective_space(n: int) -> Fan:
    """Rays e_1..e_n and -(e_1+...+e_n); maximal cones drop one ray each."""
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [tuple(sorted(c)) for c in combinations(range(n + 1), n)]
    return Fan(n, tuple(rays), tuple(cones))


def projective_line() -> Fan:
    return projective_space(1)


def projective_plane() -> Fan:
    return projective_space(2)


def product_of_lines(factors: int) -> Fan:
    """(P^1)^factors: antipodal ray pairs per axis, orthant cones."""
    rays = []
    for axis in range(factors):
        for sign in (1, -1):
            rays.append(tuple(sign if j == axis else 0 for j in range(factors)))
    cones = []
    for choice in product((0, 1), repeat=factors):
        cones.append(tuple(2 * axis + c for axis, c in enumerate(choice)))
    return Fan(factors, tuple(rays), tuple(cones))


def hirzebruch(a: int) -> Fan:
    """The ruled surface with self-intersection -a section."""
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (3, 0))
    return Fan(2, rays, cones)


def weighted_plane_121() -> Fan:
    """Weights (1,2,1): the projective cone over a conic."""
    return Fan(2, ((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (2, 0)))


def weighted_plane_112() -> Fan:
    """Weights (1,1,2)."""
    return Fan(2, ((1, 0), (-1, 2), (0, -1)), ((0, 1), (1, 2), (2, 0)))


def weighted_plane_123() -> Fan:
    """Weights (1,2,3)."""
    return Fan(2, ((-2, -3), (1, 0), (0, 1)), ((0, 1), (1, 2), (2, 0)))


def cube_fan() -> Fan:
    """Fan over the faces of the cube: 8 corner rays, 6 square cones."""
    corners = tuple(sorted(product((-1, 1), repeat=3)))
    cones = []
    for axis in range(3):
        for sign in (-1, 1):
            cones.append(tuple(i for i, c in enumerate(corners) if c[axis] == sign))
    return Fan(3, corners, tuple(cones))


@lru_cache(maxsize=1)
def resolved_cube_fan() -> Fan:
    """Smooth resolution of the cube fan via face-center stellar subdivisions.

    Subdividing at the six face centers first and then resolving yields the
    full sign-and-coordinate chamber fan (face, edge, corner rays per chamber),
    which carries an ample divisor supported symmetrically by ray type.
    """
    fan = cube_fan()
    for axis in range(3):
        for sign in (1, -1):
            center = tuple(sign if j == axis else 0 for j in range(3))
            fan, _ = stellar_subdivision(fan, center)
    smooth, _ = resolve_to_smooth(fan)
    return smooth


def resolved_cube_ample() -> InvariantDivisor:
    """An ample divisor on the resolved cube fan: the support values of the
    signed-permutation polytope of (1,2,3) on corner/edge/face rays."""
    by_type = {3: 6, 2: 5, 1: 3}
    fan = resolved_cube_fan()
    return InvariantDivisor(
        tuple(Fraction(by_type[sum(1 for x in r if x)]) for r in fan.rays)
    )
