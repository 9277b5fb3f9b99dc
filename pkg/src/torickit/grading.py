"""Class-group grading of Cox coordinates.

The divisor class group is presented as the cokernel of the character map
``u -> (<u, e_i>)_i``; its free part is read off through an HNF-canonical
basis of the left kernel of the ray matrix, the torsion part through the
Smith transform.  Degrees of coordinates, curves, and ideal generators all
go through this presentation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPicardOneError, NotSimplicialError
from .fans import Fan, is_complete, is_simplicial
from .lattice import IntegerMatrix, integer_kernel, smith_normal_form


@dataclass(frozen=True)
class ClassGrading:
    """Degree data for the class group Z^rays / im(characters).

    ``free`` rows are integer functionals on divisor vectors giving the free
    part; ``torsion`` pairs a functional with its modulus.
    """

    ray_count: int
    free: tuple[tuple[int, ...], ...]
    torsion: tuple[tuple[tuple[int, ...], int], ...]

    def degree(self, divisor_vector) -> tuple[int, ...]:
        """Class of an integer divisor vector: free part then torsion part."""
        v = tuple(int(x) for x in divisor_vector)
        if len(v) != self.ray_count:
            raise ValueError("divisor vector length does not match the ray count")
        free_part = tuple(sum(a * b for a, b in zip(row, v)) for row in self.free)
        torsion_part = tuple(
            sum(a * b for a, b in zip(row, v)) % mod for row, mod in self.torsion
        )
        return free_part + torsion_part

    @property
    def free_rank(self) -> int:
        return len(self.free)


def class_grading(fan: Fan) -> ClassGrading:
    """Presentation of the class group for a simplicial complete fan."""
    if not is_simplicial(fan):
        raise NotSimplicialError("class grading is computed for simplicial fans")
    if not is_complete(fan):
        raise ValueError("class grading is computed for complete fans")
    rays = IntegerMatrix.from_rows(fan.rays)
    free = integer_kernel(rays).entries
    snf = smith_normal_form(rays)
    torsion = []
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            torsion.append((snf.left.entries[i], d))
    return ClassGrading(len(fan.rays), tuple(free), tuple(torsion))


def ray_degrees(grading: ClassGrading) -> tuple[tuple[int, ...], ...]:
    """Degree of each coordinate (= class of its ray divisor)."""
    out = []
    for i in range(grading.ray_count):
        e = tuple(1 if j == i else 0 for j in range(grading.ray_count))
        out.append(grading.degree(e))
    return tuple(out)


def wp_cover_weights(fan: Fan) -> tuple[int, ...]:
    """The positive primitive relation among the rays of a Picard-rank-one fan.

    These are the weights of the weighted projective space covering the
    variety with the same homogeneous coordinates.
    """
    if len(fan.rays) != fan.rank + 1:
        raise NotPicardOneError("need exactly rank+1 rays")
    kernel = integer_kernel(IntegerMatrix.from_rows(fan.rays)).entries
    if len(kernel) != 1:
        raise NotPicardOneError("ray relation space is not one-dimensional")
    weights = kernel[0]
    if any(w <= 0 for w in weights):
        raise NotPicardOneError("no positive relation among the rays")
    return tuple(weights)
