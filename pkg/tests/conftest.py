import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from torickit import gallery
from torickit.divisors import canonical_divisor, ray_divisor


def _sum_divisors(fan, indices):
    out = ray_divisor(fan, indices[0])
    for i in indices[1:]:
        out = out + ray_divisor(fan, i)
    return out


def fan_corpus():
    """(name, fan, verified-ample divisor) for every corpus member."""
    p1 = gallery.projective_line()
    p2 = gallery.projective_plane()
    p3 = gallery.projective_space(3)
    p1p1 = gallery.product_of_lines(2)
    p1cube = gallery.product_of_lines(3)
    w121 = gallery.weighted_plane_121()
    w112 = gallery.weighted_plane_112()
    w123 = gallery.weighted_plane_123()
    f1 = gallery.hirzebruch(1)
    f2 = gallery.hirzebruch(2)
    cube = gallery.cube_fan()
    rcube = gallery.resolved_cube_fan()
    return [
        ("p1", p1, ray_divisor(p1, 0)),
        ("p2", p2, ray_divisor(p2, 2)),
        ("p3", p3, ray_divisor(p3, 0)),
        ("p1xp1", p1p1, _sum_divisors(p1p1, (0, 2))),
        ("p1xp1xp1", p1cube, _sum_divisors(p1cube, (0, 2, 4))),
        ("wp121", w121, ray_divisor(w121, 0)),
        ("wp112", w112, ray_divisor(w112, 0)),
        ("wp123", w123, ray_divisor(w123, 0)),
        ("hirzebruch1", f1, -1 * canonical_divisor(f1)),
        ("hirzebruch2", f2, _sum_divisors(f2, (2, 3))),
        ("cube", cube, -1 * canonical_divisor(cube)),
        ("resolved_cube", rcube, gallery.resolved_cube_ample()),
    ]


@pytest.fixture(scope="session")
def corpus():
    return fan_corpus()
