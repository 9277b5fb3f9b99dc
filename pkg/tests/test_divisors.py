from fractions import Fraction

import pytest

from oracles import surface_intersection_numbers
from torickit import gallery
from torickit.divisors import (
    InvariantDivisor,
    canonical_divisor,
    cartier_data,
    div_chi,
    divisor_polytope,
    ft_certificate,
    interior_point_with_scaling,
    is_ample,
    klt_check,
    linear_equivalence,
    ray_divisor,
    verify_ft_certificate,
    zero_divisor,
)
from torickit.errors import NotAmpleError, NotEffectiveError, NotQCartierError

P1 = gallery.projective_line()
P2 = gallery.projective_plane()
P121 = gallery.weighted_plane_121()
P1P1 = gallery.product_of_lines(2)
CUBE = gallery.cube_fan()


def test_canonical_divisor():
    assert canonical_divisor(P2).coefficients == (Fraction(-1),) * 3
    assert canonical_divisor(P1).coefficients == (Fraction(-1),) * 2
    assert canonical_divisor(CUBE).coefficients == (Fraction(-1),) * 8


def test_div_chi():
    assert div_chi(P2, (1, 1)).coefficients == (Fraction(1), Fraction(1), Fraction(-2))
    assert div_chi(P2, (0, 0)) == zero_divisor(P2)
    assert div_chi(P121, (1, 0)).coefficients == (Fraction(1), Fraction(0), Fraction(-1))


def test_div_chi_linear():
    for u, v in (((1, 0), (0, 1)), ((2, -1), (1, 3))):
        lhs = div_chi(P2, (u[0] + v[0], u[1] + v[1]))
        rhs = div_chi(P2, u) + div_chi(P2, v)
        assert lhs == rhs


def test_cartier_data():
    data = cartier_data(P2, ray_divisor(P2, 2))
    assert data.vector((0, 1)) == (Fraction(0), Fraction(0))
    zero = cartier_data(P2, zero_divisor(P2))
    assert all(vec == (Fraction(0), Fraction(0)) for _, vec in zero.entries)
    with pytest.raises(NotQCartierError) as err:
        cartier_data(CUBE, ray_divisor(CUBE, 0))
    assert len(err.value.cone) == 4


def test_is_ample():
    assert is_ample(P2, ray_divisor(P2, 2))
    assert not is_ample(P2, zero_divisor(P2))
    # a ruling of the quadric is nef but not ample
    assert not is_ample(P1P1, ray_divisor(P1P1, 0))
    assert is_ample(P1P1, ray_divisor(P1P1, 0) + ray_divisor(P1P1, 2))
    assert not is_ample(P2, -1 * ray_divisor(P2, 2))


def test_is_ample_agrees_with_intersection_numbers(corpus):
    # on smooth complete surfaces, ample iff positive against every ray divisor
    from torickit.fans import is_smooth_cone

    surfaces = [
        (name, fan)
        for name, fan, _ in corpus
        if fan.rank == 2 and all(is_smooth_cone(fan.cone(c)) for c in fan.max_cones)
    ]
    candidates = [
        (0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, 0), (1, 2, 3), (0, 1, 1), (3, 1, 2)
    ]
    for name, fan in surfaces:
        k = len(fan.rays)
        for base in candidates:
            coeffs = tuple(Fraction(base[i % 3]) for i in range(k))
            d = InvariantDivisor(coeffs)
            try:
                ample = is_ample(fan, d)
            except NotQCartierError:
                continue
            numbers = surface_intersection_numbers(fan, coeffs)
            assert ample == all(x > 0 for x in numbers), (name, coeffs, numbers)


def test_polytope_and_interior_point():
    k, u = interior_point_with_scaling(divisor_polytope(P2, ray_divisor(P2, 2)))
    assert (k, u) == (3, (1, 1))
    # ray order (1),(−1): the interval is [-k, 0], first interior point -1
    k1, u1 = interior_point_with_scaling(divisor_polytope(P1, ray_divisor(P1, 0)))
    assert (k1, u1) == (2, (-1,))
    k2, u2 = interior_point_with_scaling(divisor_polytope(P121, ray_divisor(P121, 0)))
    scaled = divisor_polytope(P121, k2 * ray_divisor(P121, 0))
    assert scaled.contains(u2, strict=True)


def test_ft_certificate_p2():
    cert = ft_certificate(P2, ray_divisor(P2, 2))
    assert cert.ample.coefficients == (Fraction(0), Fraction(0), Fraction(3))
    assert cert.u == (1, 1)
    assert cert.d_prime == (Fraction(1), Fraction(1), Fraction(1))
    assert cert.epsilon == Fraction(1, 2)
    assert cert.boundary.coefficients == (Fraction(1, 2),) * 3
    assert verify_ft_certificate(P2, cert)


def test_ft_certificate_p1():
    cert = ft_certificate(P1, ray_divisor(P1, 0))
    assert cert.d_prime == (Fraction(1), Fraction(1))
    assert cert.epsilon == Fraction(1, 2)
    assert verify_ft_certificate(P1, cert)


def test_ft_certificate_p121():
    cert = ft_certificate(P121, ray_divisor(P121, 0))
    assert verify_ft_certificate(P121, cert)


def test_ft_certificate_not_ample():
    with pytest.raises(NotAmpleError):
        ft_certificate(P2, zero_divisor(P2))


def test_klt_check():
    assert klt_check(P2, InvariantDivisor((Fraction(1, 2),) * 3))
    assert not klt_check(
        P2, InvariantDivisor((Fraction(1), Fraction(1, 2), Fraction(1, 2)))
    )
    with pytest.raises(NotEffectiveError):
        klt_check(P2, InvariantDivisor((Fraction(-1, 2), Fraction(0), Fraction(0))))


def test_linear_equivalence():
    d3 = ray_divisor(P2, 2)
    assert linear_equivalence(P2, d3, div_chi(P2, (1, 1)) + d3)
    assert linear_equivalence(P2, ray_divisor(P2, 0), ray_divisor(P2, 1))
    assert not linear_equivalence(P1, ray_divisor(P1, 0), 2 * ray_divisor(P1, 0))


def test_linear_equivalence_is_equivalence_relation():
    divisors = [
        zero_divisor(P2),
        ray_divisor(P2, 0),
        ray_divisor(P2, 1),
        div_chi(P2, (2, -1)),
        ray_divisor(P2, 0) + ray_divisor(P2, 2),
    ]
    for a in divisors:
        assert linear_equivalence(P2, a, a)
        for b in divisors:
            assert linear_equivalence(P2, a, b) == linear_equivalence(P2, b, a)
            for c in divisors:
                if linear_equivalence(P2, a, b) and linear_equivalence(P2, b, c):
                    assert linear_equivalence(P2, a, c)


def test_certificate_claims_on_corpus(corpus):
    for name, fan, ample in corpus:
        cert = ft_certificate(fan, ample)
        assert 0 < cert.epsilon < 1, name
        assert all(0 < b < 1 for b in cert.boundary.coefficients), name
        assert klt_check(fan, cert.boundary), name
        anti_log = -(canonical_divisor(fan) + cert.boundary)
        assert is_ample(fan, anti_log), name
        effective = div_chi(fan, cert.u) + cert.ample
        assert linear_equivalence(fan, anti_log, cert.epsilon * effective), name
