"""Acceptance suite: one test per criterion, each printing a PASS line with
its runtime.  Tolerances are exact (rational arithmetic); the stated time
budgets are asserted."""

import random
import time
from fractions import Fraction
from math import gcd

from oracles import exact_det, hirzebruch_jung_rays, parallelepiped_count
from torickit import documents, gallery
from torickit.curves import (
    CoxCurve,
    CoxPolynomial,
    PointSpec,
    avoidance_verify,
    derive_seed,
    evaluate_curve,
    interpolate_avoiding,
    points_equal,
)
from torickit.divisors import (
    canonical_divisor,
    div_chi,
    ft_certificate,
    is_ample,
    klt_check,
    linear_equivalence,
    ray_divisor,
)
from torickit.errors import AvoidanceRetryExceededError
from torickit.fans import (
    Cone,
    Fan,
    cone_multiplicity,
    cone_relint_contains,
    is_complete,
    is_simplicial,
    is_smooth_cone,
    list_orbits,
    validate_fan,
)
from torickit.forms import FORM_S, FORM_T, BinaryForm
from torickit.grading import class_grading
from torickit.isogeny import (
    IsogenyChain,
    compose,
    make_isogeny,
    orbit_bijection,
    pullback_fan,
    reverse_isogeny,
    smoothing_isogeny,
)
from torickit.lattice import (
    SublatticeBasis,
    exponent_bound,
    member_of_sublattice,
    sublattice_index,
)
from torickit.plans import MAIN_LEMMA_CITATIONS, main_lemma_plan, verify_plan
from torickit.refine import qfactorialize, resolve_to_smooth


def _report(criterion, elapsed, budget, detail=""):
    print(f"PASS {criterion} ({elapsed:.2f}s < {budget}s) {detail}")
    assert elapsed < budget, f"{criterion} exceeded its {budget}s budget"


def test_criterion_1_ft_certificates(corpus):
    assert len(corpus) >= 10
    ranks = {fan.rank for _, fan, _ in corpus}
    assert ranks == {1, 2, 3}
    names = {name for name, _, _ in corpus}
    assert {"p1", "p2", "p1xp1", "wp121", "hirzebruch1", "resolved_cube"} <= names
    start = time.monotonic()
    for name, fan, ample in corpus:
        assert is_ample(fan, ample), name
        cert = ft_certificate(fan, ample)
        assert 0 < cert.epsilon < 1, name
        assert all(0 < b < 1 for b in cert.boundary.coefficients), name
        assert klt_check(fan, cert.boundary), name
        anti_log = -(canonical_divisor(fan) + cert.boundary)
        assert is_ample(fan, anti_log), name
        effective = div_chi(fan, cert.u) + cert.ample
        assert linear_equivalence(fan, anti_log, cert.epsilon * effective), name
    elapsed = time.monotonic() - start
    _report("criterion-1 ft-certificates", elapsed, 5.0, f"{len(corpus)} fans")


def _random_sublattice(rng, n, max_index):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        det = exact_det(rows)
        if det != 0 and abs(det) <= max_index:
            return rows


def test_criterion_2_isogeny_algebra(corpus):
    start = time.monotonic()
    rng = random.Random(20260810)
    ambient = {2: gallery.projective_plane(), 3: gallery.projective_space(3)}
    checked = 0
    while checked < 110:
        n = rng.randint(2, 3)
        rows = _random_sublattice(rng, n, 12)
        basis = SublatticeBasis.from_rows(n, rows)
        index = sublattice_index(basis)
        r = exponent_bound(basis)
        # r * e_i lands inside; minimality by brute force (index <= 50 here)
        for i in range(n):
            assert member_of_sublattice([r if j == i else 0 for j in range(n)], basis)
        for p in {p for p in range(2, r + 1) if r % p == 0 and all(p % q for q in range(2, p))}:
            smaller = r // p
            assert any(
                not member_of_sublattice(
                    [smaller if j == i else 0 for j in range(n)], basis
                )
                for i in range(n)
            )
        fan = ambient[n]
        iso = make_isogeny(fan, rows)
        rev = reverse_isogeny(iso)
        assert rev.degree * iso.degree == r**n
        composite = compose(IsogenyChain((iso, rev)))
        assert composite.degree == iso.degree * rev.degree
        checked += 1
    # orbit correspondence on every corpus fan
    for name, fan, _ in corpus:
        iso = make_isogeny(fan, _random_sublattice(rng, fan.rank, 5))
        pairs = orbit_bijection(iso)
        assert len(pairs) == len(list_orbits(fan)), name
        assert all(a.orbit_dim == b.orbit_dim for a, b in pairs), name
    elapsed = time.monotonic() - start
    _report("criterion-2 isogeny-algebra", elapsed, 10.0, f"{checked} sublattices")


def test_criterion_3_smoothing_lemma(corpus):
    start = time.monotonic()
    singular_seen = 0
    for name, fan, _ in corpus:
        if not is_simplicial(fan):
            continue
        for desc in list_orbits(fan):
            if not desc.is_singular:
                continue
            singular_seen += 1
            iso = smoothing_isogeny(fan, desc.cone)
            pulled = pullback_fan(iso)
            assert is_smooth_cone(pulled.cone(desc.cone)), (name, desc.cone)
    assert singular_seen > 0
    # the chart of the projective cone over a conic has degree exactly 2
    w121 = gallery.weighted_plane_121()
    iso = smoothing_isogeny(w121, (0, 2))
    assert iso.degree == 2
    elapsed = time.monotonic() - start
    _report("criterion-3 smoothing-lemma", elapsed, 10.0, f"{singular_seen} singular cones")


def _embedded_cone_fan(a, k):
    return Fan(
        2,
        ((1, 0), (a, k), (-1, 0), (0, -1)),
        ((0, 1), (1, 2), (2, 3), (3, 0)),
    )


def test_criterion_4_resolution_suite():
    start = time.monotonic()
    # q-factorialization: no new rays, simplicial output; cube splits 6 -> 12
    cube = gallery.cube_fan()
    simplicial, steps = qfactorialize(cube)
    assert simplicial.rays == cube.rays
    assert is_simplicial(simplicial)
    assert len(cube.max_cones) == 6 and len(simplicial.max_cones) == 12
    assert validate_fan(simplicial).ok

    # full resolutions stay complete and come out smooth
    for fan in (gallery.weighted_plane_121(), gallery.weighted_plane_112(), simplicial):
        smooth, _ = resolve_to_smooth(fan)
        assert all(is_smooth_cone(smooth.cone(c)) for c in smooth.max_cones)
        assert is_complete(smooth) and is_complete(fan)

    # 2D outputs match the continued-fraction oracle for every (a, k), k <= 12
    cases = 0
    for k in range(2, 13):
        for a in range(1, k):
            if gcd(a, k) != 1:
                continue
            cases += 1
            fan = _embedded_cone_fan(a, k)
            resolved, _ = resolve_to_smooth(fan)
            assert all(is_smooth_cone(resolved.cone(c)) for c in resolved.max_cones)
            target = fan.cone((0, 1))
            inserted = {r for r in resolved.rays if cone_relint_contains(target, r)}
            assert inserted == set(hirzebruch_jung_rays(a, k)), (a, k)
    elapsed = time.monotonic() - start
    _report("criterion-4 resolution-suite", elapsed, 5.0, f"{cases} 2D cones")


def test_criterion_5_multiplicity_oracle():
    start = time.monotonic()
    rng = random.Random(55)
    from torickit.lattice import primitive_vector

    checked = 0
    while checked < 500:
        n = rng.randint(2, 3)
        rays = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        if exact_det(rays) == 0:
            continue
        prim = [primitive_vector(r) for r in rays]
        if exact_det(prim) == 0:
            continue
        checked += 1
        cone = Cone(n, tuple(prim))
        assert cone_multiplicity(cone) == parallelepiped_count(prim)
    elapsed = time.monotonic() - start
    _report("criterion-5 multiplicity-oracle", elapsed, 10.0, f"{checked} cones")


def test_criterion_6_curve_suite():
    start = time.monotonic()
    rng = random.Random(606)
    p2 = gallery.projective_plane()
    p3 = gallery.projective_space(3)
    failures = 0
    instances = 0
    for i in range(50):
        fan = p2 if i % 2 == 0 else p3
        k = len(fan.rays)
        r = rng.randint(1, 3)
        points = []
        while len(points) < r:
            cand = PointSpec(tuple(Fraction(rng.randint(1, 6)) for _ in range(k)))
            if all(not points_equal(fan, cand, p) for p in points):
                points.append(cand)
        params = [(j, 1) for j in range(r)]
        # a torus-fixed point, or for the 3-space also a coordinate line
        if fan is p3 and rng.random() < 0.5:
            idx = sorted(rng.sample(range(k), 2))
        else:
            idx = sorted(rng.sample(range(k), k - 1))
        locus = [CoxPolynomial.coordinate(k, j) for j in idx]
        seed = derive_seed(987654321, i)
        try:
            curve = interpolate_avoiding(fan, points, params, locus, r, seed=seed, budget=8)
        except AvoidanceRetryExceededError:
            failures += 1
            continue
        instances += 1
        for pr, pt in zip(params, points):
            assert points_equal(fan, evaluate_curve(curve, pr), pt)
        report = avoidance_verify(curve, locus)
        assert report.verdict == "disjoint"
    assert failures <= 1, f"{failures} of 50 exhausted the budget"
    elapsed = time.monotonic() - start
    _report(
        "criterion-6 curve-suite",
        elapsed,
        30.0,
        f"{instances} verified, {failures} failures",
    )


def test_criterion_7_plan_determinism():
    start = time.monotonic()
    w121 = gallery.weighted_plane_121()
    p = PointSpec((1, 1, 1))
    q = PointSpec((1, 2, 3))
    first = documents.canonical_json(main_lemma_plan(w121, p, q))
    second = documents.canonical_json(main_lemma_plan(w121, p, q))
    assert first == second
    plan = main_lemma_plan(w121, p, q)
    assert verify_plan(plan)
    anchors = [c["anchor"] for c in plan["payload"]["citations"]]
    assert anchors == [c.anchor for c in MAIN_LEMMA_CITATIONS]
    assert len(anchors) == len(set(anchors))
    deformation_anchors = [a for a in anchors if a.startswith("deformation.")]
    assert deformation_anchors == [
        "deformation.generic-member-selection",
        "deformation.move-off-smooth-center",
        "deformation.image-under-finite-morphism",
    ]

    # every document kind round-trips on a canonical instance
    p2 = gallery.projective_plane()
    grading = class_grading(p2)
    curve = CoxCurve(p2, (FORM_S, FORM_T, BinaryForm.zero()), grading.degree((1, 1, 1)))
    gens = (CoxPolynomial.coordinate(3, 0), CoxPolynomial.coordinate(3, 1))
    cert = ft_certificate(p2, ray_divisor(p2, 2))
    iso = smoothing_isogeny(w121, (0, 2))
    report = avoidance_verify(curve, list(gens))
    docs = {
        "fan": documents.wrap("fan", documents.fan_payload(p2)),
        "divisor": documents.wrap(
            "divisor", documents.divisor_payload(ray_divisor(p2, 2))
        ),
        "isogeny": documents.wrap("isogeny", documents.isogeny_payload(iso)),
        "curve": documents.wrap("curve", documents.curve_payload(curve)),
        "ideal": documents.wrap("ideal", documents.ideal_payload(gens)),
        "certificate": documents.wrap(
            "certificate", documents.certificate_payload(p2, cert)
        ),
        "plan": plan,
        "report": documents.wrap("report", documents.avoidance_payload(report)),
    }
    assert set(docs) == set(documents.KINDS)
    for kind, doc in docs.items():
        text = documents.canonical_json(doc)
        parsed_kind, payload = documents.parse_document(text)
        assert parsed_kind == kind
        assert documents.canonical_json(documents.wrap(parsed_kind, payload)) == text
    elapsed = time.monotonic() - start
    _report("criterion-7 plan-determinism", elapsed, 10.0, "8 document kinds")
