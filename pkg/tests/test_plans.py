import pytest

from torickit import gallery
from torickit.curves import CoxPolynomial, PointSpec
from torickit.documents import canonical_json, parse_document
from torickit.errors import InputError, ToroidalizationOutOfScopeError
from torickit.plans import (
    MAIN_LEMMA_CITATIONS,
    MAIN_THEOREM_CITATIONS,
    main_lemma_plan,
    main_theorem_plan,
    verify_plan,
)

P2 = gallery.projective_plane()
P3 = gallery.projective_space(3)
P121 = gallery.weighted_plane_121()
CUBE = gallery.cube_fan()

GENERIC_P = PointSpec((1, 1, 1))
GENERIC_Q = PointSpec((1, 2, 3))
POINT_LOCUS = [CoxPolynomial.coordinate(3, 0), CoxPolynomial.coordinate(3, 1)]


def test_main_lemma_plan_p121():
    plan = main_lemma_plan(P121, GENERIC_P, GENERIC_Q)
    payload = plan["payload"]
    assert payload["qfactorialization"]["steps"] == []
    assert [tuple(o["cone"]) for o in payload["orbits"]] == [(0, 1), (0, 2), (1, 2)]
    assert len(payload["isogeny_chain"]) == 1
    assert payload["isogeny_chain"][0]["degree"] == 2
    assert verify_plan(plan)


def test_main_lemma_plan_smooth_p2():
    plan = main_lemma_plan(P2, GENERIC_P, GENERIC_Q)
    assert plan["payload"]["isogeny_chain"] == []
    assert verify_plan(plan)


def test_main_lemma_plan_cube():
    plan = main_lemma_plan(
        CUBE, PointSpec((1,) * 8), PointSpec(tuple(range(1, 9)))
    )
    payload = plan["payload"]
    assert len(payload["qfactorialization"]["steps"]) == 6
    assert all(s["kind"] == "triangulation" for s in payload["qfactorialization"]["steps"])
    assert verify_plan(plan)


def test_main_lemma_byte_identical_replay():
    a = canonical_json(main_lemma_plan(P121, GENERIC_P, GENERIC_Q))
    b = canonical_json(main_lemma_plan(P121, GENERIC_P, GENERIC_Q))
    assert a == b


def test_main_lemma_citations_fixed_list():
    plan = main_lemma_plan(P121, GENERIC_P, GENERIC_Q)
    anchors = [c["anchor"] for c in plan["payload"]["citations"]]
    assert anchors == [c.anchor for c in MAIN_LEMMA_CITATIONS]
    assert len(anchors) == len(set(anchors))
    assert all(c["status"] == "cited" for c in plan["payload"]["citations"])


def test_main_lemma_locus_modes():
    ideal_plan = main_lemma_plan(P2, GENERIC_P, GENERIC_Q, POINT_LOCUS)
    assert ideal_plan["payload"]["locus"]["mode"] == "ideal"
    assert ideal_plan["payload"]["locus"]["reduction"]["to"] == "all-codim2"
    orbit_plan = main_lemma_plan(P2, GENERIC_P, GENERIC_Q, [(0, 1)])
    assert orbit_plan["payload"]["locus"]["mode"] == "orbit-closures"
    default = main_lemma_plan(P2, GENERIC_P, GENERIC_Q)
    assert default["payload"]["locus"]["reduction"] is None


def test_main_lemma_marked_invariant_points():
    fixed = PointSpec((0, 1, 0))  # the singular fixed point of the weighted plane
    plan = main_lemma_plan(P121, fixed, GENERIC_Q)
    marked = plan["payload"]["marked_resolution"]
    assert marked["marked"] == [[0, 2]]
    assert len(marked["steps"]) == 1
    assert marked["non_invariant_points"] == [1]
    assert verify_plan(plan)


def test_main_lemma_rejects_equal_points():
    with pytest.raises(InputError):
        main_lemma_plan(P2, GENERIC_P, PointSpec((2, 2, 2)))


def test_main_theorem_plan_p3():
    pts = [PointSpec((1, 1, 1, 1)), PointSpec((1, 2, 3, 4)), PointSpec((2, 1, 1, 3))]
    locus = [CoxPolynomial.coordinate(4, 0), CoxPolynomial.coordinate(4, 1)]
    plan = main_theorem_plan(P3, pts, locus, seed=9)
    payload = plan["payload"]
    assert payload["interpolation"]["attached"]
    assert payload["interpolation"]["avoidance"]["verdict"] == "disjoint"
    assert len(payload["comb"]["branches"]) == 3
    assert verify_plan(plan)


def test_main_theorem_plan_singular_point():
    sing = PointSpec((0, 1, 0))
    plan = main_theorem_plan(P121, [sing, GENERIC_P], POINT_LOCUS, seed=4)
    payload = plan["payload"]
    assert payload["marked_resolution"]["marked"] == [[0, 2]]
    assert payload["classification"][0]["singular"]
    assert payload["classification"][0]["invariant"]
    assert verify_plan(plan)


def test_main_theorem_zero_points():
    plan = main_theorem_plan(P2, [], POINT_LOCUS, seed=1)
    payload = plan["payload"]
    assert payload["comb"]["branches"] == []
    assert payload["interpolation"]["attached"]
    assert verify_plan(plan)


def test_main_theorem_non_rank_one_is_cited():
    p1p1 = gallery.product_of_lines(2)
    locus = [CoxPolynomial.coordinate(4, 0), CoxPolynomial.coordinate(4, 2)]
    plan = main_theorem_plan(p1p1, [PointSpec((1, 1, 1, 1))], locus, seed=2)
    assert not plan["payload"]["interpolation"]["attached"]
    assert plan["payload"]["interpolation"]["status"] == "cited"
    assert verify_plan(plan)


def test_main_theorem_toroidalization_rejected():
    # a singular non-fixed point: on the 3-fold cone over the weighted plane
    from torickit.fans import Fan

    fan = Fan(
        3,
        ((1, 0, 0), (0, 1, 0), (-1, -2, 0), (0, 0, 1), (0, 0, -1)),
        ((0, 1, 3), (1, 2, 3), (2, 0, 3), (0, 1, 4), (1, 2, 4), (2, 0, 4)),
    )
    # pattern {0, 2} spans the singular 2D cone; the orbit has dimension 1
    bad = PointSpec((0, 1, 0, 1, 1))
    with pytest.raises(ToroidalizationOutOfScopeError):
        main_theorem_plan(fan, [bad], [CoxPolynomial.coordinate(5, 0), CoxPolynomial.coordinate(5, 1)])


def test_main_theorem_citations_fixed_list():
    plan = main_theorem_plan(P2, [], POINT_LOCUS, seed=1)
    anchors = [c["anchor"] for c in plan["payload"]["citations"]]
    assert anchors == [c.anchor for c in MAIN_THEOREM_CITATIONS]
    assert len(anchors) == len(set(anchors))


def test_plan_documents_roundtrip():
    plan = main_lemma_plan(P121, GENERIC_P, GENERIC_Q)
    text = canonical_json(plan)
    kind, payload = parse_document(text)
    assert kind == "plan"
    assert verify_plan({"payload": payload})
    from torickit.documents import wrap

    assert canonical_json(wrap(kind, payload)) == text


def test_verify_plan_detects_tampering():
    plan = main_lemma_plan(P121, GENERIC_P, GENERIC_Q)
    import copy

    broken = copy.deepcopy(plan)
    broken["payload"]["citations"] = broken["payload"]["citations"][1:]
    assert not verify_plan(broken)
    broken2 = copy.deepcopy(plan)
    broken2["payload"]["orbits"] = list(reversed(broken2["payload"]["orbits"]))
    assert not verify_plan(broken2)
