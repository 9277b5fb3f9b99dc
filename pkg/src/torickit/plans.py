"""Proof-pipeline plans: machine-checkable scaffolds for the avoidance
argument on complete toric varieties.

A plan separates what the toolkit verified (subdivision logs, isogeny
chains, interpolated curves) from what it can only cite (deformation
existence steps over uncountable fields).  Citation placeholders form a
fixed exhaustive list per plan kind; every effective claim replays.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import (
    PointSpec,
    avoidance_verify,
    interpolate_avoiding,
    point_on_fan,
    points_equal,
)
from .documents import (
    avoidance_payload,
    curve_payload,
    fan_payload,
    fan_from_payload,
    ideal_payload,
    isogeny_payload,
    isogeny_from_payload,
    orbit_payload,
    point_payload,
    point_from_payload,
    step_payload,
    step_from_payload,
    wrap,
)
from .errors import (
    InputError,
    InvalidFanError,
    ToroidalizationOutOfScopeError,
)
from .fans import (
    Fan,
    codim2_orbits,
    is_complete,
    is_smooth_cone,
    list_orbits,
    validate_fan,
)
from .isogeny import pullback_fan, smoothing_isogeny
from .refine import apply_steps, interior_ray_indices, qfactorialize, resolve_marked


@dataclass(frozen=True)
class Citation:
    """A non-effective step, recorded instead of claimed."""

    anchor: str
    claim: str
    reference: str

    def payload(self) -> dict:
        return {
            "anchor": self.anchor,
            "claim": self.claim,
            "reference": self.reference,
            "status": "cited",
        }


MAIN_LEMMA_CITATIONS: tuple[Citation, ...] = (
    Citation(
        anchor="deformation.generic-member-selection",
        claim=(
            "a general member of a dominating family of rational curves meets "
            "only an initial subset of any finite list of proper subvarieties, "
            "and the subset depends on the family alone"
        ),
        reference="incidence-variety dimension count; Kollar, Rational Curves on Algebraic Varieties (1996), II.3",
    ),
    Citation(
        anchor="deformation.move-off-smooth-center",
        claim=(
            "a curve free over the prescribed points on a resolution deforms "
            "away from any codimension-two subset while keeping the point "
            "conditions, so the avoidance locus reduces to the invariant one"
        ),
        reference="Kollar (1996) II.3.7 and II.3.11; Kollar-Mori (1998) Theorem 0.2",
    ),
    Citation(
        anchor="deformation.image-under-finite-morphism",
        claim=(
            "the image of a general deformation under a dominant (in particular "
            "finite surjective toric) morphism stays in a dominating family with "
            "the prescribed incidences"
        ),
        reference="composition of dominating families; Kollar (1996) II.3",
    ),
    Citation(
        anchor="resolution.non-invariant-markings",
        claim=(
            "marked points that are not invariant become invariant after a "
            "toroidal modification; the needed resolution exists in "
            "characteristic zero"
        ),
        reference="Kollar-Mori (1998) Theorem 0.2",
    ),
)

MAIN_THEOREM_CITATIONS: tuple[Citation, ...] = MAIN_LEMMA_CITATIONS + (
    Citation(
        anchor="comb.smoothing-with-fixed-points",
        claim=(
            "a comb whose teeth are free rational curves smooths to a single "
            "free rational curve keeping the marked points"
        ),
        reference="Kollar (1996) II.7.6",
    ),
    Citation(
        anchor="freeness.very-free-upgrade",
        claim="general members through smooth points can be taken very free",
        reference="Kollar-Miyaoka-Mori (1992) 1.1; Kollar (1996) II.3.11",
    ),
    Citation(
        anchor="resolution.divisorial-contact",
        claim=(
            "finitely many further blowups arrange that a general member meets "
            "the boundary over each marked point only in points of a single "
            "exceptional divisor; intersection multiplicities bound the process"
        ),
        reference="Kollar-Mori (1998) Theorem 0.2",
    ),
)


def _locus_record(fan: Fan, locus) -> dict:
    """Normalize the avoidance locus argument into a plan record.

    ``locus`` is None (the full codimension->=2 invariant locus), a list of
    cone index tuples (union of orbit closures), or ideal generators.
    """
    if locus is None:
        return {"mode": "all-codim2", "reduction": None}
    if all(isinstance(c, (list, tuple)) and all(isinstance(i, int) for i in c) for c in locus):
        cones = sorted(tuple(sorted(set(c))) for c in locus)
        known = {d.cone for d in list_orbits(fan)}
        for c in cones:
            if tuple(c) not in known:
                raise InputError(f"{c} is not a cone of the fan")
        return {
            "mode": "orbit-closures",
            "cones": [list(c) for c in cones],
            "reduction": {
                "to": "all-codim2",
                "anchor": "deformation.move-off-smooth-center",
            },
        }
    return {
        "mode": "ideal",
        "generators": ideal_payload(locus),
        "reduction": {
            "to": "all-codim2",
            "anchor": "deformation.move-off-smooth-center",
        },
    }


def _invariant_marked_cones(fan: Fan, points) -> tuple[list, list]:
    """Split points into invariant fixed-point cones and the rest."""
    marked = []
    other = []
    max_cones = set(fan.max_cones)
    for i, p in enumerate(points):
        pattern = p.vanishing_pattern
        if pattern in max_cones and fan.cone(pattern).dim == fan.rank:
            marked.append((i, pattern))
        else:
            other.append(i)
    return marked, other


def main_lemma_plan(fan: Fan, p: PointSpec, q: PointSpec, locus=None) -> dict:
    """The two-point avoidance scaffold: simplicialize, order the small
    orbits, smooth them innermost-first through isogenies, and record the
    deformation steps as citations.

    Every effective claim in the returned document replays through the
    library; the result is byte-deterministic.
    """
    report = validate_fan(fan)
    if not report.ok:
        raise InvalidFanError("; ".join(v.code for v in report.violations))
    if not is_complete(fan):
        raise InvalidFanError("the plan needs a complete fan")
    for pt in (p, q):
        if not point_on_fan(fan, pt):
            raise InputError(f"{pt.coordinates} does not describe a point of the variety")
    if points_equal(fan, p, q):
        raise InputError("the two points must be distinct")

    simplicial, q_steps = qfactorialize(fan)
    orbits = codim2_orbits(simplicial)

    stages = []
    chain = []
    current = simplicial
    for descriptor in reversed(orbits):
        cone = descriptor.cone
        avoid_set = [list(d.cone) for d in orbits[orbits.index(descriptor) + 1 :]]
        if is_smooth_cone(current.cone(cone)):
            stages.append(
                {
                    "orbit": list(cone),
                    "status": "smooth",
                    "isogeny": None,
                    "avoid_set": avoid_set,
                    "anchors": [
                        "deformation.generic-member-selection",
                        "deformation.move-off-smooth-center",
                    ],
                }
            )
            continue
        iso = smoothing_isogeny(current, cone)
        chain.append(iso)
        current = pullback_fan(iso)
        stages.append(
            {
                "orbit": list(cone),
                "status": "smoothed",
                "isogeny": isogeny_payload(iso),
                "avoid_set": avoid_set,
                "anchors": [
                    "deformation.generic-member-selection",
                    "deformation.image-under-finite-morphism",
                    "deformation.move-off-smooth-center",
                ],
            }
        )

    marked, non_invariant = _invariant_marked_cones(fan, (p, q))
    if marked:
        _, res_steps = resolve_marked(fan, [c for _, c in marked])
    else:
        res_steps = ()

    payload = {
        "plan": "main-lemma",
        "fan": fan_payload(fan),
        "points": [point_payload(p), point_payload(q)],
        "locus": _locus_record(fan, locus),
        "qfactorialization": {
            "status": "verified",
            "steps": [step_payload(s) for s in q_steps],
            "result": fan_payload(simplicial),
        },
        "orbits": [orbit_payload(d) for d in orbits],
        "stages": stages,
        "isogeny_chain": [isogeny_payload(i) for i in chain],
        "marked_resolution": {
            "status": "verified",
            "marked": [list(c) for _, c in marked],
            "steps": [step_payload(s) for s in res_steps],
            "non_invariant_points": non_invariant,
            "anchor": "resolution.non-invariant-markings" if non_invariant else None,
        },
        "citations": [c.payload() for c in MAIN_LEMMA_CITATIONS],
    }
    return wrap("plan", payload)


def main_theorem_plan(fan: Fan, points, locus_generators, degree=None, seed: int = 0) -> dict:
    """The many-point scaffold: classify points, record the comb blueprint
    and the marked resolution, and on rank-one targets attach a verified
    interpolated curve discharging the existence constructively."""
    report = validate_fan(fan)
    if not report.ok:
        raise InvalidFanError("; ".join(v.code for v in report.violations))
    if not is_complete(fan):
        raise InvalidFanError("the plan needs a complete fan")
    pts = [pt if isinstance(pt, PointSpec) else PointSpec(tuple(pt)) for pt in points]
    for pt in pts:
        if not point_on_fan(fan, pt):
            raise InputError(f"{pt.coordinates} does not describe a point of the variety")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if points_equal(fan, pts[i], pts[j]):
                raise InputError("points must be distinct")

    cone_sets = {d.cone for d in list_orbits(fan)}
    classification = []
    for i, pt in enumerate(pts):
        pattern = pt.vanishing_pattern
        if pattern not in cone_sets:
            raise InputError(f"vanishing pattern {pattern} is not a cone of the fan")
        singular = not is_smooth_cone(fan.cone(pattern))
        invariant = fan.cone(pattern).dim == fan.rank
        if singular and not invariant:
            raise ToroidalizationOutOfScopeError(
                f"point {i} sits on a positive-dimensional singular orbit"
            )
        classification.append(
            {
                "point": i,
                "orbit_cone": list(pattern),
                "singular": singular,
                "invariant": invariant,
            }
        )

    marked = sorted(
        {pts[c["point"]].vanishing_pattern for c in classification if c["singular"]}
    )
    if marked:
        _, res_steps = resolve_marked(fan, marked)
    else:
        res_steps = ()

    branches = [
        {
            "slot": f"C{i + 1}",
            "point": i,
            "attachment": f"t{i + 1}",
            "status": "cited",
            "anchors": ["comb.smoothing-with-fixed-points", "freeness.very-free-upgrade"],
        }
        for i in range(len(pts))
    ]
    comb = {
        "central": {
            "slot": "C0",
            "avoids": "prescribed points and the singular locus",
            "status": "cited",
        },
        "branches": branches,
    }

    interpolation: dict
    rank_one = len(fan.rays) == fan.rank + 1 and all(
        len(c) == fan.cone(c).dim for c in fan.max_cones
    )
    if rank_one:
        d = degree if degree is not None else max(len(pts), 1)
        params = [(j, 1) for j in range(len(pts))]
        curve = interpolate_avoiding(
            fan, pts, params, locus_generators, d, seed=seed
        )
        verification = avoidance_verify(
            curve,
            locus_generators,
            allowed=tuple(zip(params, pts)),
        )
        interpolation = {
            "attached": True,
            "status": "verified",
            "degree": d,
            "seed": seed,
            "parameters": [[str(a), str(b)] for a, b in params],
            "curve": curve_payload(curve),
            "avoidance": avoidance_payload(verification),
        }
    else:
        interpolation = {
            "attached": False,
            "status": "cited",
            "reason": "target is not of Picard rank one; existence rests on the cited steps",
        }

    payload = {
        "plan": "main-theorem",
        "fan": fan_payload(fan),
        "points": [point_payload(pt) for pt in pts],
        "locus": {"mode": "ideal", "generators": ideal_payload(locus_generators)},
        "classification": classification,
        "comb": comb,
        "marked_resolution": {
            "status": "verified",
            "marked": [list(c) for c in marked],
            "steps": [step_payload(s) for s in res_steps],
        },
        "interpolation": interpolation,
        "citations": [c.payload() for c in MAIN_THEOREM_CITATIONS],
    }
    return wrap("plan", payload)


def _star_closed_suffixes(orbits) -> bool:
    for i, a in enumerate(orbits):
        for j, b in enumerate(orbits):
            if set(a) < set(b) and j < i:
                return False
    return True


def verify_plan(doc: dict) -> bool:
    """Replay every effective claim of a plan document.

    Checks the qfactorialization replay, smoothness of each chain step's
    designated cone in its pullback, the star-closed suffix property of the
    orbit order, the marked-resolution replay, the attached curve (if any),
    and citation completeness against the fixed list.
    """
    payload = doc["payload"] if "payload" in doc else doc
    kind = payload.get("plan")
    fan = fan_from_payload(payload["fan"])
    if kind == "main-lemma":
        simplicial = apply_steps(
            fan, [step_from_payload(s) for s in payload["qfactorialization"]["steps"]]
        )
        if fan_payload(simplicial) != payload["qfactorialization"]["result"]:
            return False
        orbits = [tuple(o["cone"]) for o in payload["orbits"]]
        expected = [d.cone for d in codim2_orbits(simplicial)]
        if orbits != expected or not _star_closed_suffixes(orbits):
            return False
        current = simplicial
        chain_payloads = list(payload["isogeny_chain"])
        for stage in payload["stages"]:
            cone = tuple(stage["orbit"])
            if stage["status"] == "smooth":
                if not is_smooth_cone(current.cone(cone)):
                    return False
                continue
            iso = isogeny_from_payload(chain_payloads.pop(0))
            if iso.fan != current:
                return False
            current = pullback_fan(iso)
            if not is_smooth_cone(current.cone(cone)):
                return False
        if chain_payloads:
            return False
        expected_anchors = [c.anchor for c in MAIN_LEMMA_CITATIONS]
    elif kind == "main-theorem":
        marked = [tuple(c) for c in payload["marked_resolution"]["marked"]]
        if marked:
            resolved, steps = resolve_marked(fan, marked)
            if [step_payload(s) for s in steps] != payload["marked_resolution"]["steps"]:
                return False
            for cone in marked:
                if not interior_ray_indices(resolved, fan, cone):
                    return False
        if payload["interpolation"].get("attached"):
            from .documents import curve_from_payload, ideal_from_payload

            curve = curve_from_payload(payload["interpolation"]["curve"])
            gens = ideal_from_payload(payload["locus"]["generators"])
            params = [
                tuple(int(x) for x in pr)
                for pr in payload["interpolation"]["parameters"]
            ]
            pts = [point_from_payload(p) for p in payload["points"]]
            rep = avoidance_verify(curve, gens, allowed=tuple(zip(params, pts)))
            if rep.verdict != "disjoint":
                return False
            from .curves import evaluate_curve

            for pr, pt in zip(params, pts):
                if not points_equal(fan, evaluate_curve(curve, pr), pt):
                    return False
        expected_anchors = [c.anchor for c in MAIN_THEOREM_CITATIONS]
    else:
        raise InputError(f"unknown plan kind {kind!r}")
    anchors = [c["anchor"] for c in payload["citations"]]
    return anchors == expected_anchors


__all__ = [
    "Citation",
    "MAIN_LEMMA_CITATIONS",
    "MAIN_THEOREM_CITATIONS",
    "main_lemma_plan",
    "main_theorem_plan",
    "verify_plan",
]
