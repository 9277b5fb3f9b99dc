"""Document formats: canonical UTF-8 JSON with exact rationals.

Every document is ``{"kind": ..., "version": ..., "payload": ...}``.
Rationals serialize as strings "p/q" (plain "p" for integers), keys are
emitted sorted, and parsing followed by emission is the identity on
canonical form, which is what makes golden tests and replay possible.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .curves import AvoidanceReport, CoxCurve, CoxPolynomial, PointSpec, Witness
from .divisors import FTCertificate, InvariantDivisor
from .errors import ParseError
from .fans import Fan, OrbitDescriptor, ValidationReport
from .forms import BinaryForm
from .isogeny import Isogeny, make_isogeny
from .refine import SubdivisionStep

KINDS = ("fan", "divisor", "isogeny", "curve", "ideal", "certificate", "plan", "report")


def format_rational(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rational(text, location="") -> Fraction:
    try:
        if isinstance(text, int):
            return Fraction(text)
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}", location) from None


def wrap(kind: str, payload) -> dict:
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}")
    return {"kind": kind, "version": __version__, "payload": payload}


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- payload builders -------------------------------------------------------


def fan_payload(fan: Fan) -> dict:
    return {
        "rank": fan.rank,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def divisor_payload(divisor: InvariantDivisor) -> dict:
    return {"coefficients": [format_rational(c) for c in divisor.coefficients]}


def isogeny_payload(iso: Isogeny) -> dict:
    return {
        "fan": fan_payload(iso.fan),
        "source_basis": [list(r) for r in iso.source_lattice.basis.entries],
        "degree": iso.degree,
    }


def form_payload(form: BinaryForm) -> dict:
    if form.is_zero:
        return {"degree": "zero"}
    return {
        "degree": form.degree,
        "coefficients": [format_rational(c) for c in form.coefficients],
    }


def curve_payload(curve: CoxCurve) -> dict:
    return {
        "target": fan_payload(curve.target),
        "forms": [form_payload(f) for f in curve.forms],
        "degree_class": list(curve.degree_class),
    }


def ideal_payload(generators) -> dict:
    gens = list(generators)
    if not gens:
        raise ParseError("an ideal document needs at least one generator")
    variables = gens[0].variables
    return {
        "variables": variables,
        "generators": [
            {
                "terms": [
                    {"monomial": list(exps), "coefficient": format_rational(c)}
                    for exps, c in g.terms
                ]
            }
            for g in gens
        ],
    }


def point_payload(point: PointSpec) -> dict:
    return {
        "cox_coords": [format_rational(c) for c in point.coordinates],
        "vanishing_pattern": list(point.vanishing_pattern),
    }


def certificate_payload(fan: Fan, cert: FTCertificate) -> dict:
    return {
        "fan": fan_payload(fan),
        "ample": divisor_payload(cert.ample),
        "u": list(cert.u),
        "d_prime": [format_rational(c) for c in cert.d_prime],
        "epsilon": format_rational(cert.epsilon),
        "boundary": divisor_payload(cert.boundary),
    }


def step_payload(step: SubdivisionStep) -> dict:
    return {
        "kind": step.kind,
        "new_ray": list(step.new_ray) if step.new_ray is not None else None,
        "before": [list(c) for c in step.before],
        "after": [list(c) for c in step.after],
    }


def validation_payload(report: ValidationReport) -> dict:
    return {
        "report": "validation",
        "valid": report.ok,
        "violations": [{"code": v.code, "detail": v.detail} for v in report.violations],
    }


def orbit_payload(descriptor: OrbitDescriptor) -> dict:
    return {
        "cone": list(descriptor.cone),
        "orbit_dim": descriptor.orbit_dim,
        "is_singular": descriptor.is_singular,
    }


def witness_payload(w: Witness) -> dict:
    return {
        "parameter": None
        if w.parameter is None
        else [format_rational(w.parameter[0]), format_rational(w.parameter[1])],
        "factor": form_payload(w.factor),
        "locus": w.locus,
    }


def avoidance_payload(report: AvoidanceReport) -> dict:
    return {
        "report": "avoidance",
        "verdict": report.verdict,
        "witnesses": [witness_payload(w) for w in report.witnesses],
        "allowed_hits": [witness_payload(w) for w in report.allowed_hits],
    }


# -- parsing ----------------------------------------------------------------


def _expect(payload, key, location):
    if not isinstance(payload, dict) or key not in payload:
        raise ParseError(f"missing key {key!r}", location)
    return payload[key]


def fan_from_payload(payload, location="payload") -> Fan:
    rank = _expect(payload, "rank", location)
    rays = _expect(payload, "rays", location)
    cones = _expect(payload, "max_cones", location)
    try:
        return Fan(int(rank), tuple(tuple(int(x) for x in r) for r in rays),
                   tuple(tuple(int(i) for i in c) for c in cones))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad fan data: {exc}", location) from None


def divisor_from_payload(payload, location="payload") -> InvariantDivisor:
    coeffs = _expect(payload, "coefficients", location)
    return InvariantDivisor(
        tuple(parse_rational(c, f"{location}.coefficients[{i}]") for i, c in enumerate(coeffs))
    )


def isogeny_from_payload(payload, location="payload") -> Isogeny:
    fan = fan_from_payload(_expect(payload, "fan", location), f"{location}.fan")
    basis = _expect(payload, "source_basis", location)
    iso = make_isogeny(fan, [[int(x) for x in row] for row in basis])
    declared = int(_expect(payload, "degree", location))
    if declared != iso.degree:
        raise ParseError(
            f"declared degree {declared} != computed {iso.degree}", f"{location}.degree"
        )
    return iso


def form_from_payload(payload, location="payload") -> BinaryForm:
    degree = _expect(payload, "degree", location)
    if degree == "zero":
        return BinaryForm.zero()
    coeffs = _expect(payload, "coefficients", location)
    if len(coeffs) != int(degree) + 1:
        raise ParseError("coefficient count must be degree + 1", location)
    return BinaryForm(tuple(parse_rational(c, location) for c in coeffs))


def curve_from_payload(payload, location="payload") -> CoxCurve:
    fan = fan_from_payload(_expect(payload, "target", location), f"{location}.target")
    forms = tuple(
        form_from_payload(f, f"{location}.forms[{i}]")
        for i, f in enumerate(_expect(payload, "forms", location))
    )
    degree_class = tuple(int(x) for x in _expect(payload, "degree_class", location))
    return CoxCurve(fan, forms, degree_class)


def ideal_from_payload(payload, location="payload") -> tuple[CoxPolynomial, ...]:
    variables = int(_expect(payload, "variables", location))
    out = []
    for gi, g in enumerate(_expect(payload, "generators", location)):
        terms = []
        for ti, term in enumerate(_expect(g, "terms", f"{location}.generators[{gi}]")):
            where = f"{location}.generators[{gi}].terms[{ti}]"
            exps = tuple(int(x) for x in _expect(term, "monomial", where))
            coeff = parse_rational(_expect(term, "coefficient", where), where)
            terms.append((exps, coeff))
        out.append(CoxPolynomial(variables, tuple(terms)))
    return tuple(out)


def point_from_payload(payload, location="payload") -> PointSpec:
    coords = _expect(payload, "cox_coords", location)
    point = PointSpec(tuple(parse_rational(c, location) for c in coords))
    declared = payload.get("vanishing_pattern")
    if declared is not None and tuple(int(i) for i in declared) != point.vanishing_pattern:
        raise ParseError("vanishing pattern disagrees with the coordinates", location)
    return point


def certificate_from_payload(payload, location="payload"):
    fan = fan_from_payload(_expect(payload, "fan", location), f"{location}.fan")
    cert = FTCertificate(
        ample=divisor_from_payload(_expect(payload, "ample", location), f"{location}.ample"),
        u=tuple(int(x) for x in _expect(payload, "u", location)),
        d_prime=tuple(
            parse_rational(c, f"{location}.d_prime") for c in _expect(payload, "d_prime", location)
        ),
        epsilon=parse_rational(_expect(payload, "epsilon", location), f"{location}.epsilon"),
        boundary=divisor_from_payload(
            _expect(payload, "boundary", location), f"{location}.boundary"
        ),
    )
    return fan, cert


def step_from_payload(payload, location="payload") -> SubdivisionStep:
    kind = _expect(payload, "kind", location)
    if kind not in ("stellar", "triangulation"):
        raise ParseError(f"unknown step kind {kind!r}", location)
    new_ray = payload.get("new_ray")
    return SubdivisionStep(
        kind=kind,
        new_ray=tuple(int(x) for x in new_ray) if new_ray is not None else None,
        before=tuple(tuple(int(i) for i in c) for c in _expect(payload, "before", location)),
        after=tuple(tuple(int(i) for i in c) for c in _expect(payload, "after", location)),
    )


def parse_document(text: str):
    """Parse a document string into (kind, payload dict); position-annotated
    errors on malformed input."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    kind = _expect(doc, "kind", "document")
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}", "document.kind")
    _expect(doc, "version", "document")
    payload = _expect(doc, "payload", "document")
    return kind, payload


def load_fan(text: str) -> Fan:
    kind, payload = parse_document(text)
    if kind != "fan":
        raise ParseError(f"expected a fan document, got {kind!r}")
    return fan_from_payload(payload)


def load_divisor(text: str) -> InvariantDivisor:
    kind, payload = parse_document(text)
    if kind != "divisor":
        raise ParseError(f"expected a divisor document, got {kind!r}")
    return divisor_from_payload(payload)


def load_isogeny(text: str) -> Isogeny:
    kind, payload = parse_document(text)
    if kind != "isogeny":
        raise ParseError(f"expected an isogeny document, got {kind!r}")
    return isogeny_from_payload(payload)


def load_curve(text: str) -> CoxCurve:
    kind, payload = parse_document(text)
    if kind != "curve":
        raise ParseError(f"expected a curve document, got {kind!r}")
    return curve_from_payload(payload)


def load_ideal(text: str) -> tuple[CoxPolynomial, ...]:
    kind, payload = parse_document(text)
    if kind != "ideal":
        raise ParseError(f"expected an ideal document, got {kind!r}")
    return ideal_from_payload(payload)
