"""JSON input/output: schemas, parsers for cover/tower/family specs, exact serializers."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import jsonschema

from .errors import SchemaError
from .residue import Differential
from .series import LaurentSeries, TailCertificate
from .valued import FieldConfig, LocalFieldElement

W = LocalFieldElement

# serializers

def rational_json(x):
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise SchemaError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"not a rational: {s!r}") from exc
    raise SchemaError(f"not a rational: {s!r}")


def parse_extended(s):
    if s in ("inf", "+inf"):
        return math.inf
    return parse_rational(s)


def form_json(form: Differential):
    return {"num": list(form.coeff.num), "den": list(form.coeff.den), "text": form.to_str()}


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


# schemas

_RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_RAT_IN = {"anyOf": [_RAT, {"type": "integer"}]}
_DIGIT = {"anyOf": [{"type": "string", "pattern": r"^-?[0-9]+$"}, {"type": "integer"},
                    {"type": "array", "items": {"anyOf": [{"type": "string"}, {"type": "integer"}]}}]}
_ELEMENT = {"anyOf": [_RAT_IN, {
    "type": "object", "required": ["piShift", "digits"], "additionalProperties": False,
    "properties": {"piShift": {"type": "integer"}, "digits": {"type": "array", "items": _DIGIT}}}]}
_FIELD = {"type": "object", "required": ["p"], "additionalProperties": False,
          "properties": {"p": {"type": "integer", "minimum": 2},
                         "f": {"type": "integer", "minimum": 1},
                         "e": {"type": "integer", "minimum": 1},
                         "precision": {"type": "integer", "minimum": 4}}}
_TAIL = {"type": "object", "required": ["direction", "sigma", "after"], "additionalProperties": False,
         "properties": {"direction": {"enum": ["+inf", "-inf"]}, "sigma": _RAT_IN,
                        "after": {"type": "integer", "minimum": 0}, "offset": _RAT_IN}}
_SERIES = {"type": "object", "required": ["terms"], "additionalProperties": False,
           "properties": {"terms": {"type": "object",
                                    "patternProperties": {r"^-?[0-9]+$": _ELEMENT},
                                    "additionalProperties": False},
                          "tails": {"type": "array", "items": _TAIL}}}
_INT_POS = {"type": "integer", "minimum": 0}

COVER_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CoverSpec",
    "type": "object",
    "required": ["field", "branch"],
    "additionalProperties": False,
    "properties": {
        "field": _FIELD,
        "alpha0": _INT_POS,
        "branch": {"type": "array", "items": {
            "type": "object", "required": ["x", "alpha"], "additionalProperties": False,
            "properties": {"x": _ELEMENT, "alpha": {"type": "integer", "minimum": 1}}}},
        "unitU": _SERIES,
        "outside": {"type": "array", "items": {
            "type": "object", "required": ["y", "beta"], "additionalProperties": False,
            "properties": {"y": _ELEMENT, "beta": {"type": "integer", "minimum": 1}}}},
        "genus": _INT_POS,
        "outsideBound": _INT_POS,
        "r0": _RAT_IN,
        "connected": {"type": "boolean"},
    },
    "not": {"required": ["unitU", "outside"]},
}

_PROFILE_IN = {"type": "object", "required": ["breakpoints"],
               "properties": {"breakpoints": {"type": "array", "minItems": 2, "items": {
                   "type": "array", "minItems": 2, "maxItems": 2, "items": _RAT_IN}}}}

TOWER_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "TowerSpec",
    "type": "object",
    "required": ["p", "steps"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "steps": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["group"], "additionalProperties": False,
            "properties": {
                "group": {"enum": ["Z/p", "Z/l"]},
                "l": {"type": "integer", "minimum": 2},
                "cover": COVER_SCHEMA,
                "profile": _PROFILE_IN,
                "branchCounts": {"anyOf": [{"type": "integer", "minimum": 0}, {
                    "type": "object", "additionalProperties": {"type": "integer", "minimum": 0}}]},
            }}},
        "character": {"type": "object", "additionalProperties": False,
                      "properties": {"m": _INT_POS, "subgroupInSeries": {"type": "boolean"}}},
    },
}

FAMILY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FamilySpec",
    "type": "object",
    "required": ["p", "members"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "s1": {"anyOf": [_RAT_IN, {"enum": ["inf"]}]},
        "members": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["id"], "additionalProperties": False,
            "properties": {"id": {"type": "string"}, "cover": COVER_SCHEMA, "tower": TOWER_SCHEMA},
            "oneOf": [{"required": ["cover"]}, {"required": ["tower"]}]}},
        "witnesses": {"type": "array", "items": {
            "type": "object", "required": ["r", "member"], "additionalProperties": False,
            "properties": {"r": _RAT_IN, "member": {"type": "string"}}}},
        "mode": {"enum": ["diff", "swan"]},
        "strict": {"type": "boolean"},
    },
}

# output schemas

_RAT_OR_NULL = {"anyOf": [_RAT, {"type": "null"}]}
_EXT_RAT = {"anyOf": [_RAT, {"enum": ["inf"]}]}
_FORM = {"type": "object", "required": ["num", "den", "text"],
         "properties": {"num": {"type": "array", "items": {"type": "integer"}},
                        "den": {"type": "array", "items": {"type": "integer"}},
                        "text": {"type": "string"}}}

SWAN_VALUE_SCHEMA = {"type": "object", "required": ["depth", "form", "regime"],
                     "properties": {"depth": _RAT, "form": {"anyOf": [_FORM, {"type": "null"}]},
                                    "regime": {"enum": ["exact-dg", "logarithmic-dg/g",
                                                        "zero-depth"]},
                                    "r": _RAT, "leftSlope": _RAT_OR_NULL,
                                    "rightSlope": _RAT_OR_NULL}}
PROFILE_SCHEMA = {"type": "object", "required": ["r0", "breakpoints", "slopes", "kinks"],
                  "properties": {"r0": _RAT,
                                 "breakpoints": {"type": "array", "items": {
                                     "type": "array", "items": _RAT, "minItems": 2, "maxItems": 2}},
                                 "slopes": {"type": "array", "items": _RAT},
                                 "kinks": {"type": "array", "items": _RAT}}}
_LEVEL = {"type": "object", "required": ["level", "group", "branchCount", "isClosedDisk"],
          "properties": {"level": {"type": "integer"}, "group": {"type": "string"},
                         "branchCount": {"type": "integer"}, "isClosedDisk": {"type": "boolean"},
                         "criterion": {"type": "string"}, "slope": _RAT_OR_NULL,
                         "target": _RAT_OR_NULL}}
DISK_REPORT_SCHEMA = {"type": "object",
                      "required": ["r", "branchCountInDisk", "leftSlope", "isClosedDisk",
                                   "criterionUsed"],
                      "properties": {"r": _RAT, "branchCountInDisk": {"type": "integer"},
                                     "leftSlope": _RAT, "isClosedDisk": {"type": "boolean"},
                                     "criterionUsed": {"type": "string"}, "depth": _RAT,
                                     "omegaCriterion": {"type": ["boolean", "null"]},
                                     "levels": {"type": "array", "items": _LEVEL}}}
CERTIFICATE_SCHEMA = {"type": "object", "required": ["gamma", "argmin", "perMember"],
                      "properties": {"gamma": _RAT,
                                     "argmin": {"type": "array", "minItems": 1,
                                                "items": {"type": "string"}},
                                     "perMember": {"type": "object",
                                                   "additionalProperties": _RAT},
                                     "methods": {"type": "object"},
                                     "errors": {"type": "object"}}}
VC_REPORT_SCHEMA = {"type": "object", "required": ["r"],
                    "properties": {"r": _RAT, "skipped": {"type": "string"},
                                   "points": {"type": "array", "items": {
                                       "type": "object",
                                       "required": ["place", "ord", "branchNear", "delta"]}},
                                   "ordInf": {"type": "integer"}, "ordInfBound": _RAT,
                                   "degree": {"type": "integer"}, "allZero": {"type": "boolean"}}}
KINK_VERDICT_SCHEMA = {"type": "object", "required": ["certificate", "witnesses", "openDisk"],
                       "properties": {"certificate": CERTIFICATE_SCHEMA,
                                      "witnesses": {"type": "array"},
                                      "openDisk": {"type": ["object", "null"]}}}
LAMBDA_SCHEMA = {"type": "object", "required": ["lambda"],
                 "properties": {"lambda": _EXT_RAT, "closedForm": _RAT_OR_NULL,
                                "scan": _RAT_OR_NULL, "m": {"type": "integer"}}}

OUTPUT_SCHEMAS = {
    "swan-value": SWAN_VALUE_SCHEMA,
    "profile": PROFILE_SCHEMA,
    "disk-report": DISK_REPORT_SCHEMA,
    "certificate": CERTIFICATE_SCHEMA,
    "vc-report": VC_REPORT_SCHEMA,
    "kink-verdict": KINK_VERDICT_SCHEMA,
    "lambda": LAMBDA_SCHEMA,
}
INPUT_SCHEMAS = {"cover": COVER_SCHEMA, "tower": TOWER_SCHEMA, "family": FAMILY_SCHEMA}


def validate(obj, schema):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{exc.message} (at /{path})") from exc


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc


# parsers

def parse_field(d, precision=None, max_ef=None) -> FieldConfig:
    kw = {"p": d["p"], "f": d.get("f", 1), "e": d.get("e", 1),
          "precision": d.get("precision", 48)}
    if precision is not None:
        kw["precision"] = precision
    if max_ef is not None:
        kw["max_ef"] = max_ef
    try:
        return FieldConfig(**kw)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def parse_element(cfg, lit) -> LocalFieldElement:
    if isinstance(lit, dict):
        digits = [[int(x) for x in d] if isinstance(d, list) else int(d) for d in lit["digits"]]
        return W.from_digits(cfg, int(lit["piShift"]), digits)
    return W.from_fraction(cfg, parse_rational(lit))


def parse_series(cfg, d) -> LaurentSeries:
    terms = {int(k): parse_element(cfg, v) for k, v in d["terms"].items()}
    tails = []
    for t in d.get("tails", []):
        tails.append(TailCertificate(1 if t["direction"] == "+inf" else -1,
                                     parse_rational(t["sigma"]), int(t["after"]),
                                     parse_rational(t.get("offset", 0))))
    return LaurentSeries(cfg, terms, tails)


def parse_cover(d, precision=None, max_ef=None):
    from .swan import CoverSpec
    validate(d, COVER_SCHEMA)
    cfg = parse_field(d["field"], precision, max_ef)
    branch = [(parse_element(cfg, b["x"]), b["alpha"]) for b in d["branch"]]
    r0 = parse_rational(d["r0"]) if "r0" in d else None
    try:
        if "outside" in d:
            outside = [(parse_element(cfg, o["y"]), o["beta"]) for o in d["outside"]]
            cov = CoverSpec.genuine(cfg, branch, d.get("alpha0", 0), outside, r0)
        else:
            U = parse_series(cfg, d["unitU"]) if "unitU" in d else None
            cov = CoverSpec(cfg, d.get("alpha0", 0), branch, U, d.get("genus", 0),
                            d.get("outsideBound", 0), r0)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    cov.connected = d.get("connected")
    return cov


def cover_json(cov) -> dict:
    cfg = cov.cfg
    out = {"field": {"p": cfg.p, "f": cfg.f, "e": cfg.e, "precision": cfg.precision},
           "alpha0": cov.alpha0,
           "branch": [{"x": x.to_json(), "alpha": a} for x, a in cov.branch],
           "unitU": cov.unit_u.to_json(),
           "genus": cov.genus, "outsideBound": cov.outside_bound,
           "r0": rational_json(cov.r0)}
    if cov.connected is not None:
        out["connected"] = cov.connected
    return out


def parse_profile(d):
    from .profile import PLProfile
    pts = [(parse_rational(a), parse_rational(b)) for a, b in d["breakpoints"]]
    pts.sort()
    return PLProfile.from_points(pts, pts[-1][0])


def parse_tower(d, precision=None, max_ef=None):
    from .towers import TowerSpec, TowerStep
    validate(d, TOWER_SCHEMA)
    steps = []
    for st in d["steps"]:
        bc = st.get("branchCounts")
        if isinstance(bc, dict):
            bc = {parse_rational(k): v for k, v in bc.items()}
        cover = parse_cover(st["cover"], precision, max_ef) if "cover" in st else None
        prof = parse_profile(st["profile"]) if "profile" in st else None
        try:
            steps.append(TowerStep(st["group"], st.get("l"), cover, prof, bc))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    return TowerSpec(d["p"], steps, d.get("character"))


def parse_family(d, precision=None, max_ef=None):
    from .families import FamilySpec
    validate(d, FAMILY_SCHEMA)
    members = []
    for m in d["members"]:
        if "cover" in m:
            members.append((m["id"], parse_cover(m["cover"], precision, max_ef)))
        else:
            members.append((m["id"], parse_tower(m["tower"], precision, max_ef)))
    s1 = d.get("s1")
    s1 = None if s1 is None else parse_extended(s1)
    return FamilySpec(members, d["p"], s1)


def parse_witnesses(d):
    return [(parse_rational(w["r"]), w["member"]) for w in d.get("witnesses", [])]
