"""JSON instance formats: schema validation, loading, and dumping."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import jsonschema

from .coloring import Coloring
from .fan import Fan
from .polytope import Polytope
from .residue import Monomial


class InstanceError(Exception):
    """Unreadable file, malformed JSON, schema violation, or inconsistent ray indexing."""


_INT_VEC = {"type": "array", "items": {"type": "integer"}}
_MONOMIAL = {
    "type": "object",
    "required": ["exponents"],
    "properties": {"exponents": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
}

SCHEMAS = {
    "polytope": {
        "type": "object",
        "required": ["dim", "vertices"],
        "properties": {
            "dim": {"type": "integer", "minimum": 0},
            "vertices": {"type": "array", "minItems": 1, "items": _INT_VEC},
        },
    },
    "fan": {
        "type": "object",
        "required": ["dim", "rays", "max_cones"],
        "properties": {
            "dim": {"type": "integer", "minimum": 0},
            "rays": {"type": "array", "items": _INT_VEC},
            "max_cones": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
        },
    },
    "coloring": {
        "type": "object",
        "required": ["colors"],
        "properties": {
            "colors": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            }
        },
    },
    "divisor": {"type": "object", "required": ["a"], "properties": {"a": _INT_VEC}},
    "monomial": _MONOMIAL,
    "tuple": {
        "type": "object",
        "required": ["z"],
        "properties": {"z": {"type": "array", "minItems": 1, "items": _MONOMIAL}},
    },
    "ideal": {
        "type": "object",
        "required": ["gens"],
        "properties": {"gens": {"type": "array", "minItems": 1, "items": _MONOMIAL}},
    },
}


def read_json(path, kind: str):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as e:
        raise InstanceError(f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InstanceError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InstanceError(f"{path}: not a {kind} document at {where}: {e.message}") from None
    return doc


def _lengths(rows, n, what):
    for i, r in enumerate(rows):
        if len(r) != n:
            raise InstanceError(f"{what} {i} has length {len(r)}, expected {n}")


def polytope_from_doc(doc) -> Polytope:
    _lengths(doc["vertices"], doc["dim"], "vertex")
    return Polytope.from_points([tuple(v) for v in doc["vertices"]])


def fan_from_doc(doc) -> Fan:
    n = doc["dim"]
    _lengths(doc["rays"], n, "ray")
    r = len(doc["rays"])
    for c in doc["max_cones"]:
        if any(j >= r for j in c):
            raise InstanceError(f"cone {c} refers to a ray index >= {r}")
    return Fan.from_data(n, [tuple(v) for v in doc["rays"]], doc["max_cones"])


def coloring_from_doc(doc, f: Fan | None = None) -> Coloring:
    colors = doc["colors"]
    if f is not None:
        if len(colors) != f.nrays:
            raise InstanceError(f"coloring has {len(colors)} entries for {f.nrays} rays")
        if any(i > f.dim for s in colors for i in s):
            raise InstanceError(f"colors must lie in 0..{f.dim}")
    return Coloring(tuple(frozenset(s) for s in colors))


def divisor_from_doc(doc, f: Fan | None = None) -> tuple:
    a = tuple(doc["a"])
    if f is not None and len(a) != f.nrays:
        raise InstanceError(f"divisor has {len(a)} coefficients for {f.nrays} rays")
    return a


def _monomials(docs, f: Fan | None):
    out = [Monomial(tuple(m["exponents"])) for m in docs]
    lengths = {len(m.exponents) for m in out}
    if len(lengths) != 1:
        raise InstanceError("monomials have different numbers of variables")
    if f is not None and lengths != {f.nrays}:
        raise InstanceError(f"monomials need {f.nrays} exponents")
    return out


def tuple_from_doc(doc, f: Fan | None = None) -> list:
    z = _monomials(doc["z"], f)
    if f is not None and len(z) != f.dim + 1:
        raise InstanceError(f"tuple needs {f.dim + 1} monomials, got {len(z)}")
    return z


def ideal_from_doc(doc, f: Fan | None = None) -> list:
    gens = _monomials(doc["gens"], f)
    for g in gens:
        if any(e > 1 for e in g.exponents):
            raise InstanceError(f"generator {g} is not squarefree")
    return [g.support for g in gens]


def load(path, kind: str, fan: Fan | None = None):
    doc = read_json(path, kind)
    if kind == "fan":
        return fan_from_doc(doc)
    if kind == "polytope":
        return polytope_from_doc(doc)
    return {
        "coloring": coloring_from_doc,
        "divisor": divisor_from_doc,
        "tuple": tuple_from_doc,
        "ideal": ideal_from_doc,
    }[kind](doc, fan)


def fan_to_doc(f: Fan) -> dict:
    return {
        "dim": f.dim,
        "rays": [list(v) for v in f.rays],
        "max_cones": [sorted(c) for c in f.max_cones],
    }


def polytope_to_doc(p: Polytope) -> dict:
    verts = []
    for v in p.vertices:
        if any(Fraction(x).denominator != 1 for x in v):
            raise ValueError("only lattice polytopes have a JSON form")
        verts.append([int(x) for x in v])
    return {"dim": p.ambient_dim, "vertices": verts}


def coloring_to_doc(c: Coloring) -> dict:
    return {"colors": [sorted(s) for s in c.colors]}


def monomial_to_doc(m: Monomial) -> dict:
    return {"exponents": list(m.exponents)}


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, so identical results give identical bytes."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
