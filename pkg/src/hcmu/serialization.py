"""JSON persistence of data sets, plus DOT and CSV exports.

The document stores rationals as strings in lowest terms and the maximum
curvature as a decimal string; emission is canonical (sorted keys, two-space
indent, trailing newline), so saving a loaded canonical document is
byte-identical.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .angulation import BLACK, WHITE, MixedAngulation
from .dataset import DataSet, validate_dataset
from .errors import HcmuError, ParseError, ValidationError

SCHEMA_VERSION = 1


def format_fraction(x) -> str:
    return str(Fraction(x))


def parse_fraction(text, pointer="") -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r} ({exc})", pointer)


def dart_token(dart) -> str:
    return f"{dart[0]}:{dart[1]}"


def parse_dart(token, pointer=""):
    try:
        arc, end = str(token).split(":")
        if end not in ("b", "w"):
            raise ValueError(end)
        return (int(arc), end)
    except ValueError:
        raise ParseError(f"malformed arc-end token {token!r}", pointer)


def face_key_token(ma: MixedAngulation, face_index: int) -> str:
    return dart_token(ma.face_keys[face_index])


def save(ds: DataSet) -> dict:
    """Canonical JSON document of a data set."""
    ma = ds.angulation
    return {
        "version": SCHEMA_VERSION,
        "k0": repr(ds.k0),
        "ratio": format_fraction(ds.ratio),
        "vertices": [
            {"id": v, "color": ma.colors[v]} for v in range(ma.num_vertices)
        ],
        "arcs": [
            {
                "id": a,
                "black": ma.arcs[a][0],
                "white": ma.arcs[a][1],
                "weight": format_fraction(ds.weights[a]),
            }
            for a in range(ma.num_arcs)
        ],
        "rotations": {
            str(v): [dart_token(d) for d in ma.rotations[v]]
            for v in range(ma.num_vertices)
        },
        "face_levels": {
            face_key_token(ma, f): format_fraction(ds.face_levels[f])
            for f in range(ma.num_faces)
        },
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _require(doc, key, pointer):
    if key not in doc:
        raise ParseError(f"missing key {key!r}", pointer)
    return doc[key]


def load_document(doc: dict) -> DataSet:
    """Validated data set from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", "/")
    version = _require(doc, "version", "/version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported version {version}", "/version")
    try:
        k0 = float(_require(doc, "k0", "/k0"))
    except (TypeError, ValueError):
        raise ParseError("k0 must be a decimal string", "/k0")
    ratio = parse_fraction(_require(doc, "ratio", "/ratio"), "/ratio")

    vertices = _require(doc, "vertices", "/vertices")
    colors = [None] * len(vertices)
    for i, item in enumerate(vertices):
        ptr = f"/vertices/{i}"
        vid = _require(item, "id", ptr)
        color = _require(item, "color", ptr)
        if not isinstance(vid, int) or not (0 <= vid < len(vertices)):
            raise ParseError("vertex ids must be 0..n-1", ptr)
        if colors[vid] is not None:
            raise ParseError(f"duplicate vertex id {vid}", ptr)
        if color not in (BLACK, WHITE):
            raise ParseError(f"unknown color {color!r}", ptr)
        colors[vid] = color

    arc_items = _require(doc, "arcs", "/arcs")
    arcs = [None] * len(arc_items)
    weights = [None] * len(arc_items)
    for i, item in enumerate(arc_items):
        ptr = f"/arcs/{i}"
        aid = _require(item, "id", ptr)
        if not isinstance(aid, int) or not (0 <= aid < len(arc_items)):
            raise ParseError("arc ids must be 0..b-1", ptr)
        if arcs[aid] is not None:
            raise ParseError(f"duplicate arc id {aid}", ptr)
        arcs[aid] = (_require(item, "black", ptr), _require(item, "white", ptr))
        weights[aid] = parse_fraction(_require(item, "weight", ptr), f"{ptr}/weight")

    rotations = [None] * len(vertices)
    rot_doc = _require(doc, "rotations", "/rotations")
    for key, row in rot_doc.items():
        ptr = f"/rotations/{key}"
        try:
            v = int(key)
        except ValueError:
            raise ParseError(f"rotation key {key!r} is not a vertex id", ptr)
        if not (0 <= v < len(vertices)) or rotations[v] is not None:
            raise ParseError(f"bad or duplicate rotation key {key}", ptr)
        rotations[v] = [parse_dart(tok, f"{ptr}/{i}") for i, tok in enumerate(row)]
    if any(r is None for r in rotations):
        raise ParseError("missing rotation rows", "/rotations")

    try:
        ma = MixedAngulation(colors, arcs, rotations)
    except HcmuError as exc:
        raise ValidationError(str(exc), "/rotations")

    level_doc = _require(doc, "face_levels", "/face_levels")
    keys = {face_key_token(ma, f): f for f in range(ma.num_faces)}
    levels = [None] * ma.num_faces
    for key, text in level_doc.items():
        ptr = f"/face_levels/{key}"
        if key not in keys:
            raise ValidationError(f"{key!r} is not a face of this angulation", ptr)
        levels[keys[key]] = parse_fraction(text, ptr)
    if any(s is None for s in levels):
        raise ValidationError("missing face level", "/face_levels")

    probe = DataSet.__new__(DataSet)
    probe.angulation = ma
    probe.k0 = k0
    probe.ratio = ratio
    probe.weights = tuple(weights)
    probe.face_levels = tuple(levels)
    issues = validate_dataset(probe)
    if issues:
        first = issues[0]
        raise ValidationError("; ".join(str(i) for i in issues), f"/{first.code}")
    return DataSet(ma, k0, ratio, weights, levels)


def load(source) -> DataSet:
    """Data set from a file path or a readable stream."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", "/")
    return load_document(doc)


def save_path(ds: DataSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(save(ds)))


# -- exports ---------------------------------------------------------------


def export_dot(ds: DataSet) -> str:
    """Graphviz text with filled/open vertices and weight edge labels."""
    ma = ds.angulation
    lines = ["graph surface {"]
    for v in range(ma.num_vertices):
        if ma.colors[v] == BLACK:
            style = "shape=circle, style=filled, fillcolor=black, fontcolor=white"
        else:
            style = "shape=circle, style=filled, fillcolor=white"
        lines.append(f'  v{v} [{style}, label="{v}"];')
    for a, (b, w) in enumerate(ma.arcs):
        lines.append(f'  v{b} -- v{w} [label="{format_fraction(ds.weights[a])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_profile_csv(profile) -> str:
    """CSV with columns v, s, K, h."""
    rows = ["v,s,K,h"]
    if profile is not None:
        for v, s, k, h in zip(profile.v, profile.s, profile.K, profile.h):
            rows.append(f"{float(v)!r},{float(s)!r},{float(k)!r},{float(h)!r}")
    return "\n".join(rows) + "\n"
