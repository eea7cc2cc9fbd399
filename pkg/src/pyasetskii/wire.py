"""JSON wire format for parameters, rank matrices and traces.

A parameter document looks like::

    {
      "group": {"type": "SO_odd", "n": 3},
      "rho_classes": [
        {"label": "1", "dim": 1, "selfdual": "orthogonal"}
      ],
      "segments": [
        {"rho": "1", "b": "0", "e": "1", "mult": 1},
        {"rho": "1", "b": "-1", "e": "0", "mult": 1},
        {"rho": "1", "b": "0", "e": "0", "mult": 2}
      ]
    }

Group ranks follow the usual naming: SO_odd(n) is SO(2n+1), Sp(n) is Sp(2n),
O_even(n) is O(2n), GL(n) is GL(n).  Half-integers are written "k" or "k/2"
with odd k.  ``dual_label`` is required exactly when ``selfdual`` is "none".
Serialization is canonical, so parse(serialize(p)) == p byte-stably.
"""

from __future__ import annotations

from typing import Any

from .core import (
    GroupType,
    LParameter,
    MultiSegment,
    RhoClass,
    Segment,
    SELFDUAL_KINDS,
)
from .duality import ExtractionTrace, LineTrace
from .halfint import HalfInt


class SchemaError(ValueError):
    """Malformed document: wrong shapes, unknown references, bad literals."""


def parse_halfint(text: Any) -> HalfInt:
    try:
        return HalfInt.parse(text)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def parse_group(obj: Any) -> GroupType:
    _require(isinstance(obj, dict), "group must be an object")
    _require("type" in obj and "n" in obj, "group needs 'type' and 'n'")
    kind = obj["type"]
    _require(kind in GroupType.KINDS, f"unknown group type {kind!r}")
    n = obj["n"]
    _require(isinstance(n, int) and not isinstance(n, bool), "group n must be an integer")
    try:
        return GroupType(kind, n)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def parse_rho_classes(obj: Any) -> dict[str, RhoClass]:
    _require(isinstance(obj, list), "rho_classes must be a list")
    classes: dict[str, RhoClass] = {}
    for item in obj:
        _require(isinstance(item, dict), "rho class must be an object")
        _require(
            {"label", "dim", "selfdual"} <= set(item),
            "rho class needs label, dim, selfdual",
        )
        label = item["label"]
        _require(isinstance(label, str) and label, "rho label must be a string")
        _require(label not in classes, f"duplicate rho class {label!r}")
        dim = item["dim"]
        _require(
            isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
            f"rho {label!r}: dim must be a positive integer",
        )
        selfdual = item["selfdual"]
        _require(
            selfdual in SELFDUAL_KINDS, f"rho {label!r}: bad selfdual {selfdual!r}"
        )
        dual_label = item.get("dual_label", "")
        try:
            classes[label] = RhoClass(label, dim, selfdual, dual_label)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    for rho in classes.values():
        if rho.selfdual == "none":
            partner = classes.get(rho.dual_label)
            _require(
                partner is not None,
                f"rho {rho.label!r}: dual class {rho.dual_label!r} not declared",
            )
            _require(
                partner.dual_label == rho.label and partner.dim == rho.dim,
                f"rho {rho.label!r}: dual pairing with {rho.dual_label!r} inconsistent",
            )
    return classes


def parse_document(obj: Any) -> LParameter:
    _require(isinstance(obj, dict), "document must be a JSON object")
    _require(
        {"group", "rho_classes", "segments"} <= set(obj),
        "document needs group, rho_classes, segments",
    )
    group = parse_group(obj["group"])
    classes = parse_rho_classes(obj["rho_classes"])
    _require(isinstance(obj["segments"], list), "segments must be a list")
    pairs: list[tuple[Segment, int]] = []
    for item in obj["segments"]:
        _require(isinstance(item, dict), "segment must be an object")
        _require(
            {"rho", "b", "e"} <= set(item),
            "segment needs rho, b, e",
        )
        rho = classes.get(item["rho"])
        _require(rho is not None, f"segment references unknown rho {item['rho']!r}")
        b = parse_halfint(item["b"])
        e = parse_halfint(item["e"])
        mult = item.get("mult", 1)
        _require(
            isinstance(mult, int) and not isinstance(mult, bool) and mult >= 1,
            "segment mult must be a positive integer",
        )
        try:
            pairs.append((Segment(rho, b, e), mult))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    return LParameter(group, MultiSegment(pairs))


def group_json(group: GroupType) -> dict:
    return {"type": group.kind, "n": group.n}


def rho_classes_json(m: MultiSegment) -> list[dict]:
    classes: dict[str, RhoClass] = {}
    for seg, _ in m.pairs:
        classes[seg.rho.label] = seg.rho
    out = []
    for label in sorted(classes):
        rho = classes[label]
        item = {"label": rho.label, "dim": rho.dim, "selfdual": rho.selfdual}
        if rho.selfdual == "none":
            item["dual_label"] = rho.dual_label
        out.append(item)
    return out


def segments_json(m: MultiSegment) -> list[dict]:
    return [
        {"rho": seg.rho.label, "b": str(seg.b), "e": str(seg.e), "mult": mult}
        for seg, mult in m.pairs
    ]


def document_json(p: LParameter) -> dict:
    return {
        "group": group_json(p.group),
        "rho_classes": rho_classes_json(p.mseg),
        "segments": segments_json(p.mseg),
    }


def _step_json(step: ExtractionTrace) -> dict:
    return {
        "d": str(step.d),
        "chain": [
            {"rho": s.rho.label, "b": str(s.b), "e": str(s.e)} for s in step.chain
        ],
        "remainder": segments_json(step.remainder),
    }


def trace_json(traces: list[LineTrace]) -> list[dict]:
    return [
        {
            "line": t.line,
            "mode": t.mode,
            "steps": [_step_json(s) for s in t.steps],
        }
        for t in traces
    ]
