"""JSON file formats: deformation parameters, representations, sheaf data.

Rationals travel as strings "p/q" (or "p"), matrices as row-major arrays
of such strings, complex values as {"re": float, "im": float}.  Node
keys are decimal strings.  Malformed input raises SchemaError, which the
command line maps to exit code 2.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .adhm import N1Representation
from .deformation import DeformationParam, Polynomial, complete_affine_theta, make_deformation
from .dynkin import DynkinType, node_labels
from .linalg import Mat, Vec
from .sheaf import QuiverSheafData, TorsionSheafData


class SchemaError(Exception):
    """Input file does not match the documented format."""


def frac_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def frac_from_json(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise SchemaError(f"expected an exact rational string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad rational {v!r}: {e}") from None


def matrix_to_json(m: Mat) -> list[list[str]]:
    return [[frac_to_str(x) for x in row] for row in m]


def matrix_from_json(v, rows: int | None = None, cols: int | None = None) -> Mat:
    if not isinstance(v, list) or any(not isinstance(r, list) for r in v):
        raise SchemaError("matrices are row-major arrays of rational strings")
    m = [[frac_from_json(x) for x in row] for row in v]
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise SchemaError("ragged matrix")
    if rows is not None and len(m) != rows:
        raise SchemaError(f"expected {rows} rows, got {len(m)}")
    if cols is not None and m and len(m[0]) != cols:
        raise SchemaError(f"expected {cols} columns")
    return m


def vector_from_json(v, length: int | None = None) -> Vec:
    if not isinstance(v, list):
        raise SchemaError("vectors are arrays of rational strings")
    out = [frac_from_json(x) for x in v]
    if length is not None and len(out) != length:
        raise SchemaError(f"expected a vector of length {length}")
    return out


def _parse_type(record: Any) -> DynkinType:
    if not isinstance(record, dict) or "type" not in record:
        raise SchemaError("record must be an object with a 'type' field")
    try:
        return DynkinType.parse(str(record["type"]))
    except ValueError as e:
        raise SchemaError(str(e)) from None


def _node_table(record: dict, key: str) -> dict[int, Any]:
    table = record.get(key, {})
    if not isinstance(table, dict):
        raise SchemaError(f"'{key}' must be an object keyed by node labels")
    out = {}
    for k, v in table.items():
        if not str(k).lstrip("-").isdigit():
            raise SchemaError(f"bad node label {k!r} under '{key}'")
        out[int(k)] = v
    return out


# -- deformation files ------------------------------------------------------

def deformation_from_dict(record: Any) -> DeformationParam:
    t = _parse_type(record)
    theta_raw = _node_table(record, "theta")
    theta = {}
    for a, coeffs in theta_raw.items():
        if not isinstance(coeffs, list):
            raise SchemaError("polynomials are arrays of rational strings, ascending")
        theta[a] = Polynomial.of([frac_from_json(c) for c in coeffs])
    finite = node_labels(t, affine=False)
    if sorted(theta) == finite:
        return complete_affine_theta(t, theta)
    if sorted(theta) == node_labels(t, affine=True):
        return make_deformation(t, theta)
    raise SchemaError(
        f"theta must cover the finite nodes {finite} (affine node optional)"
    )


def deformation_to_dict(d: DeformationParam) -> dict:
    return {
        "type": str(d.type),
        "theta": {
            str(a): [frac_to_str(c) for c in d.theta[a].coefficients]
            for a in sorted(d.theta)
        },
        "constrained": d.constrained,
    }


def load_deformation(path: str) -> DeformationParam:
    return deformation_from_dict(read_json(path))


# -- representation files ---------------------------------------------------

def representation_from_dict(record: Any) -> N1Representation:
    t = _parse_type(record)
    dims_raw = _node_table(record, "dims")
    dims = {}
    for a, v in dims_raw.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise SchemaError(f"dims[{a}] must be a nonnegative integer")
        dims[a] = v
    affine = 0 in dims
    arrows = record.get("arrows", [])
    if not isinstance(arrows, list):
        raise SchemaError("'arrows' must be an array")
    b = {}
    for entry in arrows:
        if not isinstance(entry, dict) or not {"from", "to", "matrix"} <= set(entry):
            raise SchemaError("each arrow needs 'from', 'to', 'matrix' (and optional 'pair_index')")
        key = (int(entry["from"]), int(entry["to"]), int(entry.get("pair_index", 0)))
        if key in b:
            raise SchemaError(f"duplicate arrow {key}")
        b[key] = matrix_from_json(entry["matrix"])
    psi = {a: matrix_from_json(v) for a, v in _node_table(record, "psi").items()}
    framing_raw = _node_table(record, "framing")
    ranks = {}
    vectors = {}
    for a, v in framing_raw.items():
        if not isinstance(v, dict) or "rank" not in v:
            raise SchemaError("framing entries are objects with 'rank' and 'vectors'")
        ranks[a] = int(v["rank"])
        vectors[a] = [vector_from_json(w) for w in v.get("vectors", [])]
    try:
        return N1Representation(
            type=t, dims=dims, B=b, Psi=psi,
            framing_ranks=ranks, I=vectors, affine=affine,
        )
    except (ValueError, TypeError) as e:
        raise SchemaError(str(e)) from None


def representation_to_dict(rep: N1Representation) -> dict:
    arrows = [
        {
            "from": k[0], "to": k[1], "pair_index": k[2],
            "matrix": matrix_to_json(m),
        }
        for k, m in sorted(rep.B.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]), kv[0][2]))
    ]
    return {
        "type": str(rep.type),
        "dims": {str(a): rep.dims[a] for a in sorted(rep.dims)},
        "arrows": arrows,
        "psi": {str(a): matrix_to_json(rep.Psi[a]) for a in sorted(rep.Psi)},
        "framing": {
            str(a): {
                "rank": rep.framing_ranks[a],
                "vectors": [[frac_to_str(x) for x in v] for v in rep.I[a]],
            }
            for a in sorted(rep.framing_ranks)
            if rep.framing_ranks[a]
        },
    }


def load_representation(path: str) -> N1Representation:
    return representation_from_dict(read_json(path))


# -- sheaf data files -------------------------------------------------------

def _support_to_json(s):
    if isinstance(s, Fraction):
        return frac_to_str(s)
    z = complex(s)
    return {"re": z.real, "im": z.imag}


def _support_from_json(v):
    if isinstance(v, dict):
        if set(v) != {"re", "im"}:
            raise SchemaError("complex supports are objects {re, im}")
        return complex(float(v["re"]), float(v["im"]))
    return frac_from_json(v)


def sheaf_data_from_dict(record: Any) -> QuiverSheafData:
    t = _parse_type(record)
    nodes_raw = _node_table(record, "nodes")
    sheaves = {}
    for a, v in nodes_raw.items():
        if not isinstance(v, dict) or "points" not in v or not isinstance(v["points"], list):
            raise SchemaError("each node carries an object with a 'points' array")
        points = []
        for pt in v["points"]:
            if not isinstance(pt, dict) or not {"support", "partition"} <= set(pt):
                raise SchemaError("points are objects with 'support' and 'partition'")
            if not isinstance(pt["partition"], list):
                raise SchemaError("'partition' must be an array of positive integers")
            points.append((_support_from_json(pt["support"]), [int(x) for x in pt["partition"]]))
        try:
            sheaves[a] = TorsionSheafData.of(points)
        except ValueError as e:
            raise SchemaError(str(e)) from None
    affine = 0 in sheaves
    arrows = record.get("arrows", [])
    if not isinstance(arrows, list):
        raise SchemaError("'arrows' must be an array")
    maps = {}
    for entry in arrows:
        if not isinstance(entry, dict) or not {"from", "to", "matrix"} <= set(entry):
            raise SchemaError("each arrow needs 'from', 'to', 'matrix' (and optional 'pair_index')")
        key = (int(entry["from"]), int(entry["to"]), int(entry.get("pair_index", 0)))
        maps[key] = matrix_from_json(entry["matrix"])
    framing_raw = _node_table(record, "framing")
    ranks = {}
    vectors = {}
    for a, v in framing_raw.items():
        if not isinstance(v, dict) or "rank" not in v:
            raise SchemaError("framing entries are objects with 'rank' and 'vectors'")
        ranks[a] = int(v["rank"])
        vectors[a] = [vector_from_json(w) for w in v.get("vectors", [])]
    labels = node_labels(t, affine)
    for a in labels:
        ranks.setdefault(a, 0)
        vectors.setdefault(a, [])
    try:
        return QuiverSheafData(
            type=t, node_sheaves=sheaves, arrow_maps=maps,
            framing_ranks=ranks, framing_vectors=vectors, affine=affine,
        )
    except ValueError as e:
        raise SchemaError(str(e)) from None


def sheaf_data_to_dict(data: QuiverSheafData) -> dict:
    return {
        "type": str(data.type),
        "nodes": {
            str(a): {
                "points": [
                    {"support": _support_to_json(s), "partition": list(parts)}
                    for s, parts in data.node_sheaves[a].points
                ]
            }
            for a in sorted(data.node_sheaves)
        },
        "arrows": [
            {"from": k[0], "to": k[1], "pair_index": k[2], "matrix": matrix_to_json(m)}
            for k, m in sorted(data.arrow_maps.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
        ],
        "framing": {
            str(a): {
                "rank": data.framing_ranks[a],
                "vectors": [[frac_to_str(x) for x in v] for v in data.framing_vectors[a]],
            }
            for a in sorted(data.framing_ranks)
            if data.framing_ranks[a]
        },
    }


def load_sheaf_data(path: str) -> QuiverSheafData:
    return sheaf_data_from_dict(read_json(path))


def read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}") from None


def dump_json(record: dict) -> str:
    return json.dumps(record, indent=2, sort_keys=False) + "\n"
