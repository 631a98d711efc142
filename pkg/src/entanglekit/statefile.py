"""JSON state files and report serialization.

File formats (complex numbers are [re, im] pairs throughout):

    {"type": "classical",  "space": ["a", "b"], "probs": {"a": 0.3, "b": 0.7}}
    {"type": "classical2", "spaceX": [...], "spaceY": [...],
     "probs": [["a", "c", 0.5], ["b", "d", 0.5]]}
    {"type": "pure",      "vec": [[re, im], ...]}
    {"type": "density",   "dim": 2, "mat": [[[re, im], ...], ...]}
    {"type": "bipartite", "dims": [2, 2], "vec": [[re, im], ...]}
    {"type": "separable", "dims": [2, 2],
     "terms": [{"p": 0.5, "x": [[re, im], ...], "y": [[re, im], ...]}, ...]}

Structural problems raise SchemaError with a JSONPath-style location;
values that parse but violate a state invariant (bad normalization,
negative probability, non-positive matrix) surface as ValueError from the
domain constructors.  Serialization writes floats with 17 significant
digits, so serialize -> parse round-trips are exact.
"""

from __future__ import annotations

import json
import math
from typing import Any, Union

import numpy as np

from .bipartite import BipartiteDims, BipartiteVector, SchmidtDecomposition
from .classical import ClassicalSeparableCert, ClassicalState, CompositeClassicalState, PhaseSpace
from .errors import SchemaError
from .linalg import Tolerance
from .quantum import DensityOperator, PureState
from .separability import (
    Classification,
    EntangledCertificate,
    ProductCertificate,
    RangeReport,
    SeparableCertificate,
    SeparableDecomposition,
)

State = Union[
    ClassicalState,
    CompositeClassicalState,
    PureState,
    DensityOperator,
    BipartiteVector,
    SeparableDecomposition,
]

STATE_TYPES = ("classical", "classical2", "pure", "density", "bipartite", "separable")


# ---------------------------------------------------------------------------
# parsing


def _require(obj: dict, key: str, loc: str) -> Any:
    if key not in obj:
        raise SchemaError(f"missing required field {key!r}", loc)
    return obj[key]


def _as_dict(value, loc: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"expected an object, got {type(value).__name__}", loc)
    return value


def _as_list(value, loc: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"expected an array, got {type(value).__name__}", loc)
    return value


def _as_str(value, loc: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"expected a string, got {type(value).__name__}", loc)
    return value


def _as_number(value, loc: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"expected a number, got {type(value).__name__}", loc)
    x = float(value)
    if not math.isfinite(x):
        raise SchemaError(f"number must be finite, got {value!r}", loc)
    return x


def _as_int(value, loc: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {type(value).__name__}", loc)
    return value


def _as_complex(value, loc: str) -> complex:
    pair = _as_list(value, loc)
    if len(pair) != 2:
        raise SchemaError(f"complex entry must be a [re, im] pair, got length {len(pair)}", loc)
    return complex(_as_number(pair[0], f"{loc}[0]"), _as_number(pair[1], f"{loc}[1]"))


def _as_cvec(value, loc: str) -> np.ndarray:
    entries = _as_list(value, loc)
    if not entries:
        raise SchemaError("vector must be non-empty", loc)
    return np.array([_as_complex(e, f"{loc}[{k}]") for k, e in enumerate(entries)])


def _as_cmat(value, loc: str) -> np.ndarray:
    rows = _as_list(value, loc)
    if not rows:
        raise SchemaError("matrix must be non-empty", loc)
    parsed = [_as_cvec(row, f"{loc}[{k}]") for k, row in enumerate(rows)]
    width = parsed[0].shape[0]
    for k, row in enumerate(parsed):
        if row.shape[0] != width:
            raise SchemaError(f"row has length {row.shape[0]}, expected {width}", f"{loc}[{k}]")
    return np.array(parsed)


def _as_labels(value, loc: str) -> tuple[str, ...]:
    entries = _as_list(value, loc)
    return tuple(_as_str(e, f"{loc}[{k}]") for k, e in enumerate(entries))


def _as_dims(value, loc: str) -> BipartiteDims:
    pair = _as_list(value, loc)
    if len(pair) != 2:
        raise SchemaError(f"dims must be a [d1, d2] pair, got length {len(pair)}", loc)
    return BipartiteDims(_as_int(pair[0], f"{loc}[0]"), _as_int(pair[1], f"{loc}[1]"))


def parse_state(obj, tol: Tolerance = Tolerance(), loc: str = "$") -> State:
    """Build the domain object described by a decoded JSON payload."""
    obj = _as_dict(obj, loc)
    kind = _as_str(_require(obj, "type", loc), f"{loc}.type")

    if kind == "classical":
        space = PhaseSpace(_as_labels(_require(obj, "space", loc), f"{loc}.space"))
        raw = _as_dict(_require(obj, "probs", loc), f"{loc}.probs")
        probs = {
            _as_str(k, f"{loc}.probs"): _as_number(v, f"{loc}.probs.{k}") for k, v in raw.items()
        }
        return ClassicalState(space, probs)

    if kind == "classical2":
        space_x = PhaseSpace(_as_labels(_require(obj, "spaceX", loc), f"{loc}.spaceX"))
        space_y = PhaseSpace(_as_labels(_require(obj, "spaceY", loc), f"{loc}.spaceY"))
        probs: dict[tuple[str, str], float] = {}
        for k, entry in enumerate(_as_list(_require(obj, "probs", loc), f"{loc}.probs")):
            eloc = f"{loc}.probs[{k}]"
            triple = _as_list(entry, eloc)
            if len(triple) != 3:
                raise SchemaError(f"expected [labelX, labelY, p], got length {len(triple)}", eloc)
            key = (_as_str(triple[0], f"{eloc}[0]"), _as_str(triple[1], f"{eloc}[1]"))
            if key in probs:
                raise SchemaError(f"duplicate point {key!r}", eloc)
            probs[key] = _as_number(triple[2], f"{eloc}[2]")
        return CompositeClassicalState(space_x, space_y, probs)

    if kind == "pure":
        return PureState(_as_cvec(_require(obj, "vec", loc), f"{loc}.vec"), tol)

    if kind == "density":
        dim = _as_int(_require(obj, "dim", loc), f"{loc}.dim")
        mat = _as_cmat(_require(obj, "mat", loc), f"{loc}.mat")
        if mat.shape != (dim, dim):
            raise SchemaError(f"matrix shape {mat.shape} does not match dim {dim}", f"{loc}.mat")
        return DensityOperator(mat, tol)

    if kind == "bipartite":
        dims = _as_dims(_require(obj, "dims", loc), f"{loc}.dims")
        vec = _as_cvec(_require(obj, "vec", loc), f"{loc}.vec")
        if vec.shape[0] != dims.total:
            raise SchemaError(
                f"vector length {vec.shape[0]} does not match dims {dims.d1}x{dims.d2}",
                f"{loc}.vec",
            )
        return BipartiteVector(vec, dims)

    if kind == "separable":
        dims = _as_dims(_require(obj, "dims", loc), f"{loc}.dims")
        terms = []
        for k, entry in enumerate(_as_list(_require(obj, "terms", loc), f"{loc}.terms")):
            eloc = f"{loc}.terms[{k}]"
            entry = _as_dict(entry, eloc)
            p = _as_number(_require(entry, "p", eloc), f"{eloc}.p")
            x = PureState(_as_cvec(_require(entry, "x", eloc), f"{eloc}.x"), tol)
            y = PureState(_as_cvec(_require(entry, "y", eloc), f"{eloc}.y"), tol)
            terms.append((p, x, y))
        return SeparableDecomposition(dims, tuple(terms))

    raise SchemaError(f"unknown state type {kind!r}; expected one of {STATE_TYPES}", f"{loc}.type")


def loads_state(text: str, tol: Tolerance = Tolerance()) -> State:
    """Parse a state file from its JSON text."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_state(obj, tol)


# ---------------------------------------------------------------------------
# serialization


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def cvec_to_json(v: np.ndarray) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(v).ravel()]


def cmat_to_json(m: np.ndarray) -> list[list[list[float]]]:
    return [cvec_to_json(row) for row in np.asarray(m)]


def state_to_json(state: State) -> dict:
    """Wire representation of any of the six state types."""
    if isinstance(state, ClassicalState):
        return {
            "type": "classical",
            "space": list(state.space.labels),
            "probs": {label: p for label, p in state.probs.items()},
        }
    if isinstance(state, CompositeClassicalState):
        return {
            "type": "classical2",
            "spaceX": list(state.space_x.labels),
            "spaceY": list(state.space_y.labels),
            "probs": [[x, y, p] for (x, y), p in state.probs.items()],
        }
    if isinstance(state, PureState):
        return {"type": "pure", "vec": cvec_to_json(state.vec)}
    if isinstance(state, DensityOperator):
        return {"type": "density", "dim": state.dim, "mat": cmat_to_json(state.mat)}
    if isinstance(state, BipartiteVector):
        return {
            "type": "bipartite",
            "dims": [state.dims.d1, state.dims.d2],
            "vec": cvec_to_json(state.vec),
        }
    if isinstance(state, SeparableDecomposition):
        return {
            "type": "separable",
            "dims": [state.dims.d1, state.dims.d2],
            "terms": [
                {"p": p, "x": cvec_to_json(x.vec), "y": cvec_to_json(y.vec)}
                for p, x, y in state.terms
            ],
        }
    raise TypeError(f"cannot serialize {type(state).__name__}")


def schmidt_to_json(dec: SchmidtDecomposition) -> dict:
    return {
        "dims": [dec.dims.d1, dec.dims.d2],
        "coeffs": [float(c) for c in dec.coeffs],
        "rank": dec.rank,
        "left": [cvec_to_json(v) for v in dec.left],
        "right": [cvec_to_json(v) for v in dec.right],
    }


def classical_cert_to_json(cert: ClassicalSeparableCert) -> dict:
    return {
        "kind": "classical-decomposition",
        "terms": [
            {"p": p, "x": fx.support[0], "y": gy.support[0]} for p, fx, gy in cert.terms
        ],
    }


def classification_to_json(c: Classification) -> dict:
    """Wire form of a classification: verdict plus a re-checkable certificate."""
    cert = c.certificate
    if isinstance(cert, ProductCertificate):
        payload = {
            "kind": "product-factors",
            "x": cvec_to_json(cert.x.vec),
            "y": cvec_to_json(cert.y.vec),
            "schmidt": schmidt_to_json(cert.schmidt),
        }
    elif isinstance(cert, EntangledCertificate):
        payload = {"kind": "schmidt", "schmidt": schmidt_to_json(cert.schmidt)}
    elif isinstance(cert, SeparableCertificate):
        payload = {
            "kind": "decomposition",
            "decomposition": state_to_json(cert.decomposition),
            "range_criterion_passed": cert.range_criterion_passed,
        }
    elif isinstance(cert, RangeReport):
        payload = {
            "kind": "range-report",
            "range_rank": len(cert.basis),
            "basis": [cvec_to_json(v) for v in cert.basis],
            "schmidt_ranks": list(cert.schmidt_ranks),
            "all_elementary": cert.all_elementary,
        }
    else:
        raise TypeError(f"cannot serialize certificate {type(cert).__name__}")
    return {"verdict": c.verdict.value, "certificate": payload}


# ---------------------------------------------------------------------------
# canonical JSON text


def format_float(x: float) -> str:
    """17-significant-digit decimal form; parses back to the same double."""
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    if x == 0.0:
        x = 0.0  # collapse negative zero
    s = format(x, ".17g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def dumps_canonical(obj, pretty: bool = False) -> str:
    """Serialize to JSON with deterministic float formatting.

    Key order is preserved as given (all producers in this package emit
    keys in a fixed order), so equal payloads serialize to equal bytes.
    """
    pieces: list[str] = []
    _emit(obj, pieces, 0, pretty)
    return "".join(pieces)


def _emit(obj, out: list[str], depth: int, pretty: bool) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        _emit_items(
            [(json.dumps(str(k)) + (": " if pretty else ":"), v) for k, v in obj.items()],
            out,
            "{}",
            depth,
            pretty,
        )
    elif isinstance(obj, (list, tuple)):
        _emit_items([("", v) for v in obj], out, "[]", depth, pretty)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def _emit_items(items, out: list[str], brackets: str, depth: int, pretty: bool) -> None:
    if not items:
        out.append(brackets)
        return
    open_b, close_b = brackets
    out.append(open_b)
    pad = "  " * (depth + 1) if pretty else ""
    for k, (prefix, value) in enumerate(items):
        if k:
            out.append(",")
        if pretty:
            out.append("\n" + pad)
        out.append(prefix)
        _emit(value, out, depth + 1, pretty)
    if pretty:
        out.append("\n" + "  " * depth)
    out.append(close_b)
