"""Instance files and reports: the "krein/1" JSON format.

Complex numbers are always two-element ``[re, im]`` arrays; a matrix is a
list of rows of those. A metric is either a dense Hermitian ``"matrix"`` or
a ``"signature": [p, q]`` shorthand for ``diag(+1 x p, -1 x q)``. Emission
is deterministic (sorted keys, fixed indentation, shortest round-trip float
representation), so equal inputs give byte-identical files.

See ``docs/formats.md`` for the full schema and examples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema
import numpy as np

from .core import FundamentalDecomposition, KreinMetric, fundamental_decomposition
from .errors import KreinError, ParseError, SchemaError
from .family import VectorFamily, split_indices
from .numerics import DEFAULT_TOLERANCES, Tolerances
from .riesz import OperatorPair

FORMAT_VERSION = "krein/1"

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
_VECTOR = {"type": "array", "items": _COMPLEX, "minItems": 1}
_MATRIX = {"type": "array", "items": _VECTOR, "minItems": 1}
# Operator blocks may be 0x0 when one definite part is trivial.
_OP_MATRIX = {"type": "array", "items": _VECTOR}

INSTANCE_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "metric": {
            "type": "object",
            "properties": {
                "signature": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 0},
                    "minItems": 2,
                    "maxItems": 2,
                },
                "matrix": _MATRIX,
            },
            "minProperties": 1,
            "maxProperties": 1,
            "additionalProperties": False,
        },
        "family": {"type": "array", "items": _VECTOR},
        "operators": {
            "type": "object",
            "properties": {"u_plus": _OP_MATRIX, "u_minus": _OP_MATRIX},
            "required": ["u_plus", "u_minus"],
            "additionalProperties": False,
        },
    },
    "required": ["version", "metric", "family"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class LoadedInstance:
    metric: KreinMetric
    fd: FundamentalDecomposition
    family: VectorFamily
    operators: OperatorPair | None


def decode_complex_vector(data) -> np.ndarray:
    return np.array([complex(re, im) for re, im in data], dtype=np.complex128)


def decode_complex_matrix(data) -> np.ndarray:
    if not data:
        return np.zeros((0, 0), dtype=np.complex128)
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=np.complex128)


def encode_complex_vector(v: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in v]


def encode_complex_matrix(m: np.ndarray) -> list:
    return [encode_complex_vector(row) for row in m]


def parse_instance(data: dict, tol: Tolerances = DEFAULT_TOLERANCES) -> LoadedInstance:
    """Validate a decoded instance document and build the domain objects."""
    try:
        jsonschema.validate(instance=data, schema=INSTANCE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"at {exc.json_path}: {exc.message}") from exc

    if "signature" in data["metric"]:
        p, q = data["metric"]["signature"]
        if p + q < 1:
            raise SchemaError("at $.metric.signature: p + q must be at least 1")
        g = np.diag(np.concatenate([np.ones(p), -np.ones(q)]).astype(np.complex128))
    else:
        g = decode_complex_matrix(data["metric"]["matrix"])
        if g.shape[0] != g.shape[1]:
            raise SchemaError(f"at $.metric.matrix: expected a square matrix, got {g.shape}")
    try:
        metric = KreinMetric(g, tol)
    except (KreinError, ValueError) as exc:
        raise SchemaError(f"at $.metric: {exc}") from exc
    fd = fundamental_decomposition(metric)

    vectors = []
    for k, row in enumerate(data["family"]):
        v = decode_complex_vector(row)
        if v.shape != (metric.dim,):
            raise SchemaError(
                f"at $.family[{k}]: vector has length {v.shape[0]}, expected {metric.dim}"
            )
        vectors.append(v)
    family = split_indices(vectors, fd) if vectors else split_indices(
        np.zeros((metric.dim, 0), dtype=np.complex128), fd
    )

    operators = None
    if "operators" in data:
        u_plus = decode_complex_matrix(data["operators"]["u_plus"])
        u_minus = decode_complex_matrix(data["operators"]["u_minus"])
        if u_plus.shape != (fd.p, fd.p) or u_minus.shape != (fd.q, fd.q):
            raise SchemaError(
                f"at $.operators: shapes {u_plus.shape}/{u_minus.shape} do not match "
                f"signature ({fd.p}, {fd.q})"
            )
        try:
            operators = OperatorPair(u_plus, u_minus, tol)
        except (KreinError, ValueError) as exc:
            raise SchemaError(f"at $.operators: {exc}") from exc
    return LoadedInstance(metric, fd, family, operators)


def load_instance(path: str, tol: Tolerances = DEFAULT_TOLERANCES) -> LoadedInstance:
    """Read, validate and build an instance from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            text = fh.read()
        except UnicodeDecodeError as exc:
            raise ParseError(f"{path}: not UTF-8 text ({exc.reason})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemaError("at $: instance document must be a JSON object")
    return parse_instance(data, tol)


def instance_document(
    metric: np.ndarray | tuple[int, int],
    family: np.ndarray,
    operators: tuple[np.ndarray, np.ndarray] | None = None,
) -> dict:
    """Assemble an instance document from arrays (columns are family members)."""
    if isinstance(metric, tuple):
        doc_metric = {"signature": [int(metric[0]), int(metric[1])]}
    else:
        doc_metric = {"matrix": encode_complex_matrix(metric)}
    doc = {
        "version": FORMAT_VERSION,
        "metric": doc_metric,
        "family": [encode_complex_vector(family[:, k]) for k in range(family.shape[1])],
    }
    if operators is not None:
        doc["operators"] = {
            "u_plus": encode_complex_matrix(operators[0]),
            "u_minus": encode_complex_matrix(operators[1]),
        }
    return doc


def dumps(document: dict) -> str:
    """Deterministic JSON emission (round-trips floats exactly)."""
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"
