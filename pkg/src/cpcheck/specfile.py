"""JSON channel-spec, matrix and report files.

A channel spec is one JSON object::

    {"dim": 2, "repr": "kraus" | "choi" | "superop", "data": ...}

Complex numbers are ``[re, im]`` pairs and matrices are row-major nested
arrays. For ``kraus`` the data is a list of ``dim x dim`` matrices; for the
other two it is one ``dim^2 x dim^2`` matrix. An optional ``meta`` object
is carried through untouched.
"""
import json
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .channels import ChoiMatrix, KrausSet, SuperOperator, choi_from_kraus, choi_from_superop, superop_from_choi, superop_from_kraus

REPRS = ("kraus", "choi", "superop")

Channel = Union[KrausSet, ChoiMatrix, SuperOperator]


class SpecError(ValueError):
    """Malformed input file. ``line`` is 1-based when known."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.path = path
        self.line = line
        super().__init__(self.anchored())

    def anchored(self) -> str:
        where = self.path or "<input>"
        if self.line is not None:
            where = f"{where}:{self.line}"
        return f"{where}: {self.message}"


@dataclass
class ChannelSpec:
    dim: int
    repr: str
    channel: Channel
    meta: Dict[str, Any] = field(default_factory=dict)

    def choi(self) -> ChoiMatrix:
        if isinstance(self.channel, ChoiMatrix):
            return self.channel
        if isinstance(self.channel, KrausSet):
            return choi_from_kraus(self.channel)
        return choi_from_superop(self.channel)

    def superop(self) -> SuperOperator:
        if isinstance(self.channel, SuperOperator):
            return self.channel
        if isinstance(self.channel, KrausSet):
            return superop_from_kraus(self.channel)
        return superop_from_choi(self.channel)


def encode_matrix(m) -> List[List[List[float]]]:
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _decode_number(x, where: str) -> complex:
    if isinstance(x, bool):
        raise ValueError(f"{where}: expected [re, im], got a boolean")
    if isinstance(x, (int, float)):
        z = complex(x, 0.0)
    elif isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        z = complex(x[0], x[1])
    else:
        raise ValueError(f"{where}: expected a complex number as [re, im], got {json.dumps(x)[:40]}")
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"{where}: non-finite number")
    return z


def decode_matrix(obj, rows: Optional[int] = None, cols: Optional[int] = None, where: str = "matrix") -> np.ndarray:
    """Parse a nested ``[[[re, im], ...], ...]`` array, checking its shape."""
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ValueError(f"{where}: expected a non-empty list of rows")
    nrows, ncols = len(obj), len(obj[0])
    if rows is not None and nrows != rows:
        raise ValueError(f"{where}: expected {rows} rows, got {nrows}")
    want = ncols if cols is None else cols
    out = np.empty((nrows, want), dtype=np.complex128)
    for i, row in enumerate(obj):
        if len(row) != want:
            raise ValueError(f"{where}: row {i} has {len(row)} entries, expected {want}")
        for j, x in enumerate(row):
            out[i, j] = _decode_number(x, f"{where}[{i}][{j}]")
    return out


def _line_of(text: str, key: str) -> Optional[int]:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _load_json(text: str, path: Optional[str]):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg} (column {exc.colno})", path, exc.lineno) from None


def parse_spec(text: str, path: Optional[str] = None) -> ChannelSpec:
    doc = _load_json(text, path)
    if not isinstance(doc, dict):
        raise SpecError("top level must be a JSON object", path, 1)
    for key in ("dim", "repr", "data"):
        if key not in doc:
            raise SpecError(f"missing required key {key!r}", path, 1)
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SpecError(f"'dim' must be a positive integer, got {dim!r}", path, _line_of(text, "dim"))
    kind = doc["repr"]
    if kind not in REPRS:
        raise SpecError(f"'repr' must be one of {', '.join(REPRS)}, got {kind!r}", path, _line_of(text, "repr"))
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise SpecError("'meta' must be an object", path, _line_of(text, "meta"))
    data = doc["data"]
    try:
        if kind == "kraus":
            if not isinstance(data, list) or not data:
                raise ValueError("kraus data must be a non-empty list of matrices")
            mats = [decode_matrix(m, dim, dim, f"data[{i}]") for i, m in enumerate(data)]
            channel: Channel = KrausSet(dim, tuple(mats))
        else:
            m = decode_matrix(data, dim * dim, dim * dim, "data")
            channel = ChoiMatrix(dim, m) if kind == "choi" else SuperOperator(dim, m)
    except ValueError as exc:
        raise SpecError(str(exc), path, _line_of(text, "data")) from None
    return ChannelSpec(dim, kind, channel, meta)


def parse_matrix_file(text: str, path: Optional[str] = None) -> np.ndarray:
    """A bare nested array, or an object with a ``matrix`` key (and optional ``dim``)."""
    doc = _load_json(text, path)
    obj = doc.get("matrix") if isinstance(doc, dict) else doc
    if obj is None:
        raise SpecError("expected a matrix or an object with a 'matrix' key", path, 1)
    try:
        m = decode_matrix(obj)
    except ValueError as exc:
        raise SpecError(str(exc), path, _line_of(text, "matrix") if isinstance(doc, dict) else 1) from None
    if isinstance(doc, dict) and "dim" in doc and m.shape != (doc["dim"], doc["dim"]):
        raise SpecError(f"matrix shape {m.shape} does not match dim {doc['dim']}", path, _line_of(text, "dim"))
    return m


def spec_to_dict(spec: ChannelSpec) -> dict:
    if isinstance(spec.channel, KrausSet):
        data: Any = [encode_matrix(m) for m in spec.channel.matrices]
    elif isinstance(spec.channel, ChoiMatrix):
        data = encode_matrix(spec.channel.matrix)
    else:
        data = encode_matrix(spec.channel.action)
    doc = {"dim": spec.dim, "repr": spec.repr, "data": data}
    if spec.meta:
        doc["meta"] = spec.meta
    return doc


# numeric arrays only, so string values are never rewritten
_FLAT = re.compile(r"\[[-+.\deE,\s]*\]")
_ROW = re.compile(r"\[(?:\s*\[[-+.\deE, ]*\],?)+\s*\]")


def dumps(doc) -> str:
    """Indented JSON with complex pairs and matrix rows kept on one line."""
    text = json.dumps(doc, indent=1)
    squash = lambda m: re.sub(r"\s+", " ", m.group(0)).replace("[ ", "[").replace(" ]", "]")
    return _ROW.sub(squash, _FLAT.sub(squash, text))


def dump_spec(spec: ChannelSpec) -> str:
    return dumps(spec_to_dict(spec))


def spec_for(channel: Channel, meta: Optional[dict] = None) -> ChannelSpec:
    if isinstance(channel, KrausSet):
        kind = "kraus"
    elif isinstance(channel, ChoiMatrix):
        kind = "choi"
    else:
        kind = "superop"
    return ChannelSpec(channel.dim, kind, channel, dict(meta or {}))
