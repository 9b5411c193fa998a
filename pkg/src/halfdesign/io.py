"""Text formats for point sets, codes and selections; JSON reports.

Point set file::

    # halfdesign pointset
    dim 8
    norm2 2
    field rat
    count 240
    chart 0:2 2:1 ...        (optional)
    <count rows of space-separated coordinate tokens>

Tokens are ``p`` / ``p/q`` for ``field rat`` and ``a+b~3`` / ``a-b~3`` for
``field quadrat3``.  Selection files list chosen point indices after a
header naming the target (and optionally a point-set path).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .exact import ExactVector, QuadraticScalar, format_fraction, format_quadratic, parse_scalar
from .points import Chart, HalfSelection, PointSet

POINTSET_MAGIC = "# halfdesign pointset"
SELECTION_MAGIC = "# halfdesign selection"
CODE_MAGIC = "# halfdesign code"


class FormatError(ValueError):
    pass


def _token(x: QuadraticScalar, quadratic: bool) -> str:
    return format_quadratic(x) if quadratic else format_fraction(x.a)


def format_pointset(X: PointSet) -> str:
    quad = X.is_quadratic
    lines = [
        POINTSET_MAGIC,
        f"dim {X.dim}",
        f"norm2 {format_fraction(X.norm2)}",
        f"field {'quadrat3' if quad else 'rat'}",
        f"count {len(X)}",
    ]
    if X.chart is not None:
        lines.append("chart " + " ".join(f"{a}:{format_fraction(w)}" for a, w in zip(X.chart.axes, X.chart.weights)))
    d = X.denom
    if not quad:
        cache: dict[int, str] = {}
        for row in X.numer:
            lines.append(" ".join(cache.setdefault(int(v), format_fraction(Fraction(int(v), d))) for v in row))
    else:
        for i in range(len(X)):
            lines.append(" ".join(_token(c, True) for c in X.vector(i).coords))
    return "\n".join(lines) + "\n"


def _header(lines: list[str], magic: str) -> tuple[dict[str, str], int]:
    if not lines or lines[0].strip() != magic:
        raise FormatError(f"expected header {magic!r}")
    head: dict[str, str] = {}
    k = 1
    while k < len(lines):
        key, _, value = lines[k].strip().partition(" ")
        if key in ("dim", "norm2", "field", "count", "chart", "target", "base", "length"):
            head[key] = value.strip()
            k += 1
        else:
            break
    return head, k


def parse_pointset(text: str, name: str = "") -> PointSet:
    lines = text.splitlines()
    head, k = _header(lines, POINTSET_MAGIC)
    try:
        dim, count = int(head["dim"]), int(head["count"])
        field = head["field"]
    except KeyError as e:
        raise FormatError(f"missing header field {e}") from None
    if field not in ("rat", "quadrat3"):
        raise FormatError(f"unknown field tag {field!r}")
    body = [ln for ln in lines[k:] if ln.strip()]
    if len(body) != count:
        raise FormatError(f"header says {count} rows, found {len(body)}")
    cache: dict[str, QuadraticScalar] = {}
    vecs = []
    for ln in body:
        toks = ln.split()
        if len(toks) != dim:
            raise FormatError(f"row has {len(toks)} coordinates, expected {dim}")
        if field == "rat" and any(t.endswith("~3") for t in toks):
            raise FormatError("quadratic token in a rational file")
        vecs.append(ExactVector(tuple(cache.setdefault(t, parse_scalar(t)) for t in toks)))
    chart = None
    if "chart" in head:
        axes, weights = [], []
        for item in head["chart"].split():
            a, _, w = item.partition(":")
            axes.append(int(a))
            weights.append(Fraction(w))
        chart = Chart(tuple(axes), tuple(weights))
    X = PointSet.from_vectors(vecs, pair=False, chart=chart, name=name)
    try:
        X.pairs = X.find_pairs()
    except ValueError:
        X.pairs = None
    if "norm2" in head and Fraction(head["norm2"]) != X.norm2:
        raise FormatError("norm2 header disagrees with the coordinates")
    return X


def write_pointset(X: PointSet, path: str | Path) -> None:
    Path(path).write_text(format_pointset(X))


def read_pointset(path: str | Path) -> PointSet:
    return parse_pointset(Path(path).read_text(), name=Path(path).stem)


def format_code(words: np.ndarray) -> str:
    lines = [CODE_MAGIC, f"length {words.shape[1]}", f"count {len(words)}"]
    lines += ["".join(str(int(b)) for b in w) for w in words]
    return "\n".join(lines) + "\n"


@dataclass
class SelectionFile:
    target: str
    indices: np.ndarray
    base: str | None = None


def format_selection(sel: SelectionFile) -> str:
    lines = [SELECTION_MAGIC, f"target {sel.target}"]
    if sel.base:
        lines.append(f"base {sel.base}")
    lines.append(f"count {len(sel.indices)}")
    lines += [str(int(i)) for i in sel.indices]
    return "\n".join(lines) + "\n"


def parse_selection(text: str) -> SelectionFile:
    lines = text.splitlines()
    head, k = _header(lines, SELECTION_MAGIC)
    if "target" not in head:
        raise FormatError("selection file lacks a target")
    idx = np.array([int(ln) for ln in lines[k:] if ln.strip()], dtype=np.int64)
    if "count" in head and int(head["count"]) != len(idx):
        raise FormatError("selection count mismatch")
    return SelectionFile(head["target"], idx, head.get("base"))


def file_kind(path: str | Path) -> str:
    with open(path) as fh:
        first = fh.readline().strip()
    for kind, magic in (("pointset", POINTSET_MAGIC), ("selection", SELECTION_MAGIC), ("code", CODE_MAGIC)):
        if first == magic:
            return kind
    raise FormatError(f"{path}: unrecognised file header")


# reports -------------------------------------------------------------------------------


def jsonable(obj: Any) -> Any:
    """Exact values become strings; numpy containers become lists."""
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, QuadraticScalar):
        return format_fraction(obj.a) if obj.is_rational else format_quadratic(obj)
    if isinstance(obj, ExactVector):
        return [jsonable(c) for c in obj.coords]
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


def dump_report(report: dict, path: str | Path | None = None) -> str:
    text = json.dumps(jsonable(report), indent=2, sort_keys=False)
    if path:
        Path(path).write_text(text + "\n")
    return text


def content_key(*parts: Any) -> str:
    h = hashlib.sha256()
    for p in parts:
        if isinstance(p, np.ndarray):
            h.update(p.tobytes())
            h.update(str(p.shape).encode())
        else:
            h.update(repr(p).encode())
    return h.hexdigest()[:32]


class Checkpoints:
    """JSON results cached under a directory, keyed by content hash."""

    def __init__(self, directory: str | Path | None):
        self.dir = Path(directory) if directory else None
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)

    def load(self, key: str) -> dict | None:
        if not self.dir:
            return None
        f = self.dir / f"{key}.json"
        return json.loads(f.read_text()) if f.exists() else None

    def save(self, key: str, value: dict) -> None:
        if self.dir:
            (self.dir / f"{key}.json").write_text(json.dumps(jsonable(value)))
