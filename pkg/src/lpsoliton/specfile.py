"""JSON manifold specification files.

Layout (all rationals are strings ``"k"`` or ``"p/q"``; indices are 1-based)::

    {
      "dim": 4,
      "metric": [["1", "0", "0", "0"], ...],
      "brackets": [{"i": 1, "j": 4, "k": 1, "value": "-1"}, ...],
      "phi": [["-1", "0", "0", "0"], ...],     # phi[j][k] = component j of phi(e_k)
      "xi": ["0", "0", "0", "1"],
      "eta": ["0", "0", "0", "-1"]             # optional, defaults to g(., xi)
    }

A bracket entry ``{i, j, k, value}`` sets ``c^k_ij``; the ``(j, i)`` partner is
filled with ``-value`` unless the file lists it explicitly. Extra keys
``name`` and ``notes`` are carried along and ignored.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exact import Q, Tensor, raise_lower
from .fixtures import example_manifold
from .frame import FrameManifold, validate_manifold
from .paracontact import ParacontactStructure

KNOWN_KEYS = {"dim", "metric", "brackets", "phi", "xi", "eta", "name", "notes"}
BUILTIN = "builtin"

EXAMPLE_NOTES = {
    "frame": "e_i = exp(x_i + x_4) d/dx_i (i = 1, 2, 3), e_4 = d/dx_4 on x_4 != 0",
    "brackets": "derived by expanding the coordinate fields: [e_i, e_4] = -e_i, all others 0",
    "structure": "xi = e_4, eta = g(., e_4), phi e_i = -e_i (i = 1, 2, 3), phi e_4 = 0",
}


class SpecError(Exception):
    """Load failure with a location (``field``) and, for validation, a witness."""

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None,
                 invariant: str | None = None, witness: Any = None):
        self.field = field
        self.line = line
        self.invariant = invariant
        self.witness = witness
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


def _rational(value: Any, field: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SpecError(f"expected a rational string, got {value!r}", field=field)
    try:
        return Q(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(str(exc), field=field) from None


def _vector(raw: Any, n: int, field: str) -> list[Fraction]:
    if not isinstance(raw, list) or len(raw) != n:
        raise SpecError(f"expected a list of {n} rationals", field=field)
    return [_rational(v, f"{field}[{i}]") for i, v in enumerate(raw)]


def _square(raw: Any, n: int, field: str) -> list[list[Fraction]]:
    if not isinstance(raw, list) or len(raw) != n:
        raise SpecError(f"expected {n} rows", field=field)
    return [_vector(row, n, f"{field}[{i}]") for i, row in enumerate(raw)]


def parse_spec(doc: Any) -> tuple[FrameManifold, ParacontactStructure]:
    if not isinstance(doc, dict):
        raise SpecError("top level must be a JSON object")
    unknown = sorted(set(doc) - KNOWN_KEYS)
    if unknown:
        raise SpecError(f"unknown keys {unknown}", field=unknown[0])
    for key in ("dim", "metric", "phi", "xi"):
        if key not in doc:
            raise SpecError("missing required field", field=key)
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise SpecError("dim must be an integer >= 2", field="dim")

    metric = _square(doc["metric"], n, "metric")
    vals: dict[tuple[int, int, int], Fraction] = {}
    explicit: set[tuple[int, int, int]] = set()
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise SpecError("expected a list", field="brackets")
    for pos, entry in enumerate(brackets):
        fld = f"brackets[{pos}]"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "k", "value"}:
            raise SpecError("entry needs exactly the keys i, j, k, value", field=fld)
        idx = []
        for key in ("i", "j", "k"):
            v = entry[key]
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
                raise SpecError(f"{key} must be an integer in 1..{n}", field=f"{fld}.{key}")
            idx.append(v - 1)
        i, j, k = idx
        if (k, i, j) in explicit:
            raise SpecError(f"duplicate bracket entry ({i + 1}, {j + 1}, {k + 1})", field=fld)
        explicit.add((k, i, j))
        vals[(k, i, j)] = _rational(entry["value"], f"{fld}.value")
    for (k, i, j), v in list(vals.items()):
        if (k, j, i) not in explicit:
            vals[(k, j, i)] = -v
    c = Tensor.build("ull", n, lambda k, i, j: vals.get((k, i, j), 0))
    M = FrameManifold(n, Tensor.from_nested("ll", metric), c)

    rep = validate_manifold(M)
    if not rep.passed:
        bad = rep.failures()[0]
        raise SpecError(f"{bad.name} violated at {bad.witness.index}"
                        + (f" ({bad.note})" if bad.note else ""),
                        field="brackets" if bad.name in ("brackets_antisymmetric", "jacobi")
                        else "metric",
                        invariant=bad.name, witness=bad.witness.index)

    phi = Tensor.from_nested("ul", _square(doc["phi"], n, "phi"))
    xi = Tensor.vector(_vector(doc["xi"], n, "xi"))
    if doc.get("eta") is None:
        eta = raise_lower(xi, 0, M.g, M.g_inv)
    else:
        eta = Tensor.covector(_vector(doc["eta"], n, "eta"))
    return M, ParacontactStructure(phi, xi, eta)


def load_spec(path: str | Path) -> tuple[FrameManifold, ParacontactStructure]:
    """Read and validate a spec file; ``"builtin"`` names the 4-dimensional example."""
    if str(path) == BUILTIN:
        return example_manifold()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, line=exc.lineno) from None
    return parse_spec(doc)


def dump_spec(M: FrameManifold, P: ParacontactStructure, *, name: str | None = None,
              notes: dict[str, str] | None = None) -> dict[str, Any]:
    n = M.n
    doc: dict[str, Any] = {}
    if name:
        doc["name"] = name
    doc["dim"] = n
    doc["metric"] = [[str(M.g[i, j]) for j in range(n)] for i in range(n)]
    doc["brackets"] = [
        {"i": i + 1, "j": j + 1, "k": k + 1, "value": str(M.c[k, i, j])}
        for i in range(n) for j in range(i + 1, n) for k in range(n) if M.c[k, i, j] != 0
    ]
    doc["phi"] = [[str(P.phi[j, k]) for k in range(n)] for j in range(n)]
    doc["xi"] = [str(x) for x in P.xi.data]
    doc["eta"] = [str(x) for x in P.eta.data]
    if notes:
        doc["notes"] = notes
    return doc


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def emit_example() -> str:
    """Bytes of the builtin example's spec file."""
    M, P = example_manifold()
    return dumps(dump_spec(M, P, name="lp-sasakian-4d-example", notes=EXAMPLE_NOTES))


emit_paper_example = emit_example  # name used by the command-line interface contract
