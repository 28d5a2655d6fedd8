"""Bit-exact JSON documents for operators and states.

Rationals are written as ``"p/q"`` strings, never floats.  Monomials are
bitmasks (generator ``a`` is bit ``a - 1``).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Union

from .grassmann import AlgebraSignature, State
from .operators import Operator
from .scalars import JetScalar, QQi, format_fraction, parse_fraction

__all__ = ["FORMAT_VERSION", "SerializationError", "to_document", "from_document",
           "export_json", "import_json", "dumps", "loads"]

FORMAT_VERSION = 1


class SerializationError(ValueError):
    pass


def _scalar_fields(c: JetScalar) -> dict:
    if not c.is_numeric:
        raise SerializationError(f"cannot serialize symbolic coefficient {c}")
    body = c.body
    eps = [
        {"id": ident, "re": format_fraction(v.re), "im": format_fraction(v.im)}
        for ident, v in sorted(c.eps_terms.items())
    ]
    return {"re": format_fraction(body.re), "im": format_fraction(body.im), "eps": eps}


def _read_scalar(entry: dict) -> JetScalar:
    try:
        terms = {(None, ()): QQi(parse_fraction(entry["re"]), parse_fraction(entry["im"]))}
        for e in entry.get("eps", []):
            ident = e["id"]
            if not isinstance(ident, str) or (ident, ()) in terms:
                raise SerializationError(f"bad or repeated epsilon id {ident!r}")
            terms[(ident, ())] = QQi(parse_fraction(e["re"]), parse_fraction(e["im"]))
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, SerializationError):
            raise
        raise SerializationError(f"malformed scalar entry {entry!r}: {exc}") from exc
    return JetScalar.from_terms(terms)


def to_document(obj: Union[Operator, State]) -> dict:
    if isinstance(obj, Operator):
        kind = "operator"
        items = sorted(obj.entries().items())
        entries = [{"out": out, "in": inp, **_scalar_fields(c)} for (out, inp), c in items]
    elif isinstance(obj, State):
        kind = "state"
        entries = [{"out": m, **_scalar_fields(c)} for m, c in sorted(obj.items())]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {
        "version": FORMAT_VERSION,
        "kind": kind,
        "n_total": obj.sig.n_total,
        "n_D": obj.sig.n_D,
        "entries": entries,
    }


def from_document(doc: dict) -> Union[Operator, State]:
    if not isinstance(doc, dict):
        raise SerializationError("document must be a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        raise SerializationError(f"unsupported version {doc.get('version')!r}")
    kind = doc.get("kind")
    if kind not in ("operator", "state"):
        raise SerializationError(f"unknown kind {kind!r}")
    n_total, n_D = doc.get("n_total"), doc.get("n_D", 0)
    if not isinstance(n_total, int) or not isinstance(n_D, int):
        raise SerializationError("n_total and n_D must be integers")
    sig = AlgebraSignature(n_total, n_D)  # SignatureError beyond the cap
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise SerializationError("entries must be a list")
    data = {}
    for e in entries:
        if not isinstance(e, dict) or not isinstance(e.get("out"), int):
            raise SerializationError(f"malformed entry {e!r}")
        if kind == "operator":
            if not isinstance(e.get("in"), int):
                raise SerializationError(f"operator entry without 'in': {e!r}")
            key = (e["out"], e["in"])
        else:
            key = e["out"]
        if key in data:
            raise SerializationError(f"duplicate entry {key}")
        data[key] = _read_scalar(e)
    if kind == "operator":
        return Operator(sig, data)
    return State(sig, data)


def dumps(obj: Union[Operator, State]) -> str:
    return json.dumps(to_document(obj), indent=1)


def loads(text: str) -> Union[Operator, State]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def export_json(obj: Union[Operator, State], destination: Union[str, Path, IO[str]]) -> None:
    text = dumps(obj)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text + "\n", encoding="utf-8")


def import_json(source: Union[str, Path, IO[str]]) -> Union[Operator, State]:
    if hasattr(source, "read"):
        return loads(source.read())
    return loads(Path(source).read_text(encoding="utf-8"))
