"""Loading the checked-in polynomial data with manifest and digest checks."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .errors import InvalidInputError, ParseError
from .numeric import parse_rational
from .polynomial import Poly, parse_poly_file
from .resultant import BivariatePolynomial, parse_bipoly_file


def default_data_dir() -> Path:
    return Path(str(resources.files("certipoly") / "data"))


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def load_manifest(data_dir=None) -> dict:
    path = Path(data_dir or default_data_dir()) / "manifest.json"
    if not path.exists():
        return {}
    return json.loads(path.read_text())


def load_constants(data_dir=None) -> dict:
    path = Path(data_dir or default_data_dir()) / "constants.json"
    return json.loads(path.read_text())


def _check_manifest(name: str, obj, entry: dict):
    if entry is None:
        return
    if isinstance(obj, BivariatePolynomial):
        checks = [("deg_t", obj.deg_t), ("deg_k", obj.deg_k)]
        lead = obj.coefficient(obj.deg_t, obj.leading_t_coefficient().degree)
    elif isinstance(obj, Poly):
        checks = [("degree", obj.degree)]
        lead = obj.lc
    else:
        checks = [("digits", len(str(abs(obj))))]
        lead = None
    for key, got in checks:
        if key in entry and entry[key] != got:
            raise InvalidInputError(f"{name}: {key} is {got}, manifest says {entry[key]}")
    if lead is not None and "leading" in entry and parse_rational(entry["leading"]) != lead:
        raise InvalidInputError(f"{name}: leading coefficient {lead} does not match manifest")


def load_polynomial(path, manifest=None):
    """Read a ``.poly``/``.bipoly``/integer file; return (object, digest).

    The manifest (by default the one next to the file) pins degree and
    leading coefficient, catching truncated or mangled data.
    """
    path = Path(path)
    if not path.exists():
        raise InvalidInputError(f"no such data file: {path}")
    text = path.read_text()
    if path.suffix == ".bipoly":
        obj = parse_bipoly_file(text)
    elif path.suffix == ".poly":
        obj = parse_poly_file(text)
    else:
        body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if len(body) != 1:
            raise ParseError("integer file must hold exactly one value", 1)
        try:
            obj = int(body[0])
        except ValueError as exc:
            raise ParseError(f"not an integer: {body[0][:20]!r}", 1) from exc
    if manifest is None:
        manifest = load_manifest(path.parent)
    _check_manifest(path.name, obj, manifest.get(path.name))
    return obj, _digest(text)


class DataSet:
    """All inputs of the certification suites, loaded lazily from one directory."""

    FILES = {
        "p": "p.poly",
        "p2": "p2.poly",
        "p3": "p3.bipoly",
        "p4": "p4.poly",
        "p5": "p5.poly",
        "critical": "critical.poly",
        "m": "m.txt",
    }

    def __init__(self, data_dir=None):
        self.data_dir = Path(data_dir or default_data_dir())
        self.manifest = load_manifest(self.data_dir)
        self._cache = {}
        self.digests = {}
        self.constants = load_constants(self.data_dir)

    def __getitem__(self, name: str):
        if name not in self._cache:
            obj, digest = load_polynomial(self.data_dir / self.FILES[name], self.manifest)
            self._cache[name] = obj
            self.digests[name] = digest
        return self._cache[name]

    def const(self, *keys):
        node = self.constants
        for k in keys:
            node = node[k]
        return node

    def rational(self, *keys):
        return parse_rational(self.const(*keys))
