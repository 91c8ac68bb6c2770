"""JSON input and report documents for the command-line tool."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any

import jsonschema
import numpy as np

from .geometry import R3Rep, WEData
from .series import CoefficientSeries

SCHEMA_NAME = "input.schema.json"


class InputError(ValueError):
    """Malformed, schema-invalid or semantically unusable input."""


def load_schema() -> dict:
    text = resources.files("minstab").joinpath("schema", SCHEMA_NAME).read_text("utf-8")
    return json.loads(text)


def _complex_list(pairs) -> list[complex]:
    return [complex(re, im) for re, im in pairs]


def pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class InputDocument:
    """A validated input file.  ``data`` is a :class:`WEData` or an :class:`R3Rep`."""

    kind: str
    data: Any
    n_max: int | None = None
    tol: float | None = None

    @classmethod
    def from_json(cls, raw: dict, n_max: int | None = None) -> "InputDocument":
        """Validate against the shipped schema and build the data object.

        ``n_max`` overrides the document's own ``n_max``; the environment
        default applies when neither is given.  Capacity overflow propagates as
        :class:`~minstab.errors.CapacityError`.
        """
        try:
            jsonschema.validate(raw, load_schema())
        except jsonschema.ValidationError as exc:
            raise InputError(f"schema violation: {exc.message}") from exc
        cap = n_max if n_max is not None else raw.get("n_max")
        tol = raw.get("tol")
        if raw["kind"] == "wedata":
            if len(raw["alphas"]) != raw["n"]:
                raise InputError(f"n = {raw['n']} but {len(raw['alphas'])} coordinate series given")
            base = raw.get("base")
            if base is not None and len(base) != raw["n"]:
                raise InputError("base must have n entries")
            rows = [_complex_list(a) for a in raw["alphas"]]
            try:
                data = WEData(tuple(CoefficientSeries(r, cap) for r in rows), base)
            except ValueError as exc:
                if type(exc) is not ValueError:
                    raise
                raise InputError(str(exc)) from exc
        else:
            data = R3Rep(CoefficientSeries(_complex_list(raw["f"]), cap),
                         CoefficientSeries(_complex_list(raw["g"]), cap))
        return cls(raw["kind"], data, cap, tol)

    @classmethod
    def read(cls, path: str, n_max: int | None = None) -> "InputDocument":
        """Read ``path``.  ``OSError`` is left to the caller; bad JSON is an :class:`InputError`."""
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        return cls.from_json(raw, n_max)


def wedata_document(d: WEData, **extra) -> dict:
    """Serialise ``d`` as a ``wedata`` input document."""
    doc = {
        "kind": "wedata",
        "n": d.n,
        "alphas": [[pair(c) for c in a.coeffs[:max(a.degree, 0) + 1]] for a in d.alphas],
        "base": [float(x) for x in d.base_point],
    }
    doc.update(extra)
    return doc


def r3_document(rep: R3Rep, **extra) -> dict:
    doc = {
        "kind": "r3",
        "f": [pair(c) for c in rep.f.coeffs[:max(rep.f.degree, 0) + 1]],
        "g": [pair(c) for c in rep.g.coeffs[:max(rep.g.degree, 0) + 1]],
    }
    doc.update(extra)
    return doc


VERDICTS = ("holomorphic", "unstable", "undetermined")


@dataclass
class ReportDocument:
    """What every subcommand prints.

    Only JSON-native values are stored (complex numbers as ``[re, im]``), so
    ``ReportDocument.from_json(r.to_json()) == r`` holds exactly.
    """

    command: str
    verdict: str
    tool_version: str
    parameters: dict = field(default_factory=dict)
    gram_summary: dict | None = None
    certificate: dict | None = None
    complex_structure: dict | None = None
    radius: dict | None = None
    verification: dict | None = None
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_dict(self) -> dict:
        return _plain(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, raw: dict) -> "ReportDocument":
        return cls(**raw)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))


def _plain(obj):
    # numpy scalars and arrays to JSON-native values
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return pair(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj
