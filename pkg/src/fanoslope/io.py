"""JSON model files.

A model file is a UTF-8 JSON object::

    {"name": "P^2", "dim": 2, "basis": ["H"],
     "tensor": [{"indices": ["H", "H"], "value": "1"}],
     "anticanonical": {"H": "3"},
     "rays": [{"name": "line", "pairing": {"H": "1"}, "length": 3}],
     "effective_generators": [{"H": "1"}],
     "named_divisors": {"H": {"H": "1"}},
     "restrictions": {}}

Rationals are strings ``"p"`` or ``"p/q"`` (plain integers are accepted).
Classes are maps from basis label to coefficient; omitted labels are zero.
Unknown fields anywhere are rejected.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping, Sequence

from .catalog import catalog_keys, get_model
from .errors import ModelDataError, ModelFormatError, RationalFormatError
from .exactmath import format_rational, parse_rational
from .lattice import CurveClass, DivisorClass, IntersectionTensor
from .model import ConormalFlags, Ray, RestrictionModel, VarietyModel, require_valid

CATALOG_ENV = "FANOSLOPE_CATALOG_DIR"

_MODEL_FIELDS = {
    "name", "dim", "basis", "tensor", "anticanonical", "rays",
    "effective_generators", "named_divisors", "restrictions",
}
_MODEL_REQUIRED = {"name", "dim", "basis", "tensor", "anticanonical"}
_RESTRICTION_FIELDS = {
    "codim", "basis", "tensor", "restricted_anticanonical", "self_class",
    "seshadri_override", "conormal_flags", "rays",
}
_RESTRICTION_REQUIRED = {"codim", "basis", "tensor", "restricted_anticanonical", "self_class"}
_FLAG_FIELDS = {"conormal_nef", "conormal_ample", "self_square_effective_nonzero"}
_RAY_FIELDS = {"name", "pairing", "length"}
_ENTRY_FIELDS = {"indices", "value"}


def _check_fields(obj: Any, allowed: set, required: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ModelFormatError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
    missing = required - set(obj)
    if missing:
        raise ModelFormatError(f"{where}: missing field(s) {', '.join(sorted(missing))}")


def _q(value: Any, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ModelFormatError(f"{where}: rationals must be strings like '3/2' or integers")
    try:
        return parse_rational(str(value))
    except RationalFormatError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


def _labels(obj: Any, where: str) -> tuple[str, ...]:
    if not isinstance(obj, list) or not obj or not all(isinstance(b, str) for b in obj):
        raise ModelFormatError(f"{where}: expected a nonempty list of labels")
    if len(set(obj)) != len(obj):
        raise ModelFormatError(f"{where}: labels must be distinct")
    if any(not b or any(ch.isspace() for ch in b) for b in obj):
        raise ModelFormatError(f"{where}: labels must be nonempty and free of whitespace")
    return tuple(obj)


def _class(obj: Any, basis: Sequence[str], where: str) -> list:
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{where}: expected a map from basis label to rational")
    extra = set(obj) - set(basis)
    if extra:
        raise ModelFormatError(f"{where}: unknown basis label(s) {', '.join(sorted(extra))}")
    return [_q(obj.get(b, 0), f"{where}.{b}") for b in basis]


def _tensor(obj: Any, basis: Sequence[str], dim: int, where: str) -> IntersectionTensor:
    if not isinstance(obj, list):
        raise ModelFormatError(f"{where}: expected a list of entries")
    index = {b: i for i, b in enumerate(basis)}
    entries = {}
    for k, item in enumerate(obj):
        loc = f"{where}[{k}]"
        _check_fields(item, _ENTRY_FIELDS, _ENTRY_FIELDS, loc)
        idx = item["indices"]
        if isinstance(idx, str):
            idx = idx.split()
        if not isinstance(idx, list):
            raise ModelFormatError(f"{loc}.indices: expected a space-joined string or a list")
        key = []
        for i in idx:
            if isinstance(i, str) and i in index:
                key.append(index[i])
            elif isinstance(i, int) and not isinstance(i, bool) and 0 <= i < len(basis):
                key.append(i)
            else:
                raise ModelFormatError(f"{loc}.indices: bad index {i!r}")
        sk = tuple(sorted(key))
        value = _q(item["value"], f"{loc}.value")
        if sk in entries and entries[sk] != value:
            raise ModelFormatError(f"{loc}: conflicting value for {sk}")
        entries[sk] = value
    try:
        return IntersectionTensor(dim, len(basis), entries)
    except ModelDataError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


def _rays(obj: Any, basis: Sequence[str], where: str) -> tuple[Ray, ...]:
    if not isinstance(obj, list):
        raise ModelFormatError(f"{where}: expected a list")
    out = []
    for k, item in enumerate(obj):
        loc = f"{where}[{k}]"
        _check_fields(item, _RAY_FIELDS, {"name", "pairing"}, loc)
        length = item.get("length")
        if length is not None and (isinstance(length, bool) or not isinstance(length, int)):
            raise ModelFormatError(f"{loc}.length: expected an integer")
        out.append(Ray(str(item["name"]), CurveClass(_class(item["pairing"], basis, f"{loc}.pairing")), length))
    return tuple(out)


def _flags(obj: Any, where: str) -> ConormalFlags:
    _check_fields(obj, _FLAG_FIELDS, set(), where)
    for k, v in obj.items():
        if v is not None and not isinstance(v, bool):
            raise ModelFormatError(f"{where}.{k}: expected true, false or null")
    return ConormalFlags(**obj)


def _restriction(obj: Any, ambient_dim: int, where: str) -> RestrictionModel:
    _check_fields(obj, _RESTRICTION_FIELDS, _RESTRICTION_REQUIRED, where)
    codim = obj["codim"]
    if isinstance(codim, bool) or not isinstance(codim, int):
        raise ModelFormatError(f"{where}.codim: expected an integer")
    basis = _labels(obj["basis"], f"{where}.basis")
    override = obj.get("seshadri_override")
    return RestrictionModel(
        center_codim=codim,
        basis=basis,
        lattice=_tensor(obj["tensor"], basis, ambient_dim - 1, f"{where}.tensor"),
        restricted_anticanonical=DivisorClass(
            _class(obj["restricted_anticanonical"], basis, f"{where}.restricted_anticanonical")
        ),
        self_class=DivisorClass(_class(obj["self_class"], basis, f"{where}.self_class")),
        seshadri_override=None if override is None else _q(override, f"{where}.seshadri_override"),
        conormal_flags=_flags(obj.get("conormal_flags", {}), f"{where}.conormal_flags"),
        rays=_rays(obj.get("rays", []), basis, f"{where}.rays"),
    )


def model_from_dict(obj: Mapping[str, Any]) -> VarietyModel:
    _check_fields(obj, _MODEL_FIELDS, _MODEL_REQUIRED, "model")
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ModelFormatError("model.dim: expected a positive integer")
    basis = _labels(obj["basis"], "model.basis")
    named = obj.get("named_divisors", {})
    if not isinstance(named, dict):
        raise ModelFormatError("model.named_divisors: expected an object")
    restrictions = obj.get("restrictions", {})
    if not isinstance(restrictions, dict):
        raise ModelFormatError("model.restrictions: expected an object")
    eff = obj.get("effective_generators", [])
    if not isinstance(eff, list):
        raise ModelFormatError("model.effective_generators: expected a list")
    model = VarietyModel(
        name=str(obj["name"]),
        dim=dim,
        basis=basis,
        tensor=_tensor(obj["tensor"], basis, dim, "model.tensor"),
        anticanonical=DivisorClass(_class(obj["anticanonical"], basis, "model.anticanonical")),
        rays=_rays(obj.get("rays", []), basis, "model.rays"),
        effective_generators=tuple(
            DivisorClass(_class(g, basis, f"model.effective_generators[{k}]")) for k, g in enumerate(eff)
        ),
        named_divisors={k: DivisorClass(_class(v, basis, f"model.named_divisors.{k}")) for k, v in named.items()},
        restrictions={
            k: _restriction(v, dim, f"model.restrictions.{k}") for k, v in restrictions.items()
        },
    )
    return require_valid(model)


def _class_out(d: DivisorClass | CurveClass, basis: Sequence[str]) -> dict:
    coords = d.coords if isinstance(d, DivisorClass) else d.pairings
    return {b: format_rational(c) for b, c in zip(basis, coords) if c != 0}


def _tensor_out(t: IntersectionTensor, basis: Sequence[str]) -> list:
    return [{"indices": " ".join(basis[i] for i in k), "value": format_rational(v)} for k, v in t.entries.items()]


def _rays_out(rays: Sequence[Ray], basis: Sequence[str]) -> list:
    out = []
    for r in rays:
        item = {"name": r.name, "pairing": _class_out(r.curve, basis)}
        if r.length is not None:
            item["length"] = r.length
        out.append(item)
    return out


def model_to_dict(m: VarietyModel) -> dict:
    restrictions = {}
    for name, res in m.restrictions.items():
        item = {
            "codim": res.center_codim,
            "basis": list(res.basis),
            "tensor": _tensor_out(res.lattice, res.basis),
            "restricted_anticanonical": _class_out(res.restricted_anticanonical, res.basis),
            "self_class": _class_out(res.self_class, res.basis),
        }
        if res.seshadri_override is not None:
            item["seshadri_override"] = format_rational(res.seshadri_override)
        flags = {k: getattr(res.conormal_flags, k) for k in sorted(_FLAG_FIELDS)}
        flags = {k: v for k, v in flags.items() if v is not None}
        if flags:
            item["conormal_flags"] = flags
        if res.rays:
            item["rays"] = _rays_out(res.rays, res.basis)
        restrictions[name] = item
    return {
        "name": m.name,
        "dim": m.dim,
        "basis": list(m.basis),
        "tensor": _tensor_out(m.tensor, m.basis),
        "anticanonical": _class_out(m.anticanonical, m.basis),
        "rays": _rays_out(m.rays, m.basis),
        "effective_generators": [_class_out(g, m.basis) for g in m.effective_generators],
        "named_divisors": {k: _class_out(v, m.basis) for k, v in m.named_divisors.items()},
        "restrictions": restrictions,
    }


def loads_model(text: str) -> VarietyModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from None
    return model_from_dict(obj)


def load_model(path: str | os.PathLike) -> VarietyModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc}") from None
    return loads_model(text)


def dumps_model(m: VarietyModel) -> str:
    return json.dumps(model_to_dict(m), indent=2, ensure_ascii=False) + "\n"


def save_model(m: VarietyModel, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_model(m), encoding="utf-8")


def user_catalog_dirs() -> list[Path]:
    raw = os.environ.get(CATALOG_ENV, "")
    return [Path(p) for p in raw.split(os.pathsep) if p]


def user_model_files() -> dict[str, Path]:
    """``key -> path`` for every ``*.json`` in the user catalog directories (first wins)."""
    out: dict[str, Path] = {}
    for d in user_catalog_dirs():
        if d.is_dir():
            for p in sorted(d.glob("*.json")):
                out.setdefault(p.stem, p)
    return out


def resolve_model(ref: str) -> VarietyModel:
    """A model file path, a built-in catalog key, or a key in the user catalog directories."""
    path = Path(ref)
    if path.suffix == ".json" or path.is_file():
        return load_model(path)
    if ref in catalog_keys():
        return get_model(ref)
    user = user_model_files()
    if ref in user:
        return load_model(user[ref])
    raise ModelDataError(f"unknown model {ref!r}: not a file, catalog key, or user catalog entry")
