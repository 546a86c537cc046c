"""JSON serialization for every domain type, with schema validation.

Scalars travel as exact strings, never floats.  Loading validates twice:
first the shape of the document against a shipped JSON schema (a
SchemaError), then the mathematics by rebuilding the object with its
own checks on (module errors).  parse(serialize(x)) == x throughout.
"""

from __future__ import annotations

import json
import re
from importlib import resources

import numpy as np
from gmpy2 import mpq

from .algebras import EquivariantAlgebra, FunctorData
from .errors import SchemaError
from .groups import FiniteGroup
from .reps import IrrepSet, Representation
from .scalars import (
    QQ,
    CyclotomicField,
    Poly,
    PolyRing,
    PrimeField,
    Scalar,
    cyclotomic_field,
    prime_field,
)


# ---------------------------------------------------------------------------
# Field specs


def field_to_spec(field) -> str:
    if field.kind == "rational":
        return "Q"
    if field.kind == "cyclotomic":
        return f"Qzeta:{field.n}"
    if field.kind == "prime":
        return f"Fp:{field.p}"
    raise ValueError(f"no spec string for {field!r}")


def field_from_spec(spec: str):
    """Parse "Q", "Qzeta:N" or "Fp:p" into a field object."""
    if spec == "Q":
        return QQ
    if spec.startswith("Qzeta:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise SchemaError(f"bad cyclotomic level in {spec!r}") from exc
        if n < 1:
            raise SchemaError(f"bad cyclotomic level in {spec!r}")
        return cyclotomic_field(n)
    if spec.startswith("Fp:"):
        try:
            p = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise SchemaError(f"bad prime in {spec!r}") from exc
        try:
            return prime_field(p)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unrecognized field spec {spec!r}")


# ---------------------------------------------------------------------------
# Scalars and polynomials


def _rat_str(q) -> str:
    return str(mpq(q))


_RAT_RE = re.compile(r"^-?[0-9]+(/-?[0-9]+)?$")


def _rat_parse(s: str):
    # integers or integer fractions only, never decimal notation
    if not isinstance(s, str) or not _RAT_RE.match(s):
        raise SchemaError(f"bad rational literal {s!r}")
    try:
        return mpq(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {s!r}") from exc


def scalar_to_json(x: Scalar):
    kind = x.field.kind
    if kind == "rational":
        return _rat_str(x.v)
    if kind == "cyclotomic":
        return {"zeta": x.field.n, "coeffs": [_rat_str(c) for c in x.v]}
    if kind == "prime":
        return {"mod": x.field.p, "val": int(x.v)}
    raise ValueError(f"cannot serialize {x!r}")


def scalar_from_json(field, obj) -> Scalar:
    if field.kind == "rational":
        if not isinstance(obj, str):
            raise SchemaError(f"rational scalar must be a string, got {obj!r}")
        return Scalar(field, _rat_parse(obj))
    if field.kind == "cyclotomic":
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise SchemaError(f"cyclotomic scalar must carry coeffs, got {obj!r}")
        if obj.get("zeta") != field.n:
            raise SchemaError(
                f"scalar lives in level {obj.get('zeta')}, expected {field.n}"
            )
        coeffs = [_rat_parse(c) for c in obj["coeffs"]]
        if len(coeffs) > field.phi:
            raise SchemaError("coefficient vector longer than the field degree")
        return field.from_coeffs(coeffs)
    if field.kind == "prime":
        if not isinstance(obj, dict) or "val" not in obj:
            raise SchemaError(f"prime-field scalar must carry val, got {obj!r}")
        if obj.get("mod") != field.p:
            raise SchemaError(
                f"scalar is mod {obj.get('mod')}, expected mod {field.p}"
            )
        return field.scalar(obj["val"])
    raise SchemaError(f"unsupported field kind {field.kind!r}")


def poly_to_json(p: Poly):
    return [scalar_to_json(c) for c in p.coeffs]


def poly_from_json(field, obj) -> Poly:
    if not isinstance(obj, list):
        raise SchemaError(f"polynomial must be a coefficient array, got {obj!r}")
    return Poly(field, [scalar_from_json(field, c) for c in obj])


def _entry_to_json(x):
    if isinstance(x, Poly):
        return poly_to_json(x)
    return scalar_to_json(x)


def _entry_from_json(ring, obj):
    if isinstance(ring, PolyRing):
        return poly_from_json(ring.field, obj)
    return scalar_from_json(ring, obj)


def _matrix_to_json(m: np.ndarray):
    return [[_entry_to_json(m[i, j]) for j in range(m.shape[1])] for i in range(m.shape[0])]


def _matrix_from_json(ring, obj, rows, cols) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != rows:
        raise SchemaError(f"matrix must have {rows} rows")
    out = np.empty((rows, cols), dtype=object)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"matrix row {i} must have {cols} entries")
        for j, cell in enumerate(row):
            out[i, j] = _entry_from_json(ring, cell)
    return out


# ---------------------------------------------------------------------------
# Groups


def group_to_json(group: FiniteGroup) -> dict:
    return {
        "order": group.n,
        "mul": [list(row) for row in group.mul],
        "labels": list(group.labels),
    }


def group_from_json(obj) -> FiniteGroup:
    _check_schema("group", obj)
    if len(obj["mul"]) != obj["order"]:
        raise SchemaError("multiplication table size disagrees with the order")
    labels = obj.get("labels")
    if labels is not None and len(labels) != obj["order"]:
        raise SchemaError("label list size disagrees with the order")
    return FiniteGroup(obj["mul"], labels=labels)


# ---------------------------------------------------------------------------
# Representations


def rep_to_json(rep: Representation) -> dict:
    return {
        "group": group_to_json(rep.group),
        "field": field_to_spec(rep.field),
        "dim": rep.dim,
        "matrices": {
            str(g): _matrix_to_json(rep.matrices[g]) for g in range(rep.group.n)
        },
    }


def rep_from_json(obj, group: FiniteGroup | None = None) -> Representation:
    _check_schema("representation", obj)
    if group is None:
        group = group_from_json(obj["group"])
    field = field_from_spec(obj["field"])
    d = obj["dim"]
    mats = []
    for g in range(group.n):
        key = str(g)
        if key not in obj["matrices"]:
            raise SchemaError(f"missing matrix for element {g}")
        mats.append(_matrix_from_json(field, obj["matrices"][key], d, d))
    return Representation(group, field, mats)


def irrepset_to_json(basis: IrrepSet) -> dict:
    return {
        "group": group_to_json(basis.group),
        "field": field_to_spec(basis.field),
        "irreps": [
            {
                "dim": rep.dim,
                "matrices": {
                    str(g): _matrix_to_json(rep.matrices[g])
                    for g in range(basis.group.n)
                },
            }
            for rep in basis.irreps
        ],
    }


def irrepset_from_json(obj) -> IrrepSet:
    _check_schema("irreps", obj)
    group = group_from_json(obj["group"])
    field = field_from_spec(obj["field"])
    reps = []
    for k, entry in enumerate(obj["irreps"]):
        d = entry["dim"]
        mats = []
        for g in range(group.n):
            key = str(g)
            if key not in entry["matrices"]:
                raise SchemaError(f"irreducible {k} misses a matrix for element {g}")
            mats.append(_matrix_from_json(field, entry["matrices"][key], d, d))
        reps.append(Representation(group, field, mats))
    return IrrepSet(group, field, reps)


# ---------------------------------------------------------------------------
# Algebras


def algebra_to_json(algebra: EquivariantAlgebra) -> dict:
    ring = algebra.ring
    poly = isinstance(ring, PolyRing)
    d = algebra.dim
    structure = []
    for i in range(d):
        for j in range(d):
            for k in range(d):
                c = algebra.mult[i, j, k]
                if isinstance(c, Poly):
                    if c.is_zero():
                        continue
                elif not c:
                    continue
                structure.append([i, j, k, _entry_to_json(c)])
    doc = {
        "group": group_to_json(algebra.group),
        "field": field_to_spec(ring.field if poly else ring),
        "poly": poly,
        "dim": d,
        "unit": [_entry_to_json(c) for c in algebra.unit],
        "structure": structure,
        "action": {
            str(g): _matrix_to_json(algebra.action[g])
            for g in range(algebra.group.n)
        },
    }
    if algebra.perm_action is not None:
        doc["perm_action"] = [list(p) for p in algebra.perm_action]
    return doc


def algebra_from_json(obj, group: FiniteGroup | None = None) -> EquivariantAlgebra:
    _check_schema("algebra", obj)
    if group is None:
        group = group_from_json(obj["group"])
    field = field_from_spec(obj["field"])
    ring = PolyRing(field) if obj.get("poly") else field
    d = obj["dim"]
    mult = np.empty((d, d, d), dtype=object)
    zero = ring.zero()
    for i in range(d):
        for j in range(d):
            for k in range(d):
                mult[i, j, k] = zero
    for item in obj["structure"]:
        i, j, k, val = item
        if not all(0 <= x < d for x in (i, j, k)):
            raise SchemaError(f"structure index {(i, j, k)} out of range")
        mult[i, j, k] = _entry_from_json(ring, val)
    if len(obj["unit"]) != d:
        raise SchemaError("unit vector length disagrees with the dimension")
    unit = np.array([_entry_from_json(ring, c) for c in obj["unit"]], dtype=object)
    action = []
    for g in range(group.n):
        key = str(g)
        if key not in obj["action"]:
            raise SchemaError(f"missing action matrix for element {g}")
        action.append(_matrix_from_json(ring, obj["action"][key], d, d))
    perm = obj.get("perm_action")
    if perm is not None:
        perm = [tuple(p) for p in perm]
    return EquivariantAlgebra(group, ring, mult, unit, action, perm_action=perm)


# ---------------------------------------------------------------------------
# Functor data


def functor_to_json(data: FunctorData) -> dict:
    products = []
    for key in sorted(data.products):
        v, w, u = key
        mats = data.products[key]
        products.append(
            {
                "source": [v, w],
                "target": u,
                "blocks": [_matrix_to_json(m) for m in mats],
            }
        )
    return {
        "group": group_to_json(data.group),
        "field": field_to_spec(data.field),
        "ranks": list(data.ranks),
        "unit": [scalar_to_json(c) for c in data.unit],
        "products": products,
    }


def functor_from_json(obj) -> FunctorData:
    _check_schema("functor", obj)
    group = group_from_json(obj["group"])
    field = field_from_spec(obj["field"])
    basis = IrrepSet.compute(group, field)
    ranks = tuple(obj["ranks"])
    if len(ranks) != len(basis.irreps):
        raise SchemaError(
            f"rank list has {len(ranks)} entries for {len(basis.irreps)} irreducibles"
        )
    unit = np.array(
        [scalar_from_json(field, c) for c in obj["unit"]], dtype=object
    )
    if unit.shape[0] != ranks[0]:
        raise SchemaError("unit length disagrees with the trivial rank")
    products = {}
    for item in obj["products"]:
        v, w = item["source"]
        u = item["target"]
        if not all(0 <= x < len(ranks) for x in (v, w, u)):
            raise SchemaError(f"product key {(v, w, u)} out of range")
        count = basis.multiplicity(basis.irreps[v].tensor(basis.irreps[w]), u)
        blocks = item["blocks"]
        if len(blocks) != count:
            raise SchemaError(
                f"product ({v},{w})->{u} needs {count} blocks, got {len(blocks)}"
            )
        mats = [
            _matrix_from_json(field, b, ranks[u], ranks[v] * ranks[w])
            for b in blocks
        ]
        products[(v, w, u)] = mats
    return FunctorData(
        group=group,
        field=field,
        basis=basis,
        ranks=ranks,
        unit=unit,
        products=products,
    )


# ---------------------------------------------------------------------------
# Schema plumbing


_SCHEMAS = {}


def _schema(name: str) -> dict:
    if name not in _SCHEMAS:
        text = (
            resources.files("equicover").joinpath(f"schemas/{name}.json").read_text()
        )
        _SCHEMAS[name] = json.loads(text)
    return _SCHEMAS[name]


def _check_schema(name: str, obj):
    import jsonschema

    try:
        jsonschema.validate(obj, _schema(name))
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{name} document: {exc.message}") from exc


def load_document(path: str, name: str):
    """Read a JSON file and validate its shape against the named schema."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except FileNotFoundError as exc:
        raise SchemaError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not JSON: {exc}") from exc
    _check_schema(name, obj)
    return obj


def dump_document(path: str, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")
