"""JSON algebra files: sparse bracket tables, optional pmap, declared extras.

Scalars are integers 0..p-1 over GF(p) and strings "a/b" (or ints) over Q.
Bracket keys are "i,j" with i < j; values are sparse {k: scalar} maps or
dense coordinate lists.  Declared modules are validated as representations;
a declared chief chain (needed over Q) is a list of ideals, each given by a
spanning list of vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .lie import LieAlgebra, build_lie_algebra, subalgebra_on
from .linalg import Field, Subspace
from .reps import Representation


class SpecFileError(ValueError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class LoadedSpec:
    name: str
    algebra: LieAlgebra
    modules: dict[str, Representation] = dc_field(default_factory=dict)
    chief_chain: list[Subspace] | None = None
    induction: list[tuple[Subspace, Representation]] = dc_field(default_factory=list)
    note: str = ""


def _scalar_from_json(field: Field, v, where: str):
    if field.is_modular:
        if not isinstance(v, int):
            raise SpecFileError(where, f"expected an integer scalar, got {v!r}")
        return v % field.characteristic
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecFileError(where, f"bad rational scalar {v!r}: {exc}") from None
    raise SpecFileError(where, f"expected int or 'a/b' string, got {v!r}")


def _scalar_to_json(field: Field, x):
    if field.is_modular:
        return int(x)
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vector_from_json(field: Field, v, dim: int, where: str) -> np.ndarray:
    out = field.zeros(dim)
    if isinstance(v, list):
        if len(v) != dim:
            raise SpecFileError(where, f"vector length {len(v)} != dim {dim}")
        for k, x in enumerate(v):
            out[k] = _scalar_from_json(field, x, where)
    elif isinstance(v, dict):
        for k, x in v.items():
            idx = int(k)
            if not 0 <= idx < dim:
                raise SpecFileError(where, f"coordinate {idx} out of range")
            out[idx] = _scalar_from_json(field, x, where)
    else:
        raise SpecFileError(where, "vector must be a list or an index map")
    return field.reduce(out)


def load_spec_dict(doc: dict, origin: str = "<memory>") -> LoadedSpec:
    try:
        char = int(doc["characteristic"])
        dim = int(doc["dim"])
    except KeyError as exc:
        raise SpecFileError(origin, f"missing required key {exc}") from None
    field = Field(char)
    name = doc.get("name", origin)
    labels = doc.get("basis")
    if labels is not None and len(labels) != dim:
        raise SpecFileError(origin, "basis label count != dim")
    table = {}
    for key, vec in doc.get("brackets", {}).items():
        try:
            i, j = (int(part) for part in key.split(","))
        except ValueError:
            raise SpecFileError(origin, f"bracket key {key!r} must be 'i,j'") from None
        if not i < j:
            raise SpecFileError(origin, f"bracket key {key!r} must have i < j")
        table[(i, j)] = _vector_from_json(field, vec, dim, f"{origin}:brackets[{key}]")
    pmap = None
    if "pmap" in doc and doc["pmap"] is not None:
        pmap = {
            int(k): _vector_from_json(field, vec, dim, f"{origin}:pmap[{k}]")
            for k, vec in doc["pmap"].items()
        }
        for i in range(dim):
            pmap.setdefault(i, field.zeros(dim))
    algebra = build_lie_algebra(field, dim, table, labels=labels, pmap=pmap)
    spec = LoadedSpec(name=name, algebra=algebra, note=doc.get("note", ""))
    for mname, mdoc in doc.get("modules", {}).items():
        mdim = int(mdoc["dim"])
        action = mdoc["action"]
        if len(action) != dim:
            raise SpecFileError(origin, f"module {mname!r} needs one matrix per basis element")
        mats = []
        for i, rows in enumerate(action):
            m = field.zeros(mdim, mdim)
            if len(rows) != mdim:
                raise SpecFileError(origin, f"module {mname!r} matrix {i} has wrong shape")
            for r, row in enumerate(rows):
                m[r] = _vector_from_json(field, row, mdim, f"{origin}:modules[{mname}][{i}][{r}]")
            mats.append(m)
        spec.modules[mname] = Representation(algebra, mats, check=True, dim=mdim)
    if "chief_chain" in doc and doc["chief_chain"] is not None:
        chain = []
        for idx, vecs in enumerate(doc["chief_chain"]):
            where = f"{origin}:chief_chain[{idx}]"
            space = Subspace.from_vectors(
                field, dim, [_vector_from_json(field, v, dim, where) for v in vecs]
            )
            chain.append(space)
        spec.chief_chain = chain
    for idx, tdoc in enumerate(doc.get("induction", [])):
        where = f"{origin}:induction[{idx}]"
        ideal = Subspace.from_vectors(
            field, dim, [_vector_from_json(field, v, dim, where) for v in tdoc["ideal"]]
        )
        sub = subalgebra_on(algebra, ideal)
        mref = tdoc.get("module", "trivial")
        if mref == "trivial":
            from .reps import trivial_rep

            seed = trivial_rep(sub)
        else:
            mdoc = tdoc["module"]
            sdim = int(mdoc["dim"])
            smats = []
            for rows in mdoc["action"]:
                m = field.zeros(sdim, sdim)
                for r, row in enumerate(rows):
                    m[r] = _vector_from_json(field, row, sdim, where)
                smats.append(m)
            seed = Representation(sub, smats, check=True, dim=sdim)
        spec.induction.append((ideal, seed))
    return spec


def load_spec(path: str) -> LoadedSpec:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecFileError(path, str(exc)) from None
    except json.JSONDecodeError as exc:
        raise SpecFileError(path, f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load_spec_dict(doc, origin=path)


def spec_to_dict(spec: LoadedSpec) -> dict:
    """Serialize back to the file format (stable ordering, canonical scalars)."""
    L = spec.algebra
    f = L.field
    doc = {
        "name": spec.name,
        "characteristic": f.characteristic,
        "dim": L.dim,
        "basis": list(L.labels),
        "brackets": {},
    }
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            entries = {str(k): _scalar_to_json(f, L.c[i, j][k]) for k in range(L.dim) if L.c[i, j][k] != 0}
            if entries:
                doc["brackets"][f"{i},{j}"] = entries
    if L.pmap is not None:
        doc["pmap"] = {}
        for i in range(L.dim):
            entries = {str(k): _scalar_to_json(f, L.pmap[i][k]) for k in range(L.dim) if L.pmap[i][k] != 0}
            if entries:
                doc["pmap"][str(i)] = entries
    if spec.modules:
        doc["modules"] = {
            name: {
                "dim": rep.dim,
                "action": [[[_scalar_to_json(f, x) for x in row] for row in m] for m in rep.matrices],
            }
            for name, rep in spec.modules.items()
        }
    if spec.chief_chain is not None:
        doc["chief_chain"] = [
            [[_scalar_to_json(f, x) for x in row] for row in space.basis] for space in spec.chief_chain
        ]
    if spec.induction:
        doc["induction"] = [
            {
                "ideal": [[_scalar_to_json(f, x) for x in row] for row in ideal.basis],
                "module": "trivial"
                if seed.is_trivial() and seed.dim == 1
                else {
                    "dim": seed.dim,
                    "action": [[[_scalar_to_json(f, x) for x in row] for row in m] for m in seed.matrices],
                },
            }
            for ideal, seed in spec.induction
        ]
    if spec.note:
        doc["note"] = spec.note
    return doc
