"""JSON file formats for algebras, modules, cycles and certificates.

Scalars are JSON integers or ``"p/q"`` strings so nothing is lost in transit.
Relative paths inside a file resolve against that file's directory.
"""

import hashlib
import json
import os
from fractions import Fraction

import numpy as np

from .algcore import Algebra, QuiverPresentation, build_from_quiver
from .errors import AlgebraMismatch, MalformedQuiver, SchemaError
from .modrep import LeftModule, indec_injectives, indec_projectives, simples


def _read_json(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SchemaError(path, f"cannot read: {exc.strerror}") from exc
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc


def digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _resolve(base, ref):
    return ref if os.path.isabs(ref) else os.path.normpath(os.path.join(os.path.dirname(base), ref))


def _field_of(obj, key, where):
    if key not in obj:
        raise SchemaError(where, f"missing field {key!r}")
    return obj[key]


def scalar_json(F, x):
    x = F.scalar(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def matrix_json(F, m):
    return [[scalar_json(F, x) for x in row] for row in np.asarray(m)]


def _scalar(F, x, where):
    try:
        return F.scalar(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(where, f"bad scalar {x!r}: {exc}") from exc


def _matrix(F, data, shape, where):
    try:
        m = F.array(data) if np.size(data) else F.zeros(*shape)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(where, f"bad scalar: {exc}") from exc
    if m.shape != shape:
        raise SchemaError(where, f"expected shape {shape}, got {m.shape}")
    return m


# -- algebras ---------------------------------------------------------------------------


def load_algebra(path, field, cache=None):
    """``cache`` (a dict) shares one Algebra object between files naming the same path."""
    key = (os.path.realpath(path), str(field))
    if cache is not None and key in cache:
        return cache[key]
    doc, _ = _read_json(path)
    alg = algebra_from_json(doc, field, path)
    if cache is not None:
        cache[key] = alg
    return alg


def algebra_from_json(doc, field, where="algebra"):
    name = doc.get("name")
    if "quiver" in doc:
        q = doc["quiver"]
        try:
            pres = QuiverPresentation(
                tuple(_field_of(q, "vertices", f"{where}.quiver")),
                tuple(tuple(a) for a in _field_of(q, "arrows", f"{where}.quiver")),
                tuple(tuple(r) for r in q.get("relations", ())),
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{where}.quiver", str(exc)) from exc
        try:
            return build_from_quiver(pres, field, doc.get("max_length", 64), name=name)
        except MalformedQuiver as exc:
            raise SchemaError(f"{where}.quiver", str(exc)) from exc
    if "structure" in doc:
        return _structure_algebra(doc["structure"], field, f"{where}.structure", name)
    raise SchemaError(where, "needs a 'quiver' or 'structure' section")


def _vec(F, labels, obj, where):
    v = F.zeros(len(labels))
    if isinstance(obj, dict):
        for lab, c in obj.items():
            if lab not in labels:
                raise SchemaError(where, f"unknown basis label {lab!r}")
            v[labels.index(lab)] = _scalar(F, c, where)
        return v
    if len(obj) != len(labels):
        raise SchemaError(where, f"expected {len(labels)} coordinates")
    return F.array([_scalar(F, c, where) for c in obj])


def _structure_algebra(s, F, where, name):
    dim = _field_of(s, "dim", where)
    labels = list(s.get("labels") or [f"b{i}" for i in range(dim)])
    if len(labels) != dim:
        raise SchemaError(f"{where}.labels", f"expected {dim} labels")
    structure = F.zeros(dim, dim, dim)
    for k, entry in enumerate(_field_of(s, "constants", where)):
        if len(entry) != 4:
            raise SchemaError(f"{where}.constants[{k}]", "expected [left, right, result, scalar]")
        for lab in entry[:3]:
            if lab not in labels:
                raise SchemaError(f"{where}.constants[{k}]", f"unknown basis label {lab!r}")
        i, j, r = (labels.index(lab) for lab in entry[:3])
        structure[i, j, r] = _scalar(F, entry[3], f"{where}.constants[{k}]")
    unit = _vec(F, labels, _field_of(s, "unit", where), f"{where}.unit")
    extra = {}
    if "idempotents" in s:
        idem = np.stack([_vec(F, labels, e, f"{where}.idempotents") for e in s["idempotents"]])
        chars = np.stack([_vec(F, labels, e, f"{where}.characters") for e in s["characters"]]) \
            if "characters" in s else idem.copy()
        rad = [_vec(F, labels, e, f"{where}.radical") for e in s.get("radical", [])]
        extra = dict(
            vertices=s.get("vertices") or [str(i + 1) for i in range(len(idem))],
            idempotents=idem, characters=chars,
            radical=np.stack(rad) if rad else F.zeros(0, dim))
    return Algebra(F, structure, unit, labels, name=name, **extra)


def algebra_to_json(A):
    F = A.field
    consts = []
    for i, j, r in zip(*np.nonzero(A.structure)):
        consts.append([A.labels[i], A.labels[j], A.labels[r], scalar_json(F, A.structure[i, j, r])])

    def as_dict(v):
        return {A.labels[i]: scalar_json(F, v[i]) for i in np.nonzero(v)[0]}

    s = {"dim": A.dim, "labels": list(A.labels), "constants": consts, "unit": as_dict(A.unit)}
    if A.has_vertex_data:
        s["vertices"] = list(A.vertices)
        s["idempotents"] = [as_dict(e) for e in A.idempotents]
        s["characters"] = [as_dict(e) for e in A.characters]
        s["radical"] = [as_dict(r) for r in A.radical]
    doc = {"structure": s}
    if A.name:
        doc["name"] = A.name
    return doc


# -- modules ----------------------------------------------------------------------------


def load_module(path, field, algebra=None, cache=None):
    doc, _ = _read_json(path)
    return module_from_json(doc, field, path, algebra, path, cache)


def module_from_json(doc, field, base, algebra=None, where="module", cache=None):
    if algebra is None:
        algebra = load_algebra(_resolve(base, _field_of(doc, "algebra", where)), field, cache)
    name = doc.get("name")
    if "kind" in doc:
        kind = doc["kind"]
        families = {"projective": indec_projectives, "injective": indec_injectives, "simple": simples}
        if kind not in families:
            raise SchemaError(f"{where}.kind", f"unknown kind {kind!r}")
        try:
            v = algebra.vertex_index(_field_of(doc, "vertex", where))
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"{where}.vertex", f"no vertex {doc.get('vertex')!r}") from exc
        base_mod = families[kind](algebra)[v]
        return LeftModule(algebra, base_mod.gens, name=name or base_mod.name)
    dim = _field_of(doc, "dim", where)
    action = _field_of(doc, "action", where)
    if not isinstance(action, dict):
        raise SchemaError(f"{where}.action", "expected a label -> matrix mapping")
    for lab in action:
        if lab not in algebra.labels and lab not in algebra.gen_labels:
            raise SchemaError(f"{where}.action", f"unknown label {lab!r}")
    mats = {lab: _matrix(field, m, (dim, dim), f"{where}.action.{lab}") for lab, m in action.items()}
    if all(lab in mats for lab in algebra.labels):
        acts = field.zeros(algebra.dim, dim, dim)
        for i, lab in enumerate(algebra.labels):
            acts[i] = mats[lab]
        try:
            return LeftModule.from_actions(algebra, acts, name=name)
        except ValueError as exc:
            raise SchemaError(f"{where}.action", str(exc)) from exc
    if all(lab in mats for lab in algebra.gen_labels):
        gens = field.zeros(len(algebra.gens), dim, dim)
        for g, lab in enumerate(algebra.gen_labels):
            gens[g] = mats[lab]
        mod = LeftModule(algebra, gens, name=name)
        bad = mod.violation()
        if bad:
            raise SchemaError(f"{where}.action", bad)
        return mod
    missing = [lab for lab in algebra.labels if lab not in mats]
    raise SchemaError(f"{where}.action", f"missing matrices for {missing[:5]}")


def module_to_json(m, algebra_ref):
    F = m.field
    doc = {"algebra": algebra_ref, "dim": m.dim,
           "action": {lab: matrix_json(F, m.action(i)) for i, lab in enumerate(m.algebra.labels)}}
    if m.name:
        doc["name"] = m.name
    return doc


def bimodule_to_json(n, left_ref, right_ref):
    F = n.field
    B = n.right.algebra
    return {
        "dim": n.dim,
        "left": {"algebra": left_ref,
                 "action": {lab: matrix_json(F, n.left.action(i))
                            for i, lab in enumerate(n.left.algebra.labels)}},
        "right": {"algebra": right_ref,
                  "action": {lab: matrix_json(F, n.right.action(i)) for i, lab in enumerate(B.labels)}},
    }


# -- cycles -------------------------------------------------------------------------------


def load_cycle(path, field):
    """Returns ``(PerfectCycle, input_paths)``."""
    from .cycles import PerfectCycle
    doc, _ = _read_json(path)
    cache = {}
    alg_path = _resolve(path, _field_of(doc, "algebra", path))
    A = load_algebra(alg_path, field, cache)
    mods, names, inputs = [], [], [path, alg_path]
    for k, ref in enumerate(_field_of(doc, "modules", path)):
        where = f"{path}.modules[{k}]"
        if isinstance(ref, str):
            mpath = _resolve(path, ref)
            inputs.append(mpath)
            m = load_module(mpath, field, None, cache)
        else:
            m = module_from_json(ref, field, path, A if "algebra" not in ref else None, where, cache)
        if not m.algebra.same_as(A):
            raise AlgebraMismatch(f"{where}: module is not over the cycle's algebra")
        mods.append(m)
        names.append(m.name or f"E{k + 1}")
    if not mods:
        raise SchemaError(f"{path}.modules", "empty cycle")
    return PerfectCycle(A, mods, names), inputs


def dump(doc):
    """Canonical serialisation: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump(doc))
