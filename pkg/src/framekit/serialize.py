"""Wire formats and a byte-deterministic JSON writer.

All numeric payloads use explicit [re, im] pairs so that files round-trip
without complex-literal ambiguity.  Reports are written with a fixed-order,
17-significant-digit float format: running the same command with the same
seed reproduces the output byte for byte.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass, field

import numpy as np

from .fiberframe import FiberSystem
from .mispace import (
    BiorthogonalityReport,
    EquivalenceReport,
    FiberedFunction,
    FiberedSystem,
    MeasureModel,
)
from .subspace import Subspace
from .zak import FiniteGroupSpec, ZakPlan, cyclic_group, dihedral_group, explicit_group

# ---------------------------------------------------------------------------
# Writer.


def _fmt_float(x: float) -> str:
    x = float(x)
    if not np.isfinite(x):
        raise ValueError("cannot serialize a non-finite float")
    return format(x, ".17g")


def _is_scalar(obj) -> bool:
    return obj is None or isinstance(obj, (bool, str, numbers.Integral, float))


def _write(obj, lines: list[str], indent: int):
    pad = "  " * indent
    if obj is None:
        lines.append("null")
    elif isinstance(obj, bool):
        lines.append("true" if obj else "false")
    elif isinstance(obj, str):
        lines.append(json.dumps(obj))
    elif isinstance(obj, numbers.Integral):
        lines.append(str(int(obj)))
    elif isinstance(obj, float):
        lines.append(_fmt_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            lines.append("{}")
            return
        lines.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise ValueError(f"JSON object keys must be strings, got {key!r}")
            lines.append(f"{pad}  {json.dumps(key)}: ")
            _write(value, lines, indent + 1)
            lines.append(",\n" if i + 1 < len(obj) else "\n")
        lines.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            lines.append("[]")
            return
        if all(_is_scalar(v) for v in items):
            parts: list[str] = []
            for v in items:
                _write(v, parts, 0)
            lines.append("[" + ", ".join(parts) + "]")
            return
        lines.append("[\n")
        for i, value in enumerate(items):
            lines.append(pad + "  ")
            _write(value, lines, indent + 1)
            lines.append(",\n" if i + 1 < len(items) else "\n")
        lines.append(pad + "]")
    else:
        raise ValueError(f"cannot serialize object of type {type(obj).__name__}")


def dumps(obj) -> str:
    lines: list[str] = []
    _write(obj, lines, 0)
    return "".join(lines) + "\n"


def loads(text: str):
    return json.loads(text)


# ---------------------------------------------------------------------------
# Scalars, vectors, matrices.


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _number_from(obj, where: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, numbers.Real):
        raise ValueError(f"{where}: expected a number, got {obj!r}")
    x = float(obj)
    if not np.isfinite(x):
        raise ValueError(f"{where}: number must be finite")
    return x


def _complex_from(obj, where: str) -> complex:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise ValueError(f"{where}: expected a [re, im] pair")
    return complex(_number_from(obj[0], where), _number_from(obj[1], where))


def vector_to_json(v) -> list:
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    return [_pair(z) for z in v]


def vector_from_json(doc, where: str = "vector") -> np.ndarray:
    if not isinstance(doc, list) or not doc:
        raise ValueError(f"{where}: expected a non-empty list of [re, im] pairs")
    return np.array([_complex_from(p, f"{where}[{i}]") for i, p in enumerate(doc)])


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    rows, cols = m.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [_pair(z) for z in m.reshape(-1)],
    }


def matrix_from_json(doc, where: str = "matrix") -> np.ndarray:
    if not isinstance(doc, dict):
        raise ValueError(f"{where}: expected an object with rows/cols/data")
    try:
        rows, cols, data = doc["rows"], doc["cols"], doc["data"]
    except KeyError as exc:
        raise ValueError(f"{where}: missing key {exc.args[0]!r}") from None
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
        raise ValueError(f"{where}: rows and cols must be non-negative integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValueError(f"{where}: data must hold rows*cols = {rows * cols} pairs")
    flat = [_complex_from(p, f"{where}.data[{i}]") for i, p in enumerate(data)]
    return np.array(flat, dtype=np.complex128).reshape(rows, cols)


# ---------------------------------------------------------------------------
# Domain objects.


def fiber_system_to_json(f: FiberSystem) -> dict:
    return {"dim": f.dim, "vectors": [vector_to_json(v) for v in f.vectors]}


def fiber_system_from_json(doc, where: str = "system") -> FiberSystem:
    if not isinstance(doc, dict):
        raise ValueError(f"{where}: expected an object with dim/vectors")
    dim = doc.get("dim")
    vectors = doc.get("vectors")
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"{where}: dim must be a positive integer")
    if not isinstance(vectors, list) or not vectors:
        raise ValueError(f"{where}: vectors must be a non-empty list")
    cols = []
    for i, v in enumerate(vectors):
        vec = vector_from_json(v, f"{where}.vectors[{i}]")
        if vec.shape != (dim,):
            raise ValueError(f"{where}.vectors[{i}]: length {vec.shape[0]}, expected {dim}")
        cols.append(vec)
    return FiberSystem(np.column_stack(cols))


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "basis": matrix_to_json(s.basis)}


def subspace_from_json(doc, where: str = "subspace") -> Subspace:
    if not isinstance(doc, dict):
        raise ValueError(f"{where}: expected an object with ambient_dim/basis")
    dim = doc.get("ambient_dim")
    if not isinstance(dim, int) or dim < 1:
        raise ValueError(f"{where}: ambient_dim must be a positive integer")
    basis = matrix_from_json(doc.get("basis"), f"{where}.basis")
    if basis.shape[0] != dim:
        raise ValueError(f"{where}: basis has {basis.shape[0]} rows, expected {dim}")
    try:
        return Subspace(basis)
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None


@dataclass(frozen=True)
class PairDocument:
    """A parsed instance file: measure, system A, optional B, targets, probe."""

    measure: MeasureModel
    sa: FiberedSystem
    sb: FiberedSystem | None = None
    targets: list[Subspace] | None = None
    probe: FiberedFunction | None = None
    meta: dict = field(default_factory=dict)


def pair_to_json(
    sa: FiberedSystem,
    sb: FiberedSystem | None = None,
    targets: list[Subspace] | None = None,
    probe: FiberedFunction | None = None,
    meta: dict | None = None,
) -> dict:
    measure = sa.measure
    atoms = []
    for k, atom in enumerate(measure.atoms):
        entry: dict = {"id": atom, "weight": float(measure.weights[k])}
        entry["A"] = fiber_system_to_json(sa.fibers[k])
        if sb is not None:
            entry["B"] = fiber_system_to_json(sb.fibers[k])
        if targets is not None:
            entry["W"] = subspace_to_json(targets[k])
        if probe is not None:
            entry["f"] = vector_to_json(probe.values[k])
        atoms.append(entry)
    doc = {"fiber_dim": sa.fiber_dim, "atoms": atoms}
    if meta:
        doc["meta"] = meta
    return doc


def pair_from_json(doc) -> PairDocument:
    if not isinstance(doc, dict):
        raise ValueError("instance file must be a JSON object")
    fiber_dim = doc.get("fiber_dim")
    if not isinstance(fiber_dim, int) or fiber_dim < 1:
        raise ValueError("fiber_dim must be a positive integer")
    atoms = doc.get("atoms")
    if not isinstance(atoms, list) or not atoms:
        raise ValueError("atoms must be a non-empty list")
    ids, weights = [], []
    fibers_a, fibers_b, targets, probes = [], [], [], []
    for k, entry in enumerate(atoms):
        where = f"atoms[{k}]"
        if not isinstance(entry, dict):
            raise ValueError(f"{where}: expected an object")
        atom_id = entry.get("id")
        if not isinstance(atom_id, str) or not atom_id:
            raise ValueError(f"{where}: id must be a non-empty string")
        where = f"atom {atom_id!r}"
        weight = _number_from(entry.get("weight"), f"{where}: weight")
        if weight <= 0.0:
            raise ValueError(f"{where}: weight must be positive")
        if "A" not in entry:
            raise ValueError(f"{where}: missing system A")
        fa = fiber_system_from_json(entry["A"], f"{where}: A")
        if fa.dim != fiber_dim:
            raise ValueError(f"{where}: A has dim {fa.dim}, expected {fiber_dim}")
        ids.append(atom_id)
        weights.append(weight)
        fibers_a.append(fa)
        fibers_b.append(
            fiber_system_from_json(entry["B"], f"{where}: B") if "B" in entry else None
        )
        targets.append(
            subspace_from_json(entry["W"], f"{where}: W") if "W" in entry else None
        )
        probes.append(
            vector_from_json(entry["f"], f"{where}: f") if "f" in entry else None
        )
    for label, parts in (("B", fibers_b), ("W", targets), ("f", probes)):
        present = [p is not None for p in parts]
        if any(present) and not all(present):
            missing = ids[present.index(False)]
            raise ValueError(f"atom {missing!r}: missing {label} (present on other atoms)")
    try:
        measure = MeasureModel(tuple(ids), np.array(weights))
        sa = FiberedSystem(measure, tuple(fibers_a))
        sb = (
            FiberedSystem(measure, tuple(fibers_b)) if fibers_b[0] is not None else None
        )
    except ValueError as exc:
        raise ValueError(f"inconsistent atoms: {exc}") from None
    target_list = None
    if targets[0] is not None:
        for atom_id, t in zip(ids, targets):
            if t.ambient_dim != fiber_dim:
                raise ValueError(f"atom {atom_id!r}: W has wrong ambient dimension")
        target_list = list(targets)
    probe = None
    if probes[0] is not None:
        for atom_id, p in zip(ids, probes):
            if p.shape != (fiber_dim,):
                raise ValueError(f"atom {atom_id!r}: f has length {p.shape[0]}, expected {fiber_dim}")
        probe = FiberedFunction(measure, np.stack(probes))
    meta = doc.get("meta") if isinstance(doc.get("meta"), dict) else {}
    return PairDocument(measure, sa, sb, target_list, probe, meta)


def fibered_system_to_json(s: FiberedSystem) -> dict:
    return pair_to_json(s)


# ---------------------------------------------------------------------------
# Groups, plans, signals.


def group_to_json(g: FiniteGroupSpec) -> dict:
    doc = {"kind": g.kind, "order": g.order}
    if g.kind == "explicit":
        doc["mul"] = [[int(v) for v in row] for row in g.mul]
    return doc


def group_from_json(doc, where: str = "group") -> FiniteGroupSpec:
    if not isinstance(doc, dict):
        raise ValueError(f"{where}: expected an object")
    kind = doc.get("kind")
    order = doc.get("order")
    if not isinstance(order, int) or order < 1:
        raise ValueError(f"{where}: order must be a positive integer")
    if kind == "cyclic":
        return cyclic_group(order)
    if kind == "dihedral":
        if order % 2:
            raise ValueError(f"{where}: dihedral order must be even")
        return dihedral_group(order // 2)
    if kind == "explicit":
        mul = doc.get("mul")
        if not isinstance(mul, list):
            raise ValueError(f"{where}: explicit groups need a mul table")
        try:
            return explicit_group(mul)
        except ValueError as exc:
            raise ValueError(f"{where}: {exc}") from None
    raise ValueError(f"{where}: unknown kind {kind!r}")


def plan_to_json(plan: ZakPlan) -> dict:
    return {
        "group": group_to_json(plan.group),
        "subgroup_generator": plan.generator,
        "subgroup": list(plan.subgroup),
        "section": list(plan.section),
        "q": plan.q,
        "p": plan.p,
    }


def signal_to_json(f) -> list:
    return vector_to_json(f)


def signal_from_json(doc, order: int, where: str = "signal") -> np.ndarray:
    v = vector_from_json(doc, where)
    if v.shape != (order,):
        raise ValueError(f"{where}: length {v.shape[0]}, expected {order}")
    return v


# ---------------------------------------------------------------------------
# Reports.


def _diag_row(d) -> dict:
    return {
        "atom": d.atom,
        "dim_ja": d.dim_ja,
        "dim_jb": d.dim_jb,
        "r_ab": d.r_ab,
        "r_ba": d.r_ba,
        "rank_mixed": d.rank_mixed,
        "pinv_norm": d.pinv_norm,
    }


def equivalence_report_to_json(report: EquivalenceReport, include_witnesses: bool = True) -> dict:
    doc = {
        "global_duals_exist": report.global_duals_exist,
        "global_angles_positive": report.global_angles_positive,
        "fiber_duals_exist": report.fiber_duals_exist,
        "fiber_angles_positive": report.fiber_angles_positive,
        "all_hold": report.all_hold,
        "angles_global": [report.angles_global[0], report.angles_global[1]],
        "worst_fiber": _diag_row(report.worst_fiber),
        "witness_status": report.witness_status,
        "max_local_residual": report.max_local_residual,
        "max_global_residual": report.max_global_residual,
        "frame_bounds_a": list(report.frame_bounds_a),
        "frame_bounds_b": list(report.frame_bounds_b),
        "diagnostics": [_diag_row(d) for d in report.diagnostics],
    }
    if include_witnesses and report.witnesses is not None:
        doc["witnesses"] = {
            "A": fibered_system_to_json(report.witnesses[0]),
            "B": fibered_system_to_json(report.witnesses[1]),
        }
    return doc


DIAGNOSTICS_CSV_HEADER = "atom,dim_ja,dim_jb,r_ab,r_ba,rank_mixed,pinv_norm"


def diagnostics_to_csv(report: EquivalenceReport) -> str:
    lines = [DIAGNOSTICS_CSV_HEADER]
    for d in report.diagnostics:
        lines.append(
            ",".join(
                [
                    d.atom,
                    str(d.dim_ja),
                    str(d.dim_jb),
                    _fmt_float(d.r_ab),
                    _fmt_float(d.r_ba),
                    str(d.rank_mixed),
                    _fmt_float(d.pinv_norm),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def biorth_report_to_json(report: BiorthogonalityReport, include_dual: bool = True) -> dict:
    doc = {
        "holds": report.holds,
        "riesz_bounds": [report.riesz_bounds[0], report.riesz_bounds[1]],
        "failed_atoms": list(report.failed_atoms),
        "biorth_deviation": report.biorth_deviation,
        "repro_residual": report.repro_residual,
        "rows": [
            {"atom": r.atom, "r_aw": r.r_aw, "r_wa": r.r_wa, "ok": r.ok}
            for r in report.rows
        ],
    }
    if include_dual and report.dual is not None:
        doc["dual"] = fibered_system_to_json(report.dual)
    return doc
