"""Parameter sweeps over (g, eta) and their CSV/JSON serialisation."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
import csv
import io
import json
import math
from pathlib import Path
import sys

import numpy as np

from .entanglement import ProtocolReport, dicke_weight, dicke_weights
from .errors import CapExhaustedError, ParameterError
from .model import BlockMatrix, ModelParams
from .oracle import ComparisonReport
from .spectrum import CrossingTable, GroundStateResult, ScanPolicy, find_kstar

SCHEMA_VERSION = 1
QUANTITIES = ("k_star", "weight", "energy")


@dataclass(frozen=True)
class Axis:
    min: float
    max: float
    steps: int
    log: bool = False

    def __post_init__(self):
        if self.steps < 1:
            raise ParameterError("axis needs steps >= 1")
        if self.steps > 1 and not self.min < self.max:
            raise ParameterError(f"axis needs min < max, got {self.min}, {self.max}")
        if self.log and self.min <= 0:
            raise ParameterError("log axis needs min > 0")

    def values(self):
        if self.steps == 1:
            return np.array([float(self.min)])
        if self.log:
            return np.geomspace(self.min, self.max, self.steps)
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    M: int
    g_axis: Axis
    eta_axis: Axis
    quantity: str = "k_star"
    n_target: int | None = None
    threshold: float | None = None
    k_max: int | None = None

    def __post_init__(self):
        ModelParams(self.M, 0.0, 1.0)
        if self.quantity not in QUANTITIES:
            raise ParameterError(f"quantity must be one of {QUANTITIES}, got {self.quantity!r}")
        if self.eta_axis.min <= 0:
            raise ParameterError("eta axis must be positive")
        if self.g_axis.min < 0:
            raise ParameterError("g axis must be non-negative")
        if self.quantity == "weight" and (self.n_target is None or not 0 <= self.n_target <= self.M):
            raise ParameterError("weight sweeps need 0 <= n_target <= M")


@dataclass(frozen=True)
class RegionMap:
    """Sweep results on an (eta, g) grid; rows follow eta, columns follow g.

    Cells where the block scan hit its cap hold NaN and are never masked.
    ``mask`` is None when the sweep has no threshold.
    """

    spec: SweepSpec
    g: np.ndarray
    eta: np.ndarray
    values: np.ndarray
    mask: np.ndarray | None

    @property
    def exhausted(self):
        return np.isnan(self.values)

    @property
    def region_area_fraction(self):
        if self.mask is None:
            return math.nan
        return float(self.mask.sum()) / self.mask.size


def point_value(spec: SweepSpec, g: float, eta: float) -> float:
    try:
        gs = find_kstar(ModelParams(spec.M, g, eta), ScanPolicy(k_max=spec.k_max))
    except CapExhaustedError:
        return math.nan
    if spec.quantity == "k_star":
        return float(gs.k_star)
    if spec.quantity == "energy":
        return gs.energy
    return dicke_weight(gs, spec.n_target)


def run_sweep(spec: SweepSpec, threads: int = 1) -> RegionMap:
    gs, etas = spec.g_axis.values(), spec.eta_axis.values()
    values = np.empty((etas.size, gs.size))

    def row(i):
        for j, g in enumerate(gs):
            values[i, j] = point_value(spec, float(g), float(etas[i]))

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(row, range(etas.size)))
    else:
        for i in range(etas.size):
            row(i)
    mask = None
    if spec.threshold is not None:
        with np.errstate(invalid="ignore"):
            mask = np.where(np.isnan(values), False, values >= spec.threshold)
    return RegionMap(spec, gs, etas, values, mask)


# -- serialisation -----------------------------------------------------------


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _write_text(path, text):
    try:
        if path is None or str(path) == "-":
            sys.stdout.write(text)
        else:
            Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def region_csv(rmap: RegionMap) -> str:
    rows = []
    for i, eta in enumerate(rmap.eta):
        for j, g in enumerate(rmap.g):
            m = "" if rmap.mask is None else fmt(bool(rmap.mask[i, j]))
            rows.append((fmt(g), fmt(eta), fmt(rmap.values[i, j]), m))
    return _csv_text(("g", "eta", "value", "mask"), rows)


def staircase_csv(points) -> str:
    return _csv_text(("g", "k_star"), [(fmt(g), fmt(k)) for g, k in points])


def crossings_csv(table: CrossingTable) -> str:
    return _csv_text(("k", "g_exact", "g_pert"), [(fmt(k), fmt(ge), fmt(gp)) for k, ge, gp in table.entries])


def emit_csv(obj, path=None):
    if isinstance(obj, RegionMap):
        text = region_csv(obj)
    elif isinstance(obj, CrossingTable):
        text = crossings_csv(obj)
    else:
        text = staircase_csv(obj)
    _write_text(path, text)


def parse_region_csv(text):
    """Rows of (g, eta, value, mask) with mask None when unset."""
    rows = list(csv.reader(text.splitlines()))
    if rows[0] != ["g", "eta", "value", "mask"]:
        raise ValueError(f"unexpected header {rows[0]}")
    return [(float(g), float(e), float(v), None if m == "" else m == "1") for g, e, v, m in rows[1:]]


def parse_staircase_csv(text):
    rows = list(csv.reader(text.splitlines()))
    if rows[0] != ["g", "k_star"]:
        raise ValueError(f"unexpected header {rows[0]}")
    return [(float(g), None if k == "" else int(k)) for g, k in rows[1:]]


def parse_crossings_csv(text):
    rows = list(csv.reader(text.splitlines()))
    if rows[0] != ["k", "g_exact", "g_pert"]:
        raise ValueError(f"unexpected header {rows[0]}")
    return [(int(k), float(ge), float(gp)) for k, ge, gp in rows[1:]]


def _jfloat(x):
    # JSON has no NaN/inf literals in strict mode
    x = float(x)
    return x if math.isfinite(x) else str(x)


def _unfloat(x):
    return float(x) if isinstance(x, str) else x


def to_document(obj, **inputs) -> dict:
    """JSON-ready dict for any report type, tagged with ``kind`` and schema version."""
    doc = {"schema_version": SCHEMA_VERSION}
    if isinstance(obj, BlockMatrix):
        doc.update(kind="block", inputs=inputs, k=obj.k, diag=[_jfloat(x) for x in obj.diag],
                   sub=[_jfloat(x) for x in obj.sub])
    elif isinstance(obj, GroundStateResult):
        p = obj.params
        doc.update(
            kind="ground",
            inputs={"M": p.M, "g": p.g, "eta": p.eta, **inputs},
            k_star=obj.k_star,
            energy=obj.energy,
            coeffs=[float(x) for x in obj.coeffs],
            weights=[float(x) for x in dicke_weights(obj).weights],
            scanned_k_max=obj.scanned_k_max,
        )
    elif isinstance(obj, RegionMap):
        s = obj.spec
        doc.update(
            kind="sweep",
            inputs={
                "M": s.M,
                "g_axis": asdict(s.g_axis),
                "eta_axis": asdict(s.eta_axis),
                "quantity": s.quantity,
                "n_target": s.n_target,
                "threshold": s.threshold,
                "k_max": s.k_max,
                **inputs,
            },
            g=[float(x) for x in obj.g],
            eta=[float(x) for x in obj.eta],
            values=[[_jfloat(x) for x in r] for r in obj.values],
            mask=None if obj.mask is None else obj.mask.astype(bool).tolist(),
            region_area_fraction=_jfloat(obj.region_area_fraction),
        )
    elif isinstance(obj, CrossingTable):
        doc.update(kind="crossings", inputs={"M": obj.M, "eta": obj.eta, **inputs},
                   entries=[[k, _jfloat(ge), _jfloat(gp)] for k, ge, gp in obj.entries])
    elif isinstance(obj, ProtocolReport):
        d = asdict(obj)
        doc.update(kind="protocol", inputs={"M": obj.M, "samples": obj.samples, "seed": obj.seed, **inputs},
                   report=d)
    elif isinstance(obj, ComparisonReport):
        doc.update(kind="oracle", inputs={"M": obj.M, "n_max": obj.n_max, "g": obj.g, "eta": obj.eta, **inputs},
                   report=asdict(obj), differences=obj.differences)
    elif isinstance(obj, dict) and "kind" in obj:
        doc.update(obj)
        doc.setdefault("inputs", {}).update(inputs)
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return doc


def from_document(doc):
    """Rebuild the report object from ``to_document`` output."""
    kind = doc["kind"]
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    inp = doc["inputs"]
    if kind == "block":
        return BlockMatrix(doc["k"], np.array(doc["diag"], dtype=float), np.array(doc["sub"], dtype=float))
    if kind == "ground":
        return GroundStateResult(ModelParams(inp["M"], inp["g"], inp["eta"]), doc["k_star"], doc["energy"],
                                 np.array(doc["coeffs"]), doc["scanned_k_max"])
    if kind == "sweep":
        spec = SweepSpec(inp["M"], Axis(**inp["g_axis"]), Axis(**inp["eta_axis"]), inp["quantity"],
                         inp["n_target"], inp["threshold"], inp["k_max"])
        vals = np.array([[_unfloat(x) for x in r] for r in doc["values"]], dtype=float)
        mask = None if doc["mask"] is None else np.array(doc["mask"], dtype=bool)
        return RegionMap(spec, np.array(doc["g"]), np.array(doc["eta"]), vals, mask)
    if kind == "crossings":
        return CrossingTable(inp["M"], inp["eta"], [(k, _unfloat(ge), _unfloat(gp)) for k, ge, gp in doc["entries"]])
    if kind == "protocol":
        return ProtocolReport(**doc["report"])
    if kind == "oracle":
        return ComparisonReport(**doc["report"])
    return doc


def emit_json(obj, path=None, **inputs):
    doc = to_document(obj, **inputs)
    _write_text(path, json.dumps(doc, indent=2, allow_nan=False) + "\n")
    return doc


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return from_document(json.loads(text))

