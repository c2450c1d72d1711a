"""Benchmark harness: scenario presets, runs, quality measures and result files."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import generators as gen
from .hypercore import Hypergraph, Partition
from .modularity import q_aon, q_strict, q_wclique, q_wsc
from .optimizers import aon_hmll, cnm_like, irmm, lsr

log = logging.getLogger(__name__)

ALGORITHMS = ("irmm", "lsr", "cnm", "aon")
CRITERIA = {"irmm": "wclique", "lsr": "wsc-linear", "cnm": "strict", "aon": "aon"}
CSV_COLUMNS = ("scenario", "replicate", "algorithm", "seed", "n", "K_true", "K_hat", "ari",
               "q_true", "q_hat", "rel_error", "rel_error_defined", "wall_time_s", "status")


# ---------------------------------------------------------------- measures

def _labels(p) -> np.ndarray:
    return p.labels if isinstance(p, Partition) else np.asarray(p)


def ari(a, b) -> float:
    """Adjusted Rand index between two labelings of the same nodes."""
    a, b = _labels(a), _labels(b)
    if len(a) != len(b):
        raise ValueError("partitions have different lengths")
    n = len(a)
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    table = np.zeros((ia.max() + 1, ib.max() + 1), dtype=np.int64)
    np.add.at(table, (ia, ib), 1)

    def pairs(x):
        x = np.asarray(x, dtype=np.float64)
        return float(np.sum(x * (x - 1) / 2))

    index = pairs(table)
    row, col = pairs(table.sum(1)), pairs(table.sum(0))
    expected = row * col / (n * (n - 1) / 2) if n > 1 else 0.0
    top = (row + col) / 2
    if top == expected:
        return 1.0
    return (index - expected) / (top - expected)


def relative_error(q_true: float, q_hat: float) -> float | None:
    """(q_true - q_hat) / q_true, or None when q_true is 0."""
    if q_true == 0:
        return None
    return (q_true - q_hat) / q_true


# ---------------------------------------------------------------- configs

@dataclass
class ScenarioConfig:
    id: str
    model: str  # hsbm, dchsbm or habcd
    params: dict
    replicates: int = 25
    algorithms: list[str] = field(default_factory=lambda: list(ALGORITHMS))
    options: dict[str, dict] = field(default_factory=dict)
    record_time: bool = True
    notes: str = ""

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.model not in GENERATORS:
            raise ValueError(f"unknown model {self.model!r}")
        bad = set(self.algorithms) - set(ALGORITHMS)
        if bad:
            raise ValueError(f"unknown algorithms {sorted(bad)}")

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in d.items() if k in known})

    def generate(self, seed: int) -> tuple[Hypergraph, Partition]:
        params_cls, fn = GENERATORS[self.model]
        return fn(params_cls(**self.params), seed=seed)[:2]


GENERATORS = {
    "hsbm": (gen.HsbmParams, gen.gen_hsbm),
    "dchsbm": (gen.DchsbmParams, gen.gen_dchsbm),
    "habcd": (gen.HabcdParams, gen.gen_habcd),
}


def list_presets() -> list[str]:
    folder = resources.files("hypermod") / "presets"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def load_scenario(name_or_path: str | Path) -> ScenarioConfig:
    """A shipped preset by id, or a scenario JSON file."""
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        text = path.read_text()
    else:
        res = resources.files("hypermod") / "presets" / f"{name_or_path}.json"
        if not res.is_file():
            raise FileNotFoundError(f"no preset or file named {name_or_path!r}")
        text = res.read_text()
    return ScenarioConfig.from_dict(json.loads(text))


# ---------------------------------------------------------------- runs

@dataclass
class RunRecord:
    scenario: str
    replicate: int
    algorithm: str
    seed: int
    n: int
    K_true: int
    K_hat: int | None = None
    ari: float | None = None
    q_true: float | None = None
    q_hat: float | None = None
    rel_error: float | None = None
    rel_error_defined: bool = False
    wall_time_s: float | None = None
    status: str = "ok"
    partition: list[int] | None = field(default=None, repr=False)

    def row(self) -> list[str]:
        out = []
        for col in CSV_COLUMNS:
            v = getattr(self, col)
            if v is None:
                out.append("")
            elif isinstance(v, bool):
                out.append(str(v).lower())
            elif isinstance(v, float):
                out.append(repr(v))
            else:
                out.append(str(v))
        return out


def derive_seed(master_seed: int, scenario: str, *keys: int) -> int:
    ss = np.random.SeedSequence([master_seed, zlib.crc32(scenario.encode()), *keys])
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


def run_algorithm(name: str, H: Hypergraph, seed: int, options: dict | None = None):
    options = dict(options or {})
    if name == "irmm":
        return irmm(H, seed=seed, **options)
    if name == "lsr":
        setting = options.pop("setting", "linear")
        return lsr(H, setting=setting, seed=seed, **options)
    if name == "cnm":
        return cnm_like(H, seed=seed, **options)
    if name == "aon":
        return aon_hmll(H, seed=seed, **options)
    raise ValueError(f"unknown algorithm {name!r}")


def evaluate(name: str, H: Hypergraph, P: Partition, result=None, options=None) -> float:
    """The criterion an algorithm maximises, evaluated on ``P``."""
    if name == "irmm":
        return q_wclique(H, P)
    if name == "lsr":
        return q_wsc(H, P, (options or {}).get("setting", "linear"))
    if name == "cnm":
        return q_strict(H, P)
    if name == "aon":
        return q_aon(H, P, result.params)
    raise ValueError(f"unknown algorithm {name!r}")


def _run_replicate(config: ScenarioConfig, master_seed: int, rep: int) -> list[RunRecord]:
    H, truth = config.generate(derive_seed(master_seed, config.id, rep))
    records = []
    for name in config.algorithms:
        seed = derive_seed(master_seed, config.id, rep, ALGORITHMS.index(name) + 1)
        rec = RunRecord(config.id, rep, name, seed, H.n, truth.K)
        opts = config.options.get(name, {})
        try:
            result = run_algorithm(name, H, seed, opts)
            rec.K_hat = result.partition.K
            rec.ari = ari(result.partition, truth)
            rec.q_hat = evaluate(name, H, result.partition, result, opts)
            rec.q_true = evaluate(name, H, truth, result, opts)
            rec.rel_error = relative_error(rec.q_true, rec.q_hat)
            rec.rel_error_defined = rec.rel_error is not None
            rec.wall_time_s = result.wall_time if config.record_time else 0.0
            rec.partition = result.partition.labels.tolist()
        except Exception as exc:  # a failed run is recorded and the scenario goes on
            log.warning("%s replicate %d %s failed: %s", config.id, rep, name, exc)
            rec.status = f"error: {type(exc).__name__}: {exc}".replace("\n", " ")
        records.append(rec)
    return records


def run_scenario(config: ScenarioConfig, master_seed: int = 0, jobs: int = 1) -> list[RunRecord]:
    """One record per (replicate, algorithm), ordered by replicate then algorithm."""
    reps = range(config.replicates)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_replicate, [config] * len(reps),
                                   [master_seed] * len(reps), reps))
    else:
        chunks = [_run_replicate(config, master_seed, r) for r in reps]
    records = [r for chunk in chunks for r in chunk]
    order = {a: i for i, a in enumerate(config.algorithms)}
    records.sort(key=lambda r: (r.replicate, order[r.algorithm]))
    return records


# ---------------------------------------------------------------- output

def records_to_csv(records: Iterable[RunRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def write_csv(records: Iterable[RunRecord], path) -> None:
    Path(path).write_text(records_to_csv(records))


def write_jsonl(records: Iterable[RunRecord], path) -> None:
    with open(path, "w") as fh:
        for r in records:
            fh.write(json.dumps(asdict(r), sort_keys=True) + "\n")


def read_csv(path) -> list[RunRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            def num(key, cast=float):
                return cast(row[key]) if row[key] != "" else None
            out.append(RunRecord(
                scenario=row["scenario"], replicate=int(row["replicate"]),
                algorithm=row["algorithm"], seed=int(row["seed"]), n=int(row["n"]),
                K_true=int(row["K_true"]), K_hat=num("K_hat", int), ari=num("ari"),
                q_true=num("q_true"), q_hat=num("q_hat"), rel_error=num("rel_error"),
                rel_error_defined=row["rel_error_defined"] == "true",
                wall_time_s=num("wall_time_s"), status=row["status"]))
    return out


def _moments(values: Sequence[float]) -> dict[str, float]:
    if not values:
        return {k: math.nan for k in ("mean", "sd", "median", "min", "max")}
    x = np.asarray(values, dtype=np.float64)
    return {"mean": float(x.mean()), "sd": float(x.std(ddof=1)) if len(x) > 1 else 0.0,
            "median": float(np.median(x)), "min": float(x.min()), "max": float(x.max())}


def summarize(records: Sequence[RunRecord]) -> list[dict]:
    """One row per (scenario, algorithm) in first-seen order.

    Moments of ARI, relative error and wall time use successful runs only;
    undefined relative errors are excluded from the moments and counted.
    """
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.scenario, r.algorithm), []).append(r)
    rows = []
    for (scenario, algorithm), recs in groups.items():
        ok = [r for r in recs if r.status == "ok"]
        row = {"scenario": scenario, "algorithm": algorithm, "runs": len(recs),
               "failed": len(recs) - len(ok),
               "rel_error_undefined": sum(not r.rel_error_defined for r in ok)}
        for key, vals in (("ari", [r.ari for r in ok]),
                          ("rel_error", [r.rel_error for r in ok if r.rel_error_defined]),
                          ("wall_time_s", [r.wall_time_s for r in ok])):
            for stat, v in _moments(vals).items():
                row[f"{key}_{stat}"] = v
        row["K_hat_hist"] = dict(sorted(
            (k, sum(r.K_hat == k for r in ok)) for k in {r.K_hat for r in ok}))
        rows.append(row)
    return rows


def format_summary(rows: list[dict]) -> str:
    buf = io.StringIO()
    cols = [c for c in rows[0] if c != "K_hat_hist"] + ["K_hat_hist"]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([json.dumps(row[c]) if c == "K_hat_hist"
                    else (f"{row[c]:.6g}" if isinstance(row[c], float) else row[c])
                    for c in cols])
    return buf.getvalue()
