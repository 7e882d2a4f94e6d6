"""Batch classification of trace-field directions on the staircase."""

from __future__ import annotations

import csv
import io
import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .expansion import (
    DEFAULT_MAX_STEPS,
    DirectionK,
    Hyperbolic,
    Parabolic,
    classify,
    normalize_direction,
)
from .field import FieldContext
from .model import staircase_model

CSV_COLUMNS = ["N", "x", "y", "class", "steps", "preperiod", "period", "stabilizer_trace"]


@dataclass
class SurveyConfig:
    N: int
    height: int = 3
    max_steps: int = DEFAULT_MAX_STEPS
    workers: int = 1

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("height bound must be >= 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass
class SurveyRecord:
    N: int
    x: str
    y: str
    cls: str
    steps: int
    preperiod: list = field(default_factory=list)
    period: list = field(default_factory=list)
    word: list = field(default_factory=list)
    stabilizer_trace: str = ""

    def csv_row(self) -> list:
        return [
            self.N,
            self.x,
            self.y,
            self.cls,
            self.steps,
            ",".join(map(str, self.preperiod)),
            ",".join(map(str, self.period)),
            self.stabilizer_trace,
        ]

    def as_dict(self) -> dict:
        d = asdict(self)
        d["class"] = d.pop("cls")
        return d


def height_values(H: int) -> list:
    """Rationals p/q with |p| <= H and 1 <= q <= H, sorted."""
    vals = {Fraction(p, q) for q in range(1, H + 1) for p in range(-H, H + 1)}
    return sorted(vals)


def enumerate_directions(ctx: FieldContext, H: int):
    """(1, 0), then (1, y) for y > 0 of coefficient height <= H, then (0, 1).

    The y values are visited in lexicographic order of their coefficient
    tuples (c_0, ..., c_{d-1}).
    """
    if H < 1:
        raise ValueError("height bound must be >= 1")
    yield DirectionK(ctx.one, ctx.zero)
    vals = height_values(H)
    for coeffs in itertools.product(vals, repeat=ctx.degree):
        y = ctx.from_coeffs(coeffs)
        if y.sign() > 0:
            yield DirectionK(ctx.one, y)
    yield DirectionK(ctx.zero, ctx.one)


def _record(N: int, d: DirectionK, max_steps: int) -> SurveyRecord:
    model = staircase_model(N)
    res = classify(d, model, max_steps)
    rec = SurveyRecord(N=N, x=str(d.x), y=str(d.y), cls=res.kind, steps=res.steps)
    if isinstance(res, Hyperbolic):
        rec.preperiod = list(res.preperiod)
        rec.period = list(res.period)
        rec.stabilizer_trace = str(res.trace)
    elif isinstance(res, Parabolic):
        rec.word = list(res.sector_word)
    return rec


def _record_star(args):
    return _record(*args)


def run_survey(config: SurveyConfig) -> dict:
    """Classify every enumerated direction; records come back in input order."""
    model = staircase_model(config.N)
    dirs = list(enumerate_directions(model.ctx, config.height))
    jobs = [(config.N, d, config.max_steps) for d in dirs]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_record_star, jobs, chunksize=4))
    else:
        records = [_record(*job) for job in jobs]
    counts = Counter(r.cls for r in records)
    stats = {
        "N": config.N,
        "height": config.height,
        "max_steps": config.max_steps,
        "total": len(records),
        "parabolic": counts.get("parabolic", 0),
        "hyperbolic": counts.get("hyperbolic", 0),
        "unresolved": counts.get("unresolved", 0),
        "max_steps_seen": max((r.steps for r in records if r.cls != "unresolved"), default=0),
        "hyperbolic_traces": sorted({r.stabilizer_trace for r in records if r.cls == "hyperbolic"}),
    }
    return {"records": records, "stats": stats}


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def records_to_json(result: dict) -> str:
    return json.dumps(
        {"stats": result["stats"], "records": [r.as_dict() for r in result["records"]]},
        indent=2,
    )


def record_direction(rec: SurveyRecord) -> DirectionK:
    """Parse a record's direction strings back into a canonical direction."""
    ctx = staircase_model(rec.N).ctx
    return normalize_direction(ctx(rec.x), ctx(rec.y))
