"""JSON/CSV formats for models, regions, designs, tables and summaries."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .errors import InvalidModel, StopwalkError
from .lattice import ExplicitRegion, LinearRegion, OutcomeModel, Region
from .path_counting import PathCountTable
from .trial_design import TrialDesign, trial_region


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def model_from_json(data: dict) -> OutcomeModel:
    p = data["p"]
    if "k" in data and int(data["k"]) != len(p):
        raise InvalidModel(f"k={data['k']} but {len(p)} probabilities given")
    return OutcomeModel(tuple(p), tuple(data["labels"]) if data.get("labels") else None)


def region_from_json(data: dict, base: Path | None = None) -> Region:
    kind = data.get("type")
    if kind == "linear":
        return LinearRegion(coeffs=tuple(data["coeffs"]), target=int(data["target"]),
                            max_order=int(data["horizon"]))
    if kind == "explicit":
        return ExplicitRegion(points=frozenset(tuple(x) for x in data["accessible"]),
                              dim=data.get("k"))
    if kind == "trial":
        design = data["design"]
        if isinstance(design, str):
            path = Path(design)
            if base is not None and not path.is_absolute():
                path = base / path
            design = load_json(path)
        return trial_region(TrialDesign.from_json(design))
    raise StopwalkError(f"unknown region type {kind!r}")


def load_region(path) -> Region:
    path = Path(path)
    return region_from_json(load_json(path), path.parent)


def load_model(path) -> OutcomeModel:
    return model_from_json(load_json(path))


def render(value, digits: int | None = None):
    """Exact ``"num/den"`` (or integer) strings, or decimals with ``digits`` places."""
    if digits is None:
        if isinstance(value, Fraction):
            return str(value)
        if isinstance(value, int):
            return str(value)
        return repr(float(value))
    return f"{float(value):.{digits}f}"


def table_to_json(table: PathCountTable) -> dict:
    boundary = set(table.boundary)
    return {
        "region": table.region.to_json(),
        "horizon": table.horizon,
        "points": [
            {"x": list(x), "k": str(tot), "k_star": [str(s) for s in star],
             "boundary": x in boundary}
            for x, (tot, star) in sorted(table.counts.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        ],
    }


def table_from_json(data: dict) -> PathCountTable:
    region = region_from_json(data["region"])
    counts, boundary, frontier = {}, [], []
    horizon = int(data["horizon"])
    for row in data["points"]:
        x = tuple(row["x"])
        counts[x] = (int(row["k"]), tuple(int(s) for s in row["k_star"]))
        if row["boundary"]:
            boundary.append(x)
        elif sum(x) == horizon:
            frontier.append(x)
    return PathCountTable(region, horizon, counts, tuple(boundary), tuple(sorted(frontier)))


SUMMARY_COLUMNS = ["category", "estimator", "mean", "sd", "mse", "n_absorbed", "n_failed", "seed"]


def summary_csv(summary, model: OutcomeModel, families=("ml", "unbiased")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for i in range(model.k):
        for fam in families:
            st = summary.stats[(fam, i)]
            w.writerow([model.label(i), fam, repr(st.mean), repr(st.sd), repr(st.mse),
                        summary.n_absorbed, summary.n_failed, summary.seed])
    return buf.getvalue()


def per_path_csv(summary, model: OutcomeModel) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    labels = [model.label(i) for i in range(model.k)]
    w.writerow(["path", *[f"y_{l}" for l in labels], "N",
                *[f"ml_{l}" for l in labels], *[f"unbiased_{l}" for l in labels]])
    it = iter(zip(summary.estimates["ml"], summary.estimates["unbiased"]))
    for idx, y in enumerate(summary.observations):
        if y is None:
            w.writerow([idx, *[""] * model.k, "", *[""] * (2 * model.k)])
            continue
        ml, unb = next(it)
        w.writerow([idx, *y, sum(y), *map(repr, ml), *map(repr, unb)])
    return buf.getvalue()
