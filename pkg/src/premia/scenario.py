"""Scenario files (JSON, schema_version 1) and report/trace serialisation."""
import copy
import csv
import io
import json
import math
from dataclasses import dataclass, field

import jsonschema

from . import dist as dists
from .errors import DistributionError, PreconditionError, ScenarioError
from .market import RISK_IDS, build_market
from .pricing import InsurerProfile
from .simulate import DEFAULT_MAX_ROUNDS, DEFAULT_TOLERANCE

SCHEMA_VERSION = 1
TRACE_COLUMNS = ["round", "P", "P1", "P2", "delta", "action", "pi1_or_Pi1", "pi2_or_Pi2", "Pi"]

_number = {"type": "number"}
_nonneg = {"type": "number", "minimum": 0}
_positive = {"type": "number", "exclusiveMinimum": 0}
_prob = {"type": "number", "minimum": 0, "maximum": 1}


def _dist_variant(name, required, props):
    return {
        "if": {"properties": {"type": {"const": name}}},
        "then": {
            "required": ["type"] + required,
            "properties": {"type": True, "label": {"type": "string"}, **props},
            "additionalProperties": False,
        },
    }


DIST_SCHEMA = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["pmf", "point", "bernoulli", "binomial", "truncated_poisson", "truncated-poisson"]}
    },
    "allOf": [
        _dist_variant("pmf", ["points"], {
            "points": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "array", "prefixItems": [_nonneg, _prob], "items": False, "minItems": 2},
            }
        }),
        _dist_variant("point", ["loss"], {"loss": _nonneg}),
        _dist_variant("bernoulli", ["q", "loss"], {"q": _prob, "loss": _nonneg}),
        _dist_variant("binomial", ["n", "q", "loss"], {
            "n": {"type": "integer", "minimum": 0}, "q": _prob, "loss": _nonneg,
        }),
        *(
            _dist_variant(name, ["lambda", "loss"], {
                "lambda": _nonneg, "loss": _nonneg,
                "quantile": {"type": "number", "minimum": dists.MIN_POISSON_QUANTILE, "exclusiveMaximum": 1},
            })
            for name in ("truncated_poisson", "truncated-poisson")
        ),
    ],
}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "risks", "insurers"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "risks": {"type": "array", "minItems": 2, "maxItems": 2, "items": DIST_SCHEMA},
        "insurers": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "rho"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "rho": _positive,
                    "loading": _nonneg,
                    "admin_cost": _nonneg,
                    "opt_out": {"type": "array", "items": {"enum": list(RISK_IDS)}, "uniqueItems": True},
                },
            },
        },
        "initial_overrides": {
            "type": "object",
            "propertyNames": {"enum": list(RISK_IDS)},
            "additionalProperties": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["insurer", "premium"],
                    "additionalProperties": False,
                    "properties": {"insurer": {"type": "string"}, "premium": _positive},
                },
            },
        },
        "tolerance": _positive,
        "max_rounds": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "insured_rho": _positive,
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)


def format_path(parts):
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


@dataclass
class Scenario:
    risks: list
    insurers: list
    opt_outs: dict = field(default_factory=dict)
    initial_overrides: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_TOLERANCE
    max_rounds: int = DEFAULT_MAX_ROUNDS
    seed: int = 0
    insured_rho: float = None
    name: str = None
    raw: dict = field(default=None, repr=False)

    def build_state(self):
        """Resolve the scenario into an initial :class:`~premia.market.MarketState`.

        Raises :class:`~premia.errors.HypothesisViolation` if a book ends up empty.
        """
        return build_market(
            self.insurers, self.risks[0], self.risks[1],
            opt_outs=self.opt_outs, overrides=self.initial_overrides,
        )


def build_dist(spec):
    kind = spec["type"]
    if kind == "pmf":
        return dists.DiscreteDist.from_points(spec["points"])
    if kind == "point":
        return dists.point_mass(spec["loss"])
    if kind == "bernoulli":
        return dists.bernoulli(spec["q"], spec["loss"])
    if kind == "binomial":
        return dists.binomial(spec["n"], spec["q"], spec["loss"])
    quantile = spec.get("quantile", 1.0 - 1e-12)
    return dists.truncated_poisson(spec["lambda"], spec["loss"], quantile)


def parse_scenario(data):
    """Validate a decoded scenario document and build a :class:`Scenario`."""
    err = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(data))
    if err is not None:
        raise ScenarioError(format_path(err.absolute_path) or "<root>", err.message)

    risks = []
    for i, spec in enumerate(data["risks"]):
        try:
            risks.append(build_dist(spec))
        except DistributionError as exc:
            label = spec.get("label")
            where = f"risks[{i}]" + (f" ({label})" if label else "")
            raise ScenarioError(where, str(exc)) from None

    insurers, opt_outs = [], {}
    seen = set()
    for i, entry in enumerate(data["insurers"]):
        if entry["id"] in seen:
            raise ScenarioError(f"insurers[{i}].id", f"duplicate insurer id {entry['id']!r}")
        seen.add(entry["id"])
        try:
            insurers.append(InsurerProfile(
                entry["id"], entry["rho"], entry.get("loading", 0.0), entry.get("admin_cost", 0.0)
            ))
        except PreconditionError as exc:
            raise ScenarioError(f"insurers[{i}]", str(exc)) from None
        if entry.get("opt_out"):
            opt_outs[entry["id"]] = frozenset(entry["opt_out"])

    overrides = {}
    for rid, quotes in data.get("initial_overrides", {}).items():
        for j, q in enumerate(quotes):
            if q["insurer"] not in seen:
                raise ScenarioError(
                    f"initial_overrides.{rid}[{j}].insurer", f"unknown insurer {q['insurer']!r}"
                )
        overrides[rid] = [(q["insurer"], float(q["premium"])) for q in quotes]

    return Scenario(
        risks=risks,
        insurers=insurers,
        opt_outs=opt_outs,
        initial_overrides=overrides,
        tolerance=float(data.get("tolerance", DEFAULT_TOLERANCE)),
        max_rounds=int(data.get("max_rounds", DEFAULT_MAX_ROUNDS)),
        seed=int(data.get("seed", 0)),
        insured_rho=data.get("insured_rho"),
        name=data.get("name"),
        raw=copy.deepcopy(data),
    )


def load_scenario(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError("<root>", f"invalid JSON: {exc}") from None
    return parse_scenario(data)


def set_param(data, name, value):
    """Copy of ``data`` with the dotted path ``name`` (e.g. ``insurers.0.rho``) set to ``value``."""
    data = copy.deepcopy(data)
    keys = [int(k) if k.isdigit() else k for k in name.split(".")]
    node = data
    try:
        for k in keys[:-1]:
            node = node[k]
        if isinstance(node, list) and not (isinstance(keys[-1], int) and keys[-1] < len(node)):
            raise IndexError(keys[-1])
    except (KeyError, IndexError, TypeError):
        raise ScenarioError(name, "no such parameter in scenario") from None
    node[keys[-1]] = value
    return data


# -- serialisation -----------------------------------------------------------

def fmt_number(x):
    """17 significant digits, enough to round-trip any double."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite number {x!r}")
    return format(x, ".17g")


def _dump(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, int, float)):
        return fmt_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_dump(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _dump(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent=2):
    return _dump(obj, indent, 0) + "\n"


def trace_rows(report):
    for r in report.trace:
        yield [
            str(r.round), fmt_number(r.P), fmt_number(r.P1), fmt_number(r.P2), fmt_number(r.delta),
            r.action, fmt_number(r.first), fmt_number(r.second), fmt_number(r.Pi),
        ]


def report_dict(report, scenario=None):
    out = {"schema_version": SCHEMA_VERSION}
    if scenario is not None:
        if scenario.name:
            out["scenario"] = scenario.name
        out["seed"] = scenario.seed
    out.update(
        converged=report.converged,
        rounds_used=report.rounds_used,
        tolerance=report.tolerance,
        max_rounds=report.max_rounds,
        P=report.P,
        P1=report.P1,
        P2=report.P2,
        delta=report.delta,
        purchase_feasible=report.purchase_feasible,
        trace=[dict(zip(TRACE_COLUMNS, [
            r.round, r.P, r.P1, r.P2, r.delta, r.action, r.first, r.second, r.Pi,
        ])) for r in report.trace],
    )
    return out


def emit_report(report, fmt="json", scenario=None):
    """Render a report as JSON text or as the CSV trace."""
    if fmt == "json":
        return dumps(report_dict(report, scenario))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        writer.writerows(trace_rows(report))
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")
