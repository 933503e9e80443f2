"""JSON file formats for instances and solutions.

Both documents carry ``"format": "bss-planner/1"``. Distances are km, traffic
is Erlang and costs are plain cost units; numbers are written with ``repr``
precision so a write/read round trip preserves them exactly.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from bss_planner.exceptions import InstanceError, PlannerError
from bss_planner.network.types import (
    BscCandidate,
    BscConfig,
    BscModel,
    BtsNode,
    CostBreakdown,
    CostRates,
    Instance,
    Site,
    Solution,
)
from bss_planner.traffic.capacity import TimeslotSchedule, build_capacity_table

FORMAT_VERSION = "bss-planner/1"

PathLike = Union[str, Path]


class _Obj(list):
    """A JSON object kept as its (key, value) pairs so duplicate keys survive."""


def _as_dict(value: Any, where: str) -> Dict[str, Any]:
    if isinstance(value, (_Obj, Mapping)):
        return dict(value)
    raise InstanceError(f"{where} must be a JSON object")


def _as_list(value: Any, where: str) -> List[Any]:
    if not isinstance(value, list) or isinstance(value, _Obj):
        raise InstanceError(f"{where} must be a JSON array")
    return value


def _loads(text: str, source: str) -> Dict[str, Any]:
    try:
        raw = json.loads(text, object_pairs_hook=_Obj)
    except json.JSONDecodeError as e:
        raise InstanceError(f"{source} is not valid JSON: {e}")
    data = _as_dict(raw, source)
    version = data.get("format")
    if version != FORMAT_VERSION:
        raise InstanceError(f"{source} has format {version!r}; expected {FORMAT_VERSION!r}")
    return data


def dumps(data: Mapping[str, Any]) -> str:
    """Deterministic JSON text: fixed key order, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


# -- instances ----------------------------------------------------------------


def _site(d: Dict[str, Any]) -> Site:
    return Site(id=int(d["id"]), x=float(d["x"]), y=float(d["y"]))


def _site_dict(site: Site) -> Dict[str, Any]:
    return {"id": site.id, "x": site.x, "y": site.y}


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    table = instance.capacity_table
    return {
        "format": FORMAT_VERSION,
        "msc": _site_dict(instance.msc),
        "bts": [
            {**_site_dict(b.site), "traffic_erl": b.traffic_erl, "abis_lines": b.abis_lines}
            for b in instance.bts
        ],
        "bsc_sites": [_site_dict(b.site) for b in instance.bsc],
        "models": [
            {"id": m.id, "capacity_erl": m.capacity_erl, "cost": m.acquisition_cost}
            for m in instance.models
        ],
        "capacity": {
            "gos": table.gos.value,
            "max_lines": table.max_lines,
            "sub_timeslots_per_ts": table.schedule.sub_timeslots_per_ts,
            "voice_ts_per_line": list(table.schedule.voice_ts_per_line),
        },
        "rates": {
            "abis_rate": instance.rates.abis_rate,
            "a_rate": instance.rates.a_rate,
            "line_fixed_cost": instance.rates.line_fixed_cost,
        },
    }


def instance_from_dict(data: Mapping[str, Any], source: str = "instance") -> Instance:
    """
    Build and validate an Instance from its JSON document.

    Raises:
        InstanceError: On missing or malformed fields, or an invalid instance
        InfeasibleInstanceError: If some BTS demand exceeds every model
    """
    try:
        msc = _site(_as_dict(data["msc"], "msc"))
        bts = []
        for idx, raw in enumerate(_as_list(data["bts"], "bts")):
            d = _as_dict(raw, f"bts[{idx}]")
            bts.append(
                BtsNode(
                    site=_site(d),
                    traffic_erl=float(d["traffic_erl"]),
                    abis_lines=int(d.get("abis_lines", 1)),
                )
            )
        bsc = [
            BscCandidate(_site(_as_dict(raw, f"bsc_sites[{idx}]")))
            for idx, raw in enumerate(_as_list(data["bsc_sites"], "bsc_sites"))
        ]
        models = []
        for idx, raw in enumerate(_as_list(data["models"], "models")):
            d = _as_dict(raw, f"models[{idx}]")
            models.append(
                BscModel(
                    id=str(d["id"]),
                    capacity_erl=float(d["capacity_erl"]),
                    acquisition_cost=float(d["cost"]),
                )
            )
        cap = _as_dict(data["capacity"], "capacity")
        max_lines = int(cap["max_lines"])
        schedule = TimeslotSchedule(
            tuple(int(ts) for ts in _as_list(cap["voice_ts_per_line"], "voice_ts_per_line")),
            int(cap.get("sub_timeslots_per_ts", 4)),
        )
        table = build_capacity_table(max_lines, schedule, float(cap["gos"]))
        r = _as_dict(data["rates"], "rates")
        rates = CostRates(
            abis_rate=float(r["abis_rate"]),
            a_rate=float(r["a_rate"]),
            line_fixed_cost=float(r.get("line_fixed_cost", 0.0)),
        )
        return Instance(
            msc=msc,
            bts=tuple(bts),
            bsc=tuple(bsc),
            models=tuple(models),
            capacity_table=table,
            rates=rates,
        )
    except PlannerError as e:
        if isinstance(e, InstanceError):
            raise
        raise InstanceError(f"Invalid {source}: {e}")
    except KeyError as e:
        raise InstanceError(f"Invalid {source}: missing field {e}")
    except (TypeError, ValueError) as e:
        raise InstanceError(f"Invalid {source}: {e}")


def read_instance(path: PathLike) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceError(f"Cannot read instance {path}: {e}")
    return instance_from_dict(_loads(text, str(path)), str(path))


def write_instance(instance: Instance, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(dumps(instance_to_dict(instance)), encoding="utf-8")
    return path


# -- solutions ----------------------------------------------------------------


def solution_to_dict(
    solution: Solution,
    breakdown: Optional[CostBreakdown] = None,
    report: Optional[Mapping[str, Any]] = None,
) -> Dict[str, Any]:
    """Solution document; ``report`` holds solver fields such as bound and gap."""
    data: Dict[str, Any] = {
        "format": FORMAT_VERSION,
        "assignment": {str(bts): bsc for bts, bsc in solution.assignment},
        "bsc_config": {
            str(bsc): {"lines": cfg.lines, "model": cfg.model} for bsc, cfg in solution.bsc_config
        },
        "objective": solution.objective,
    }
    if breakdown is not None:
        data["breakdown"] = {
            "abis_cost": breakdown.abis_cost,
            "trunk_cost": breakdown.trunk_cost,
            "bsc_cost": breakdown.bsc_cost,
            "total": breakdown.total,
        }
    if report is not None:
        data["report"] = dict(report)
    return data


def _int_key(key: str, where: str) -> int:
    try:
        return int(key)
    except ValueError:
        raise InstanceError(f"{where} key {key!r} is not an integer id")


def solution_from_dict(data: Mapping[str, Any], source: str = "solution") -> Solution:
    """
    Parse a solution document. A BTS listed twice in ``assignment`` is kept
    twice so that feasibility checking can report it.
    """
    try:
        raw_assignment = data["assignment"]
        if not isinstance(raw_assignment, _Obj):
            raw_assignment = _Obj(dict(raw_assignment).items())
        assignment: List[Tuple[int, int]] = [
            (_int_key(k, "assignment"), int(v)) for k, v in raw_assignment
        ]
        raw_config = data.get("bsc_config", _Obj())
        if not isinstance(raw_config, _Obj):
            raw_config = _Obj(dict(raw_config).items())
        configs: List[Tuple[int, BscConfig]] = []
        for k, v in raw_config:
            cfg = _as_dict(v, f"bsc_config[{k}]")
            model = cfg.get("model")
            configs.append(
                (
                    _int_key(k, "bsc_config"),
                    BscConfig(
                        lines=int(cfg.get("lines", 0)),
                        model=None if model is None else str(model),
                    ),
                )
            )
        return Solution(
            assignment=tuple(sorted(assignment)),
            bsc_config=tuple(sorted(configs, key=lambda p: p[0])),
            objective=float(data["objective"]),
        )
    except KeyError as e:
        raise InstanceError(f"Invalid {source}: missing field {e}")
    except (TypeError, ValueError) as e:
        if isinstance(e, InstanceError):
            raise
        raise InstanceError(f"Invalid {source}: {e}")


def read_solution(path: PathLike) -> Solution:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceError(f"Cannot read solution {path}: {e}")
    return solution_from_dict(_loads(text, str(path)), str(path))


def write_solution(
    solution: Solution,
    path: PathLike,
    breakdown: Optional[CostBreakdown] = None,
    report: Optional[Mapping[str, Any]] = None,
) -> Path:
    path = Path(path)
    path.write_text(dumps(solution_to_dict(solution, breakdown, report)), encoding="utf-8")
    return path


__all__ = [
    "FORMAT_VERSION",
    "dumps",
    "instance_from_dict",
    "instance_to_dict",
    "read_instance",
    "write_instance",
    "solution_from_dict",
    "solution_to_dict",
    "read_solution",
    "write_solution",
]
