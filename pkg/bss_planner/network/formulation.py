"""Explicit integer-programming formulation, its size statistics, and LP export.

Variables (all binary):
    x_<bts>_<bsc>   BTS assigned to BSC
    y_<bsc>_<k>     BSC uses k E1 trunk lines (k indexes the capacity table)
    z_<bsc>_<model> BSC installs the model

Rows: one assignment row per BTS, a line-capacity and a model-capacity row per
BSC, plus one "exactly one line level" and one "at most one model" row per BSC.
Zero coefficients (zero-traffic BTS, the 0-line capacity) are not emitted.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Union

from bss_planner.network.costs import link_cost, trunk_cost
from bss_planner.network.types import Instance


@dataclass(frozen=True)
class Row:
    name: str
    coeffs: Dict[str, float]
    sense: str  # "=", "<="
    rhs: float
    core: bool = True


@dataclass
class Formulation:
    variables: List[str] = field(default_factory=list)
    objective: Dict[str, float] = field(default_factory=dict)
    rows: List[Row] = field(default_factory=list)


@dataclass(frozen=True)
class FormulationStats:
    """
    Size of the emitted formulation.

    ``core_constraints`` counts the assignment and the two capacity families
    (|T| + 2|B|); ``constraints`` adds the single-level and single-model rows.
    Density is nonzeros / (variables x constraints).
    """

    variables: int
    core_constraints: int
    constraints: int
    nonzeros: int
    density: float


def _x(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def _y(j: int, k: int) -> str:
    return f"y_{j}_{k}"


def _z(j: int, w: str) -> str:
    return f"z_{j}_{w}"


def build_formulation(instance: Instance) -> Formulation:
    """Emit the full model for ``instance``."""
    form = Formulation()
    table = instance.capacity_table
    rates = instance.rates

    for bts in instance.bts:
        for bsc in instance.bsc:
            name = _x(bts.id, bsc.id)
            form.variables.append(name)
            form.objective[name] = link_cost(bts, bsc, rates)
    for bsc in instance.bsc:
        for entry in table.entries:
            name = _y(bsc.id, entry.lines)
            form.variables.append(name)
            form.objective[name] = trunk_cost(bsc, instance.msc, rates, entry.lines)
    for bsc in instance.bsc:
        for model in instance.models:
            name = _z(bsc.id, model.id)
            form.variables.append(name)
            form.objective[name] = model.acquisition_cost

    for bts in instance.bts:
        form.rows.append(
            Row(f"assign_{bts.id}", {_x(bts.id, b.id): 1.0 for b in instance.bsc}, "=", 1.0)
        )
    for bsc in instance.bsc:
        demand = {_x(t.id, bsc.id): t.traffic_erl for t in instance.bts if t.traffic_erl != 0}
        lines = {
            _y(bsc.id, e.lines): -e.capacity_erl for e in table.entries if e.capacity_erl != 0
        }
        form.rows.append(Row(f"lines_{bsc.id}", {**demand, **lines}, "<=", 0.0))
        models = {_z(bsc.id, m.id): -m.capacity_erl for m in instance.models}
        form.rows.append(Row(f"model_{bsc.id}", {**demand, **models}, "<=", 0.0))
    for bsc in instance.bsc:
        form.rows.append(
            Row(
                f"level_{bsc.id}",
                {_y(bsc.id, e.lines): 1.0 for e in table.entries},
                "=",
                1.0,
                core=False,
            )
        )
        form.rows.append(
            Row(
                f"one_model_{bsc.id}",
                {_z(bsc.id, m.id): 1.0 for m in instance.models},
                "<=",
                1.0,
                core=False,
            )
        )
    return form


def formulation_stats(instance: Instance) -> FormulationStats:
    """
    Count variables, constraints and nonzero density of the emitted model.

    Example:
        For |T| = |B| = 5, a 41-entry capacity table and 3 models there are
        25 + 205 + 15 = 245 variables and 15 core constraints.
    """
    form = build_formulation(instance)
    nonzeros = sum(len(row.coeffs) for row in form.rows)
    constraints = len(form.rows)
    variables = len(form.variables)
    return FormulationStats(
        variables=variables,
        core_constraints=sum(1 for row in form.rows if row.core),
        constraints=constraints,
        nonzeros=nonzeros,
        density=nonzeros / (variables * constraints),
    )


def _terms(coeffs: Dict[str, float]) -> List[str]:
    out = []
    for idx, (name, coef) in enumerate(coeffs.items()):
        sign = "-" if coef < 0 else "+"
        if idx == 0:
            out.append(f"{'-' if coef < 0 else ''}{abs(coef):.17g} {name}")
        else:
            out.append(f"{sign} {abs(coef):.17g} {name}")
    return out


def _wrap(prefix: str, terms: List[str], per_line: int = 6) -> List[str]:
    if not terms:
        return [f"{prefix}0"]
    lines = []
    for start in range(0, len(terms), per_line):
        chunk = " ".join(terms[start : start + per_line])
        lines.append((prefix if start == 0 else "   ") + chunk)
    return lines


def write_lp(formulation: Formulation, path: Union[str, Path]) -> Path:
    """
    Write ``formulation`` in CPLEX LP format.

    Returns:
        Path of the written file
    """
    out: List[str] = ["\\ BSS network design model", "Minimize"]
    out += _wrap(" obj: ", _terms(formulation.objective))
    out.append("Subject To")
    for row in formulation.rows:
        body = _wrap(f" {row.name}: ", _terms(row.coeffs))
        body[-1] = f"{body[-1]} {row.sense} {row.rhs:.17g}"
        out += body
    out.append("Binaries")
    for start in range(0, len(formulation.variables), 10):
        out.append(" " + " ".join(formulation.variables[start : start + 10]))
    out.append("End")

    target = Path(path)
    target.write_text("\n".join(out) + "\n", encoding="utf-8")
    return target
