"""Run a third-party solver binary on an exported MPS file.

The command is a template containing ``{mps}`` and ``{sol}``; the solver
must write its answer to ``{sol}`` in this line grammar::

    # comment
    status <optimal|infeasible|unbounded|budget_exceeded>
    objective <number>          (optional)
    <mps column name> <number>  (one per variable; omitted ones are 0)

Numbers may be integers, decimals or ``p/q`` ratios.  Integer variables
are snapped to the nearest integer; the assignment is then checked
exactly against the model and the objective recomputed from it.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
import time
from fractions import Fraction
from pathlib import Path

from .model import OPTIMAL, LinearModel, Solution, SolveStats
from .mps import export_mps

SNAP_TOL = Fraction(1, 10 ** 6)


class ExternalSolverError(RuntimeError):
    pass


def parse_solution_file(text: str) -> tuple[str, Fraction | None, dict[str, Fraction]]:
    status, objective, values = None, None, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ExternalSolverError(f"line {lineno}: expected two fields, got {line!r}")
        key, val = parts
        if key == "status":
            status = val
        elif key == "objective":
            objective = Fraction(val)
        else:
            values[key] = Fraction(val)
    if status is None:
        raise ExternalSolverError("solution file has no status line")
    return status, objective, values


def solve_external(model: LinearModel, command: str, timeout: float | None = None) -> Solution:
    t0 = time.perf_counter()
    text = export_mps(model)
    mps_names = {}
    for line in text.splitlines():
        if line.startswith("* name C "):
            _, _, _, new, orig = line.split()
            mps_names[new] = orig
    with tempfile.TemporaryDirectory(prefix="zfip-ext-") as tmp:
        mps_path = Path(tmp) / "model.mps"
        sol_path = Path(tmp) / "model.sol"
        mps_path.write_text(text)
        argv = [a.format(mps=str(mps_path), sol=str(sol_path)) for a in shlex.split(command)]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired as exc:
            raise ExternalSolverError(f"external solver timed out after {timeout}s") from exc
        if proc.returncode != 0:
            raise ExternalSolverError(f"external solver exited {proc.returncode}: {proc.stderr.strip()[:500]}")
        if not sol_path.exists():
            raise ExternalSolverError("external solver wrote no solution file")
        status, _, values = parse_solution_file(sol_path.read_text())
    stats = SolveStats(wall_time=time.perf_counter() - t0)
    if status != OPTIMAL:
        return Solution(status, stats=stats, var_index=model._var_index)
    x = [Fraction(0)] * model.num_vars
    for key, val in values.items():
        name = mps_names.get(key, key)
        j = model.var(name)
        if model.variables[j].integer:
            r = round(val)
            if abs(val - r) > SNAP_TOL:
                raise ExternalSolverError(f"integer variable {name} has value {val}")
            val = Fraction(r)
        x[j] = val
    bad = model.violations(x)
    if bad:
        raise ExternalSolverError(f"external assignment violates {bad[:5]}")
    obj = model.objective_value(x)
    return Solution(OPTIMAL, x, obj, None, stats, var_index=model._var_index)

