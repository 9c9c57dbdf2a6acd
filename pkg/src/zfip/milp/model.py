"""Solver-agnostic linear / integer program with exact rational data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

LE, GE, EQ = "<=", ">=", "="
SENSES = (LE, GE, EQ)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
BUDGET_EXCEEDED = "budget_exceeded"


class ModelError(ValueError):
    """The model is malformed or a request against it is invalid."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ModelError("booleans are not numeric model data")
    return Fraction(x)


def _opt_fraction(x):
    return None if x is None else as_fraction(x)


@dataclass(frozen=True)
class Variable:
    name: str
    lb: Fraction | None
    ub: Fraction | None
    integer: bool


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[int, Fraction], ...]
    sense: str
    rhs: Fraction
    name: str

    def activity(self, x) -> Fraction:
        return sum((a * x[j] for j, a in self.coeffs), Fraction(0))

    def satisfied(self, x) -> bool:
        act = self.activity(x)
        if self.sense == LE:
            return act <= self.rhs
        if self.sense == GE:
            return act >= self.rhs
        return act == self.rhs

    def bounds(self) -> tuple[Fraction | None, Fraction | None]:
        if self.sense == LE:
            return None, self.rhs
        if self.sense == GE:
            return self.rhs, None
        return self.rhs, self.rhs


class LinearModel:
    """Variables with bounds and integrality, sparse rows and a linear objective.

    Models are built incrementally and then treated as immutable by every
    solver; use :meth:`copy` to derive a variant.
    """

    def __init__(self, name: str = "model"):
        self.name = name
        self.variables: list[Variable] = []
        self.constraints: list[Constraint] = []
        self.objective: dict[int, Fraction] = {}
        self.sense = "min"
        self._var_index: dict[str, int] = {}
        self._con_index: dict[str, int] = {}
        self.meta: dict = {}

    # -- construction

    def add_var(self, name: str, lb=0, ub=None, integer: bool = False) -> int:
        if name in self._var_index:
            raise ModelError(f"duplicate variable name {name!r}")
        lb, ub = _opt_fraction(lb), _opt_fraction(ub)
        if lb is not None and ub is not None and lb > ub:
            raise ModelError(f"variable {name!r} has lb {lb} > ub {ub}")
        self.variables.append(Variable(name, lb, ub, integer))
        self._var_index[name] = len(self.variables) - 1
        return len(self.variables) - 1

    def add_binary(self, name: str) -> int:
        return self.add_var(name, 0, 1, integer=True)

    def add_constraint(self, coeffs, sense: str, rhs, name: str | None = None) -> int:
        if sense not in SENSES:
            raise ModelError(f"unknown constraint sense {sense!r}")
        if name is None:
            name = f"c{len(self.constraints)}"
        if name in self._con_index:
            raise ModelError(f"duplicate constraint name {name!r}")
        merged: dict[int, Fraction] = {}
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        for j, a in items:
            if not 0 <= j < len(self.variables):
                raise ModelError(f"constraint {name!r} references unknown variable {j}")
            merged[j] = merged.get(j, Fraction(0)) + as_fraction(a)
        row = tuple(sorted((j, a) for j, a in merged.items() if a != 0))
        self.constraints.append(Constraint(row, sense, as_fraction(rhs), name))
        self._con_index[name] = len(self.constraints) - 1
        return len(self.constraints) - 1

    def set_objective(self, coeffs, sense: str = "min") -> None:
        if sense not in ("min", "max"):
            raise ModelError(f"objective sense must be 'min' or 'max', got {sense!r}")
        obj: dict[int, Fraction] = {}
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        for j, a in items:
            if not 0 <= j < len(self.variables):
                raise ModelError(f"objective references unknown variable {j}")
            obj[j] = obj.get(j, Fraction(0)) + as_fraction(a)
        self.objective = {j: a for j, a in sorted(obj.items()) if a != 0}
        self.sense = sense

    def copy(self, name: str | None = None) -> LinearModel:
        out = LinearModel(self.name if name is None else name)
        out.variables = list(self.variables)
        out.constraints = list(self.constraints)
        out.objective = dict(self.objective)
        out.sense = self.sense
        out._var_index = dict(self._var_index)
        out._con_index = dict(self._con_index)
        out.meta = dict(self.meta)
        return out

    def relaxed(self) -> LinearModel:
        """Copy with every integrality flag dropped."""
        out = self.copy()
        out.variables = [Variable(v.name, v.lb, v.ub, False) for v in self.variables]
        return out

    def with_bounds(self, bounds: dict[int, tuple]) -> LinearModel:
        out = self.copy()
        for j, (lb, ub) in bounds.items():
            v = out.variables[j]
            out.variables[j] = Variable(v.name, _opt_fraction(lb), _opt_fraction(ub), v.integer)
        return out

    # -- queries

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    def var(self, name: str) -> int:
        try:
            return self._var_index[name]
        except KeyError:
            raise ModelError(f"no variable named {name!r}") from None

    def constraint(self, name: str) -> Constraint:
        return self.constraints[self._con_index[name]]

    def has_constraint(self, name: str) -> bool:
        return name in self._con_index

    def integer_indices(self) -> list[int]:
        return [j for j, v in enumerate(self.variables) if v.integer]

    def objective_value(self, x) -> Fraction:
        return sum((a * x[j] for j, a in self.objective.items()), Fraction(0))

    def objective_granularity(self) -> Fraction | None:
        """Largest ``g`` with every attainable objective value in ``g * Z``.

        Only defined when every objective variable is integral.
        """
        if not self.objective:
            return None
        if any(not self.variables[j].integer for j in self.objective):
            return None
        den = 1
        for a in self.objective.values():
            den = lcm(den, a.denominator)
        num = 0
        for a in self.objective.values():
            num = gcd(num, a.numerator * (den // a.denominator))
        return Fraction(num, den)

    def violations(self, x) -> list[str]:
        """Names of violated bounds, integrality requirements and rows."""
        if len(x) != self.num_vars:
            raise ModelError(f"assignment has {len(x)} entries, model has {self.num_vars} variables")
        x = [as_fraction(v) for v in x]
        bad = []
        for j, v in enumerate(self.variables):
            if v.lb is not None and x[j] < v.lb:
                bad.append(f"lb:{v.name}")
            if v.ub is not None and x[j] > v.ub:
                bad.append(f"ub:{v.name}")
            if v.integer and x[j].denominator != 1:
                bad.append(f"int:{v.name}")
        bad.extend(c.name for c in self.constraints if not c.satisfied(x))
        return bad

    def is_feasible(self, x) -> bool:
        return not self.violations(x)

    def assignment_from_names(self, values: dict[str, object], default=0) -> list[Fraction]:
        x = [as_fraction(default)] * self.num_vars
        for name, val in values.items():
            x[self.var(name)] = as_fraction(val)
        return x

    def validate(self) -> None:
        seen = set()
        for v in self.variables:
            if v.name in seen:
                raise ModelError(f"duplicate variable name {v.name!r}")
            seen.add(v.name)
            if v.lb is not None and v.ub is not None and v.lb > v.ub:
                raise ModelError(f"variable {v.name!r} has lb > ub")
        for c in self.constraints:
            for j, _ in c.coeffs:
                if not 0 <= j < self.num_vars:
                    raise ModelError(f"constraint {c.name!r} references unknown variable {j}")

    def __repr__(self):
        return (f"LinearModel({self.name!r}, vars={self.num_vars}, "
                f"rows={self.num_constraints}, sense={self.sense})")


@dataclass
class SolveStats:
    nodes: int = 0
    branch_nodes: int = 0
    lp_iterations: int = 0
    exact_pivots: int = 0
    exact_fallbacks: int = 0
    fixed_by_cost: int = 0
    propagated_out: int = 0
    settled_by_propagation: int = 0
    wall_time: float = 0.0


@dataclass
class Solution:
    """Result of an LP or IP solve.  All numbers are exact rationals.

    ``duals`` (LP only) are row multipliers for the minimization form of the
    model (the objective negated when ``model.sense == "max"``).
    """

    status: str
    assignment: list[Fraction] | None = None
    objective_value: Fraction | None = None
    bound: Fraction | None = None
    stats: SolveStats = field(default_factory=SolveStats)
    duals: list[Fraction] | None = None
    basis: tuple | None = None
    var_index: dict[str, int] | None = field(default=None, repr=False)

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL

    def value(self, name: str) -> Fraction:
        if self.assignment is None:
            raise ModelError(f"no assignment available (status {self.status})")
        return self.assignment[self.var_index[name]]

    def signature(self) -> tuple:
        """Everything that must be reproduced bit-identically on a rerun."""
        return (self.status, self.objective_value,
                None if self.assignment is None else tuple(self.assignment))
