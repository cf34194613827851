from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

FEAS_TOL = 1e-7
BOUND_TOL = 1e-9
INT_TOL = 1e-6
OBJ_TOL = 1e-6

SENSES = (">=", "<=", "=")


@dataclass
class Row:
    """Sparse linear row ``sum(value[i] * x[index[i]]) <sense> rhs``."""

    index: tuple
    value: tuple
    sense: str
    rhs: float
    name: str = ""

    def __post_init__(self):
        if self.sense not in SENSES:
            raise ValueError(f"bad row sense {self.sense!r}")
        self.index = tuple(int(i) for i in self.index)
        self.value = tuple(float(v) for v in self.value)
        self.rhs = float(self.rhs)
        if len(self.index) != len(self.value):
            raise ValueError("row index/value length mismatch")

    @classmethod
    def from_dict(cls, coefs: dict, sense: str, rhs: float, name: str = "", **kw):
        items = sorted((i, v) for i, v in coefs.items() if v != 0)
        return cls(tuple(i for i, _ in items), tuple(v for _, v in items), sense, rhs, name, **kw)

    def activity(self, x) -> float:
        return float(sum(v * x[i] for i, v in zip(self.index, self.value)))

    def violation(self, x) -> float:
        """Amount by which ``x`` misses the row (0 when satisfied)."""
        a = self.activity(x)
        if self.sense == ">=":
            return max(0.0, self.rhs - a)
        if self.sense == "<=":
            return max(0.0, a - self.rhs)
        return abs(a - self.rhs)

    def fingerprint(self) -> tuple:
        return (self.sense, round(self.rhs, 9),
                tuple(sorted((i, round(v, 9)) for i, v in zip(self.index, self.value))))


class LpModel:
    """Minimization model: bounded variables plus sparse rows."""

    def __init__(self):
        self.names: list[str] = []
        self.lb: list[float] = []
        self.ub: list[float] = []
        self.obj: list[float] = []
        self.integer: list[bool] = []
        self.rows: list[Row] = []
        self._name_index: dict[str, int] = {}

    @property
    def num_vars(self) -> int:
        return len(self.names)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def add_var(self, name: str, lb: float = 0.0, ub: float = 1.0, obj: float = 0.0,
                integer: bool = False) -> int:
        if lb > ub:
            raise ValueError(f"variable {name}: lower bound {lb} exceeds upper bound {ub}")
        if name in self._name_index:
            raise ValueError(f"duplicate variable name {name}")
        self._name_index[name] = len(self.names)
        self.names.append(name)
        self.lb.append(float(lb))
        self.ub.append(float(ub))
        self.obj.append(float(obj))
        self.integer.append(bool(integer))
        return len(self.names) - 1

    def index_of(self, name: str) -> int:
        return self._name_index[name]

    def add_row(self, row: Row) -> None:
        n = self.num_vars
        for i in row.index:
            if not 0 <= i < n:
                raise IndexError(f"row {row.name!r} references column {i} outside 0..{n - 1}")
        self.rows.append(row)

    def set_objective(self, obj) -> None:
        obj = [float(c) for c in obj]
        if len(obj) != self.num_vars:
            raise ValueError("objective length mismatch")
        self.obj = obj

    def objective_value(self, x) -> float:
        return float(np.dot(self.obj, x))

    def max_violation(self, x) -> float:
        worst = 0.0
        for r in self.rows:
            worst = max(worst, r.violation(x))
        return worst

    def max_bound_violation(self, x) -> float:
        x = np.asarray(x)
        return float(max(0.0, np.max(np.asarray(self.lb) - x, initial=0.0),
                         np.max(x - np.asarray(self.ub), initial=0.0)))

    def copy(self) -> "LpModel":
        m = LpModel()
        m.names = list(self.names)
        m.lb = list(self.lb)
        m.ub = list(self.ub)
        m.obj = list(self.obj)
        m.integer = list(self.integer)
        m.rows = list(self.rows)
        m._name_index = dict(self._name_index)
        return m

    def to_lp_format(self) -> str:
        """CPLEX-LP text, for cross-checking with external solvers."""

        def term(v, name, first):
            sign = "-" if v < 0 else ("" if first else "+")
            return f"{sign} {abs(v):.12g} {name}".strip()

        safe = [n.replace("[", "_").replace("]", "").replace("(", "").replace(")", "")
                .replace(",", "_") for n in self.names]
        out = ["Minimize", " obj: " + (" ".join(
            term(c, safe[i], k == 0)
            for k, (i, c) in enumerate((i, c) for i, c in enumerate(self.obj) if c != 0)) or "0")]
        out.append("Subject To")
        for r_i, r in enumerate(self.rows):
            lhs = " ".join(term(v, safe[i], k == 0) for k, (i, v) in enumerate(zip(r.index, r.value)))
            op = {">=": ">=", "<=": "<=", "=": "="}[r.sense]
            out.append(f" c{r_i}: {lhs or '0 ' + safe[0]} {op} {r.rhs:.12g}")
        out.append("Bounds")
        for i, n in enumerate(safe):
            lo = "-inf" if self.lb[i] == -np.inf else f"{self.lb[i]:.12g}"
            hi = "+inf" if self.ub[i] == np.inf else f"{self.ub[i]:.12g}"
            out.append(f" {lo} <= {n} <= {hi}")
        gen = [safe[i] for i, f in enumerate(self.integer) if f]
        if gen:
            out.append("General")
            out.append(" " + " ".join(gen))
        out.append("End")
        return "\n".join(out) + "\n"


@dataclass
class LpPoint:
    values: Optional[np.ndarray]
    objective: float
    status: str
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


@dataclass
class SolveReport:
    formulation: str
    bound_type: str  # "lp_relaxation" | "integer_optimum" | "first_stage_relaxed"
    status: str
    objective: float
    values: Optional[np.ndarray]
    names: list = field(default_factory=list)
    cuts: dict = field(default_factory=dict)
    rounds: int = 0
    nodes: int = 0
    wall_time: Optional[float] = None
