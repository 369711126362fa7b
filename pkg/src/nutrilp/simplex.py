"""Dense two-phase primal simplex for small linear programs.

Minimizes c.x subject to mixed =, >=, <= rows and x >= 0, returning the
primal vertex, per-row dual prices, per-variable reduced costs, the
binding-row set and the final basis. Rows are scaled by their largest
absolute coefficient before tolerances apply; duals are reported against
the unscaled rows.

Pivot rules: Dantzig (most negative reduced cost) with lowest-index
tie-breaking, switching to Bland's rule after a run of degenerate pivots.
Ratio-test ties break on the lowest row index under Dantzig and on the
lowest basic-variable index under Bland (the variant with the termination
guarantee). All choices are deterministic, so identical inputs always
yield identical bases.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

GE = ">="
LE = "<="
EQ = "="
_RELATIONS = (EQ, GE, LE)

_PIVOT_EPS = 1e-9


class LpError(ValueError):
    """Malformed problem input (dimension mismatch, NaN/inf)."""


class IterationLimitError(RuntimeError):
    """Pivot budget exhausted; distinct from an unboundedness verdict."""


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpProblem:
    """min c.x  s.t.  A[i].x (relations[i]) b[i],  x >= 0."""

    c: np.ndarray
    A: np.ndarray
    relations: tuple[str, ...]
    b: np.ndarray

    def __init__(self, c, A, relations, b):
        try:
            c = np.atleast_1d(np.asarray(c, dtype=float))
            b = np.atleast_1d(np.asarray(b, dtype=float))
            A = np.asarray(A, dtype=float)
        except (TypeError, ValueError) as exc:
            raise LpError(f"non-numeric problem data: {exc}") from None
        relations = tuple(relations)
        if c.ndim != 1 or c.size < 1:
            raise LpError("objective must be a non-empty vector")
        if A.size == 0:
            A = A.reshape(b.size, c.size) if b.size == 0 else A
        if A.shape != (b.size, c.size):
            raise LpError(
                f"A shape {A.shape} inconsistent with {b.size} rows x {c.size} vars"
            )
        if len(relations) != b.size:
            raise LpError("one relation per row required")
        for rel in relations:
            if rel not in _RELATIONS:
                raise LpError(f"unknown relation {rel!r}")
        if not (np.isfinite(c).all() and np.isfinite(A).all() and np.isfinite(b).all()):
            raise LpError("NaN or infinity in problem data")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.c.size

    @property
    def m(self) -> int:
        return self.b.size


@dataclass(frozen=True)
class SolverOptions:
    eps_feas: float = 1e-8
    eps_bind: float = 1e-8
    eps_gap_rel: float = 1e-8
    max_iterations: int | None = None  # default 50 * (n + m)
    bland_after: int | None = None  # consecutive degenerate pivots; default 2n

    def iteration_cap(self, n: int, m: int) -> int:
        return self.max_iterations if self.max_iterations else 50 * (n + m)


@dataclass(frozen=True)
class InfeasibilityReport:
    """Best-effort explanation from the phase-1 optimum.

    violated_rows carries (row index, unscaled residual) for rows whose
    artificial variable stayed positive; binding_rows are the rows tight
    at the blocked point, which are what stopped further progress.
    """

    violated_rows: tuple[tuple[int, float], ...]
    binding_rows: tuple[int, ...]
    phase1_objective: float


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray
    objective: float
    duals: np.ndarray
    reduced_costs: np.ndarray
    binding_rows: tuple[int, ...]
    basis: tuple[str, ...]
    iterations: int
    infeasibility: InfeasibilityReport | None = None
    ray: np.ndarray | None = None


@dataclass
class _Standardized:
    """Scaled, sign-normalized standard form plus bookkeeping."""

    problem: LpProblem
    rows: list[int] = field(default_factory=list)  # original indices kept
    scales: np.ndarray | None = None  # per kept row
    flips: np.ndarray | None = None  # +1/-1 per kept row
    M: np.ndarray | None = None  # kept rows x all columns
    rhs: np.ndarray | None = None
    labels: list[str] = field(default_factory=list)
    art_cols: list[int] = field(default_factory=list)
    infeasible_trivial: int | None = None  # original index of a bad 0-row
    _initial_basis: list[int] = field(default_factory=list)


def _standardize(problem: LpProblem, eps: float) -> _Standardized:
    n, m = problem.n, problem.m
    std = _Standardized(problem)
    kept_A, kept_b, kept_rel = [], [], []
    scales, flips = [], []
    for i in range(m):
        a = problem.A[i]
        scale = float(np.max(np.abs(a))) if n else 0.0
        if scale == 0.0:
            # 0.x (rel) b decided immediately; consistent rows drop out.
            b = problem.b[i]
            rel = problem.relations[i]
            bad = (
                (rel == EQ and abs(b) > eps)
                or (rel == GE and b > eps)
                or (rel == LE and b < -eps)
            )
            if bad and std.infeasible_trivial is None:
                std.infeasible_trivial = i
            continue
        a = a / scale
        b = problem.b[i] / scale
        rel = problem.relations[i]
        flip = 1.0
        if b < 0:
            a, b, flip = -a, -b, -1.0
            rel = {GE: LE, LE: GE, EQ: EQ}[rel]
        std.rows.append(i)
        kept_A.append(a)
        kept_b.append(b)
        kept_rel.append(rel)
        scales.append(scale)
        flips.append(flip)

    mk = len(std.rows)
    std.scales = np.array(scales)
    std.flips = np.array(flips)
    labels = [f"x{j}" for j in range(n)]
    slack_of = {}
    for r, rel in enumerate(kept_rel):
        if rel in (LE, GE):
            slack_of[r] = len(labels)
            labels.append(f"s{std.rows[r]}")
    art_of = {}
    for r, rel in enumerate(kept_rel):
        if rel in (GE, EQ):
            art_of[r] = len(labels)
            labels.append(f"a{std.rows[r]}")
    M = np.zeros((mk, len(labels)))
    for r in range(mk):
        M[r, :n] = kept_A[r]
        rel = kept_rel[r]
        if rel == LE:
            M[r, slack_of[r]] = 1.0
        elif rel == GE:
            M[r, slack_of[r]] = -1.0
        if r in art_of:
            M[r, art_of[r]] = 1.0
    std.M = M
    std.rhs = np.array(kept_b)
    std.labels = labels
    std.art_cols = sorted(art_of.values())
    std._initial_basis = [
        art_of[r] if r in art_of else slack_of[r] for r in range(mk)
    ]
    return std


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _run_simplex(
    T: np.ndarray,
    basis: list[int],
    allowed: np.ndarray,
    cap: int,
    bland_after: int,
    counter: list[int],
) -> tuple[str, int | None]:
    """Pivot until optimal or unbounded; returns (status, entering column).

    allowed masks columns eligible to enter. counter[0] carries the pivot
    count across phases so the global iteration cap applies to the whole
    solve. Raises IterationLimitError at the cap.
    """
    m = T.shape[0] - 1
    degenerate_run = 0
    while True:
        red = T[-1, :-1]
        candidates = np.where(allowed & (red < -_PIVOT_EPS))[0]
        if candidates.size == 0:
            return "optimal", None
        if degenerate_run >= bland_after:
            col = int(candidates[0])
        else:
            col = int(candidates[np.argmin(red[candidates])])
        column = T[:m, col]
        rows = np.where(column > _PIVOT_EPS)[0]
        if rows.size == 0:
            return "unbounded", col
        ratios = T[rows, -1] / column[rows]
        best = np.min(ratios)
        tied = rows[ratios <= best + _PIVOT_EPS * (1.0 + abs(best))]
        if degenerate_run >= bland_after:
            row = int(min(tied, key=lambda r: basis[r]))
        else:
            row = int(tied[0])
        if counter[0] >= cap:
            raise IterationLimitError(
                f"simplex exceeded {cap} pivots (possible numerical cycling)"
            )
        _pivot(T, row, col)
        basis[row] = col
        counter[0] += 1
        degenerate_run = degenerate_run + 1 if best <= _PIVOT_EPS else 0


def _phase1(std: _Standardized, opts: SolverOptions, counter: list[int]):
    """Drive artificials to zero. Returns (T, basis, feasible, report)."""
    M, rhs = std.M, std.rhs
    mk, ncols = M.shape
    n = std.problem.n
    T = np.zeros((mk + 1, ncols + 1))
    T[:mk, :ncols] = M
    T[:mk, -1] = rhs
    cost = np.zeros(ncols + 1)
    cost[std.art_cols] = 1.0
    T[-1] = cost
    basis = list(std._initial_basis)
    for r, col in enumerate(basis):
        if col in std.art_cols:
            T[-1] -= T[r]
    allowed = np.ones(ncols, dtype=bool)
    cap = opts.iteration_cap(n, mk)
    bland_after = opts.bland_after if opts.bland_after else max(2 * n, 8)
    status, _ = _run_simplex(T, basis, allowed, cap, bland_after, counter)
    if status != "optimal":  # pragma: no cover - phase 1 is always bounded
        raise IterationLimitError("phase 1 did not converge")
    phase1_obj = -T[-1, -1]
    feasible = phase1_obj <= opts.eps_feas * max(1.0, mk)
    return T, basis, feasible, phase1_obj


def _point_from_basis(T, basis, ncols, n) -> np.ndarray:
    full = np.zeros(ncols)
    mk = T.shape[0] - 1
    for r in range(mk):
        full[basis[r]] = T[r, -1]
    return np.maximum(full[:n], 0.0)


def _binding_rows(problem: LpProblem, x: np.ndarray, eps_bind: float) -> tuple[int, ...]:
    out = []
    for i in range(problem.m):
        scale = float(np.max(np.abs(problem.A[i]))) or 1.0
        resid = float(problem.A[i] @ x - problem.b[i])
        if problem.relations[i] == EQ or abs(resid) <= eps_bind * scale:
            out.append(i)
    return tuple(out)


def _infeasible_solution(
    problem: LpProblem,
    std: _Standardized,
    T,
    basis,
    phase1_obj: float,
    opts: SolverOptions,
    iterations: int,
) -> LpSolution:
    ncols = std.M.shape[1]
    n = problem.n
    x = _point_from_basis(T, basis, ncols, n)
    violated = []
    for r, col in enumerate(basis):
        if col in std.art_cols and T[r, -1] > opts.eps_feas:
            orig = std.rows[r]
            violated.append((orig, float(T[r, -1] * std.scales[r])))
    if std.infeasible_trivial is not None:
        i = std.infeasible_trivial
        violated.append((i, float(abs(problem.b[i]))))
    violated.sort()
    binding = tuple(
        i for i in _binding_rows(problem, x, opts.eps_bind)
        if i not in {v[0] for v in violated}
    )
    report = InfeasibilityReport(tuple(violated), binding, phase1_obj)
    return LpSolution(
        status=LpStatus.INFEASIBLE,
        x=x,
        objective=float("nan"),
        duals=np.zeros(problem.m),
        reduced_costs=np.zeros(n),
        binding_rows=binding,
        basis=tuple(std.labels[c] for c in basis),
        iterations=iterations,
        infeasibility=report,
    )


def _drive_out_artificials(T, basis, std: _Standardized) -> list[int]:
    """Pivot basic artificials to structural columns; return redundant rows."""
    art = set(std.art_cols)
    redundant = []
    for r in range(T.shape[0] - 1):
        if basis[r] not in art:
            continue
        row = T[r, :-1]
        pivot_col = None
        for j in range(row.size):
            if j not in art and abs(row[j]) > _PIVOT_EPS:
                pivot_col = j
                break
        if pivot_col is None:
            redundant.append(r)
        else:
            _pivot(T, r, pivot_col)
            basis[r] = pivot_col
    return redundant


def solve(problem: LpProblem, opts: SolverOptions | None = None) -> LpSolution:
    """Two-phase simplex; see module docstring for rules and tolerances."""
    opts = opts or SolverOptions()
    n = problem.n
    std = _standardize(problem, opts.eps_feas)
    counter = [0]

    if std.infeasible_trivial is not None and not std.rows:
        report = InfeasibilityReport(
            ((std.infeasible_trivial, float(abs(problem.b[std.infeasible_trivial]))),),
            (),
            float(abs(problem.b[std.infeasible_trivial])),
        )
        return LpSolution(
            LpStatus.INFEASIBLE, np.zeros(n), float("nan"),
            np.zeros(problem.m), np.zeros(n), (), (), 0, infeasibility=report,
        )

    T, basis, feasible, phase1_obj = _phase1(std, opts, counter)
    if not feasible or std.infeasible_trivial is not None:
        return _infeasible_solution(
            problem, std, T, basis, phase1_obj, opts, counter[0]
        )

    redundant_rows = _drive_out_artificials(T, basis, std)
    keep = [r for r in range(len(basis)) if r not in set(redundant_rows)]
    kept_rows = [std.rows[r] for r in keep]
    kept_scales = std.scales[keep]
    kept_flips = std.flips[keep]
    M_kept = std.M[keep]
    basis = [basis[r] for r in keep]
    body = T[keep, :]

    ncols = std.M.shape[1]
    art = set(std.art_cols)
    allowed = np.array([j not in art for j in range(ncols)])

    T2 = np.zeros((len(keep) + 1, ncols + 1))
    T2[: len(keep)] = body
    cost = np.zeros(ncols + 1)
    cost[:n] = problem.c
    T2[-1] = cost
    for r, col in enumerate(basis):
        if cost[col] != 0.0:
            T2[-1] -= cost[col] * T2[r]

    cap = opts.iteration_cap(n, len(keep))
    bland_after = opts.bland_after if opts.bland_after else max(2 * n, 8)
    status, entering = _run_simplex(T2, basis, allowed, cap, bland_after, counter)

    x = _point_from_basis(T2, basis, ncols, n)
    if status == "unbounded":
        ray_full = np.zeros(ncols)
        ray_full[entering] = 1.0
        for r, col in enumerate(basis):
            ray_full[col] = -T2[r, entering]
        ray = ray_full[:n]
        return LpSolution(
            LpStatus.UNBOUNDED, x, float("-inf"), np.zeros(problem.m),
            np.zeros(n), (), tuple(std.labels[c] for c in basis),
            counter[0], ray=ray,
        )

    objective = float(problem.c @ x)

    # Duals against the original rows: solve B^T y = c_B on the scaled
    # system, then undo row scaling and sign flips.
    duals = np.zeros(problem.m)
    reduced = problem.c.copy()
    if keep:
        B = M_kept[:, basis]
        c_b = np.array([problem.c[c] if c < n else 0.0 for c in basis])
        y_scaled = np.linalg.solve(B.T, c_b)
        for k, orig in enumerate(kept_rows):
            duals[orig] = y_scaled[k] * kept_flips[k] / kept_scales[k]
        reduced = problem.c - M_kept[:, :n].T @ y_scaled

    return LpSolution(
        status=LpStatus.OPTIMAL,
        x=x,
        objective=objective,
        duals=duals,
        reduced_costs=reduced,
        binding_rows=_binding_rows(problem, x, opts.eps_bind),
        basis=tuple(std.labels[c] for c in basis),
        iterations=counter[0],
    )


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    violated_rows: tuple[tuple[int, float], ...]
    binding_rows: tuple[int, ...]


def phase1_feasibility(problem: LpProblem, opts: SolverOptions | None = None) -> FeasibilityResult:
    """Phase-1 check only: feasible, or the rows that could not be met."""
    opts = opts or SolverOptions()
    std = _standardize(problem, opts.eps_feas)
    counter = [0]
    if std.infeasible_trivial is not None and not std.rows:
        i = std.infeasible_trivial
        return FeasibilityResult(False, ((i, float(abs(problem.b[i]))),), ())
    T, basis, feasible, phase1_obj = _phase1(std, opts, counter)
    if feasible and std.infeasible_trivial is None:
        return FeasibilityResult(True, (), ())
    sol = _infeasible_solution(problem, std, T, basis, phase1_obj, opts, counter[0])
    report = sol.infeasibility
    return FeasibilityResult(False, report.violated_rows, report.binding_rows)
