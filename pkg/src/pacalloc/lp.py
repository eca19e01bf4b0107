"""A small dense simplex solver for covering style linear programs.

Programs are stated as: minimize costs @ x subject to lhs @ x >= rhs
and x >= 0. The solver runs two-phase primal simplex with Bland's rule
on a dense numpy tableau, which is ample for the modest programs the
planners build, and returns a dual vector whose weak duality gap
certifies the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError, ValidationError

PIVOT_TOL = 1e-9
MAX_PIVOTS = 50_000
CERT_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """minimize costs @ x subject to lhs @ x >= rhs, x >= 0."""

    costs: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        costs = np.asarray(self.costs, dtype=float)
        if costs.ndim != 1 or costs.shape[0] == 0:
            raise ValidationError("lp costs must be a non-empty 1-d vector")
        try:
            lhs = np.asarray(self.lhs, dtype=float).reshape(-1, costs.shape[0])
        except ValueError as exc:
            raise ValidationError(
                "lp lhs width does not match the cost vector length"
            ) from exc
        rhs = np.asarray(self.rhs, dtype=float)
        if rhs.shape != (lhs.shape[0],):
            raise ValidationError("lp rhs length does not match the constraint count")
        if self.labels is not None and len(self.labels) != lhs.shape[0]:
            raise ValidationError("lp labels length does not match the constraint count")
        for arr in (costs, lhs, rhs):
            if not np.isfinite(arr).all():
                raise ValidationError("lp data must be finite")
            arr.setflags(write=False)
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    @property
    def num_vars(self) -> int:
        return self.costs.shape[0]

    @property
    def num_rows(self) -> int:
        return self.lhs.shape[0]


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: str
    x: np.ndarray = None
    objective: float = None
    dual: np.ndarray = None
    duality_gap: float = None


def _pivot_loop(T, basis, costs):
    """Run Bland-rule pivots to optimality on a canonical tableau."""
    m, width = T.shape
    ncols = width - 1
    for _ in range(MAX_PIVOTS):
        reduced = costs[:ncols] - costs[basis] @ T[:, :ncols]
        enter = -1
        for j in range(ncols):
            if reduced[j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        col = T[:, enter]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            return "unbounded"
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12]
        leave = ties[np.argmin(basis[ties])]
        T[leave] /= T[leave, enter]
        factors = T[:, enter].copy()
        factors[leave] = 0.0
        T -= factors[:, None] * T[leave][None, :]
        basis[leave] = enter
    raise SolverError("simplex did not converge within the pivot limit")


def solve_linear_program(lp: LinearProgram) -> LpSolution:
    m, n = lp.num_rows, lp.num_vars
    if m == 0:
        return LpSolution("optimal", np.zeros(n), 0.0, np.zeros(0), 0.0)

    # Orient rows so the right hand side is non-negative; tau records
    # which rows were negated.
    tau = np.where(lp.rhs < 0, -1.0, 1.0)
    G = tau[:, None] * lp.lhs
    h = tau * lp.rhs
    ncols = n + m
    need_art = np.flatnonzero(tau > 0)
    arts = need_art.shape[0]

    A = np.zeros((m, ncols + arts))
    A[:, :n] = G
    A[np.arange(m), n + np.arange(m)] = -tau
    basis = np.empty(m, dtype=int)
    for a, j in enumerate(need_art):
        A[j, ncols + a] = 1.0
        basis[j] = ncols + a
    for j in np.flatnonzero(tau < 0):
        basis[j] = n + j

    T = np.hstack([A, h[:, None]])

    # Phase 1: drive the artificials to zero.
    if arts:
        phase1 = np.zeros(ncols + arts)
        phase1[ncols:] = 1.0
        status = _pivot_loop(T, basis, phase1)
        if status != "optimal":
            raise SolverError("phase 1 ended " + status)
        if float(phase1[basis] @ T[:, -1]) > 1e-7:
            return LpSolution("infeasible")
        # Pivot lingering artificials out of the basis, or drop their
        # rows when the row has no structural entry left (redundant).
        keep_rows = np.ones(m, dtype=bool)
        for r in range(m):
            if basis[r] < ncols:
                continue
            entry = -1
            for j in range(ncols):
                if abs(T[r, j]) > PIVOT_TOL:
                    entry = j
                    break
            if entry < 0:
                keep_rows[r] = False
                continue
            T[r] /= T[r, entry]
            factors = T[:, entry].copy()
            factors[r] = 0.0
            T -= factors[:, None] * T[r][None, :]
            basis[r] = entry
        if not keep_rows.all():
            T = T[keep_rows]
            basis = basis[keep_rows]

    T = np.hstack([T[:, :ncols], T[:, -1:]])

    phase2 = np.zeros(ncols)
    phase2[:n] = lp.costs
    status = _pivot_loop(T, basis, phase2)
    if status == "unbounded":
        return LpSolution("unbounded")

    x = np.zeros(n)
    for r, col in enumerate(basis):
        if col < n:
            x[col] = T[r, -1]
    if (x < -1e-7).any():
        raise SolverError("simplex produced a negative primal value")
    x = np.clip(x, 0.0, None)
    objective = float(lp.costs @ x)

    # The reduced cost of surplus column j equals tau_j * y_j for the
    # equality-form dual, which is exactly the dual of the original
    # >= row; at optimality it is non-negative.
    reduced = phase2 - phase2[basis] @ T[:, :ncols]
    dual = np.zeros(lp.num_rows)
    # Surplus columns keep their original index even after redundant
    # rows were dropped, so this maps back directly.
    for j in range(lp.num_rows):
        dual[j] = max(float(reduced[n + j]), 0.0)
    gap = abs(objective - float(dual @ lp.rhs))
    slack_ok = (lp.lhs @ x >= lp.rhs - 1e-7).all()
    dual_ok = (lp.lhs.T @ dual <= lp.costs + CERT_TOL).all()
    if gap > CERT_TOL or not slack_ok or not dual_ok:
        raise SolverError(
            f"optimality certificate failed: gap {gap:.3g}, "
            f"primal feasible {slack_ok}, dual feasible {dual_ok}"
        )
    return LpSolution("optimal", x, objective, dual, float(gap))
