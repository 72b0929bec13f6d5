"""Dense equality-form LP solver and builders for the pointedness programs.

The solver is a tableau simplex restricted to what the feasibility programs
need: all variables nonnegative, rhs nonnegative, and a caller-supplied
starting basis whose columns form an identity (so no phase-1 is required).
Bland's rule is always on; these LPs are tiny and anti-cycling robustness
beats speed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, SingularBasisError

__all__ = ["PIVOT_TOL", "StandardLP", "LPSolution", "solve", "build_pointedness_lp"]

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StandardLP:
    """min c.v subject to A.v = b, v >= 0, with a basic feasible start.

    ``initial_basis`` names one column per row; those columns must form an
    identity submatrix, which makes ``v[basis] = b`` a basic feasible start
    (``b >= 0`` is required at construction).
    """

    constraint_matrix: np.ndarray
    rhs: np.ndarray
    objective: np.ndarray
    initial_basis: tuple[int, ...]
    nonneg_mask: np.ndarray = field(default=None)  # defaults to all-nonnegative

    def __post_init__(self):
        A = np.asarray(self.constraint_matrix, dtype=float)
        b = np.asarray(self.rhs, dtype=float)
        c = np.asarray(self.objective, dtype=float)
        if A.ndim != 2:
            raise ValueError("constraint_matrix must be 2-d")
        n_rows, n_vars = A.shape
        if b.shape != (n_rows,) or c.shape != (n_vars,):
            raise ValueError("rhs/objective shapes do not match the constraint matrix")
        if np.any(b < 0):
            raise ValueError("rhs must be componentwise nonnegative")
        mask = self.nonneg_mask
        mask = np.ones(n_vars, bool) if mask is None else np.asarray(mask, bool)
        if mask.shape != (n_vars,):
            raise ValueError("nonneg_mask length does not match the variable count")
        basis = tuple(int(j) for j in self.initial_basis)
        if len(basis) != n_rows or any(not 0 <= j < n_vars for j in basis):
            raise ValueError("initial_basis must name one in-range column per row")
        object.__setattr__(self, "constraint_matrix", A)
        object.__setattr__(self, "rhs", b)
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "nonneg_mask", mask)
        object.__setattr__(self, "initial_basis", basis)

    @property
    def n_rows(self) -> int:
        return self.constraint_matrix.shape[0]

    @property
    def n_vars(self) -> int:
        return self.constraint_matrix.shape[1]


@dataclass(frozen=True, eq=False)
class LPSolution:
    status: str  # "optimal" | "unbounded"
    objective_value: float
    values: np.ndarray
    basis: tuple[int, ...]


def solve(lp: StandardLP) -> LPSolution:
    """Run the simplex method from the supplied basis to optimality.

    Returns an optimal basic solution, or status ``unbounded`` when the
    objective decreases without limit (never the case for the pointedness
    programs, whose objective is a sum of nonnegative variables).
    """
    if not np.all(lp.nonneg_mask):
        raise ValueError("free variables are not supported; all variables must be nonnegative")
    A, b, c = lp.constraint_matrix, lp.rhs, lp.objective
    n_rows, n_vars = A.shape
    basis = list(lp.initial_basis)
    if not np.allclose(A[:, basis], np.eye(n_rows), atol=1e-12, rtol=0.0):
        raise SingularBasisError("initial_basis columns do not form an identity matrix")

    T = np.hstack([A.astype(float, copy=True), b.reshape(-1, 1).astype(float)])
    max_pivots = max(1000, 50 * n_vars)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("initial tableau (basis %s):\n%s", basis, np.array2string(T, precision=6))

    for _ in range(max_pivots):
        reduced = c - c[basis] @ T[:, :n_vars]
        reduced[basis] = 0.0
        candidates = np.flatnonzero(reduced < -PIVOT_TOL)
        if candidates.size == 0:
            break
        enter = int(candidates[0])  # Bland: smallest eligible index
        col = T[:, enter]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            values = _basic_point(T, basis, n_vars)
            return LPSolution("unbounded", float("-inf"), values, tuple(basis))
        ratios = T[rows, n_vars] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL * (1.0 + abs(best))]
        leave = int(min(ties, key=lambda i: basis[i]))  # Bland on the leaving variable
        _pivot(T, leave, enter)
        basis[leave] = enter
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(
                "pivot: enter x%d, leave row %d (basis %s)\n%s",
                enter,
                leave,
                basis,
                np.array2string(T, precision=6),
            )
    else:
        raise RuntimeError("simplex failed to terminate; numerical cycling suspected")

    values = _basic_point(T, basis, n_vars)
    return LPSolution("optimal", float(c @ values), values, tuple(basis))


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0.0:
            T[i] -= T[i, col] * T[row]
    T[:, col] = 0.0
    T[row, col] = 1.0


def _basic_point(T: np.ndarray, basis: list[int], n_vars: int) -> np.ndarray:
    values = np.zeros(n_vars)
    rhs = T[:, n_vars].copy()
    rhs[(rhs < 0) & (rhs > -1e-11)] = 0.0  # degeneracy dust
    values[basis] = rhs
    return values


def build_pointedness_lp(gens: np.ndarray, p: int) -> StandardLP:
    """Assemble the feasibility program that certifies cone pointedness.

    Variables are ordered (d_1..d_p, s_1..s_{t+p}, r_1..r_{t+p}).  Rows are
    ``gen_j . d - s_j + r_j = 1`` for each judgement generator followed by
    ``d_i - s_{t+i} + r_{t+i} = 1`` for each coordinate.  The objective is
    the sum of the r variables and the r columns form the starting identity
    basis (d = 0, s = 0, r = 1).  The cone is pointed iff the optimum is 0,
    in which case the d part of the solution satisfies d >= 1 and
    ``gen_j . d >= 1`` and is the strict-separation certificate.
    """
    G = np.atleast_2d(np.asarray(gens, dtype=float))
    t = G.shape[0]
    if t == 0:
        raise ValueError("at least one generator is required")
    if G.shape[1] != p:
        raise DimensionMismatchError(
            f"generators have dimension {G.shape[1]}, expected {p}"
        )
    n_rows = t + p
    n_vars = p + 2 * n_rows
    A = np.zeros((n_rows, n_vars))
    A[:t, :p] = G
    A[t:, :p] = np.eye(p)
    A[:, p : p + n_rows] = -np.eye(n_rows)  # s columns
    A[:, p + n_rows :] = np.eye(n_rows)  # r columns
    c = np.zeros(n_vars)
    c[p + n_rows :] = 1.0
    return StandardLP(
        constraint_matrix=A,
        rhs=np.ones(n_rows),
        objective=c,
        initial_basis=tuple(range(p + n_rows, n_vars)),
    )
