"""Nonnegativity-constrained least squares by the classical active-set method.

``nnls_solve`` finds the global minimizer of ``0.5 * ||A x - b||^2`` subject
to ``x >= 0`` (Lawson-Hanson).  The problem is convex, so the KKT conditions
certify global optimality; the solver enforces them to a caller-supplied
tolerance.  ``nnls_multi`` applies the solver column by column to a
right-hand-side matrix, which is the inner kernel of the alternating
factorization solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .validation import check_matrix, check_vector, to_dense

__all__ = ["NnlsSolution", "nnls_solve", "nnls_multi"]

DEFAULT_TOL = 1e-10


@dataclass
class NnlsSolution:
    """Solution of one nonnegative least-squares problem.

    Attributes
    ----------
    x : ndarray
        Elementwise nonnegative minimizer.
    residual_norm : float
        ``||A x - b||_2`` at the solution.
    iterations : int
        Number of least-squares subproblems solved.
    active_set : list of int
        Indices held at zero in the solution.
    visited_sets : list of frozenset, optional
        Passive set at the end of each outer iteration; recorded only when
        ``nnls_solve`` is called with ``track_sets=True``.
    """

    x: np.ndarray
    residual_norm: float
    iterations: int
    active_set: list = field(default_factory=list)
    visited_sets: list | None = None


def _solve_spd(G, rhs):
    """Cholesky solve of a symmetric positive-definite system.

    Returns ``(solution, None)`` on success or ``(None, pivot_index)``
    pointing at the weakest diagonal pivot when ``G`` is numerically rank
    deficient.
    """
    n = G.shape[0]
    L = np.zeros_like(G)
    tiny = np.finfo(float).eps * max(1.0, float(np.trace(G))) * n
    pivots = np.full(n, np.inf)
    for j in range(n):
        s = G[j, j] - L[j, :j] @ L[j, :j]
        pivots[j] = s
        if s <= tiny:
            return None, int(np.argmin(pivots[: j + 1]))
        L[j, j] = np.sqrt(s)
        if j + 1 < n:
            L[j + 1:, j] = (G[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    y = np.linalg.solve(L, rhs)
    return np.linalg.solve(L.T, y), None


def nnls_solve(A, b, tol: float = DEFAULT_TOL, *, track_sets: bool = False) -> NnlsSolution:
    """Globally optimal solution of min 0.5 ||A x - b||^2 s.t. x >= 0.

    Classical active-set iteration: starting from x = 0, the most positive
    component of the negative gradient enters the passive set, the
    unconstrained problem is solved on passive coordinates via normal
    equations, and variables driven nonpositive are stepped back to the
    boundary.  The objective strictly decreases across outer iterations, so
    no passive set repeats and termination is finite.

    Parameters
    ----------
    A : (m, n) matrix, dense or sparse
        No all-zero columns allowed.
    b : (m,) vector
    tol : float
        KKT tolerance: positive components need |gradient| <= tol, zero
        components need gradient >= -tol.
    track_sets : bool
        Record the passive set after each outer iteration (for diagnostics
        and the anti-cycling property test).
    """
    A = to_dense(check_matrix(A, "A"))
    b = check_vector(b, "b", length=A.shape[0])
    if float(tol) <= 0:
        raise ValueError("tol must be > 0")
    n = A.shape[1]
    if np.any(np.sum(A * A, axis=0) == 0.0):
        raise ValueError("nnls_solve: all-zero column in A")

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    # candidates whose entry cannot make numeric progress; cleared whenever
    # the iterate actually moves
    blocked = np.zeros(n, dtype=bool)
    resid = b.copy()
    w = A.T @ resid           # negative gradient at the current x
    obj = 0.5 * float(resid @ resid)
    iterations = 0
    visited = [] if track_sets else None
    eps = np.finfo(float).eps
    max_solves = 20 * n + 40

    while True:
        candidates = np.where(~passive & ~blocked & (w > tol))[0]
        if candidates.size == 0:
            break
        if iterations > max_solves:
            raise RuntimeError("nnls_solve: iteration limit exceeded")
        j = candidates[np.argmax(w[candidates])]

        P = np.where(passive | (np.arange(n) == j))[0]
        Ap = A[:, P]
        z, bad = _solve_spd(Ap.T @ Ap, Ap.T @ b)
        iterations += 1
        if z is None or z[np.searchsorted(P, j)] <= 0:
            # entering j adds no usable direction (singular subproblem or
            # nonpositive coefficient): classical anti-noise guard
            blocked[j] = True
            continue
        passive[j] = True
        x_prev, obj_prev = x.copy(), obj

        while True:
            if np.all(z > 0):
                x[:] = 0.0
                x[P] = z
                break
            # step toward z until the first passive variable hits zero
            mask = z <= 0
            steps = x[P][mask] / (x[P][mask] - z[mask])
            alpha = float(np.min(steps))
            x[P] = x[P] + alpha * (z - x[P])
            drop = P[x[P] <= eps * np.max(np.abs(x[P]), initial=1.0)]
            passive[drop] = False
            x[drop] = 0.0
            if not passive.any():
                x[:] = 0.0
                break
            if iterations > max_solves:
                raise RuntimeError("nnls_solve: iteration limit exceeded")
            P = np.where(passive)[0]
            Ap = A[:, P]
            z, bad = _solve_spd(Ap.T @ Ap, Ap.T @ b)
            iterations += 1
            if z is None:
                # rank-deficient passive block: retire the weakest pivot
                passive[P[bad]] = False
                x[P[bad]] = 0.0
                if not passive.any():
                    x[:] = 0.0
                    break
                P = np.where(passive)[0]
                Ap = A[:, P]
                z, bad = _solve_spd(Ap.T @ Ap, Ap.T @ b)
                iterations += 1
                if z is None:
                    blocked[np.where(passive)[0]] = True
                    break

        resid = b - A @ x
        new_obj = 0.5 * float(resid @ resid)
        if new_obj >= obj_prev - eps * (1.0 + obj_prev):
            # no numeric descent: undo the entry and block the candidate
            x = x_prev
            passive = x > 0.0
            blocked[j] = True
            resid = b - A @ x
            obj = 0.5 * float(resid @ resid)
            w = A.T @ resid
            continue
        if visited is not None:
            visited.append(frozenset(np.where(passive)[0].tolist()))
        blocked[:] = False   # the iterate moved; re-examine everything
        obj = new_obj
        w = A.T @ resid

    return NnlsSolution(
        x=x,
        residual_norm=float(np.linalg.norm(b - A @ x)),
        iterations=iterations,
        active_set=[int(i) for i in np.where(x == 0.0)[0]],
        visited_sets=visited,
    )


def nnls_multi(A, B_rhs, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Column-wise NNLS: column j of the result solves ``A x ~ B_rhs[:, j]``.

    Columns are independent problems; the result matches per-column
    ``nnls_solve`` calls exactly.
    """
    A = to_dense(check_matrix(A, "A"))
    B_rhs = to_dense(check_matrix(B_rhs, "B_rhs"))
    if A.shape[0] != B_rhs.shape[0]:
        raise ValueError(
            f"nnls_multi: row mismatch, A has {A.shape[0]}, rhs has {B_rhs.shape[0]}"
        )
    X = np.empty((A.shape[1], B_rhs.shape[1]))
    for j in range(B_rhs.shape[1]):
        X[:, j] = nnls_solve(A, B_rhs[:, j], tol).x
    return X
