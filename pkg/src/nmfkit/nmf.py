"""Nonnegative matrix factorization solvers and the stationarity report.

Two solvers minimize ``0.5 * ||A - B C||_F^2`` over elementwise-nonnegative
factors:

* ``nmf_multiplicative`` -- rescaling updates with a small denominator
  guard; the objective trace is nonincreasing.
* ``nmf_anls`` -- alternating exact nonnegative least squares, one convex
  subproblem per factor.  Each half-step is a global NNLS optimum, so the
  objective cannot increase, and the iteration stops once the first-order
  stationarity residuals drop below ``kkt_tol``.  An optional ``ridge``
  penalty ``0.5 * ridge * (||B||_F^2 + ||C||_F^2)`` shrinks the factors;
  the reference tables bundled with the demo command were produced with
  ``ridge = mean(A)``.

``kkt_report`` evaluates the Lagrangian stationarity conditions of the
plain objective at any factor pair: multiplier estimates, complementary
slackness, dual feasibility, and the multiplier-based reconstruction of
each factor (skipped and flagged when the Gram matrix is singular).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import frobenius_norm_sq
from .nnls import nnls_multi
from .validation import check_matrix, check_rank, to_dense

__all__ = [
    "FactorPair",
    "KktReport",
    "nmf_multiplicative",
    "nmf_anls",
    "kkt_report",
    "nmf_objective",
]

MU_DELTA = 1e-12


@dataclass
class FactorPair:
    """Output of one factorization run.

    ``objective_trace[i]`` is ``0.5 * ||A - B C||_F^2`` after iteration i
    (index 0 holds the value at the initial factors).  ``stop_reason`` is
    one of ``"max_iter"``, ``"objective_stall"``, ``"kkt_tol"``.
    """

    B: np.ndarray
    C: np.ndarray
    rank: int
    objective_trace: list = field(default_factory=list)
    iterations: int = 0
    stop_reason: str = "max_iter"
    ridge: float = 0.0

    @property
    def product(self) -> np.ndarray:
        return self.B @ self.C


@dataclass
class KktReport:
    """First-order stationarity residuals of the plain objective.

    ``gamma_B`` and ``gamma_C_T`` are the multiplier estimates recovered
    from the gradients; at an exact stationary point all four scalar
    residuals vanish.  ``recon_residual_B``/``recon_residual_C`` measure the
    multiplier-based reconstruction of each factor relative to its norm and
    are ``None`` when the corresponding Gram matrix is singular (flagged).
    """

    gamma_B: np.ndarray
    gamma_C_T: np.ndarray
    comp_slack_B: float
    comp_slack_C: float
    dual_feas_B: float
    dual_feas_C: float
    recon_residual_B: float | None = None
    recon_residual_C: float | None = None

    def max_residual(self) -> float:
        return max(self.comp_slack_B, self.comp_slack_C,
                   self.dual_feas_B, self.dual_feas_C)


def nmf_objective(A, B, C) -> float:
    """0.5 * squared Frobenius distance between A and B C."""
    return 0.5 * frobenius_norm_sq(to_dense(A) - B @ C)


def _init_factors(A, K, init, strict_positive):
    """Seeded uniform(0, 1] factors scaled by sqrt(mean(A) / K).

    ``init`` is either an integer seed or an existing ``FactorPair`` whose
    factors are reused (they must be strictly positive for the
    multiplicative solver, which cannot escape exact zeros).
    """
    if isinstance(init, FactorPair):
        B, C = np.array(init.B, dtype=float), np.array(init.C, dtype=float)
        if B.shape != (A.shape[0], K) or C.shape != (K, A.shape[1]):
            raise ValueError("init: factor shapes do not match A and K")
        if strict_positive and (B.min() <= 0 or C.min() <= 0):
            raise ValueError("init: factors must be strictly positive")
        if B.min() < 0 or C.min() < 0:
            raise ValueError("init: factors must be nonnegative")
        return B, C
    rng = np.random.default_rng(int(init))
    mean = float(np.mean(to_dense(A)))
    scale = np.sqrt(max(mean, np.finfo(float).tiny) / K)
    B = (1.0 - rng.random((A.shape[0], K))) * scale   # uniform (0, 1] scaled
    C = (1.0 - rng.random((K, A.shape[1]))) * scale
    return B, C


def nmf_multiplicative(A, K: int, init=0, max_iter: int = 500,
                       stall_tol: float = 1e-6) -> FactorPair:
    """Multiplicative-update factorization of a nonnegative matrix.

    Alternates ``B <- B * (A C^T) / (B C C^T + delta)`` and
    ``C <- C * (B^T A) / (B^T B C + delta)`` with ``delta = 1e-12``.  Stops
    when the relative objective change falls below ``stall_tol`` or after
    ``max_iter`` sweeps.  The objective trace is nonincreasing up to a
    1e-10 absolute slack.

    Parameters
    ----------
    A : nonnegative matrix (dense or sparse)
    K : target rank, 1 <= K <= min(M, N)
    init : int seed or FactorPair with strictly positive factors
    """
    A = check_matrix(A, "A", require_nonneg=True)
    K = check_rank(K, *A.shape)
    Ad = to_dense(A)
    B, C = _init_factors(Ad, K, init, strict_positive=True)
    trace = [nmf_objective(Ad, B, C)]
    stop = "max_iter"
    it = 0
    for it in range(1, max_iter + 1):
        B *= (Ad @ C.T) / (B @ (C @ C.T) + MU_DELTA)
        C *= (B.T @ Ad) / ((B.T @ B) @ C + MU_DELTA)
        obj = nmf_objective(Ad, B, C)
        trace.append(obj)
        prev = trace[-2]
        if abs(prev - obj) <= stall_tol * max(prev, np.finfo(float).tiny):
            stop = "objective_stall"
            break
    return FactorPair(B=B, C=C, rank=K, objective_trace=trace,
                      iterations=it, stop_reason=stop)


def _half_step(design, rhs, n_out, live, ridge, nnls_tol):
    """Exact NNLS solve restricted to live components.

    A dead component multiplies a zero row/column, so it contributes nothing
    to the product; the reduced optimum extended by zeros is therefore a
    global optimum of the full subproblem.  With ``ridge > 0`` the design is
    augmented by sqrt(ridge) times the identity (never rank deficient).
    """
    K = live.shape[0]
    out = np.zeros((K, n_out))
    if not live.any():
        return out
    D = design[:, live]
    if ridge > 0:
        k_live = int(live.sum())
        D = np.vstack([D, np.sqrt(ridge) * np.eye(k_live)])
        rhs = np.vstack([rhs, np.zeros((k_live, rhs.shape[1]))])
    out[live] = nnls_multi(D, rhs, nnls_tol)
    return out


def _anls_half_steps(Ad, B, C, ridge, nnls_tol):
    """One full alternating sweep of exact NNLS half-steps."""
    live_c = C.any(axis=1)
    B = _half_step(C.T, Ad.T, Ad.shape[0], live_c, ridge, nnls_tol).T
    live_b = B.any(axis=0)
    C = _half_step(B, Ad, Ad.shape[1], live_b, ridge, nnls_tol)
    return B, C


def _stationarity_scalars(Ad, B, C, ridge):
    """Max stationarity residual of the (possibly ridge-shifted) objective."""
    GB = B @ (C @ C.T) - Ad @ C.T + ridge * B
    GC = (B.T @ B) @ C - B.T @ Ad + ridge * C
    comp_b = float(np.max(np.abs(GB * B), initial=0.0))
    comp_c = float(np.max(np.abs(GC * C), initial=0.0))
    dual_b = float(max(0.0, -GB.min(initial=0.0)))
    dual_c = float(max(0.0, -GC.min(initial=0.0)))
    return max(comp_b, comp_c, dual_b, dual_c)


def nmf_anls(A, K: int, init=0, max_iter: int = 500, kkt_tol: float | None = None,
             ridge: float = 0.0, nnls_tol: float = 1e-10) -> FactorPair:
    """Alternating exact-NNLS factorization with a stationarity stop.

    Each half-step solves its convex subproblem to global optimality, so the
    objective is nonincreasing across half-steps.  Iteration stops once all
    stationarity residuals fall below ``kkt_tol`` (default
    ``1e-6 * ||A||_F``) or at ``max_iter`` sweeps.

    ``ridge`` adds ``0.5 * ridge * (||B||_F^2 + ||C||_F^2)`` to the
    objective (0 disables it); the stationarity stop then targets the
    penalized objective while ``objective_trace`` keeps reporting the plain
    reconstruction error.
    """
    A = check_matrix(A, "A", require_nonneg=True)
    K = check_rank(K, *A.shape)
    if ridge < 0:
        raise ValueError("ridge must be >= 0")
    Ad = to_dense(A)
    _, C = _init_factors(Ad, K, init, strict_positive=False)
    B = np.zeros((Ad.shape[0], K))
    tol = 1e-6 * np.sqrt(frobenius_norm_sq(Ad)) if kkt_tol is None else float(kkt_tol)
    trace = [nmf_objective(Ad, B, C)]
    stop = "max_iter"
    it = 0
    for it in range(1, max_iter + 1):
        B, C = _anls_half_steps(Ad, B, C, ridge, nnls_tol)
        trace.append(nmf_objective(Ad, B, C))
        if _stationarity_scalars(Ad, B, C, ridge) <= tol:
            stop = "kkt_tol"
            break
    return FactorPair(B=B, C=C, rank=K, objective_trace=trace,
                      iterations=it, stop_reason=stop, ridge=ridge)


def kkt_report(A, f: FactorPair) -> KktReport:
    """Stationarity diagnostics of the plain objective at a factor pair.

    Never raises on a singular Gram matrix: the factor-reconstruction checks
    are skipped (``None``) in that case, everything else is still reported.
    """
    Ad = to_dense(check_matrix(A, "A"))
    B, C = f.B, f.C
    if B.shape[0] != Ad.shape[0] or C.shape[1] != Ad.shape[1] or B.shape[1] != C.shape[0]:
        raise ValueError("kkt_report: factor shapes do not match A")
    CCt = C @ C.T
    BtB = B.T @ B
    gamma_B = B @ CCt - Ad @ C.T
    gamma_C_T = BtB @ C - B.T @ Ad

    def _recon(gram, target, product):
        # target ?= product @ inv(gram); relative Frobenius residual
        cond_bound = 1.0 / np.finfo(float).eps
        try:
            if np.linalg.cond(gram) > cond_bound:
                return None
            sol = np.linalg.solve(gram, product.T).T
        except np.linalg.LinAlgError:
            return None
        denom = max(np.sqrt(frobenius_norm_sq(target)), np.finfo(float).tiny)
        return float(np.sqrt(frobenius_norm_sq(sol - target)) / denom)

    return KktReport(
        gamma_B=gamma_B,
        gamma_C_T=gamma_C_T,
        comp_slack_B=float(np.max(np.abs(gamma_B * B), initial=0.0)),
        comp_slack_C=float(np.max(np.abs(gamma_C_T * C), initial=0.0)),
        dual_feas_B=float(max(0.0, -gamma_B.min(initial=0.0))),
        dual_feas_C=float(max(0.0, -gamma_C_T.min(initial=0.0))),
        recon_residual_B=_recon(CCt, B, Ad @ C.T + gamma_B),
        recon_residual_C=_recon(BtB, C.T, (B.T @ Ad + gamma_C_T).T),
    )
