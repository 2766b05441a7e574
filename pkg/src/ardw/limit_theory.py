"""Closed-form limiting objects for a stable AR(p) process driven by AR(1) noise.

Everything here is a deterministic function of the true parameters
(p, theta, rho): the limiting value of the least squares estimator of theta,
the limiting serial correlation and Durbin-Watson values, and the asymptotic
covariance structure of the whole estimation machinery. An independent
fixed-point (discrete Lyapunov) oracle for the normalized autocovariances is
provided so that the linear-system route can be cross-validated.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadVariance,
    NoConvergence,
    NotPositiveDefinite,
    SingularB,
    UnstableRho,
    UnstableTheta,
    ZeroTheta,
)

#: condition number above which linear solves emit a warning
ILL_CONDITION_THRESHOLD = 1e12

#: |theta*_p| below which the joint covariance matrix is flagged singular
THETA_STAR_P_SINGULARITY_TOL = 1e-8


@dataclass(frozen=True)
class ModelParams:
    """True parameters of the AR(p) model with AR(1)-correlated noise.

    The stability region is open: ||theta||_1 < 1 and |rho| < 1 strictly.
    """

    p: int
    theta: np.ndarray
    rho: float
    sigma2: float = 1.0

    def __post_init__(self):
        theta = np.atleast_1d(np.asarray(self.theta, dtype=float))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        if theta.ndim != 1 or theta.shape[0] != self.p or self.p < 1:
            raise ValueError(f"theta must be a vector of length p={self.p}")


def check_stability(params: ModelParams) -> None:
    """Validate the open stability region and basic parameter sanity."""
    if not np.all(np.isfinite(params.theta)) or not np.isfinite(params.rho):
        raise ValueError("parameters must be finite")
    if np.linalg.norm(params.theta, 1) >= 1.0:
        raise UnstableTheta(
            f"||theta||_1 = {np.linalg.norm(params.theta, 1):.6g} >= 1"
        )
    if abs(params.rho) >= 1.0:
        raise UnstableRho(f"|rho| = {abs(params.rho):.6g} >= 1")
    if np.all(params.theta == 0.0):
        raise ZeroTheta("theta must be a nonzero vector")
    if not (params.sigma2 > 0.0):
        raise BadVariance(f"sigma2 = {params.sigma2:.6g} must be > 0")


def beta_vector(params: ModelParams) -> np.ndarray:
    """Combined coefficient vector: (theta_1 + rho, theta_2 - theta_1 rho, ...)."""
    check_stability(params)
    theta, rho = params.theta, params.rho
    beta = theta.copy()
    beta[0] += rho
    beta[1:] -= rho * theta[:-1]
    return beta


def alpha_scalar(params: ModelParams) -> float:
    """Normalization 1 / (1 - (theta_p rho)^2), finite on the stability region."""
    check_stability(params)
    tpr = params.theta[-1] * params.rho
    return 1.0 / ((1.0 - tpr) * (1.0 + tpr))


def _system_matrix(beta: np.ndarray, tail: float, p: int) -> np.ndarray:
    """Assemble the (p+2)-order linear system matrix from the autocovariance
    recursion lam_d - sum_i beta_i lam_|d-i| + tail * lam_|d-p-1| = delta_d."""
    m = p + 2
    B = np.zeros((m, m))
    for d in range(m):
        B[d, d] += 1.0
        for i in range(1, p + 1):
            B[d, abs(d - i)] -= beta[i - 1]
        B[d, abs(d - p - 1)] += tail
    return B


def build_B(params: ModelParams) -> np.ndarray:
    """Matrix of the (p+2)-order linear system whose solution holds the
    normalized autocovariances of the process at lags 0..p+1."""
    beta = beta_vector(params)
    tpr = params.theta[-1] * params.rho
    B = _system_matrix(beta, tpr, params.p)
    cond = np.linalg.cond(B)
    if not np.isfinite(cond) or cond > 1.0 / np.finfo(float).eps:
        raise SingularB(f"system matrix numerically singular (cond ~ {cond:.3g})")
    return B


def build_B_parts(params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """Decomposition B = B1 + rho * B2 with B1 the rho-free part."""
    check_stability(params)
    theta, p = params.theta, params.p
    B1 = _system_matrix(theta, 0.0, p)
    # contribution linear in rho: beta_i picks up -theta_{i-1} (theta_0 = -1
    # by convention) and the tail coefficient is theta_p
    theta_shift = np.concatenate(([-1.0], theta[:-1]))
    B2 = -_system_matrix(theta_shift, -theta[-1], p)
    np.fill_diagonal(B2, B2.diagonal() + 1.0)
    return B1, B2


def solve_lambda(B: np.ndarray) -> np.ndarray:
    """Solve B lam = e for the normalized autocovariance vector lam_0..lam_{p+1}."""
    m = B.shape[0]
    cond = np.linalg.cond(B)
    if not np.isfinite(cond) or cond > 1.0 / np.finfo(float).eps:
        raise SingularB(f"system matrix numerically singular (cond ~ {cond:.3g})")
    if cond > ILL_CONDITION_THRESHOLD:
        warnings.warn(
            f"autocovariance system ill-conditioned (cond ~ {cond:.3g})",
            RuntimeWarning,
        )
    e = np.zeros(m)
    e[0] = 1.0
    lam = np.linalg.solve(B, e)
    resid = np.linalg.norm(B @ lam - e, np.inf)
    if resid > 1e-10 * max(np.linalg.norm(lam, np.inf), 1.0):
        raise SingularB(f"solve residual too large: {resid:.3g}")
    return lam


def toeplitz_delta(lam: np.ndarray, m: int) -> np.ndarray:
    """Symmetric Toeplitz matrix of order m built from lam_0..lam_{m-1}.

    Positive definiteness is verified; failure signals an inconsistent
    autocovariance vector upstream.
    """
    if m > lam.shape[0]:
        raise ValueError(f"need at least {m} autocovariance values, got {lam.shape[0]}")
    idx = np.abs(np.subtract.outer(np.arange(m), np.arange(m)))
    delta = lam[idx]
    eigmin = np.linalg.eigvalsh(delta)[0]
    if eigmin <= 0.0:
        raise NotPositiveDefinite(
            f"Toeplitz autocovariance matrix has min eigenvalue {eigmin:.3g}"
        )
    return delta


def companion_matrix(params: ModelParams) -> np.ndarray:
    """Companion form of the combined (p+1)-order recursion on the observations."""
    beta = beta_vector(params)
    p = params.p
    C = np.zeros((p + 1, p + 1))
    C[0, :p] = beta
    C[0, p] = -params.theta[-1] * params.rho
    C[1:, :-1] = np.eye(p)
    return C


def spectral_radius(M: np.ndarray, tol: float = 1e-12, max_iter: int = 10**5) -> float:
    """Spectral radius by power iteration with an eigenvalue fallback.

    Power iteration can stall when the dominant eigenvalues form a complex
    pair; in that case the exact eigenvalues of the small matrix are used.
    """
    n = M.shape[0]
    v = np.full(n, 1.0 / np.sqrt(n))
    prev = 0.0
    for _ in range(max_iter):
        w = M @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(nw - prev) <= tol * max(nw, 1.0):
            return nw
        prev = nw
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def lyapunov_lambda_oracle(params: ModelParams, max_lag: int) -> np.ndarray:
    """Normalized autocovariances via the stationary covariance of the
    companion-form recursion, by fixed-point iteration.

    Independent of the linear-system route: iterates
    Sigma <- C Sigma C' + e e' to stationarity and reads lag 0..p off the
    first row, extending to higher lags through the scalar recursion.
    """
    if max_lag < params.p + 1:
        raise ValueError(f"max_lag must be >= p+1 = {params.p + 1}")
    C = companion_matrix(params)
    m = C.shape[0]
    Q = np.zeros((m, m))
    Q[0, 0] = 1.0  # unit-variance innovations: result is sigma2-free
    Sigma = Q.copy()
    for _ in range(10**6):
        nxt = C @ Sigma @ C.T + Q
        if np.max(np.abs(nxt - Sigma)) < 1e-14 * max(1.0, np.max(np.abs(nxt))):
            Sigma = nxt
            break
        Sigma = nxt
    else:
        raise NoConvergence("stationary covariance iteration hit the cap")
    lam = np.empty(max_lag + 1)
    lam[: m] = Sigma[0, :]
    beta = beta_vector(params)
    tail = params.theta[-1] * params.rho
    for d in range(m, max_lag + 1):
        lam[d] = beta @ lam[d - 1 : d - 1 - params.p : -1] - tail * lam[d - params.p - 1]
    return lam


@dataclass(frozen=True)
class LimitSummary:
    """Every closed-form limiting object, mutually consistent by construction."""

    params: ModelParams
    alpha: float
    beta: np.ndarray
    B: np.ndarray
    Lambda: np.ndarray
    Delta_p: np.ndarray
    Delta_p1: np.ndarray
    theta_star: np.ndarray
    rho_star: float
    d_star: float
    Sigma_theta: np.ndarray
    P: np.ndarray
    Gamma: np.ndarray
    sigma2_rho: float
    sigma2_D: float
    C_A: np.ndarray
    gamma_singular: bool
    cond_B: float = field(default=np.nan)

    def to_dict(self) -> dict:
        """JSON-ready representation."""
        return {
            "p": self.params.p,
            "theta": self.params.theta.tolist(),
            "rho": self.params.rho,
            "alpha": self.alpha,
            "beta": self.beta.tolist(),
            "Lambda": self.Lambda.tolist(),
            "theta_star": self.theta_star.tolist(),
            "rho_star": self.rho_star,
            "d_star": self.d_star,
            "Sigma_theta": self.Sigma_theta.tolist(),
            "Gamma": self.Gamma.tolist(),
            "sigma2_rho": self.sigma2_rho,
            "sigma2_D": self.sigma2_D,
            "gamma_singular": self.gamma_singular,
        }


def limit_summary(params: ModelParams) -> LimitSummary:
    """Assemble all limiting objects from (p, theta, rho).

    The last-coordinate asymptotic variance of the serial correlation
    estimator is computed twice (as the corner of the joint covariance and
    through its explicit expansion) and the two must agree.
    """
    p = params.p
    alpha = alpha_scalar(params)
    beta = beta_vector(params)
    tpr = params.theta[-1] * params.rho

    B = build_B(params)
    lam = solve_lambda(B)
    Delta_p = toeplitz_delta(lam, p)
    Delta_p1 = toeplitz_delta(lam, p + 1)

    J = np.fliplr(np.eye(p))
    K = np.eye(p) - tpr * J
    theta_star = alpha * (K @ beta)
    rho_star = tpr * theta_star[-1]
    d_star = 2.0 * (1.0 - rho_star)

    Delta_p_inv = np.linalg.inv(Delta_p)
    Sigma_theta = alpha**2 * (K @ Delta_p_inv @ K)

    e_p = np.zeros(p)
    e_p[0] = 1.0
    P_B = alpha * (K @ Delta_p_inv)
    P_L = J @ K @ (alpha * tpr * (Delta_p_inv @ e_p) + theta_star[-1] * beta)
    phi = -theta_star[-1] / alpha
    P = np.zeros((p + 1, p + 1))
    P[:p, :p] = P_B
    P[p, :p] = P_L
    P[p, p] = phi

    Gamma = P @ Delta_p1 @ P.T
    sigma2_rho = Gamma[p, p]

    lam_p1 = lam[1 : p + 1]
    sigma2_rho_explicit = (
        P_L @ Delta_p @ P_L
        - 2.0 * (theta_star[-1] / alpha) * (lam_p1 @ (J @ P_L))
        + (theta_star[-1] / alpha) ** 2 * lam[0]
    )
    rel = abs(sigma2_rho - sigma2_rho_explicit) / max(abs(sigma2_rho), 1e-30)
    if rel > 1e-9:
        raise NotPositiveDefinite(
            f"two serial-correlation variance routes disagree (rel {rel:.3g})"
        )

    C_A = companion_matrix(params)
    return LimitSummary(
        params=params,
        alpha=alpha,
        beta=beta,
        B=B,
        Lambda=lam,
        Delta_p=Delta_p,
        Delta_p1=Delta_p1,
        theta_star=theta_star,
        rho_star=rho_star,
        d_star=d_star,
        Sigma_theta=Sigma_theta,
        P=P,
        Gamma=Gamma,
        sigma2_rho=sigma2_rho,
        sigma2_D=4.0 * sigma2_rho,
        C_A=C_A,
        gamma_singular=bool(abs(theta_star[-1]) < THETA_STAR_P_SINGULARITY_TOL),
        cond_B=np.linalg.cond(B),
    )
