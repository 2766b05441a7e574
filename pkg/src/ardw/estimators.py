"""Least squares machinery for an observed series.

Computes the autoregressive coefficient estimate, residual set, serial
correlation estimate, noise variance estimate and the Durbin-Watson
statistic, plus the Yule-Walker variant whose variance identity makes the
h-statistic collapse to a closed form.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    DegenerateResiduals,
    NearZeroThetaP,
    SingularDesign,
    SingularToeplitz,
)

_COND_LIMIT = 1e14


def lag_matrix(x: np.ndarray, p: int) -> np.ndarray:
    """Rows are the lag vectors (X_j, X_{j-1}, ..., X_{j-p+1}) for j = 0..n-1,
    with zeros standing in for pre-sample indices."""
    n = x.shape[0] - 1
    L = np.zeros((n, p))
    for i in range(p):
        L[i:, i] = x[: n - i]
    return L


def ols_theta(
    x: np.ndarray, p: int, ridge: float = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    """Least squares estimate of the autoregressive coefficients.

    Returns (theta_hat, S) where S is the accumulated lag-vector Gram matrix.
    ridge > 0 adds ridge * I to S for degenerate inputs; the default keeps
    the estimator unbiased and raises SingularDesign instead.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[0] < p + 2:
        raise SingularDesign(f"series length {x.shape[0]} < p+2 = {p + 2}")
    L = lag_matrix(x, p)
    S = L.T @ L + ridge * np.eye(p)
    cond = np.linalg.cond(S)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise SingularDesign(f"design Gram matrix singular (cond ~ {cond:.3g})")
    rhs = L.T @ x[1:]
    theta_hat = np.linalg.solve(S, rhs)
    resid = np.linalg.norm(S @ theta_hat - rhs, np.inf)
    if resid > 1e-10 * max(np.linalg.norm(rhs, np.inf), 1.0):
        raise SingularDesign(f"normal equations residual too large: {resid:.3g}")
    return theta_hat, S


def residuals(x: np.ndarray, theta_hat: np.ndarray) -> np.ndarray:
    """Residual series with the convention that the first residual is X_0."""
    x = np.asarray(x, dtype=float)
    theta_hat = np.atleast_1d(np.asarray(theta_hat, dtype=float))
    L = lag_matrix(x, theta_hat.shape[0])
    eps = np.empty_like(x)
    eps[0] = x[0]
    eps[1:] = x[1:] - L @ theta_hat
    return eps


def ols_rho(eps: np.ndarray) -> float:
    """Lag-1 least squares coefficient of the residual series."""
    eps = np.asarray(eps, dtype=float)
    den = float(eps[:-1] @ eps[:-1])
    if den <= 0.0:
        raise DegenerateResiduals("zero energy in lagged residuals")
    return float(eps[1:] @ eps[:-1]) / den


def dw_statistic(eps: np.ndarray) -> float:
    """Durbin-Watson ratio; always in [0, 4]."""
    eps = np.asarray(eps, dtype=float)
    den = float(eps @ eps)
    if den <= 0.0:
        raise DegenerateResiduals("zero residual energy")
    d = np.diff(eps)
    return float(d @ d) / den


@dataclass(frozen=True)
class FitResult:
    """Everything the serial-correlation tests need from one series."""

    p: int
    n: int
    theta_hat: np.ndarray
    residuals: np.ndarray
    rho_hat: float
    sigma2_hat: float
    dw: float
    S_n: np.ndarray
    var_theta1_hat: float
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "theta_hat": self.theta_hat.tolist(),
            "rho_hat": self.rho_hat,
            "sigma2_hat": self.sigma2_hat,
            "dw": self.dw,
            "var_theta1_hat": self.var_theta1_hat,
            "warnings": list(self.warnings),
        }

    def to_json(self, path: str | Path | None = None) -> str:
        text = json.dumps(self.to_dict(), indent=2)
        if path is not None:
            Path(path).write_text(text)
        return text


def sigma2_hat(fit: FitResult) -> float:
    """Noise variance estimate with the serial-correlation correction factor.

    May be negative on short series; reported as-is (a warning is attached
    by fit()) since only the large-sample limit is guaranteed.
    """
    tp = fit.theta_hat[-1]
    if abs(tp) <= 1e-12:
        raise NearZeroThetaP("p-th coefficient estimate is numerically zero")
    mean_sq = float(fit.residuals @ fit.residuals) / fit.n
    return (1.0 - fit.rho_hat**2 / tp**2) * mean_sq


def fit(x: np.ndarray, p: int, ridge: float = 0.0) -> FitResult:
    """Full estimation pipeline for one observed series."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0] - 1
    theta_hat, S = ols_theta(x, p, ridge=ridge)
    eps = residuals(x, theta_hat)
    rho_hat = ols_rho(eps)
    dw = dw_statistic(eps)

    notes: list[str] = []
    tp = theta_hat[-1]
    if abs(tp) <= 1e-12:
        s2 = np.nan
        notes.append("near_zero_theta_p")
    else:
        mean_sq = float(eps @ eps) / n
        s2 = (1.0 - rho_hat**2 / tp**2) * mean_sq
        if s2 < 0.0:
            notes.append("negative_sigma2_hat")

    # variance of the first coefficient under the no-correlation hypothesis,
    # for the h-statistic: sigma2_0 * [S^{-1}]_{11}
    sigma2_0 = float(eps @ eps) / n
    var_theta1 = sigma2_0 * float(np.linalg.inv(S)[0, 0])

    return FitResult(
        p=p,
        n=n,
        theta_hat=theta_hat,
        residuals=eps,
        rho_hat=rho_hat,
        sigma2_hat=s2,
        dw=dw,
        S_n=S,
        var_theta1_hat=var_theta1,
        warnings=tuple(notes),
    )


def sample_autocov_toeplitz(x: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Toeplitz Gram matrix of raw lag products and its first-p lag vector."""
    x = np.asarray(x, dtype=float)
    s = np.array([float(x[h:] @ x[: x.shape[0] - h]) for h in range(p + 1)])
    idx = np.abs(np.subtract.outer(np.arange(p), np.arange(p)))
    return s[idx], s[1 : p + 1]


def yule_walker_fit(x: np.ndarray, p: int) -> tuple[np.ndarray, float]:
    """Yule-Walker coefficient estimate and the variance of its first entry.

    The variance estimate satisfies an exact algebraic identity:
    1 - n * var_theta1 equals the squared last coefficient.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0] - 1
    S, Pi = sample_autocov_toeplitz(x, p)
    cond = np.linalg.cond(S)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise SingularToeplitz(f"sample Toeplitz matrix singular (cond ~ {cond:.3g})")
    theta_yw = np.linalg.solve(S, Pi)
    s0 = S[0, 0]
    sigma2_yw = (s0 - float(Pi @ theta_yw)) / n
    var_theta1 = sigma2_yw * float(np.linalg.inv(S)[0, 0])
    return theta_yw, var_theta1


def read_series(path: str | Path) -> np.ndarray:
    """One numeric value per line, optional single header line."""
    lines = Path(path).read_text().strip().splitlines()
    if not lines:
        raise ValueError(f"empty series file: {path}")
    try:
        float(lines[0].split(",")[0])
        start = 0
    except ValueError:
        start = 1
    return np.array([float(ln.split(",")[0]) for ln in lines[start:]])
