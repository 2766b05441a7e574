"""Trajectory generation for the AR(p) model with AR(1)-correlated noise.

A single documented PRNG (numpy PCG64 seeded through SeedSequence) guarantees
identical streams for identical seeds on every platform. Replication seeds
for parallel studies are derived from (master_seed, context indices) through
SeedSequence spawning keys, so results never depend on scheduling.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.signal import lfilter

from .limit_theory import ModelParams, check_stability

_FAMILIES = ("gaussian", "uniform", "student_t", "rademacher")


@dataclass(frozen=True)
class NoiseSpec:
    """Innovation family, always centered and scaled to variance sigma2.

    student_t requires df > 4: the asymptotic normality results need a
    finite fourth moment.
    """

    family: str = "gaussian"
    sigma2: float = 1.0
    df: float = 5.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown noise family {self.family!r}")
        if not (self.sigma2 > 0.0):
            raise ValueError("sigma2 must be > 0")
        if self.family == "student_t" and not (self.df > 4.0):
            raise ValueError("student_t noise needs df > 4 (finite 4th moment)")

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Centered innovations with variance exactly sigma2."""
        s = np.sqrt(self.sigma2)
        if self.family == "gaussian":
            return s * rng.standard_normal(size)
        if self.family == "uniform":
            a = np.sqrt(3.0 * self.sigma2)
            return rng.uniform(-a, a, size)
        if self.family == "student_t":
            scale = s / np.sqrt(self.df / (self.df - 2.0))
            return scale * rng.standard_t(self.df, size)
        return s * (2.0 * rng.integers(0, 2, size) - 1.0)


@dataclass(frozen=True)
class Trajectory:
    """Simulated sample path with full seed provenance.

    x and eps have length n+1 (indices 0..n); v holds the innovations
    V_0..V_n where V_0 only feeds the initial noise value.
    """

    x: np.ndarray
    eps: np.ndarray
    v: np.ndarray
    params: ModelParams
    seed: int
    burn_in: int = 0

    @property
    def n(self) -> int:
        return self.x.shape[0] - 1

    def to_csv(self, path: str | Path) -> None:
        """Series to CSV plus a JSON sidecar with parameters and seed.

        17 significant digits make the round-trip bit-exact.
        """
        path = Path(path)
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["x", "eps", "v"])
            for xi, ei, vi in zip(self.x, self.eps, self.v):
                w.writerow([f"{xi:.17g}", f"{ei:.17g}", f"{vi:.17g}"])
        sidecar = {
            "p": self.params.p,
            "theta": self.params.theta.tolist(),
            "rho": self.params.rho,
            "sigma2": self.params.sigma2,
            "seed": self.seed,
            "burn_in": self.burn_in,
        }
        path.with_suffix(path.suffix + ".json").write_text(
            json.dumps(sidecar, indent=2)
        )

    @classmethod
    def from_csv(cls, path: str | Path) -> "Trajectory":
        path = Path(path)
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
        data = np.array(rows[1:], dtype=float)
        meta = json.loads(path.with_suffix(path.suffix + ".json").read_text())
        params = ModelParams(
            p=meta["p"], theta=np.array(meta["theta"]), rho=meta["rho"],
            sigma2=meta["sigma2"],
        )
        return cls(
            x=data[:, 0], eps=data[:, 1], v=data[:, 2],
            params=params, seed=meta["seed"], burn_in=meta["burn_in"],
        )


def derive_rng(master_seed: int, *context: int) -> np.random.Generator:
    """Deterministic per-task generator from a master seed and context indices."""
    return np.random.default_rng(np.random.SeedSequence((master_seed, *context)))


def simulate(
    params: ModelParams,
    n: int,
    noise: NoiseSpec | None = None,
    seed: int | tuple = 0,
    burn_in: int = 0,
) -> Trajectory:
    """Generate X_0..X_n under the model recursion.

    Pre-sample observations are zero and X_0 equals the initial noise value.
    With burn_in = 0 the noise chain starts stationary (eps_0 = V_0/sqrt(1-rho^2));
    with burn_in > 0 the noise chain alone is warmed up for burn_in steps, so
    the observation recursion still holds exactly at every reported index.
    """
    check_stability(params)
    if n < params.p + 2:
        raise ValueError(f"need n >= p+2 = {params.p + 2}")
    if noise is None:
        noise = NoiseSpec(sigma2=params.sigma2)
    rng = derive_rng(*seed) if isinstance(seed, tuple) else derive_rng(seed)
    rho, theta, p = params.rho, params.theta, params.p

    if burn_in > 0:
        warm = noise.draw(rng, burn_in)
        e0 = warm[0] / np.sqrt(1.0 - rho * rho)
        for w in warm[1:]:
            e0 = rho * e0 + w
        v = noise.draw(rng, n + 1)
        eps0 = rho * e0 + v[0]
    else:
        v = noise.draw(rng, n + 1)
        eps0 = v[0] / np.sqrt(1.0 - rho * rho)

    eps = np.empty(n + 1)
    eps[0] = eps0
    eps[1:], _ = lfilter([1.0], [1.0, -rho], v[1:], zi=np.array([rho * eps0]))
    # observation recursion with zero pre-sample values, run in C
    ar_poly = np.concatenate(([1.0], -theta))
    x = lfilter([1.0], ar_poly, eps)
    return Trajectory(x=x, eps=eps, v=v, params=params, seed=seed, burn_in=burn_in)
