"""Convergence diagnostics behind the test calibration.

clt_diagnostic: the covariance of the sqrt(n)-scaled estimation errors must
approach the closed-form asymptotic covariance — this is what licenses the
chi-square calibration of the test statistic.

rate_diagnostic: along a single path, the log-averaged outer product of the
coefficient errors tracks the asymptotic covariance (quadratic strong law)
and the iterated-logarithm normalization of the squared error stays bounded.
"""

import numpy as np

import ardw

prm = ardw.ModelParams(p=1, theta=np.array([0.5]), rho=0.3)

clt = ardw.clt_diagnostic(prm, n=2000, reps=3000, seed=0)
print("central limit theorem check (n = 2000, 3000 replications):")
print(f"  relative Frobenius error, joint covariance: "
      f"{clt['rel_frobenius_joint']:.3f}")
print(f"  relative error, scaled DW variance:         "
      f"{clt['rel_error_var_dw']:.3f}")

# single-path convergence of the quadratic strong law is logarithmically
# slow, so the relative error declines but stays visibly nonzero
rate = ardw.rate_diagnostic(prm, n_max=100_000, seed=4)
print(f"\nalmost-sure rates along one path "
      f"(trace of asymptotic covariance = {rate['trace_sigma_theta']:.4f}):")
print("       n   quadratic-law rel err   LIL normalization")
for row in rate["checkpoints"]:
    print(f"{row['n']:8d}   {row['qsl_rel_error']:21.3f}"
          f"   {row['lil_normalized']:17.4f}")
