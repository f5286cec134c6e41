"""Numerical tolerances used throughout the package.

All values target double precision at desk scale (n up to a few hundred).
"""

# Relative factorization residual (SVD and canonical-form reconstructions).
TAU_FACT = 1e-12

# Absolute Frobenius orthogonality residual accepted on inputs.
TAU_ORTH = 1e-8

# Phase clustering width: eigenphases within this of pi are classified as pi.
TAU_PHASE = 1e-9

# Skewness drift tolerated on tangent generators before re-skewing is refused.
TAU_SKEW = 1e-10

# Margin kept away from the injectivity boundary |r| = pi.
TAU_INJ = 1e-9

# Exp/log roundtrip residual.
TAU_ROUND = 1e-9

# Triangle-comparison slack floor.
TAU_SLACK = 1e-10

# Certificate slack floor (scaled by max(1, ||C||_F) at the call site).
TAU_CERT = 1e-9

# Relative threshold below which a singular value is treated as zero.
TAU_SING = 1e-12
