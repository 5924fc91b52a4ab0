"""Numeric tolerance policy used across the package.

All geometric identity checks use TAU_GEOM scaled by the magnitude of the
inputs; rank/affine-independence tests use TAU_RANK; angle classification
uses TAU_ANGLE; verifier ratios get the absolute slack TAU_VERIFY.
"""

# Relative tolerance for geometric identities (scaled by input magnitude).
TAU_GEOM = 1e-9

# Rank test threshold for affine independence (relative singular value).
TAU_RANK = 1e-12

# Angle classification slack in radians.
TAU_ANGLE = 1e-10

# Absolute slack on verifier ratios (two solves, each ~1e-9 accurate).
TAU_VERIFY = 1e-7


def geom_tol(scale: float) -> float:
    """Absolute tolerance for quantities of the given magnitude."""
    return TAU_GEOM * max(1.0, abs(scale))
