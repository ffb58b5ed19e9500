"""Shared numerical tolerances.

Everything that compares floating-point points or norms goes through these
constants so the drift budget lives in one place.
"""

# Point-equality granularity on the unit sphere and on SO(3).
EPS_POINT = 1e-9

# Allowed |norm - 1| for a quaternion that has just been renormalized.
EPS_UNIT = 1e-12

# Matched-pair budget for multiset comparisons and the law-checking suites.
# Looser than EPS_POINT: a product of three points plus canonicalization
# compounds rounding error.
TOL_AXIOM = 1e-6

# Real-part preservation budget for conjugation.
TOL_RE = 1e-12

# A canonicalization is flagged as a near-tie when a second group image lies
# within TIE_FACTOR * EPS_POINT of the chosen representative without being
# EPS_POINT-equal to it.
TIE_FACTOR = 10.0

# Random sample points are rejected unless their group images are pairwise
# at least SEPARATION_FACTOR * EPS_POINT apart (keeps property trials off
# the singular set, which is tested separately with exact points).
SEPARATION_FACTOR = 100.0
