"""Prox-regular sets: projections, reach, and the interior condition.

Shows the set catalog at work: exact nearest points on nonconvex sets,
the sampling falsifier for the reach radius, and why the pair of tangent
discs (a cusp) fails the uniform non-empty-interior condition that the
bounded-variation mechanism needs.
"""

import numpy as np

from regsweep.proxgeom import (
    Ball,
    BallComplement,
    Crescent,
    CuspPair,
    interior_cone_equiv_check,
    prox_regularity_check,
    segment_distance_check,
)

# complement of the open unit disc: 1-prox-regular, projections radial
hole = BallComplement([0.0, 0.0], 1.0)
y = np.array([0.3, 0.4])
print("project", y, "->", hole.project(y), "(radial)")
print("segment distance defect:", segment_distance_check(hole, [0.6, 0.0]))

# the reach is exactly 1: the sampler passes at 1.0 and finds a witness at 1.5
ok = prox_regularity_check(hole, 1.0, probes=150, seed=1)
bad = prox_regularity_check(hole, 1.5, probes=150, seed=1)
print(f"reach 1.0: passed={ok.passed}  (worst defect {ok.worst_reach_defect:.1e})")
print(f"reach 1.5: passed={bad.passed}  witness={np.round(bad.violation['probe'], 3)}")

# a lune: disc minus overlapping open disc, corners where the circles cross
moon = Crescent([0.0, 0.0], 1.0, [1.2, 0.0], 0.8, r=0.35)
print("lune corners:", [np.round(c, 3) for c in moon.special_points()])
print("lune reach 0.35 passes:", prox_regularity_check(moon, 0.35, probes=150, seed=2).passed)

# interior condition: ball and lune admit inner-ball witnesses, the tangent
# disc pair does not (no ball of fixed radius fits near the cusp tip)
for name, s, r in (
    ("ball      ", Ball([0, 0], 1.0, r=1.0), 1.0),
    ("lune      ", moon, 0.35),
    ("cusp pair ", CuspPair(1.0), 1.0),
):
    v = interior_cone_equiv_check(s, rho=r / 25.0, R=4.0, r=r, seed=3)
    print(
        f"{name} rho={r / 25:.3f}: ball condition {'PASS' if v.e4b_pass else 'FAIL'}, "
        f"cone condition {'PASS' if v.cone_pass else 'FAIL'}, agree={v.agree}"
    )

tip_witness = CuspPair(1.0).interior_witness(np.zeros(2), 0.05)
print(
    "closest admissible inner-ball center near the cusp tip:",
    np.round(tip_witness, 4),
    "(too far: the ball condition fails for every rho)",
)
