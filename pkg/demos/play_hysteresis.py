"""Classical hysteresis: the catching-up recursion on a fixed interval.

With a convex constraint the scheme reduces to the scalar play operator.
Runs the catalog scenario, checks the output against the independent play
recursion, and draws the hysteresis staircase.
"""

from pathlib import Path

import numpy as np

from regsweep.harness import get_scenario, play_recursion, run
from regsweep.harness.config import build_problem
from regsweep.harness.svgplot import polyline_svg
from regsweep.sweeper import catching_up

out_dir = Path(__file__).resolve().parent / "out"
record = run("play1d", out_dir)
for exp in record.experiments:
    print(f"{exp.kind}: {exp.status}", {k: v for k, v in exp.metrics.items() if k != "case"})

problem = build_problem(get_scenario("play1d"))
solution = catching_up(problem)
u_vals = problem.u.values[:, 0]
oracle = play_recursion(u_vals, -1.0, 1.0, float(u_vals[0] - problem.x0[0]))
dev = float(np.max(np.abs(solution.xi.values[:, 0] - oracle)))
print(f"deviation from the independent play recursion over {u_vals.size - 1} steps: {dev:.2e}")

# hysteresis loop: input on the x-axis, offset on the y-axis
sl = slice(0, 400)
svg = polyline_svg(
    [("offset vs input", u_vals[sl].tolist(), solution.xi.values[sl, 0].tolist())],
    title="play operator staircase",
    xlabel="input",
    kind="line",
)
path = out_dir / "play_staircase.svg"
path.write_text(svg)
print("staircase written to", path)
