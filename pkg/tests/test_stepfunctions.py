import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regsweep import StepFn, merge_times, step_from_csv, step_to_csv, sup_distance, total_variation


def step_scalar(times, values):
    return StepFn(np.asarray(times, float), np.asarray(values, float))


@st.composite
def step_functions(draw, max_breaks=8, dim=None):
    m = draw(st.integers(min_value=1, max_value=max_breaks))
    interior = sorted(
        set(
            draw(
                st.lists(
                    st.floats(0.01, 0.99, allow_nan=False), min_size=m - 1, max_size=m - 1
                )
            )
        )
    )
    times = [0.0, *interior, 1.0]
    n = dim if dim is not None else draw(st.integers(1, 3))
    values = draw(
        st.lists(
            st.lists(st.floats(-5, 5, allow_nan=False), min_size=n, max_size=n),
            min_size=len(times),
            max_size=len(times),
        )
    )
    return StepFn(np.asarray(times), np.asarray(values))


class TestEval:
    def test_plateau_lookup(self):
        f = step_scalar([0, 1], [0.0, 3.0])
        assert f.eval(0.5) == 0.0

    def test_right_endpoint(self):
        f = step_scalar([0, 1], [0.0, 3.0])
        assert f.eval(1.0) == 3.0

    def test_right_continuity_at_breakpoint(self):
        v = np.array([2.0, -1.0])
        f = StepFn([0.0, 0.5, 1.0], np.stack([0 * v, v, v]))
        assert np.array_equal(f.eval(0.5), v)

    def test_outside_interval_raises(self):
        f = step_scalar([0, 1], [0.0, 1.0])
        with pytest.raises(ValueError):
            f.eval(1.5)
        with pytest.raises(ValueError):
            f.left_limit(-0.1)

    def test_right_continuity_half_gap(self):
        f = step_scalar([0, 0.25, 0.7, 1.0], [1.0, -2.0, 0.5, 0.5])
        for j in range(f.times.size - 1):
            gap = f.times[j + 1] - f.times[j]
            assert f.eval(f.times[j] + gap / 2) == f.values[j]


class TestLeftLimit:
    def test_jump(self):
        f = step_scalar([0, 1], [0.0, 3.0])
        assert f.left_limit(1.0) == 0.0

    def test_at_start_equals_value(self):
        f = step_scalar([0, 0.5, 1], [7.0, 1.0, 2.0])
        assert f.left_limit(0.0) == f.eval(0.0) == 7.0

    def test_constant(self):
        f = StepFn.constant(4.5, 0, 1)
        for t in (0.0, 0.3, 1.0):
            assert f.left_limit(t) == 4.5


class TestVariation:
    def test_up_down(self):
        f = step_scalar([0, 0.3, 0.6, 1], [0.0, 1.0, 0.0, 0.0])
        assert total_variation(f).total == 2.0

    def test_constant_zero(self):
        assert total_variation(StepFn.constant([1.0, 2.0], 0, 1)).total == 0.0

    def test_breakpoint_division_sum(self):
        # successive plateaus 0, 1.5, 1.0, 1.2: jumps 1.5 + 0.5 + 0.2
        f = step_scalar([0, 0.25, 0.5, 0.75, 1], [0.0, 1.5, 1.0, 1.2, 1.2])
        assert total_variation(f).total == pytest.approx(2.2, abs=1e-15)

    def test_running_profile(self):
        f = step_scalar([0, 0.5, 1], [0.0, 1.0, 3.0])
        v = total_variation(f)
        assert v.running.values[0] == 0.0
        assert v.running.values[-1] == v.total == 3.0
        assert np.all(np.diff(v.running.values) >= 0)

    @settings(max_examples=40, deadline=None)
    @given(step_functions())
    def test_additivity_at_breakpoints(self, f):
        total = total_variation(f).total
        for s in f.times[1:-1]:
            left = total_variation(f.restrict(f.start, float(s))).total
            right = total_variation(f.restrict(float(s), f.end)).total
            assert left + right == pytest.approx(total, rel=1e-12, abs=1e-12)

    def test_lower_semicontinuity_witness(self):
        f = step_scalar([0, 0.2, 0.5, 1], [0.0, 2.0, -1.0, 0.5])
        cap = total_variation(f).total
        for k in (2, 8, 32, 128):
            fk = (1.0 - 1.0 / k) * f
            assert total_variation(fk).total <= cap
            assert sup_distance(fk, f) <= cap / k
        assert total_variation(f).total <= cap


class TestSupDistance:
    def test_identical(self):
        f = step_scalar([0, 0.4, 1], [1.0, 2.0, 2.0])
        assert sup_distance(f, f) == 0.0

    def test_indicator(self):
        f = StepFn.constant(0.0, 0, 1)
        g = step_scalar([0, 0.3, 1], [0.0, 2.0, 2.0])
        assert sup_distance(f, g) == 2.0

    @settings(max_examples=30, deadline=None)
    @given(step_functions(), step_functions())
    def test_grid_oracle(self, f, g):
        if f.dim != g.dim:
            g = StepFn(g.times, np.tile(g.values[:, :1], (1, f.dim)))
        exact = sup_distance(f, g)
        grid = np.unique(np.concatenate([merge_times(f, g), np.linspace(0, 1, 257)]))
        brute = max(
            float(np.linalg.norm(np.asarray(f.eval(t)) - np.asarray(g.eval(t)))) for t in grid
        )
        assert exact >= brute - 1e-12
        assert exact == pytest.approx(brute, abs=1e-12)


class TestMeshOps:
    def test_merge_is_union(self):
        f = step_scalar([0, 0.25, 1], [0, 1, 1])
        g = step_scalar([0, 0.5, 1], [0, 2, 2])
        assert np.array_equal(merge_times(f, g), [0, 0.25, 0.5, 1])

    def test_refine_preserves_values(self):
        f = step_scalar([0, 0.5, 1], [1.0, 4.0, 2.0])
        r = f.refine([0, 0.25, 0.5, 0.75, 1])
        for t in np.linspace(0, 1, 21):
            assert r.eval(t) == f.eval(t)

    def test_refine_rejects_dropped_breakpoints(self):
        f = step_scalar([0, 0.5, 1], [1.0, 4.0, 2.0])
        with pytest.raises(ValueError):
            f.refine([0, 0.25, 1])

    def test_restrict_keeps_endpoint_value(self):
        f = step_scalar([0, 0.25, 0.5, 1], [1.0, 2.0, 3.0, 4.0])
        r = f.restrict(0.25, 0.5)
        assert r.eval(0.25) == 2.0
        assert r.eval(0.5) == 3.0  # right value at the cut

    def test_immutable(self):
        f = step_scalar([0, 1], [1.0, 1.0])
        with pytest.raises(AttributeError):
            f.times = np.array([0.0, 2.0])
        with pytest.raises(ValueError):
            f.values[0] = 5.0

    def test_strictly_increasing_required(self):
        with pytest.raises(ValueError):
            StepFn([0.0, 0.5, 0.5, 1.0], [0.0, 1.0, 2.0, 3.0])


class TestAlgebra:
    def test_sub_on_merged_mesh(self):
        f = step_scalar([0, 0.5, 1], [1.0, 2.0, 2.0])
        g = step_scalar([0, 0.25, 1], [1.0, 1.0, 0.0])
        d = f - g
        assert np.array_equal(d.times, [0, 0.25, 0.5, 1])
        assert d.eval(0.3) == 0.0
        assert d.eval(0.6) == 1.0
        assert d.eval(1.0) == 2.0

    def test_norm_vector(self):
        f = StepFn([0, 1], [[3.0, 4.0], [0.0, 0.0]])
        assert f.norm().eval(0.5) == 5.0


class TestCsv:
    def test_roundtrip_vector(self):
        f = StepFn([0, 0.5, 1], [[0.1, -2.0], [1e-17, 3.0], [2.0, 2.0]])
        text = step_to_csv(f, labels=["a", "b"])
        g = step_from_csv(text, scalar=False)
        assert np.array_equal(f.times, g.times)
        assert np.array_equal(f.values, g.values)

    def test_header_order(self):
        f = StepFn([0, 1], [[1.0, 2.0], [3.0, 4.0]])
        first = step_to_csv(f).splitlines()[0]
        assert first == "t,v0,v1"
