import numpy as np
import pytest

from spacediscovery.environment import (GridConfig, ObjectState, Spatial, StateChange, apply_change,
                                        exploration_schedule, grid_positions, init_object)


class TestObject:
    def test_init(self):
        a = init_object(np.random.default_rng(3))
        b = init_object(np.random.default_rng(3))
        np.testing.assert_array_equal(a.offsets, b.offsets)
        assert a.offsets.shape == (10, 2)
        np.testing.assert_array_equal(a.center, [0, 0])
        assert np.all(np.linalg.norm(a.offsets, axis=1) <= 4)

    def test_zero_translation(self, rng):
        obj = init_object(rng)
        moved = apply_change(obj, Spatial(np.zeros(2)))
        np.testing.assert_array_equal(moved.center, obj.center)
        np.testing.assert_array_equal(moved.offsets, obj.offsets)

    def test_translation_inverse(self, rng):
        obj = init_object(rng)
        back = apply_change(apply_change(obj, Spatial(np.array([1.0, 2.0]))), Spatial(np.array([-1.0, -2.0])))
        np.testing.assert_array_equal(back.center, obj.center)
        np.testing.assert_array_equal(back.sources, obj.sources)

    def test_state_change_keeps_center(self, rng):
        obj = apply_change(init_object(rng), Spatial(np.array([0.5, -0.25])))
        new = rng.uniform(-1, 1, (10, 2))
        changed = apply_change(obj, StateChange(new))
        np.testing.assert_array_equal(changed.center, obj.center)
        np.testing.assert_array_equal(changed.offsets, new)

    def test_round_trip(self, rng):
        obj = init_object(rng)
        back = ObjectState.from_dict(obj.to_dict())
        np.testing.assert_array_equal(back.offsets, obj.offsets)


class TestGrid:
    def test_two_by_two(self):
        pts = grid_positions(GridConfig(2, 12.0))
        assert {tuple(p) for p in pts.tolist()} == {(-6, -6), (6, -6), (-6, 6), (6, 6)}

    def test_default_spacing(self):
        g = GridConfig()
        assert g.spacing == pytest.approx(12 / 61)
        pts = grid_positions(g)
        assert len(pts) == 62 ** 2
        assert pts[1, 0] - pts[0, 0] == pytest.approx(0.19672, abs=1e-5)

    def test_invalid(self):
        with pytest.raises(ValueError):
            GridConfig(1)
        with pytest.raises(ValueError):
            GridConfig(4, 0.0)


class TestSchedule:
    def test_no_state_changes_visits_every_node(self, rng):
        g = GridConfig(9)
        sched = exploration_schedule(rng, g, 0.0)
        assert len(sched) == 81 and all(isinstance(c, Spatial) for c in sched)
        visited = np.cumsum([c.delta for c in sched], axis=0)
        pts = grid_positions(g)
        assert sorted(map(tuple, np.round(visited, 9).tolist())) == sorted(map(tuple, np.round(pts, 9).tolist()))
        # grid indices point at the node reached
        for c, v in zip(sched, visited):
            col, row = c.grid_index
            np.testing.assert_allclose(pts[row * 9 + col], v, atol=1e-12)

    def test_state_change_rate(self):
        g = GridConfig(62)
        sched = exploration_schedule(np.random.default_rng(0), g, 0.1)
        n_state = sum(isinstance(c, StateChange) for c in sched)
        n_spatial = sum(isinstance(c, Spatial) for c in sched)
        assert n_spatial == 3844
        # binomial(3844, 0.1): mean 384.4, sd 18.6
        assert abs(n_state - 384.4) < 4 * 18.6

    def test_deterministic(self):
        a = exploration_schedule(np.random.default_rng(9), GridConfig(7), 0.3)
        b = exploration_schedule(np.random.default_rng(9), GridConfig(7), 0.3)
        assert [type(c) for c in a] == [type(c) for c in b]
        for x, y in zip(a, b):
            if isinstance(x, Spatial):
                np.testing.assert_array_equal(x.delta, y.delta)
            else:
                np.testing.assert_array_equal(x.new_offsets, y.new_offsets)

    def test_invalid_probability(self, rng):
        with pytest.raises(ValueError):
            exploration_schedule(rng, GridConfig(3), 1.0)
