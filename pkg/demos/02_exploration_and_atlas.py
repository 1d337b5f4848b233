"""
Exploring with compensation
===========================

The object in front of the sensor is moved across a grid, and sometimes its
lights are rearranged. The agent tries to cancel each change by moving the
arm. Only cancellable changes (displacements within reach) add a point of
view to the atlas. A coarse grid keeps this quick.
"""
from collections import Counter

import numpy as np

from spacediscovery import GridConfig, exploration_schedule, explore, init_object, make_retina
from spacediscovery.pipeline import origin_grid_index, rng_streams

rngs = rng_streams(0)
retina = make_retina(rngs["retina"])
obj = init_object(rngs["object"])
grid = GridConfig(21)
schedule = exploration_schedule(rngs["schedule"], grid, 0.1)

m0 = np.array([0.1, -1.5, 2.2, -3.0])
atlas, episodes = explore(retina, obj, schedule, m0, rng=rngs["compensation"],
                          origin_grid_index=origin_grid_index(grid), spacing=grid.spacing)

print(f"{len(schedule)} changes, atlas of {len(atlas)} points of view")
print(Counter((e.kind, e.outcome.success) for e in episodes))

# rearranging the lights is never cancelled
assert not any(e.outcome.success for e in episodes if e.kind == "state")

# accepted sensor positions fill the annulus 1 <= r <= 3
r = np.hypot(*atlas.pose_tags[:, :2].T)
print(f"tip radius range: {r.min():.2f} .. {r.max():.2f}")
