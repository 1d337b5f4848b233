"""
From motor distances to a flat map
==================================

Distances between points of view come from the motor space alone. Embedding
them in the plane gives a distorted picture; equalizing the distances of
pairs that were reached by the same object displacement straightens it out.
"""
import numpy as np

from spacediscovery import (GridConfig, affine_alignment_residual, cca_fit, equality_sets, exploration_schedule,
                            explore, init_object, make_retina, pairwise_distances, regularize_metric)
from spacediscovery.pipeline import origin_grid_index, rng_streams

rngs = rng_streams(0)
retina = make_retina(rngs["retina"])
obj = init_object(rngs["object"])
grid = GridConfig(21)
atlas, _ = explore(retina, obj, exploration_schedule(rngs["schedule"], grid, 0.1), [0.1, -1.5, 2.2, -3.0],
                   rng=rngs["compensation"], origin_grid_index=origin_grid_index(grid), spacing=grid.spacing)

D = pairwise_distances(atlas)
truth = atlas.pose_tags[:, :2]

E0 = cca_fit(D, 2)
print(f"plain embedding, affine residual: {affine_alignment_residual(E0, truth):.3f}")

sets = equality_sets(atlas)
W, E, diag = regularize_metric(D, sets, 2)
print(f"regularized embedding, affine residual: {affine_alignment_residual(E, truth):.1e}")
for d in diag[:4]:
    print(f"  iteration {d['iteration']}: mean within-group CV {d['mean_cv']:.4f}")
