"""
The arm, its sensor and one point of view
=========================================

A four-joint planar arm carries a small pinhole sensor. Many joint
configurations put the sensor at the same position and orientation; walking
along the kernel of the Jacobian traces that closed loop of configurations.
"""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spacediscovery import forward_pose, init_object, make_retina, pov_pose_spread, sample_pov, sense
from spacediscovery.kinematics import forward_pose_batch

m0 = np.array([0.1, -1.5, 2.2, -3.0])
print("sensor pose of m0:", forward_pose(m0))

# one loop of equivalent configurations, resampled to 100 members
pov, raw = sample_pov(m0, return_raw=True)
print(f"kernel walk: {len(raw)} steps, loop length {pov.loop_length:.2f} rad")
print(f"largest pose deviation among members: {pov_pose_spread(pov):.1e}")

# every member sees the same thing, whatever the light sources look like
rng = np.random.default_rng(0)
retina = make_retina(rng)
obj = init_object(rng)
s = np.array([sense(retina, forward_pose(m), obj.sources) for m in pov.members])
print("spread of sensations across members:", np.ptp(s, axis=0).max())

# draw a few members of the loop
fig, ax = plt.subplots(figsize=(5, 5))
for m in pov.members[::10]:
    a = np.cumsum(m[:3])
    pts = np.vstack([[0, 0], np.cumsum(np.column_stack([np.cos(a), np.sin(a)]), axis=0)])
    ax.plot(pts[:, 0], pts[:, 1], "-o", ms=3, lw=1)
ax.plot(*obj.sources.T, "k*", ms=6)
ax.set_aspect("equal")
ax.set_title("arm configurations sharing one sensor pose")
fig.savefig("pov_arms.svg")

# the same loop in joint space (first three joints)
tips = forward_pose_batch(pov.members)
print("tip positions all equal:", np.allclose(tips, tips[0], atol=1e-3))
