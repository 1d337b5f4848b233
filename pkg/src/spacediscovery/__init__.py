"""Discovering the spatial structure of a sensor from compensable sensorimotor experience."""
from .cca import CcaParams, cca_fit, classical_scaling
from .compensation import SpatialAtlas, compensate, explore
from .config import ExperimentConfig
from .environment import (GridConfig, ObjectState, Spatial, StateChange, apply_change, exploration_schedule,
                          grid_positions, init_object)
from .kinematics import forward_pose, jacobian, kernel_direction, motor_distance
from .metric import embedding_distances, hausdorff_distance, pairwise_distances
from .optics import make_retina, project_source, sense
from .pipeline import run_pipeline
from .pov import PointOfView, pov_pose_spread, sample_pov
from .reaching import build_graph, motor_path, shortest_path
from .regularize import affine_alignment_residual, equality_sets, regularize_metric
from .simplex import SimplexOptions, minimize_simplex

__version__ = "0.1.0"
