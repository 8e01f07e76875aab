"""Moduli spaces of line arrangements: presentations, reduction and classification."""

from .build import (ModuliPresentation, build, build_reduced, check_realization, realize,
                    reduce, reduce_constraint)
from .classify import (Classification, Component, certify_factor, classify,
                       classify_arrangement, conjugation_count)
from .plan import (ConstructionPlan, PlanError, Step, auto_plan, parse_plan, plan_candidates,
                   shipped_plan)
from .solve import NotZeroDimensional, PointOrbit, finite_points

__all__ = [
    "Classification", "Component", "ConstructionPlan", "ModuliPresentation",
    "NotZeroDimensional", "PlanError", "PointOrbit", "Step", "auto_plan", "build",
    "build_reduced", "certify_factor", "check_realization", "classify", "classify_arrangement",
    "conjugation_count", "finite_points", "parse_plan", "plan_candidates", "realize", "reduce",
    "reduce_constraint", "shipped_plan",
]
