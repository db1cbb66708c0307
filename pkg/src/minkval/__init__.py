"""Complex Minkowski valuations on C^m.

Convex polytopes with lazy Minkowski sums, planar area measures and the
Minkowski problem, the complex difference and projection body operators,
and a property-checking harness with recovery of the parameter body.
"""
from .errors import (
    DegenerateHull,
    DimensionError,
    EmptyBody,
    GeometryError,
    InvalidGroupElement,
    NoSplit,
    NotClosable,
    NumericalError,
    RecoveryFailed,
    UnsupportedDimension,
)
from .geom import (
    ComplexStructure,
    LinearMap,
    Polytope,
    SupportEvaluator,
    apply_linear,
    complex_scale,
    convex_hull,
    hausdorff_distance,
    minkowski_sum,
    reflect,
    support,
    translate,
)
from .planar import (
    AreaMeasureS1,
    Polygon,
    area_measure,
    minkowski_inequality_gap,
    minkowski_reconstruct,
    mixed_area,
    steiner_point,
)
from .valuations import (
    ValuationOperator,
    complex_difference_body,
    complex_projection_body,
    det2_contravariant,
    det2_covariant,
    difference_body,
    mixed_volume_top,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
