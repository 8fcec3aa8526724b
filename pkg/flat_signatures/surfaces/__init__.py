from .gluing import (
    conjugate_rep,
    cycle_boundaries,
    direct_sum_rep,
    glue,
    involution_rep,
    negate_boundaries,
    reorder_boundaries,
    swap_boundaries,
)
from .models import (
    GroupShape,
    Provenance,
    Representation,
    SurfacePresentation,
    check_relator,
    presentation,
    relator_value,
    resolve_classes,
)
from .random import (
    random_element,
    random_elliptic,
    random_representation,
    random_unitary_matrix,
    random_unitary_representation,
)

__all__ = [
    "conjugate_rep",
    "cycle_boundaries",
    "direct_sum_rep",
    "glue",
    "involution_rep",
    "negate_boundaries",
    "reorder_boundaries",
    "swap_boundaries",
    "GroupShape",
    "Provenance",
    "Representation",
    "SurfacePresentation",
    "check_relator",
    "presentation",
    "relator_value",
    "resolve_classes",
    "random_element",
    "random_elliptic",
    "random_representation",
    "random_unitary_matrix",
    "random_unitary_representation",
]
