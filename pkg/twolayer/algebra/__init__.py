# twolayer/algebra/__init__.py
from .exppoly import ExpPoly, format_exppoly, parse_exppoly, t
from .models import AlgebraElement, SubalgebraSpec
from .brackets import adjoint, commutator, structure_subspaces
from .notation import format_element, parse_element
from .subalgebras import (
    SUBALGEBRAS,
    build_subalgebra,
    closure_summary,
    random_exppoly,
    sample_subalgebras,
    span_coordinates,
    subalgebra_closed,
)
