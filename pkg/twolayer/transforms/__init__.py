# twolayer/transforms/__init__.py
from .functions import TabulatedFunction, TimeFunction, as_time_function, second_derivative_vanishes
from .models import DISCRETE_DICTIONARY, DiscreteSymmetry, PointTransform
from .group import (
    apply_discrete,
    apply_to_solution,
    compose,
    discrete_as_point,
    identity,
    inverse,
    pull_back_coordinates,
    random_transform,
)
