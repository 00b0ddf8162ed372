"""Characteristic-p singularity invariants of O^q-modules: q-expansions, Hasse
differential ideals, eta and q-order, permissible centers, blowup-chart
transforms and q-differential collections."""

from .errors import (DomainError, InternalConsistencyError, NotPermissibleError, ParseError,
                     QsingError, UnsupportedFragmentError, UsageError)
from .ffpoly import FieldScalar, Polynomial, QExpansion, Ring, q_expand, strip_q_power, substitute, translate
from .ideals import INF, Ideal, PointSpec
from .parse import parse_point, parse_poly
from .qmod import QModule, eta_at, normal_form, q_order_at

__version__ = "0.1.0"
