"""Rigorous interval arithmetic with directed rounding.

Intervals over binary64, binary32 or arbitrary-precision endpoints, with
elementary functions, exact text persistence, boxes, forward-mode automatic
differentiation and verified root finding.

>>> from moore import Interval, sin
>>> x = Interval(1, 2) * Interval(-3, 4)
>>> (x.lo, x.hi)
(-6.0, 8.0)
"""

from .autodiff import ADMulti, ADScalar, ADValue, Gradient, adt, adtnf, format_gradient
from .bigfloat import BigFloat
from .core import (Interval, abs_, arith, arith_mixed, contains, extended_div, hull, interior, intersect,
                   is_empty, mag, make, midpoint, mig, pown, radius, sqr, subset, whole, width)
from .endpoints import (BINARY32, BINARY64, DOWN, UP, Direction, EndpointKind, RoundingGuard, UpRounding,
                        bigfloat, dir_arith, exact_convertible, kind_of, parse_kind, promote)
from .errors import (DimensionMismatchError, EmptyIntervalError, InvalidExtendedFormError,
                     InvalidIntervalError, MooreError, NoActiveGuardError, NoCommonKindError, ParseError,
                     RaggedRowsError, ZeroDenominatorError)
from .expr import Expr, compile_expr, evaluate
from .functions import (acos, acosh, asin, asinh, atan, atanh, cos, cos_pi, cosh, exp, fn_enclosure, log,
                        pi_enclosure, pi_interval, reduce_argument, sin, sinh, sqrt, tan, tanh)
from .linalg import (Box, BoxMatrix, box_arith, dot, format_box, format_matrix, matmul, matvec, parse_box,
                     parse_matrix, scale, tr, transpose)
from .roots import (LebesgueGrid, NewtonMode, PolyInterval, RootEnclosure, RootStatus, Roots,
                    barycentric_weights, chebyshev_nodes, grid_points, horner, lebesgue, lebesgue_grid,
                    newton_step, solve)
from .textio import (FormatSpec, format_hex, format_interval, format_number, get_default_format,
                     parse_format, parse_interval, parse_number, set_default_format, text_format)

__version__ = "1.0.0"
