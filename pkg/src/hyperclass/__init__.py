"""Class groups of F_q[T, sqrt(e p)] for prime p: genus theory, 8-divisibility, zeta oracle."""
from .ff import Field, FieldError, make_field, quadratic_extension
from .polyring import Poly, SearchExhausted, factor, is_irreducible
from .classgroup import AbelianStructure, QuadOrder, class_group, two_sylow
from .curvezeta import l_polynomial, pic_order
from .construct import SpecialDiscriminant, predict_8_divisibility

__all__ = [
    "Field", "FieldError", "make_field", "quadratic_extension",
    "Poly", "SearchExhausted", "factor", "is_irreducible",
    "AbelianStructure", "QuadOrder", "class_group", "two_sylow",
    "l_polynomial", "pic_order",
    "SpecialDiscriminant", "predict_8_divisibility",
]
