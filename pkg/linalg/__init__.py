from .field import (Field, PrimeField, RationalField, Mat, Scalar,
                    field_from_spec, field_from_option, parse_scalar, is_prime)
from .exceptions import DimensionMismatch, FieldError
from .util import (multiplicity_vectors, normalized_vectors, element_vectors,
                   projective_points, count_normalized)
