from .cotorsion import (CotorsionPair, Decomposition, hom_vanishing, decompose_object, is_cotorsion_pair,
                        perpendicular_v, enumerate_cotorsion_pairs, star)
from .ideal import StableHom, ideal_vectors, ideal_matrix, in_ideal, is_stable_isomorphism, stable_category
from .heart import HeartPresentation, heart_presentation
from .reflection import ReflectionData, Reflector
from .certify import RestrictedYoneda, verify_theorem_b, check_kernels, heart_vs_mod_p
from .cohomology import CohomologyData, cohomology, cohomology_map, verify_cohomology
from .approximation import Approximation, lex_approximation, check_restricted_representables
from .exceptions import CotorsionError, SearchExhausted, ReflectionNotFound
