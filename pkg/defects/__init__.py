from .defect import defect, defect_image, is_effaceable, Effaceability, DeflationIndex
from .serre import (def_simples, supported_on, indecomposable_modules, verify_serre,
                    verify_eff_equals_def)
from .lex import Verdict, is_left_exact, perp_test, verify_perp_equals_lex
from .quotient import SerreData, QuotientPresentation, serre_quotient
from .classifier import Classification, theorem_a_classifier
from .projectives import projectives, enough_projectives, res_p_check
from .exceptions import SerreError
