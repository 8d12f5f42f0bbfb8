from .module import (FpModule, ModuleMap, zero_module, identity_map, zero_map, direct_sum,
                     block_map, inclusions_and_projections, yoneda, yoneda_map,
                     yoneda_element_map, simple, element_of)
from .homological import (HomSpace, hom_module, kernel, image, image_factorization, cokernel,
                          cokernel_data, Cokernel, induced_on_cokernel, factor_through_mono,
                          radical, top_generators, composition_factors, Presentation,
                          projective_presentation, relation_morphism, map_from_representable,
                          lift_from_projective, lift_to_syzygies, ExtData, realize_cocycle, ext_dimension,
                          is_projective)
from .decompose import (Summand, decompose, is_indecomposable, endomorphism_residue, isomorphism,
                        find_isomorphism, are_isomorphic, multiplicities)
from .enumerate import enumerate_indecomposables
from .modcat import ModuleCategory, name_module
from .exceptions import ModuleError, NonSplitResidueField, DecompositionError, UnlistedModule
