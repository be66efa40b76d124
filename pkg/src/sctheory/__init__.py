"""Construction, verification and enumeration of supercharacter theories
of finite groups, with exact cyclotomic arithmetic."""

from .chartab import (CharacterTable, CharacterTableError, abelian_char_table, bundled_group,
                      dual_group, iota, load_char_table)
from .core import (NotATheory, SuperTheory, canned, direct_product, galois_orbit_theory,
                   is_theory, join_theories, k_from_x, leq, matrix_condition, mm_and_MM,
                   orbit_theory, superclass_admissible, theory_from_classes,
                   theory_from_json, verify_definition, x_from_k)
from .cyclotomic import CycMatrix, CycNumber, root_of_unity, rowspace_equal
from .duality import (dual_bijection_check, dual_cnormal_check, dual_product_laws,
                      dual_theory, iota_transport)
from .enumerate import EnumerationResult, enumerate_sup, lattice
from .groups import (FiniteGroup, GroupError, Subgroup, build_abelian, build_from_cayley,
                     build_from_permutations, class_structure_constants, normal_subgroups,
                     quotient, subgroup_closure)
from .partitions import SetPartition, join, meet, partition_matrix, refines
from .products import (FactorizationChain, FactorizationError, ProductError,
                       c_normal_subgroups, factor_over, is_g_invariant, restrict_deflate,
                       star_product, unique_factorization, wtp_product, wtp_recognize)

__version__ = "0.1.0"
