"""Three-weight p-ary codes from pairs of quadratic forms, with exact verification.

The library builds the linear code cut out by the defining set
D = {(x, y) != 0 : f(x) + g(y) = 0} for quadratic forms f on F_{p^{s1}} and
g on F_{p^{s2}}, then checks the closed-form length, weight distribution,
and generalized Hamming weight hierarchy against independent brute-force
enumeration.  All arithmetic is exact (integers, rationals, and the ring
Z[zeta_p]); no floating point is used anywhere.
"""

from .codes import (CodeCD, DefiningSet, build_defining_set, code_dimension,
                    export_generator_csv, minimality_check, predicted_length,
                    weight_distribution_bruteforce, weight_distribution_predicted)
from .cyclotomic import (CycInt, check_form_on_subspace, galois, gauss_sqrt,
                         level_set_count, pstar_half_power, sigma_orbit_sum,
                         subspace_char_sum, weil_sum, weil_sum_check_all,
                         zeta_pow)
from .errors import (BadDims, BadResidue, BadSubspace, ConfigError,
                     DimensionDeficient, DimensionMismatch, EmptyCode,
                     EvenCharacteristic, NoApplicableTheorem, NonIntegerWeight,
                     NonPrime, NotQuadratic, OracleMismatch, QuadCodesError,
                     RankTooSmall, ReducibleModulus, TooLarge)
from .gf import ExtField, is_prime, legendre, make_field, pstar, upsilon
from .ghw import (HierarchyReport, HierarchyRow, TheoremParams, count_N,
                  count_Sfg, ghw_exact, ghw_predicted, ghw_support_oracle,
                  griesmer_sum, hierarchy_report, lemma_isotropic_dim)
from .quadform import QuadForm, RestrictedForm
from .subspace import (PairSpaceCtx, Subspace, complement_under,
                       enumerate_subspaces, gaussian_binomial, intersect_count,
                       product_subspace)

__version__ = "0.1.0"

__all__ = [
    "CodeCD", "DefiningSet", "build_defining_set", "code_dimension",
    "export_generator_csv", "minimality_check", "predicted_length",
    "weight_distribution_bruteforce", "weight_distribution_predicted",
    "CycInt", "check_form_on_subspace", "galois", "gauss_sqrt",
    "level_set_count", "pstar_half_power", "sigma_orbit_sum",
    "subspace_char_sum", "weil_sum", "weil_sum_check_all", "zeta_pow",
    "BadDims", "BadResidue", "BadSubspace", "ConfigError",
    "DimensionDeficient", "DimensionMismatch", "EmptyCode",
    "EvenCharacteristic", "NoApplicableTheorem", "NonIntegerWeight",
    "NonPrime", "NotQuadratic", "OracleMismatch", "QuadCodesError",
    "RankTooSmall", "ReducibleModulus", "TooLarge",
    "ExtField", "is_prime", "legendre", "make_field", "pstar", "upsilon",
    "HierarchyReport", "HierarchyRow", "TheoremParams", "count_N",
    "count_Sfg", "ghw_exact", "ghw_predicted", "ghw_support_oracle",
    "griesmer_sum", "hierarchy_report", "lemma_isotropic_dim",
    "QuadForm", "RestrictedForm",
    "PairSpaceCtx", "Subspace", "complement_under", "enumerate_subspaces",
    "gaussian_binomial", "intersect_count", "product_subspace",
    "__version__",
]
