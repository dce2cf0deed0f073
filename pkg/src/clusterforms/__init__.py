"""Forms over finite categories: orean and noetherian checks, factorizations,
exact decompositions and bicategory axioms, all by exhaustive search."""

from .bicat import Bicategory, check_axiom, synthesize_ejd_form, synthesize_emd_form
from .decomp import Decomposition, find_exact_decomposition
from .factor import OreanFactorization, check_orean_factorization, construct_join_noetherian
from .fincat import FinCategory, validate_category
from .formcore import Form, FormError, Operator, dual_form, find_full_embedding, find_isomorphism, validate_form
from .orean import OreanForm, check_noetherian, check_orean, classify
from .report import CheckReport

__all__ = [
    "Bicategory",
    "CheckReport",
    "Decomposition",
    "FinCategory",
    "Form",
    "FormError",
    "Operator",
    "OreanFactorization",
    "OreanForm",
    "check_axiom",
    "check_noetherian",
    "check_orean",
    "check_orean_factorization",
    "classify",
    "construct_join_noetherian",
    "dual_form",
    "find_exact_decomposition",
    "find_full_embedding",
    "find_isomorphism",
    "synthesize_ejd_form",
    "synthesize_emd_form",
    "validate_category",
    "validate_form",
]
