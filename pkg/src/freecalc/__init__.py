"""Free-group calculus: words, Fox derivatives, Magnus embeddings, Hall collection."""

__version__ = "0.1.0"

from .autos import (
    Endomorphism,
    HomWord,
    Verdict,
    compose,
    conjugate_hom_word,
    hom_word_apply,
    inner,
    is_hom_word,
    is_ia_on_R,
    permutational,
    star_product,
    transvection,
)
from .budget import limits
from .errors import (
    AlphabetError,
    ArityError,
    BudgetExceeded,
    DescriptorError,
    EndomorphismError,
    FreeCalcError,
    ParseError,
)
from .groupring import RingElement, augmentation, as_trivial_unit, project, quotient, ring_add, ring_multiply
from .magnus import (
    ModuleVector,
    NegativeUnit,
    SolvableKey,
    f_sigma,
    fox_derivative,
    inner_on_R_witness,
    is_identity_in_FmodRprime,
    magnus_derivation,
    normal_shape,
    solvable_key,
)
from .nilpotent import NilpotentNF, collect, congruent_mod_gamma, hall_basis, lcs_weight
from .oracles import finite_probe, truncated_series_eval, wreath_eval
from .parser import TermExpr, evaluate_term, parse_term, parse_word
from .words import Alphabet, Word, commutator, exponent_sum, free_reduce, invert, left_normed, multiply, substitute
