"""The biset category of finite groups, built on skeletal finite G-sets."""
from .biset import (
    ActionPair,
    biset_coproduct,
    bisets_isomorphic,
    decompose_transitive,
    elementary_biset,
    empty_biset,
    from_subgroup,
    goursat_bouc,
    identity_biset,
    kleisli_compose,
    mackey_lhs,
    mackey_rhs,
    to_subgroup,
)
from .coeq import CoeqCategory, CoeqMorphism, coeq_category, compose_coeq, make_coeq_morphism
from .gfinset import (
    GMorphism,
    GObject,
    WreathAutomorphism,
    coequalizer_of_automorphisms,
    colift_along_coequalizer,
    coproduct,
    product_object_via_marks,
)
from .grp import Subgroup, all_subgroup_classes, direct_product, quotient_group
from .oracle import ExplicitBiset, explicit_from_pair, explicit_isomorphic, naive_compose, pair_from_explicit
from .perm import PermGroup, compose, evaluate_word, factor_element, inverse, orbit_with_words

__version__ = "0.1.0"
