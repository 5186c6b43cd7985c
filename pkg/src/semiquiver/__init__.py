"""Representation theory of finite semigroups: Green's structure, sandwich
matrices, Cartan matrices and quivers of right regular bands of groups."""

from .characters import (
    CharacterTable,
    ClassFunction,
    abelian_character_table,
    conjugacy_classes,
    inner_product,
    power_table,
    symmetric_character,
    symmetric_character_table,
)
from .constructions import (
    ReesSpec,
    gbar_quiver,
    hsiao_quiver_closed_form,
    hsiao_semigroup,
    hsiao_tables,
    perm_group_with_constants,
    rank,
    representation_type,
    rees_with_identity,
)
from .errors import ConsistencyError, InputError, PreconditionError, SemiquiverError, SizeError
from .exact import Cyclotomic, ExactMatrix, cyclo
from .poset import FinitePoset, jclass_poset, maximal_chains, mobius
from .quiver import QuiverGraph, arrows_between, ext_oracle_explicit, full_quiver, reduce_pair, smile_and_approx
from .reptheory import (
    cartan_matrix,
    is_directed,
    multiplicity,
    nico_bound,
    sandwich_matrix,
    semisimple_quotient,
    simple_dimension,
    theta_of_induced,
)
from .semigroup import (
    FiniteSemigroup,
    enumerate_from_generators,
    green_relations,
    is_regular,
    is_rrbg,
    omega_power,
    opposite,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "ConsistencyError",
    "Cyclotomic",
    "ExactMatrix",
    "FinitePoset",
    "FiniteSemigroup",
    "InputError",
    "PreconditionError",
    "QuiverGraph",
    "ReesSpec",
    "SemiquiverError",
    "SizeError",
    "abelian_character_table",
    "arrows_between",
    "cartan_matrix",
    "conjugacy_classes",
    "cyclo",
    "enumerate_from_generators",
    "ext_oracle_explicit",
    "full_quiver",
    "gbar_quiver",
    "green_relations",
    "hsiao_quiver_closed_form",
    "hsiao_semigroup",
    "hsiao_tables",
    "inner_product",
    "is_directed",
    "is_regular",
    "is_rrbg",
    "jclass_poset",
    "maximal_chains",
    "mobius",
    "multiplicity",
    "nico_bound",
    "omega_power",
    "opposite",
    "perm_group_with_constants",
    "power_table",
    "rank",
    "reduce_pair",
    "rees_with_identity",
    "representation_type",
    "sandwich_matrix",
    "semisimple_quotient",
    "simple_dimension",
    "smile_and_approx",
    "symmetric_character",
    "symmetric_character_table",
    "theta_of_induced",
]
