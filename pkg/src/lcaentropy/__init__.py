"""Entropy of one-dimensional linear cellular automata under Markov measures.

Core objects: :class:`LocalRule` (mod-m linear local rule), :class:`Word`
(finite block / cylinder set), :class:`MarkovMeasure` (pi, P) and
:class:`PartitionSpec` (base partition for entropy joins).  The entropy
module pairs the closed-form value (l+r) * rate, valid for bipermutative
rules, with an exact brute-force join computation used as its oracle.
"""

from ._kernels import active_backend, available_backends
from .ca import SpaceTime, Word, apply, itinerary, preimage_cylinders, space_time
from .entropy import (
    EntropySequence,
    GeneratorReport,
    InvarianceReport,
    check_invariance,
    closed_form_entropy,
    entropy_sequence,
    generator_probe,
    join_entropy,
    partition_atoms,
    partition_entropy,
    uniform_closed_form,
)
from .errors import (
    DEFAULT_CAP,
    CapExceededError,
    LcaEntropyError,
    ModulusMismatchError,
    NotBipermutativeError,
    StationaryConvergenceError,
    WidthExceededError,
    WordTooShortError,
)
from .measure import (
    MarkovMeasure,
    StochasticMatrix,
    bernoulli,
    cylinder_measure,
    is_doubly_stochastic,
    make_markov,
    markov_entropy_rate,
    stationary_vector,
    uniform_measure,
)
from .partition import PartitionSpec, default_base
from .rule import (
    LaurentPoly,
    LocalRule,
    PermutativityClass,
    brute_force_permutative,
    classify,
    compose,
    from_laurent,
    iterate,
    to_laurent,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "DEFAULT_CAP",
    "EntropySequence",
    "GeneratorReport",
    "InvarianceReport",
    "LaurentPoly",
    "LcaEntropyError",
    "LocalRule",
    "MarkovMeasure",
    "ModulusMismatchError",
    "NotBipermutativeError",
    "PartitionSpec",
    "PermutativityClass",
    "SpaceTime",
    "StationaryConvergenceError",
    "StochasticMatrix",
    "WidthExceededError",
    "Word",
    "WordTooShortError",
    "active_backend",
    "apply",
    "available_backends",
    "bernoulli",
    "brute_force_permutative",
    "check_invariance",
    "classify",
    "closed_form_entropy",
    "compose",
    "cylinder_measure",
    "default_base",
    "entropy_sequence",
    "from_laurent",
    "generator_probe",
    "is_doubly_stochastic",
    "iterate",
    "itinerary",
    "join_entropy",
    "make_markov",
    "markov_entropy_rate",
    "partition_atoms",
    "partition_entropy",
    "preimage_cylinders",
    "space_time",
    "stationary_vector",
    "to_laurent",
    "uniform_closed_form",
    "uniform_measure",
]
