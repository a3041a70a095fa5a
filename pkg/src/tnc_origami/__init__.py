"""One-cylinder origamis in every stratum and certificates that their Veech
groups are totally non-congruence."""

__version__ = "0.1.0"

from .perm import Permutation, commutator, compose, cycle_type, is_transitive
from .sl2 import S, T, T_PRIME, T_DOUBLE_PRIME, MatMod, MatZ, Word, decompose_word
from .origami import Origami, Stratum, apply_generator, apply_word, canonical_form, cylinders, stratum
from .builders import build_even, build_odd_pair, build_stratum_origami, expected_size
from .veech import CosetGraph, orbit_coset_graph, veech_data
from .congruence import ParabolicWitness, TncCertificate, standard_witnesses, verify_certificate
