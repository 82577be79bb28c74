"""Good sets: merge words, structural numerals, witness construction and checking."""

from negahappy.goodset.certificate import (
    GoodWitness,
    IPeel,
    Level,
    SingletonBase,
    SPeel,
    Violation,
    WitnessCertificate,
    direct_check,
    verify_certificate,
    violations,
)
from negahappy.goodset.tower import Exact, Offset, Repunit, TowerNumeral
from negahappy.goodset.witness import (
    RunWitness,
    build_run_witness,
    good_witness,
    peel,
    qualifying,
    singleton_witness,
)
from negahappy.goodset.words import FWord, apply_fword, merge, merge_even, merge_odd, odd_c

__all__ = [
    "Exact", "FWord", "GoodWitness", "IPeel", "Level", "Offset", "Repunit", "RunWitness",
    "SPeel", "SingletonBase", "TowerNumeral", "Violation", "WitnessCertificate",
    "apply_fword", "build_run_witness", "direct_check", "good_witness", "merge", "merge_even",
    "merge_odd", "odd_c", "peel", "qualifying", "singleton_witness", "verify_certificate", "violations",
]
