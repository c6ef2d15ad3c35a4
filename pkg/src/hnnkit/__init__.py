"""Computational toolkit for ascending HNN extensions.

The layers build on each other: free-group words and endomorphisms,
Stallings foldings, base-group oracles, Britton canonical forms, the
kernel chain, Cayley complex balls, region classification and cellular
homotopies with checkable certificates.
"""
from .words import (Alphabet, Endomorphism, IllFormedInput, RelatorSet, Word, apply_endo, commutator,
                    cyclic_reduce, iterate_relators, parse_expression, reduce)
from .stallings import (SubgroupGraph, build_subgroup_graph, image_graph, image_rank_sequence, member,
                        monomorphize)
from .consequences import Certificate, Factor, SearchBudget
from .oracles import (OracleVerdict, Verdict, bounded_depth_oracle, bs_oracle, free_oracle, grigorchuk_oracle)
from .hnn import (CanonicalForm, Envelope, HnnPresentation, Undecided, canonical_form, envelope, equal_in_G,
                  in_coset_tNA, level)
from .depth import DepthWitness, chain_inclusion_probe, depth_scan, depth_witness_check
from .ball import Ball, build_ball, components_minus, export
from .regions import RegionLabel, check_up_lemma, classify, coset_geometry, in_D
from .homotopy import CellularHomotopy, LevelCertificate, build_corner, build_push, build_string, verify_levels
from .diagrams import Diagram, fp_complement_trivialize, replay, trivialize_bounded
from .presets import preset

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Endomorphism",
    "IllFormedInput",
    "RelatorSet",
    "Word",
    "apply_endo",
    "commutator",
    "cyclic_reduce",
    "iterate_relators",
    "parse_expression",
    "reduce",
    "SubgroupGraph",
    "build_subgroup_graph",
    "image_graph",
    "image_rank_sequence",
    "member",
    "monomorphize",
    "Certificate",
    "Factor",
    "SearchBudget",
    "OracleVerdict",
    "Verdict",
    "bounded_depth_oracle",
    "bs_oracle",
    "free_oracle",
    "grigorchuk_oracle",
    "CanonicalForm",
    "Envelope",
    "HnnPresentation",
    "Undecided",
    "canonical_form",
    "envelope",
    "equal_in_G",
    "in_coset_tNA",
    "level",
    "DepthWitness",
    "chain_inclusion_probe",
    "depth_scan",
    "depth_witness_check",
    "Ball",
    "build_ball",
    "components_minus",
    "export",
    "RegionLabel",
    "check_up_lemma",
    "classify",
    "coset_geometry",
    "in_D",
    "CellularHomotopy",
    "LevelCertificate",
    "build_corner",
    "build_push",
    "build_string",
    "verify_levels",
    "Diagram",
    "fp_complement_trivialize",
    "replay",
    "trivialize_bounded",
    "preset",
]
