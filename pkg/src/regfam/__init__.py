"""Analysis of graph families given by regular languages over {a, b}."""

from .codec import Graph, decode, encode, canonical_form, is_in_G, undirected_simplification
from .automata import Dfa, Torsion, compile_regex, torsion_pair, class_rep
from .family import Family, FamilyPiece, MarkedGraph, analyze

__all__ = [
    "Graph", "decode", "encode", "canonical_form", "is_in_G", "undirected_simplification",
    "Dfa", "Torsion", "compile_regex", "torsion_pair", "class_rep",
    "Family", "FamilyPiece", "MarkedGraph", "analyze",
]
