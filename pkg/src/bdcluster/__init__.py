"""Exotic cluster structures on SL_5 from Belavin-Drinfeld triples."""

from .liealg import BDTriple, TripleError, enumerate_triples, standard_case, parse_triple
from .cluster import build_structure
from .verify import Config, run_checks

__all__ = ["BDTriple", "TripleError", "enumerate_triples", "standard_case", "parse_triple", "build_structure",
           "Config", "run_checks"]
__version__ = "0.1.0"
