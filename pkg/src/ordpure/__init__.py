"""Desk-scale tools for pure pairs and blockades in ordered graphs."""

from .core import (
    AnalysisError, CapabilityError, InputError, OrderedGraph, PreconditionError, VertexSet,
    build, complement, complete_graph, empty_graph,
)
from .patterns import Embedding, contains_ordered, find_rainbow_copy, pattern
from .purepair import PurePairWitness, best_anticomplete_pair, best_pure_pair

__version__ = "0.1.0"
