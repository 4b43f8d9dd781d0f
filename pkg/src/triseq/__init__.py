"""Exact triangle-sequence continued fractions."""

from .cf import CFExpansion, cf_expand, cf_geometric
from .dynamics import Ball, Budget, MixingWitness, edge_through_ball, find_partition_triangle_in_ball, mixing_witness
from .errors import TriseqError
from .exact import IntVec3, RationalPoint, farey_sum, hat, point
from .families import LINEAR, POW2, PRIME, SQUARE, SequenceFamily, constant, custom, parse_family
from .geometry import (
    PartitionTriangle,
    PointEstimate,
    SegmentEstimate,
    limit_estimate,
    side_lengths,
    triangle_vertices,
    x_vectors,
)
from .trimap import Ambiguous, IntervalPoint, TriSequence, expand, expand_interval, iterate, triangle_step
from .uniqueness import ClassificationReport, Verdict, classify, inequality_suite, partial_product

__version__ = "0.1.0"
