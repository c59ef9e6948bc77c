"""
Sample-domain partitioning
"""

from .domain_partition import (
    ACCEPTED,
    REJECTED,
    DomainPartition,
    GapArray,
    PartitionPiece,
    gaps,
    partition,
)

__all__ = [
    "ACCEPTED",
    "REJECTED",
    "DomainPartition",
    "GapArray",
    "PartitionPiece",
    "gaps",
    "partition",
]
