"""
Instance models produced by the generators.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..core import Clustering
from ..fairness import ColorAssignment

Triple = Tuple[int, int, int]


@dataclass
class HardnessInstance:
    """
    Closest-fair-clustering instance built from a 3-Partition multiset.

    Points are laid out group by group: first the d/3 GB clusters (T points of every color
    1..k-1 each), then the d R clusters (x_j points of color 0 each). `certificate` is the
    fair clustering at distance exactly `tau` when a valid partition into triples is known.
    """
    values: Tuple[int, ...]
    k: int
    target: int
    clustering: Clustering
    colors: ColorAssignment
    tau: int
    gb_clusters: List[List[int]] = field(default_factory=list)
    r_clusters: List[List[int]] = field(default_factory=list)
    triples: Optional[List[Triple]] = None
    certificate: Optional[Clustering] = None

    @property
    def d(self) -> int:
        return len(self.values)

    @property
    def n(self) -> int:
        return self.clustering.n

    @property
    def has_certificate(self) -> bool:
        return self.certificate is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "values": list(self.values),
            "k": self.k,
            "target": self.target,
            "n": self.n,
            "tau": self.tau,
            "triples": [list(t) for t in self.triples] if self.triples is not None else None,
            "has_certificate": self.has_certificate,
        }
