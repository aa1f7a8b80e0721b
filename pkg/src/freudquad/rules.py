"""Quadrature-rule container shared by every rule constructor."""
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass
class QuadratureRule:
    """Sorted nodes with matching weights.

    trivial_skipped counts nodes per side that a subsampled run omitted
    because their weights underflow realmin; the retained block is
    contiguous and centered, so nodes[i] is node number
    trivial_skipped + i + 1 (1-based) of the full rule.
    """
    nodes: np.ndarray
    weights: np.ndarray
    weight_tag: str
    total_n: int
    trivial_skipped: int = 0
    method: str = ""
    subsampled: bool = False

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=np.float64)
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise DomainError("nodes and weights must be matching vectors")
        if self.nodes.size > 1 and not np.all(np.diff(self.nodes) > 0):
            raise DomainError("nodes must be strictly ascending")

    def __len__(self):
        return self.nodes.size

    def integrate(self, f):
        """Apply the rule to a callable or to sampled values."""
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return float(self.weights @ vals)

    def global_indices(self):
        """1-based node numbers of the retained block within the full rule."""
        return np.arange(self.trivial_skipped + 1,
                         self.trivial_skipped + 1 + self.nodes.size)
