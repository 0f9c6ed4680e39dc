"""Simple undirected graphs, seeded G(n, p) sampling, and edge perturbations.

Vertices are 0-based contiguous integers.  Graphs are immutable values:
the edge set is stored as a sorted, read-only array of codes ``u * n + v``
with ``u < v``, so perturbations return fresh copies and equality is an
array comparison.  Dense matrices are materialized on demand (constant
edge density makes dense storage the right default at this scale).

The RNG is numpy's counter-based Philox generator, keyed directly by the
64-bit seed; pair-inclusion draws happen in lexicographic pair order, so
identical (n, p, seed) reproduces the same graph bit-for-bit on any
platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, PreconditionError

__all__ = [
    "Graph",
    "GnpSpec",
    "sample_gnp",
    "add_edge",
    "remove_edge",
    "non_edges",
    "edges_within_subset",
    "graph_to_json",
    "graph_from_json",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    codes: np.ndarray = field(repr=False)  # sorted int64 codes u*n+v, u<v

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"vertex count must be positive, got {self.n}")
        codes = np.asarray(self.codes, dtype=np.int64)
        if codes.size and (np.any(np.diff(codes) <= 0)):
            raise ParameterError("edge codes must be strictly increasing")
        object.__setattr__(self, "codes", _freeze(codes))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        pairs = []
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) out of range for n={n}")
            pairs.append((min(u, v), max(u, v)))
        if len(set(pairs)) != len(pairs):
            raise ParameterError("duplicate edges")
        codes = np.sort(np.array([u * n + v for u, v in pairs], dtype=np.int64))
        return cls(n, codes)

    @property
    def num_edges(self) -> int:
        return int(self.codes.size)

    @property
    def edges(self) -> np.ndarray:
        """Edge list as an (m, 2) array in lexicographic order, u < v."""
        out = np.empty((self.codes.size, 2), dtype=np.int64)
        out[:, 0] = self.codes // self.n
        out[:, 1] = self.codes % self.n
        return out

    @property
    def degrees(self) -> np.ndarray:
        cached = getattr(self, "_degrees", None)
        if cached is None:
            e = self.edges
            cached = _freeze(np.bincount(e.ravel(), minlength=self.n).astype(np.int64))
            object.__setattr__(self, "_degrees", cached)
        return cached

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        a, b = min(u, v), max(u, v)
        code = a * self.n + b
        i = np.searchsorted(self.codes, code)
        return i < self.codes.size and self.codes[i] == code

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.codes, other.codes)

    def __hash__(self):
        return hash((self.n, self.codes.tobytes()))


@dataclass(frozen=True)
class GnpSpec:
    """Parameters of a seeded Erdos-Renyi draw."""

    n: int
    p: float
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"n must be >= 2, got {self.n}")
        if not (0.0 < self.p < 1.0):
            raise ParameterError(f"p must lie in (0,1), got {self.p}")


def pair_codes_all(n: int) -> np.ndarray:
    """Codes of all C(n,2) unordered pairs in lexicographic order."""
    u, v = np.triu_indices(n, k=1)
    return (u.astype(np.int64) * n + v).astype(np.int64)


def sample_gnp(spec: GnpSpec) -> Graph:
    """Draw G(n, p): each pair is an edge independently with probability p.

    Uses one Philox stream keyed by the seed; one uniform per pair in
    lexicographic order.
    """
    rng = np.random.Generator(np.random.Philox(key=spec.seed))
    all_codes = pair_codes_all(spec.n)
    mask = rng.random(all_codes.size) < spec.p
    return Graph(spec.n, all_codes[mask])


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise PreconditionError(f"cannot add self-loop at vertex {u}")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ParameterError(f"vertex out of range: ({u},{v})")
    if g.has_edge(u, v):
        raise PreconditionError(f"edge ({u},{v}) already present")
    a, b = min(u, v), max(u, v)
    code = a * g.n + b
    i = int(np.searchsorted(g.codes, code))
    return Graph(g.n, np.insert(g.codes, i, code))


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise PreconditionError(f"edge ({u},{v}) not present")
    a, b = min(u, v), max(u, v)
    code = a * g.n + b
    i = int(np.searchsorted(g.codes, code))
    return Graph(g.n, np.delete(g.codes, i))


def non_edges(g: Graph) -> np.ndarray:
    """All unordered non-adjacent pairs, lexicographic, as an (m, 2) array."""
    all_codes = pair_codes_all(g.n)
    codes = np.setdiff1d(all_codes, g.codes, assume_unique=True)
    out = np.empty((codes.size, 2), dtype=np.int64)
    out[:, 0] = codes // g.n
    out[:, 1] = codes % g.n
    return out


def edges_within_subset(g: Graph, subset) -> int:
    """Number of edges with both endpoints in ``subset``."""
    s = np.asarray(list(subset) if not isinstance(subset, np.ndarray) else subset)
    if s.size and (s.min() < 0 or s.max() >= g.n):
        raise ParameterError("subset contains a vertex out of range")
    mask = np.zeros(g.n, dtype=bool)
    mask[s.astype(np.int64)] = True
    e = g.edges
    return int(np.count_nonzero(mask[e[:, 0]] & mask[e[:, 1]]))


def graph_to_json(g: Graph) -> str:
    """Fixture format: {"n": int, "edges": [[u, v], ...]} sorted lexicographically."""
    return json.dumps({"n": g.n, "edges": g.edges.tolist()})


def graph_from_json(text: str) -> Graph:
    doc = json.loads(text)
    return Graph.from_edges(int(doc["n"]), doc["edges"])
