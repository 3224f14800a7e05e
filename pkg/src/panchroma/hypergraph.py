"""n-uniform hypergraphs: validation, random generation, edge degrees and the
``.hg`` text format.

The canonical text format is::

    hg <n> <num_vertices> <num_edges>
    <v_1> ... <v_n>          # one line per edge, ids in [0, num_vertices)

ASCII, newline-terminated, no comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "Hypergraph",
    "EdgeDegreeProfile",
    "HypergraphFormatError",
    "validate",
    "random_uniform",
    "edge_degrees",
    "read_hg",
    "write_hg",
    "load_hg",
    "save_hg",
]


class HypergraphFormatError(ValueError):
    """Malformed ``.hg`` text, or a parsed hypergraph that fails validation."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Hypergraph:
    """An n-uniform hypergraph on vertices ``0 .. num_vertices-1``.

    Edges are addressed by their position in ``edges``; duplicates are
    allowed. The constructor does not validate, use :func:`validate`.
    """

    n: int
    num_vertices: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(int(v) for v in e) for e in self.edges))

    @classmethod
    def from_edges(cls, edges: Sequence[Sequence[int]], n: Optional[int] = None,
                   num_vertices: Optional[int] = None) -> "Hypergraph":
        edges = [tuple(e) for e in edges]
        if n is None:
            if not edges:
                raise ValueError("cannot infer n from an empty edge list")
            n = len(edges[0])
        if num_vertices is None:
            num_vertices = 1 + max((v for e in edges for v in e), default=-1)
        return cls(n, num_vertices, tuple(edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def incidence(self) -> list[list[int]]:
        """For each vertex, the indices of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for k, e in enumerate(self.edges):
            for v in e:
                inc[v].append(k)
        return inc


@dataclass(frozen=True)
class EdgeDegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int


def validate(h: Hypergraph) -> Optional[str]:
    """Return ``None`` if ``h`` is a valid n-uniform hypergraph, else a
    message naming the first violated invariant."""
    if h.n < 1:
        return f"uniformity n must be positive, got {h.n}"
    if h.num_vertices < 0:
        return f"num_vertices must be nonnegative, got {h.num_vertices}"
    for k, e in enumerate(h.edges):
        if len(e) != h.n:
            return f"edge {k} has {len(e)} vertices, expected {h.n}"
        for v in e:
            if not 0 <= v < h.num_vertices:
                return f"vertex id out of range in edge {k}: {v} not in [0, {h.num_vertices})"
        if len(set(e)) != len(e):
            return f"duplicate vertex in edge {k}"
    return None


def random_uniform(n: int, num_vertices: int, num_edges: int, seed) -> Hypergraph:
    """Each edge is an independent uniform n-subset of the vertex set."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > num_vertices:
        raise ValueError(f"n={n} exceeds num_vertices={num_vertices}")
    rng = np.random.default_rng(seed)
    edges = tuple(
        tuple(sorted(int(v) for v in rng.choice(num_vertices, size=n, replace=False)))
        for _ in range(num_edges)
    )
    return Hypergraph(n, num_vertices, edges)


def edge_degrees(h: Hypergraph) -> EdgeDegreeProfile:
    """Number of *other* edges (by list position) meeting each edge."""
    inc = h.incidence()
    degrees = []
    for k, e in enumerate(h.edges):
        meet = set()
        for v in e:
            meet.update(inc[v])
        meet.discard(k)
        degrees.append(len(meet))
    return EdgeDegreeProfile(tuple(degrees), max(degrees, default=0))


def write_hg(h: Hypergraph) -> str:
    lines = [f"hg {h.n} {h.num_vertices} {h.num_edges}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def _parse_ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise HypergraphFormatError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None


def read_hg(text: str) -> Hypergraph:
    lines = text.splitlines()
    if not lines:
        raise HypergraphFormatError("empty input", 1)
    header = lines[0].split()
    if len(header) != 4 or header[0] != "hg":
        raise HypergraphFormatError("expected header 'hg <n> <num_vertices> <num_edges>'", 1)
    n, num_vertices, num_edges = _parse_ints(header[1:], 1)
    body = lines[1:]
    if len(body) != num_edges:
        raise HypergraphFormatError(
            f"header declares {num_edges} edges, found {len(body)} edge lines", len(lines))
    edges = []
    for k, line in enumerate(body):
        ids = _parse_ints(line.split(), k + 2)
        if len(ids) != n:
            raise HypergraphFormatError(f"edge {k} has {len(ids)} vertices, expected {n}", k + 2)
        edges.append(tuple(ids))
    h = Hypergraph(n, num_vertices, tuple(edges))
    problem = validate(h)
    if problem is not None:
        raise HypergraphFormatError(problem)
    return h


def load_hg(path) -> Hypergraph:
    with open(path, encoding="ascii") as fh:
        return read_hg(fh.read())


def save_hg(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(write_hg(h))
