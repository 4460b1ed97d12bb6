"""Immutable hypergraphs and the edge-set operations used by deletion/contraction.

A :class:`Hypergraph` is a vertex set plus a set of edges, each edge a sorted
tuple of at least two vertex ids.  All operations return new values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class HypergraphError(ValueError):
    """Raised on malformed hypergraphs or operation preconditions."""


def _vertex_set(A: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(a) for a in A)))


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph with canonical (sorted) vertex and edge tuples.

    Use :meth:`from_edges` rather than the raw constructor; it validates and
    canonicalizes its input.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vs = self.vertices
        if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
            raise HypergraphError("vertices must be sorted and duplicate-free")
        vset = set(vs)
        for i, e in enumerate(self.edges):
            if len(e) < 2:
                raise HypergraphError(f"edge {e} has size < 2")
            if any(e[j] >= e[j + 1] for j in range(len(e) - 1)):
                raise HypergraphError(f"edge {e} is not sorted and duplicate-free")
            if not vset.issuperset(e):
                raise HypergraphError(f"edge {e} uses a vertex outside the vertex set")
            if i and self.edges[i - 1] >= e:
                raise HypergraphError("edges must be sorted and duplicate-free")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None,
                   vertices: Iterable[int] | None = None) -> "Hypergraph":
        """Build a hypergraph from an edge list.

        The vertex set is ``range(n)`` if `n` is given, else `vertices` if given,
        else the union of the edges.  Duplicate edges collapse.
        """
        es = sorted({tuple(sorted(set(int(v) for v in e))) for e in edges})
        if n is not None:
            vs = tuple(range(n))
        elif vertices is not None:
            vs = _vertex_set(vertices)
        else:
            vs = _vertex_set(v for e in es for v in e)
        return cls(vs, tuple(es))

    @classmethod
    def empty(cls, n: int = 0) -> "Hypergraph":
        return cls(tuple(range(n)), ())

    # -- basic quantities ---------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    @property
    def max_degree(self) -> int:
        return max(self.degrees.values(), default=0)

    @property
    def edge_sizes(self) -> frozenset[int]:
        return frozenset(len(e) for e in self.edges)

    @property
    def uniformity(self) -> int | None:
        """Common edge size, or None if edge sizes differ or there are no edges."""
        sizes = self.edge_sizes
        return next(iter(sizes)) if len(sizes) == 1 else None

    def is_uniform(self, k: int) -> bool:
        return all(len(e) == k for e in self.edges)

    @property
    def is_graph(self) -> bool:
        return self.is_uniform(2)

    @property
    def is_dense(self) -> bool:
        """True when the vertex ids are exactly 0..n-1."""
        return self.vertices == tuple(range(len(self.vertices)))

    @cached_property
    def is_linear(self) -> bool:
        seen: dict[tuple[int, int], int] = {}
        for i, e in enumerate(self.edges):
            for a in range(len(e)):
                for b in range(a + 1, len(e)):
                    if seen.setdefault((e[a], e[b]), i) != i:
                        return False
        return True

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Vertex sets of the connected components, sorted by smallest vertex."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            r = find(e[0])
            for v in e[1:]:
                rv = find(v)
                if rv != r:
                    parent[rv] = r
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return tuple(sorted(tuple(g) for g in groups.values()))

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def is_linear_hypertree(self) -> bool:
        # A connected incidence graph is a tree iff #incidences = #nodes - 1;
        # acyclicity also forces linearity (two shared vertices make a 4-cycle).
        if not self.is_connected:
            return False
        incidences = sum(len(e) for e in self.edges)
        return incidences == self.vertex_count + self.edge_count - 1

    def stats(self) -> "HypergraphStats":
        return HypergraphStats(
            vertex_count=self.vertex_count,
            edge_count=self.edge_count,
            max_degree=self.max_degree,
            edge_sizes=tuple(sorted(self.edge_sizes)),
            uniformity=self.uniformity,
            is_linear=self.is_linear,
            is_linear_hypertree=self.is_linear_hypertree,
            component_count=len(self.components),
        )

    # -- edge-set operations -----------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if v not in self.degrees:
            raise HypergraphError(f"unknown vertex {v}")

    def _check_set(self, A: Iterable[int]) -> tuple[int, ...]:
        A = _vertex_set(A)
        if not A:
            raise HypergraphError("vertex set A must be nonempty")
        for a in A:
            self._check_vertex(a)
        return A

    def delete_vertex(self, v: int) -> "Hypergraph":
        """G - v: drop `v` and every edge containing it."""
        self._check_vertex(v)
        return self.delete_set((v,))

    def delete_set(self, A: Iterable[int]) -> "Hypergraph":
        """G - A: drop the vertices of A and every edge meeting A."""
        A = set(self._check_set(A))
        return Hypergraph(tuple(v for v in self.vertices if v not in A),
                          tuple(e for e in self.edges if A.isdisjoint(e)))

    def closure(self, A: Iterable[int]) -> tuple[int, ...]:
        """C(A): vertices v outside A such that some edge e has e \\ A = {v}."""
        A = set(self._check_set(A))
        out = set()
        for e in self.edges:
            rest = [v for v in e if v not in A]
            if len(rest) == 1 and len(rest) < len(e):
                out.add(rest[0])
        return tuple(sorted(out))

    def contract_set(self, A: Iterable[int]) -> "Hypergraph":
        """G/A = (V \\ (A u C(A)), E/A).

        Edges shrink by A; residues of size one become the closure and are
        removed together with every edge that meets them.  Edges lying inside
        A vanish (callers of the edge-addition identity exclude that case).
        """
        A = set(self._check_set(A))
        C = set(self.closure(A))
        gone = A | C
        edges = set()
        for e in self.edges:
            rest = tuple(v for v in e if v not in A)
            if len(rest) >= 2 and C.isdisjoint(rest):
                edges.add(rest)
        return Hypergraph(tuple(v for v in self.vertices if v not in gone),
                          tuple(sorted(edges)))

    def contract_vertex(self, v: int) -> "Hypergraph":
        """G/v."""
        self._check_vertex(v)
        return self.contract_set((v,))

    def add_edge(self, A: Iterable[int]) -> "Hypergraph":
        """G + A; a no-op if A is already an edge."""
        A = _vertex_set(A)
        if len(A) < 2:
            raise HypergraphError("an added edge needs at least two vertices")
        for a in A:
            self._check_vertex(a)
        if A in self.edges:
            return self
        return Hypergraph(self.vertices, tuple(sorted(self.edges + (A,))))

    def induced(self, S: Iterable[int]) -> "Hypergraph":
        """Subhypergraph on S keeping the edges that lie inside S."""
        S = set(S)
        return Hypergraph(tuple(v for v in self.vertices if v in S),
                          tuple(e for e in self.edges if S.issuperset(e)))

    def contains_edge_within(self, A: Iterable[int]) -> bool:
        A = set(A)
        return any(A.issuperset(e) for e in self.edges)

    # -- relabeling / combination -----------------------------------------

    def relabeled(self, mapping: dict[int, int] | None = None) -> "Hypergraph":
        """Apply a vertex relabeling; default compacts ids to 0..n-1 in order."""
        if mapping is None:
            mapping = {v: i for i, v in enumerate(self.vertices)}
        return Hypergraph.from_edges(([mapping[v] for v in e] for e in self.edges),
                                     vertices=(mapping[v] for v in self.vertices))

    def disjoint_union(self, other: "Hypergraph") -> "Hypergraph":
        a = self.relabeled()
        off = a.vertex_count
        b = other.relabeled({v: i + off for i, v in enumerate(other.vertices)})
        return Hypergraph.from_edges(a.edges + b.edges, n=off + b.vertex_count)

    def __repr__(self):
        return f"Hypergraph(n={self.vertex_count}, edges={list(self.edges)})"


@dataclass(frozen=True)
class HypergraphStats:
    vertex_count: int
    edge_count: int
    max_degree: int
    edge_sizes: tuple[int, ...]
    uniformity: int | None
    is_linear: bool
    is_linear_hypertree: bool
    component_count: int

    def is_k_uniform(self, k: int) -> bool:
        return self.edge_sizes in ((), (k,))

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "max_degree": self.max_degree,
            "edge_sizes": list(self.edge_sizes),
            "uniformity": self.uniformity,
            "is_linear": self.is_linear,
            "is_linear_hypertree": self.is_linear_hypertree,
            "component_count": self.component_count,
        }


# ---------------------------------------------------------------------------
# Serialization: ".hg" text format and JSON


def _check_dense_edges(edges: Sequence[Sequence[int]], n: int, relabel: bool,
                       where: Sequence[str]) -> Hypergraph:
    bad = [(loc, v) for e, loc in zip(edges, where) for v in e if not 0 <= v < n]
    if bad and not relabel:
        loc, v = bad[0]
        raise HypergraphError(f"{loc}: vertex id {v} outside 0..{n - 1}")
    if bad:
        ids = sorted({v for e in edges for v in e} | set(range(n)))
        mapping = {v: i for i, v in enumerate(ids)}
        edges = [[mapping[v] for v in e] for e in edges]
        n = len(ids)
    return Hypergraph.from_edges(edges, n=n)


def parse_hg(text: str, relabel: bool = False) -> Hypergraph:
    """Parse the ``.hg`` text format.

    The first nonblank line is ``hypergraph <n>``; each further line is
    ``e v1 v2 ...`` with at least two ids.  ``#`` starts a comment.  Ids outside
    0..n-1 are rejected unless `relabel` is set, in which case all ids are
    compacted in sorted order.
    """
    n = None
    edges, where = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n is None:
            if len(tok) != 2 or tok[0] != "hypergraph":
                raise HypergraphError(f"line {lineno}: expected 'hypergraph <n>'")
            try:
                n = int(tok[1])
            except ValueError:
                raise HypergraphError(f"line {lineno}: bad vertex count {tok[1]!r}") from None
            if n < 0:
                raise HypergraphError(f"line {lineno}: negative vertex count")
            continue
        if tok[0] != "e":
            raise HypergraphError(f"line {lineno}: expected 'e v1 v2 ...'")
        try:
            e = [int(t) for t in tok[1:]]
        except ValueError:
            raise HypergraphError(f"line {lineno}: non-integer vertex id") from None
        if len(set(e)) < 2:
            raise HypergraphError(f"line {lineno}: edge needs at least two distinct vertices")
        edges.append(e)
        where.append(f"line {lineno}")
    if n is None:
        raise HypergraphError("missing 'hypergraph <n>' header")
    return _check_dense_edges(edges, n, relabel, where)


def to_hg(G: Hypergraph) -> str:
    if not G.is_dense:
        raise HypergraphError("vertex ids are not 0..n-1; use G.relabeled() first")
    lines = [f"hypergraph {G.vertex_count}"]
    lines += ["e " + " ".join(map(str, e)) for e in G.edges]
    return "\n".join(lines) + "\n"


def parse_json(text: str, relabel: bool = False) -> Hypergraph:
    try:
        obj = json.loads(text)
        n = obj["n"]
        edges = obj["edges"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise HypergraphError(f"malformed hypergraph JSON: {exc}") from None
    if not isinstance(n, int) or n < 0:
        raise HypergraphError("field 'n': expected a nonnegative integer")
    for i, e in enumerate(edges):
        if not isinstance(e, list) or not all(isinstance(v, int) for v in e) or len(set(e)) < 2:
            raise HypergraphError(f"field 'edges[{i}]': expected >= 2 distinct integer ids")
    return _check_dense_edges(edges, n, relabel, [f"field 'edges[{i}]'" for i in range(len(edges))])


def to_json(G: Hypergraph) -> str:
    if not G.is_dense:
        raise HypergraphError("vertex ids are not 0..n-1; use G.relabeled() first")
    return json.dumps({"n": G.vertex_count, "edges": [list(e) for e in G.edges]})


def load(path: str, relabel: bool = False) -> Hypergraph:
    """Read a hypergraph from a ``.hg`` or ``.json`` file."""
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return parse_json(text, relabel)
    return parse_hg(text, relabel)


def dump(G: Hypergraph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(to_json(G) if path.endswith(".json") else to_hg(G))
