"""Core data model: edge-type sets, hypergraphs, patterns, simplex points.

Vertices are dense 0-based integers.  Edges are stored as sorted tuples in a
fixed global order (by size, then lexicographically) so that structural
equality, hashing, and serialized output are all deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb

from .errors import (
    InvalidArgumentError,
    InvalidHypergraphError,
    UnsupportedSizeError,
)

MAX_EDGE_SIZE = 16
MAX_LABELING_VERTICES = 16

__all__ = [
    "EdgeTypeSet",
    "Hypergraph",
    "Pattern",
    "SimplexPoint",
    "MAX_EDGE_SIZE",
    "MAX_LABELING_VERTICES",
    "lubell",
    "induced_subgraph",
    "blow_up",
    "realize",
    "find_embedding",
    "contains_subgraph",
    "contains_induced",
    "count_injections",
    "automorphism_count",
    "count_embeddings",
    "canonical_form",
    "canonical_graph",
    "is_isomorphic",
    "complete",
    "empty_graph",
    "chain_graph",
    "marked_clique",
]


@dataclass(frozen=True)
class EdgeTypeSet:
    """A finite set of admissible edge sizes, kept sorted and distinct."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(sorted(set(int(r) for r in self.sizes)))
        if not sizes:
            raise InvalidArgumentError("edge type set must be non-empty")
        if sizes[0] < 1:
            raise InvalidArgumentError("edge sizes must be >= 1")
        if sizes[-1] > MAX_EDGE_SIZE:
            raise UnsupportedSizeError(
                f"edge size {sizes[-1]} exceeds the cap of {MAX_EDGE_SIZE}"
            )
        object.__setattr__(self, "sizes", sizes)

    def __contains__(self, r: int) -> bool:
        return r in self.sizes

    def __iter__(self):
        return iter(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    @property
    def max_size(self) -> int:
        return self.sizes[-1]


def _normalize_edge(edge) -> tuple[int, ...]:
    e = tuple(sorted(int(v) for v in edge))
    if len(e) == 0:
        raise InvalidHypergraphError("empty edge")
    if len(set(e)) != len(e):
        raise InvalidHypergraphError(f"edge {e} repeats a vertex")
    return e


@dataclass(frozen=True)
class Hypergraph:
    """A finite hypergraph on vertex set {0, ..., n-1}.

    Edges are distinct non-empty vertex subsets; any iterable of iterables is
    normalized on construction.
    """

    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        n = int(self.n)
        if n < 0:
            raise InvalidHypergraphError("vertex count must be >= 0")
        seen = {}
        for edge in self.edges:
            e = _normalize_edge(edge)
            if e[0] < 0 or e[-1] >= n:
                raise InvalidHypergraphError(
                    f"edge {e} is not inside the vertex range 0..{n - 1}"
                )
            if len(e) > MAX_EDGE_SIZE:
                raise UnsupportedSizeError(
                    f"edge of size {len(e)} exceeds the cap of {MAX_EDGE_SIZE}"
                )
            seen[e] = None
        edges = tuple(sorted(seen, key=lambda e: (len(e), e)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def edge_sizes(self) -> tuple[int, ...]:
        """Distinct edge sizes present, ascending.  Empty for edgeless graphs."""
        return tuple(sorted({len(e) for e in self.edges}))

    def edge_types(self) -> EdgeTypeSet:
        sizes = self.edge_sizes()
        if not sizes:
            raise InvalidArgumentError("edgeless hypergraph has no edge types")
        return EdgeTypeSet(sizes)

    def edges_of_size(self, r: int) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e in self.edges if len(e) == r)

    def degree(self, v: int, r: int | None = None) -> int:
        return sum(1 for e in self.edges if v in e and (r is None or len(e) == r))

    def with_edges(self, *extra) -> "Hypergraph":
        return Hypergraph(self.n, self.edges + tuple(tuple(e) for e in extra))


@dataclass(frozen=True)
class Pattern:
    """A multiplicity pattern: each edge is a per-vertex multiplicity vector.

    Row (k_1, ..., k_n) stands for an edge taking k_i vertices from the i-th
    class of any realization; |e| = sum(k_i).
    """

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise InvalidHypergraphError("pattern needs at least one vertex")
        rows = []
        seen = set()
        for row in self.edges:
            r = tuple(int(k) for k in row)
            if len(r) != n:
                raise InvalidHypergraphError(
                    f"multiplicity row {r} has length {len(r)}, expected {n}"
                )
            if any(k < 0 for k in r):
                raise InvalidHypergraphError(f"negative multiplicity in row {r}")
            size = sum(r)
            if size < 1:
                raise InvalidHypergraphError("pattern edge with total multiplicity 0")
            if size > MAX_EDGE_SIZE:
                raise UnsupportedSizeError(
                    f"pattern edge of size {size} exceeds the cap of {MAX_EDGE_SIZE}"
                )
            if r in seen:
                raise InvalidHypergraphError(f"duplicate pattern edge {r}")
            seen.add(r)
            rows.append(r)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(rows, key=lambda r: (sum(r), r))))

    @classmethod
    def from_hypergraph(cls, graph: Hypergraph) -> "Pattern":
        if graph.n < 1:
            raise InvalidArgumentError("cannot build a pattern on 0 vertices")
        rows = []
        for e in graph.edges:
            row = [0] * graph.n
            for v in e:
                row[v] = 1
            rows.append(tuple(row))
        return cls(graph.n, tuple(rows))

    def is_simple(self) -> bool:
        return all(k <= 1 for row in self.edges for k in row)

    def to_hypergraph(self) -> Hypergraph:
        if not self.is_simple():
            raise InvalidArgumentError("pattern has multiplicities > 1")
        edges = tuple(
            tuple(i for i, k in enumerate(row) if k == 1) for row in self.edges
        )
        return Hypergraph(self.n, edges)

    def edge_size(self, row: tuple[int, ...]) -> int:
        return sum(row)


def _is_exact(value) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the standard simplex: nonnegative weights summing to 1.

    Entirely rational entries give an exact point (sum must equal 1 exactly);
    float entries are accepted within an absolute sum tolerance of 1e-12.
    """

    weights: tuple

    SUM_TOL = 1e-12

    def __post_init__(self):
        ws = tuple(self.weights)
        if not ws:
            raise InvalidArgumentError("simplex point needs at least one weight")
        exact = all(_is_exact(w) for w in ws)
        if exact:
            ws = tuple(Fraction(w) for w in ws)
            if any(w < 0 for w in ws):
                raise InvalidArgumentError("negative weight in simplex point")
            if sum(ws) != 1:
                raise InvalidArgumentError("rational weights must sum to exactly 1")
        else:
            ws = tuple(float(w) for w in ws)
            if any(w < 0 for w in ws):
                raise InvalidArgumentError("negative weight in simplex point")
            if abs(sum(ws) - 1.0) > self.SUM_TOL:
                raise InvalidArgumentError(
                    f"weights sum to {sum(ws)!r}, outside tolerance {self.SUM_TOL}"
                )
        object.__setattr__(self, "weights", ws)

    @property
    def is_rational(self) -> bool:
        return all(isinstance(w, Fraction) for w in self.weights)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    @classmethod
    def uniform(cls, n: int) -> "SimplexPoint":
        if n < 1:
            raise InvalidArgumentError("uniform point needs n >= 1")
        return cls(tuple(Fraction(1, n) for _ in range(n)))


# ---------------------------------------------------------------------------
# densities and small constructions


def lubell(graph: Hypergraph) -> Fraction:
    """Exact Lubell density: sum over edges of 1/C(n, |e|)."""
    n = graph.n
    total = Fraction(0)
    for size in graph.edge_sizes():
        count = len(graph.edges_of_size(size))
        total += Fraction(count, comb(n, size))
    return total


def complete(n: int, sizes) -> Hypergraph:
    """All subsets of {0..n-1} whose size lies in ``sizes`` (sizes > n give none)."""
    types = sizes if isinstance(sizes, EdgeTypeSet) else EdgeTypeSet(tuple(sizes))
    edges = [
        c
        for r in types.sizes
        if r <= n
        for c in itertools.combinations(range(n), r)
    ]
    return Hypergraph(n, tuple(edges))


def empty_graph(n: int) -> Hypergraph:
    return Hypergraph(n, ())


def chain_graph() -> Hypergraph:
    """Two vertices, a singleton edge nested inside a pair edge."""
    return Hypergraph(2, ((0,), (0, 1)))


def marked_clique(t: int) -> Hypergraph:
    """Complete pair graph on t >= 2 vertices plus a singleton edge at vertex 0."""
    if t < 2:
        raise InvalidArgumentError("marked clique needs t >= 2")
    return complete(t, (2,)).with_edges((0,))


# ---------------------------------------------------------------------------
# subgraph operations


def induced_subgraph(graph: Hypergraph, vertices) -> Hypergraph:
    """Restriction to a vertex subset, relabeled to 0..|S|-1 in sorted order."""
    s = sorted(set(int(v) for v in vertices))
    if not s:
        raise InvalidArgumentError("induced subgraph needs a non-empty vertex set")
    if s[0] < 0 or s[-1] >= graph.n:
        raise InvalidArgumentError(f"vertex set {s} not inside 0..{graph.n - 1}")
    index = {v: i for i, v in enumerate(s)}
    keep = set(s)
    edges = tuple(
        tuple(index[v] for v in e) for e in graph.edges if keep.issuperset(e)
    )
    return Hypergraph(len(s), edges)


def blow_up(graph: Hypergraph, class_sizes) -> Hypergraph:
    """Replace vertex i by a class of ``class_sizes[i]`` clones.

    Every edge becomes the set of its transversals (one clone per original
    vertex).  A class of size 0 deletes the vertex along with its edges.
    """
    sizes = tuple(int(s) for s in class_sizes)
    if len(sizes) != graph.n:
        raise InvalidArgumentError(
            f"expected {graph.n} class sizes, got {len(sizes)}"
        )
    if any(s < 0 for s in sizes):
        raise InvalidArgumentError("class sizes must be >= 0")
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    classes = [range(offsets[i], offsets[i] + sizes[i]) for i in range(graph.n)]
    edges = []
    for e in graph.edges:
        for combo in itertools.product(*(classes[i] for i in e)):
            edges.append(combo)
    return Hypergraph(total, tuple(edges))


def realize(pattern: Pattern, class_sizes) -> Hypergraph:
    """Realize a pattern: row (k_1..k_n) contributes every union of k_i-subsets.

    Classes with fewer than k_i vertices contribute no edges for that row.
    """
    sizes = tuple(int(s) for s in class_sizes)
    if len(sizes) != pattern.n:
        raise InvalidArgumentError(
            f"expected {pattern.n} class sizes, got {len(sizes)}"
        )
    if any(s < 0 for s in sizes):
        raise InvalidArgumentError("class sizes must be >= 0")
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    classes = [
        tuple(range(offsets[i], offsets[i] + sizes[i])) for i in range(pattern.n)
    ]
    edges = []
    for row in pattern.edges:
        pools = [
            itertools.combinations(classes[i], k)
            for i, k in enumerate(row)
            if k > 0
        ]
        for parts in itertools.product(*pools):
            edges.append(tuple(itertools.chain.from_iterable(parts)))
    return Hypergraph(total, tuple(edges))


# ---------------------------------------------------------------------------
# containment


def _embedding_search(big: Hypergraph, small: Hypergraph, induced: bool, count_all: bool):
    """Backtracking search for injections mapping small's edges onto big's.

    Returns (count, first_witness).  In induced mode the map must also pull
    every edge of big inside the image back to an edge of small.
    """
    h, g = small.n, big.n
    if h > g:
        return 0, None
    order = sorted(range(h), key=lambda v: (-small.degree(v), v))
    pos_of = {v: i for i, v in enumerate(order)}
    # edges of small checked at the step that completes them
    check_at = [[] for _ in range(h)]
    for e in small.edges:
        last = max(pos_of[v] for v in e)
        check_at[last].append(e)
    small_deg = [
        {r: small.degree(v, r) for r in small.edge_sizes()} for v in range(h)
    ]
    big_deg = [{r: big.degree(v, r) for r in small.edge_sizes()} for v in range(g)]
    big_incident = [[] for _ in range(g)]
    for e in big.edges:
        for v in e:
            big_incident[v].append(e)
    small_edge_set = small.edge_set
    big_edge_set = big.edge_set

    phi = [-1] * h
    inverse = {}
    count = 0
    witness = None

    def place(step: int) -> bool:
        nonlocal count, witness
        if step == h:
            count += 1
            if witness is None:
                witness = tuple(phi)
            return not count_all
        v = order[step]
        need = small_deg[v]
        for cand in range(g):
            if cand in inverse:
                continue
            if any(big_deg[cand][r] < need[r] for r in need):
                continue
            phi[v] = cand
            inverse[cand] = v
            ok = True
            for e in check_at[step]:
                if tuple(sorted(phi[u] for u in e)) not in big_edge_set:
                    ok = False
                    break
            if ok and induced:
                image = inverse.keys()
                for ge in big_incident[cand]:
                    if all(u in image for u in ge):
                        pre = tuple(sorted(inverse[u] for u in ge))
                        if pre not in small_edge_set:
                            ok = False
                            break
            if ok and place(step + 1):
                return True
            del inverse[cand]
            phi[v] = -1
        return False

    place(0)
    return count, witness


def find_embedding(big: Hypergraph, small: Hypergraph) -> tuple[int, ...] | None:
    """First injection (by vertex order) mapping small's edges onto big's, or None."""
    _, witness = _embedding_search(big, small, induced=False, count_all=False)
    return witness


def contains_subgraph(big: Hypergraph, small: Hypergraph) -> bool:
    """Whether big contains a (not necessarily induced) copy of small."""
    return find_embedding(big, small) is not None


def find_induced_embedding(big: Hypergraph, small: Hypergraph) -> tuple[int, ...] | None:
    _, witness = _embedding_search(big, small, induced=True, count_all=False)
    return witness


def contains_induced(big: Hypergraph, small: Hypergraph) -> bool:
    """Whether some vertex subset of big induces exactly a copy of small."""
    return find_induced_embedding(big, small) is not None


def count_injections(big: Hypergraph, small: Hypergraph) -> int:
    """Number of injective maps sending every edge of small to an edge of big."""
    count, _ = _embedding_search(big, small, induced=False, count_all=True)
    return count


def automorphism_count(graph: Hypergraph) -> int:
    return count_injections(graph, graph)


def count_embeddings(big: Hypergraph, small: Hypergraph) -> int:
    """Number of distinct copies of small in big.

    A copy is a sub-hypergraph (vertex subset plus edge subset) isomorphic to
    small, so the injection count is divided by small's automorphism count.
    """
    if big.n > MAX_LABELING_VERTICES:
        raise UnsupportedSizeError(
            f"embedding counts are capped at {MAX_LABELING_VERTICES} vertices"
        )
    total = count_injections(big, small)
    if total == 0:
        return 0
    return total // automorphism_count(small)


# ---------------------------------------------------------------------------
# canonical labeling
#
# Iterative color refinement (per-size degrees, then incident color profiles)
# followed by individualize-and-refine branching over the first non-singleton
# cell.  Among all leaf labelings the lexicographically least edge encoding is
# the canonical form.  Cell keys are built from invariants only, so the result
# is labeling-independent.


def _refine_colors(n, incident, colors):
    while True:
        sigs = []
        for v in range(n):
            profile = sorted(
                (len(others) + 1, tuple(sorted(colors[u] for u in others)))
                for others in incident[v]
            )
            sigs.append((colors[v], tuple(profile)))
        palette = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        fresh = [palette[sig] for sig in sigs]
        if fresh == colors:
            return colors
        colors = fresh


def _encode_labeled(n, edges, label):
    mapped = sorted(
        tuple(sorted(label[v] for v in e)) for e in edges
    )
    mapped.sort(key=lambda e: (len(e), e))
    return (n, tuple(mapped))


def _format_encoding(key) -> bytes:
    n, edges = key
    body = ";".join(",".join(str(v) for v in e) for e in edges)
    return f"{n}|{body}".encode("ascii")


@lru_cache(maxsize=100_000)
def canonical_form(graph: Hypergraph) -> bytes:
    """Canonical byte encoding: equal byte strings iff isomorphic graphs."""
    n = graph.n
    if n > MAX_LABELING_VERTICES:
        raise UnsupportedSizeError(
            f"canonical form is capped at {MAX_LABELING_VERTICES} vertices"
        )
    edges = graph.edges
    # fully symmetric fast path: every size layer empty or complete
    if all(
        len(graph.edges_of_size(r)) in (0, comb(n, r)) for r in graph.edge_sizes()
    ):
        return _format_encoding(_encode_labeled(n, edges, list(range(n))))

    incident = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            incident[v].append(tuple(u for u in e if u != v))
    sizes = graph.edge_sizes()
    start = [
        tuple(graph.degree(v, r) for r in sizes) for v in range(n)
    ]
    palette = {key: i for i, key in enumerate(sorted(set(start)))}
    colors = [palette[key] for key in start]

    best = [None]

    def search(colors):
        colors = _refine_colors(n, incident, colors)
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            label = [0] * n
            for rank, v in enumerate(sorted(range(n), key=lambda v: colors[v])):
                label[v] = rank
            key = _encode_labeled(n, edges, label)
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        for v in target:
            branched = [c * 2 for c in colors]
            branched[v] -= 1
            search(branched)

    search(colors)
    return _format_encoding(best[0])


def canonical_graph(graph: Hypergraph) -> Hypergraph:
    """The canonically labeled representative of graph's isomorphism class."""
    return _decode_encoding(canonical_form(graph))


def _decode_encoding(data: bytes) -> Hypergraph:
    text = data.decode("ascii")
    head, _, body = text.partition("|")
    n = int(head)
    edges = []
    if body:
        for part in body.split(";"):
            edges.append(tuple(int(v) for v in part.split(",")))
    return Hypergraph(n, tuple(edges))


def is_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)
