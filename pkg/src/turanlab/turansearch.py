"""Exhaustive small-n Turan densities over non-uniform hypergraphs.

Isomorphism classes are generated level by level: each frontier of canonical
representatives with k edges is extended by one edge and deduplicated through
the canonical form, so no seen-set beyond the frontier is kept.  In subgraph
mode freeness is monotone under edge removal, which lets the generation stay
inside the free classes and score only the maximal ones.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidArgumentError, TuranLabError, UnsupportedSizeError
from .hypercore import (
    EdgeTypeSet,
    Hypergraph,
    canonical_form,
    canonical_graph,
    contains_induced,
    contains_subgraph,
    lubell,
)

__all__ = [
    "ForbiddenFamily",
    "PiRecord",
    "DensityBound",
    "ENUMERATION_CAP",
    "allowed_edges",
    "enumerate_graphs",
    "pi_n",
    "density_sequence",
    "disjoint_type_union",
    "random_maximal_free",
]

ENUMERATION_CAP = 8


@dataclass(frozen=True)
class ForbiddenFamily:
    """A finite family of forbidden graphs over an ambient edge-type set.

    Members are deduplicated up to isomorphism and must use only ambient edge
    sizes.  ``mode`` selects subgraph (not necessarily induced) or induced
    containment.
    """

    ambient: EdgeTypeSet
    members: tuple[Hypergraph, ...] = ()
    mode: str = "subgraph"

    def __post_init__(self):
        if self.mode not in ("subgraph", "induced"):
            raise InvalidArgumentError(
                f"mode must be 'subgraph' or 'induced', got {self.mode!r}"
            )
        unique: dict[bytes, Hypergraph] = {}
        for member in self.members:
            for r in member.edge_sizes():
                if r not in self.ambient:
                    raise InvalidArgumentError(
                        f"member uses edge size {r} outside the ambient set"
                    )
            unique.setdefault(canonical_form(member), member)
        members = tuple(unique[k] for k in sorted(unique))
        object.__setattr__(self, "members", members)

    def excludes(self, graph: Hypergraph) -> bool:
        """Whether the graph contains some member (in the family's mode)."""
        test = contains_induced if self.mode == "induced" else contains_subgraph
        return any(test(graph, member) for member in self.members)

    def admits(self, graph: Hypergraph) -> bool:
        return not self.excludes(graph)


@dataclass(frozen=True)
class PiRecord:
    n: int
    pi_n: Fraction
    extremal: tuple[Hypergraph, ...]
    graphs_enumerated: int
    elapsed: float
    exhaustive: bool = True


@dataclass(frozen=True)
class DensityBound:
    family: ForbiddenFamily
    records: tuple[PiRecord, ...]


def allowed_edges(n: int, types: EdgeTypeSet) -> tuple[tuple[int, ...], ...]:
    """All possible edges on n vertices with sizes in the type set, in global order."""
    return tuple(
        c
        for r in types.sizes
        if r <= n
        for c in itertools.combinations(range(n), r)
    )


def _check_cap(n: int) -> None:
    if n > ENUMERATION_CAP:
        raise UnsupportedSizeError(
            f"exhaustive enumeration is capped at n <= {ENUMERATION_CAP}"
        )


def enumerate_graphs(n: int, types: EdgeTypeSet):
    """Yield one canonical representative per isomorphism class on n vertices.

    Level-by-level edge augmentation with canonical-form rejection: every
    class with k+1 edges arises from some class with k edges, so per-level
    deduplication visits each class exactly once.
    """
    _check_cap(n)
    if n < 1:
        raise InvalidArgumentError("enumeration needs n >= 1")
    universe = allowed_edges(n, types)
    start = Hypergraph(n, ())
    yield canonical_graph(start)
    frontier = {canonical_form(start): start}
    while frontier:
        nxt: dict[bytes, Hypergraph] = {}
        for g in frontier.values():
            present = g.edge_set
            for e in universe:
                if e in present:
                    continue
                child = g.with_edges(e)
                key = canonical_form(child)
                if key not in nxt:
                    nxt[key] = child
        for key in sorted(nxt):
            yield canonical_graph(nxt[key])
        frontier = nxt


def _max_lubell_records(scored, n):
    best = None
    extremal = []
    for g in scored:
        h = lubell(g)
        if best is None or h > best:
            best = h
            extremal = [g]
        elif h == best:
            extremal.append(g)
    if best is None:
        raise InvalidArgumentError(
            "no admissible graph exists on this vertex count"
        )
    extremal.sort(key=canonical_form)
    return best, tuple(extremal)


def pi_n(family: ForbiddenFamily, n: int, candidates=None, progress=None) -> PiRecord:
    """Largest Lubell density of a family-free graph on n labeled vertices.

    Exhaustive by default.  With ``candidates`` the given graphs are verified
    and scored instead, yielding a lower bound flagged non-exhaustive.
    In subgraph mode only maximal free graphs are scored; in induced mode all
    free classes are scored since maximality does not dominate.
    """
    if n < 1:
        raise InvalidArgumentError("pi_n needs n >= 1")
    t0 = time.perf_counter()
    if candidates is not None:
        checked = []
        for g in candidates:
            if g.n != n:
                raise InvalidArgumentError("candidate vertex count mismatch")
            for r in g.edge_sizes():
                if r not in family.ambient:
                    raise InvalidArgumentError(
                        f"candidate uses edge size {r} outside the ambient set"
                    )
            if family.excludes(g):
                raise InvalidArgumentError("candidate contains a forbidden member")
            checked.append(canonical_graph(g))
        best, extremal = _max_lubell_records(checked, n)
        return PiRecord(
            n=n,
            pi_n=best,
            extremal=extremal,
            graphs_enumerated=len(checked),
            elapsed=time.perf_counter() - t0,
            exhaustive=False,
        )

    _check_cap(n)
    universe = allowed_edges(n, family.ambient)
    count = 0

    if family.mode == "induced":
        scored = []
        for g in enumerate_graphs(n, family.ambient):
            count += 1
            if progress and count % 1000 == 0:
                progress(count)
            if family.admits(g):
                scored.append(g)
        best, extremal = _max_lubell_records(scored, n)
        return PiRecord(
            n=n,
            pi_n=best,
            extremal=extremal,
            graphs_enumerated=count,
            elapsed=time.perf_counter() - t0,
            exhaustive=True,
        )

    # subgraph mode: grow inside the free classes, score the maximal ones
    start = Hypergraph(n, ())
    if family.excludes(start):
        raise InvalidArgumentError(
            "the family forbids the empty graph; no free graph exists"
        )
    frontier = {canonical_form(start): start}
    scored = []
    while frontier:
        nxt: dict[bytes, Hypergraph] = {}
        for g in frontier.values():
            count += 1
            if progress and count % 1000 == 0:
                progress(count)
            present = g.edge_set
            maximal = True
            for e in universe:
                if e in present:
                    continue
                child = g.with_edges(e)
                if family.excludes(child):
                    continue
                maximal = False
                key = canonical_form(child)
                if key not in nxt:
                    nxt[key] = child
            if maximal:
                scored.append(canonical_graph(g))
        frontier = nxt
    best, extremal = _max_lubell_records(scored, n)
    return PiRecord(
        n=n,
        pi_n=best,
        extremal=extremal,
        graphs_enumerated=count,
        elapsed=time.perf_counter() - t0,
        exhaustive=True,
    )


def density_sequence(family: ForbiddenFamily, n_max: int, progress=None) -> DensityBound:
    """pi_n records from the first meaningful n up to n_max; checks monotonicity."""
    _check_cap(n_max)
    member_sizes = [r for m in family.members for r in m.edge_sizes()]
    n_min = max(member_sizes) if member_sizes else family.ambient.max_size
    if n_max < n_min:
        raise InvalidArgumentError(f"n_max must be >= {n_min}")
    records = []
    previous = None
    for n in range(n_min, n_max + 1):
        rec = pi_n(family, n, progress=progress)
        # averaging over vertex deletions forces pi_n <= pi_{n-1}, but only
        # once no allowed edge can span all n vertices
        if (
            previous is not None
            and n > family.ambient.max_size
            and rec.pi_n > previous
        ):
            raise TuranLabError(
                f"pi_{n} = {rec.pi_n} exceeds pi_{n - 1} = {previous}; "
                "monotonicity violated (internal error)"
            )
        previous = rec.pi_n
        records.append(rec)
    return DensityBound(family=family, records=tuple(records))


def disjoint_type_union(a: Hypergraph, b: Hypergraph) -> Hypergraph:
    """Union of two graphs on the same vertices with disjoint edge-size sets.

    The Lubell density of the union is exactly the sum of the two densities.
    """
    if a.n != b.n:
        raise InvalidArgumentError("union requires equal vertex counts")
    shared = set(a.edge_sizes()) & set(b.edge_sizes())
    if shared:
        raise InvalidArgumentError(
            f"edge-size sets overlap in {sorted(shared)}; union would conflate layers"
        )
    return Hypergraph(a.n, a.edges + b.edges)


def random_maximal_free(
    family: ForbiddenFamily, n: int, seed: int = 0, attempts: int = 8
) -> list[Hypergraph]:
    """Heuristic candidates for pi_n past the enumeration cap.

    Each attempt inserts allowed edges in a random order, keeping the graph
    free, until maximal.  Useful together with pi_n(..., candidates=...).
    """
    if family.mode != "subgraph":
        raise InvalidArgumentError("heuristic candidates support subgraph mode only")
    rng = random.Random(seed)
    universe = list(allowed_edges(n, family.ambient))
    out = []
    for _ in range(max(1, attempts)):
        rng.shuffle(universe)
        g = Hypergraph(n, ())
        for e in universe:
            child = g.with_edges(e)
            if family.admits(child):
                g = child
        out.append(g)
    return out
