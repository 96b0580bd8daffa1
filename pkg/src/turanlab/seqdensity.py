"""Upper Lubell densities of hypergraph sequences.

A sequence is given by a generator rule producing the i-th member and its
vertex count.  The t-th upper density sigma_t is the supremum, over members
with at least t vertices and over t-subsets S of the member's vertex set,
of the Lubell value of the induced subgraph on S measured at scale t.

The search scores subsets with integers: D is the least common multiple of
the binomials C(t, r) for r = 1..t and an edge of size r inside S counts
D // C(t, r).  Scores are exact and comparable across members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidArgumentError, UnsupportedSizeError
from .hypercore import Hypergraph, SimplexPoint, blow_up, complete, lubell
from .turansearch import disjoint_type_union

__all__ = [
    "SequenceGenerator",
    "DensityTrend",
    "UpperDensityReport",
    "proportional_sizes",
    "density_estimate",
    "sigma_t",
]

MAX_SUBSET_SIZE = 8
# exhaustive per-member subset search up to C(40, 6) subsets
EXHAUSTIVE_SUBSET_CAP = math.comb(40, 6)
_SAMPLE_CHUNK = 1 << 16

_KINDS = ("blowup", "turan", "union", "constant")


def proportional_sizes(weights, total: int) -> tuple[int, ...]:
    """Split ``total`` into class sizes proportional to rational weights.

    Largest-remainder rounding: floor the ideal sizes, then hand out the
    remaining units by descending fractional part (ties to lower index).
    """
    if isinstance(weights, SimplexPoint):
        if not weights.is_rational:
            raise InvalidArgumentError("proportions must be exact rationals")
        ws = weights.weights
    else:
        ws = tuple(Fraction(w) for w in weights)
        if any(w < 0 for w in ws):
            raise InvalidArgumentError("proportions must be nonnegative")
        if sum(ws) != 1:
            raise InvalidArgumentError("proportions must sum to 1")
    if total < 0:
        raise InvalidArgumentError("total must be nonnegative")
    ideal = [w * total for w in ws]
    sizes = [int(x) for x in ideal]  # floor: x >= 0
    leftover = total - sum(sizes)
    order = sorted(range(len(ws)), key=lambda j: (ideal[j] - sizes[j], -j),
                   reverse=True)
    for j in order[:leftover]:
        sizes[j] += 1
    return tuple(sizes)


@dataclass(frozen=True)
class SequenceGenerator:
    """Rule for the i-th member of a hypergraph sequence.

    Vertex counts come either from an explicit ``ns`` list or from the
    arithmetic rule n_start + i * n_step.  The member itself is built from
    the kind: a blow-up of a base graph with fixed proportions, a balanced
    complete multipartite pair graph, a disjoint edge-type union of two
    component sequences, or a fixed graph padded with isolated vertices.
    """

    kind: str
    ns: tuple[int, ...] | None = None
    n_start: int | None = None
    n_step: int | None = None
    base: Hypergraph | None = None
    proportions: tuple[Fraction, ...] | None = None
    components: tuple["SequenceGenerator", ...] = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidArgumentError(f"unknown generator kind {self.kind!r}")
        if self.ns is not None:
            ns = tuple(int(n) for n in self.ns)
            if not ns or any(n < 1 for n in ns):
                raise InvalidArgumentError("ns must be a nonempty list of n >= 1")
            object.__setattr__(self, "ns", ns)
            if self.n_start is not None or self.n_step is not None:
                raise InvalidArgumentError("give either ns or a start/step rule")
        else:
            if self.n_start is None or self.n_step is None:
                raise InvalidArgumentError("give either ns or a start/step rule")
            if self.n_start < 1 or self.n_step < 1:
                raise InvalidArgumentError("need n_start >= 1 and n_step >= 1")
        if self.kind in ("blowup", "turan"):
            if self.base is None or self.proportions is None:
                raise InvalidArgumentError(f"{self.kind} needs base and proportions")
            props = tuple(Fraction(w) for w in self.proportions)
            if len(props) != self.base.n:
                raise InvalidArgumentError("one proportion per base vertex")
            if any(w < 0 for w in props) or sum(props) != 1:
                raise InvalidArgumentError("proportions must be >= 0 and sum to 1")
            object.__setattr__(self, "proportions", props)
        elif self.kind == "union":
            if len(self.components) < 2:
                raise InvalidArgumentError("union needs at least two components")
            key = (self.ns, self.n_start, self.n_step)
            for c in self.components:
                if (c.ns, c.n_start, c.n_step) != key:
                    raise InvalidArgumentError(
                        "union components must share the size sequence"
                    )
        elif self.kind == "constant":
            if self.base is None:
                raise InvalidArgumentError("constant needs a base graph")

    # -- constructors ------------------------------------------------------

    @classmethod
    def blow_up_generator(cls, base: Hypergraph, proportions, *,
                          ns=None, n_start=None, n_step=None):
        return cls("blowup", ns=tuple(ns) if ns is not None else None,
                   n_start=n_start, n_step=n_step,
                   base=base, proportions=tuple(proportions))

    @classmethod
    def turan_generator(cls, parts: int, *, ns=None, n_start=None, n_step=None):
        """Balanced complete ``parts``-partite pair graphs."""
        if parts < 2:
            raise InvalidArgumentError("need at least two parts")
        props = tuple(Fraction(1, parts) for _ in range(parts))
        return cls("turan", ns=tuple(ns) if ns is not None else None,
                   n_start=n_start, n_step=n_step,
                   base=complete(parts, (2,)), proportions=props)

    @classmethod
    def union_generator(cls, *components: "SequenceGenerator"):
        if not components:
            raise InvalidArgumentError("union needs components")
        first = components[0]
        return cls("union", ns=first.ns, n_start=first.n_start,
                   n_step=first.n_step, components=tuple(components))

    @classmethod
    def constant_generator(cls, graph: Hypergraph, *,
                           ns=None, n_start=None, n_step=None):
        return cls("constant", ns=tuple(ns) if ns is not None else None,
                   n_start=n_start, n_step=n_step, base=graph)

    # -- the sequence ------------------------------------------------------

    @property
    def count(self) -> int | None:
        """Number of members, or None for an unbounded rule."""
        return len(self.ns) if self.ns is not None else None

    def size(self, i: int) -> int:
        if i < 0:
            raise InvalidArgumentError("member index must be nonnegative")
        if self.ns is not None:
            if i >= len(self.ns):
                raise InvalidArgumentError(
                    f"member {i} out of range for {len(self.ns)} sizes"
                )
            return self.ns[i]
        return self.n_start + i * self.n_step

    def member(self, i: int) -> Hypergraph:
        n = self.size(i)
        if self.kind in ("blowup", "turan"):
            return blow_up(self.base, proportional_sizes(self.proportions, n))
        if self.kind == "union":
            graph = self.components[0].member(i)
            for c in self.components[1:]:
                graph = disjoint_type_union(graph, c.member(i))
            return graph
        if n < self.base.n:
            raise InvalidArgumentError(
                f"member {i} has {n} vertices, fewer than the base graph"
            )
        return Hypergraph(n, self.base.edges)


# ---------------------------------------------------------------------------
# Lubell values along the sequence


@dataclass(frozen=True)
class DensityTrend:
    sizes: tuple[int, ...]
    values: tuple[Fraction, ...]
    diffs: tuple[Fraction, ...]

    @property
    def last(self) -> Fraction:
        return self.values[-1]


MAX_MEMBER_SIZE = 2_000


def density_estimate(gen: SequenceGenerator, i_max: int) -> DensityTrend:
    """Exact Lubell values of members 0..i_max and their first differences."""
    if i_max < 0:
        raise InvalidArgumentError("i_max must be nonnegative")
    if gen.size(i_max) > MAX_MEMBER_SIZE:
        raise UnsupportedSizeError(
            f"members beyond n = {MAX_MEMBER_SIZE} are too large to materialize"
        )
    sizes = []
    values = []
    for i in range(i_max + 1):
        g = gen.member(i)
        sizes.append(g.n)
        values.append(lubell(g))
    diffs = tuple(values[j + 1] - values[j] for j in range(i_max))
    return DensityTrend(tuple(sizes), tuple(values), diffs)


# ---------------------------------------------------------------------------
# upper density sigma_t


@dataclass(frozen=True)
class UpperDensityReport:
    t: int
    value: Fraction
    attaining: tuple[int, tuple[int, ...]]  # (member index, vertex subset)
    h_values: tuple[Fraction, ...]  # full-member Lubell values over the range
    exhaustive: bool
    i_range: tuple[int, int]
    samples: int | None = None


def _edge_weights(t: int) -> tuple[int, dict[int, int]]:
    d = math.lcm(*(math.comb(t, r) for r in range(1, t + 1)))
    return d, {r: d // math.comb(t, r) for r in range(1, t + 1)}


def _member_tables(graph: Hypergraph, t: int, weights: dict[int, int]):
    """Per-vertex increments for ascending-order subset search.

    Each edge of size <= t is charged to its largest vertex: singleton
    weight, a bitmask of smaller pair-neighbors, and (mask, weight) rows
    for larger edges.
    """
    n = graph.n
    singleton = [0] * n
    pair_mask = [0] * n
    higher = [[] for _ in range(n)]
    for e in graph.edges:
        r = len(e)
        if r > t:
            continue
        v = e[-1]
        if r == 1:
            singleton[v] += weights[1]
        elif r == 2:
            pair_mask[v] |= 1 << e[0]
        else:
            m = 0
            for u in e[:-1]:
                m |= 1 << u
            higher[v].append((m, weights[r]))
    return singleton, pair_mask, higher


def _member_cap(graph: Hypergraph, t: int, weights: dict[int, int]) -> int:
    """Upper bound for any t-subset score: a subset holds at most C(t, r)
    edges of size r, and no more than the member has."""
    cap = 0
    for r in range(1, t + 1):
        m = len(graph.edges_of_size(r))
        if m:
            cap += min(m, math.comb(t, r)) * weights[r]
    return cap


def _search_exhaustive(graph, t, weights, w2, best_score):
    """Best t-subset by depth-first search over ascending vertex choices.
    Returns (score, subset) or None if nothing beats best_score."""
    n = graph.n
    singleton, pair_mask, higher = _member_tables(graph, t, weights)

    static_gain = []
    for v in range(n):
        g = singleton[v] + w2 * min(pair_mask[v].bit_count(), t - 1)
        g += sum(w for _, w in higher[v])
        static_gain.append(g)
    # suffix_top[v][c]: sum of the c largest static gains among vertices >= v
    suffix_top = [None] * (n + 1)
    suffix_top[n] = [0] * (t + 1)
    for v in range(n - 1, -1, -1):
        gains = sorted(static_gain[v:], reverse=True)[:t]
        row = [0]
        acc = 0
        for c in range(1, t + 1):
            acc += gains[c - 1] if c - 1 < len(gains) else 0
            row.append(acc)
        suffix_top[v] = row

    best = best_score
    best_subset = None
    chosen = []

    def walk(v_min: int, mask: int, score: int, need: int):
        nonlocal best, best_subset
        if need == 0:
            if score > best:
                best = score
                best_subset = tuple(chosen)
            return
        for v in range(v_min, n - need + 1):
            if score + suffix_top[v][need] <= best:
                return  # suffix bound is nonincreasing in v
            gain = singleton[v] + w2 * (pair_mask[v] & mask).bit_count()
            for em, ew in higher[v]:
                if em & mask == em:
                    gain += ew
            chosen.append(v)
            walk(v + 1, mask | (1 << v), score + gain, need - 1)
            chosen.pop()

    walk(0, 0, 0, t)
    if best_subset is None:
        return None
    return best, best_subset


def _search_sampled(graph, t, weights, seed_key, samples, best_score):
    """Seeded uniform t-subset sampling; a lower bound on the member best."""
    n = graph.n
    rows = [(np.array(e, dtype=np.intp), weights[len(e)])
            for e in graph.edges if len(e) <= t]
    if not rows:
        return None
    seed, index = seed_key
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    )
    best = best_score
    best_subset = None
    done = 0
    while done < samples:
        b = min(_SAMPLE_CHUNK, samples - done)
        done += b
        subs = np.argsort(rng.random((b, n)), axis=1)[:, :t]
        member = np.zeros((b, n), dtype=bool)
        np.put_along_axis(member, subs, True, axis=1)
        scores = np.zeros(b, dtype=np.int64)
        for verts, w in rows:
            scores += w * member[:, verts].all(axis=1)
        j = int(np.argmax(scores))
        if scores[j] > best:
            best = int(scores[j])
            best_subset = tuple(sorted(int(v) for v in subs[j]))
    if best_subset is None:
        return None
    return best, best_subset


def sigma_t(
    gen: SequenceGenerator,
    t: int,
    i_range: tuple[int, int] = (0, 7),
    seed: int = 0,
    samples: int = 1_000_000,
) -> UpperDensityReport:
    """Largest induced t-subset Lubell value over members i_range[0]..i_range[1].

    Members with fewer than t vertices are skipped.  Each member is searched
    exhaustively when C(n, t) is within EXHAUSTIVE_SUBSET_CAP, otherwise by
    seeded sampling; in the sampled case the report is flagged as a lower
    bound (exhaustive=False).
    """
    if t < 1:
        raise InvalidArgumentError("t must be at least 1")
    if t > MAX_SUBSET_SIZE:
        raise UnsupportedSizeError(f"t = {t} exceeds the cap {MAX_SUBSET_SIZE}")
    lo, hi = i_range
    if lo < 0 or hi < lo:
        raise InvalidArgumentError(f"bad member range {i_range}")
    if gen.count is not None and hi >= gen.count:
        raise InvalidArgumentError(
            f"member range {i_range} exceeds the {gen.count} listed sizes"
        )

    denom, weights = _edge_weights(t)
    w2 = weights.get(2, 0)

    best_score = -1
    attaining = None
    h_values = []
    all_exhaustive = True
    searched = 0
    for i in range(lo, hi + 1):
        g = gen.member(i)
        h_values.append(lubell(g))
        if g.n < t:
            continue
        searched += 1
        if _member_cap(g, t, weights) <= best_score:
            continue  # cannot beat the incumbent
        if math.comb(g.n, t) <= EXHAUSTIVE_SUBSET_CAP:
            found = _search_exhaustive(g, t, weights, w2, best_score)
        else:
            all_exhaustive = False
            found = _search_sampled(g, t, weights, (seed, i), samples, best_score)
        if found is not None:
            best_score, subset = found
            attaining = (i, subset)
    if attaining is None:
        if searched == 0:
            raise InvalidArgumentError(
                f"no member in {i_range} has at least {t} vertices"
            )
        # every subset of every member scored zero
        first = next(i for i in range(lo, hi + 1) if gen.size(i) >= t)
        attaining = (first, tuple(range(t)))
        best_score = 0
    return UpperDensityReport(
        t=t,
        value=Fraction(best_score, denom),
        attaining=attaining,
        h_values=tuple(h_values),
        exhaustive=all_exhaustive,
        i_range=(lo, hi),
        samples=None if all_exhaustive else samples,
    )
