"""Polynomial forms over the simplex and their maximization.

A hypergraph H induces the multilinear form sum_e |e|! prod_{i in e} x_i and a
pattern induces sum_e multinomial(|e|; k_1..k_n) prod x_i^{k_i}; the maximum
over the standard simplex is the quantity of interest.  The optimizer pipeline
is: collapse equivalent vertices, enumerate candidate supports (pruned by pair
coverage, with the full support always retained as a fallback), run projected
gradient ascent with Armijo backtracking on each, then verify first-order
optimality and certify a rational lower bound at a rounded rational point.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import InvalidArgumentError, OptimizerFailureError
from .hypercore import Hypergraph, Pattern, SimplexPoint

__all__ = [
    "PolynomialForm",
    "OptimizerConfig",
    "LagrangianResult",
    "polynomial_form",
    "evaluate",
    "gradient",
    "equivalence_classes",
    "maximize",
    "certify_at",
    "stationarity_residual",
    "STATIONARITY_TOL",
    "CERTIFICATE_DENOMINATOR_CAP",
]

STATIONARITY_TOL = 1e-7
CERTIFICATE_SLACK = 1e-9
CERTIFICATE_DENOMINATOR_CAP = 10**6


@dataclass(frozen=True)
class PolynomialForm:
    """Sum of positive-coefficient monomials over simplex variables.

    Terms are (coefficient, exponent vector) pairs, merged and sorted by the
    exponent vector.  Coefficients stay exact so rational certification can
    reuse the same data.
    """

    nvars: int
    terms: tuple[tuple[Fraction, tuple[int, ...]], ...]

    def __post_init__(self):
        merged: dict[tuple[int, ...], Fraction] = {}
        for coeff, expo in self.terms:
            expo = tuple(int(k) for k in expo)
            if len(expo) != self.nvars:
                raise InvalidArgumentError("exponent vector length mismatch")
            c = Fraction(coeff)
            if c <= 0:
                raise InvalidArgumentError("term coefficients must be positive")
            merged[expo] = merged.get(expo, Fraction(0)) + c
        terms = tuple(sorted(((c, e) for e, c in merged.items()), key=lambda t: t[1]))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_pattern(cls, pattern: Pattern) -> "PolynomialForm":
        terms = []
        for row in pattern.edges:
            size = sum(row)
            coeff = factorial(size)
            for k in row:
                coeff //= factorial(k)
            terms.append((Fraction(coeff), row))
        return cls(pattern.n, tuple(terms))

    @classmethod
    def from_hypergraph(cls, graph: Hypergraph) -> "PolynomialForm":
        return cls.from_pattern(Pattern.from_hypergraph(graph))

    def term_supports(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(i for i, k in enumerate(expo) if k > 0) for _, expo in self.terms
        )

    def restrict(self, support: tuple[int, ...]) -> "PolynomialForm":
        """Sub-form on the given variables (terms supported inside them)."""
        index = {v: i for i, v in enumerate(support)}
        keep = []
        for coeff, expo in self.terms:
            if all(k == 0 or i in index for i, k in enumerate(expo)):
                new = [0] * len(support)
                for i, k in enumerate(expo):
                    if k:
                        new[index[i]] = k
                keep.append((coeff, tuple(new)))
        return PolynomialForm(len(support), tuple(keep))

    def quotient(self, classes: tuple[tuple[int, ...], ...]) -> "PolynomialForm":
        """Substitute x_i = z_c / |class c| for every vertex i of class c."""
        owner = {}
        for c, members in enumerate(classes):
            for v in members:
                owner[v] = c
        if len(owner) != self.nvars:
            raise InvalidArgumentError("classes must partition the variables")
        terms = []
        for coeff, expo in self.terms:
            new = [0] * len(classes)
            scale = Fraction(1)
            for i, k in enumerate(expo):
                if k:
                    c = owner[i]
                    new[c] += k
                    scale *= Fraction(1, len(classes[c])) ** k
            terms.append((coeff * scale, tuple(new)))
        return PolynomialForm(len(classes), tuple(terms))


def polynomial_form(obj) -> PolynomialForm:
    if isinstance(obj, PolynomialForm):
        return obj
    if isinstance(obj, Pattern):
        return PolynomialForm.from_pattern(obj)
    if isinstance(obj, Hypergraph):
        return PolynomialForm.from_hypergraph(obj)
    raise InvalidArgumentError(f"cannot build a polynomial form from {type(obj)!r}")


def _point_weights(point, nvars: int):
    ws = point.weights if isinstance(point, SimplexPoint) else tuple(point)
    if len(ws) != nvars:
        raise InvalidArgumentError(
            f"point has {len(ws)} coordinates, expected {nvars}"
        )
    return ws


def evaluate(obj, point):
    """Value of the form; exact Fraction for rational input, float otherwise."""
    form = polynomial_form(obj)
    ws = _point_weights(point, form.nvars)
    exact = all(isinstance(w, (Fraction, int)) for w in ws)
    total = Fraction(0) if exact else 0.0
    for coeff, expo in form.terms:
        prod = coeff if exact else float(coeff)
        for w, k in zip(ws, expo):
            if k:
                prod *= w**k
        total += prod
    return total


def gradient(obj, point):
    """Partial derivatives of the form at the point, matching its arithmetic."""
    form = polynomial_form(obj)
    ws = _point_weights(point, form.nvars)
    exact = all(isinstance(w, (Fraction, int)) for w in ws)
    zero = Fraction(0) if exact else 0.0
    grads = [zero] * form.nvars
    for coeff, expo in form.terms:
        for a, ka in enumerate(expo):
            if ka == 0:
                continue
            prod = coeff if exact else float(coeff)
            prod *= ka
            dead = False
            for i, k in enumerate(expo):
                if i == a:
                    if ka > 1:
                        if ws[i] == 0:
                            dead = True
                            break
                        prod *= ws[i] ** (ka - 1)
                elif k:
                    if ws[i] == 0:
                        dead = True
                        break
                    prod *= ws[i] ** k
            if not dead:
                grads[a] += prod
    return tuple(grads)


# ---------------------------------------------------------------------------
# vertex equivalence


def equivalence_classes(graph: Hypergraph) -> tuple[tuple[int, ...], ...]:
    """Partition vertices into classes with equal links in every size layer.

    Vertices i, j are equivalent when for every edge size r and every set e
    avoiding both, e+{i} is an edge iff e+{j} is.  At some maximizer of the
    form the weights can be taken equal inside each class, so the class
    partition drives the quotient reduction.
    """
    layers = {
        r: {frozenset(e) for e in graph.edges_of_size(r)}
        for r in graph.edge_sizes()
    }

    def equivalent(i: int, j: int) -> bool:
        for layer in layers.values():
            link_i = {e - {i} for e in layer if i in e and j not in e}
            link_j = {e - {j} for e in layer if j in e and i not in e}
            if link_i != link_j:
                return False
        return True

    classes: list[list[int]] = []
    for v in range(graph.n):
        for cls in classes:
            if equivalent(cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    return tuple(tuple(c) for c in classes)


# ---------------------------------------------------------------------------
# optimizer


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iters: int = 10_000
    tol: float = 1e-10
    seed: int = 0
    rational_certificate: bool = True
    threads: int = 1
    step_init: float = 0.1
    backtrack: float = 0.5

    def __post_init__(self):
        if self.restarts < 0 or self.max_iters < 1:
            raise InvalidArgumentError("restarts must be >= 0 and max_iters >= 1")
        if self.threads < 1:
            raise InvalidArgumentError("threads must be >= 1")
        if not (0 < self.backtrack < 1):
            raise InvalidArgumentError("backtrack factor must lie in (0, 1)")


@dataclass(frozen=True)
class LagrangianResult:
    value: float
    maximizer: SimplexPoint
    support: tuple[int, ...]
    certified_lower_bound: Fraction | None
    certificate_point: SimplexPoint | None
    stationarity_residual: float


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the simplex by sort and threshold."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    cond = u - css / idx > 0
    rho = np.nonzero(cond)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


class _NumericForm:
    """Float view of a PolynomialForm for the inner ascent loop."""

    def __init__(self, form: PolynomialForm):
        self.nvars = form.nvars
        self.coeffs = np.array([float(c) for c, _ in form.terms])
        self.expo = np.array([e for _, e in form.terms], dtype=float)

    def value(self, x: np.ndarray) -> float:
        return float(self.coeffs @ np.prod(x[None, :] ** self.expo, axis=1))

    def grad(self, x: np.ndarray) -> np.ndarray:
        g = np.zeros(self.nvars)
        for a in range(self.nvars):
            k = self.expo[:, a]
            active = k > 0
            if not active.any():
                continue
            rest = np.delete(self.expo[active], a, axis=1)
            xrest = np.delete(x, a)
            prod = np.prod(xrest[None, :] ** rest, axis=1)
            xa = x[a] ** (k[active] - 1.0)  # 0.0 ** 0.0 == 1.0 covers k == 1
            g[a] = float((self.coeffs[active] * k[active] * xa * prod).sum())
        return g


_ARMIJO_SIGMA = 1e-4


def _ascend(num: _NumericForm, x0: np.ndarray, cfg: OptimizerConfig):
    """Projected gradient ascent with Armijo backtracking.

    Returns (x, value, converged).  Convergence means the projected step
    shrank below cfg.tol in norm.
    """
    x = x0.copy()
    fx = num.value(x)
    step = cfg.step_init
    converged = False
    for _ in range(cfg.max_iters):
        g = num.grad(x)
        t = step
        y, fy = x, fx
        for _ in range(60):
            cand = _project_simplex(x + t * g)
            fcand = num.value(cand)
            gain = float(g @ (cand - x))
            if fcand >= fx + _ARMIJO_SIGMA * gain:
                y, fy = cand, fcand
                break
            t *= cfg.backtrack
        move = float(np.linalg.norm(y - x))
        if fy > fx:
            x, fx = y, fy
        if move <= cfg.tol:
            converged = True
            break
        step = min(t * 2.0, 1.0)
    return x, fx, converged


def stationarity_residual(obj, point) -> float:
    """First-order optimality residual over the simplex.

    On the support all partials must agree; off the support they may not
    exceed the common value.  The residual is the worst violation.
    """
    form = polynomial_form(obj)
    ws = _point_weights(point, form.nvars)
    ws = tuple(float(w) for w in ws)
    g = gradient(form, ws)
    on = [g[i] for i, w in enumerate(ws) if w > 0]
    off = [g[i] for i, w in enumerate(ws) if w == 0]
    if not on:
        raise InvalidArgumentError("point has empty support")
    residual = max(on) - min(on)
    if off:
        residual = max(residual, max(off) - max(on), 0.0)
    return max(residual, 0.0)


def _candidate_supports(form: PolynomialForm) -> list[tuple[int, ...]]:
    """Supports worth searching: pair-covered subsets plus the full support.

    A support J qualifies when every pair inside J lies in some term fully
    supported inside J.  Singletons need a term of their own.  The full
    variable set is always kept as a fallback.
    """
    q = form.nvars
    masks = []
    for _, expo in form.terms:
        m = 0
        for i, k in enumerate(expo):
            if k:
                m |= 1 << i
        masks.append(m)
    cover: dict[tuple[int, int], list[int]] = {}
    for m in masks:
        bits = [i for i in range(q) if m >> i & 1]
        for a, b in itertools.combinations(bits, 2):
            cover.setdefault((a, b), []).append(m)
    full = tuple(range(q))
    out = []
    for sub in range(1, 1 << q):
        bits = [i for i in range(q) if sub >> i & 1]
        if len(bits) == 1:
            if any(m and m & ~sub == 0 for m in masks):
                out.append(tuple(bits))
            continue
        ok = True
        for a, b in itertools.combinations(bits, 2):
            if not any(m & ~sub == 0 for m in cover.get((a, b), ())):
                ok = False
                break
        if ok:
            out.append(tuple(bits))
    if full not in out:
        out.append(full)
    out.sort(key=lambda s: (len(s), s))
    return out


def _support_value_closed(form: PolynomialForm, var: int) -> float:
    total = Fraction(0)
    for coeff, expo in form.terms:
        if all(k == 0 or i == var for i, k in enumerate(expo)):
            total += coeff
    return float(total)


def _starts(dim: int, cfg: OptimizerConfig, support_key: int):
    yield np.full(dim, 1.0 / dim)
    for r in range(cfg.restarts):
        seq = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(support_key, r))
        rng = np.random.default_rng(seq)
        yield rng.dirichlet(np.ones(dim))


def maximize(obj, config: OptimizerConfig | None = None) -> LagrangianResult:
    """Global maximum of the form over the simplex.

    Collapses equivalent vertices first (hypergraphs and simple patterns), so
    most structured inputs reduce to very few free variables; symmetric inputs
    with a single class resolve by the closed single-variable path.
    """
    cfg = config or OptimizerConfig()
    form = polynomial_form(obj)
    if not form.terms:
        raise InvalidArgumentError("cannot maximize a form with no terms")

    graph = None
    if isinstance(obj, Hypergraph):
        graph = obj
    elif isinstance(obj, Pattern) and obj.is_simple():
        graph = obj.to_hypergraph()
    if graph is not None and graph.n == form.nvars:
        classes = equivalence_classes(graph)
    else:
        classes = tuple((i,) for i in range(form.nvars))
    qform = form.quotient(classes)

    supports = _candidate_supports(qform)
    tasks = []
    for s_idx, support in enumerate(supports):
        if len(support) == 1:
            tasks.append((support, None))
        else:
            sub = qform.restrict(support)
            tasks.append((support, _NumericForm(sub)))

    def run(task):
        support, num = task
        if num is None:
            value = _support_value_closed(qform, support[0])
            z = np.zeros(qform.nvars)
            z[support[0]] = 1.0
            return value, z, support, True
        key = 0
        for i in support:
            key |= 1 << i
        best = None
        any_converged = False
        for x0 in _starts(len(support), cfg, key):
            x, fx, conv = _ascend(num, x0, cfg)
            any_converged = any_converged or conv
            if best is None or fx > best[1]:
                best = (x, fx)
        z = np.zeros(qform.nvars)
        for i, v in zip(support, best[0]):
            z[i] = v
        return best[1], z, support, any_converged

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            outcomes = list(pool.map(run, tasks))
    else:
        outcomes = [run(t) for t in tasks]

    outcomes.sort(key=lambda o: (-o[0], o[2]))
    value_q, z, support_q, converged = outcomes[0]

    # expand the quotient point back to the original variables
    x_full = np.zeros(form.nvars)
    for c, members in enumerate(classes):
        if z[c] > 0:
            share = z[c] / len(members)
            for v in members:
                x_full[v] = share
    x_full = _project_simplex(x_full)

    value = _NumericForm(form).value(x_full)
    residual = stationarity_residual(form, tuple(float(w) for w in x_full))
    maximizer = SimplexPoint(tuple(float(w) for w in x_full))
    support = maximizer.support

    if not converged or residual >= STATIONARITY_TOL:
        partial = LagrangianResult(
            value=value,
            maximizer=maximizer,
            support=support,
            certified_lower_bound=None,
            certificate_point=None,
            stationarity_residual=residual,
        )
        raise OptimizerFailureError(
            f"no run reached stationarity {STATIONARITY_TOL} "
            f"(residual {residual:.3e})",
            best_so_far=partial,
        )

    certified = None
    cert_point = None
    if cfg.rational_certificate:
        cert_point = _rationalize(maximizer)
        certified = evaluate(form, cert_point)
        if float(certified) > value + CERTIFICATE_SLACK:
            raise OptimizerFailureError(
                "certificate exceeded the numeric value beyond slack",
                best_so_far=None,
            )

    return LagrangianResult(
        value=value,
        maximizer=maximizer,
        support=support,
        certified_lower_bound=certified,
        certificate_point=cert_point,
        stationarity_residual=residual,
    )


def _rationalize(point: SimplexPoint) -> SimplexPoint:
    """Round to denominators <= 1e6 by continued fractions, renormalize exactly."""
    approx = [
        Fraction(float(w)).limit_denominator(CERTIFICATE_DENOMINATOR_CAP)
        for w in point.weights
    ]
    total = sum(approx)
    if total == 0:
        raise InvalidArgumentError("cannot rationalize the zero vector")
    return SimplexPoint(tuple(w / total for w in approx))


def certify_at(obj, point) -> Fraction:
    """Exact rational value of the form at an exact rational simplex point."""
    if not isinstance(point, SimplexPoint):
        point = SimplexPoint(tuple(point))
    if not point.is_rational:
        raise InvalidArgumentError("certification needs exact rational weights")
    value = evaluate(obj, point)
    return Fraction(value)
