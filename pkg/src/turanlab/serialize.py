"""JSON object mapping for every public value, plus canonical dumps.

Conventions: exact rationals are strings "p/q" in lowest terms with an
explicit denominator; floats stay JSON numbers; every mapping is strict on
read (unknown or missing keys, wrong types, duplicate edges all raise
ParseError).  dumps_canonical produces byte-stable output: sorted keys and
compact separators, so identical values serialize identically.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError, TuranLabError
from .hypercore import EdgeTypeSet, Hypergraph, Pattern, SimplexPoint, complete
from .jumpcert import (
    ClassifyResult,
    JumpCertificate,
    LambdaWitness,
    PiEvidence,
    WeakJumpWitness,
    known_turan_density,
)
from .lagrangian import LagrangianResult, OptimizerConfig, certify_at
from .seqdensity import SequenceGenerator, UpperDensityReport
from .turansearch import DensityBound, ForbiddenFamily, PiRecord

__all__ = [
    "format_fraction",
    "parse_fraction",
    "dumps_canonical",
    "graph_to_obj",
    "graph_from_obj",
    "pattern_to_obj",
    "pattern_from_obj",
    "point_to_obj",
    "point_from_obj",
    "family_to_obj",
    "family_from_obj",
    "config_to_obj",
    "config_from_obj",
    "result_to_obj",
    "record_to_obj",
    "bound_to_obj",
    "bound_to_tsv",
    "classify_to_obj",
    "weak_witness_to_obj",
    "evidence_to_obj",
    "evidence_from_obj",
    "certificate_to_obj",
    "certificate_from_obj",
    "genspec_to_obj",
    "genspec_from_obj",
    "report_to_obj",
]


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"expected a rational string, got {type(s).__name__}")
    try:
        if "/" in s:
            p, q = s.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {s!r}") from exc


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# helpers


def _expect_keys(obj, where: str, required: tuple, optional: tuple = ()):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    keys = set(obj)
    missing = set(required) - keys
    if missing:
        raise ParseError(f"{where}: missing keys {sorted(missing)}")
    extra = keys - set(required) - set(optional)
    if extra:
        raise ParseError(f"{where}: unknown keys {sorted(extra)}")


def _expect_int(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer")
    return value


def _expect_str(value, where: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a string")
    return value


def _expect_list(value, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list")
    return value


def _wrap(where: str, fn, *args):
    try:
        return fn(*args)
    except TuranLabError as exc:
        raise ParseError(f"{where}: {exc}") from exc


# ---------------------------------------------------------------------------
# graphs and patterns


def graph_to_obj(graph: Hypergraph) -> dict:
    return {"n": graph.n, "edges": [list(e) for e in graph.edges]}


def graph_from_obj(obj, where: str = "graph") -> Hypergraph:
    _expect_keys(obj, where, ("n", "edges"))
    n = _expect_int(obj["n"], f"{where}.n")
    raw = _expect_list(obj["edges"], f"{where}.edges")
    edges = []
    for i, e in enumerate(raw):
        e = _expect_list(e, f"{where}.edges[{i}]")
        edges.append(tuple(_expect_int(v, f"{where}.edges[{i}]") for v in e))
    normalized = [tuple(sorted(e)) for e in edges]
    if len(set(normalized)) != len(normalized):
        raise ParseError(f"{where}: duplicate edges")
    return _wrap(where, Hypergraph, n, tuple(edges))


def pattern_to_obj(pattern: Pattern) -> dict:
    # pattern edges are multiplicity vectors, wrapped as {"mults": [...]}
    # objects so graph and pattern files stay distinguishable
    return {
        "n": pattern.n,
        "edges": [{"mults": list(r)} for r in pattern.edges],
    }


def pattern_from_obj(obj, where: str = "pattern") -> Pattern:
    _expect_keys(obj, where, ("n", "edges"))
    n = _expect_int(obj["n"], f"{where}.n")
    raw = _expect_list(obj["edges"], f"{where}.edges")
    rows = []
    for i, item in enumerate(raw):
        here = f"{where}.edges[{i}]"
        _expect_keys(item, here, ("mults",))
        r = _expect_list(item["mults"], f"{here}.mults")
        rows.append(tuple(_expect_int(v, f"{here}.mults") for v in r))
    return _wrap(where, Pattern, n, tuple(rows))


def point_to_obj(point: SimplexPoint) -> list:
    if point.is_rational:
        return [format_fraction(w) for w in point.weights]
    return [float(w) for w in point.weights]


def point_from_obj(obj, where: str = "point") -> SimplexPoint:
    ws = _expect_list(obj, where)
    if not ws:
        raise ParseError(f"{where}: empty weight list")
    if all(isinstance(w, str) for w in ws):
        weights = tuple(parse_fraction(w) for w in ws)
    elif all(isinstance(w, (int, float)) and not isinstance(w, bool) for w in ws):
        weights = tuple(float(w) for w in ws)
    else:
        raise ParseError(f"{where}: mix of rational strings and numbers")
    return _wrap(where, SimplexPoint, weights)


# ---------------------------------------------------------------------------
# families and density records


def family_to_obj(family: ForbiddenFamily) -> dict:
    return {
        "ambient": list(family.ambient.sizes),
        "members": [graph_to_obj(m) for m in family.members],
        "mode": family.mode,
    }


def family_from_obj(obj, where: str = "family") -> ForbiddenFamily:
    _expect_keys(obj, where, ("ambient", "members"), ("mode",))
    sizes = _expect_list(obj["ambient"], f"{where}.ambient")
    ambient = _wrap(
        f"{where}.ambient", EdgeTypeSet,
        tuple(_expect_int(s, f"{where}.ambient") for s in sizes),
    )
    members = tuple(
        graph_from_obj(m, f"{where}.members[{i}]")
        for i, m in enumerate(_expect_list(obj["members"], f"{where}.members"))
    )
    mode = obj.get("mode", "subgraph")
    return _wrap(where, ForbiddenFamily, ambient, members, _expect_str(mode, f"{where}.mode"))


def record_to_obj(record: PiRecord) -> dict:
    # elapsed is intentionally left out: JSON output stays byte-identical
    return {
        "n": record.n,
        "pi_n": format_fraction(record.pi_n),
        "extremal": [graph_to_obj(g) for g in record.extremal],
        "count": record.graphs_enumerated,
        "exhaustive": record.exhaustive,
    }


def bound_to_obj(bound: DensityBound) -> dict:
    return {
        "family": family_to_obj(bound.family),
        "mode": bound.family.mode,
        "records": [record_to_obj(r) for r in bound.records],
    }


def bound_to_tsv(bound: DensityBound) -> str:
    lines = ["n\tpi_n\tcount\tseconds"]
    for r in bound.records:
        lines.append(
            f"{r.n}\t{format_fraction(r.pi_n)}\t{r.graphs_enumerated}"
            f"\t{r.elapsed:.3f}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# optimizer config and results


def config_to_obj(config: OptimizerConfig) -> dict:
    return {
        "restarts": config.restarts,
        "max_iters": config.max_iters,
        "tol": config.tol,
        "seed": config.seed,
        "rational_certificate": config.rational_certificate,
        "threads": config.threads,
        "step_init": config.step_init,
        "backtrack": config.backtrack,
    }


_CONFIG_KEYS = (
    "restarts", "max_iters", "tol", "seed", "rational_certificate",
    "threads", "step_init", "backtrack",
)


def config_from_obj(obj, where: str = "config") -> OptimizerConfig:
    _expect_keys(obj, where, (), _CONFIG_KEYS)
    kwargs = {}
    for key in _CONFIG_KEYS:
        if key in obj:
            kwargs[key] = obj[key]
    return _wrap(where, lambda: OptimizerConfig(**kwargs))


def result_to_obj(result: LagrangianResult) -> dict:
    return {
        "value": result.value,
        "maximizer": [float(w) for w in result.maximizer.weights],
        "support": list(result.support),
        "certified_lower_bound": (
            None if result.certified_lower_bound is None
            else format_fraction(result.certified_lower_bound)
        ),
        "certificate_point": (
            None if result.certificate_point is None
            else point_to_obj(result.certificate_point)
        ),
        "stationarity_residual": result.stationarity_residual,
    }


# ---------------------------------------------------------------------------
# classification and certificates


def classify_to_obj(result: ClassifyResult) -> dict:
    return {
        "alpha": format_fraction(result.alpha),
        "verdict": result.verdict,
        "matched_form": result.matched_form,
        "k": result.k,
        "interval": (
            None if result.interval is None
            else [format_fraction(result.interval[0]),
                  format_fraction(result.interval[1])]
        ),
        "note": result.note,
    }


def weak_witness_to_obj(witness: WeakJumpWitness) -> dict:
    return {
        "alpha": format_fraction(witness.alpha),
        "kind": witness.kind,
        "description": witness.description,
        "graph": None if witness.graph is None else graph_to_obj(witness.graph),
        "point": None if witness.point is None else point_to_obj(witness.point),
        "family": None if witness.family is None else family_to_obj(witness.family),
        "pi_value": (
            None if witness.pi_value is None else format_fraction(witness.pi_value)
        ),
    }


def evidence_to_obj(evidence: PiEvidence) -> dict:
    return {
        "grade": evidence.grade,
        "value": format_fraction(evidence.value),
        "detail": evidence.detail,
        "n": evidence.n,
    }


def evidence_from_obj(obj, where: str = "pi_evidence") -> PiEvidence:
    _expect_keys(obj, where, ("grade", "value", "detail"), ("n",))
    n = obj.get("n")
    if n is not None:
        n = _expect_int(n, f"{where}.n")
    return _wrap(
        where, PiEvidence,
        _expect_str(obj["grade"], f"{where}.grade"),
        parse_fraction(obj["value"]),
        _expect_str(obj["detail"], f"{where}.detail"),
        n,
    )


def certificate_to_obj(cert: JumpCertificate) -> dict:
    return {
        "alpha": format_fraction(cert.alpha),
        "kind": cert.kind,
        "family": family_to_obj(cert.family),
        "lambda_witnesses": [
            {
                "member": graph_to_obj(w.member),
                "point": point_to_obj(w.point),
                "value": format_fraction(w.value),
            }
            for w in cert.lambda_witnesses
        ],
        "pi_evidence": evidence_to_obj(cert.pi_evidence),
        "gap": format_fraction(cert.gap),
    }


def certificate_from_obj(obj, where: str = "certificate") -> JumpCertificate:
    """Parse and re-verify a certificate.

    Every witness value is recomputed exactly from its point; a closed-form
    evidence value is rechecked against the recognized-family catalog.  Any
    disagreement, or a violated certificate inequality, raises ParseError.
    """
    _expect_keys(
        obj, where,
        ("alpha", "kind", "family", "lambda_witnesses", "pi_evidence"),
        ("gap",),
    )
    alpha = parse_fraction(obj["alpha"])
    kind = _expect_str(obj["kind"], f"{where}.kind")
    family = family_from_obj(obj["family"], f"{where}.family")
    witnesses = []
    for i, w in enumerate(_expect_list(obj["lambda_witnesses"],
                                       f"{where}.lambda_witnesses")):
        wwhere = f"{where}.lambda_witnesses[{i}]"
        _expect_keys(w, wwhere, ("member", "point", "value"))
        member = graph_from_obj(w["member"], f"{wwhere}.member")
        point = point_from_obj(w["point"], f"{wwhere}.point")
        claimed = parse_fraction(w["value"])
        if not point.is_rational:
            raise ParseError(f"{wwhere}.point: certificate points must be rational")
        actual = _wrap(wwhere, certify_at, member, point)
        if actual != claimed:
            raise ParseError(
                f"{wwhere}: stated value {format_fraction(claimed)} "
                f"differs from the recomputed {format_fraction(actual)}"
            )
        witnesses.append(LambdaWitness(member, point, actual))
    evidence = evidence_from_obj(obj["pi_evidence"], f"{where}.pi_evidence")
    if evidence.grade == "closed_form":
        known = known_turan_density(family)
        if known is None or known[0] != evidence.value:
            raise ParseError(
                f"{where}.pi_evidence: closed-form value does not match "
                "the recognized-family catalog"
            )
    cert = _wrap(
        where, JumpCertificate, alpha, kind, family, tuple(witnesses), evidence,
    )
    if "gap" in obj and parse_fraction(obj["gap"]) != cert.gap:
        raise ParseError(f"{where}.gap: stated gap differs from the recomputed one")
    return cert


# ---------------------------------------------------------------------------
# sequence generators and density reports


def genspec_to_obj(gen: SequenceGenerator) -> dict:
    kind = gen.kind
    params: dict = {}
    if kind == "union":
        # the size sequence is implied by the components
        params["components"] = [genspec_to_obj(c) for c in gen.components]
        return {"kind": kind, "params": params}
    if gen.ns is not None:
        params["ns"] = list(gen.ns)
    else:
        params["n_start"] = gen.n_start
        params["n_step"] = gen.n_step
    if kind == "constant":
        params["graph"] = graph_to_obj(gen.base)
    elif kind == "turan" and gen.base == complete(gen.base.n, (2,)) and all(
        w == Fraction(1, gen.base.n) for w in gen.proportions
    ):
        params["parts"] = gen.base.n
    else:
        # blowup, or a turan generator rebuilt with custom weights: both
        # mean the same member rule, so serialize the general form
        kind = "blowup"
        params["base"] = graph_to_obj(gen.base)
        params["proportions"] = [format_fraction(w) for w in gen.proportions]
    return {"kind": kind, "params": params}


def _size_rule(params: dict, where: str):
    ns = params.get("ns")
    if ns is not None:
        ns = tuple(
            _expect_int(n, f"{where}.ns") for n in _expect_list(ns, f"{where}.ns")
        )
    n_start = params.get("n_start")
    if n_start is not None:
        n_start = _expect_int(n_start, f"{where}.n_start")
    n_step = params.get("n_step")
    if n_step is not None:
        n_step = _expect_int(n_step, f"{where}.n_step")
    return ns, n_start, n_step


_SIZE_KEYS = ("ns", "n_start", "n_step")


def genspec_from_obj(obj, where: str = "generator") -> SequenceGenerator:
    _expect_keys(obj, where, ("kind",), ("params",))
    kind = _expect_str(obj["kind"], f"{where}.kind")
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise ParseError(f"{where}.params: expected an object")
    pw = f"{where}.params"
    if kind == "turan":
        _expect_keys(params, pw, ("parts",), _SIZE_KEYS)
        parts = _expect_int(params["parts"], f"{pw}.parts")
        ns, n_start, n_step = _size_rule(params, pw)
        return _wrap(
            where,
            lambda: SequenceGenerator.turan_generator(
                parts, ns=ns, n_start=n_start, n_step=n_step,
            ),
        )
    if kind == "blowup":
        _expect_keys(params, pw, ("base", "proportions"), _SIZE_KEYS)
        base = graph_from_obj(params["base"], f"{pw}.base")
        props = tuple(
            parse_fraction(w)
            for w in _expect_list(params["proportions"], f"{pw}.proportions")
        )
        ns, n_start, n_step = _size_rule(params, pw)
        return _wrap(
            where,
            lambda: SequenceGenerator.blow_up_generator(
                base, props, ns=ns, n_start=n_start, n_step=n_step,
            ),
        )
    if kind == "constant":
        _expect_keys(params, pw, ("graph",), _SIZE_KEYS)
        graph = graph_from_obj(params["graph"], f"{pw}.graph")
        ns, n_start, n_step = _size_rule(params, pw)
        return _wrap(
            where,
            lambda: SequenceGenerator.constant_generator(
                graph, ns=ns, n_start=n_start, n_step=n_step,
            ),
        )
    if kind == "union":
        _expect_keys(params, pw, ("components",))
        components = tuple(
            genspec_from_obj(c, f"{pw}.components[{i}]")
            for i, c in enumerate(_expect_list(params["components"], f"{pw}.components"))
        )
        return _wrap(
            where, lambda: SequenceGenerator.union_generator(*components)
        )
    raise ParseError(
        f"{where}.kind: expected blowup, turan, union, or constant, got {kind!r}"
    )


def report_to_obj(report: UpperDensityReport) -> dict:
    member, subset = report.attaining
    return {
        "t": report.t,
        "value": format_fraction(report.value),
        "attaining": {"member": member, "subset": list(subset)},
        "h_values": [format_fraction(h) for h in report.h_values],
        "exhaustive": report.exhaustive,
        "i_range": list(report.i_range),
        "samples": report.samples,
    }
