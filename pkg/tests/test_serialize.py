import json
from fractions import Fraction

import pytest
from hypothesis import given

from strategies import hypergraphs, patterns, rational_points
from turanlab import serialize as ser
from turanlab.errors import ParseError
from turanlab.hypercore import (
    EdgeTypeSet,
    Hypergraph,
    SimplexPoint,
    chain_graph,
    complete,
)
from turanlab.jumpcert import build_certificate, classify12, weak_jump_witness
from turanlab.lagrangian import OptimizerConfig, maximize
from turanlab.seqdensity import SequenceGenerator, sigma_t
from turanlab.turansearch import ForbiddenFamily, density_sequence

F = Fraction
FAST = OptimizerConfig(restarts=6, seed=0)


class TestFractions:
    def test_always_shows_denominator(self):
        assert ser.format_fraction(F(9, 8)) == "9/8"
        assert ser.format_fraction(F(2)) == "2/1"
        assert ser.format_fraction(F(0)) == "0/1"
        assert ser.format_fraction(F(-1, 3)) == "-1/3"

    def test_lowest_terms(self):
        assert ser.format_fraction(F(6, 8)) == "3/4"

    def test_parse_accepts_integers(self):
        assert ser.parse_fraction("3") == F(3)
        assert ser.parse_fraction(3) == F(3)

    @pytest.mark.parametrize("bad", ["a/b", "1/0", "1.5", "3/4/5", None, 1.5])
    def test_parse_rejects_garbage(self, bad):
        with pytest.raises(ParseError):
            ser.parse_fraction(bad)

    @given(rational_points(n=3))
    def test_round_trip(self, p):
        for w in p.weights:
            assert ser.parse_fraction(ser.format_fraction(w)) == w


class TestCanonicalDumps:
    def test_sorted_compact(self):
        assert ser.dumps_canonical({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'

    def test_identical_values_identical_bytes(self):
        a = ser.graph_to_obj(chain_graph())
        b = ser.graph_to_obj(chain_graph())
        assert ser.dumps_canonical(a) == ser.dumps_canonical(b)


class TestGraphObjects:
    @given(hypergraphs())
    def test_round_trip(self, g):
        assert ser.graph_from_obj(ser.graph_to_obj(g)) == g

    def test_rejects_duplicate_edges(self):
        with pytest.raises(ParseError, match="duplicate"):
            ser.graph_from_obj({"n": 2, "edges": [[0, 1], [1, 0]]})

    def test_rejects_unknown_and_missing_keys(self):
        with pytest.raises(ParseError, match="unknown"):
            ser.graph_from_obj({"n": 1, "edges": [], "color": 3})
        with pytest.raises(ParseError, match="missing"):
            ser.graph_from_obj({"n": 1})

    def test_rejects_wrong_types(self):
        with pytest.raises(ParseError):
            ser.graph_from_obj({"n": "2", "edges": []})
        with pytest.raises(ParseError):
            ser.graph_from_obj({"n": 2, "edges": [[0.5]]})
        with pytest.raises(ParseError):
            ser.graph_from_obj({"n": 2, "edges": "01"})

    def test_domain_errors_become_parse_errors(self):
        with pytest.raises(ParseError):
            ser.graph_from_obj({"n": 2, "edges": [[0, 5]]})


class TestPatternAndPointObjects:
    @given(patterns())
    def test_pattern_round_trip(self, p):
        assert ser.pattern_from_obj(ser.pattern_to_obj(p)) == p

    def test_pattern_shape(self):
        from turanlab.hypercore import Pattern

        obj = ser.pattern_to_obj(Pattern(2, ((2, 0), (1, 1))))
        assert obj == {"n": 2, "edges": [{"mults": [1, 1]}, {"mults": [2, 0]}]}

    def test_pattern_rejects_bare_edge_lists(self):
        with pytest.raises(ParseError):
            ser.pattern_from_obj({"n": 2, "edges": [[2, 0]]})

    @given(rational_points(max_n=4))
    def test_rational_point_round_trip(self, p):
        assert ser.point_from_obj(ser.point_to_obj(p)) == p

    def test_float_points_stay_floats(self):
        back = ser.point_from_obj([0.5, 0.5])
        assert not back.is_rational

    def test_rejects_mixed_points(self):
        with pytest.raises(ParseError, match="mix"):
            ser.point_from_obj(["1/2", 0.5])


class TestFamilyAndConfig:
    def test_family_round_trip(self):
        fam = ForbiddenFamily(
            EdgeTypeSet((1, 2)), (chain_graph(),), mode="induced"
        )
        assert ser.family_from_obj(ser.family_to_obj(fam)) == fam

    def test_mode_defaults_to_subgraph(self):
        obj = {"ambient": [2], "members": []}
        assert ser.family_from_obj(obj).mode == "subgraph"

    def test_config_round_trip(self):
        cfg = OptimizerConfig(restarts=4, seed=9, threads=2)
        assert ser.config_from_obj(ser.config_to_obj(cfg)) == cfg

    def test_config_defaults(self):
        assert ser.config_from_obj({}) == OptimizerConfig()

    def test_config_typo_rejected(self):
        with pytest.raises(ParseError, match="unknown"):
            ser.config_from_obj({"restartz": 4})


class TestResultAndBound:
    def test_result_fields(self):
        obj = ser.result_to_obj(maximize(chain_graph(), FAST))
        assert obj["certified_lower_bound"] == "9/8"
        assert obj["certificate_point"] == ["3/4", "1/4"]
        assert obj["support"] == [0, 1]

    def test_bound_json_has_no_timing(self):
        family = ForbiddenFamily(EdgeTypeSet((2,)), (complete(3, (2,)),))
        text = ser.dumps_canonical(ser.bound_to_obj(density_sequence(family, 4)))
        assert "elapsed" not in text and "seconds" not in text

    def test_bound_json_byte_stable(self):
        family = ForbiddenFamily(EdgeTypeSet((2,)), (complete(3, (2,)),))
        a = ser.dumps_canonical(ser.bound_to_obj(density_sequence(family, 4)))
        b = ser.dumps_canonical(ser.bound_to_obj(density_sequence(family, 4)))
        assert a == b

    def test_bound_tsv_table(self):
        family = ForbiddenFamily(EdgeTypeSet((2,)), (complete(3, (2,)),))
        lines = ser.bound_to_tsv(density_sequence(family, 4)).split("\n")
        assert lines[0] == "n\tpi_n\tcount\tseconds"
        row = lines[-1].split("\t")
        assert row[0] == "4" and row[1] == "2/3"
        float(row[3])  # seconds parses as a number


class TestClassifyAndWitness:
    def test_classify_obj(self):
        obj = ser.classify_to_obj(classify12(F(11, 10)))
        assert obj["verdict"] == "strong_jump"
        assert obj["interval"] == ["1/1", "9/8"]

    def test_witness_obj(self):
        obj = ser.weak_witness_to_obj(weak_jump_witness(F(9, 8)))
        assert obj["kind"] == "lambda_graph"
        assert obj["point"] == ["3/4", "1/4"]


class TestCertificateObjects:
    def _cert(self):
        fam = ForbiddenFamily(EdgeTypeSet((1, 2)), (chain_graph(),))
        return build_certificate(F(11, 10), fam, strict=True, config=FAST)

    def test_round_trip_reverifies(self):
        obj = ser.certificate_to_obj(self._cert())
        cert = ser.certificate_from_obj(obj)
        assert cert.gap == F(1, 40)

    def test_tampered_witness_value_rejected(self):
        obj = json.loads(ser.dumps_canonical(ser.certificate_to_obj(self._cert())))
        obj["lambda_witnesses"][0]["value"] = "5/4"
        with pytest.raises(ParseError, match="recomputed"):
            ser.certificate_from_obj(obj)

    def test_tampered_alpha_rejected(self):
        obj = json.loads(ser.dumps_canonical(ser.certificate_to_obj(self._cert())))
        obj["alpha"] = "9/8"
        del obj["gap"]
        with pytest.raises(ParseError):
            ser.certificate_from_obj(obj)

    def test_tampered_gap_rejected(self):
        obj = json.loads(ser.dumps_canonical(ser.certificate_to_obj(self._cert())))
        obj["gap"] = "1/2"
        with pytest.raises(ParseError, match="gap"):
            ser.certificate_from_obj(obj)

    def test_tampered_closed_form_evidence_rejected(self):
        obj = json.loads(ser.dumps_canonical(ser.certificate_to_obj(self._cert())))
        obj["pi_evidence"]["value"] = "1/2"
        with pytest.raises(ParseError, match="catalog"):
            ser.certificate_from_obj(obj)

    def test_float_witness_point_rejected(self):
        obj = json.loads(ser.dumps_canonical(ser.certificate_to_obj(self._cert())))
        obj["lambda_witnesses"][0]["point"] = [0.75, 0.25]
        with pytest.raises(ParseError, match="rational"):
            ser.certificate_from_obj(obj)


class TestGenspecObjects:
    def test_round_trip(self):
        gen = SequenceGenerator.turan_generator(3, n_start=6, n_step=3)
        obj = ser.genspec_to_obj(gen)
        assert obj == {
            "kind": "turan",
            "params": {"parts": 3, "n_start": 6, "n_step": 3},
        }
        assert ser.genspec_from_obj(obj) == gen

    def test_blowup_round_trip(self):
        gen = SequenceGenerator.blow_up_generator(
            chain_graph(), (F(3, 4), F(1, 4)), ns=(8, 12)
        )
        obj = ser.genspec_to_obj(gen)
        assert obj["kind"] == "blowup"
        assert obj["params"]["proportions"] == ["3/4", "1/4"]
        assert ser.genspec_from_obj(obj) == gen

    def test_unknown_kind(self):
        with pytest.raises(ParseError, match="kind"):
            ser.genspec_from_obj({"kind": "spiral", "params": {"ns": [3]}})

    def test_parts_only_for_turan(self):
        with pytest.raises(ParseError):
            ser.genspec_from_obj(
                {"kind": "constant", "params": {"parts": 2, "ns": [3]}}
            )
        with pytest.raises(ParseError):
            ser.genspec_from_obj(
                {"kind": "blowup", "params": {"parts": 2, "ns": [3]}}
            )

    def test_flat_keys_rejected(self):
        with pytest.raises(ParseError):
            ser.genspec_from_obj({"kind": "turan", "parts": 2, "ns": [4]})

    def test_union_round_trip(self):
        u = SequenceGenerator.union_generator(
            SequenceGenerator.constant_generator(
                Hypergraph(3, ((0,),)), ns=(3, 4)
            ),
            SequenceGenerator.constant_generator(
                Hypergraph(3, ((0, 1),)), ns=(3, 4)
            ),
        )
        assert ser.genspec_from_obj(ser.genspec_to_obj(u)) == u

    def test_report_obj(self):
        gen = SequenceGenerator.turan_generator(2, ns=(4, 6))
        obj = ser.report_to_obj(sigma_t(gen, 3, i_range=(0, 1)))
        assert obj["value"] == "2/3"
        assert obj["exhaustive"] is True
        assert obj["samples"] is None
        assert set(obj["attaining"]) == {"member", "subset"}
