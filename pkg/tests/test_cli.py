import io
import json
import random

from sessub.cli import (
    EXIT_DISAGREE,
    EXIT_NOT_SUBTYPE,
    EXIT_SUBTYPE,
    EXIT_USAGE,
    export_derivation,
    run,
)
from sessub.inductive import derive
from sessub.randgen import random_type
from sessub.textio import parse, print_type
from sessub.worstgen import BenchRow


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestCheck:
    def test_memo_subtype(self):
        code, out, _ = invoke("check", "--alg", "memo", "end", "end")
        assert code == EXIT_SUBTYPE
        assert "subtype" in out

    def test_inductive_branch(self):
        code, out, _ = invoke("check", "--alg", "inductive", "&{a: end}", "&{a: end, b: end}")
        assert code == EXIT_SUBTYPE

    def test_not_subtype(self):
        code, out, _ = invoke("check", "end", "?[end].end")
        assert code == EXIT_NOT_SUBTYPE
        assert "not-subtype" in out

    def test_parse_error(self):
        code, _, err = invoke("check", "end", "?[end")
        assert code == EXIT_USAGE
        assert "error" in err

    def test_validation_error(self):
        code, _, err = invoke("check", "rec X. X", "end")
        assert code == EXIT_USAGE

    def test_open_type_rejected(self):
        code, _, err = invoke("check", "X", "end")
        assert code == EXIT_USAGE

    def test_all_algorithms(self):
        code, out, _ = invoke("check", "--alg", "all", "rec X. ?[end].X", "?[end].rec X. ?[end].X")
        assert code == EXIT_SUBTYPE
        assert out.count("subtype") >= 3

    def test_file_indirection(self, tmp_path):
        p = tmp_path / "t.st"
        p.write_text("rec X. ?[end].X\n")
        code, _, _ = invoke("check", f"@{p}", f"@{p}")
        assert code == EXIT_SUBTYPE

    def test_tree_dot(self):
        code, out, _ = invoke(
            "check", "--alg", "inductive", "--tree", "dot", "end", "end"
        )
        assert code == EXIT_SUBTYPE
        assert "digraph" in out

    def test_tree_needs_inductive(self):
        code, _, err = invoke("check", "--tree", "dot", "end", "end")
        assert code == EXIT_USAGE

    def test_usage_error(self):
        code, _, _ = invoke("check", "end")
        assert code == EXIT_USAGE


class TestSubterms:
    def test_lists_and_bounds(self):
        code, out, _ = invoke("subterms", "rec X. ?[end].X")
        assert code == EXIT_SUBTYPE
        assert "sub_top_down (3 elements" in out
        assert "bounds hold" in out


class TestGen:
    def test_k1(self):
        code, out, _ = invoke("gen", "1")
        assert code == EXIT_SUBTYPE
        assert out.strip() == "rec X. ?[rec Y0. X].X"


class TestBench:
    def test_records_round_trip(self, tmp_path):
        target = tmp_path / "rows.jsonl"
        code, out, _ = invoke(
            "bench", "--kmax", "2", "--alg", "oracle,memo", "--output", str(target)
        )
        assert code == EXIT_SUBTYPE
        rows = [BenchRow.from_record(json.loads(line)) for line in target.read_text().splitlines()]
        assert [r.k for r in rows] == [1, 2]
        assert all(r.oracle_pairs >= 1 and r.memo_nodes >= 1 for r in rows)


class TestExportDerivation:
    def test_single_end_node(self):
        r = derive(parse("end"), parse("end"), capture_tree=True)
        dot = export_derivation(r.derivation, "dot")
        assert dot.count("label=") == 1
        assert "->" not in dot

    def test_node_count_matches_report(self):
        r = derive(parse("rec X. ?[end].X"), parse("rec X. ?[end].X"), capture_tree=True)
        dot = export_derivation(r.derivation, "dot")
        assert dot.count("label=") == r.nodes_expanded
        structured = json.loads(export_derivation(r.derivation, "structured"))

        def count(rec):
            return 1 + sum(count(c) for c in rec["children"])

        assert count(structured) == r.nodes_expanded

    def test_injective_on_random_successes(self):
        rng = random.Random(5)
        seen = {}
        for _ in range(80):
            t = random_type(rng, 12)
            r = derive(t, t, capture_tree=True)
            text = export_derivation(r.derivation, "structured")
            key = print_type(r.derivation.judgement.goal.lhs), print_type(
                r.derivation.judgement.goal.rhs
            )
            if text in seen:
                assert seen[text] == key
            seen[text] = key
