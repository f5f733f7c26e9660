"""
Tests for the command line: reports, formats and exit codes.
"""

import json
from io import StringIO

import pytest

from affine_weyl.cli import build_parser, main


def run(*argv):
    out = StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


class TestClassifyCommand:
    """affine-weyl classify"""

    def test_worked_example(self, worked_example):
        """The report names the class and the invariants."""
        code, text = run("classify", worked_example)
        assert code == 0
        body = json.loads(text)
        assert body["descriptor"] == "C:n=7:(2,2,0,1)"
        assert body["invariants"] == {"sum": 12, "sum_plus": 14, "minus": 4, "f": 14}
        assert body["header"]["command"] == "classify"
        assert body["header"]["generator"] == "PCG64"
        assert body["conjugator"]["n"] == 7

    def test_group_option(self):
        """--group chooses the family."""
        code, text = run("classify", "(+1 2)^0 (+3 4)^0", "--group", "B")
        assert code == 0
        assert json.loads(text)["descriptor"] == "B:n=4:(2,0,0,0):f=0"

    def test_text_format(self):
        """Plain text lists header and summary lines."""
        code, text = run("classify", "(-1)^1 (+2)^0", "--format", "text")
        assert code == 0
        assert "descriptor: C:n=2:(0,0,1,1)" in text

    def test_parse_error(self):
        """Bad notation exits with the usage code."""
        code, text = run("classify", "(+1 2)^1 x")
        assert code == 2
        assert text == ""

    def test_not_a_member(self):
        """An involution outside the family exits with the usage code."""
        code, _ = run("classify", "(-1)^1 (+2)^0 (+3)^0", "--group", "B")
        assert code == 2

    def test_dot_needs_a_graph(self):
        """DOT output is only for graph reports."""
        code, _ = run("classify", "(-1)^1 (+2)^0", "--format", "dot")
        assert code == 2


class TestOtherCommands:
    """commutes, neighbors, path and census."""

    def test_commutes(self):
        """Both answers are reported."""
        code, text = run("commutes", "(+1 2)^1", "(-1)^2 (-2)^0")
        body = json.loads(text)
        assert code == 0
        assert body["commutes"] is True
        assert body["oracle"] is True

    def test_neighbors(self):
        """One record per neighbour."""
        code, text = run("neighbors", "(+1 2)^0 (-3)^0", "--window", "1")
        body = json.loads(text)
        assert code == 0
        assert body["count"] == len(body["records"])
        assert body["count"] > 0

    def test_path(self):
        """Explicit paths report their bound and witness."""
        code, text = run("path", "(+1 3)^0 (+2 4)^2", "--group", "B")
        body = json.loads(text)
        assert code == 0
        assert body["length"] <= body["bound"] == 3
        assert body["witness"][0] == "(+1 3)^0 (+2 4)^2"

    def test_census_needs_rank(self):
        """census without --n is a usage error."""
        code, _ = run("census", "--group", "B")
        assert code == 2

    def test_census_csv(self):
        """The census lists every class as a CSV row."""
        code, text = run("census", "--group", "B", "--n", "3", "--window", "1", "--format", "csv")
        assert code == 0
        lines = text.splitlines()
        assert lines[0] == "# command=census"
        header = next(line for line in lines if not line.startswith("#"))
        assert header.startswith("descriptor,status,clause,bound")


class TestGraphCommand:
    """affine-weyl graph"""

    def test_dot(self):
        """DOT output has one node per vertex and a comment header."""
        code, text = run("graph", "B:n=4:(2,0,0,0):f=0", "--window", "1", "--format", "dot")
        assert code == 0
        assert text.startswith("// command=graph")
        body = [line for line in text.splitlines() if not line.startswith("//")]
        assert "graph" in body[0]
        assert body[-1] == "}"

    def test_json_summary(self):
        """JSON output carries the verdict and component count."""
        code, text = run("graph", "C:n=4:(1,2,0,0)", "--window", "1")
        body = json.loads(text)
        assert code == 0
        assert body["verdict"]["clause"] == "iv"
        assert body["components"] > 1
        assert len(body["records"]) == body["vertices"]

    def test_budget_exceeded(self):
        """Hitting the node cap exits with code 3."""
        code, _ = run("graph", "C:n=4:(1,1,0,1)", "--window", "2", "--max-nodes", "5")
        assert code == 3

    def test_out_file(self, tmp_path):
        """--out writes the report to a file."""
        target = tmp_path / "graph.csv"
        code, text = run(
            "graph", "C:n=2:(1,0,0,0)", "--window", "1", "--format", "csv", "--out", str(target)
        )
        assert code == 0
        assert text == ""
        assert "vertex,element,component" in target.read_text(encoding="utf-8")

    def test_bad_descriptor(self):
        """Unreadable descriptors are usage errors."""
        code, _ = run("graph", "B6 (2,2,0,0)")
        assert code == 2


class TestVerifyCommand:
    """affine-weyl verify"""

    def test_lemmas(self):
        """The commuting rules hold."""
        code, text = run("verify", "lemmas", "--window", "1")
        body = json.loads(text)
        assert code == 0
        assert body["passed"] is True
        assert body["records"][0]["suite"] == "lemmas"

    def test_unknown_suite(self):
        """argparse refuses unknown suites."""
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["verify", "nonsense"])
        assert info.value.code == 2

    def test_negative_window(self):
        """Invalid run settings are usage errors."""
        code, _ = run("verify", "lemmas", "--window", "-1")
        assert code == 2


class TestDeterminism:
    """Same arguments and seed give the same bytes."""

    @pytest.mark.parametrize(
        "argv",
        [
            ("verify", "lemmas", "--seed", "5"),
            ("graph", "C:n=4:(1,2,0,0)", "--window", "1", "--seed", "5"),
            ("graph", "B:n=4:(2,0,0,0):f=0", "--window", "1", "--seed", "5", "--format", "dot"),
        ],
    )
    def test_repeat_runs_identical(self, argv):
        """Two runs write identical reports."""
        first = run(*argv)
        second = run(*argv)
        assert first[0] == 0
        assert first == second

    def test_header_names_seed_and_generator(self):
        """The report header records the seed and the generator behind it."""
        code, text = run("verify", "lemmas", "--seed", "5")
        header = json.loads(text)["header"]
        assert code == 0
        assert header["seed"] == 5
        assert header["generator"] == "PCG64"

    def test_dot_header_names_seed(self):
        """DOT reports carry the seed in their comment header."""
        _, text = run(
            "graph", "B:n=4:(2,0,0,0):f=0", "--window", "1", "--seed", "5", "--format", "dot"
        )
        lines = text.splitlines()
        assert "// seed=5" in lines
        assert "// generator=PCG64" in lines
