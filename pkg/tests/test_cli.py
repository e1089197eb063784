"""Tests for the wsnet command line"""

import io

import pytest

from wsnet import read_wsc
from wsnet.cli import RunConfig, build_parser, run

BOOK = "AuthorNameBookTitle_ISBN/AuthorNameBookTitle_ISBN"
DATE = "ISBN_PubliDate/ISBN_PubliDate"


def invoke(*argv):
    out = io.StringIO()
    code = run([str(o) for o in argv], out)
    return code, out.getvalue()


def value(text, metric):
    "Value of `metric` in a single-network text table"
    line = next(o for o in text.splitlines() if o.startswith(metric + "  "))
    return line.split("  ")[-1].strip()


class TestAnalyze:
    def test_two_op(self, two_op_wsc):
        """Test the two-operation dependency network: 6 nodes, 6 links, one component"""
        code, text = invoke("analyze", "--corpus", two_op_wsc, "--samples", 3, "--replicates", 0)
        assert code == 0
        assert value(text, "nodes") == "6"
        assert value(text, "links") == "6"
        assert value(text, "small components") == "0"
        assert "ER samples=3 seed=42" in text

    def test_deterministic(self, two_op_wsc):
        args = ("analyze", "--corpus", two_op_wsc, "--samples", 4, "--replicates", 0, "--seed", 3)
        assert invoke(*args) == invoke(*args)

    def test_csv(self, two_op_wsc):
        code, text = invoke("analyze", "--corpus", two_op_wsc, "--samples", 0, "--replicates", 0, "--format", "csv")
        assert code == 0
        assert text.splitlines()[0] == "table,metric,network,value"
        assert "components,nodes,syntactic-dependency,6" in text.splitlines()

    def test_interaction_model(self, two_op_wsc):
        """Test a network without links still reports its components"""
        code, text = invoke(
            "analyze", "--corpus", two_op_wsc, "--model", "interaction", "--interaction", "partial", "--samples", 0
        )
        assert code == 0
        assert value(text, "isolated nodes") == "2"

    def test_all_networks(self, book_wsdl_dir):
        """Test one run reports both matchings under both models side by side"""
        args = ("--model", "all", "--matching", "all", "--samples", 0, "--replicates", 0)
        code, text = invoke("analyze", "--corpus", book_wsdl_dir, *args)
        assert code == 0
        header = next(o for o in text.splitlines() if o.startswith("metric"))
        assert header.split() == [
            "metric",
            "syntactic-dependency",
            "semantic-dependency",
            "syntactic-full-interaction",
            "semantic-full-interaction",
        ]

    def test_all_models_with_partial_interaction(self, two_op_wsc):
        args = ("--model", "all", "--interaction", "partial", "--samples", 0, "--replicates", 0)
        code, text = invoke("analyze", "--corpus", two_op_wsc, *args)
        assert code == 0
        header = next(o for o in text.splitlines() if o.startswith("metric"))
        assert header.split() == ["metric", "syntactic-dependency", "syntactic-partial-interaction"]


class TestUsage:
    def test_missing_corpus(self):
        assert invoke("analyze")[0] == 2

    def test_help_shows_defaults(self, capsys):
        assert invoke("analyze", "--help")[0] == 0
        text = " ".join(capsys.readouterr().out.split())
        assert "(default: 100)" in text
        assert "(full when omitted)" in text
        assert "(default: None)" not in text and "(default: True)" not in text

    @pytest.mark.parametrize("command", ["extract", "er-baseline", "fit-degrees", "search", "convert"])
    def test_help_has_no_empty_defaults(self, command, capsys):
        assert invoke(command, "--help")[0] == 0
        text = " ".join(capsys.readouterr().out.split())
        assert not any(o in text for o in ("(default: None)", "(default: True)", "(default: )"))

    def test_interaction_with_dependency_model(self, two_op_wsc, capsys):
        assert invoke("analyze", "--corpus", two_op_wsc, "--interaction", "partial")[0] == 2
        assert "--interaction" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert invoke("extract", "--corpus", tmp_path / "nope.wsc")[0] == 1
        assert "nope.wsc" in capsys.readouterr().err

    def test_bad_wsc(self, tmp_path):
        path = tmp_path / "bad.wsc"
        path.write_text("OP orphan\n")
        assert invoke("extract", "--corpus", path)[0] == 1

    @pytest.mark.parametrize("data", [b"SVC s\nOP o\nIN \xff\n", b"SVC s\nOP o\nIN a\x00b\n"])
    def test_undecodable_or_control_bytes_are_data_errors(self, tmp_path, data, capsys):
        """Test invalid UTF-8 and control characters in a corpus exit 1 and name the line"""
        path = tmp_path / "bad.wsc"
        path.write_bytes(data)
        assert invoke("extract", "--corpus", path)[0] == 1
        assert "line 3" in capsys.readouterr().err

    @pytest.mark.parametrize("flag", ["--samples", "--replicates", "--workers"])
    def test_negative_counts(self, two_op_wsc, flag):
        assert invoke("analyze", "--corpus", two_op_wsc, flag, -1)[0] == 2

    def test_run_config_defaults(self):
        cfg = RunConfig.from_args(build_parser().parse_args(["extract", "--corpus", "x.wsc"]))
        assert (cfg.model, cfg.interaction, cfg.matching, cfg.directed) == ("dependency", "full", "syntactic", True)


class TestExtract:
    def test_export(self, two_op_wsc, tmp_path):
        prefix = tmp_path / "out" / "two_op"
        code, text = invoke("extract", "--corpus", two_op_wsc, "--export", prefix)
        assert code == 0
        assert "nodes\t6\nlinks\t6\n" in text
        assert (tmp_path / "out" / "two_op.edges.tsv").read_text().splitlines()[0] == "a\td"
        assert (tmp_path / "out" / "two_op.provenance.tsv").exists()
        assert (tmp_path / "out" / "two_op.dot").read_text().startswith("digraph")

    def test_interaction(self, book_wsdl_dir):
        code, text = invoke("extract", "--corpus", book_wsdl_dir, "--model", "interaction")
        assert code == 0
        assert text.startswith("# syntactic-full-interaction\nnodes\t2\nlinks\t1\n")


class TestErBaseline:
    def test_values(self):
        code, text = invoke("er-baseline", "--nodes", 269, "--links", 633, "--samples", 2)
        assert code == 0
        line = next(o for o in text.splitlines() if o.startswith("ln N"))
        assert float(line.split("\t")[1]) == pytest.approx(6.54, abs=0.01)
        assert text.startswith("# ER n=269 l=633 samples=2 seed=42 directed=True")

    def test_too_many_links(self, capsys):
        assert invoke("er-baseline", "--nodes", 3, "--links", 7, "--samples", 1)[0] == 2
        assert "[0, 6]" in capsys.readouterr().err


class TestFitDegrees:
    def test_too_small(self, two_op_wsc):
        """Test the two-operation corpus has too few degrees for any fit"""
        code, text = invoke("fit-degrees", "--corpus", two_op_wsc, "--replicates", 0)
        assert code == 1
        assert "in\tn/a" in text


class TestSearch:
    def test_book(self, book_wsdl_dir):
        code, text = invoke("search", "--corpus", book_wsdl_dir, "--in", "AuthorName,BookTitle", "--out", "PubliDate")
        assert code == 0
        assert text == f"# satisfied, 2 layers\n1\t{BOOK}\n2\t{DATE}\n"

    def test_prune(self, book_wsdl_dir):
        args = ("search", "--corpus", book_wsdl_dir, "--in", "AuthorName,BookTitle", "--out", "ISBN", "--prune")
        assert invoke(*args) == (0, f"# satisfied, 1 layers\n1\t{BOOK}\n")

    def test_unsatisfied(self, book_wsdl_dir):
        code, text = invoke("search", "--corpus", book_wsdl_dir, "--in", "ISBN", "--out", "AuthorName")
        assert code == 0
        assert text.startswith("# unsatisfied")


class TestConvert:
    def test_round_trip(self, book_wsdl_dir, tmp_path):
        """Test a WSDL directory converts to a WSC file with the same operations"""
        dest = tmp_path / "book.wsc"
        code, text = invoke("convert", "--corpus", book_wsdl_dir, "--output", dest)
        assert code == 0
        assert "operations\t2\n" in text
        assert {op.id for op in read_wsc(dest).operations} == {BOOK, DATE}
