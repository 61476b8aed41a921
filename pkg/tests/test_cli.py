import json

import pytest
from click.testing import CliRunner

from lpalattice import OMEGA, Bundle, Graph
from lpalattice.cli import ParseFailure, format_graph, main, parse_graph

import helpers

TOEPLITZ_TEXT = """\
# loop plus sink
vertices u,v;
edge e: u->u;
edge f: u->v;
"""


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestGraphParsing:
    def test_toeplitz(self):
        g = parse_graph(TOEPLITZ_TEXT)
        assert g == helpers.toeplitz()

    def test_single_vertex(self):
        assert parse_graph("vertices v;") == Graph(["v"], [])

    def test_omega_bundle(self):
        g = parse_graph("vertices w,a; bundle g: w->a * inf;")
        assert g == Graph(["w", "a"], [Bundle("g", "w", "a", OMEGA)])
        assert g.is_infinite_emitter("w")

    def test_finite_bundle(self):
        g = parse_graph("vertices u;\nbundle e: u->u * 3;")
        assert g.bundles[0].multiplicity == 3

    def test_duplicate_vertex_rejected(self):
        with pytest.raises(ParseFailure) as err:
            parse_graph("vertices u,u;")
        assert "duplicate" in str(err.value)

    def test_dangling_reference_rejected(self):
        with pytest.raises(ParseFailure):
            parse_graph("vertices u;\nedge e: u->zz;")

    def test_error_carries_position(self):
        with pytest.raises(ParseFailure) as err:
            parse_graph("vertices u;\n  edgy e: u->u;")
        assert "line 2, col 3" in str(err.value)

    def test_missing_semicolon(self):
        with pytest.raises(ParseFailure):
            parse_graph("vertices u")

    def test_round_trip_on_catalog(self):
        for g in (
            helpers.toeplitz(),
            helpers.fork(),
            helpers.omega_fork(),
            helpers.double_loop(),
            helpers.single_vertex(),
        ):
            assert parse_graph(format_graph(g)) == g


class TestCommands:
    def test_pairs_toeplitz(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        result = runner.invoke(main, ["pairs", "--graph", gfile])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["{}", "{v}", "{u,v}"]

    def test_pairs_json_is_byte_stable(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        outs = [
            runner.invoke(main, ["pairs", "--graph", gfile, "--json"]).output
            for _ in range(2)
        ]
        assert outs[0] == outs[1]
        assert json.loads(outs[0]) == {"pairs": ["{}", "{v}", "{u,v}"]}

    def test_pairs_dot(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        result = runner.invoke(main, ["pairs", "--graph", gfile, "--dot"])
        assert result.exit_code == 0
        assert result.output.startswith("digraph")
        assert '"{v}" -> "{u,v}"' in result.output

    def test_closure_and_saturate(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        assert runner.invoke(main, ["closure", "--graph", gfile, "u"]).output.strip() == "u,v"
        assert runner.invoke(main, ["closure", "--graph", gfile, "v"]).output.strip() == "v"
        fork = _write(tmp_path, "f.graph", "vertices u,v,w; edge a: u->v; edge b: u->w;")
        out = runner.invoke(main, ["saturate", "--graph", fork, "--set", "v,w"]).output
        assert out.strip() == "u,v,w"

    def test_cycles_command(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        result = runner.invoke(main, ["cycles", "--graph", gfile, "--json"])
        data = json.loads(result.output)
        assert data["cycles"][0]["cycle"] == "e.0"
        assert data["cycles"][0]["exclusive"] is True
        assert data["cycles"][0]["exit_closure"] == ["v"]

    def test_lattice_product_reproduces_prime_example(self, runner, tmp_path):
        gtext = "vertices v,w; edge e1: v->v; edge e2: v->v; edge f: v->w;"
        gfile = _write(tmp_path, "g.graph", gtext)
        left = _write(tmp_path, "a.json", json.dumps({"f": {"{w}": "(1)", "{v,w}": "(0)"}}))
        right = _write(tmp_path, "b.json", json.dumps({"f": {"{w}": "(2)", "{v,w}": "(4)"}}))
        result = runner.invoke(
            main,
            ["lattice-op", "--graph", gfile, "--ring", "Z", "product", left, right],
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["f"] == {"{w}": "(2)", "{v,w}": "(0)"}

    def test_graded_and_largest_graded(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        pair = _write(
            tmp_path,
            "p.json",
            json.dumps({"f": {"{v}": "(2)", "{u,v}": "(4)"}, "g": {"e.0": "<4, 2x+2>"}}),
        )
        assert (
            runner.invoke(
                main, ["graded", "--graph", gfile, "--ring", "Z", pair]
            ).output.strip()
            == "not graded"
        )
        result = runner.invoke(
            main, ["largest-graded", "--graph", gfile, "--ring", "Z", pair]
        )
        assert json.loads(result.output)["g"] == {"e.0": "<4>"}

    def test_prime_command(self, runner, tmp_path):
        gtext = "vertices v,w; edge e1: v->v; edge e2: v->v; edge f: v->w;"
        gfile = _write(tmp_path, "g.graph", gtext)
        pair = _write(tmp_path, "p.json", json.dumps({"f": {"{w}": "(2)", "{v,w}": "(0)"}}))
        result = runner.invoke(main, ["prime", "--graph", gfile, "--ring", "Z", pair, "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["passes"] is True

    def test_generators_round_trip(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        pair_doc = {"f": {"{v}": "(2)", "{u,v}": "(4)"}, "g": {"e.0": "<4, 2x+2>"}}
        pair = _write(tmp_path, "p.json", json.dumps(pair_doc))
        gens = runner.invoke(
            main, ["generators", "--graph", gfile, "--ring", "Z", pair]
        )
        assert gens.exit_code == 0
        gens_file = _write(tmp_path, "gens.json", gens.output)
        back = runner.invoke(
            main, ["from-generators", "--graph", gfile, "--ring", "Z", gens_file]
        )
        assert back.exit_code == 0
        data = json.loads(back.output)
        assert data["f"] == pair_doc["f"]
        assert data["g"] == {"e.0": "<4, 2 + 2x>"}

    def test_enumerate(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", "vertices u,v; edge e: u->v;")
        result = runner.invoke(
            main, ["enumerate", "--graph", gfile, "--ring", "Z/4", "--json"]
        )
        assert json.loads(result.output)["count"] == 3

    def test_crosscheck_command(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", "vertices u,v; edge e: u->v;")
        result = runner.invoke(main, ["crosscheck", "--graph", gfile, "--ring", "Z/4"])
        assert result.exit_code == 0
        assert "PASSED" in result.output

    def test_out_option_writes_file(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        target = tmp_path / "out.json"
        result = runner.invoke(
            main, ["pairs", "--graph", gfile, "--json", "--out", str(target)]
        )
        assert result.exit_code == 0
        assert json.loads(target.read_text())["pairs"] == ["{}", "{v}", "{u,v}"]


class TestExitCodes:
    def test_parse_error_is_2(self, runner, tmp_path):
        gfile = _write(tmp_path, "bad.graph", "vertices u\nedge e: u->u;")
        result = runner.invoke(main, ["pairs", "--graph", gfile])
        assert result.exit_code == 2
        assert result.output == "" or "error:parse:" in result.output

    def test_domain_error_is_1(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        result = runner.invoke(main, ["enumerate", "--graph", gfile, "--ring", "Z/4"])
        assert result.exit_code == 1

    def test_unknown_vertex_in_closure_is_domain_error(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        result = runner.invoke(main, ["closure", "--graph", gfile, "zz"])
        assert result.exit_code == 1

    def test_infinite_ring_enumeration_refused(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", "vertices u,v; edge e: u->v;")
        result = runner.invoke(main, ["enumerate", "--graph", gfile, "--ring", "Z"])
        assert result.exit_code == 1

    def test_enumerate_graded_flag_allows_cycles(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        result = runner.invoke(
            main, ["enumerate", "--graph", gfile, "--ring", "F2", "--graded", "--json"]
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["count"] == 3

    def test_invalid_pair_file_is_domain_error(self, runner, tmp_path):
        gfile = _write(tmp_path, "g.graph", TOEPLITZ_TEXT)
        pair = _write(
            tmp_path, "p.json", json.dumps({"f": {"{v}": "(4)", "{u,v}": "(2)"}, "g": {"e.0": "<2>"}})
        )
        result = runner.invoke(main, ["graded", "--graph", gfile, "--ring", "Z", pair])
        assert result.exit_code == 1
