import json
import subprocess
import sys
from pathlib import Path

import pytest

from toric_ech import make_polygon
from toric_ech.cli import main
from toric_ech.schema import (
    SchemaError,
    domain_from_json,
    domain_to_json,
    generator_from_json,
    generator_to_json,
)

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(DATA / a) if a.endswith(".json") and "/" not in a else a for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestSchema:
    @pytest.mark.parametrize("doc", [
        {"type": "ellipsoid", "a": "1", "b": "2"},
        {"type": "polydisk", "a": "1", "b": "1"},
        {"type": "ball", "r": "3/2"},
        {"type": "polygon", "breakpoints": [["0", "2"], ["1", "0"]]},
        {"type": "polygon", "breakpoints": [["0", "7/3"], ["1/3", "2"], ["5/4", "1/8"]]},
    ])
    def test_round_trip(self, doc):
        assert domain_to_json(domain_from_json(doc)) == doc

    def test_polygon_normalizes(self):
        dom = domain_from_json({"type": "polygon", "breakpoints": [["0", "2"], ["1/2", "1"], ["1", "0"]]})
        assert dom == make_polygon([(0, 2), (1, 0)])

    @pytest.mark.parametrize("doc", [
        [], {"a": "1"}, {"type": "cube", "a": "1"}, {"type": "ball"},
        {"type": "ball", "r": 1.5}, {"type": "polygon", "breakpoints": [["0"]]},
        {"type": "polygon", "breakpoints": "0,1"},
    ])
    def test_structural_errors(self, doc):
        with pytest.raises(SchemaError):
            domain_from_json(doc)

    def test_generator_round_trip(self):
        doc = {"edges": [{"p": 0, "q": 1, "m": 2, "label": "e"}, {"p": 1, "q": 1, "m": 1, "label": "h"}]}
        assert generator_to_json(generator_from_json(doc)) == doc

    def test_generator_errors(self):
        with pytest.raises(SchemaError):
            generator_from_json({"edges": [{"p": 1, "q": 1, "label": "x"}]})
        with pytest.raises(SchemaError):
            generator_from_json({"edges": [{"p": "1", "q": 1}]})


class TestCommands:
    def test_capacities(self, capsys):
        assert run(capsys, "capacities", "ball1.json", "--k", "4") == (0, "0 1 1 2 2\n", "")
        assert run(capsys, "capacities", "e_1_2.json", "--k", "2")[1] == "0 1 2\n"
        assert run(capsys, "capacities", "ball1.json", "--k", "0")[1] == "0\n"

    def test_capacities_json(self, capsys):
        code, out, _ = run(capsys, "--json", "capacities", "ball1.json", "--k", "3")
        doc = json.loads(out)
        assert doc["capacities"] == ["0", "1", "1", "2"]
        assert domain_from_json(doc["domain"]) == domain_from_json({"type": "ball", "r": "1"})

    def test_orbits(self, capsys):
        _, out, _ = run(capsys, "orbits", "ball1.json", "--action", "1")
        assert [line.split()[0] for line in out.splitlines()] == ["e_{0,1}", "e_{1,0}", "e_{1,1}", "h_{1,1}"]
        assert run(capsys, "orbits", "ball1.json", "--action", "1/2")[1] == ""
        _, out, _ = run(capsys, "orbits", "triangle_1_2.json", "--action", "2")
        assert "e_{1,1}      2" in out and "h_{1,1}      2" in out

    def test_generators(self, capsys):
        _, out, _ = run(capsys, "generators", "ball1.json", "--budget", "2", "--all-e")
        assert len(out.splitlines()) == 12

    def test_index(self, capsys):
        assert run(capsys, "index", "gen_h11.json", "triangle_1_2.json")[1] == "h_{1,1}: L=3 I=3 A=2\n"
        code, out, _ = run(capsys, "--json", "index", "gen_mixed.json", "ball1.json")
        doc = json.loads(out)
        assert (doc["index"], doc["action"]) == (2 * (doc["lattice_count"] - 1), "3")

    def test_check_embed(self, capsys):
        assert run(capsys, "check-embed", "ball2.json", "ball1.json") == (0, "obstructed at k=1\n", "")
        code, out, _ = run(capsys, "check-embed", "e_1_2.json", "e_3h_3.json", "--k", "20")
        assert code == 1 and out == "no obstruction up to k=20\n"

    def test_certify_loop_codes(self, capsys):
        code, out, _ = run(capsys, "certify-loop", "e_1_2.json", "e_3h_3.json")
        assert code == 0 and out.splitlines()[0] == "NONCONTRACTIBLE"
        code, out, _ = run(capsys, "certify-loop", "e_1_2.json", "e_3_7h.json")
        assert code == 1 and "ball radii: [2, 3]" in out
        code, out, _ = run(capsys, "certify-loop", "e_1_3.json", "e_5h_4.json")
        assert code == 2 and out.startswith("INCONCLUSIVE")

    def test_check_ball(self, capsys):
        assert run(capsys, "check-ball", "e_1_2.json", "e_3_7h.json") == (0, "ball radii: [2, 3]\n", "")
        assert run(capsys, "check-ball", "e_1_2.json", "e_3h_3.json")[0] == 1

    def test_breaking(self, capsys):
        code, out, _ = run(capsys, "breaking", "e_1_2.json", "e_3h_3.json")
        assert code == 0 and "survivors: e_{0,1}\n" in out
        code, out, _ = run(capsys, "breaking", "ball1.json", "ball1.json")
        assert code == 2

    def test_curve_check(self, capsys):
        code, out, _ = run(capsys, "curve-check", "curve_default.json")
        assert code == 0
        assert "ind = 0" in out and "w(u1+u2) <= -2" in out and "delta in [-inf, -1]" in out
        assert run(capsys, "curve-check", "curve_top3.json")[0] == 1

    def test_quiet(self, capsys):
        assert run(capsys, "--quiet", "certify-loop", "e_1_3.json", "e_5h_4.json") == (2, "", "")
        assert run(capsys, "certify-loop", "--quiet", "e_1_2.json", "e_3h_3.json") == (0, "", "")

    def test_plot(self, capsys, tmp_path):
        target = tmp_path / "out.svg"
        code, out, _ = run(capsys, "plot", "e_1_2.json", "e_3h_3.json", "--svg", str(target))
        svg = target.read_text()
        assert code == 0 and svg.count("<polyline") == 2
        assert "x = pi|z1|^2" in svg and "y = pi|z2|^2" in svg


class TestErrors:
    @pytest.mark.parametrize("argv,code", [
        (["plot"], 64),
        (["capacities"], 64),
        (["capacities", "ball1.json", "--k", "-1"], 64),
        (["frobnicate"], 64),
        (["capacities", "bad_missing.json"], 64),
        (["capacities", "bad_float.json"], 64),
        (["capacities", "bad_syntax.json"], 64),
        (["capacities", "bad_profile.json"], 65),
        (["breaking", "e_3h_3.json", "e_1_2.json"], 65),
        (["capacities", "missing.json"], 66),
    ])
    def test_exit_codes(self, capsys, argv, code):
        got, out, err = run(capsys, *argv)
        assert got == code
        assert out == ""
        assert err.strip()

    def test_unwritable_svg(self, capsys, tmp_path):
        target = tmp_path / "no" / "such" / "dir" / "out.svg"
        code, out, err = run(capsys, "plot", "ball1.json", "--svg", str(target))
        assert code == 74 and out == "" and str(target) in err


class TestGolden:
    CASES = {
        "capacities_ball1.json": ["--json", "capacities", "ball1.json", "--k", "10", "--witness"],
        "certify_loop.json": ["--json", "certify-loop", "e_1_2.json", "e_3h_3.json"],
        "breaking.json": ["--json", "breaking", "e_1_2.json", "e_3h_3.json"],
        "orbits_triangle.json": ["--json", "orbits", "triangle_1_2.json", "--action", "2"],
        "curve_default.json": ["--json", "curve-check", "curve_default.json"],
        "nested_triangles.svg": ["plot", "e_1_2.json", "e_3h_3.json"],
        "ball_staircase.svg": ["plot", "ball1.json", "--capacities", "10"],
    }

    @pytest.mark.parametrize("name", sorted(CASES))
    def test_byte_identical(self, capsys, name):
        code, out, _ = run(capsys, *self.CASES[name])
        assert code == 0
        assert out.encode() == (GOLDEN / name).read_bytes()

    def test_json_reparses(self, capsys):
        doc = json.loads((GOLDEN / "breaking.json").read_text())
        assert [s for s in doc["survivors"]] == [[{"kind": "e", "multiplicity": 1, "p": 0, "q": 1}]]
        assert doc["window"] == ["1", "3/2"]

    def test_staircase_steps(self):
        svg = (GOLDEN / "ball_staircase.svg").read_text()
        assert svg.count("<circle") == 11

    def test_subprocess_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "toric_ech", "capacities", str(DATA / "e_1_2.json"),
                               "--k", "5"], capture_output=True, text=True, check=False)
        assert (proc.returncode, proc.stdout, proc.stderr) == (0, "0 1 2 2 3 3\n", "")
