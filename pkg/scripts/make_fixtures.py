"""Write the bundled instance files under src/toricres/fixtures/.

The counterexample is rediscovered with ``discover_counterexample(seed=1,
max_rays=6)`` and written out; rerunning this script must leave the files
unchanged (tests/test_fixtures.py checks the same thing without writing).
"""
import contextlib
import io as _io
import json
from pathlib import Path

from toricres.instances import cube_face_fan, discover_counterexample, p1xp1, projective_space
from toricres.cli import main
from toricres.io import fan_to_doc

OUT = Path(__file__).resolve().parent.parent / "src" / "toricres" / "fixtures"


def mono(*exps):
    return {"exponents": list(exps)}


def instances():
    yield "p2_fan", fan_to_doc(projective_space(2))
    yield "p2_incomplete_fan", {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2]]}
    yield "p2_identity_coloring", {"colors": [[0], [1], [2]]}
    yield "p2_bad_coloring", {"colors": [[0, 1], [2], [2]]}
    yield "p2_tuple", {"z": [mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)]}
    yield "p2_tuple_swapped", {"z": [mono(0, 1, 0), mono(1, 0, 0), mono(0, 0, 1)]}
    yield "p2_common_zero_tuple", {"z": [mono(1, 1, 0), mono(0, 1, 0), mono(0, 0, 1)]}
    for j in range(3):
        yield f"p2_d{j + 1}", {"a": [int(i == j) for i in range(3)]}
    yield "p2_zero_divisor", {"a": [0, 0, 0]}
    yield "p2_ideal_all", {"gens": [mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)]}
    yield "p2_ideal_x1", {"gens": [mono(1, 0, 0)]}
    yield "p1_fan", fan_to_doc(projective_space(1))
    yield "p1_d1", {"a": [1, 0]}
    yield "p1_d2", {"a": [0, 1]}
    yield "p1xp1_fan", fan_to_doc(p1xp1())
    yield "p1xp1_coloring", {"colors": [[0], [1], [0], [2]]}
    yield "p1xp1_tuple", {"z": [mono(1, 0, 1, 0), mono(0, 1, 0, 0), mono(0, 0, 0, 1)]}
    yield "p1xp1_d1", {"a": [1, 0, 0, 0]}
    yield "p1xp1_ideal_x1_x3", {"gens": [mono(1, 0, 0, 0), mono(0, 0, 1, 0)]}
    yield "p1xp1_ideal_x2", {"gens": [mono(0, 1, 0, 0)]}
    yield "cube_fan", fan_to_doc(cube_face_fan())
    yield "cube_coloring", {"colors": [[0], [0], [0], [0], [1], [1], [2], [3]]}
    _, f, degrees, polys, _ = discover_counterexample(seed=1, max_rays=6)
    yield "counterexample_fan", fan_to_doc(f)
    for i, a in enumerate(degrees):
        yield f"counterexample_degree{i}", {"a": list(a)}
    yield "counterexample_polygons", {
        "polygons": [[[int(x) for x in v] for v in p.vertices] for p in polys]
    }


# CLI runs whose output is frozen in golden.json; file names refer to this directory
GOLDEN_CASES = {
    "validate_p2": ["validate", "p2_fan"],
    "validate_incomplete": ["validate", "p2_incomplete_fan"],
    "validate_cube": ["validate", "cube_fan"],
    "cdeg_p2_identity": ["cdeg", "p2_fan", "p2_identity_coloring", "--oracle"],
    "cdeg_p1xp1": ["cdeg", "p1xp1_fan", "p1xp1_coloring", "--oracle"],
    "cdeg_p2_not_simplicial": ["cdeg", "p2_fan", "p2_bad_coloring"],
    "cdeg_cube": ["cdeg", "cube_fan", "cube_coloring", "--oracle"],
    "residue_p2": ["residue", "p2_fan", "p2_tuple"],
    "residue_p2_swapped": ["residue", "p2_fan", "p2_tuple_swapped"],
    "residue_p2_common_zero": ["residue", "p2_fan", "p2_common_zero_tuple"],
    "residue_p1xp1": ["residue", "p1xp1_fan", "p1xp1_tuple"],
    "semiample_p2_ample": ["semiample", "p2_fan", "p2_d3"],
    "semiample_p2_zero": ["semiample", "p2_fan", "p2_zero_divisor"],
    "semiample_p1xp1_d1": ["semiample", "p1xp1_fan", "p1xp1_d1"],
    "ideal_p2_all": ["ideal-member", "p2_fan", "p2_ideal_all", "p2_d3"],
    "ideal_p2_x1": ["ideal-member", "p2_fan", "p2_ideal_x1", "p2_d3"],
    "ideal_p1xp1_x1_x3": ["ideal-member", "p1xp1_fan", "p1xp1_ideal_x1_x3", "p1xp1_d1"],
    "ideal_p1xp1_x2": ["ideal-member", "p1xp1_fan", "p1xp1_ideal_x2", "p1xp1_d1"],
    "search_p2": ["search", "p2_fan", "p2_d1", "p2_d2", "p2_d3"],
    "search_p1": ["search", "p1_fan", "p1_d1", "p1_d2"],
    "search_counterexample": ["search", "counterexample_fan", "counterexample_degree0",
                              "counterexample_degree1", "counterexample_degree2"],
}


def resolve(argv, directory=OUT):
    return [a if a.startswith("-") or i == 0 else str(directory / f"{a}.json") for i, a in enumerate(argv)]


def run_case(argv, directory=OUT):
    """(exit code, parsed stdout) of one CLI run."""
    buf = _io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(_io.StringIO()):
        code = main(resolve(argv, directory))
    return code, json.loads(buf.getvalue())


def golden(directory=OUT):
    out = {}
    for name, argv in GOLDEN_CASES.items():
        code, stdout = run_case(argv, directory)
        out[name] = {"argv": argv, "exit": code, "stdout": stdout}
    return out


def render(doc):
    return json.dumps(doc, sort_keys=True) + "\n"


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, doc in instances():
        (OUT / f"{name}.json").write_text(render(doc))
    (OUT / "golden.json").write_text(json.dumps(golden(), sort_keys=True, indent=1) + "\n")
