import json

import numpy as np
import pytest

from hqft import catalog, io
from hqft.cli import main, run
from hqft.group import make_group
from hqft.surface import genus_surface, sphere, tetrahedron, torus


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        io.save(path, data)
        return str(path)

    d, C, u = catalog.dual_numbers_constants()
    z4 = make_group([4])
    return {
        "C": write("C.json", io.algebra_to_json(catalog.ground_field())),
        "C2": write("C2.json", io.algebra_to_json(catalog.cyclic_group_algebra(2))),
        "M2": write("M2.json", io.algebra_to_json(catalog.matrix_algebra(2))),
        "M2C": write("M2C.json", io.algebra_to_json(catalog.block_algebra([2, 1]))),
        "dual": write("dual.json", {"dim": d, "unit": [[1, 0], [0, 0]],
                                    "structure": [[0, 0, 0, 1, 0], [0, 1, 1, 1, 0], [1, 0, 1, 1, 0]]}),
        "z2": write("z2.json", {"orders": [2]}),
        "z4": write("z4.json", {"orders": [4]}),
        "minus1": write("minus1.json", {"images": [[[-1, 0], [0, 0], [0, 0], [-1, 0]]]}),
        "phi_i": write("phi_i.json", {"images": [[[0, 1]]]}),
        "sphere": write("sphere.json", io.surface_to_json(sphere())),
        "torus": write("torus.json", io.surface_to_json(torus())),
        "tet": write("tet.json", io.surface_to_json(tetrahedron())),
        "torus3": write("torus3.json", io.surface_to_json(torus(z4, [[3]]))),
        "tmp": tmp_path,
    }


def out(capsys, argv):
    code = main(argv)
    return json.loads(capsys.readouterr().out), code


def test_check_algebra_commutative(capsys, files):
    rep, code = out(capsys, ["check-algebra", files["C2"]])
    assert code == 0 and rep["passed"]
    assert rep["outputs"]["center_dim"] == 2
    assert all("tolerance" in c and "residual" in c for c in rep["checks"])
    assert files["C2"] in rep["inputs"]


def test_check_algebra_dual_numbers(capsys, files):
    rep, code = out(capsys, ["check-algebra", files["dual"]])
    assert code == 2 and rep["error"] == "SingularMetric"


def test_check_algebra_scalar_action(capsys, files):
    rep, code = out(capsys, ["check-algebra", files["M2"], "--group", files["z2"], "--action", files["minus1"]])
    assert code == 0, rep


def test_action_without_group(capsys, files):
    rep, code = out(capsys, ["check-algebra", files["M2"], "--action", files["minus1"]])
    assert code == 1 and rep["error"] == "BadFile"


def test_missing_file(capsys, files):
    rep, code = out(capsys, ["check-algebra", str(files["tmp"] / "nope.json")])
    assert code == 1 and rep["error"] == "BadFile"


def test_statesum_sphere(capsys, files):
    rep, code = out(capsys, ["statesum", files["sphere"], files["C"], "--oracle"])
    assert code == 0
    o = rep["outputs"]
    assert o["Z"] == pytest.approx([1.0, 0.0])
    assert (o["chi"], o["genus"], o["total_class"]) == (2, 0, [[]])
    assert o["Z_oracle"] == pytest.approx([1.0, 0.0])
    assert isinstance(o["plan_cost"], int)


def test_statesum_torus_block(capsys, files):
    rep, code = out(capsys, ["statesum", files["torus"], files["M2C"], "--oracle"])
    assert code == 0 and rep["outputs"]["Z"] == pytest.approx([2.0, 0.0])


def test_statesum_twisted(capsys, files):
    rep, code = out(capsys, ["statesum", files["torus3"], files["C"],
                             "--group", files["z4"], "--action", files["phi_i"]])
    assert code == 0 and rep["outputs"]["Z"] == pytest.approx([0.0, -1.0])
    assert rep["outputs"]["total_class"] == [[3]]


def test_oracle_guard_is_numerical(capsys, files, tmp_path):
    path = tmp_path / "g2.json"
    io.save(path, io.surface_to_json(genus_surface(2)))
    rep, code = out(capsys, ["oracle", str(path), files["M2"]])
    assert code == 2 and rep["error"] == "TooLarge"


def test_move_then_statesum(capsys, files, tmp_path):
    star = str(tmp_path / "star.json")
    rep, code = out(capsys, ["move", files["tet"], "13:2", "--out", star])
    assert code == 0 and rep["outputs"]["after"]["triangles"] == 6
    z0, _ = out(capsys, ["statesum", files["tet"], files["M2C"]])
    z1, _ = out(capsys, ["statesum", star, files["M2C"]])
    assert z1["outputs"]["Z"] == pytest.approx(z0["outputs"]["Z"], rel=1e-8)


def test_move_shift_keeps_class(capsys, files):
    rep, code = out(capsys, ["move", files["torus3"], "shift:0,1", "--group", files["z4"]])
    assert code == 0
    assert rep["outputs"]["before"]["total_class"] == rep["outputs"]["after"]["total_class"] == [[3]]
    assert rep["outputs"]["surface"]["triangles"] == [{}, {"label": [3]}]


def test_move_illegal(capsys, files):
    rep, code = out(capsys, ["move", files["torus"], "22:0"])
    assert code == 1 and rep["error"] == "MultiSharedEdge"
    rep, code = out(capsys, ["move", files["torus"], "flip:0"])
    assert code == 1 and rep["error"] == "BadFile"


def test_cobord_pants(capsys, files):
    rep, code = out(capsys, ["cobord", "pants", files["C2"]])
    assert code == 0
    assert (rep["outputs"]["domain"], rep["outputs"]["codomain"]) == ("++", "+")
    m = np.array([[complex(*z) for z in row] for row in rep["outputs"]["matrix"]])
    assert m.shape == (2, 4)
    assert np.allclose(m, catalog.cyclic_group_algebra(2).structure.reshape(4, 2).T)


def test_cobord_type_mismatch(capsys, files):
    rep, code = out(capsys, ["cobord", "eta ; eps", files["C"]])
    assert code == 1 and rep["error"] == "TypeMismatch"


def test_cobord_syntax_error(capsys, files):
    rep, code = out(capsys, ["cobord", "pants ; (unit", files["C"]])
    assert code == 1 and rep["error"] == "SyntaxError" and rep["position"] == 13


def test_closed_torus_word_matches_statesum_m2(capsys, files):
    # closed_genus_word(1, identity) evaluated with M_2 against the 2-triangle torus
    word, code = out(capsys, ["cobord", "unit ; copants ; pants ; twist([]) ; counit", files["M2"]])
    assert code == 0
    z, _ = out(capsys, ["statesum", files["torus"], files["M2"]])
    assert word["outputs"]["matrix"][0][0] == pytest.approx(z["outputs"]["Z"], rel=1e-8)


def test_genus_command_commutative(capsys, files):
    rep, code = out(capsys, ["genus", "2", files["C2"]])
    assert code == 0 and rep["outputs"]["genus"] == 2
    assert rep["outputs"]["Z"] == pytest.approx(rep["outputs"]["Z_word"])


def test_deterministic(files):
    a, _ = run(["statesum", files["tet"], files["M2C"]])
    b, _ = run(["statesum", files["tet"], files["M2C"]])
    assert a["outputs"] == b["outputs"] and a["inputs"] == b["inputs"]


def test_round_trip(tmp_path, rng):
    alg = catalog.random_semisimple(rng).algebra
    io.save(tmp_path / "a.json", io.algebra_to_json(alg))
    back = io.load_algebra(tmp_path / "a.json")
    assert np.allclose(back.structure, alg.structure) and np.allclose(back.unit, alg.unit)
    z4 = make_group([4])
    surf = torus(z4, [[1], [2]])
    io.save(tmp_path / "s.json", io.surface_to_json(surf))
    assert io.load_surface(tmp_path / "s.json", z4) == surf
    assert io.load_surface(tmp_path / "s.json", z4).labels == surf.labels


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(io.BadFile):
        io.load_algebra(path)
    io.save(path, {"dim": 1, "unit": [[1, 0]], "structure": [[0, 0, 3, 1, 0]]})
    with pytest.raises(io.BadFile):
        io.load_algebra(path)
