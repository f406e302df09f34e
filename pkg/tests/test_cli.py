import json

import pytest

from raagfp import corpus
from raagfp.cli import main
from raagfp.graph import graph_document


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return write


def c4_files(write):
    g = corpus.cycle(4)
    gp = write("c4.json", graph_document(g))
    cp = write("ones.json", {"p": 2, "chi": {v: 1 for v in g.vertices}})
    return gp, cp


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_fg_exit_codes(files, capsys):
    gp, cp = c4_files(files)
    code, out = run(capsys, ["fg", gp, cp])
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["fg"] is True
    assert doc["results"]["connected"] and doc["results"]["dominant"]

    p3 = corpus.path(3)
    gp2 = files("p3.json", graph_document(p3))
    cp2 = files("chi101.json", {"p": 2, "chi": {"v1": 1, "v2": 0, "v3": 1}})
    code, out = run(capsys, ["fg", gp2, cp2])
    assert code == 1 and json.loads(out)["results"]["fg"] is False

    cp3 = files("zero.json", {"p": 2, "chi": {"v1": 0, "v2": 0, "v3": 0}})
    code, _ = run(capsys, ["fg", gp2, cp3])
    assert code == 3


def test_schema_error_exit(files, capsys):
    gp = files("bad.json", {"vertices": ["a"], "edges": [["a", "a"]]})
    cp = files("chi.json", {"p": 2, "chi": {"a": 1}})
    code, _ = run(capsys, ["fg", gp, cp])
    assert code == 2


def test_fpn_report_and_determinism(files, capsys):
    gp, cp = c4_files(files)
    code1, out1 = run(capsys, ["fpn", gp, cp, "--max-n", "2"])
    code2, out2 = run(capsys, ["fpn", gp, cp, "--max-n", "2"])
    assert code1 == code2 == 1          # FP_2 fails on the 4-cycle
    assert out1 == out2                 # byte-identical reruns
    doc = json.loads(out1)
    res = doc["results"]
    assert res["max_fp"] == 1 and res["routes_agree"]
    assert res["decomposition"]["ok"]
    assert [d["fp_complex"] for d in res["degrees"]] == [True, False]
    # round trip: the emitted JSON parses back to the same document
    assert json.loads(json.dumps(doc)) == doc


def test_fpn_exit_zero_when_requested_level_holds(files, capsys):
    gp, cp = c4_files(files)
    code, _ = run(capsys, ["fpn", gp, cp, "--max-n", "1"])
    assert code == 0


def test_table(files, capsys):
    gp, _ = c4_files(files)
    code, out = run(capsys, ["table", gp])
    assert code == 0
    rows = json.loads(out)["results"]["rows"]
    assert len(rows) == 15
    full = next(r for r in rows if len(r["support"]) == 4)
    assert full["fg"] is True and full["max_fp"] == 1
    singles = [r for r in rows if len(r["support"]) == 1]
    assert all(not r["fg"] and r["max_fp"] == 0 for r in singles)


def test_table_jobs_flag_is_output_stable(files, capsys):
    gp, _ = c4_files(files)
    _, serial = run(capsys, ["table", gp, "--jobs", "1"])
    _, parallel = run(capsys, ["table", gp, "--jobs", "2"])
    assert serial == parallel


def test_table_cap(files, capsys):
    g = corpus.edgeless(5)
    gp = files("e5.json", graph_document(g))
    code, _ = run(capsys, ["table", gp, "--cap", "4"])
    assert code == 2


def test_table_rows_for_isolated_pair(files, capsys):
    g = corpus.edgeless(2)
    gp = files("e2.json", graph_document(g))
    _, out = run(capsys, ["table", gp])
    rows = json.loads(out)["results"]["rows"]
    assert all(r["fg"] is False for r in rows)


def test_coabelian_command(files, capsys):
    g = corpus.edgeless(2)
    gp = files("e2.json", graph_document(g))
    mp = files("ident.json", {"p": 2, "rows": [[1, 0], [0, 1]]})
    code, out = run(capsys, ["coabelian", gp, mp, "--max-n", "1"])
    assert code == 1
    res = json.loads(out)["results"]
    assert res["fg"] is False and res["fg_witness"] == []
    assert [p["zero_set"] for p in res["patterns"]] == [[], ["v1"], ["v2"]]
    # the edgeless pair is one indecomposable non-clique factor, so the
    # derived subgroup of the whole group witnesses fullness
    assert res["fullness"]["full"] is True
    assert res["fullness"]["note"] is None      # not finitely generated

    mp0 = files("zero.json", {"p": 2, "rows": [[0, 0]]})
    code, _ = run(capsys, ["coabelian", gp, mp0])
    assert code == 3


def test_coabelian_full_marker(files, capsys):
    g = corpus.cycle(4)
    gp = files("c4.json", graph_document(g))
    mp = files("row.json", {"p": 2, "rows": [[1, 1, 1, 1]]})
    code, out = run(capsys, ["coabelian", gp, mp])
    assert code == 0
    res = json.loads(out)["results"]
    assert res["fg"] is True
    assert res["fullness"]["full"] is True
    assert res["fullness"]["note"] == "G/N is finite-by-abelian"


def test_verify_smoke(files, capsys):
    code, out = run(capsys, ["verify", "--trials", "10", "--max-vertices", "5",
                             "--seed", "7"])
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["passed"] is True
    assert len(doc["results"]["suites"]) == 6


def test_verify_negative_control():
    # a deliberately corrupted boundary must be caught by the same check
    # the verify suites run
    from raagfp.flag_homology import ChainComplexFp
    from raagfp.fpmatrix import MatrixFp
    from raagfp.verify import chain_condition_witness
    good = ChainComplexFp(
        2, 0, 2, {0: 1, 1: 2, 2: 1},
        {1: MatrixFp.from_rows([[1, 1]], 2),
         2: MatrixFp.from_rows([[1], [1]], 2)})
    assert chain_condition_witness(good) is None
    corrupted = ChainComplexFp(
        2, 0, 2, {0: 1, 1: 2, 2: 1},
        {1: MatrixFp.from_rows([[1, 1]], 2),
         2: MatrixFp.from_rows([[1], [0]], 2)})
    assert chain_condition_witness(corrupted) == 1


def test_gog_command(files, capsys):
    doc = {"vertices": [{"id": "v", "order": 4}, {"id": "w", "order": 6}],
           "edges": [{"id": "e", "d0": "v", "d1": "w", "order": 2}]}
    gp = files("gog.json", doc)
    code, out = run(capsys, ["gog", gp, "--index", "12"])
    assert code == 0
    res = json.loads(out)["results"]
    assert res["chi"] == "-1/12" and res["lcm_orders"] == 12
    assert res["reduced"] and not res["dihedral_type"]
    assert res["bounds"]["rank"] == 2 and res["bounds"]["defect"] is False


def test_gog_dihedral_skip(files, capsys):
    doc = {"vertices": [{"id": "v", "order": 2}, {"id": "w", "order": 2}],
           "edges": [{"id": "e", "d0": "v", "d1": "w", "order": 1}]}
    gp = files("dihedral.json", doc)
    code, out = run(capsys, ["gog", gp])
    assert code == 0
    res = json.loads(out)["results"]
    assert res["dihedral_type"] is True
    assert res["bounds"]["quotient_clause_skipped"] == "dihedral type"


def test_text_format(files, capsys):
    gp, cp = c4_files(files)
    code, out = run(capsys, ["fg", gp, cp, "--format", "text"])
    assert code == 0
    assert "fg: True" in out and "{" not in out


def test_doctests():
    import doctest
    import raagfp.graph
    failures, _ = doctest.testmod(raagfp.graph)
    assert failures == 0
