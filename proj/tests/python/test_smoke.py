import os
from pathlib import Path

import pytest

import valence

DATA = Path(os.environ.get("VALENCE_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def test_classify():
    c4 = valence.Graph.load(DATA / "c4.graph")
    result = valence.classify(c4)
    assert result["verdict"] == "undecidable"
    assert result["shape"] == "C4"
    assert len(result["witness"]) == 4
    bb = valence.Graph.load(DATA / "bb.graph")
    assert valence.classify(bb) == {"verdict": "decidable", "expr": "FreeProduct(B, B)"}
    assert valence.decompose_dec(bb) == "FreeProduct(B, B)"
    assert not valence.is_transitive_forest(valence.Graph.load(DATA / "p4.graph"))
    assert not valence.is_ppn_free(valence.Graph.load(DATA / "ppn.graph"))


def test_word_problem():
    b = valence.Graph.load(DATA / "b.graph")
    assert valence.is_identity(b, "v+ v-")
    assert not valence.is_identity(b, "v- v+")
    assert valence.is_identity_oracle(b, "v- v+") == "no"
    z = valence.expr_to_graph("Z")
    assert valence.is_identity(z, f"{z.vertices[0]}- {z.vertices[0]}+")


def test_automaton():
    a = valence.Automaton.load(DATA / "anbn.va")
    words, complete = valence.enumerate(a, 4)
    assert words == ["-", "ab", "aabb"]
    assert complete
    assert valence.accepts(a, "aabb") == "accept"
    assert valence.accepts(a, "aab") == "reject"
    assert valence.emptiness(a)["verdict"] == "nonempty"
    ab = valence.Automaton.load(DATA / "ab_star.va")
    words, _ = valence.enumerate(valence.product_intersection(a, ab), 4)
    assert words == ["-", "ab"]


def test_grammars():
    g = valence.Grammar.load(DATA / "anbn.cfg")
    assert valence.derive_bounded(g, max_len=6) == ["-", "ab", "aabb", "aaabbb"]
    words, complete = valence.enumerate(valence.grammar_to_valence(g), 6)
    assert complete and words == ["-", "ab", "aabb", "aaabbb"]
    cnf = valence.Grammar.load(DATA / "anbn_cnf.cfg")
    assert cnf.is_cnf()
    assert "S@1" in str(valence.build_G_ell(cnf, 1))


def test_b2():
    a = valence.b2_witness(valence.Graph.load(DATA / "c4.graph"))
    assert valence.accepts(a, "a1 A1 b1") == "accept"
    assert valence.b2_member("b1 b2")
    assert not valence.b2_member("a1 b1 A1")


def test_simulator():
    g = valence.Grammar.load(DATA / "anbn_cnf.cfg")
    net = valence.PetriNet.load(DATA / "counter1.net")
    handle = valence.build_simulator(g, 2, net)
    assert handle["machine"].counters == handle["aux"] + 3 * handle["dim"]
    for mu, mu2 in [([0], [0]), ([1], [0]), ([0], [2])]:
        sim = valence.simulator_parikh(g, 2, net, mu, mu2)
        ref = valence.intersection_parikh(g, 2, net, mu, mu2)
        assert sorted(map(sorted, (d.items() for d in sim))) == sorted(map(sorted, (d.items() for d in ref)))


def test_recipes_and_cli():
    assert valence.gcheck(DATA / "nonempty.recipe")["verdict"] == "nonempty"
    assert valence.gcheck(DATA / "empty.recipe")["verdict"] == "empty-up-to-bound"
    code, out, _ = valence.dispatch(["classify", str(DATA / "c4.graph")])
    assert code == 0 and out.startswith("undecidable")
    code, _, err = valence.dispatch(["classify"])
    assert code == 2 and err


def test_errors():
    with pytest.raises(valence.ValenceError):
        valence.Graph.parse("edge a b\n")
    with pytest.raises(ValueError):
        valence.is_identity(valence.Graph.load(DATA / "b.graph"), "x+")
