from fractions import Fraction

import numpy as np
import pytest

from gorlab import generators as gen
from gorlab.construct import Representation, construct_gor_plus, construct_with_retries, sample_parameters
from gorlab.experiment import random_corpus
from gorlab.graph import Graph, vertex_connectivity
from gorlab.verify import certify_no_gor, verify_gor, verify_gp_subset, verify_or

from oracles import components_after_removal


def identity_rep(n, D=None):
    D = n if D is None else D
    return Representation(D, tuple(tuple(1 if i == j else 0 for j in range(D)) for i in range(n)))


def test_verify_or_examples():
    assert verify_or(gen.empty(3), identity_rep(3)) == []
    rep = Representation(3, ((1, 0, 0), (1, 0, 0), (0, 0, 1)))
    assert verify_or(Graph.from_edges(3, [(0, 2), (1, 2)]), rep) == [(0, 1, 1)]
    zero = Representation(2, ((0, 0),) * 4)
    assert verify_or(gen.empty(4), zero) == []


def test_verify_or_float_relative_tolerance():
    g = gen.empty(2)
    ok = Representation(2, ((1e6, 0.0), (1e-4, 1e6)), "float")
    # |<u, v>| = 100 <= 1e-9 * |u| * |v| = 1000
    assert verify_or(g, ok, eps=1e-9) == []
    bad = Representation(2, ((1.0, 0.0), (1e-8, 1.0)), "float")
    assert verify_or(g, bad, eps=1e-9) == [(0, 1, 1e-8)]
    assert verify_or(g, Representation(2, ((0.0, 0.0), (3.0, 4.0)), "float")) == []


def test_verify_or_size_mismatch():
    with pytest.raises(ValueError):
        verify_or(gen.empty(3), identity_rep(2))


def test_verify_gor_examples():
    assert verify_gor(gen.empty(3), identity_rep(3), 3).gor
    zero = Representation(2, ((0, 0),) * 3)
    report = verify_gor(gen.complete(3), zero, 2)
    assert report.or_pass and report.gp_failure == (0, 1) and not report.gor
    with pytest.raises(ValueError):
        verify_gor(gen.complete(2), Representation(3, ((1, 0, 0), (0, 1, 0))), 3)


def test_verify_gor_constructed_c5():
    g = gen.cycle(5)
    out = construct_with_retries(g, range(5), 3, seed=8)
    report = verify_gor(g, out.representation, 3)
    assert report.gor
    assert report.to_dict()["gor"] is True


def test_report_json_lists_violations():
    rep = Representation(2, ((1, 0), (Fraction(1, 2), 1)))
    doc = verify_gor(gen.empty(2), rep, 2).to_dict()
    assert doc["or"] == [[0, 1, "1/2"]]
    assert doc["gp"] == "pass" and doc["gor"] is False


def test_verify_gp_subset():
    rep = identity_rep(3)
    assert verify_gp_subset(rep, [0, 1, 2])
    rep2 = Representation(2, ((1, 2), (1, 2), (0, 1)))
    assert not verify_gp_subset(rep2, [0, 1])
    assert verify_gp_subset(rep2, [0, 2])
    with pytest.raises(ValueError):
        verify_gp_subset(rep2, [0])
    with pytest.raises(ValueError):
        verify_gp_subset(rep2, [1, 1])


def test_verify_gp_subset_with_subset_first():
    # I placed first in the ordering lands in general position for generic parameters.
    g = gen.petersen()
    I = (3, 7, 1, 9, 0, 5, 2)
    order = I + tuple(v for v in range(10) if v not in I)
    rep, _ = construct_gor_plus(g, order, 7, sample_parameters(10, 7, 2 ** 20, 12))
    assert verify_gp_subset(rep, I)


def test_certify_no_gor_examples():
    assert certify_no_gor(gen.star(5), 3) == {0}
    assert certify_no_gor(gen.complete(4), 1) is None
    cut = certify_no_gor(gen.petersen(), 6)
    assert len(cut) == 3 and components_after_removal(10, gen.petersen().edges, cut) >= 2
    with pytest.raises(ValueError):
        certify_no_gor(gen.star(5), 6)


def test_no_gor_certificate_implies_construction_fails():
    graphs = random_corpus(40, 4, 8, seed=5)
    rng = np.random.default_rng(0)
    checked = 0
    for i, g in enumerate(graphs):
        D = int(rng.integers(1, g.n + 1))
        cut = certify_no_gor(g, D)
        if cut is None:
            continue
        checked += 1
        for t in range(5):
            order = tuple(int(x) for x in rng.permutation(g.n))
            rep, _ = construct_gor_plus(g, order, D, sample_parameters(g.n, D, 2 ** 20, (i, t)))
            assert not verify_gor(g, rep, D).gor
    assert checked >= 5


def test_gor_implies_every_gp_subset():
    g = gen.cycle(6)
    rep = construct_with_retries(g, range(6), 4, seed=1).representation
    rng = np.random.default_rng(2)
    for _ in range(10):
        I = [int(x) for x in rng.choice(6, 4, replace=False)]
        assert verify_gp_subset(rep, I)


def test_float_verdict_on_rounded_exact_rep():
    g = gen.petersen()
    rep = construct_with_retries(g, range(10), 7, seed=3).representation
    assert verify_gor(g, rep.to_float(), 7).gor
    assert vertex_connectivity(g).kappa == 3
