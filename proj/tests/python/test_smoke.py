"""End-to-end smoke tests of the Python bindings."""

import math

import pytest

hl = pytest.importorskip("hlouvain")

TWO_TRIPLES = [([0, 1, 2], 1.0), ([3, 4, 5], 1.0)]


def canonical(labels):
    seen = {}
    return [seen.setdefault(c, len(seen)) for c in labels]


def test_hypergraph_accessors():
    h = hl.Hypergraph(6, TWO_TRIPLES)
    assert h.node_count == 6
    assert h.edge_count == 2
    assert h.max_edge_size == 3
    assert h.total_edge_weight == pytest.approx(2.0)
    assert h.volume == pytest.approx(6.0)
    assert h.degree(0) == pytest.approx(1.0)
    assert h.edges() == [([0, 1, 2], 1.0), ([3, 4, 5], 1.0)]
    assert "nodes=6" in repr(h)


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        hl.Hypergraph(3, [([0, 1], -1.0)])
    with pytest.raises(ValueError):
        hl.Hypergraph(2, [([0, 5], 1.0)])


def test_modularity_values():
    h = hl.Hypergraph(6, TWO_TRIPLES)
    split = [0, 0, 0, 1, 1, 1]
    assert hl.modularity(h, split, strict=True) == pytest.approx(0.75, abs=1e-12)
    assert abs(hl.modularity(h, [0] * 6, strict=True)) <= 1e-12
    assert abs(hl.modularity(h, [0] * 6, tau=2.0)) <= 1e-12
    with pytest.raises(ValueError):
        hl.modularity(h, split, scheme="clique")


def test_cluster_recovers_toy_structure():
    h = hl.Hypergraph(6, TWO_TRIPLES)
    best = max(
        (hl.cluster(h, seed=s, strict=True, ending="local") for s in range(5)),
        key=lambda r: r["q_h"],
    )
    assert best["q_h"] == pytest.approx(0.75, abs=1e-12)
    assert canonical(best["partition"]) == [0, 0, 0, 1, 1, 1]
    assert best["levels"] >= 0
    with pytest.raises(ValueError):
        hl.cluster(h, ending="never")


def test_ami_basics():
    labels = [0, 0, 1, 1, 2, 2]
    assert hl.ami(labels, labels) == 1.0
    assert hl.ami(list(range(8)), [0] * 8) == 0.0
    for norm in ("mean", "min", "max"):
        value = hl.ami([0, 0, 1, 1], [0, 1, 0, 1], normalization=norm)
        assert math.isfinite(value)
    with pytest.raises(ValueError):
        hl.ami(labels, labels, normalization="geometric")


def test_generate_is_deterministic():
    kwargs = dict(
        n=60,
        degree_min=3,
        degree_max=8,
        community_min=15,
        community_max=30,
        noise=0.2,
        size_distribution=[0, 0, 0.5, 0.5],
        wcd_model="linear",
        seed=5,
    )
    a = hl.generate(**kwargs)
    b = hl.generate(**kwargs)
    assert a["hypergraph"].node_count == 60
    assert len(a["truth"]) == 60
    assert 0.0 <= a["realized_noise"] <= 1.0
    assert a["hypergraph"].edges() == b["hypergraph"].edges()
    assert a["truth"] == b["truth"]
    assert all(size in (2, 3, 4) for size, _ in
               ((len(members), w) for members, w in a["hypergraph"].edges()))
    with pytest.raises(ValueError):
        hl.generate(n=60, noise=1.5)


def test_edge_composition_and_suggestion():
    h = hl.Hypergraph(6, TWO_TRIPLES)
    rows = hl.edge_composition(h, [0, 0, 0, 1, 1, 1])
    assert rows == [(3, 3, 2.0)]
    advice = hl.suggest_tau(h, [0, 0, 0, 1, 1, 1])
    assert advice["strict"] is True
    assert advice["purity_ratio"] == pytest.approx(1.0)
    assert advice["rationale"]

    # both edges share the (size 3, best-count 2) profile, so they aggregate
    mixed = hl.edge_composition(h, [0, 0, 1, 1, 1, 0])
    assert mixed == [(3, 2, 2.0)]


def test_update_alpha_schedule():
    assert hl.update_alpha(100, 100, 0.0, 0.5, 0.5) == 0.0
    assert hl.update_alpha(50, 100, 0.0, 0.5, 0.5) == 0.5
    assert hl.update_alpha(20, 100, 0.0, 0.5, 0.5) == 0.75
    assert hl.update_alpha(10, 100, 0.0, 0.0, 0.5) == 0.0


def test_tune_toy():
    h = hl.Hypergraph(6, TWO_TRIPLES)
    result = hl.tune(h, init_points=2, min_evaluations=3, seed=9, strict=True)
    assert result["best_q_h"] == pytest.approx(0.75, abs=1e-12)
    assert canonical(result["partition"]) == [0, 0, 0, 1, 1, 1]
    assert len(result["evaluations"]) >= 3
    for row in result["evaluations"]:
        assert 0.0 <= row["p_b"] <= 1.0
        assert 0.0 < row["p_c"] < 1.0
        assert row["mean_q"] == pytest.approx(
            sum(row["per_seed_q"]) / len(row["per_seed_q"])
        )
