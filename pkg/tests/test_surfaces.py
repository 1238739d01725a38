import random

import pytest

from plumbline.links import associated_link, canonical_pd, component_count, hopf_link
from plumbline.surfaces import (EdgeImage, PlumbingTree, SuitableEmbedding, embed_in_connected,
                                embed_in_plumbing, lift_forest, link_of_embedding,
                                make_immersed_disc, make_immersed_surface, make_plumbing,
                                parse_plumbing_text, verify_embedding)
from plumbline.theorems import k3_plumbing
from plumbline.trees import LBTree, Tree, edge, enumerate_lbtrees, random_lbtree, random_tree

from oracles import DSU, lift_component_count


def plumbing_of(tree: Tree) -> PlumbingTree:
    return PlumbingTree(tree, {v: 0 for v in tree.vertices})


def path_plumbing(n):
    return plumbing_of(Tree.from_edges([(i, i + 1) for i in range(n - 1)], range(n)))


def oracle_lift_count(e):
    slots = [tuple(s.sid for s in e.target.double_points[d]) for d in e.vertex_map.values()]
    return lift_component_count(slots, [(im.slot_u, im.slot_v) for im in e.edge_map.values()])


def test_make_plumbing_single():
    s = make_plumbing(path_plumbing(1))
    assert len(s.domain.components) == 1 and not s.double_points


def test_make_plumbing_path3():
    s = make_plumbing(path_plumbing(3))
    assert len(s.domain.components) == 3
    assert len(s.double_points) == 2


@pytest.mark.parametrize("n", [1, 2, 5, 22])
def test_plumbing_euler(n):
    assert make_plumbing(path_plumbing(n)).domain.euler == 2 * n


@pytest.mark.parametrize("m", [0, 1, 21])
def test_disc_euler(m):
    d = make_immersed_disc(m)
    assert d.domain.euler == 1
    assert len(d.double_points) == m
    assert d.boundary_knot == "K"
    assert all(x.component == y.component == 0 for x, y in d.double_points)


def test_plumbing_text_roundtrip():
    p = k3_plumbing()
    q = parse_plumbing_text(p.to_text())
    assert q.graph.edges == p.graph.edges
    assert q.euler_number == p.euler_number


def test_plumbing_text_rejects_cycle():
    with pytest.raises(ValueError):
        parse_plumbing_text("vertex 0 0\nvertex 1 0\nvertex 2 0\nedge 0 1\nedge 1 2\nedge 0 2\n")


def test_embed_two_spheres():
    tree, e = embed_in_plumbing(make_plumbing(path_plumbing(2)))
    assert len(tree.vertices) == 1 and not tree.edges
    assert verify_embedding(e).ok


def test_embed_three_spheres():
    tree, e = embed_in_plumbing(make_plumbing(path_plumbing(3)))
    assert len(tree.vertices) == 2
    (ed,) = tree.edges
    assert e.edge_map[ed].carrier == 1
    for v in tree.vertices:
        a, b = tree.parts[v]
        assert {len(a), len(b)} == {0, 1}


def test_embed_star():
    star = plumbing_of(Tree.from_edges([(0, i) for i in range(1, 5)]))
    tree, e = embed_in_plumbing(make_plumbing(star))
    assert len(tree.vertices) == 4
    assert all(im.carrier == 0 for im in e.edge_map.values())
    for v in tree.vertices:
        hub_side = [p for p in tree.parts[v] if p]
        assert len(hub_side) == 1
    assert verify_embedding(e).ok


def test_embed_single_surface_needs_flag():
    s = make_plumbing(path_plumbing(1))
    with pytest.raises(ValueError):
        embed_in_plumbing(s)
    tree, e = embed_in_plumbing(s, allow_empty=True)
    assert not tree.vertices


def _contractible_oracle(e):
    s = e.target
    for i in range(len(s.domain.components)):
        pts = {d for d in e.vertex_map.values() if any(sl.component == i for sl in s.double_points[d])}
        es = [ed for ed, im in e.edge_map.items() if im.carrier == i]
        d = DSU()
        for p in pts:
            d.find(p)
        for u, v in es:
            assert d.union(e.vertex_map[u], e.vertex_map[v])
        assert pts and d.count() == 1 and len(es) == len(pts) - 1


def test_embed_random_plumbings():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(2, 40)
        s = make_plumbing(plumbing_of(random_tree(n, rng)))
        tree, e = embed_in_plumbing(s)
        assert len(tree.vertices) == n - 1
        assert set(e.vertex_map.values()) == set(range(n - 1))
        assert verify_embedding(e).ok
        _contractible_oracle(e)


def test_contractibility_violation_reported():
    # one double point of a three-sphere chain: the far sphere misses the tree
    s = make_plumbing(path_plumbing(3))
    lone = LBTree.make(Tree.single(0), {0: ((), ())})
    rep = verify_embedding(SuitableEmbedding(s, lone, {0: 0}, {}))
    assert not rep.ok
    assert any("component 2" in v and "empty" in v for v in rep.violations)


def test_embed_connected_single():
    t = next(iter(enumerate_lbtrees(1)))
    e = embed_in_connected(make_immersed_disc(1), t)
    assert e.vertex_map == {0: 0}


@pytest.mark.parametrize("m", range(1, 9))
def test_embed_connected_exhaustive(m):
    d = make_immersed_disc(m)
    for k in range(1, min(m, 6) + 1):
        for t in enumerate_lbtrees(k):
            e = embed_in_connected(d, t)
            assert verify_embedding(e).ok
            assert oracle_lift_count(e) == k + 1


def test_embed_connected_all_eight():
    d = make_immersed_disc(8)
    for k in (7, 8):
        for t in enumerate_lbtrees(k):
            assert verify_embedding(embed_in_connected(d, t)).ok


def test_embed_connected_randomized_beyond():
    rng = random.Random(13)
    for _ in range(200):
        k = rng.randint(1, 40)
        m = rng.randint(k, 45)
        surf = make_immersed_surface(rng.randint(0, 3), rng.randint(0, 2), m)
        assert verify_embedding(embed_in_connected(surf, random_lbtree(k, rng))).ok


def test_embed_connected_k3_tree():
    tree, _ = embed_in_plumbing(make_plumbing(k3_plumbing()))
    e = embed_in_connected(make_immersed_disc(21), tree)
    assert verify_embedding(e).ok


def test_embed_connected_errors():
    t = next(iter(enumerate_lbtrees(3)))
    with pytest.raises(ValueError):
        embed_in_connected(make_immersed_disc(2), t)
    with pytest.raises(ValueError):
        embed_in_connected(make_plumbing(path_plumbing(4)), t)


def _path_emb(slots_for_edges):
    t = Tree.from_edges([(0, 1), (1, 2)])
    lb = LBTree.make(t, {0: ([(0, 1)], []), 1: ([(0, 1), (1, 2)], []), 2: ([(1, 2)], [])})
    d = make_immersed_disc(3)
    sids = [[s.sid for s in pair] for pair in d.double_points]
    emap = {edge(0, 1): EdgeImage(sids[0][0], sids[1][slots_for_edges[0]], 0),
            edge(1, 2): EdgeImage(sids[1][slots_for_edges[1]], sids[2][0], 0)}
    return SuitableEmbedding(d, lb, {0: 0, 1: 1, 2: 2}, emap)


def test_same_part_different_slots_reported():
    assert verify_embedding(_path_emb((0, 0))).ok
    rep = verify_embedding(_path_emb((0, 1)))
    assert not rep.ok
    assert any("vertex 1" in v and "part A" in v for v in rep.violations)


def test_cyclic_lift_rejected():
    # Two edges between the same slot pair would close a loop in the lift. A
    # tree cannot hold them, so the attempt is rejected as a multigraph.
    d = make_immersed_disc(2)
    sids = [[x.sid for x in pair] for pair in d.double_points]
    multi = Tree((0, 1), ((0, 1), (0, 1)))
    lb = LBTree(multi, {0: (frozenset({(0, 1)}), frozenset()),
                        1: (frozenset({(0, 1)}), frozenset())})
    bad = SuitableEmbedding(d, lb, {0: 0, 1: 1}, {(0, 1): EdgeImage(sids[0][0], sids[1][0], 0)})
    rep = verify_embedding(bad)
    assert not rep.ok
    assert any("parallel edge" in v for v in rep.violations)


def test_misplaced_slot_reported():
    t = Tree.from_edges([(0, 1)])
    lb = LBTree.make(t, {0: ([(0, 1)], []), 1: ([(0, 1)], [])})
    d = make_immersed_disc(3)
    sids = [[x.sid for x in pair] for pair in d.double_points]
    e = SuitableEmbedding(d, lb, {0: 0, 1: 1}, {(0, 1): EdgeImage(sids[0][0], sids[2][0], 0)})
    rep = verify_embedding(e)
    assert any("not at the image of vertex 1" in v for v in rep.violations)


def test_lift_single_vertex():
    e = embed_in_connected(make_immersed_disc(1), next(iter(enumerate_lbtrees(1))))
    f = lift_forest(e)
    assert len(f.nodes) == 2 and not f.links and f.n_components == 2


def test_lift_component_law():
    rng = random.Random(17)
    trees = [t for k in range(1, 8) for t in enumerate_lbtrees(k)]
    trees += [random_lbtree(rng.randint(1, 40), rng) for _ in range(300)]
    for t in trees:
        k = len(t.vertices)
        e = embed_in_connected(make_immersed_disc(k + rng.randint(0, 3)), t)
        f = lift_forest(e)
        assert len(f.nodes) == 2 * k and len(f.links) == k - 1
        assert f.n_components == k + 1 == oracle_lift_count(e)
        assert f.n_components == component_count(associated_link(t))


def test_link_of_embedding():
    e = embed_in_connected(make_immersed_disc(1), next(iter(enumerate_lbtrees(1))))
    assert canonical_pd(link_of_embedding(e)) == canonical_pd(hopf_link())
    for t in enumerate_lbtrees(3):
        L = link_of_embedding(embed_in_connected(make_immersed_disc(3), t))
        assert component_count(L) == 4
    for k in range(1, 11):
        ts = list(enumerate_lbtrees(k)) if k <= 6 else \
            [random_lbtree(k, random.Random(k + i)) for i in range(30)]
        for t in ts:
            e = embed_in_connected(make_immersed_disc(k), t)
            assert canonical_pd(link_of_embedding(e)) == canonical_pd(associated_link(t))
