"""Acceptance suite: one check per headline criterion, each with its time limit.

Every check records a ``PASS``/``FAIL`` line; under pytest they are printed in
the terminal summary, and ``python tests/test_acceptance.py`` prints them
directly.
"""

from __future__ import annotations

import json
import math
import os
import random
import sys
import tempfile
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, os.path.dirname(__file__))

from plumbline import cli  # noqa: E402
from plumbline.links import (amphichiral_evidence, associated_link, component_count,  # noqa: E402
                             kauffman_bracket, state_sum_bracket)
from plumbline.surfaces import (PlumbingTree, embed_in_connected, embed_in_plumbing,  # noqa: E402
                                lift_forest, make_immersed_disc, make_immersed_surface,
                                make_plumbing, verify_embedding)
from plumbline.theorems import (certify_norman, e6_tilde, elliptic, en_bound,  # noqa: E402
                                k3_plumbing, linear_tree_embedding, norman_plumbing,
                                zero_sphere)
from plumbline.knotdata import KnotRecord  # noqa: E402
from plumbline.trees import (Tree, enumerate_lbtrees, random_lbtree, random_tree,  # noqa: E402
                             tree_code)
from plumbline.tubing import excise, tube  # noqa: E402

from oracles import DSU, euler, lift_component_count, pd_component_count  # noqa: E402

RESULTS: list[str] = []


def record(name: str, ok: bool, elapsed: float, limit: float, detail: str = "") -> bool:
    ok = ok and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'}  {name:<28} {elapsed:8.2f} s (limit {limit:g} s)"
    if detail:
        line += f"  {detail}"
    RESULTS.append(line)
    print(line)
    return ok


# -- 1 -------------------------------------------------------------------------

def check_k3_headline() -> bool:
    with tempfile.TemporaryDirectory() as tmp:
        csv = Path(tmp) / "k.csv"
        csv.write_text("name,u,c4,g4\nsynthetic,21,,\n")
        t0 = time.perf_counter()
        code = cli.main(["certify", "--knots", str(csv), "--manifold", "K3", "--out", tmp])
        elapsed = time.perf_counter() - t0
        data = json.loads((Path(tmp) / "synthetic.json").read_text())
    tub = data["tubing"]
    got = (tub["surface"], tub["double_points"])
    ok = code == 0 and data["verdict"]["kind"] == "slice" and got == ([[0, 1, True]], 0)
    return record("K3 headline", ok, elapsed, 1.0,
                  f"verdict={data['verdict']['kind']} genus,boundary,orientable={tub['surface']} "
                  f"double_points={tub['double_points']}")


# -- 2 -------------------------------------------------------------------------

def check_en_table() -> bool:
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 26):
        want = 11 * n - math.ceil(n / 5)
        spheres = len(elliptic(n).plumbing.graph.vertices)
        if en_bound(n) != want or spheres != want + 1:
            bad.append(n)
    elapsed = time.perf_counter() - t0
    return record("E(n) bound table", not bad, elapsed, 1.0,
                  f"n=2..25, en_bound(2)={en_bound(2)}" + (f" bad n={bad}" if bad else ""))


# -- 3 -------------------------------------------------------------------------

def check_fig5() -> bool:
    t0 = time.perf_counter()
    p = k3_plumbing()
    vs, es = p.graph.vertices, p.graph.edges
    d = DSU()
    for v in vs:
        d.find(v)
    is_tree = len(es) == len(vs) - 1 and all(d.union(u, v) for u, v in es) and d.count() == 1
    # the section is the vertex whose removal leaves three 7-vertex pieces
    codes = None
    for s in vs:
        rest = [e for e in es if s not in e]
        d = DSU()
        for v in vs:
            if v != s:
                d.find(v)
        for u, v in rest:
            d.union(u, v)
        groups: dict = {}
        for v in vs:
            if v != s:
                groups.setdefault(d.find(v), []).append(v)
        if len(groups) == 3 and all(len(g) == 7 for g in groups.values()):
            codes = [tree_code(Tree.from_edges([e for e in rest if e[0] in g], g))
                     for g in groups.values()]
            break
    ok = (len(vs) == 22 and len(es) == 21 and is_tree and codes is not None
          and all(c == tree_code(e6_tilde()) for c in codes))
    elapsed = time.perf_counter() - t0
    return record("K3 plumbing shape", ok, elapsed, 60.0,
                  f"vertices={len(vs)} edges={len(es)} tree={is_tree} "
                  f"E6~ pieces={0 if codes is None else len(codes)}")


# -- 4 -------------------------------------------------------------------------

def _pipeline(rng):
    kind = rng.randrange(3)
    if kind == 0:  # plumbing of spheres against a padded disc
        n = rng.randint(2, 25)
        s = make_plumbing(PlumbingTree(random_tree(n, rng), {v: 0 for v in range(n)}))
        tree, ep = embed_in_plumbing(s)
        other = make_immersed_disc(n - 1 + rng.randint(0, 3))
        eo = embed_in_connected(other, tree)
        parts = [(c.genus, c.boundary) for c in s.domain.components + other.domain.components]
        return excise(other, eo), excise(s, ep), parts, n
    if kind == 1:  # push-offs on a dual surface
        g, u = rng.randint(0, 10), rng.randint(1, 25)
        s = make_plumbing(norman_plumbing(u, g))
        tree, ep = linear_tree_embedding(s, u)
        disc = make_immersed_disc(u)
        parts = [(c.genus, c.boundary) for c in s.domain.components + disc.domain.components]
        return excise(disc, embed_in_connected(disc, tree)), excise(s, ep), parts, u + 1
    k = rng.randint(1, 15)  # two generic connected surfaces
    t = random_lbtree(k, rng)
    s1 = make_immersed_surface(rng.randint(0, 3), rng.randint(0, 2), k + rng.randint(0, 3))
    s2 = make_immersed_surface(rng.randint(0, 3), rng.randint(0, 2), k + rng.randint(0, 3))
    parts = [(c.genus, c.boundary) for c in s1.domain.components + s2.domain.components]
    return excise(s1, embed_in_connected(s1, t)), excise(s2, embed_in_connected(s2, t)), parts, k + 1


def check_chi_law() -> bool:
    rng = random.Random(2024)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(500):
        a, b, parts, n_link = _pipeline(rng)
        r = tube(a, b)
        if r.surface.euler != euler(parts) - 2 * n_link or r.annuli_count != n_link:
            bad += 1
    elapsed = time.perf_counter() - t0
    return record("chi law", bad == 0, elapsed, 30.0, f"500 pipelines, {bad} mismatches")


# -- 5 -------------------------------------------------------------------------

def check_component_law() -> bool:
    rng = random.Random(99)
    t0 = time.perf_counter()
    trees = [t for k in range(1, 8) for t in enumerate_lbtrees(k)]
    n_exhaustive = len(trees)
    trees += [random_lbtree(rng.randint(1, 40), rng) for _ in range(1000)]
    bad = 0
    for t in trees:
        k = len(t.vertices)
        L = associated_link(t)
        e = embed_in_connected(make_immersed_disc(k), t)
        f = lift_forest(e)
        slots = [tuple(s.sid for s in e.target.double_points[d]) for d in e.vertex_map.values()]
        lift_oracle = lift_component_count(slots, [(im.slot_u, im.slot_v) for im in e.edge_map.values()])
        if not (component_count(L) == pd_component_count(L.crossings) == k + 1
                and f.n_components == lift_oracle == k + 1):
            bad += 1
    elapsed = time.perf_counter() - t0
    return record("component-count law", bad == 0, elapsed, 60.0,
                  f"{n_exhaustive} exhaustive (k<=7) + 1000 random (k<=40), {bad} mismatches")


# -- 6 -------------------------------------------------------------------------

def check_mirror_evidence() -> bool:
    t0 = time.perf_counter()
    n = bad = 0
    for k in range(1, 7):
        for t in enumerate_lbtrees(k):
            n += 1
            L = associated_link(t)
            ev = amphichiral_evidence(L)
            closed = ev.jones == Counter({p.invert(): c for p, c in ev.jones.items()})
            same = kauffman_bracket(L) == state_sum_bracket(L)
            if not (ev.ok and ev.mirror_rule and closed and same):
                bad += 1
    elapsed = time.perf_counter() - t0
    return record("mirror evidence", bad == 0, elapsed, 300.0, f"{n} trees (k<=6), {bad} failures")


# -- 7 -------------------------------------------------------------------------

def check_norman() -> bool:
    rng = random.Random(7)
    t0 = time.perf_counter()
    bad = 0
    runs = 0
    for g in range(0, 11):
        for u in range(0, 31):
            cert = certify_norman(KnotRecord("K", u_upper=u), zero_sphere(g))
            runs += 1
            surf = cert.tubing["surface"]
            want_verdict = "slice" if g == 0 else "genus-bound"
            if (surf != [[g, 1, True]] or cert.genus != g or cert.verdict != want_verdict
                    or cert.tubing["orientation_consistent"] is not True):
                bad += 1
        # a random sign system per genus: still orientable, same genus
        u = rng.randint(1, 30)
        cert = certify_norman(KnotRecord("K", u_upper=u), zero_sphere(g))
        labels = [lab for lab, _ in cert.orientation["signs"].items()]
        signs = {lab: rng.choice((1, -1)) for lab in labels}
        alt = certify_norman(KnotRecord("K", u_upper=u), zero_sphere(g), orientation_signs=signs)
        runs += 1
        if alt.tubing["orientation_consistent"] is not True or alt.genus != g:
            bad += 1
    elapsed = time.perf_counter() - t0
    return record("zero-sphere genus bound", bad == 0, elapsed, 30.0,
                  f"g<=10, u<=30, {runs} pipelines, {bad} failures")


# -- 8 -------------------------------------------------------------------------

def _contractible(e) -> bool:
    s = e.target
    for i in range(len(s.domain.components)):
        pts = {d for d in e.vertex_map.values() if any(sl.component == i for sl in s.double_points[d])}
        es = [ed for ed, im in e.edge_map.items() if im.carrier == i]
        d = DSU()
        for p in pts:
            d.find(p)
        if not all(d.union(e.vertex_map[u], e.vertex_map[v]) for u, v in es):
            return False
        if not pts or d.count() != 1:
            return False
    return True


def check_embedding_lemmas() -> bool:
    rng = random.Random(5)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        n = rng.randint(2, 40)
        s = make_plumbing(PlumbingTree(random_tree(n, rng), {v: 0 for v in range(n)}))
        tree, e = embed_in_plumbing(s)
        if not (verify_embedding(e).ok and _contractible(e)
                and sorted(e.vertex_map.values()) == list(range(n - 1))):
            bad += 1
    pairs = 0
    for ell in range(1, 7):
        ts = list(enumerate_lbtrees(ell))
        for m in range(ell, 9):
            d = make_immersed_disc(m)
            for t in ts:
                pairs += 1
                if not verify_embedding(embed_in_connected(d, t)).ok:
                    bad += 1
    elapsed = time.perf_counter() - t0
    return record("embedding algorithms", bad == 0, elapsed, 120.0,
                  f"1000 plumbings (n<=40) + {pairs} tree/disc pairs (l<=6, m<=8), {bad} failures")


# -- pytest entry points ---------------------------------------------------------

def test_k3_headline():
    assert check_k3_headline()


def test_en_table():
    assert check_en_table()


def test_fig5():
    assert check_fig5()


def test_chi_law():
    assert check_chi_law()


def test_component_law():
    assert check_component_law()


def test_mirror_evidence():
    assert check_mirror_evidence()


def test_norman():
    assert check_norman()


def test_embedding_lemmas():
    assert check_embedding_lemmas()


CHECKS = [check_k3_headline, check_en_table, check_fig5, check_chi_law, check_component_law,
          check_mirror_evidence, check_norman, check_embedding_lemmas]

if __name__ == "__main__":
    results = [c() for c in CHECKS]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
