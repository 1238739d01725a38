"""Combinatorial models of normally immersed surfaces and embedded trees.

An immersed surface is an abstract domain (a list of compact surface
components) plus a list of double points. Each double point has two *slots*,
one per local sheet, and each slot sits on a domain component. Geometric arcs
are never represented: a tree is suitably embedded exactly when its edges pick
consistent slots, each edge lies on the component carrying both its slots, and
the lift of the tree to the domain (slots joined by edges) is a forest. A forest
with marked points always embeds in a connected surface, so nothing is lost.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ._util import Report, UnionFind
from .links import LinkDiagram, associated_labels, associated_link
from .trees import Edge, LBTree, Tree, edge, leaf_order, validate_lbtree, validate_tree


@dataclass(frozen=True)
class DomainComponent:
    genus: int = 0
    boundary: int = 0
    orientable: bool = True

    @property
    def euler(self) -> int:
        if not self.orientable:
            raise NotImplementedError("non-orientable components are not supported")
        return 2 - 2 * self.genus - self.boundary


@dataclass(frozen=True)
class AbstractSurface:
    components: tuple[DomainComponent, ...]

    @property
    def euler(self) -> int:
        return sum(c.euler for c in self.components)

    def to_json(self) -> list:
        return [[c.genus, c.boundary, c.orientable] for c in self.components]

    @classmethod
    def from_json(cls, data) -> "AbstractSurface":
        return cls(tuple(DomainComponent(g, b, o) for g, b, o in data))


@dataclass(frozen=True)
class Slot:
    component: int
    sid: int


@dataclass(frozen=True)
class ImmersedSurface:
    """Domain plus double points; ``double_points[i]`` is a pair of slots.

    ``kind`` is ``"plumbing"`` for surfaces made by :func:`make_plumbing`,
    which switches on the extra contractibility check in verification.
    """

    domain: AbstractSurface
    double_points: tuple[tuple[Slot, Slot], ...]
    boundary_knot: str | None = None
    kind: str = "generic"

    def slot(self, sid: int) -> Slot:
        return self._slots()[sid][1]

    def _slots(self) -> dict[int, tuple[int, Slot]]:
        return {s.sid: (i, s) for i, pair in enumerate(self.double_points) for s in pair}

    def dp_of(self, sid: int) -> int:
        return self._slots()[sid][0]


def validate_surface(s: ImmersedSurface) -> Report:
    rep = Report("immersed surface")
    for i, c in enumerate(s.domain.components):
        if c.genus < 0 or c.boundary < 0:
            rep.add(f"component {i}: negative genus or boundary")
    sids = []
    for i, pair in enumerate(s.double_points):
        if len(pair) != 2:
            rep.add(f"double point {i}: {len(pair)} slots")
        for sl in pair:
            sids.append(sl.sid)
            if not 0 <= sl.component < len(s.domain.components):
                rep.add(f"double point {i}: slot {sl.sid} on missing component {sl.component}")
    if len(sids) != len(set(sids)):
        rep.add("slot ids are not unique")
    return rep


@dataclass(frozen=True)
class PlumbingTree:
    graph: Tree
    genus: Mapping[int, int] = field(default_factory=dict)
    euler_number: Mapping[int, int] | None = None

    def genus_of(self, v: int) -> int:
        return self.genus.get(v, 0)

    def to_text(self) -> str:
        lines = []
        for v in self.graph.vertices:
            e = "" if not self.euler_number or v not in self.euler_number else f" {self.euler_number[v]}"
            lines.append(f"vertex {v} {self.genus_of(v)}{e}")
        lines += [f"edge {u} {v}" for u, v in self.graph.edges]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"vertices": list(self.graph.vertices),
                "edges": [list(e) for e in self.graph.edges],
                "genus": {str(v): g for v, g in sorted(self.genus.items())},
                "euler_number": None if self.euler_number is None else
                {str(v): x for v, x in sorted(self.euler_number.items())}}

    @classmethod
    def from_json(cls, data) -> "PlumbingTree":
        graph = Tree.from_edges((tuple(e) for e in data["edges"]), data["vertices"])
        eu = data.get("euler_number")
        return cls(graph, {int(v): g for v, g in data["genus"].items()},
                   None if eu is None else {int(v): x for v, x in eu.items()})


def validate_plumbing(p: PlumbingTree) -> Report:
    rep = validate_tree(p.graph)
    rep.name = "plumbing"
    for v, g in p.genus.items():
        if g < 0:
            rep.add(f"vertex {v}: negative genus {g}")
        if v not in p.graph.vertices:
            rep.add(f"genus given for unknown vertex {v}")
    return rep


def parse_plumbing_text(text: str) -> PlumbingTree:
    """``vertex id genus [euler]`` and ``edge u v`` lines; ``#`` comments."""
    verts, genus, euler, edges = [], {}, {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            if line[0] == "vertex" and len(line) in (3, 4):
                v = int(line[1])
                verts.append(v)
                genus[v] = int(line[2])
                if len(line) == 4:
                    euler[v] = int(line[3])
            elif line[0] == "edge" and len(line) == 3:
                edges.append((int(line[1]), int(line[2])))
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}") from None
    p = PlumbingTree(Tree.from_edges(edges, verts), genus, euler or None)
    rep = validate_plumbing(p)
    if not rep.ok:
        raise ValueError(str(rep))
    return p


def make_plumbing(p: PlumbingTree) -> ImmersedSurface:
    """One closed component per vertex, one double point per edge.

    Component ``i`` is the ``i``-th vertex in sorted order; double point ``j``
    is the ``j``-th edge with slot ``2j`` on its lower endpoint.
    """
    rep = validate_plumbing(p)
    if not rep.ok:
        raise ValueError(str(rep))
    index = {v: i for i, v in enumerate(p.graph.vertices)}
    comps = tuple(DomainComponent(p.genus_of(v), 0) for v in p.graph.vertices)
    dps = tuple((Slot(index[u], 2 * j), Slot(index[v], 2 * j + 1))
                for j, (u, v) in enumerate(p.graph.edges))
    return ImmersedSurface(AbstractSurface(comps), dps, None, "plumbing")


def make_immersed_disc(m: int, knot: str = "K") -> ImmersedSurface:
    """A disc bounded by ``knot`` with ``m`` double points."""
    if m < 0:
        raise ValueError("double point count must be non-negative")
    dps = tuple((Slot(0, 2 * j), Slot(0, 2 * j + 1)) for j in range(m))
    return ImmersedSurface(AbstractSurface((DomainComponent(0, 1),)), dps, knot)


def make_immersed_surface(genus: int, boundary: int, m: int, knot: str | None = None) -> ImmersedSurface:
    """A connected surface with ``m`` double points."""
    dps = tuple((Slot(0, 2 * j), Slot(0, 2 * j + 1)) for j in range(m))
    return ImmersedSurface(AbstractSurface((DomainComponent(genus, boundary),)), dps, knot)


# -- embeddings ----------------------------------------------------------------

@dataclass(frozen=True)
class EdgeImage:
    """Where a tree edge ``(u, v)``, ``u < v``, goes: a slot at each end and a carrier."""

    slot_u: int
    slot_v: int
    carrier: int


@dataclass(frozen=True)
class SuitableEmbedding:
    target: ImmersedSurface
    tree: LBTree
    vertex_map: Mapping[int, int]
    edge_map: Mapping[Edge, EdgeImage]

    def slot_at(self, v: int, e: Edge) -> int:
        im = self.edge_map[e]
        return im.slot_u if v == e[0] else im.slot_v

    def part_slots(self, v: int) -> tuple[int, int]:
        """Slot ids realising parts ``A_v`` and ``B_v``.

        An empty part takes whichever slot the other part does not use.
        """
        pair = [s.sid for s in self.target.double_points[self.vertex_map[v]]]
        chosen: list[int | None] = [None, None]
        for k, part in enumerate(self.tree.parts[v]):
            for e in part:
                chosen[k] = self.slot_at(v, e)
                break
        if chosen[0] is None and chosen[1] is None:
            return pair[0], pair[1]
        if chosen[0] is None:
            chosen[0] = pair[1] if chosen[1] == pair[0] else pair[0]
        if chosen[1] is None:
            chosen[1] = pair[1] if chosen[0] == pair[0] else pair[0]
        return chosen[0], chosen[1]  # type: ignore[return-value]

    def to_json(self) -> dict:
        return {
            "vertex_map": {str(v): d for v, d in sorted(self.vertex_map.items())},
            "edge_map": [{"edge": list(e), "slots": [im.slot_u, im.slot_v], "carrier": im.carrier}
                         for e, im in sorted(self.edge_map.items())],
        }

    @classmethod
    def from_json(cls, data, target: ImmersedSurface, tree: LBTree) -> "SuitableEmbedding":
        vmap = {int(v): d for v, d in data["vertex_map"].items()}
        emap = {edge(*item["edge"]): EdgeImage(item["slots"][0], item["slots"][1], item["carrier"])
                for item in data["edge_map"]}
        return cls(target, tree, vmap, emap)


def verify_embedding(e: SuitableEmbedding) -> Report:
    """Check every condition for a suitable embedding; itemise the failures.

    On plumbing targets this also checks the per-component contractibility
    condition: edges carried by a component form a tree on its mapped
    double points.
    """
    rep = validate_lbtree(e.tree)
    rep.name = "embedding"
    if not rep.ok:
        return rep
    s = e.target
    rep.violations += validate_surface(s).violations
    slots = s._slots()
    t = e.tree
    vs = set(t.vertices)
    if set(e.vertex_map) != vs:
        rep.add(f"vertex map domain {sorted(e.vertex_map)} != tree vertices {sorted(vs)}")
        return rep
    images = list(e.vertex_map.values())
    if len(set(images)) != len(images):
        rep.add("vertex map is not injective")
    for v, d in e.vertex_map.items():
        if not 0 <= d < len(s.double_points):
            rep.add(f"vertex {v} mapped to missing double point {d}")
    if set(e.edge_map) != set(t.edges):
        rep.add("edge map does not cover exactly the tree edges")
    if not rep.ok:
        return rep

    for ed, im in sorted(e.edge_map.items()):
        for v, sid in ((ed[0], im.slot_u), (ed[1], im.slot_v)):
            if sid not in slots:
                rep.add(f"edge {ed}: unknown slot {sid}")
                continue
            dp, sl = slots[sid]
            if dp != e.vertex_map[v]:
                rep.add(f"edge {ed}: slot {sid} is not at the image of vertex {v}")
            if sl.component != im.carrier:
                rep.add(f"edge {ed}: slot {sid} lies on component {sl.component}, "
                        f"carrier is {im.carrier}")
    if not rep.ok:
        return rep

    for v in t.vertices:
        a, b = t.parts[v]
        sa = {e.slot_at(v, x) for x in a}
        sb = {e.slot_at(v, x) for x in b}
        if len(sa) > 1:
            rep.add(f"vertex {v}: edges of part A use different slots {sorted(sa)}")
        if len(sb) > 1:
            rep.add(f"vertex {v}: edges of part B use different slots {sorted(sb)}")
        if sa & sb:
            rep.add(f"vertex {v}: parts A and B share slot {sorted(sa & sb)}")

    uf = UnionFind(sid for d in e.vertex_map.values() for sid in (x.sid for x in s.double_points[d]))
    for ed, im in sorted(e.edge_map.items()):
        if not uf.union(im.slot_u, im.slot_v):
            rep.add(f"lift of the tree has a cycle through edge {ed}")

    if s.kind == "plumbing":
        _check_contractible(e, rep)
    return rep


def _check_contractible(e: SuitableEmbedding, rep: Report) -> None:
    s = e.target
    per_comp: dict[int, UnionFind] = {i: UnionFind() for i in range(len(s.domain.components))}
    for d in e.vertex_map.values():
        for sl in s.double_points[d]:
            per_comp[sl.component].add(d)
    n_edges = {i: 0 for i in per_comp}
    for ed, im in e.edge_map.items():
        n_edges[im.carrier] += 1
        per_comp[im.carrier].union(e.vertex_map[ed[0]], e.vertex_map[ed[1]])
    for i, uf in per_comp.items():
        nodes = len(uf.parent)
        if nodes == 0:
            rep.add(f"component {i}: meets the tree in the empty set")
        elif uf.n_sets != 1 or n_edges[i] != nodes - 1:
            rep.add(f"component {i}: tree intersection is not contractible "
                    f"({nodes} points, {n_edges[i]} edges, {uf.n_sets} pieces)")


def _require_verified(e: SuitableEmbedding) -> None:
    rep = verify_embedding(e)
    if not rep.ok:
        raise ValueError(str(rep))


def embed_in_plumbing(s: ImmersedSurface, allow_empty: bool = False) -> tuple[LBTree, SuitableEmbedding]:
    """A tree on all double points of a plumbing, suitably embedded.

    Induction on the plumbing: strip the lowest-index leaf component, embed
    into the rest, then hang the leaf's double point off another double point
    on the same neighbouring component. Tree vertices are double-point indices;
    ``A_v`` holds the edges carried by the component of the first slot.
    """
    if s.kind != "plumbing":
        raise ValueError("target is not a plumbing")
    n = len(s.domain.components)
    if n == 1:
        if not allow_empty:
            raise ValueError("a single surface has no double points; pass allow_empty=True")
        empty = LBTree(Tree((), ()), {})
        return empty, SuitableEmbedding(s, empty, {}, {})
    on_comp: dict[int, list[int]] = {i: [] for i in range(n)}
    for d, (x, y) in enumerate(s.double_points):
        on_comp[x.component].append(d)
        on_comp[y.component].append(d)
    plumb = Tree.from_edges(
        ((x.component, y.component) for x, y in s.double_points), range(n))
    order = leaf_order(plumb)

    def dp_between(i, j):
        for d in on_comp[i]:
            x, y = s.double_points[d]
            if {x.component, y.component} == {i, j}:
                return d
        raise AssertionError("plumbing edge without double point")

    alive_dps: set[int] = set()
    edges: dict[Edge, EdgeImage] = {}
    # base: the last two components share one double point
    _, last_edge = order[-2]
    alive_dps.add(dp_between(*last_edge))
    for leaf, pe in reversed(order[:-2]):
        j = pe[0] if pe[1] == leaf else pe[1]
        d = dp_between(leaf, j)
        anchor = min(x for x in on_comp[j] if x in alive_dps)
        sid_new = next(sl.sid for sl in s.double_points[d] if sl.component == j)
        sid_anchor = next(sl.sid for sl in s.double_points[anchor] if sl.component == j)
        ed = edge(d, anchor)
        edges[ed] = EdgeImage(*((sid_new, sid_anchor) if d < anchor else (sid_anchor, sid_new)), j)
        alive_dps.add(d)

    tree = Tree.from_edges(edges, alive_dps)
    parts = {}
    for d in tree.vertices:
        first = s.double_points[d][0].component
        inc = tree.incident(d)
        parts[d] = ([x for x in inc if edges[x].carrier == first],
                    [x for x in inc if edges[x].carrier != first])
    lb = LBTree.make(tree, parts)
    emb = SuitableEmbedding(s, lb, {d: d for d in tree.vertices}, edges)
    _require_verified(emb)
    return lb, emb


def embed_in_connected(s: ImmersedSurface, t: LBTree) -> SuitableEmbedding:
    """Suitably embed ``t`` in a connected immersed surface by leaf induction.

    Start with the last surviving vertex on the lowest free double point; add
    leaves back in reverse stripping order, each on the lowest free double
    point using its first slot, joined to the slot already realising the
    leaf edge's part at the inner endpoint.
    """
    rep = validate_lbtree(t)
    if not rep.ok:
        raise ValueError(str(rep))
    if len(s.domain.components) != 1:
        raise ValueError(f"domain has {len(s.domain.components)} components; need a connected surface")
    m = len(s.double_points)
    if len(t.vertices) > m:
        raise ValueError(f"tree has {len(t.vertices)} vertices but only {m} double points")
    order = leaf_order(t.tree)
    free = iter(range(m))
    vmap: dict[int, int] = {}
    part_slot: dict[tuple[int, int], int] = {}
    edges: dict[Edge, EdgeImage] = {}

    def slot_for(v: int, part: int) -> int:
        if (v, part) in part_slot:
            return part_slot[(v, part)]
        pair = [sl.sid for sl in s.double_points[vmap[v]]]
        other = part_slot.get((v, 1 - part))
        sid = pair[0] if other is None else (pair[1] if other == pair[0] else pair[0])
        part_slot[(v, part)] = sid
        return sid

    root = order[-1][0]
    vmap[root] = next(free)
    for leaf, ed in reversed(order[:-1]):
        w = ed[0] if ed[1] == leaf else ed[1]
        vmap[leaf] = next(free)
        sw = slot_for(w, t.part_of(w, ed))
        sl = slot_for(leaf, t.part_of(leaf, ed))
        su, sv = (sw, sl) if ed[0] == w else (sl, sw)
        edges[ed] = EdgeImage(su, sv, 0)
    emb = SuitableEmbedding(s, t, vmap, edges)
    _require_verified(emb)
    return emb


@dataclass
class LiftForest:
    nodes: list[int]
    links: list[tuple[int, int]]
    components: list[list[int]]

    @property
    def n_components(self) -> int:
        return len(self.components)


def lift_forest(e: SuitableEmbedding) -> LiftForest:
    """Preimage of the embedded tree: slots of mapped double points joined by edges."""
    _require_verified(e)
    nodes = sorted(sl.sid for d in e.vertex_map.values() for sl in e.target.double_points[d])
    links = sorted((im.slot_u, im.slot_v) for im in e.edge_map.values())
    uf = UnionFind(nodes)
    for a, b in links:
        if not uf.union(a, b):
            raise AssertionError("verified embedding has a cyclic lift")
    comps = sorted(sorted(g) for g in uf.groups())
    return LiftForest(nodes, links, comps)


def link_of_embedding(e: SuitableEmbedding) -> LinkDiagram:
    """Link on the boundary of a neighbourhood of the embedded tree."""
    _require_verified(e)
    return associated_link(e.tree)


def slot_components(e: SuitableEmbedding, L: LinkDiagram | None = None) -> dict[int, str]:
    """Slot id -> label of the link component running through that sheet."""
    L = link_of_embedding(e) if L is None else L
    labels = associated_labels(e.tree, L)
    out = {}
    for v in e.tree.vertices:
        for part, sid in enumerate(e.part_slots(v)):
            out[sid] = labels[(v, part)]
    return out
