"""Locally bipartitioned trees.

A locally bipartitioned tree is a finite tree together with, at every vertex
``v``, a split of the edges at ``v`` into two parts ``(A_v, B_v)``. The parts
are stored ordered but every comparison in this module treats each split as
an unordered pair, so swapping ``A_v`` and ``B_v`` never changes anything.

Vertices are integers. An edge is identified by its endpoint pair ``(u, v)``
with ``u < v``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from ._util import Report

Edge = tuple[int, int]
Split = tuple[frozenset, frozenset]


def edge(u: int, v: int) -> Edge:
    """Normalised edge id for the pair ``{u, v}``."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Tree:
    """A finite graph that is meant to be a tree.

    Construction does not enforce tree-ness so that malformed input can be
    reported by :func:`validate_tree`; every algorithm below checks first.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Tree":
        es = tuple(sorted(edge(u, v) for u, v in edges))
        vs = set(vertices)
        for u, v in es:
            vs.update((u, v))
        return cls(tuple(sorted(vs)), es)

    @classmethod
    def single(cls, v: int = 0) -> "Tree":
        return cls((v,), ())

    def incident(self, v: int) -> list[Edge]:
        return [e for e in self.edges if v in e]

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def relabel(self, mapping: Mapping[int, int]) -> "Tree":
        return Tree.from_edges(((mapping[u], mapping[v]) for u, v in self.edges),
                               (mapping[v] for v in self.vertices))


def validate_tree(t: Tree) -> Report:
    rep = Report("tree")
    vs = set(t.vertices)
    if len(vs) != len(t.vertices):
        rep.add("duplicate vertex ids")
    if not vs:
        rep.add("empty vertex set")
        return rep
    seen = set()
    for u, v in t.edges:
        if u == v:
            rep.add(f"self-loop at {u}")
        if (u, v) in seen:
            rep.add(f"parallel edge {u}-{v}")
        seen.add((u, v))
        for x in (u, v):
            if x not in vs:
                rep.add(f"edge {u}-{v} references unknown vertex {x}")
    if not rep.ok:
        return rep
    if len(t.edges) != len(vs) - 1:
        rep.add(f"|E| = {len(t.edges)} but |V| - 1 = {len(vs) - 1}")
    adj = t.adjacency()
    start = t.vertices[0]
    reach = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in reach:
                reach.add(w)
                stack.append(w)
    if reach != vs:
        rep.add(f"not connected: unreachable from {start}: {sorted(vs - reach)}")
    return rep


@dataclass(frozen=True, eq=False)
class LBTree:
    """A tree with an ordered split ``(A_v, B_v)`` of the edges at each vertex."""

    tree: Tree
    parts: Mapping[int, Split] = field(default_factory=dict)

    @classmethod
    def make(cls, tree: Tree, parts: Mapping[int, tuple[Iterable[Edge], Iterable[Edge]]]) -> "LBTree":
        norm = {v: (frozenset(edge(*e) for e in a), frozenset(edge(*e) for e in b))
                for v, (a, b) in parts.items()}
        return cls(tree, norm)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.tree.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.tree.edges

    def part_of(self, v: int, e: Edge) -> int:
        """Index (0 for A, 1 for B) of the part of ``Pi_v`` containing ``e``."""
        a, b = self.parts[v]
        if e in a:
            return 0
        if e in b:
            return 1
        raise KeyError(f"edge {e} not at vertex {v}")

    def unordered(self) -> dict[int, frozenset]:
        return {v: frozenset(p) for v, p in self.parts.items()}

    def __eq__(self, other: object) -> bool:
        """Equality up to independent per-vertex part swaps."""
        if not isinstance(other, LBTree):
            return NotImplemented
        return (set(self.tree.vertices) == set(other.tree.vertices)
                and set(self.tree.edges) == set(other.tree.edges)
                and self.unordered() == other.unordered())

    __hash__ = None  # type: ignore[assignment]

    def relabel(self, mapping: Mapping[int, int]) -> "LBTree":
        def m(e):
            return edge(mapping[e[0]], mapping[e[1]])
        return LBTree.make(self.tree.relabel(mapping),
                           {mapping[v]: ([m(e) for e in a], [m(e) for e in b])
                            for v, (a, b) in self.parts.items()})

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "parts": {str(v): [sorted(map(list, a)), sorted(map(list, b))]
                      for v, (a, b) in sorted(self.parts.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LBTree":
        tree = Tree.from_edges((tuple(e) for e in data["edges"]), data["vertices"])
        parts = {int(v): ([tuple(e) for e in a], [tuple(e) for e in b])
                 for v, (a, b) in data["parts"].items()}
        return cls.make(tree, parts)


def validate_lbtree(t: LBTree) -> Report:
    """Check the tree and that every ``Pi_v`` is a bipartition of ``E(v)``."""
    rep = validate_tree(t.tree)
    rep.name = "lbtree"
    vs = set(t.tree.vertices)
    for v in sorted(set(t.parts) - vs):
        rep.add(f"bipartition given for unknown vertex {v}")
    for v in t.tree.vertices:
        if v not in t.parts:
            rep.add(f"vertex {v}: no bipartition")
            continue
        a, b = t.parts[v]
        inc = set(t.tree.incident(v))
        if a & b:
            rep.add(f"vertex {v}: parts not disjoint, shared {sorted(a & b)}")
        missing = inc - (a | b)
        if missing:
            rep.add(f"vertex {v}: edges {sorted(missing)} in neither part")
        extra = (a | b) - inc
        if extra:
            rep.add(f"vertex {v}: edges {sorted(extra)} are not incident")
    return rep


def _require_valid(t: LBTree) -> None:
    rep = validate_lbtree(t)
    if not rep.ok:
        raise ValueError(str(rep))


def bipartitions_from_bicolouring(t: Tree, colour: Mapping[Edge, int]) -> LBTree:
    """Split the edges at each vertex by colour: ``A_v`` colour 0, ``B_v`` colour 1."""
    colour = {edge(*e): c for e, c in colour.items()}
    for e in t.edges:
        if e not in colour:
            raise ValueError(f"edge {e} is not coloured")
        if colour[e] not in (0, 1):
            raise ValueError(f"edge {e} has colour {colour[e]!r}, expected 0 or 1")
    parts = {}
    for v in t.vertices:
        inc = t.incident(v)
        parts[v] = ([e for e in inc if colour[e] == 0], [e for e in inc if colour[e] == 1])
    return LBTree.make(t, parts)


def leaf_order(t: Tree) -> list[tuple[int, Edge | None]]:
    """Strip lowest-id leaves until one vertex remains.

    Returns ``(leaf, edge)`` pairs in stripping order, followed by
    ``(last_vertex, None)``.
    """
    adj = {v: set(n) for v, n in t.adjacency().items()}
    alive = set(t.vertices)
    out: list[tuple[int, Edge | None]] = []
    while len(alive) > 1:
        leaf = min(v for v in alive if len(adj[v]) == 1)
        (w,) = adj[leaf]
        out.append((leaf, edge(leaf, w)))
        adj[w].discard(leaf)
        alive.discard(leaf)
    out.append((next(iter(alive)), None))
    return out


def compatible_bicolouring(t: LBTree) -> dict[Edge, int]:
    """A colouring of the edges that induces every ``Pi_v`` up to swap.

    Leaf induction: strip the lowest-id leaf, colour the rest, then give the
    stripped edge the colour forced by the split at its inner endpoint
    (colour 0 when nothing forces it).
    """
    _require_valid(t)
    order = leaf_order(t.tree)
    colour: dict[Edge, int] = {}
    for leaf, e in reversed(order[:-1]):
        w = e[0] if e[1] == leaf else e[1]
        mine = t.part_of(w, e)
        same = [colour[f] for f in t.parts[w][mine] if f in colour]
        other = [colour[f] for f in t.parts[w][1 - mine] if f in colour]
        if same:
            colour[e] = same[0]
        elif other:
            colour[e] = 1 - other[0]
        else:
            colour[e] = 0
    if bipartitions_from_bicolouring(t.tree, colour) != t:
        raise AssertionError("compatible_bicolouring produced an inconsistent colouring")
    return colour


# -- canonical forms ---------------------------------------------------------

def _rooted_code(adj, parts_idx, v, parent) -> str:
    """AHU-style code of the subtree at ``v`` hanging from ``parent``.

    Children are grouped by whether their edge lies in the same part of
    ``Pi_v`` as the parent edge; this is invariant under swapping the parts.
    """
    pv = parts_idx[v]
    pside = pv[edge(v, parent)]
    same, other = [], []
    for w in adj[v]:
        if w == parent:
            continue
        code = _rooted_code(adj, parts_idx, w, v)
        (same if pv[edge(v, w)] == pside else other).append(code)
    return "(" + "".join(sorted(same)) + "|" + "".join(sorted(other)) + ")"


def _code_str(t: LBTree) -> str:
    adj = t.tree.adjacency()
    parts_idx = {v: {**{e: 0 for e in a}, **{e: 1 for e in b}} for v, (a, b) in t.parts.items()}
    best = None
    for r in t.tree.vertices:
        groups: tuple[list[str], list[str]] = ([], [])
        for w in adj[r]:
            groups[parts_idx[r][edge(r, w)]].append(_rooted_code(adj, parts_idx, w, r))
        x, y = sorted("".join(sorted(g)) for g in groups)
        code = "[" + x + "|" + y + "]"
        if best is None or code < best:
            best = code
    return best


def canonical_code(t: LBTree) -> bytes:
    """Isomorphism invariant of a locally bipartitioned tree.

    Two trees get the same code iff some vertex bijection carries edges to
    edges and each split to a split (in either order). Use ``.hex()`` for text.
    """
    _require_valid(t)
    return _code_str(t).encode("ascii")


def is_isomorphic(a: LBTree, b: LBTree) -> bool:
    return canonical_code(a) == canonical_code(b)


def tree_code(t: Tree) -> bytes:
    """Canonical code of a plain tree (every split puts all edges in one part)."""
    return canonical_code(uniform(t))


def uniform(t: Tree) -> LBTree:
    return bipartitions_from_bicolouring(t, {e: 0 for e in t.edges})


# -- generators --------------------------------------------------------------

def enumerate_lbtrees(k: int) -> Iterator[LBTree]:
    """One representative per isomorphism class on ``k`` vertices.

    Built by attaching a leaf, in every part of every vertex, to each class
    on ``k - 1`` vertices. Output is sorted by canonical code.
    """
    if k <= 0:
        return iter(())
    level = {canonical_code(_SINGLE): _SINGLE}
    for n in range(2, k + 1):
        nxt: dict[bytes, LBTree] = {}
        for t in level.values():
            for w in t.vertices:
                for side in (0, 1):
                    grown = _attach_leaf(t, w, n - 1, side)
                    nxt.setdefault(canonical_code(grown), grown)
        level = nxt
    return iter([level[c] for c in sorted(level)])


_SINGLE = LBTree.make(Tree.single(0), {0: ((), ())})


def _attach_leaf(t: LBTree, w: int, new: int, side: int) -> LBTree:
    e = edge(w, new)
    parts = {v: (set(a), set(b)) for v, (a, b) in t.parts.items()}
    parts[w][side].add(e)
    parts[new] = ({e}, set())
    return LBTree.make(Tree.from_edges(t.edges + (e,), t.vertices + (new,)), parts)


def prufer_tree(seq: list[int], k: int) -> Tree:
    """Labelled tree on ``0..k-1`` from a Prufer sequence of length ``k - 2``."""
    if k == 1:
        return Tree.single(0)
    degree = [1] * k
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(k) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(k) if degree[i] == 1]
    edges.append((u, v))
    return Tree.from_edges(edges, range(k))


def random_tree(k: int, rng: random.Random) -> Tree:
    return prufer_tree([rng.randrange(k) for _ in range(k - 2)], k) if k > 1 else Tree.single(0)


def random_lbtree(k: int, rng: random.Random) -> LBTree:
    """Uniform random labelled tree with independent random splits at every vertex."""
    t = random_tree(k, rng)
    parts = {}
    for v in t.vertices:
        a, b = [], []
        for e in t.incident(v):
            (a if rng.random() < 0.5 else b).append(e)
        parts[v] = (a, b)
    return LBTree.make(t, parts)


# -- text format -------------------------------------------------------------

def parse_tree_text(text: str) -> LBTree:
    """Parse the edge-list format.

    Lines are ``u v [colour]`` for edges, a lone ``v`` for an isolated vertex,
    and optionally ``P v: n1 n2 | n3`` to give ``Pi_v`` by neighbour ids,
    overriding the colour-induced split at ``v``. ``#`` starts a comment.
    Missing colours default to 0.
    """
    edges, colours, verts, overrides = [], {}, [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("P"):
                head, body = line[1:].split(":", 1)
                v = int(head)
                left, right = body.split("|") if "|" in body else (body, "")
                overrides[v] = ([edge(v, int(x)) for x in left.split()],
                                [edge(v, int(x)) for x in right.split()])
                continue
            toks = [int(x) for x in line.split()]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}") from exc
        if len(toks) == 1:
            verts.append(toks[0])
        elif len(toks) in (2, 3):
            e = edge(toks[0], toks[1])
            edges.append(e)
            colours[e] = toks[2] if len(toks) == 3 else 0
        else:
            raise ValueError(f"line {lineno}: expected 'u v [colour]', got {raw!r}")
    tree = Tree.from_edges(edges, verts)
    lb = bipartitions_from_bicolouring(tree, colours)
    if overrides:
        parts = dict(lb.parts)
        parts.update({v: (frozenset(a), frozenset(b)) for v, (a, b) in overrides.items()})
        lb = LBTree(tree, parts)
    return lb


def format_tree_text(tree: Tree, colour: Mapping[Edge, int] | None = None) -> str:
    lines = []
    if not tree.edges:
        lines.extend(str(v) for v in tree.vertices)
    for e in tree.edges:
        lines.append(f"{e[0]} {e[1]}" + (f" {colour[e]}" if colour is not None else ""))
    return "\n".join(lines) + "\n"
