"""Link diagrams as planar-diagram (PD) codes.

Convention: a crossing is a 4-tuple of arc ids listed counterclockwise,
starting from an end of the under-strand. Positions 0 and 2 form the
under-strand, 1 and 3 the over-strand. In an oriented diagram position 0 is
the *incoming* under-strand and ``over_in`` records which over position is
incoming; the crossing is positive exactly when the over-strand enters at 3.

Worked example, the left-handed trefoil (all crossings negative)::

    X(1,4,2,5)  X(3,6,4,1)  X(5,2,6,3)

Traversing 1 -> 2 -> ... -> 6 the under-strand of ``X(1,4,2,5)`` runs 1 -> 2
and the over-strand 4 -> 5, so ``over_in = 1`` and the sign is -1. Its Jones
polynomial is ``-t^-4 + t^-3 + t^-1``.

Unoriented diagrams are stored with each tuple rotated by 0 or 2 positions to
the lexicographically smaller form, which makes equality and mirroring exact.
A component with no arcs is a crossingless circle.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._util import Report, UnionFind
from .laurent import LaurentPoly
from .trees import LBTree, _require_valid, edge

Crossing = tuple[int, int, int, int]

DEFAULT_CROSSING_CAP = 20
DEFAULT_ORIENTATION_CAP = 12


class ResourceError(RuntimeError):
    """A computation would exceed a configured size limit."""


def crossing_cap() -> int:
    return int(os.environ.get("PLUMBLINE_CROSSING_CAP", DEFAULT_CROSSING_CAP))


def _rot(x: Crossing, r: int) -> Crossing:
    r %= 4
    return x[r:] + x[:r]  # type: ignore[return-value]


def _norm_unoriented(x: Crossing) -> Crossing:
    return min(x, _rot(x, 2))


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[str, tuple[int, ...]], ...]
    over_in: tuple[int, ...] | None = None
    merges: tuple[tuple[str, str, str], ...] = ()
    summands: tuple["LinkDiagram", ...] = field(default=(), compare=False, repr=False)

    @property
    def oriented(self) -> bool:
        return self.over_in is not None

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.components]

    def arcs_of(self, label: str) -> tuple[int, ...]:
        for lab, arcs in self.components:
            if lab == label:
                return arcs
        raise KeyError(f"no component labelled {label!r}")

    def arcs(self) -> list[int]:
        return sorted({a for x in self.crossings for a in x})

    def __len__(self) -> int:
        return len(self.crossings)


def _build(crossings: Iterable[Crossing], components, over_in=None, merges=(), summands=()) -> LinkDiagram:
    crossings = [tuple(x) for x in crossings]
    if over_in is None:
        crossings = [_norm_unoriented(x) for x in crossings]
    comps = tuple((lab, tuple(sorted(arcs))) for lab, arcs in components)
    return LinkDiagram(tuple(crossings), comps,  # type: ignore[arg-type]
                       None if over_in is None else tuple(over_in), tuple(merges), tuple(summands))


def _occurrences(crossings) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(crossings):
        for p, a in enumerate(x):
            occ.setdefault(a, []).append((ci, p))
    return occ


def _arc_components(crossings) -> list[list[int]]:
    """Union-find over arcs, joining the two ends of each strand."""
    uf = UnionFind()
    for a, b, c, d in crossings:
        for x in (a, b, c, d):
            uf.add(x)
        uf.union(a, c)
        uf.union(b, d)
    return sorted(sorted(g) for g in uf.groups())


def validate_diagram(L: LinkDiagram) -> Report:
    rep = Report("diagram")
    occ = _occurrences(L.crossings)
    for a, o in sorted(occ.items()):
        if len(o) != 2:
            rep.add(f"arc {a} appears {len(o)} times")
    labels = [lab for lab, _ in L.components]
    if len(set(labels)) != len(labels):
        rep.add("duplicate component labels")
    stored = sorted(sorted(arcs) for _, arcs in L.components if arcs)
    if stored != _arc_components(L.crossings):
        rep.add("stored component partition disagrees with the crossings")
    if L.over_in is not None:
        if len(L.over_in) != len(L.crossings):
            rep.add("over_in length differs from crossing count")
        else:
            incoming = _incoming_positions(L)
            for a, o in occ.items():
                if len(o) == 2:
                    ins = sum(1 for ci, p in o if p in incoming[ci])
                    if ins != 1:
                        rep.add(f"arc {a}: orientation inconsistent ({ins} incoming ends)")
    return rep


def _incoming_positions(L: LinkDiagram) -> list[set[int]]:
    return [{0, oi} for oi in L.over_in]  # type: ignore[union-attr]


# -- constructors ------------------------------------------------------------

def unknot(label: str = "K") -> LinkDiagram:
    """The crossingless unknot."""
    return _build((), [(label, ())])


def hopf_link(labels: tuple[str, str] = ("a", "b")) -> LinkDiagram:
    """Two-crossing Hopf link; its default orientation has both crossings positive."""
    la, lb = labels
    if la == lb:
        raise ValueError("Hopf link components need distinct labels")
    return _build([(1, 4, 2, 3), (3, 2, 4, 1)], [(la, (1, 2)), (lb, (3, 4))])


def _fresh_label(used: set[str]) -> str:
    i = 0
    while f"#{i}" in used:
        i += 1
    return f"#{i}"


def _used_labels(L: LinkDiagram) -> set[str]:
    used = set(L.labels)
    for m in L.merges:
        used.update(m)
    return used


def _factors(L: LinkDiagram) -> tuple[LinkDiagram, ...]:
    if L.summands:
        return L.summands
    return (LinkDiagram(L.crossings, L.components, L.over_in),)


def connected_sum(L1: LinkDiagram, c1: str, L2: LinkDiagram, c2: str,
                  label: str | None = None) -> LinkDiagram:
    """Connected sum splicing the lowest-id arc of ``c1`` to that of ``c2``.

    The merged component gets a fresh label, recorded in ``merges`` as
    ``(new, c1, c2)``. If both inputs are oriented the splice respects the
    orientations and the result is oriented.
    """
    if c1 not in L1.labels:
        raise KeyError(f"{c1!r} is not a component of the first link")
    if c2 not in L2.labels:
        raise KeyError(f"{c2!r} is not a component of the second link")
    u1, u2 = _used_labels(L1), _used_labels(L2)
    if u1 & u2:
        raise ValueError(f"label clash between summands: {sorted(u1 & u2)}")
    if label is None:
        label = _fresh_label(u1 | u2)
    elif label in u1 | u2:
        raise ValueError(f"label {label!r} already used")
    oriented = L1.oriented and L2.oriented
    if L1.oriented != L2.oriented:
        L1, L2 = unorient(L1), unorient(L2)

    offset = max(L1.arcs(), default=0)
    x2 = [tuple(a + offset for a in x) for x in L2.crossings]
    comps2 = [(lab, tuple(a + offset for a in arcs)) for lab, arcs in L2.components]
    crossings = [list(x) for x in L1.crossings] + [list(x) for x in x2]
    over_in = (list(L1.over_in) + list(L2.over_in)) if oriented else None  # type: ignore[arg-type]

    arcs1 = dict(L1.components)[c1]
    arcs2 = dict(comps2)[c2]
    if arcs1 and arcs2:
        x, y = min(arcs1), min(arcs2)
        occ = _occurrences(crossings)
        if oriented:
            def tail_head(a):
                o = occ[a]
                first_in = o[0][1] in (0, over_in[o[0][0]])
                return (o[1], o[0]) if first_in else (o[0], o[1])
            _, q = tail_head(x)
            _, s = tail_head(y)
        else:
            _, q = occ[x]
            _, s = occ[y]
        crossings[q[0]][q[1]] = y
        crossings[s[0]][s[1]] = x

    comps = [(lab, arcs) for lab, arcs in L1.components if lab != c1]
    comps += [(lab, arcs) for lab, arcs in comps2 if lab != c2]
    comps.append((label, tuple(arcs1) + tuple(arcs2)))
    merges = L1.merges + L2.merges + ((label, c1, c2),)
    summands = _factors(L1) + _factors(L2)
    return _build([tuple(x) for x in crossings], comps, over_in, merges, summands)


def final_label(L: LinkDiagram, label: str) -> str:
    """Current label of the component that ``label`` was merged into."""
    parent = {}
    for new, a, b in L.merges:
        parent[a] = new
        parent[b] = new
    while label in parent:
        label = parent[label]
    return label


# -- orientation and mirroring -----------------------------------------------

def unorient(L: LinkDiagram) -> LinkDiagram:
    if not L.oriented:
        return L
    return _build(L.crossings, L.components, None, L.merges, L.summands)


def _normalise_oriented(crossings, incoming) -> tuple[list[Crossing], list[int]]:
    xs, ois = [], []
    for x, inc in zip(crossings, incoming):
        under_in = 0 if 0 in inc else 2
        x = _rot(tuple(x), under_in)
        over = [p for p in (1, 3) if p in inc]
        if len(over) != 1 or (0 in inc) == (2 in inc):
            raise ValueError(f"inconsistent orientation at crossing {x}")
        xs.append(x)
        ois.append((over[0] - under_in) % 4)
    return xs, ois


def orient(L: LinkDiagram, flags: Mapping[str, bool] | None = None) -> LinkDiagram:
    """Orient every component; ``flags[label]`` reverses the default direction.

    The default direction of a component runs along its lowest arc towards
    that arc's later occurrence in crossing order.
    """
    flags = flags or {}
    occ = _occurrences(L.crossings)
    incoming: list[set[int]] = [set() for _ in L.crossings]
    for lab, arcs in L.components:
        if not arcs:
            continue
        start = min(arcs)
        o = sorted(occ[start])
        head = o[0] if flags.get(lab, False) else o[1]
        while True:
            ci, p = head
            incoming[ci].add(p)
            out_arc = L.crossings[ci][(p + 2) % 4]
            o2 = occ[out_arc]
            head = o2[1] if o2[0] == (ci, (p + 2) % 4) else o2[0]
            if out_arc == start:
                break
    xs, ois = _normalise_oriented(L.crossings, incoming)
    return _build(xs, L.components, ois, L.merges, L.summands)


def reverse_component(L: LinkDiagram, label: str) -> LinkDiagram:
    if not L.oriented:
        raise ValueError("cannot reverse a component of an unoriented diagram")
    arcs = set(L.arcs_of(label))
    incoming = []
    for x, inc in zip(L.crossings, _incoming_positions(L)):
        new = set()
        for p in inc:
            new.add((p + 2) % 4 if x[p] in arcs else p)
        incoming.append(new)
    xs, ois = _normalise_oriented(L.crossings, incoming)
    return _build(xs, L.components, ois, L.merges, L.summands)


def mirror(L: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing (orientation is kept)."""
    if L.oriented:
        xs, ois = [], []
        for x, oi in zip(L.crossings, L.over_in):  # type: ignore[arg-type]
            # the incoming over end becomes position 0; old position 0 becomes the new incoming over
            xs.append(_rot(x, oi))
            ois.append((0 - oi) % 4)
        over_in = ois
    else:
        xs = [_rot(x, 1) for x in L.crossings]
        over_in = None
    return _build(xs, L.components, over_in, L.merges, tuple(mirror(s) for s in L.summands))


# -- combinatorial invariants ------------------------------------------------

def component_count(L: LinkDiagram) -> int:
    return len(_arc_components(L.crossings)) + sum(1 for _, arcs in L.components if not arcs)


def crossing_signs(L: LinkDiagram) -> list[int]:
    if not L.oriented:
        raise ValueError("crossing signs need an oriented diagram")
    return [1 if oi == 3 else -1 for oi in L.over_in]  # type: ignore[union-attr]


def writhe(L: LinkDiagram) -> int:
    return sum(crossing_signs(L))


def linking_matrix(L: LinkDiagram) -> list[list[int]]:
    """Pairwise linking numbers, indexed in ``L.components`` order."""
    signs = crossing_signs(L)
    index = {}
    for i, (_, arcs) in enumerate(L.components):
        for a in arcs:
            index[a] = i
    k = len(L.components)
    twice = [[0] * k for _ in range(k)]
    for x, s in zip(L.crossings, signs):
        i, j = index[x[0]], index[x[1]]
        if i != j:
            twice[i][j] += s
            twice[j][i] += s
    return [[v // 2 for v in row] for row in twice]


def is_planar(L: LinkDiagram) -> bool:
    """Euler-characteristic test: each connected piece has ``crossings + 2`` faces."""
    if not L.crossings:
        return True
    occ = _occurrences(L.crossings)
    other = {}
    for o in occ.values():
        other[o[0]], other[o[1]] = o[1], o[0]
    seen = set()
    faces = 0
    for start in other:
        if start in seen:
            continue
        faces += 1
        h = start
        while h not in seen:
            seen.add(h)
            ci, p = other[h]
            h = (ci, (p + 1) % 4)
    pieces = UnionFind(range(len(L.crossings)))
    for o in occ.values():
        pieces.union(o[0][0], o[1][0])
    return faces == len(L.crossings) + 2 * pieces.n_sets


def canonical_pd(L: LinkDiagram) -> str:
    """PD code up to arc relabelling, crossing order and per-crossing 2-rotation.

    Component labels and orientation are ignored. Each connected piece is
    traversed breadth-first from every possible start; the least encoding wins.
    """
    xs = L.crossings
    occ = _occurrences(xs)
    nbr = {}
    for o in occ.values():
        nbr[o[0]], nbr[o[1]] = o[1], o[0]
    pieces = UnionFind(range(len(xs)))
    for o in occ.values():
        pieces.union(o[0][0], o[1][0])
    codes = []
    for group in pieces.groups():
        best = None
        for start in group:
            for r in (0, 2):
                rots = {start: r}
                order = [start]
                labels: dict[int, int] = {}
                i = 0
                while i < len(order):
                    ci = order[i]
                    rc = rots[ci]
                    for j in range(4):
                        p = (j + rc) % 4
                        a = xs[ci][p]
                        if a not in labels:
                            labels[a] = len(labels) + 1
                        c2, p2 = nbr[(ci, p)]
                        if c2 not in rots:
                            rots[c2] = 0 if p2 in (0, 1) else 2
                            order.append(c2)
                    i += 1
                code = tuple(tuple(labels[a] for a in _rot(xs[c], rots[c])) for c in order)
                if best is None or code < best:
                    best = code
        codes.append("".join(f"X({a},{b},{c},{d})" for a, b, c, d in best))
    loops = sum(1 for _, arcs in L.components if not arcs)
    return ";".join(sorted(codes)) + f"|O{loops}"


# -- bracket and Jones -------------------------------------------------------

_A = LaurentPoly.monomial(1)
_LOOP = -LaurentPoly.monomial(2) - LaurentPoly.monomial(-2)


def state_sum_bracket(L: LinkDiagram, cap: int | None = None) -> LaurentPoly:
    """Kauffman bracket by summing over all smoothings; unknot normalised to 1.

    The A-smoothing of ``(a,b,c,d)`` joins ``a-b`` and ``c-d``, the B-smoothing
    ``a-d`` and ``b-c``.
    """
    cap = crossing_cap() if cap is None else cap
    n = len(L.crossings)
    if n > cap:
        raise ResourceError(f"{n} crossings exceeds the naive state-sum cap {cap}")
    free = sum(1 for _, arcs in L.components if not arcs)
    if n == 0:
        return _LOOP ** (free - 1) if free else LaurentPoly.one()
    arcs = L.arcs()
    idx = {a: i for i, a in enumerate(arcs)}
    xs = [tuple(idx[a] for a in x) for x in L.crossings]
    m = len(arcs)
    tally: Counter = Counter()
    for mask in range(1 << n):
        parent = list(range(m))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        loops = m
        n_a = 0
        for k, (a, b, c, d) in enumerate(xs):
            if mask >> k & 1:
                pairs = ((a, d), (b, c))
            else:
                n_a += 1
                pairs = ((a, b), (c, d))
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[rv] = ru
                    loops -= 1
        tally[(2 * n_a - n, loops + free)] += 1
    out = LaurentPoly()
    for (exp, loops), count in tally.items():
        out = out + (_LOOP ** (loops - 1)).shift(exp) * count
    return out


def kauffman_bracket(L: LinkDiagram, cap: int | None = None) -> LaurentPoly:
    """Bracket, multiplying recorded connected-sum factors when available."""
    if len(L.summands) > 1:
        out = LaurentPoly.one()
        for s in L.summands:
            out = out * state_sum_bracket(s, cap)
        return out
    return state_sum_bracket(L, cap)


def bracket_to_jones(bracket: LaurentPoly, w: int) -> LaurentPoly:
    """``(-A^3)^-w <L>`` rewritten in ``t^(1/2)`` units via ``A = t^(-1/4)``."""
    scaled = bracket.shift(-3 * w) * (-1 if w % 2 else 1)
    out = {}
    for k, c in scaled.coeffs.items():
        if k % 2:
            raise ValueError(f"odd A-exponent {k}: not a Jones polynomial")
        out[-k // 2] = c
    return LaurentPoly(out, "t")


def jones(L: LinkDiagram, cap: int | None = None) -> LaurentPoly:
    """Jones polynomial of an oriented diagram, exponents in ``t^(1/2)`` units."""
    if not L.oriented:
        raise ValueError("the Jones polynomial needs an oriented diagram")
    return bracket_to_jones(kauffman_bracket(L, cap), writhe(L))


@dataclass
class AmphichiralEvidence:
    """Jones multisets of a diagram and its mirror over all orientations.

    ``ok`` means the multiset is closed under ``t -> 1/t``; necessary for the
    unoriented link to be isotopic to its mirror, not sufficient.
    """

    ok: bool
    orientations: int
    jones: Counter
    mirror_jones: Counter
    mirror_rule: bool

    def to_json(self) -> dict:
        def dump(c):
            return sorted([p.to_text(), n] for p, n in c.items())
        return {"ok": self.ok, "orientations": self.orientations,
                "jones": dump(self.jones), "mirror_jones": dump(self.mirror_jones),
                "mirror_rule": self.mirror_rule}


def amphichiral_evidence(L: LinkDiagram, cap: int = DEFAULT_ORIENTATION_CAP,
                         crossing_limit: int | None = None) -> AmphichiralEvidence:
    labels = [lab for lab, arcs in L.components if arcs]
    if len(labels) > cap:
        raise ResourceError(f"{len(labels)} components exceeds the orientation cap {cap}")
    base = unorient(L)
    mir = mirror(base)
    b_l = kauffman_bracket(base, crossing_limit)
    b_m = kauffman_bracket(mir, crossing_limit)
    js: Counter = Counter()
    ms: Counter = Counter()
    for bits in itertools.product((False, True), repeat=len(labels)):
        flags = dict(zip(labels, bits))
        js[bracket_to_jones(b_l, writhe(orient(base, flags)))] += 1
        ms[bracket_to_jones(b_m, writhe(orient(mir, flags)))] += 1
    inverted = Counter({p.invert(): n for p, n in js.items()})
    return AmphichiralEvidence(ok=(js == ms), orientations=2 ** len(labels),
                               jones=js, mirror_jones=ms, mirror_rule=(inverted == ms))


# -- associated links ----------------------------------------------------------

def part_label(v: int, part: int) -> str:
    """Label of the Hopf component at ``v`` for part ``A`` (0) or ``B`` (1)."""
    return f"v{v}.{'AB'[part]}"


def associated_link(t: LBTree) -> LinkDiagram:
    """One Hopf link per vertex, connect-summed along every edge.

    Edges are processed breadth-first from the lowest vertex; at edge ``vw``
    the components labelled by the parts containing ``vw`` are summed.
    """
    _require_valid(t)
    root = t.vertices[0]
    acc = hopf_link((part_label(root, 0), part_label(root, 1)))
    adj = t.tree.adjacency()
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w in seen:
                continue
            seen.add(w)
            queue.append(w)
            e = edge(v, w)
            h = hopf_link((part_label(w, 0), part_label(w, 1)))
            acc = connected_sum(acc, final_label(acc, part_label(v, t.part_of(v, e))),
                                h, part_label(w, t.part_of(w, e)))
    return acc


def associated_labels(t: LBTree, L: LinkDiagram) -> dict[tuple[int, int], str]:
    """``(vertex, part) -> component label`` in the associated link ``L``."""
    return {(v, p): final_label(L, part_label(v, p)) for v in t.vertices for p in (0, 1)}


# -- text formats --------------------------------------------------------------

def to_pd_text(L: LinkDiagram) -> str:
    lines = []
    for i, x in enumerate(L.crossings):
        s = "X(" + ",".join(map(str, x)) + ")"
        if L.oriented:
            s += " +" if L.over_in[i] == 3 else " -"  # type: ignore[index]
        lines.append(s)
    for lab, arcs in L.components:
        lines.append(f"C {lab}: " + ",".join(map(str, arcs)))
    return "\n".join(lines) + "\n"


def parse_pd_text(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d) [+|-]`` and ``C label: a,b,...`` lines.

    Lines starting with ``#`` are comments (labels may contain ``#``).

    A crossing sign marks the diagram oriented, with position 0 the incoming
    under-strand; then every crossing needs a sign. Without component lines
    the components are computed and labelled ``c0, c1, ...``.
    """
    crossings, signs, comps = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("X"):
                body, _, rest = line[1:].partition(")")
                x = tuple(int(a) for a in body.strip("( ").split(","))
                if len(x) != 4:
                    raise ValueError("crossing needs four arcs")
                crossings.append(x)
                rest = rest.strip()
                signs.append({"+": 3, "-": 1, "": None}[rest])
            elif line.startswith("C"):
                lab, _, arcs = line[1:].partition(":")
                comps.append((lab.strip(), tuple(int(a) for a in arcs.replace(",", " ").split())))
            else:
                raise ValueError("unknown line type")
        except (ValueError, KeyError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}: {exc}") from exc
    if any(s is not None for s in signs) and any(s is None for s in signs):
        raise ValueError("either every crossing carries a sign or none does")
    over_in = signs if signs and signs[0] is not None else None
    if not comps:
        comps = [(f"c{i}", tuple(g)) for i, g in enumerate(_arc_components(crossings))]
    L = _build(crossings, comps, over_in)
    rep = validate_diagram(L)
    if not rep.ok:
        raise ValueError(str(rep))
    return L


def associated_link_svg(t: LBTree, width_per_vertex: int = 130) -> str:
    """Schematic chain drawing: a Hopf clasp per vertex, a band per edge."""
    _require_valid(t)
    L = associated_link(t)
    labels = associated_labels(t, L)
    adj = t.tree.adjacency()
    order, stack, seen = [], [t.vertices[0]], set()
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        stack.extend(reversed(adj[v]))
    pos = {v: i for i, v in enumerate(order)}
    span = max(pos.values(), default=0)
    w = width_per_vertex * (span + 1) + 40
    h = 120 + 30 * (span + 1)
    base = h - 60
    colours = ("#c0392b", "#2471a3")

    def centre(v, part):
        x = 20 + width_per_vertex * pos[v] + width_per_vertex / 2
        return x + (-18 if part == 0 else 18), base

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
           f'viewBox="0 0 {w:.0f} {h:.0f}">',
           '<g fill="none" stroke-width="3">']
    for u, v in t.edges:
        e = (u, v)
        x1, y1 = centre(u, t.part_of(u, e))
        x2, y2 = centre(v, t.part_of(v, e))
        lift = 25 + 25 * abs(pos[u] - pos[v])
        col = colours[t.part_of(u, e)]
        out.append(f'<path d="M {x1:.1f} {y1 - 28:.1f} C {x1:.1f} {y1 - 28 - lift:.1f} '
                   f'{x2:.1f} {y2 - 28 - lift:.1f} {x2:.1f} {y2 - 28:.1f}" stroke="{col}" '
                   f'stroke-dasharray="6 3"/>')
    for v in order:
        for part in (0, 1):
            x, y = centre(v, part)
            out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="28" stroke="{colours[part]}">'
                       f'<title>{labels[(v, part)]}</title></circle>')
    out.append("</g>")
    out.append('<g font-family="monospace" font-size="11" text-anchor="middle">')
    for v in order:
        x, _ = centre(v, 0)
        out.append(f'<text x="{x + 18:.1f}" y="{base + 48:.1f}">{v}</text>')
    out.append("</g></svg>")
    return "\n".join(out) + "\n"
