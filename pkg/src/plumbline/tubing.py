"""Tubing: cut out tree neighbourhoods and glue annuli along the link circles.

Everything is Euler-characteristic bookkeeping. Cutting the neighbourhood of
an embedded tree removes one open disc per component of its lift, each disc
leaving a new boundary circle labelled by a link component. Tubing two such
surfaces glues one annulus per label, which keeps the total Euler
characteristic and merges pieces; genus is read back from ``chi`` and the
boundary count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ._util import UnionFind
from .links import LinkDiagram, canonical_pd, component_count
from .surfaces import (AbstractSurface, DomainComponent, ImmersedSurface, SuitableEmbedding,
                       lift_forest, link_of_embedding, slot_components, verify_embedding)


class TubingError(ValueError):
    pass


def euler_characteristic(s: AbstractSurface | ImmersedSurface | DomainComponent) -> int:
    if isinstance(s, ImmersedSurface):
        s = s.domain
    return s.euler


def classify(s: AbstractSurface | ImmersedSurface) -> tuple[int, int, int]:
    """Total ``(genus, boundary circles, components)``."""
    if isinstance(s, ImmersedSurface):
        s = s.domain
    for c in s.components:
        if not c.orientable:
            raise NotImplementedError("non-orientable surfaces are not supported")
    return (sum(c.genus for c in s.components), sum(c.boundary for c in s.components),
            len(s.components))


@dataclass(frozen=True)
class Circle:
    component: int
    label: str


@dataclass
class ExcisedSurface:
    """A domain after removing a tree neighbourhood, with labelled new circles."""

    surface: AbstractSurface
    link: LinkDiagram
    circles: list[Circle]
    double_points_left: int
    original_euler: int

    @property
    def circle_map(self) -> dict[str, int]:
        return {c.label: i for i, c in enumerate(self.circles)}


def excise(s: ImmersedSurface, e: SuitableEmbedding) -> ExcisedSurface:
    """Remove one disc per lift component from its carrying domain component."""
    if e.target != s:
        raise TubingError("embedding targets a different surface")
    rep = verify_embedding(e)
    if not rep.ok:
        raise TubingError(f"cannot excise along an unverified embedding:\n{rep}")
    forest = lift_forest(e)
    link = link_of_embedding(e)
    labels = slot_components(e, link)
    slots = s._slots()
    comps = list(s.domain.components)
    circles = []
    for piece in forest.components:
        names = {labels[sid] for sid in piece}
        if len(names) != 1:
            raise AssertionError(f"lift component {piece} meets link components {sorted(names)}")
        carrier = slots[piece[0]][1].component
        c = comps[carrier]
        comps[carrier] = DomainComponent(c.genus, c.boundary + 1, c.orientable)
        circles.append(Circle(carrier, names.pop()))
    if len(circles) != component_count(link):
        raise AssertionError("circle count differs from link component count")
    left = len(s.double_points) - len(e.vertex_map)
    return ExcisedSurface(AbstractSurface(tuple(comps)), link, circles, left, s.domain.euler)


@dataclass
class TubingResult:
    surface: AbstractSurface
    annuli_count: int
    double_points: int
    pre_excision_euler: int
    orientation_consistent: bool | None = None
    pieces: list[tuple[str, int]] = field(default_factory=list)
    gluings: list[tuple[str, int, int]] = field(default_factory=list)
    log: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_json(),
            "annuli_count": self.annuli_count,
            "double_points": self.double_points,
            "pre_excision_euler": self.pre_excision_euler,
            "euler": self.surface.euler,
            "orientation_consistent": self.orientation_consistent,
            "log": list(self.log),
        }


def tube(a: ExcisedSurface, b: ExcisedSurface) -> TubingResult:
    """Glue an annulus between the circles of ``a`` and ``b`` with equal labels.

    Both links must be the same associated link (equal canonical PD codes, equal
    label sets); associated links are isotopic to their mirrors, which makes
    the paired links mirror images of each other.
    """
    la, lb = set(a.circle_map), set(b.circle_map)
    if la != lb:
        raise TubingError(f"unpaired components: first only {sorted(la - lb)}, "
                          f"second only {sorted(lb - la)}")
    if canonical_pd(a.link) != canonical_pd(b.link):
        raise TubingError("the two links have different canonical PD codes")

    pieces = [("a", i) for i in range(len(a.surface.components))]
    pieces += [("b", j) for j in range(len(b.surface.components))]
    comp = {("a", i): c for i, c in enumerate(a.surface.components)}
    comp.update({("b", j): c for j, c in enumerate(b.surface.components)})
    uf = UnionFind(pieces)
    gluings = []
    log = [f"pre-excision chi = {a.original_euler} + {b.original_euler}",
           f"excised chi = {a.surface.euler} + {b.surface.euler}"]
    for label in sorted(la):
        pa = ("a", a.circles[a.circle_map[label]].component)
        pb = ("b", b.circles[b.circle_map[label]].component)
        uf.union(pa, pb)
        gluings.append((label, pa[1], pb[1]))
        log.append(f"annulus {label}: a[{pa[1]}] -- b[{pb[1]}]")
    glued_into: dict = {}
    for _, pa_i, pb_j in gluings:
        r = uf.find(("a", pa_i))
        glued_into[r] = glued_into.get(r, 0) + 1

    out = []
    for group in sorted(uf.groups(), key=lambda g: sorted(g)):
        r = uf.find(group[0])
        chi = sum(comp[p].euler for p in group)
        bnd = sum(comp[p].boundary for p in group) - 2 * glued_into.get(r, 0)
        twice_g = 2 - chi - bnd
        if twice_g < 0 or twice_g % 2:
            raise AssertionError(f"impossible piece: chi={chi}, boundary={bnd}")
        out.append(DomainComponent(twice_g // 2, bnd))
    surface = AbstractSurface(tuple(out))
    n = len(la)
    result = TubingResult(surface, n, a.double_points_left + b.double_points_left,
                          a.original_euler + b.original_euler, None, pieces, gluings, log)
    if surface.euler != result.pre_excision_euler - 2 * n:
        raise AssertionError("Euler characteristic bookkeeping is inconsistent")
    log.append(f"result chi = {surface.euler} = {result.pre_excision_euler} - 2*{n}")
    return result


def orient_result(r: TubingResult, orientations: Mapping[str, int] | None,
                  free_pieces: bool = True) -> TubingResult:
    """Decide whether the tubed surface can be oriented.

    ``orientations[label]`` is ``+1`` when, with the current orientations of
    the two pieces, the paired circles carry opposite induced orientations
    (the link components satisfy ``L1 = -L2``), and ``-1`` otherwise. With
    ``free_pieces`` each piece may be reversed; this is a parity 2-colouring
    of the gluing graph. Raises :class:`TubingError` naming the first circle
    pair that cannot be made consistent.
    """
    if orientations is None:
        raise TubingError("inputs are unoriented")
    missing = [lab for lab, _, _ in r.gluings if lab not in orientations]
    if missing:
        raise TubingError(f"no orientation data for circles {missing}")
    flip: dict = {}
    adj: dict = {p: [] for p in r.pieces}
    for lab, i, j in r.gluings:
        need = 0 if orientations[lab] == 1 else 1
        adj[("a", i)].append((("b", j), need, lab))
        adj[("b", j)].append((("a", i), need, lab))
    log = list(r.log)
    for start in r.pieces:
        if start in flip:
            continue
        flip[start] = 0
        stack = [start]
        while stack:
            p = stack.pop()
            for q, need, lab in adj[p]:
                want = flip[p] ^ need
                if not free_pieces and need:
                    raise TubingError(f"circle pair {lab!r} glues with matching orientations")
                if q not in flip:
                    flip[q] = want
                    stack.append(q)
                elif flip[q] != want:
                    raise TubingError(f"orientation conflict at circle pair {lab!r}")
    reversed_pieces = sorted(f"{s}[{i}]" for (s, i), f in flip.items() if f)
    log.append("oriented; reversed pieces: " + (", ".join(reversed_pieces) or "none"))
    return TubingResult(r.surface, r.annuli_count, r.double_points, r.pre_excision_euler, True,
                        r.pieces, r.gluings, log)
