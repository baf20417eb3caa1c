"""
Oriented knot diagrams.

A diagram is given by planar-diagram tuples X(a,b,c,d): the four segment labels at a crossing listed
counterclockwise starting from the incoming under-strand. Labels run 1..2c and increase along the orientation,
so the under strand always continues a -> c = next(a) and the over strand joins b and d.

A crossing is positive when the over strand runs d -> b (b = next(d)): walking along the over strand the
under strand then passes from right to left.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from src.models.exceptions import DiagramError

logger = logging.getLogger(__name__)

PDTuple = Tuple[int, int, int, int]


class Sign(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    @property
    def is_positive(self) -> bool:
        return self is Sign.POSITIVE

    def flipped(self) -> "Sign":
        return Sign.NEGATIVE if self is Sign.POSITIVE else Sign.POSITIVE

    def __int__(self) -> int:
        return 1 if self is Sign.POSITIVE else -1


class Role(Enum):
    OVER = "over"
    UNDER = "under"


@dataclass(frozen=True)
class Crossing:
    """
    One crossing with its PD slots and oriented strands.

    `index` is the position in the diagram (0-based, used as quiver vertex id), `label` is the name given by the
    input (1-based position for PD codes, the crossing label for Gauss codes).
    """

    index: int
    label: int
    slots: PDTuple
    sign: Sign
    under_in: int
    under_out: int
    over_in: int
    over_out: int

    def departing(self, role: Role) -> int:
        return self.over_out if role is Role.OVER else self.under_out

    def arriving(self, role: Role) -> int:
        return self.over_in if role is Role.OVER else self.under_in


@dataclass(frozen=True)
class Segment:
    label: int
    tail: int
    tail_role: Role
    head: int
    head_role: Role
    arc: int


@dataclass(frozen=True)
class Arc:
    index: int
    segments: Tuple[int, ...]


@dataclass(frozen=True)
class Diagram:
    """
    Validated oriented knot diagram.

    Attributes:
        crossings (tuple): crossings by index.
        segments (tuple): segments by label - 1.
        arcs (tuple): arcs ordered by their first segment label.
        source (str): text the diagram was parsed from.
        faces (int): number of faces of the rotation system given by the slot order.
    """

    crossings: Tuple[Crossing, ...]
    segments: Tuple[Segment, ...]
    arcs: Tuple[Arc, ...]
    source: str = ""
    faces: int = 0
    name: Optional[str] = field(default=None, compare=False)

    @property
    def c(self) -> int:
        return len(self.crossings)

    @property
    def n_segments(self) -> int:
        return len(self.segments)

    @property
    def genus(self) -> int:
        return (self.c + 2 - self.faces) // 2

    @property
    def is_virtual(self) -> bool:
        return self.faces != self.c + 2

    @property
    def writhe(self) -> int:
        return sum(int(x.sign) for x in self.crossings)

    def next_label(self, label: int) -> int:
        return label % self.n_segments + 1

    def crossing(self, index: int) -> Crossing:
        if not 0 <= index < self.c:
            raise DiagramError(f"unknown crossing {index}, diagram has crossings 0..{self.c - 1}")
        return self.crossings[index]

    def segment(self, label: int) -> Segment:
        if not 1 <= label <= self.n_segments:
            raise DiagramError(f"unknown segment {label}, diagram has segments 1..{self.n_segments}")
        return self.segments[label - 1]

    def pd_tuples(self) -> List[PDTuple]:
        return [x.slots for x in self.crossings]

    def to_pd(self) -> str:
        return ";".join("X({},{},{},{})".format(*x.slots) for x in self.crossings)

    def mirror(self) -> "Diagram":
        """Reflect the diagram: slots b and d swap, every crossing sign flips."""
        mirrored = [(a, d, c, b) for a, b, c, d in self.pd_tuples()]
        labels = [x.label for x in self.crossings]
        name = f"{self.name}*" if self.name else None
        return build_diagram(mirrored, labels=labels, source=f"mirror({self.source})", name=name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source,
            "c": self.c,
            "writhe": self.writhe,
            "genus": self.genus,
            "virtual": self.is_virtual,
            "pd": self.to_pd(),
            "crossings": [
                {
                    "id": x.index,
                    "label": x.label,
                    "slots": list(x.slots),
                    "sign": x.sign.value,
                    "under_in": x.under_in,
                    "under_out": x.under_out,
                    "over_in": x.over_in,
                    "over_out": x.over_out,
                }
                for x in self.crossings
            ],
            "segments": [
                {
                    "id": s.label,
                    "from": s.tail,
                    "departs": s.tail_role.value,
                    "to": s.head,
                    "arrives": s.head_role.value,
                    "arc": s.arc,
                }
                for s in self.segments
            ],
            "arcs": [{"id": arc.index, "segments": list(arc.segments)} for arc in self.arcs],
        }


def crossing_sign(d: Diagram, x: int) -> Sign:
    return d.crossing(x).sign


def compute_arcs(d: Diagram) -> List[Arc]:
    return list(d.arcs)


def writhe(d: Diagram) -> int:
    return d.writhe


def mirror(d: Diagram) -> Diagram:
    return d.mirror()


def build_diagram(
    entries: Sequence[PDTuple], labels: Optional[Sequence[int]] = None, source: str = "", name: Optional[str] = None
) -> Diagram:
    """
    Validate PD tuples and derive segments, arcs, signs and the face count.

    Args:
        entries (Sequence[PDTuple]): one (a, b, c, d) tuple per crossing.
        labels (Sequence[int], optional): crossing names, defaults to 1..c.
        source (str): provenance text kept on the diagram.
        name (str, optional): builtin name.

    Returns:
        Diagram: the validated diagram.

    Raises:
        DiagramError: empty input, bad label multiplicities, non-consecutive strands, several components.
    """
    if not entries:
        raise DiagramError("empty diagram: at least one crossing is required")
    c = len(entries)
    n = 2 * c
    labels = list(labels) if labels is not None else list(range(1, c + 1))

    _check_label_counts(entries, n)

    def nxt(label: int) -> int:
        return label % n + 1

    crossings = []
    for index, (entry, label) in enumerate(zip(entries, labels)):
        crossings.append(_orient_crossing(index, label, tuple(entry), nxt, n))

    tails: Dict[int, Tuple[int, Role]] = {}
    heads: Dict[int, Tuple[int, Role]] = {}
    for x in crossings:
        for role in (Role.OVER, Role.UNDER):
            out_label, in_label = x.departing(role), x.arriving(role)
            if out_label in tails:
                raise DiagramError(
                    f"segment {out_label} leaves crossings {tails[out_label][0] + 1} and {x.label}: "
                    "the code does not describe a single knot"
                )
            if in_label in heads:
                raise DiagramError(
                    f"segment {in_label} enters crossings {heads[in_label][0] + 1} and {x.label}: "
                    "the code does not describe a single knot"
                )
            tails[out_label] = (x.index, role)
            heads[in_label] = (x.index, role)

    _check_traversal(crossings, heads, n)

    arcs, arc_of = _trace_arcs(crossings, heads, nxt)
    segments = tuple(
        Segment(
            label=label,
            tail=tails[label][0],
            tail_role=tails[label][1],
            head=heads[label][0],
            head_role=heads[label][1],
            arc=arc_of[label],
        )
        for label in range(1, n + 1)
    )

    faces = _count_faces(entries)
    diagram = Diagram(
        crossings=tuple(crossings), segments=segments, arcs=tuple(arcs), source=source, faces=faces, name=name
    )
    if diagram.is_virtual:
        logger.warning(
            "diagram %s is not planar (genus %d); accepted as a virtual diagram", name or source, diagram.genus
        )
    return diagram


def _check_label_counts(entries: Sequence[PDTuple], n: int) -> None:
    counts = Counter(label for entry in entries for label in entry)
    for entry in entries:
        if len(entry) != 4:
            raise DiagramError(f"crossing {entry} must list exactly four labels")
    bad = sorted({label for label, count in counts.items() if count != 2 or not 1 <= label <= n})
    missing = sorted(label for label in range(1, n + 1) if label not in counts)
    if bad or missing:
        details = []
        if bad:
            details.append(
                "labels " + ", ".join(f"{label} (x{counts[label]})" for label in bad) + " are invalid"
            )
        if missing:
            details.append("labels " + ", ".join(map(str, missing)) + " are missing")
        raise DiagramError("; ".join(details) + f"; every label 1..{n} must appear exactly twice")


def _orient_crossing(index: int, label: int, entry: PDTuple, nxt, n: int) -> Crossing:
    a, b, c, d = entry
    if c != nxt(a):
        raise DiagramError(f"crossing {label}: under strand {a} -> {c} does not follow the orientation")
    if n == 2:
        # single crossing: the segment arriving under leaves over
        if {b, d} != {a, c}:
            raise DiagramError(f"crossing {label}: over slots {b},{d} do not match the under slots")
        over_out = a
        over_in = c
    elif d == nxt(b):
        over_in, over_out = b, d
    elif b == nxt(d):
        over_in, over_out = d, b
    else:
        raise DiagramError(f"crossing {label}: over strand {b},{d} is not a pair of consecutive segments")
    sign = Sign.POSITIVE if over_out == b else Sign.NEGATIVE
    return Crossing(
        index=index,
        label=label,
        slots=(a, b, c, d),
        sign=sign,
        under_in=a,
        under_out=c,
        over_in=over_in,
        over_out=over_out,
    )


def _check_traversal(crossings: List[Crossing], heads: Dict[int, Tuple[int, Role]], n: int) -> None:
    """Follow every segment to the departure of the same strand; the walk must visit all labels once."""
    seen = []
    label = 1
    while True:
        seen.append(label)
        crossing, role = heads[label]
        label = crossings[crossing].departing(role)
        if label == 1:
            break
        if len(seen) > n:
            break
    if len(seen) != n or len(set(seen)) != n:
        raise DiagramError(f"traversal visits {len(set(seen))} of {n} segments: links are not supported")


def _trace_arcs(crossings: List[Crossing], heads: Dict[int, Tuple[int, Role]], nxt) -> tuple:
    """Arcs start at every under exit and continue through over passes."""
    arcs = []
    for start in sorted(x.under_out for x in crossings):
        labels = [start]
        while heads[labels[-1]][1] is Role.OVER:
            labels.append(nxt(labels[-1]))
        arcs.append(labels)
    arc_of = {}
    result = []
    for index, labels in enumerate(arcs):
        result.append(Arc(index=index, segments=tuple(labels)))
        for label in labels:
            arc_of[label] = index
    return result, arc_of


def _count_faces(entries: Sequence[PDTuple]) -> int:
    """Count orbits of (rotate by one slot) after (jump to the other end of the segment)."""
    ends: Dict[int, List[Tuple[int, int]]] = {}
    for x, entry in enumerate(entries):
        for slot, label in enumerate(entry):
            ends.setdefault(label, []).append((x, slot))
    partner = {}
    for first, second in ends.values():
        partner[first] = second
        partner[second] = first

    unvisited = set(partner)
    faces = 0
    while unvisited:
        start = unvisited.pop()
        faces += 1
        dart = start
        while True:
            x, slot = partner[dart]
            dart = (x, (slot + 1) % 4)
            if dart == start:
                break
            unvisited.discard(dart)
    return faces
