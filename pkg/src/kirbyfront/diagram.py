"""Front diagrams as Morse event words.

A diagram is a left-to-right word of events acting on a stack of horizontal
strands.  Strand slots are numbered from 1 at the bottom.  The three event
kinds are

* ``L`` (left cusp at slot p): births a pair of strands occupying slots
  p and p+1, pushing every strand at slot >= p up by two;
* ``R`` (right cusp at slot p): caps the adjacent strands at slots p, p+1,
  which join and leave the diagram;
* ``X`` (crossing at slot p): transposes the strands at slots p and p+1.

A word together with ``left_count`` (strands entering at the left wall)
determines the planar front completely.  Front conventions: at a crossing
the strand moving downward (the one of lesser slope) is in front; cusps are
the only other singularities.  Spun diagrams store the whole symmetric
planar profile plus a spin parameter; spin symmetry is the mirror-palindrome
condition checked by :func:`check_spin_symmetry`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

__all__ = [
    "COEFF_NONE",
    "COEFF_PLUS",
    "COEFF_MINUS",
    "Event",
    "ComponentAttr",
    "FrontDiagram",
    "TracedComponent",
    "Trace",
    "DiagramError",
    "ParseError",
    "ValidationError",
    "strand_counts",
    "right_count",
    "is_closed",
    "trace_components",
    "mirror",
    "check_spin_symmetry",
    "validate_diagram",
    "parse_front",
    "serialize_front",
    "default_attrs",
]

COEFF_NONE = 0
COEFF_PLUS = 1
COEFF_MINUS = -1

_COEFF_TEXT = {COEFF_PLUS: "+1", COEFF_MINUS: "-1"}


class DiagramError(Exception):
    """Base class for all diagram-level errors."""


class ParseError(DiagramError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(DiagramError):
    pass


@dataclass(frozen=True)
class Event:
    """One front singularity: kind is 'L', 'R' or 'X'; pos is 1-based."""

    kind: str
    pos: int

    def __post_init__(self):
        if self.kind not in ("L", "R", "X"):
            raise ValidationError(f"unknown event kind {self.kind!r}")
        if self.pos < 1:
            raise ValidationError(f"event position must be >= 1, got {self.pos}")

    def __str__(self):
        return f"{self.kind}{self.pos}"


@dataclass(frozen=True)
class ComponentAttr:
    """Decorations attached to one traced component.

    ``coefficient`` is the contact surgery coefficient (+1, -1 or 0 for
    none).  ``node_plus``/``node_minus`` are the circular node decorations;
    a component carrying +1 surgery together with both nodes presents a
    top-index handle, while an undecorated +1 unknot presents a subcritical
    handle.  ``dashed_links`` lists component ids whose handle cocores the
    preferred disk fillings intersect.  ``orientation`` (+1 forward, -1
    backward) fixes the traversal used for signed counts.
    """

    label: str = ""
    coefficient: int = COEFF_NONE
    node_plus: bool = False
    node_minus: bool = False
    dashed_links: tuple[int, ...] = ()
    orientation: int = 1

    def __post_init__(self):
        if self.coefficient not in (COEFF_NONE, COEFF_PLUS, COEFF_MINUS):
            raise ValidationError(f"bad coefficient {self.coefficient!r}")
        if self.orientation not in (1, -1):
            raise ValidationError(f"bad orientation {self.orientation!r}")
        object.__setattr__(self, "dashed_links", tuple(sorted(set(self.dashed_links))))


@dataclass(frozen=True)
class FrontDiagram:
    """A (possibly relative) front diagram.

    ``left_count`` strands enter at the left wall; a closed diagram has
    ``left_count == 0`` and derived right count 0.  ``attrs[i]`` decorates
    the component with canonical id ``i + 1``.
    """

    name: str = "d"
    spin: int = 0
    left_count: int = 0
    events: tuple[Event, ...] = ()
    attrs: tuple[ComponentAttr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "attrs", tuple(self.attrs))
        if self.spin < 0:
            raise ValidationError("spin must be >= 0")
        if self.left_count < 0:
            raise ValidationError("left_count must be >= 0")

    def attr(self, cid):
        return self.attrs[cid - 1]

    def word(self):
        return " ".join(str(e) for e in self.events)


def strand_counts(events, left_count):
    """Strand count in every gap; gap i sits just after event i.

    Raises :class:`ValidationError` naming the first offending event if the
    word does not replay.
    """
    counts = [left_count]
    cur = left_count
    for i, ev in enumerate(events):
        if ev.kind == "L":
            if ev.pos > cur + 1:
                raise ValidationError(
                    f"event {i + 1} ({ev}): left cusp at {ev.pos} with {cur} strands"
                )
            cur += 2
        else:
            if ev.pos + 1 > cur:
                what = "crossing" if ev.kind == "X" else "right cusp"
                raise ValidationError(
                    f"event {i + 1} ({ev}): {what} at position {ev.pos} "
                    f"with {cur} strands"
                )
            if ev.kind == "R":
                cur -= 2
        counts.append(cur)
    return counts


def right_count(d):
    return strand_counts(d.events, d.left_count)[-1]


def is_closed(d):
    return d.left_count == 0 and right_count(d) == 0


# ---------------------------------------------------------------------------
# Component tracing
# ---------------------------------------------------------------------------

# A strand segment is addressed (gap, slot): it spans gap `gap` (the region
# after event `gap`; gap 0 is the left wall region) at vertical slot `slot`.


@dataclass
class TracedComponent:
    cid: int
    closed: bool
    # Traversal order: list of (gap, slot, direction); direction +1 means the
    # canonical traversal crosses this segment rightward.
    path: list = field(default_factory=list)
    segments: set = field(default_factory=set)


@dataclass
class Trace:
    seg_comp: dict  # (gap, slot) -> cid
    seg_dir: dict  # (gap, slot) -> +1 / -1 traversal direction
    components: list  # TracedComponent, index cid-1
    counts: list  # strand count per gap

    def component_of(self, gap, slot):
        return self.seg_comp[(gap, slot)]


def _slot_maps(events, counts):
    """For each event i return (fwd, bwd) slot maps across it.

    fwd maps a slot in gap i-1 to its slot in gap i (None if capped);
    bwd is the inverse (None if born at the event).
    """
    maps = []
    for i, ev in enumerate(events):
        before = counts[i]
        fwd = {}
        if ev.kind == "L":
            for s in range(1, before + 1):
                fwd[s] = s if s < ev.pos else s + 2
        elif ev.kind == "R":
            for s in range(1, before + 1):
                if s in (ev.pos, ev.pos + 1):
                    fwd[s] = None
                else:
                    fwd[s] = s if s < ev.pos else s - 2
        else:
            for s in range(1, before + 1):
                fwd[s] = s
            fwd[ev.pos] = ev.pos + 1
            fwd[ev.pos + 1] = ev.pos
        bwd = {v: k for k, v in fwd.items() if v is not None}
        maps.append((fwd, bwd))
    return maps


def trace_components(d):
    """Trace strand segments into components.

    Deterministic: components are numbered 1..N by their first-touched
    segment, ordered by (gap, slot); each closed component is traversed
    starting at that segment heading rightward.
    """
    counts = strand_counts(d.events, d.left_count)
    nev = len(d.events)
    maps = _slot_maps(d.events, counts)

    all_segs = [(g, s) for g in range(nev + 1) for s in range(1, counts[g] + 1)]
    seg_comp = {}
    seg_dir = {}
    components = []

    def step(gap, slot, direction):
        """Advance one segment in the given direction.

        Returns (gap, slot, direction) of the next segment, or None at a
        wall.  Turning around at a cusp flips the direction.
        """
        if direction > 0:
            if gap == nev:
                return None
            ev = d.events[gap]
            fwd, _ = maps[gap]
            nxt = fwd[slot]
            if nxt is None:
                partner = ev.pos + 1 if slot == ev.pos else ev.pos
                return (gap, partner, -1)
            return (gap + 1, nxt, 1)
        else:
            if gap == 0:
                return None
            ev = d.events[gap - 1]
            _, bwd = maps[gap - 1]
            prev = bwd.get(slot)
            if prev is None:
                partner = ev.pos + 1 if slot == ev.pos else ev.pos
                return (gap, partner, 1)
            return (gap - 1, prev, -1)

    def walk(gap, slot, direction, comp):
        while True:
            key = (gap, slot)
            if key in seg_comp:
                return
            seg_comp[key] = comp.cid
            seg_dir[key] = direction
            comp.segments.add(key)
            comp.path.append((gap, slot, direction))
            nxt = step(gap, slot, direction)
            if nxt is None:
                return
            gap, slot, direction = nxt

    for seg in all_segs:
        if seg in seg_comp:
            continue
        cid = len(components) + 1
        comp = TracedComponent(cid=cid, closed=False)
        components.append(comp)
        # Walk leftward first (without recording) to find an endpoint, so
        # open components are traversed wall to wall.
        g, s, dr = seg[0], seg[1], 1
        seen = set()
        while True:
            back = step(g, s, -dr)
            if back is None:
                break
            bg, bs, bdr = back
            if (bg, bs) == seg or (bg, bs) in seen:
                # closed component: start at the canonical segment rightward
                g, s, dr = seg[0], seg[1], 1
                comp.closed = True
                break
            seen.add((bg, bs))
            g, s, dr = bg, bs, -bdr
        walk(g, s, dr, comp)

    trace = Trace(seg_comp=seg_comp, seg_dir=seg_dir, components=components, counts=counts)
    return trace


def mirror(d):
    """The mirror diagram: word reversed, cusps swapped, positions kept."""
    rev = tuple(
        Event("L" if e.kind == "R" else "R" if e.kind == "L" else "X", e.pos)
        for e in reversed(d.events)
    )
    rc = right_count(d)
    nev = len(d.events)
    mirrored = FrontDiagram(
        name=d.name, spin=d.spin, left_count=rc, events=rev, attrs=()
    )
    if not d.attrs:
        return mirrored
    # Transport attributes through the segment correspondence (g, s) -> (nev - g, s).
    old = trace_components(d)
    new = trace_components(mirrored)
    attrs = [None] * len(new.components)
    for (g, s), cid in old.seg_comp.items():
        ncid = new.seg_comp[(nev - g, s)]
        attrs[ncid - 1] = d.attrs[cid - 1]
    remap = {}
    for (g, s), cid in old.seg_comp.items():
        remap[cid] = new.seg_comp[(nev - g, s)]
    fixed = tuple(
        replace(a, dashed_links=tuple(remap[t] for t in a.dashed_links))
        for a in attrs
    )
    return replace(mirrored, attrs=fixed)


def check_spin_symmetry(d):
    """True iff the event word equals its mirror and the wall counts agree.

    For spin > 0 this is a diagram invariant every move must preserve.
    """
    if d.left_count != right_count(d):
        return False
    n = len(d.events)
    for i, e in enumerate(d.events):
        m = d.events[n - 1 - i]
        want = "L" if m.kind == "R" else "R" if m.kind == "L" else "X"
        if e.kind != want or e.pos != m.pos:
            return False
    return True


def validate_diagram(d):
    """All invariant violations as strings; empty list iff valid."""
    violations = []
    try:
        strand_counts(d.events, d.left_count)
    except ValidationError as exc:
        return [str(exc)]
    try:
        tr = trace_components(d)
    except ValidationError as exc:
        return [str(exc)]
    ncomp = len(tr.components)
    if d.attrs and len(d.attrs) != ncomp:
        violations.append(
            f"{len(d.attrs)} component attributes for {ncomp} traced components"
        )
    for i, attr in enumerate(d.attrs):
        for target in attr.dashed_links:
            if target < 1 or target > ncomp:
                violations.append(
                    f"component {i + 1}: dashed link to unknown component {target}"
                )
            elif d.attrs[target - 1].coefficient != COEFF_MINUS:
                violations.append(
                    f"component {i + 1}: dashed link target {target} does not "
                    "carry -1 surgery (convention (3))"
                )
    if d.spin > 0 and not check_spin_symmetry(d):
        violations.append("spin > 0 but the event word is not mirror-palindromic")
    return violations


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_EVENT_LETTERS = {"L", "X", "R"}


def parse_front(text, name=None):
    """Parse the line-oriented ``.front`` format.

    Grammar::

        diagram <name>
        spin <k>
        left <m>
        events
          (L|X|R) <i>      # one per line, left to right; inline words allowed
        end
        component <label> [coeff (+1|-1)] [node+] [node-]
                          [dashed <label> ...] [orient (fwd|bwd)]

    Component lines bind positionally: the i-th line decorates the i-th
    component in canonical trace order.
    """
    dname = name or "d"
    spin = 0
    left = 0
    events = []
    comp_lines = []
    in_events = False
    seen_events = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if in_events:
            if head == "end":
                in_events = False
                continue
            for tok in tokens:
                kind = tok[0].upper()
                if kind not in _EVENT_LETTERS or not tok[1:].isdigit():
                    raise ParseError(f"bad event token {tok!r}", lineno)
                events.append(Event(kind, int(tok[1:])))
            continue
        if head == "diagram":
            if len(tokens) != 2:
                raise ParseError("expected: diagram <name>", lineno)
            dname = tokens[1]
        elif head == "spin":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("expected: spin <k>", lineno)
            spin = int(tokens[1])
        elif head == "left":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("expected: left <m>", lineno)
            left = int(tokens[1])
        elif head == "events":
            in_events = True
            seen_events = True
        elif head == "component":
            if len(tokens) < 2:
                raise ParseError("component line needs a label", lineno)
            comp_lines.append((lineno, tokens[1], tokens[2:]))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if in_events:
        raise ParseError("events block not closed with 'end'")
    if not seen_events:
        raise ParseError("missing events block")

    base = FrontDiagram(name=dname, spin=spin, left_count=left, events=tuple(events))
    try:
        tr = trace_components(base)
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
    ncomp = len(tr.components)
    if len(comp_lines) > ncomp:
        raise ParseError(
            f"{len(comp_lines)} component lines but only {ncomp} traced components"
        )

    labels = {}
    for idx, (lineno, label, _rest) in enumerate(comp_lines):
        if label in labels:
            raise ParseError(f"duplicate component label {label!r}", lineno)
        labels[label] = idx + 1

    attrs = []
    for idx in range(ncomp):
        if idx < len(comp_lines):
            lineno, label, rest = comp_lines[idx]
        else:
            lineno, label, rest = None, f"c{idx + 1}", []
        coeff = COEFF_NONE
        node_plus = node_minus = False
        dashed = []
        orient = 1
        i = 0
        while i < len(rest):
            tok = rest[i]
            if tok == "coeff":
                if i + 1 >= len(rest) or rest[i + 1] not in ("+1", "-1"):
                    raise ParseError("coeff must be +1 or -1", lineno)
                coeff = COEFF_PLUS if rest[i + 1] == "+1" else COEFF_MINUS
                i += 2
            elif tok == "node+":
                node_plus = True
                i += 1
            elif tok == "node-":
                node_minus = True
                i += 1
            elif tok == "dashed":
                i += 1
                if i >= len(rest):
                    raise ParseError("dashed needs at least one label", lineno)
                while i < len(rest) and rest[i] not in ("coeff", "node+", "node-", "orient"):
                    target = rest[i]
                    if target not in labels:
                        raise ParseError(
                            f"unknown component label {target!r} in dashed list", lineno
                        )
                    dashed.append(labels[target])
                    i += 1
            elif tok == "orient":
                if i + 1 >= len(rest) or rest[i + 1] not in ("fwd", "bwd"):
                    raise ParseError("orient must be fwd or bwd", lineno)
                orient = 1 if rest[i + 1] == "fwd" else -1
                i += 2
            else:
                raise ParseError(f"unknown component attribute {tok!r}", lineno)
        attrs.append(
            ComponentAttr(
                label=label,
                coefficient=coeff,
                node_plus=node_plus,
                node_minus=node_minus,
                dashed_links=tuple(dashed),
                orientation=orient,
            )
        )

    d = replace(base, attrs=tuple(attrs))
    problems = validate_diagram(d)
    if problems:
        raise ParseError("; ".join(problems))
    return d


def serialize_front(d):
    """Canonical text: events one per line, components in trace order."""
    lines = [f"diagram {d.name}", f"spin {d.spin}", f"left {d.left_count}", "events"]
    for e in d.events:
        lines.append(f"  {e.kind}{e.pos}")
    lines.append("end")
    for i, attr in enumerate(d.attrs):
        parts = [f"component {attr.label or f'c{i + 1}'}"]
        if attr.coefficient != COEFF_NONE:
            parts.append(f"coeff {_COEFF_TEXT[attr.coefficient]}")
        if attr.node_plus:
            parts.append("node+")
        if attr.node_minus:
            parts.append("node-")
        if attr.dashed_links:
            labels = [d.attrs[t - 1].label or f"c{t}" for t in attr.dashed_links]
            parts.append("dashed " + " ".join(labels))
        if attr.orientation == -1:
            parts.append("orient bwd")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def default_attrs(d):
    """Fill in bare attributes for every traced component."""
    tr = trace_components(d)
    attrs = tuple(ComponentAttr(label=f"c{i + 1}") for i in range(len(tr.components)))
    return replace(d, attrs=attrs)
