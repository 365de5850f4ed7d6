"""Low-level rewriting machinery on event words.

Every rewrite here preserves the boundary data of the region it touches:
templates are designed so that the strand slots entering and leaving the
rewritten window are unchanged.  That makes splicing safe without global
renumbering and lets component attributes ride along via the segment
correspondence outside the window.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .diagram import (
    ComponentAttr,
    DiagramError,
    Event,
    FrontDiagram,
    strand_counts,
    trace_components,
)

__all__ = [
    "MoveError",
    "Rewrite",
    "splice",
    "erase_components",
    "erase_segments",
    "double_component",
    "mirror_events",
    "exchange_canonical",
    "same_diagram",
]


class MoveError(DiagramError):
    """A move precondition or template match failed."""


@dataclass
class Rewrite:
    """Result of a low-level rewrite.

    ``old_to_new`` maps surviving old component ids to new ids;
    ``fresh`` lists new component ids with no preimage (born inside).
    """

    diagram: FrontDiagram
    old_to_new: dict
    fresh: list


def _attrs_from_map(d, new_trace, seg_map, merge=None, fresh_attr=None):
    """Transport attributes along a partial segment map old->new.

    ``merge`` resolves several old attributes landing on one new component;
    without it a merge is an error.
    """
    old_trace = trace_components(d)
    ncomp = len(new_trace.components)
    sources = [set() for _ in range(ncomp)]
    for old_seg, new_seg in seg_map.items():
        oc = old_trace.seg_comp[old_seg]
        nc = new_trace.seg_comp[new_seg]
        sources[nc - 1].add(oc)

    old_to_new = {}
    for nc0, src in enumerate(sources):
        for oc in src:
            old_to_new[oc] = nc0 + 1

    def old_attr(oc):
        return d.attrs[oc - 1] if d.attrs else ComponentAttr()

    attrs = []
    fresh = []
    for nc0, src in enumerate(sources):
        if not src:
            fresh.append(nc0 + 1)
            attrs.append(fresh_attr or ComponentAttr(label=""))
        elif len(src) == 1:
            attrs.append(old_attr(next(iter(src))))
        else:
            if merge is None:
                raise MoveError(
                    f"rewrite merged components {sorted(src)} without a merge rule"
                )
            attrs.append(merge(sorted(src), [old_attr(i) for i in sorted(src)]))
    fixed = []
    for a in attrs:
        links = tuple(old_to_new[t] for t in a.dashed_links if t in old_to_new)
        fixed.append(replace(a, dashed_links=links))
    return tuple(fixed), old_to_new, fresh


def splice(d, i0, i1, new_events, merge=None, fresh_attr=None, name=None):
    """Replace events[i0:i1] by ``new_events``.

    The replacement must preserve the strand count and slot correspondence
    at both edges of the window; segments outside the window keep their
    (gap, slot) address up to the uniform gap shift.
    """
    if not (0 <= i0 <= i1 <= len(d.events)):
        raise MoveError(f"event range [{i0}, {i1}) outside the word")
    events = d.events[:i0] + tuple(new_events) + d.events[i1:]
    out = FrontDiagram(
        name=name or d.name,
        spin=d.spin,
        left_count=d.left_count,
        events=events,
        attrs=(),
    )
    try:
        new_trace = trace_components(out)
    except DiagramError as exc:
        raise MoveError(f"rewrite produces an invalid word: {exc}") from exc

    old_counts = strand_counts(d.events, d.left_count)
    new_counts = new_trace.counts
    shift = len(new_events) - (i1 - i0)
    if new_counts[i0] != old_counts[i0] or new_counts[i1 + shift] != old_counts[i1]:
        raise MoveError("rewrite does not preserve the window boundary")

    seg_map = {}
    for g in range(0, i0 + 1):
        for s in range(1, old_counts[g] + 1):
            seg_map[(g, s)] = (g, s)
    for g in range(i1, len(d.events) + 1):
        for s in range(1, old_counts[g] + 1):
            seg_map[(g, s)] = (g + shift, s)
    attrs, old_to_new, fresh = _attrs_from_map(
        d, new_trace, seg_map, merge=merge, fresh_attr=fresh_attr
    )
    return Rewrite(replace(out, attrs=attrs), old_to_new, fresh)


def erase_components(d, cids, name=None):
    """Erase every event and strand of the given closed components.

    Crossings between an erased and a kept component are rejected: the
    erased components must not be interleaved with the rest.
    """
    tr = trace_components(d)
    dead = set(cids)
    for (g, s), c in tr.seg_comp.items():
        if g == 0 and c in dead:
            raise MoveError(f"component {c} is open; only closed components erase")

    counts = tr.counts
    erased = set()  # current slot numbers holding erased strands
    new_events = []
    seg_map = {}
    for s in range(1, counts[0] + 1):
        seg_map[(0, s)] = (0, s)

    for i, ev in enumerate(d.events):
        gap = i + 1
        if ev.kind == "L":
            keep = tr.seg_comp[(gap, ev.pos)] not in dead
        elif ev.kind == "R":
            lower_dead = ev.pos in erased
            upper_dead = (ev.pos + 1) in erased
            if lower_dead != upper_dead:
                raise MoveError("erased strands interleave a kept cusp")
            keep = not lower_dead
        else:
            lower_dead = ev.pos in erased
            upper_dead = (ev.pos + 1) in erased
            if lower_dead != upper_dead:
                raise MoveError(
                    "erased component crosses a kept component (interleaved)"
                )
            keep = not lower_dead

        if keep:
            below = sum(1 for s in erased if s < ev.pos)
            new_events.append(Event(ev.kind, ev.pos - below))
            if ev.kind == "L":
                erased = {s + 2 if s >= ev.pos else s for s in erased}
            elif ev.kind == "R":
                erased = {s - 2 if s > ev.pos + 1 else s for s in erased}
        else:
            if ev.kind == "L":
                erased = {s + 2 if s >= ev.pos else s for s in erased}
                erased.update({ev.pos, ev.pos + 1})
            elif ev.kind == "R":
                erased.discard(ev.pos)
                erased.discard(ev.pos + 1)
                erased = {s - 2 if s > ev.pos + 1 else s for s in erased}
        live = sorted(set(range(1, counts[gap] + 1)) - erased)
        for new_s, old_s in enumerate(live, start=1):
            seg_map[(gap, old_s)] = (len(new_events), new_s)

    out = FrontDiagram(
        name=name or d.name,
        spin=d.spin,
        left_count=d.left_count,
        events=tuple(new_events),
        attrs=(),
    )
    new_trace = trace_components(out)
    seg_map = {
        old: new for old, new in seg_map.items() if tr.seg_comp[old] not in dead
    }
    attrs, old_to_new, fresh = _attrs_from_map(d, new_trace, seg_map)
    if fresh:
        raise MoveError("erasure created components out of nothing")
    return Rewrite(replace(out, attrs=attrs), old_to_new, fresh)


def erase_segments(d, segs, name=None):
    """Erase a set of strand segments (a circuit) plus its internal events.

    Crossings between a circuit strand and an outside strand are removed
    (the outside strand runs straight through); cusps must join two circuit
    strands or two outside strands.
    """
    tr = trace_components(d)
    counts = tr.counts
    dead_by_gap = {}
    for (g, s) in segs:
        dead_by_gap.setdefault(g, set()).add(s)

    new_events = []
    seg_map = {}
    live0 = sorted(set(range(1, counts[0] + 1)) - dead_by_gap.get(0, set()))
    for new_s, old_s in enumerate(live0, start=1):
        seg_map[(0, old_s)] = (0, new_s)

    for i, ev in enumerate(d.events):
        gap = i + 1
        before_dead = dead_by_gap.get(i, set())
        after_dead = dead_by_gap.get(gap, set())
        if ev.kind == "L":
            in_circ = (ev.pos in after_dead, (ev.pos + 1) in after_dead)
            if in_circ[0] != in_circ[1]:
                raise MoveError("cusp joins a circuit strand to an outside strand")
            keep = not in_circ[0]
        elif ev.kind == "R":
            in_circ = (ev.pos in before_dead, (ev.pos + 1) in before_dead)
            if in_circ[0] != in_circ[1]:
                raise MoveError("cusp joins a circuit strand to an outside strand")
            keep = not in_circ[0]
        else:
            keep = ev.pos not in before_dead and (ev.pos + 1) not in before_dead

        if keep:
            below = sum(1 for s in before_dead if s < ev.pos)
            new_events.append(Event(ev.kind, ev.pos - below))
        live = sorted(set(range(1, counts[gap] + 1)) - after_dead)
        for new_s, old_s in enumerate(live, start=1):
            seg_map[(gap, old_s)] = (len(new_events), new_s)

    out = FrontDiagram(
        name=name or d.name,
        spin=d.spin,
        left_count=d.left_count,
        events=tuple(new_events),
        attrs=(),
    )
    try:
        new_trace = trace_components(out)
    except DiagramError as exc:
        raise MoveError(f"circuit erasure left an invalid word: {exc}") from exc
    seg_map = {old: new for old, new in seg_map.items() if old not in segs}
    attrs, old_to_new, fresh = _attrs_from_map(d, new_trace, seg_map)
    if fresh:
        raise MoveError("circuit erasure created components out of nothing")
    return Rewrite(replace(out, attrs=attrs), old_to_new, fresh)


def double_component(d, cid, side, name=None):
    """Insert a vertical push-off running parallel to component ``cid``.

    ``side`` ("below" or "above") is where the companion runs relative to
    each strand of the component.  Each cusp of the component becomes two
    cusps plus one companion crossing, each self-crossing four crossings,
    each crossing with another strand two crossings; this is the two-copy
    satellite front, with lk(copy, original) = tb.

    Returns (Rewrite, companion_cid, gap_map) where gap_map sends old gap
    indices to new ones.
    """
    if side not in ("below", "above"):
        raise MoveError(f"bad push-off side {side!r}")
    tr = trace_components(d)
    counts = tr.counts
    if not tr.components[cid - 1].closed:
        raise MoveError("only closed components admit a push-off")

    def c_slots(gap):
        return [s for s in range(1, counts[gap] + 1) if tr.seg_comp.get((gap, s)) == cid]

    def slot_map(gap):
        slots = set(c_slots(gap))
        m = {}
        for s in range(1, counts[gap] + 1):
            below = sum(1 for t in slots if t < s)
            mine = 1 if (s in slots and side == "below") else 0
            m[s] = s + below + mine
        return m

    new_events = []
    gap_map = {0: 0}
    seg_map = {}
    m0 = slot_map(0)
    for s in range(1, counts[0] + 1):
        seg_map[(0, s)] = (0, m0[s])

    for i, ev in enumerate(d.events):
        gap = i + 1
        m = slot_map(i)
        slots_i = set(c_slots(i))
        p = ev.pos
        below_p = sum(1 for t in slots_i if t < p)
        if ev.kind == "L":
            if tr.seg_comp[(gap, p)] == cid:
                q = p + below_p
                new_events += [Event("L", q), Event("L", q), Event("X", q + 1)]
            else:
                new_events.append(Event("L", p + below_p))
        elif ev.kind == "R":
            if p in slots_i:
                q = m[p] - (1 if side == "below" else 0)
                new_events += [Event("X", q + 1), Event("R", q), Event("R", q)]
            else:
                new_events.append(Event("R", m[p]))
        else:
            lo_c, hi_c = p in slots_i, (p + 1) in slots_i
            if lo_c and hi_c:
                q = m[p] - (1 if side == "below" else 0)
                new_events += [
                    Event("X", q + 1),
                    Event("X", q),
                    Event("X", q + 2),
                    Event("X", q + 1),
                ]
            elif lo_c:
                q = m[p] - (1 if side == "below" else 0)
                new_events += [Event("X", q + 1), Event("X", q)]
            elif hi_c:
                q = m[p]
                new_events += [Event("X", q), Event("X", q + 1)]
            else:
                new_events.append(Event("X", m[p]))
        gap_map[gap] = len(new_events)
        mg = slot_map(gap)
        for s in range(1, counts[gap] + 1):
            seg_map[(gap, s)] = (gap_map[gap], mg[s])

    out = FrontDiagram(
        name=name or d.name,
        spin=d.spin,
        left_count=d.left_count,
        events=tuple(new_events),
        attrs=(),
    )
    try:
        new_trace = trace_components(out)
    except DiagramError as exc:
        raise MoveError(f"push-off produced an invalid word: {exc}") from exc
    attrs, old_to_new, fresh = _attrs_from_map(d, new_trace, seg_map)
    if len(fresh) != 1:
        raise MoveError("push-off did not create exactly one companion")
    rw = Rewrite(replace(out, attrs=attrs), old_to_new, fresh)
    return rw, fresh[0], gap_map


def mirror_events(events):
    """Mirror a block: reverse order, swap cusp kinds, keep positions."""
    return tuple(
        Event("L" if e.kind == "R" else "R" if e.kind == "L" else "X", e.pos)
        for e in reversed(events)
    )


# ---------------------------------------------------------------------------
# Exchange canonical form
# ---------------------------------------------------------------------------


def _delta(ev):
    return 2 if ev.kind == "L" else -2 if ev.kind == "R" else 0


def _try_swap(a, b):
    """If adjacent events a, b (a first) act on disjoint strands, return
    (b', a') with positions adjusted for the swapped order; else None.

    An insertion (L) only has a position, not a strand support, so it
    commutes whenever its landing point does not fall inside the pair the
    other event acts on.
    """
    alo, ahi = a.pos, a.pos + 1
    if b.kind == "L":
        q = b.pos
        if a.kind == "L":
            if q <= alo:
                return Event("L", q), Event("L", a.pos + 2)
            if q >= alo + 2:
                return Event("L", q - 2), Event("L", a.pos)
            return None
        if a.kind == "X":
            if q <= alo:
                return Event("L", q), Event("X", a.pos + 2)
            if q >= alo + 2:
                return Event("L", q), Event("X", a.pos)
            return None
        # a.kind == "R": an insertion at or below the cap lands under the
        # capped pair; above it, lift past the two vanishing slots
        if q <= alo:
            return Event("L", q), Event("R", a.pos + 2)
        return Event("L", q + 2), Event("R", a.pos)
    if a.kind == "L":
        if b.pos + 1 < alo:
            return Event(b.kind, b.pos), Event(a.kind, a.pos + _delta(b))
        if b.pos > ahi:
            return Event(b.kind, b.pos - 2), Event(a.kind, a.pos)
        return None
    if a.kind == "R":
        if b.pos + 1 < alo:
            return Event(b.kind, b.pos), Event(a.kind, a.pos + _delta(b))
        if b.pos >= alo:
            return Event(b.kind, b.pos + 2), Event(a.kind, a.pos)
        return None
    blo, bhi = b.pos, b.pos + 1
    if bhi < alo:
        return Event(b.kind, b.pos), Event(a.kind, a.pos + _delta(b))
    if blo > ahi:
        return Event(b.kind, b.pos), Event(a.kind, a.pos)
    return None


_RANK = {"L": 0, "X": 1, "R": 2}


def exchange_canonical(d):
    """Deterministic representative under planar exchange of distant events.

    Bubble passes move events acting on lower strands leftward whenever a
    neighbouring pair acts on disjoint strands; attributes are transported
    exactly via the event permutation.
    """
    events = list(d.events)
    perm = list(range(len(events)))  # perm[i] = original index of events[i]
    n = len(events)
    for _ in range(n * n + 1):
        changed = False
        for i in range(len(events) - 1):
            a, b = events[i], events[i + 1]
            swapped = _try_swap(a, b)
            if swapped is None:
                continue
            b2, a2 = swapped
            if (b2.pos, _RANK[b2.kind]) < (a.pos, _RANK[a.kind]):
                events[i], events[i + 1] = b2, a2
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                changed = True
        if not changed:
            break
    out = FrontDiagram(
        name=d.name,
        spin=d.spin,
        left_count=d.left_count,
        events=tuple(events),
        attrs=(),
    )
    if not d.attrs:
        return out
    old_tr = trace_components(d)
    new_tr = trace_components(out)
    old_of_new = {}
    for nc in new_tr.components:
        oc = None
        for (g, s, _dir) in nc.path:
            if g == 0:
                oc = old_tr.seg_comp[(0, s)]
                break
        if oc is None:
            # locate via a cusp event: the born pair of new event j corresponds
            # to the born pair of original event perm[j].
            for j, ev in enumerate(events):
                if ev.kind != "L":
                    continue
                if new_tr.seg_comp[(j + 1, ev.pos)] != nc.cid:
                    continue
                orig = d.events[perm[j]]
                oc = old_tr.seg_comp[(perm[j] + 1, orig.pos)]
                break
        if oc is None:
            raise MoveError("exchange canonicalization lost a component")
        old_of_new[nc.cid] = oc
    new_of_old = {v: k for k, v in old_of_new.items()}
    attrs = []
    for nc in new_tr.components:
        a = d.attrs[old_of_new[nc.cid] - 1]
        links = tuple(new_of_old[t] for t in a.dashed_links if t in new_of_old)
        attrs.append(replace(a, dashed_links=links))
    return replace(out, attrs=tuple(attrs))


def same_diagram(a, b, ignore_labels=True, ignore_names=True):
    """Structural equality of diagrams (word, walls, spin, decorations)."""
    if (a.spin, a.left_count, a.events) != (b.spin, b.left_count, b.events):
        return False
    if not ignore_names and a.name != b.name:
        return False
    if len(a.attrs) != len(b.attrs):
        return False
    for x, y in zip(a.attrs, b.attrs):
        if ignore_labels:
            x = replace(x, label="")
            y = replace(y, label="")
        if x != y:
            return False
    return True
