import random

import pytest

from kirbyfront.diagram import (
    COEFF_MINUS,
    ComponentAttr,
    Event,
    FrontDiagram,
    default_attrs,
    strand_counts,
    trace_components,
)


def random_closed_word(rng, max_events=14, max_strands=6):
    """A random valid closed event word built by replay."""
    events = []
    cur = 0
    for _ in range(rng.randrange(2, max_events)):
        choices = []
        if cur + 2 <= max_strands:
            choices.append("L")
        if cur >= 2:
            choices += ["X", "R"]
        kind = rng.choice(choices)
        if kind == "L":
            pos = rng.randrange(1, cur + 2)
            cur += 2
        elif kind == "X":
            pos = rng.randrange(1, cur)
        else:
            pos = rng.randrange(1, cur)
            cur -= 2
        events.append(Event(kind, pos))
    while cur > 0:
        pos = rng.randrange(1, cur)
        events.append(Event("R", pos))
        cur -= 2
    return tuple(events)


def random_diagram(rng, spin=0, max_events=14, minus_fraction=0.5):
    """A random valid diagram; for spin > 0 the word is a palindrome."""
    events = random_closed_word(rng, max_events=max_events)
    if spin > 0:
        from kirbyfront.wordops import mirror_events

        events = events + mirror_events(events)
    d = default_attrs(FrontDiagram(name="rand", spin=spin, events=events))
    attrs = []
    for a in d.attrs:
        coeff = COEFF_MINUS if rng.random() < minus_fraction else 0
        attrs.append(ComponentAttr(label=a.label, coefficient=coeff))
    return FrontDiagram(name="rand", spin=spin, events=events, attrs=tuple(attrs))


def strand_sites(d):
    """All (gap, slot) pairs with a strand."""
    tr = trace_components(d)
    return [(g, s) for g in range(len(d.events) + 1) for s in range(1, tr.counts[g] + 1)]


@pytest.fixture
def rng():
    return random.Random(1729)
