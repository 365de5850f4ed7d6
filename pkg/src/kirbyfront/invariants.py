"""Classical invariants, handle census, linking and homology data.

Sign conventions.  With the front resolution (downward strand in front), a
crossing is positive exactly when the two strands are traversed in the same
x-direction.  The rotation number is (down cusps - up cusps) / 2 and the
Thurston-Bennequin number is writhe - (right cusps), both computed per
closed component of a spin-0 diagram.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    COEFF_MINUS,
    COEFF_PLUS,
    DiagramError,
    trace_components,
)

__all__ = [
    "ClassicalInvariants",
    "HandleCensus",
    "LinkingData",
    "InvariantError",
    "classical_invariants",
    "all_classical_invariants",
    "crossing_data",
    "linking_matrix",
    "handle_census",
    "homology_presentation",
]


class InvariantError(DiagramError):
    pass


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int
    writhe: int
    left_cusps: int
    right_cusps: int
    up_cusps: int
    down_cusps: int


@dataclass(frozen=True)
class HandleCensus:
    counts: dict  # handle index -> count, 0-handle included
    euler: int


@dataclass(frozen=True)
class LinkingData:
    minus_ids: tuple  # component ids carrying -1 surgery, in canonical order
    matrix: tuple  # tuple of tuples; diagonal tb - 1, off-diagonal linking
    over_ones: dict  # (minus id, plus-unknot id) -> geometric passes


def crossing_data(d, tr=None):
    """Per crossing event: (component of front strand, component of back
    strand, sign).  The front strand is the one moving downward."""
    tr = tr or trace_components(d)
    out = []
    for i, ev in enumerate(d.events):
        if ev.kind != "X":
            continue
        back_seg = (i, ev.pos)  # moves up across the event
        front_seg = (i, ev.pos + 1)  # moves down: in front
        cb = tr.seg_comp[back_seg]
        cf = tr.seg_comp[front_seg]
        eps_b = tr.seg_dir[back_seg] * _orient(d, cb)
        eps_f = tr.seg_dir[front_seg] * _orient(d, cf)
        out.append((i, cf, cb, eps_f * eps_b))
    return out


def _orient(d, cid):
    if d.attrs:
        return d.attrs[cid - 1].orientation
    return 1


def _cusp_direction(d, tr, i):
    """+1 for an up cusp, -1 for a down cusp, at event index i."""
    ev = d.events[i]
    if ev.kind == "L":
        lower = (i + 1, ev.pos)
        upper = (i + 1, ev.pos + 1)
    else:
        lower = (i, ev.pos)
        upper = (i, ev.pos + 1)
    cid = tr.seg_comp[lower]
    orient = _orient(d, cid)
    # Leaving a left cusp rightward along the lower strand means the
    # traversal came down through the cusp; at a right cusp arriving
    # rightward along the lower strand means it goes up.
    if ev.kind == "L":
        up = tr.seg_dir[upper] * orient > 0
    else:
        up = tr.seg_dir[lower] * orient > 0
    return 1 if up else -1


def classical_invariants(d, cid, tr=None):
    """tb, rot and the cusp/crossing counts of one closed component.

    Defined for spin-0 diagrams only; open components are rejected.
    """
    if d.spin != 0:
        raise InvariantError("classical invariants are defined for spin 0 only")
    tr = tr or trace_components(d)
    comp = tr.components[cid - 1]
    if not comp.closed:
        raise InvariantError(f"component {cid} is open")

    left = right = up = down = 0
    for i, ev in enumerate(d.events):
        if ev.kind == "X":
            continue
        gap = i + 1 if ev.kind == "L" else i
        if tr.seg_comp[(gap, ev.pos)] != cid:
            continue
        if ev.kind == "L":
            left += 1
        else:
            right += 1
        if _cusp_direction(d, tr, i) > 0:
            up += 1
        else:
            down += 1
    writhe = sum(
        sign for (_i, cf, cb, sign) in crossing_data(d, tr) if cf == cid and cb == cid
    )
    return ClassicalInvariants(
        tb=writhe - right,
        rot=(down - up) // 2,
        writhe=writhe,
        left_cusps=left,
        right_cusps=right,
        up_cusps=up,
        down_cusps=down,
    )


def all_classical_invariants(d):
    tr = trace_components(d)
    return {
        c.cid: classical_invariants(d, c.cid, tr)
        for c in tr.components
        if c.closed
    }


def _classify(d, cid):
    """Handle index class of a component: 'n' (critical), 'n+1', 'n-1'
    (subcritical), or None for an undecorated Legendrian."""
    a = d.attrs[cid - 1]
    if a.coefficient == COEFF_MINUS:
        return "n"
    if a.coefficient == COEFF_PLUS:
        if a.node_plus and a.node_minus:
            return "n+1"
        if a.node_plus or a.node_minus:
            raise InvariantError(
                f"component {cid}: +1 surgery with only one node decoration"
            )
        return "n-1"
    return None


def handle_census(d):
    """Handle counts by index (the implicit 0-handle included) and Euler
    characteristic of the presented domain; n = spin + 2."""
    if not d.attrs:
        d = _with_default_attrs(d)
    n = d.spin + 2
    counts = {0: 1}
    for cid in range(1, len(d.attrs) + 1):
        cls = _classify(d, cid)
        if cls is None:
            continue
        k = {"n": n, "n+1": n + 1, "n-1": n - 1}[cls]
        counts[k] = counts.get(k, 0) + 1
    euler = sum((-1) ** k * v for k, v in counts.items())
    return HandleCensus(counts=counts, euler=euler)


def _with_default_attrs(d):
    from .diagram import default_attrs

    return default_attrs(d)


def linking_matrix(d):
    """Surgery linking data of a spin-0 diagram.

    Diagonal entries are tb - 1 (the Weinstein 2-handle framing), the
    off-diagonal ones signed linking numbers between the -1 components, and
    ``over_ones`` counts geometric passes of each -1 component over each
    subcritical +1 unknot (crossings with it / 2).
    """
    if d.spin != 0:
        raise InvariantError("linking data is defined for spin 0 only")
    if not d.attrs:
        d = _with_default_attrs(d)
    tr = trace_components(d)
    minus = [
        c.cid for c in tr.components if d.attrs[c.cid - 1].coefficient == COEFF_MINUS
    ]
    plus_sub = [
        c.cid
        for c in tr.components
        if d.attrs[c.cid - 1].coefficient == COEFF_PLUS and _classify(d, c.cid) == "n-1"
    ]
    for cid in minus:
        if not tr.components[cid - 1].closed:
            raise InvariantError(f"-1 component {cid} is open")

    xs = crossing_data(d, tr)
    lk = {}
    geo = {}
    for (_i, cf, cb, sign) in xs:
        if cf == cb:
            continue
        key = (min(cf, cb), max(cf, cb))
        lk[key] = lk.get(key, 0) + sign
        geo[key] = geo.get(key, 0) + 1

    size = len(minus)
    matrix = [[0] * size for _ in range(size)]
    for a in range(size):
        inv = classical_invariants(d, minus[a], tr)
        matrix[a][a] = inv.tb - 1
        for b in range(a + 1, size):
            key = (min(minus[a], minus[b]), max(minus[a], minus[b]))
            val = lk.get(key, 0) // 2
            matrix[a][b] = matrix[b][a] = val
    over = {}
    for mc in minus:
        for pc in plus_sub:
            key = (min(mc, pc), max(mc, pc))
            over[(mc, pc)] = geo.get(key, 0) // 2
    return LinkingData(
        minus_ids=tuple(minus),
        matrix=tuple(tuple(row) for row in matrix),
        over_ones=over,
    )


def homology_presentation(d):
    """Invariant factors of the first homology presented by the diagram.

    Generators are the meridians of the -1 components together with the
    subcritical +1 unknots (0-framed dotted circles); relations are the
    rows of the extended linking matrix.  An empty list means trivial
    torsion and full rank; degenerate presentations report their free rank
    as trailing zeros.
    """
    if d.spin != 0:
        raise InvariantError("homology data is defined for spin 0 only")
    if not d.attrs:
        d = _with_default_attrs(d)
    tr = trace_components(d)
    minus = [
        c.cid for c in tr.components if d.attrs[c.cid - 1].coefficient == COEFF_MINUS
    ]
    plus_sub = [
        c.cid
        for c in tr.components
        if d.attrs[c.cid - 1].coefficient == COEFF_PLUS and _classify(d, c.cid) == "n-1"
    ]
    order = plus_sub + minus
    index = {cid: k for k, cid in enumerate(order)}
    size = len(order)
    if size == 0:
        return []

    xs = crossing_data(d, tr)
    lk = {}
    for (_i, cf, cb, sign) in xs:
        if cf == cb:
            continue
        key = (min(cf, cb), max(cf, cb))
        lk[key] = lk.get(key, 0) + sign

    m = [[0] * size for _ in range(size)]
    for cid in minus:
        inv = classical_invariants(d, cid, tr)
        m[index[cid]][index[cid]] = inv.tb - 1
    for a in range(size):
        for b in range(a + 1, size):
            ca, cb_ = order[a], order[b]
            if ca in plus_sub and cb_ in plus_sub:
                continue
            key = (min(ca, cb_), max(ca, cb_))
            val = lk.get(key, 0) // 2
            m[a][b] = m[b][a] = val

    from .smith import smith_normal_form

    diag = smith_normal_form(m)
    factors = [x for x in diag if x > 1]
    factors += [0] * sum(1 for x in diag if x == 0)
    return factors
