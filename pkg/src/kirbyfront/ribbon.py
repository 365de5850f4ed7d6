"""Disk-band surfaces and the adjacent foot transposition.

A surface is presented by disks with bands attached; each band has two
feet, each foot occupying one slot in the cyclic order around its disk's
boundary.  The clasp move of the three-dimensional theory acts on such a
presentation by transposing two cyclically-adjacent feet, which preserves
the Euler characteristic and orientability but generally trades genus for
boundary components.  Normalization searches transposition sequences for a
planar (g = 0) or connected-boundary (b = 1) presentation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagram import DiagramError

__all__ = [
    "Band",
    "DiskBandSurface",
    "SurfaceInvariants",
    "RibbonError",
    "parse_ribbon",
    "serialize_ribbon",
    "surface_invariants",
    "boundary_components",
    "is_orientable",
    "is_connected",
    "clasp_transpose",
    "normalize_surface",
    "canonical_key",
]


class RibbonError(DiagramError):
    pass


@dataclass(frozen=True)
class Band:
    name: str
    half_twists: int = 0


@dataclass(frozen=True)
class DiskBandSurface:
    """disks: tuple of disk names; order[d]: cyclic sequence of (band, end)
    feet on disk d's boundary, where end is 0 or 1."""

    disks: tuple
    bands: tuple  # of Band
    order: dict  # disk -> tuple of (band name, end)

    def __post_init__(self):
        object.__setattr__(self, "disks", tuple(self.disks))
        object.__setattr__(self, "bands", tuple(self.bands))
        object.__setattr__(self, "order", dict(self.order))
        feet = {}
        for d in self.disks:
            for foot in self.order.get(d, ()):
                if foot in feet:
                    raise RibbonError(f"foot {foot} attached twice")
                feet[foot] = d
        for b in self.bands:
            for end in (0, 1):
                if (b.name, end) not in feet:
                    raise RibbonError(f"band {b.name} end {end} has no slot")
        if len(feet) != 2 * len(self.bands):
            raise RibbonError("stray feet in cyclic orders")

    def band(self, name):
        for b in self.bands:
            if b.name == name:
                return b
        raise RibbonError(f"no band named {name}")

    def foot_disk(self, band, end):
        for d in self.disks:
            if (band, end) in self.order[d]:
                return d
        raise RibbonError(f"foot ({band}, {end}) not attached")


@dataclass(frozen=True)
class SurfaceInvariants:
    genus: int
    boundary_components: int
    euler: int
    orientable: bool


def euler_characteristic(s):
    return len(s.disks) - len(s.bands)


def is_connected(s):
    if not s.disks:
        return False
    adj = {d: set() for d in s.disks}
    for b in s.bands:
        d0 = s.foot_disk(b.name, 0)
        d1 = s.foot_disk(b.name, 1)
        adj[d0].add(d1)
        adj[d1].add(d0)
    seen = {s.disks[0]}
    queue = deque([s.disks[0]])
    while queue:
        d = queue.popleft()
        for e in adj[d]:
            if e not in seen:
                seen.add(e)
                queue.append(e)
    return len(seen) == len(s.disks)


def is_orientable(s):
    """Orientable iff every band cycle has even total twist.

    Orient each disk; an untwisted band is compatible, an odd-twisted band
    flips; union-find with parity decides.
    """
    parent = {d: d for d in s.disks}
    parity = {d: 0 for d in s.disks}

    def find(x):
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        p = 0
        for y in reversed(path):
            p ^= parity[y]
            parent[y] = x
            parity[y] = p
        return x

    def rel(x):
        find(x)
        return parity[x] if parent[x] != x else 0

    for b in s.bands:
        d0 = s.foot_disk(b.name, 0)
        d1 = s.foot_disk(b.name, 1)
        t = b.half_twists % 2
        r0, r1 = find(d0), find(d1)
        p0 = parity[d0] if d0 != r0 else 0
        p1 = parity[d1] if d1 != r1 else 0
        p0 = rel(d0)
        p1 = rel(d1)
        if r0 == r1:
            if (p0 ^ p1) != t:
                return False
        else:
            parent[r0] = r1
            parity[r0] = p0 ^ p1 ^ t
    return True


def boundary_components(s):
    """Count boundary circles via the corner graph.

    Every foot f has two corners, minus (just before f in the cyclic
    order) and plus (just after).  Boundary pieces are the disk arcs from
    the plus corner of one foot to the minus corner of the next, and the
    two band sides: an untwisted band glues plus to minus across it, an
    odd-twisted band glues plus to plus and minus to minus.  The corner
    graph is 2-regular, and its cycles are the boundary circles.
    """
    adj = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for d in s.disks:
        feet = s.order[d]
        n = len(feet)
        for k in range(n):
            f = feet[k]
            g = feet[(k + 1) % n]
            link(("+",) + f, ("-",) + g)
    for b in s.bands:
        f = (b.name, 0)
        g = (b.name, 1)
        if b.half_twists % 2 == 0:
            link(("+",) + f, ("-",) + g)
            link(("-",) + f, ("+",) + g)
        else:
            link(("+",) + f, ("+",) + g)
            link(("-",) + f, ("-",) + g)

    for v, nb in adj.items():
        if len(nb) != 2:
            raise RibbonError(f"corner {v} has degree {len(nb)}")

    seen = set()
    circles = 0
    for v0 in adj:
        if v0 in seen:
            continue
        circles += 1
        prev, cur = None, v0
        while cur not in seen:
            seen.add(cur)
            a, b = adj[cur]
            nxt = b if a == prev else a
            prev, cur = cur, nxt
    circles += sum(1 for d in s.disks if len(s.order[d]) == 0)
    return circles


def surface_invariants(s, require_connected=False):
    """Boundary count, Euler characteristic, orientability and genus.

    Genus is reported for connected orientable surfaces via
    chi = 2 - 2g - b; for nonorientable or disconnected input only the
    other fields are meaningful and genus is set to -1.
    """
    if require_connected and not is_connected(s):
        raise RibbonError("surface is not connected")
    chi = euler_characteristic(s)
    b = boundary_components(s)
    orient = is_orientable(s)
    genus = -1
    if orient and is_connected(s):
        g2 = 2 - chi - b
        if g2 % 2:
            raise RibbonError("inconsistent boundary trace")
        genus = g2 // 2
    return SurfaceInvariants(
        genus=genus, boundary_components=b, euler=chi, orientable=orient
    )


def clasp_transpose(s, disk, slot):
    """Swap the feet at cyclic positions slot and slot+1 on the disk.

    This is the three-dimensional clasp move on the page surface: the
    abstract surface changes only through the cyclic order, so chi and
    orientability are preserved while (g, b) may trade.
    """
    feet = list(s.order[disk])
    if len(feet) < 2:
        raise RibbonError(f"disk {disk} has fewer than two feet")
    n = len(feet)
    a = slot % n
    b = (slot + 1) % n
    feet[a], feet[b] = feet[b], feet[a]
    order = dict(s.order)
    order[disk] = tuple(feet)
    return DiskBandSurface(disks=s.disks, bands=s.bands, order=order)


def canonical_key(s):
    """Hash key invariant under disk/band relabeling and rotation of each
    cyclic order, for BFS visited-set pruning."""
    twists = {b.name: b.half_twists % 2 for b in s.bands}

    best = None
    # canonical labels: try each disk/rotation as the starting point
    def relabel(start_disk, start_rot):
        band_ids = {}
        disk_ids = {}
        out = []
        queue = deque([(start_disk, start_rot)])
        seen = set()
        while queue:
            d, rot = queue.popleft()
            if d in seen:
                continue
            seen.add(d)
            disk_ids.setdefault(d, len(disk_ids))
            feet = s.order[d]
            n = len(feet)
            row = []
            for k in range(n):
                band, end = feet[(rot + k) % n]
                if band not in band_ids:
                    band_ids[band] = len(band_ids)
                    od = s.foot_disk(band, 1 - end)
                    ok = s.order[od].index((band, 1 - end))
                    queue.append((od, ok))
                row.append((band_ids[band], twists[band]))
            out.append(tuple(row))
        for d in s.disks:
            if d not in seen:
                return None  # disconnected start; only used on connected
        return tuple(out)

    for d in s.disks:
        for rot in range(max(1, len(s.order[d]))):
            key = relabel(d, rot)
            if key is not None and (best is None or key < best):
                best = key
    if best is None:
        # disconnected: fall back to sorted naive key
        rows = []
        for d in sorted(s.disks):
            rows.append(tuple(s.order[d]))
        best = tuple(rows)
    return best


def normalize_surface(s, target, node_cap=200000):
    """Breadth-first search over adjacent transpositions to the target.

    target "planar" stops at genus 0; "connected" stops at one boundary
    circle and requires odd Euler characteristic (chi = 1 - 2g forces
    b = 1 on the handlebody side).  Returns the list of (disk, slot)
    transposition steps; replaying them reproduces the target invariants.
    """
    if target not in ("planar", "connected"):
        raise RibbonError(f"unknown normalization target {target!r}")
    inv = surface_invariants(s, require_connected=True)
    if not inv.orientable:
        raise RibbonError("normalization needs an orientable surface")
    if target == "connected" and euler_characteristic(s) % 2 == 0:
        raise RibbonError(
            "connected-boundary target needs odd Euler characteristic"
        )

    def done(inv):
        if target == "planar":
            return inv.genus == 0
        return inv.boundary_components == 1

    if done(inv):
        return []
    seen = {canonical_key(s)}
    queue = deque([(s, [])])
    expanded = 0
    while queue:
        cur, path = queue.popleft()
        expanded += 1
        if expanded > node_cap:
            raise RibbonError(f"search budget exceeded ({node_cap} nodes)")
        for disk in cur.disks:
            n = len(cur.order[disk])
            if n < 2:
                continue
            for slot in range(n):
                nxt = clasp_transpose(cur, disk, slot)
                key = canonical_key(nxt)
                if key in seen:
                    continue
                seen.add(key)
                steps = path + [(disk, slot)]
                if done(surface_invariants(nxt)):
                    return steps
                queue.append((nxt, steps))
    raise RibbonError("no transposition sequence reaches the target")


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def parse_ribbon(text):
    """Parse the ``.ribbon`` format::

        disk <id>
        band <id> <disk>.<slot> <disk>.<slot> [twists n]
        order <disk>: <slot list>

    Feet are named ``<band>.<end>``; when no explicit order lines appear,
    feet sit in the declaration order of the bands (slot positions in the
    band lines give the position hints).
    """
    disks = []
    bands = []
    feet_at = {}  # disk -> {pos: (band, end)}
    explicit = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "disk":
            if len(toks) != 2:
                raise RibbonError(f"line {lineno}: expected 'disk <id>'")
            disks.append(toks[1])
        elif toks[0] == "band":
            if len(toks) not in (4, 6):
                raise RibbonError(f"line {lineno}: band <id> <d.slot> <d.slot> [twists n]")
            name = toks[1]
            twists = 0
            if len(toks) == 6:
                if toks[4] != "twists":
                    raise RibbonError(f"line {lineno}: expected 'twists <n>'")
                twists = int(toks[5])
            bands.append(Band(name=name, half_twists=twists))
            for end, spec in enumerate(toks[2:4]):
                if "." not in spec:
                    raise RibbonError(f"line {lineno}: foot spec {spec!r}")
                dname, pos = spec.rsplit(".", 1)
                feet_at.setdefault(dname, {})[int(pos)] = (name, end)
        elif toks[0] == "order":
            rest = " ".join(toks[1:])
            if ":" not in rest:
                raise RibbonError(f"line {lineno}: order <disk>: <feet>")
            dname, slots = rest.split(":", 1)
            explicit[dname.strip()] = tuple(
                tuple(part.rsplit(".", 1)) for part in slots.split()
            )
        else:
            raise RibbonError(f"line {lineno}: unknown directive {toks[0]!r}")
    order = {}
    for d in disks:
        if d in explicit:
            order[d] = tuple((b, int(e)) for (b, e) in explicit[d])
        else:
            slots = feet_at.get(d, {})
            order[d] = tuple(slots[k] for k in sorted(slots))
    return DiskBandSurface(disks=tuple(disks), bands=tuple(bands), order=order)


def serialize_ribbon(s):
    lines = [f"disk {d}" for d in s.disks]
    pos = {}
    for d in s.disks:
        for k, foot in enumerate(s.order[d]):
            pos[foot] = (d, k)
    for b in s.bands:
        d0, k0 = pos[(b.name, 0)]
        d1, k1 = pos[(b.name, 1)]
        line = f"band {b.name} {d0}.{k0} {d1}.{k1}"
        if b.half_twists:
            line += f" twists {b.half_twists}"
        lines.append(line)
    for d in s.disks:
        if s.order[d]:
            feet = " ".join(f"{b}.{e}" for (b, e) in s.order[d])
            lines.append(f"order {d}: {feet}")
    return "\n".join(lines) + "\n"
