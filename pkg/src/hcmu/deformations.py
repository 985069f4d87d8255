"""Geometric deformations as exact combinatorial surgeries.

A level circle at height c is an orbit of the successor map: leaving a bigon
through its exit boundary, the circle continues around the black end when
the boundary's marked point lies below the circle (face level > c) and
around the white end otherwise.  Twisting cuts along one circle and re-glues
with a rational shift, redirecting every meridian ray that crosses it; split
replaces an integer-angle extremal point by a saddle plus that many smooth
extremal points.  All arithmetic in this module is exact.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .angulation import BLACK, WHITE, MixedAngulation
from .dataset import DataSet
from .errors import (
    AssertionFailure,
    BadCircleIndex,
    BadRatio,
    CriticalLevel,
    CuspVertex,
    CutOnBoundary,
    NotInteger,
)


@dataclass(frozen=True)
class LevelCircle:
    """One component of the level set at height ``level``."""

    level: Fraction
    members: tuple  # arc ids in traversal order, starting at the smallest
    circumference: Fraction


def _check_level(ds: DataSet, c) -> Fraction:
    c = Fraction(c)
    if not (0 < c < 1):
        raise CriticalLevel(f"level {c} outside (0, 1)")
    for f, s in enumerate(ds.face_levels):
        if s == c:
            raise CriticalLevel(f"level {c} equals the level of face {f}")
    return c


def _successor(ds: DataSet, c: Fraction, arc: int) -> int:
    """Next arc along the circle through ``arc`` at level ``c``."""
    ma = ds.angulation
    gate = ma.face_left(arc)
    if c < ds.face_levels[gate]:
        return ma.rotation_next((arc, "b"))[0]
    return ma.rotation_prev((arc, "w"))[0]


def circles_at_level(ds: DataSet, c) -> list:
    """All level circles at height c, sorted by smallest member arc."""
    c = _check_level(ds, c)
    ma = ds.angulation
    seen = set()
    circles = []
    for a0 in range(ma.num_arcs):
        if a0 in seen:
            continue
        orbit = []
        a = a0
        while True:
            orbit.append(a)
            if a in seen:
                raise AssertionFailure("level successor is not a permutation")
            seen.add(a)
            a = _successor(ds, c, a)
            if a == a0:
                break
        circ = sum((ds.weights[x] for x in orbit), Fraction(0))
        circles.append(LevelCircle(c, tuple(orbit), circ))
    return circles


def _cut_data(ds: DataSet, circle: LevelCircle):
    """Per cut: position (cumulative weight), gate face, black/white kind."""
    ma = ds.angulation
    pos = Fraction(0)
    cuts = []
    k = len(circle.members)
    for i, arc in enumerate(circle.members):
        pos += ds.weights[arc]
        gate = ma.face_left(arc)
        kind = "black" if circle.level < ds.face_levels[gate] else "white"
        nxt = circle.members[(i + 1) % k]
        if kind == "black":
            assert ma.arcs[arc][0] == ma.arcs[nxt][0]
        else:
            assert ma.arcs[arc][1] == ma.arcs[nxt][1]
        cuts.append({"pos": pos, "gate": gate, "kind": kind})
    return cuts


def twist_is_trivial(ds: DataSet, c, circle_index: int) -> bool:
    """True iff one side of the circle is a saddle-free disk, making every
    twist along it an isometry."""
    circles = circles_at_level(ds, c)
    if not (0 <= circle_index < len(circles)):
        raise BadCircleIndex(f"index {circle_index} of {len(circles)} circles")
    kinds = {cut["kind"] for cut in _cut_data(ds, circles[circle_index])}
    return len(kinds) == 1


@dataclass(frozen=True)
class TwistOutcome:
    dataset: Optional[DataSet]
    non_generic: tuple = ()

    @property
    def is_generic(self) -> bool:
        return self.dataset is not None


def twist(ds: DataSet, c, circle_index: int, psi) -> TwistOutcome:
    """Cut along one level circle and re-glue with shift ``psi``.

    Every boundary ray crossing the circle continues on the far side at the
    shifted coordinate and runs straight to the extremal point there.  If a
    redirected ray lands exactly on a cut point whose saddle lies on the far
    side, the result has a saddle-saddle meridian and is reported instead of
    returned.
    """
    circles = circles_at_level(ds, c)
    if not (0 <= circle_index < len(circles)):
        raise BadCircleIndex(f"index {circle_index} of {len(circles)} circles")
    circle = circles[circle_index]
    c = circle.level
    ma = ds.angulation
    members = list(circle.members)
    k = len(members)
    phi = circle.circumference
    psi = Fraction(psi) % phi
    cuts = _cut_data(ds, circle)
    cut_pos = [cut["pos"] for cut in cuts]  # increasing, last == phi

    def owner_after(pos):
        """Member whose open interval starts at or spans just after pos."""
        pos = pos % phi
        return members[bisect_right(cut_pos, pos) % k]

    # new cut lines: white cuts stay, black cuts shift by +psi on top
    lines = []
    by_tau = {}
    clashes = []
    for i, cut in enumerate(cuts):
        tau = cut["pos"] % phi if cut["kind"] == "white" else (cut["pos"] + psi) % phi
        line = {"tau": tau, "gate": cut["gate"], "kind": cut["kind"], "cut": i}
        if tau in by_tau:
            other = by_tau[tau]
            above = line if line["kind"] == "white" else other
            below = line if line["kind"] == "black" else other
            clashes.append((ma.face_keys[above["gate"]], ma.face_keys[below["gate"]]))
        else:
            by_tau[tau] = line
            lines.append(line)
    if clashes:
        return TwistOutcome(None, tuple(sorted(clashes)))

    lines.sort(key=lambda ln: ln["tau"])
    assert len(lines) == k
    taus = [ln["tau"] for ln in lines]
    widths = [
        (taus[(t + 1) % k] - taus[t]) % phi if k > 1 else phi for t in range(k)
    ]
    strips = []
    for t in range(k):
        top_owner = owner_after(taus[t])
        bottom_owner = owner_after(taus[t] - psi)
        strips.append(
            {
                "width": widths[t],
                "top": ma.arcs[top_owner][0],
                "bottom": ma.arcs[bottom_owner][1],
                "left_gate": lines[t]["gate"],
                "right_gate": lines[(t + 1) % k]["gate"],
            }
        )

    # -- assemble the new angulation ----------------------------------------
    member_set = set(members)
    arc_map = {}
    new_arcs = []
    new_weights = []
    for a in range(ma.num_arcs):
        if a not in member_set:
            arc_map[a] = len(new_arcs)
            new_arcs.append(ma.arcs[a])
            new_weights.append(ds.weights[a])
    strip_arc = []
    for st in strips:
        strip_arc.append(len(new_arcs))
        new_arcs.append((st["top"], st["bottom"]))
        new_weights.append(st["width"])

    line_of_cut = {ln["cut"]: t for t, ln in enumerate(lines)}

    def run_strips(start_cut, end_cut):
        """Strips tiling the interval from line(start_cut) to line(end_cut)."""
        t = line_of_cut[start_cut]
        end = line_of_cut[end_cut]
        out = [t]
        while (out[-1] + 1) % k != end:
            out.append((out[-1] + 1) % k)
        return out

    def runs(kind):
        """Maximal member runs whose internal cuts have the given kind."""
        boundary = [i for i in range(k) if cuts[i]["kind"] != kind]
        if not boundary:
            return [(None, None, members)]
        out = []
        for x, i in enumerate(boundary):
            j = boundary[(x + 1) % len(boundary)]
            run = []
            t = (i + 1) % k
            while True:
                run.append(members[t])
                if t == j:
                    break
                t = (t + 1) % k
            out.append((i, j, run))
        return out

    rot = [list(r) for r in ma.rotations]

    def splice(vertex, block, replacement):
        cycle = rot[vertex]
        i = cycle.index(block[0])
        rolled = cycle[i:] + cycle[:i]
        assert rolled[: len(block)] == block, "run is not rotation-consecutive"
        rot[vertex] = replacement + rolled[len(block):]

    # strips enter the rotations as ("s", t) markers so their ids cannot
    # collide with old arc ids before the final renumbering
    for i, j, run in runs("black"):
        x = ma.arcs[run[0]][0]
        assert all(ma.arcs[a][0] == x for a in run)
        ts = list(range(k)) if i is None else run_strips(i, j)
        splice(x, [(a, "b") for a in run], [(("s", t), "b") for t in ts])
    for i, j, run in runs("white"):
        w = ma.arcs[run[0]][1]
        assert all(ma.arcs[a][1] == w for a in run)
        ts = list(range(k)) if i is None else run_strips(i, j)
        splice(
            w,
            [(a, "w") for a in reversed(run)],
            [(("s", t), "w") for t in reversed(ts)],
        )

    final_rot = []
    for v in range(ma.num_vertices):
        row = []
        for a, e in rot[v]:
            if isinstance(a, tuple):
                row.append((strip_arc[a[1]], e))
            else:
                assert a not in member_set, "member dart survived the splice"
                row.append((arc_map[a], e))
        final_rot.append(row)

    new_ma = MixedAngulation(ma.colors, new_arcs, final_rot)

    # carry face levels over by matching saddles
    claims = {}

    def claim(dart, old_face):
        nf = new_ma.face_of_dart[dart]
        if claims.setdefault(nf, old_face) != old_face:
            raise AssertionFailure("inconsistent saddle claims after twist")

    for a in range(ma.num_arcs):
        if a in arc_map:
            claim((arc_map[a], "b"), ma.face_left(a))
            claim((arc_map[a], "w"), ma.face_right(a))
    for t, st in enumerate(strips):
        claim((strip_arc[t], "b"), st["right_gate"])
        claim((strip_arc[t], "w"), st["left_gate"])
    if sorted(claims) != list(range(new_ma.num_faces)) or sorted(
        set(claims.values())
    ) != list(range(ma.num_faces)):
        raise AssertionFailure("faces were not matched bijectively after twist")
    for nf, of in claims.items():
        if new_ma.face_degree(nf) != ma.face_degree(of):
            raise AssertionFailure("twist changed a saddle angle")
    levels = [None] * new_ma.num_faces
    for nf, of in claims.items():
        levels[nf] = ds.face_levels[of]
    out = DataSet(new_ma, ds.k0, ds.ratio, new_weights, levels)
    assert out.total_weight() == ds.total_weight()
    assert out.angulation.genus == ma.genus
    return TwistOutcome(out)


# -- split ---------------------------------------------------------------------


def split(ds: DataSet, vertex: int, offset, new_level) -> DataSet:
    """Replace an integer-angle extremal point by a saddle of the same angle.

    The cone at ``vertex`` is cut along equally spaced meridian segments
    reaching level ``new_level``; the sectors become smooth extremal points
    and the cut bottoms glue into a new saddle.  ``offset`` in [0, 1) places
    the first cut, in units of the cut spacing, measured from the smallest
    incident arc id.
    """
    ma = ds.angulation
    if not (0 <= vertex < ma.num_vertices):
        raise BadCircleIndex(f"no vertex {vertex}")
    color = ma.colors[vertex]
    if color == WHITE and ds.ratio == 0:
        raise CuspVertex("a cusp has angle zero and cannot be split")
    angle = ds.vertex_angle(vertex)
    if angle.denominator != 1 or angle < 2:
        raise NotInteger(f"vertex angle {angle} is not an integer > 1")
    alpha = int(angle)
    new_level = Fraction(new_level)
    if not (0 < new_level < 1):
        raise BadRatio(f"level {new_level} outside (0, 1)")
    offset = Fraction(offset)
    if not (0 <= offset < 1):
        raise CutOnBoundary(f"offset {offset} outside [0, 1)")
    spacing = Fraction(1) if color == BLACK else 1 / ds.ratio

    rot_x = list(ma.rotations[vertex])
    start = rot_x.index(min(rot_x))
    rot_x = rot_x[start:] + rot_x[:start]
    widths = [ds.weights[a] for a, _ in rot_x]
    bounds = [Fraction(0)]
    for w in widths:
        bounds.append(bounds[-1] + w)
    total = bounds[-1]
    assert total == alpha * spacing
    cuts = [(offset + j) * spacing for j in range(alpha)]
    if offset == 0 or any(p in set(bounds) for p in cuts):
        raise CutOnBoundary("a cut position hits a sector boundary")

    def sector(pos):
        return int((pos / spacing - offset).__floor__()) % alpha

    # -- new vertex numbering: drop x, append the alpha sector vertices
    vmap = {}
    colors = []
    for v in range(ma.num_vertices):
        if v != vertex:
            vmap[v] = len(colors)
            colors.append(ma.colors[v])
    q_base = len(colors)
    colors += [color] * alpha

    new_arcs = []
    new_weights = []
    arc_map = {}  # old arc id -> new id (arcs not at the split vertex)
    incident = {a for a, _ in rot_x}
    for a in range(ma.num_arcs):
        if a not in incident:
            arc_map[a] = len(new_arcs)
            b, w = ma.arcs[a]
            new_arcs.append((vmap[b], vmap[w]))
            new_weights.append(ds.weights[a])

    NEW_FACE = -1
    claims_by_dart = {}
    sub_lists = []  # per rotation entry: new arc ids in position order
    q_members = {j: [] for j in range(alpha)}
    for r, (a, _) in enumerate(rot_x):
        lo, hi = bounds[r], bounds[r + 1]
        inner = sorted(p for p in cuts if lo < p < hi)
        pts = [lo] + inner + [hi]
        subs = []
        for s in range(len(pts) - 1):
            a_s, b_s = pts[s], pts[s + 1]
            owner = sector((a_s + b_s) / 2)
            na = len(new_arcs)
            far = ma.arcs[a][1] if color == BLACK else ma.arcs[a][0]
            if color == BLACK:
                new_arcs.append((q_base + owner, vmap[far]))
            else:
                new_arcs.append((vmap[far], q_base + owner))
            new_weights.append(b_s - a_s)
            subs.append(na)
            q_members[owner].append(((a_s - cuts[0]) % total, na))
        sub_lists.append(subs)
        if not inner:
            claims_by_dart[(subs[0], "b")] = ma.face_left(a)
            claims_by_dart[(subs[0], "w")] = ma.face_right(a)
        else:
            for na in subs:
                claims_by_dart[(na, "b")] = NEW_FACE
                claims_by_dart[(na, "w")] = NEW_FACE
            if color == BLACK:
                claims_by_dart[(subs[0], "w")] = ma.face_right(a)
                claims_by_dart[(subs[-1], "b")] = ma.face_left(a)
            else:
                claims_by_dart[(subs[0], "b")] = ma.face_left(a)
                claims_by_dart[(subs[-1], "w")] = ma.face_right(a)

    end_here = "b" if color == BLACK else "w"
    end_far = "w" if color == BLACK else "b"
    rot = []
    for v in range(ma.num_vertices):
        if v == vertex:
            continue
        row = []
        for a, e in ma.rotations[v]:
            if a not in incident:
                row.append((arc_map[a], e))
            else:
                r = next(i for i, (aa, _) in enumerate(rot_x) if aa == a)
                # the far end of a split arc sees the sub-arcs reversed
                row.extend((na, e) for na in reversed(sub_lists[r]))
        rot.append(row)
    for j in range(alpha):
        row = [(na, end_here) for _, na in sorted(q_members[j])]
        rot.append(row)

    new_ma = MixedAngulation(colors, new_arcs, rot)
    claims = {}
    for a in range(ma.num_arcs):
        if a in arc_map:
            claims_by_dart[(arc_map[a], "b")] = ma.face_left(a)
            claims_by_dart[(arc_map[a], "w")] = ma.face_right(a)
    for dart, of in claims_by_dart.items():
        nf = new_ma.face_of_dart[dart]
        if claims.setdefault(nf, of) != of:
            raise AssertionFailure("inconsistent face claims after split")
    new_face = [nf for nf, of in claims.items() if of == NEW_FACE]
    if len(new_face) != 1 or new_ma.face_degree(new_face[0]) != 2 * alpha:
        raise AssertionFailure("split did not produce one new 2*alpha-gon")
    if sorted(claims) != list(range(new_ma.num_faces)):
        raise AssertionFailure("unclaimed face after split")
    old_claimed = sorted(of for of in claims.values() if of != NEW_FACE)
    if old_claimed != list(range(ma.num_faces)):
        raise AssertionFailure("an old saddle vanished during split")
    levels = [None] * new_ma.num_faces
    for nf, of in claims.items():
        levels[nf] = new_level if of == NEW_FACE else ds.face_levels[of]
    for nf, of in claims.items():
        if of != NEW_FACE and new_ma.face_degree(nf) != ma.face_degree(of):
            raise AssertionFailure("split changed an old saddle angle")
    out = DataSet(new_ma, ds.k0, ds.ratio, new_weights, levels)
    assert out.angulation.genus == ma.genus
    assert out.angulation.num_arcs == ma.num_arcs + alpha
    assert out.angulation.num_vertices == ma.num_vertices - 1 + alpha
    return out
