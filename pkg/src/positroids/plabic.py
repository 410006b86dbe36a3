"""Plabic graphs in the disk as combinatorial rotation systems.

A graph is stored as: boundary vertices 1..n (clockwise on the disk, each of
degree exactly 1), colored internal vertices, an edge list, and for every
vertex the counterclockwise cyclic order of its incident edges.  No geometry
is kept; trips, faces and face labels are all computed from the rotation data.

Conventions, fixed once and used consistently:

* trips turn maximally right at black vertices and maximally left at white
  ones; in rotation terms: arriving along edge e, leave along the successor
  of e (black) or the predecessor (white) in the counterclockwise order;
* the face to the left of a dart u->v continues at v along the predecessor
  of the arrived edge, so every face keeps its region on its left;
* the disk is closed up with boundary arcs i -> i+1; the outer face is the
  orbit of the arc dart 1 -> 2, and the face sitting on arc (i-1 -> i) is the
  boundary face that carries the i-th necklace set;
* a trip bouncing off a degree-1 vertex winds clockwise around it if the
  vertex is white and counterclockwise if black.

Face labels use the target convention: the label of a face collects the
targets of all trips that leave the face on their left.  Left/right sides of
a single trip are propagated to every face by crossing edges: the side flips
exactly when the trip traverses the crossed edge once.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from positroids.cluster import IceQuiver, QuiverVertex
from positroids.combinatorics import (
    DecoratedPermutation,
    GrassmannNecklace,
    KSet,
    ValidationError,
    alignments,
    necklace_from_permutation,
)

WHITE = "white"
BLACK = "black"


class ReducednessError(ValidationError):
    """The graph is structurally fine but its trips misbehave (not reduced)."""


@dataclass(frozen=True)
class PlabicGraph:
    """Disk graph with boundary 1..n and counterclockwise rotations.

    ``colors`` maps internal vertex ids (all > boundary) to "white"/"black".
    ``rotation`` maps every vertex to the cyclic tuple of incident edge ids.
    """

    boundary: int
    colors: tuple[tuple[int, str], ...]
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def of(
        cls,
        boundary: int,
        colors: Mapping[int, str],
        edges: list[tuple[int, int]] | tuple[tuple[int, int], ...],
        rotation: Mapping[int, list[int] | tuple[int, ...]],
    ) -> PlabicGraph:
        g = cls(
            boundary,
            tuple(sorted(colors.items())),
            tuple((u, v) for u, v in edges),
            tuple(sorted((v, tuple(r)) for v, r in rotation.items())),
        )
        g.validate()
        return g

    @property
    def color_map(self) -> dict[int, str]:
        return dict(self.colors)

    @property
    def rotation_map(self) -> dict[int, tuple[int, ...]]:
        return dict(self.rotation)

    def internal_ids(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.colors)

    def degree(self, v: int) -> int:
        return len(self.rotation_map[v])

    def validate(self) -> None:
        n = self.boundary
        if n < 1:
            raise ValidationError("boundary size must be at least 1")
        colors = self.color_map
        if any(v <= n for v in colors):
            raise ValidationError("internal vertex ids must exceed the boundary size")
        if any(c not in (WHITE, BLACK) for c in colors.values()):
            raise ValidationError("vertex colors must be 'white' or 'black'")
        rot = self.rotation_map
        vertices = set(range(1, n + 1)) | set(colors)
        if set(rot) != vertices:
            raise ValidationError("rotation must cover exactly boundary plus internal vertices")
        incident: dict[int, list[int]] = {v: [] for v in vertices}
        for eid, (u, v) in enumerate(self.edges):
            if u == v:
                raise ValidationError(f"loop edge at vertex {u}")
            if u not in vertices or v not in vertices:
                raise ValidationError(f"edge {eid} touches an unknown vertex")
            incident[u].append(eid)
            incident[v].append(eid)
        for v in vertices:
            if sorted(rot[v]) != sorted(incident[v]):
                raise ValidationError(f"rotation at vertex {v} does not list its incident edges")
        for i in range(1, n + 1):
            if len(rot[i]) != 1:
                raise ValidationError(f"boundary vertex {i} must have exactly one leg")

    def recolor(self, flips: Mapping[int, str]) -> PlabicGraph:
        colors = self.color_map
        for v, c in flips.items():
            if v not in colors:
                raise ValidationError(f"vertex {v} is not internal")
            colors[v] = c
        return PlabicGraph.of(self.boundary, colors, self.edges, self.rotation_map)

    def to_json(self) -> dict:
        return {
            "boundary": self.boundary,
            "vertices": [{"id": v, "color": c} for v, c in self.colors],
            "edges": [[u, v] for u, v in self.edges],
            "rotation": {str(v): list(r) for v, r in self.rotation},
        }

    @classmethod
    def from_json(cls, data: dict) -> PlabicGraph:
        return cls.of(
            data["boundary"],
            {v["id"]: v["color"] for v in data["vertices"]},
            [(u, v) for u, v in data["edges"]],
            {int(v): r for v, r in data["rotation"].items()},
        )

    def to_dot(self, labeling: "FaceLabeling | None" = None) -> str:
        lines = ["graph plabic {"]
        for i in range(1, self.boundary + 1):
            lines.append(f'  b{i} [shape=none, label="{i}"];')
        for v, c in self.colors:
            fill = "white" if c == WHITE else "black"
            lines.append(f'  v{v} [shape=circle, style=filled, fillcolor={fill}, label=""];')
        for u, v in self.edges:
            a = f"b{u}" if u <= self.boundary else f"v{u}"
            b = f"b{v}" if v <= self.boundary else f"v{v}"
            lines.append(f"  {a} -- {b};")
        if labeling is not None:
            for f in labeling.faces:
                lines.append(f"  // face {f.id}: {f.label}")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Trip:
    """One strand: enters at ``source``, exits at ``target``.

    ``darts`` are graph darts (2*edge + end) in traversal order."""

    source: int
    target: int
    darts: tuple[int, ...]

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.darts)


@dataclass(frozen=True)
class Face:
    id: int
    label: KSet
    boundary_marks: tuple[int, ...]  # positions i whose arc (i-1 -> i) this face touches
    darts: tuple[int, ...]

    @property
    def frozen(self) -> bool:
        return bool(self.boundary_marks)


@dataclass(frozen=True)
class FaceLabeling:
    graph: PlabicGraph
    faces: tuple[Face, ...]
    permutation: DecoratedPermutation

    def collection(self) -> frozenset[KSet]:
        return frozenset(f.label for f in self.faces)

    def boundary_labels(self) -> tuple[KSet, ...]:
        out = []
        for i in range(1, self.graph.boundary + 1):
            face = next(f for f in self.faces if i in f.boundary_marks)
            out.append(face.label)
        return tuple(out)

    def necklace(self) -> GrassmannNecklace:
        return GrassmannNecklace(self.boundary_labels())

    def face_with_label(self, label: KSet) -> Face:
        for f in self.faces:
            if f.label == label:
                return f
        raise KeyError(label)

    def mutable_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if not f.frozen)


class _Disk:
    """Augmented dart structures: graph edges plus the boundary arcs."""

    def __init__(self, g: PlabicGraph):
        g.validate()
        self.g = g
        self.n = g.boundary
        self.m = len(g.edges)
        self.ends: list[tuple[int, int]] = list(g.edges)
        self.arc_of: dict[int, int] = {}
        rot = {v: tuple(r) for v, r in g.rotation}
        if self.n >= 2:
            for i in range(1, self.n + 1):
                eid = len(self.ends)
                self.ends.append((i, i % self.n + 1))
                self.arc_of[i] = eid
            for i in range(1, self.n + 1):
                prev = self.arc_of[self.n if i == 1 else i - 1]
                rot[i] = (self.arc_of[i], prev, rot[i][0])
        self.rot = rot
        self.pos = {v: {e: k for k, e in enumerate(r)} for v, r in rot.items()}
        self.colors = g.color_map
        self.deg = {v: len(r) for v, r in g.rotation}

    def tail(self, d: int) -> int:
        return self.ends[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.ends[d >> 1][1 - (d & 1)]

    def dart(self, eid: int, tail: int) -> int:
        u, v = self.ends[eid]
        if tail == u:
            return 2 * eid
        if tail == v:
            return 2 * eid + 1
        raise ValueError(f"vertex {tail} is not an end of edge {eid}")

    def face_next(self, d: int) -> int:
        v = self.head(d)
        r = self.rot[v]
        return self.dart(r[self.pos[v][d >> 1] - 1], v)

    def trip_next(self, d: int) -> int | None:
        v = self.head(d)
        if v <= self.n:
            return None
        r = self.g.rotation_map[v]
        k = r.index(d >> 1)
        step = 1 if self.colors[v] == BLACK else -1
        return self.dart(r[(k + step) % len(r)], v)

    def graph_darts(self) -> range:
        return range(2 * self.m)

    def all_darts(self) -> range:
        return range(2 * len(self.ends))


def trips(g: PlabicGraph) -> list[Trip]:
    """The n boundary-to-boundary strands, one starting at each boundary vertex."""
    disk = _Disk(g)
    out = []
    for i in range(1, disk.n + 1):
        d = disk.dart(g.rotation_map[i][0], i)
        darts = [d]
        guard = 4 * disk.m + 4
        while True:
            nxt = disk.trip_next(darts[-1])
            if nxt is None:
                break
            darts.append(nxt)
            guard -= 1
            if guard < 0:
                raise ValidationError("trip failed to terminate")
        out.append(Trip(i, disk.head(darts[-1]), tuple(darts)))
    return out


def _closed_orbits(g: PlabicGraph, strands: list[Trip]) -> list[tuple[int, ...]]:
    disk = _Disk(g)
    used = {d for t in strands for d in t.darts}
    orbits = []
    seen: set[int] = set()
    for d0 in disk.graph_darts():
        if d0 in used or d0 in seen or disk.tail(d0) <= disk.n:
            continue
        orbit = [d0]
        seen.add(d0)
        d = disk.trip_next(d0)
        while d is not None and d != d0:
            orbit.append(d)
            seen.add(d)
            d = disk.trip_next(d)
        orbits.append(tuple(orbit))
    return orbits


def _face_orbits(disk: _Disk) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    faces: list[tuple[int, ...]] = []
    dart_face: dict[int, int] = {}
    for d0 in disk.all_darts():
        if d0 in dart_face:
            continue
        orbit = [d0]
        dart_face[d0] = len(faces)
        d = disk.face_next(d0)
        while d != d0:
            orbit.append(d)
            dart_face[d] = len(faces)
            d = disk.face_next(d)
        faces.append(tuple(orbit))
    return faces, dart_face


class _Analysis:
    def __init__(self, g: PlabicGraph):
        self.g = g
        self.disk = _Disk(g)
        disk = self.disk
        n = disk.n

        self.faces, self.dart_face = _face_orbits(disk)
        n_vert = n + len(g.colors)
        n_edge = len(disk.ends)
        if n_vert - n_edge + len(self.faces) != 2:
            raise ValidationError("graph is not connected and planar in the disk")

        if n >= 2:
            self.outer: int | None = self.dart_face[disk.dart(disk.arc_of[1], 1)]
        else:
            self.outer = None
        self.interior = [i for i in range(len(self.faces)) if i != self.outer]

        self.trips = trips(g)
        self.cap_edges = {
            eid
            for eid, (u, v) in enumerate(g.edges)
            if (u > n and disk.deg[u] == 1) or (v > n and disk.deg[v] == 1)
        }

        # adjacency of faces across graph edges, with per-edge ids kept
        self.edge_faces = {
            eid: (self.dart_face[2 * eid], self.dart_face[2 * eid + 1])
            for eid in range(disk.m)
        }

        self.sides = [self._trip_sides(t) for t in self.trips]

        labels: dict[int, set[int]] = {fid: set() for fid in self.interior}
        for trip, side in zip(self.trips, self.sides):
            for fid, s in side.items():
                if s == "L":
                    labels[fid].add(trip.target)
        sizes = {len(s) for s in labels.values()}
        if len(sizes) > 1:
            raise ReducednessError(f"face label sizes disagree: {sorted(sizes)}")
        self.k = sizes.pop() if sizes else 0
        self.labels = {fid: KSet.of(s, n) for fid, s in labels.items()}

        self.boundary_face: dict[int, int] = {}
        if n >= 2:
            for i in range(1, n + 1):
                arc = disk.arc_of[n if i == 1 else i - 1]
                self.boundary_face[i] = self.dart_face[disk.dart(arc, i)]
        else:
            self.boundary_face[1] = self.dart_face[disk.dart(g.rotation_map[1][0], 1)]

        image = [t.target for t in self.trips]
        colors = []
        for i, (t, side) in enumerate(zip(self.trips, self.sides), start=1):
            if t.target != i:
                continue
            svals = set(side.values())
            if svals <= {"L"}:
                colors.append((i, -1))
            elif svals <= {"R"}:
                colors.append((i, 1))
            else:
                raise ReducednessError(f"fixed point {i} has faces on both sides")
        self.permutation = DecoratedPermutation.of(image, dict(colors))

    def _trip_sides(self, trip: Trip) -> dict[int, str]:
        disk = self.disk
        side: dict[int, str] = {}
        conflict = "trip {} assigns both sides to one face".format(trip.source)

        def put(fid: int, s: str) -> None:
            if side.setdefault(fid, s) != s:
                raise ReducednessError(conflict)

        traversals: dict[int, int] = {}
        for d in trip.darts:
            traversals[d >> 1] = traversals.get(d >> 1, 0) + 1
        for d in trip.darts:
            eid = d >> 1
            if eid in self.cap_edges:
                u, v = disk.ends[eid]
                leaf = u if (u > disk.n and disk.deg[u] == 1) else v
                put(self.dart_face[d], "L" if disk.colors[leaf] == WHITE else "R")
            else:
                put(self.dart_face[d], "L")
                put(self.dart_face[d ^ 1], "R")

        queue = deque(side)
        while queue:
            fid = queue.popleft()
            for eid, (fa, fb) in self.edge_faces.items():
                if fid not in (fa, fb) or fa == fb:
                    continue
                other = fb if fid == fa else fa
                flip = traversals.get(eid, 0) == 1
                want = ("R" if side[fid] == "L" else "L") if flip else side[fid]
                if other not in side:
                    side[other] = want
                    queue.append(other)
                elif side[other] != want:
                    raise ReducednessError(conflict)
        missing = [fid for fid in self.interior if fid not in side]
        if missing:
            raise ValidationError("face side propagation did not reach every face")
        return {fid: side[fid] for fid in self.interior}


def face_labels(g: PlabicGraph) -> FaceLabeling:
    an = _Analysis(g)
    marks: dict[int, list[int]] = {fid: [] for fid in an.interior}
    for i, fid in an.boundary_face.items():
        marks[fid].append(i)
    faces = tuple(
        Face(fid, an.labels[fid], tuple(sorted(marks[fid])), an.faces[fid])
        for fid in an.interior
    )
    return FaceLabeling(g, faces, an.permutation)


def trip_permutation(g: PlabicGraph) -> DecoratedPermutation:
    return _Analysis(g).permutation


def validate_reduced(g: PlabicGraph) -> bool:
    """Trip-based reducedness test.

    Checks: no strand avoids the boundary; no strand reuses an edge except for
    the immediate bounce at a degree-1 vertex; no two strands share two edges
    in the same order; faces have distinct labels of a common size; the face
    count matches k(n-k) - (alignment count) + 1.
    """
    strands = trips(g)
    if _closed_orbits(g, strands):
        return False
    disk = _Disk(g)
    for t in strands:
        eids = t.edge_ids()
        for k in range(len(eids)):
            for l in range(k + 1, len(eids)):
                if eids[k] != eids[l]:
                    continue
                bounce = l == k + 1 and disk.deg.get(disk.head(t.darts[k]), 0) == 1
                if not bounce:
                    return False
    firsts = [
        {e: pos for pos, e in reversed(list(enumerate(t.edge_ids())))} for t in strands
    ]
    for a in range(len(strands)):
        for b in range(a + 1, len(strands)):
            shared = set(firsts[a]) & set(firsts[b])
            for e1 in shared:
                for e2 in shared:
                    if e1 == e2:
                        continue
                    if firsts[a][e1] < firsts[a][e2] and firsts[b][e1] < firsts[b][e2]:
                        return False
    try:
        an = _Analysis(g)
    except ReducednessError:
        return False
    if len(set(an.labels.values())) != len(an.interior):
        return False
    sigma = an.permutation
    expected = sigma.k * (sigma.n - sigma.k) - alignments(sigma) + 1
    return len(an.interior) == expected


def bridge_graph_from_permutation(sigma: DecoratedPermutation) -> PlabicGraph:
    """Reduced plabic graph for a decorated permutation, built from bridges.

    Peels one crossing at a time from the bounded affine lift: pick cyclically
    adjacent non-fixed columns a, b with b <= f(a) < f(b) <= a + n whose value
    swap raises the inversion count by exactly one, place a bridge there, and
    repeat until only fixed columns remain.  Earlier bridges sit higher; each
    wire ends in a cap colored white for a -1 column and black for +1.
    """
    n = sigma.n
    f = [0] + list(sigma.affine_lift())

    def lifted(fv: list[int], j: int) -> int:
        return fv[j] if j <= n else fv[j - n] + n

    def inversions(fv: list[int]) -> int:
        return sum(
            1
            for i in range(1, n + 1)
            for j in range(i + 1, i + n)
            if fv[i] > lifted(fv, j)
        )

    def trivial(x: int) -> bool:
        return f[x] in (x, x + n)

    bridges: list[tuple[int, int]] = []
    while not all(trivial(x) for x in range(1, n + 1)):
        before = inversions(f)
        progressed = False
        for a in range(1, n + 1):
            if trivial(a):
                continue
            b = a % n + 1
            while trivial(b):
                b = b % n + 1
            pb = b if b > a else b + n
            va, vb = f[a], f[b] + (n if b < a else 0)
            if not (pb <= va < vb <= a + n):
                continue
            f[a], f[b] = vb, va - (n if b < a else 0)
            if inversions(f) == before + 1:
                bridges.append((a, b))
                progressed = True
                break
            f[a], f[b] = va, vb - (n if b < a else 0)
        if not progressed:
            raise ValidationError(f"no admissible bridge peel for {sigma}")

    wires: dict[int, list[tuple[int, str]]] = {x: [] for x in range(1, n + 1)}
    for t, (a, b) in enumerate(bridges):
        wires[a].append((t, "a"))
        wires[b].append((t, "b"))

    next_id = n + 1
    colors: dict[int, str] = {}
    bridge_vertex: dict[tuple[int, str], int] = {}
    cap: dict[int, int] = {}
    for x in range(1, n + 1):
        for t, role in wires[x]:
            bridge_vertex[(t, role)] = next_id
            colors[next_id] = WHITE if role == "a" else BLACK
            next_id += 1
        cap[x] = next_id
        colors[next_id] = WHITE if f[x] == x + n else BLACK
        next_id += 1

    edges: list[tuple[int, int]] = []
    up_edge: dict[int, int] = {}
    down_edge: dict[int, int] = {}
    leg: dict[int, int] = {}
    for x in range(1, n + 1):
        chain = [x] + [bridge_vertex[key] for key in [(t, r) for t, r in wires[x]]] + [cap[x]]
        for u, v in zip(chain, chain[1:]):
            eid = len(edges)
            edges.append((u, v))
            down_edge[u] = eid
            up_edge[v] = eid
            if u == x:
                leg[x] = eid
    bridge_edge: dict[int, int] = {}
    for t in range(len(bridges)):
        eid = len(edges)
        edges.append((bridge_vertex[(t, "a")], bridge_vertex[(t, "b")]))
        bridge_edge[t] = eid

    rotation: dict[int, tuple[int, ...]] = {}
    for x in range(1, n + 1):
        rotation[x] = (leg[x],)
        rotation[cap[x]] = (up_edge[cap[x]],)
    for (t, role), v in bridge_vertex.items():
        u, d, br = up_edge[v], down_edge[v], bridge_edge[t]
        rotation[v] = (br, u, d) if role == "a" else (u, br, d)

    return _cleanup(PlabicGraph.of(n, colors, edges, rotation))


def _cleanup(g: PlabicGraph) -> PlabicGraph:
    """Remove bounce caps and straighten the graph.

    A degree-1 internal vertex hanging off another internal vertex only makes
    the strand through its neighbor take a detour down and back; deleting it
    and then merging the edges of any resulting degree-2 vertex leaves trips,
    faces and labels unchanged.  Caps attached directly to a boundary vertex
    are genuine lollipops (decorated fixed points) and are kept.
    """
    colors = g.color_map
    edges: dict[int, tuple[int, int]] = dict(enumerate(g.edges))
    rot: dict[int, list[int]] = {v: list(r) for v, r in g.rotation}

    def far_end(eid: int, v: int) -> int:
        u, w = edges[eid]
        return w if u == v else u

    changed = True
    while changed:
        changed = False
        for v in list(rot):
            if v not in rot or v <= g.boundary or len(rot[v]) != 1:
                continue
            eid = rot[v][0]
            other = far_end(eid, v)
            if other <= g.boundary:
                continue
            del rot[v], colors[v], edges[eid]
            rot[other].remove(eid)
            changed = True
        for v in list(rot):
            if v not in rot or v <= g.boundary or len(rot[v]) != 2:
                continue
            e1, e2 = rot[v]
            a, b = far_end(e1, v), far_end(e2, v)
            if a == b:
                raise ValidationError("degree-2 straightening would create a loop")
            edges[e1] = (a, b)
            rot[b][rot[b].index(e2)] = e1
            del rot[v], colors[v], edges[e2]
            changed = True

    remap = {eid: k for k, eid in enumerate(sorted(edges))}
    new_edges = [edges[eid] for eid in sorted(edges)]
    new_rot = {v: tuple(remap[e] for e in r) for v, r in rot.items()}
    return PlabicGraph.of(g.boundary, colors, new_edges, new_rot)


def _contract_edge(g: PlabicGraph, eid: int) -> PlabicGraph:
    """Merge the two same-colored internal ends of an edge, splicing rotations."""
    u, v = g.edges[eid]
    colors = g.color_map
    if u <= g.boundary or v <= g.boundary or colors[u] != colors[v]:
        raise ValidationError(f"edge {eid} is not contractible")
    rot = g.rotation_map
    ru, rv = list(rot[u]), list(rot[v])
    iu, iv = ru.index(eid), rv.index(eid)
    merged = ru[iu + 1:] + ru[:iu] + rv[iv + 1:] + rv[:iv]
    new_edges: list[tuple[int, int]] = []
    remap: dict[int, int] = {}
    for k, (a, b) in enumerate(g.edges):
        if k == eid:
            continue
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 == b2:
            raise ValidationError("contraction of a parallel edge would create a loop")
        remap[k] = len(new_edges)
        new_edges.append((a2, b2))
    new_rot = {
        w: tuple(remap[e] for e in (merged if w == u else r))
        for w, r in rot.items()
        if w != v
    }
    new_colors = {w: c for w, c in colors.items() if w != v}
    return PlabicGraph.of(g.boundary, new_colors, new_edges, new_rot)


def _split_corner(g: PlabicGraph, corner: int, e_in: int, e_out: int) -> PlabicGraph:
    """Detach all edges of ``corner`` except e_in/e_out onto a fresh same-color
    vertex joined to the corner, leaving the corner trivalent on its face."""
    rot = list(g.rotation_map[corner])
    i_in = rot.index(e_in)
    rot2 = rot[i_in + 1:] + rot[:i_in + 1]
    if rot2[-2] != e_out:
        raise ValidationError("face edges are not adjacent in the corner rotation")
    rest = rot2[:-2]
    new_id = max([g.boundary, *(v for v, _ in g.colors)]) + 1
    new_eid = len(g.edges)
    edges = []
    for k, (a, b) in enumerate(g.edges):
        if k in rest:
            a, b = (new_id if a == corner else a), (new_id if b == corner else b)
        edges.append((a, b))
    edges.append((corner, new_id))
    colors = g.color_map
    colors[new_id] = colors[corner]
    rotation = g.rotation_map
    rotation[corner] = (e_out, e_in, new_eid)
    rotation[new_id] = tuple(rest) + (new_eid,)
    return PlabicGraph.of(g.boundary, colors, edges, rotation)


def _corner_runs(g: PlabicGraph, disk: _Disk, face: Face) -> int | None:
    """Number of cyclic color runs among the face's corners, or None when the
    face revisits a vertex or touches the boundary."""
    corners = [disk.head(d) for d in face.darts]
    if any(v <= g.boundary for v in corners) or len(set(corners)) != len(corners):
        return None
    cols = [g.color_map[v] for v in corners]
    changes = sum(cols[i] != cols[i - 1] for i in range(len(cols)))
    return changes if changes else 1


def square_move(g: PlabicGraph, pivot: KSet, labeling: FaceLabeling | None = None) -> PlabicGraph:
    """Mutate the graph at the interior face labeled ``pivot``.

    The face is first normalized: face edges joining two same-colored corners
    are contracted, and any remaining corner of degree above three is split so
    that its on-face part is trivalent.  The result must be a quadrilateral
    with alternating corner colors, whose four corners are then flipped.
    """
    lab = labeling if labeling is not None else face_labels(g)
    face = lab.face_with_label(pivot)
    if face.frozen:
        raise ValidationError(f"face {pivot} touches the boundary")
    runs = _corner_runs(g, _Disk(g), face)
    if runs != 4:
        raise ValidationError(f"face {pivot} does not normalize to a quadrilateral")

    while True:
        disk = _Disk(g)
        face = face_labels(g).face_with_label(pivot)
        corners = [disk.head(d) for d in face.darts]
        cols = [g.color_map[v] for v in corners]
        same = next((i for i in range(len(cols)) if cols[i] == cols[i - 1]), None)
        if same is None:
            break
        g = _contract_edge(g, face.darts[same] >> 1)

    for spot in range(4):
        disk = _Disk(g)
        face = face_labels(g).face_with_label(pivot)
        corners = [disk.head(d) for d in face.darts]
        if disk.deg[corners[spot]] > 3:
            e_in = face.darts[spot] >> 1
            e_out = face.darts[(spot + 1) % 4] >> 1
            g = _split_corner(g, corners[spot], e_in, e_out)

    disk = _Disk(g)
    face = face_labels(g).face_with_label(pivot)
    corners = [disk.head(d) for d in face.darts]
    colors = g.color_map
    return g.recolor({v: (WHITE if colors[v] == BLACK else BLACK) for v in corners})


def movable_faces(labeling: FaceLabeling) -> tuple[Face, ...]:
    """Interior faces that normalize to an alternating quadrilateral."""
    g = labeling.graph
    disk = _Disk(g)
    return tuple(
        f
        for f in labeling.faces
        if not f.frozen and _corner_runs(g, disk, f) == 4
    )


def quiver_from_graph(g: PlabicGraph, labeling: FaceLabeling | None = None) -> IceQuiver:
    """Ice quiver on the faces of a reduced graph.

    One vertex per face, frozen iff the face touches the boundary circle.
    Each edge with two internal, oppositely colored, non-leaf endpoints
    contributes an arrow between its two adjacent faces, directed so that the
    edge's white endpoint is on the left when crossing from source to target
    face.  Arrows between two frozen faces are recorded (net of cancellation)
    but ignored by quiver comparisons; a loop or a two-cycle at a mutable face
    means the graph was not reduced and raises.
    """
    an = _Analysis(g)
    if labeling is None:
        marks: dict[int, list[int]] = {fid: [] for fid in an.interior}
        for i, fid in an.boundary_face.items():
            marks[fid].append(i)
    else:
        marks = {f.id: list(f.boundary_marks) for f in labeling.faces}
    disk = an.disk
    colors = g.color_map
    raw: dict[tuple[int, int], int] = {}
    for eid, (u, v) in enumerate(g.edges):
        if u <= g.boundary or v <= g.boundary:
            continue
        if disk.deg[u] == 1 or disk.deg[v] == 1:
            continue
        if colors[u] == colors[v]:
            continue
        w = u if colors[u] == WHITE else v
        d_wb = disk.dart(eid, w)
        src = an.dart_face[d_wb ^ 1]
        dst = an.dart_face[d_wb]
        if src == dst:
            raise ReducednessError("quiver loop: one face on both sides of an edge")
        raw[(src, dst)] = raw.get((src, dst), 0) + 1

    frozen = {fid for fid in an.interior if marks[fid]}
    arrows = []
    for (s, t), m in sorted(raw.items()):
        back = raw.get((t, s), 0)
        if back:
            if s not in frozen or t not in frozen:
                raise ReducednessError("two-cycle at a mutable face")
            if m > back:
                arrows.append((s, t, m - back))
            continue
        arrows.append((s, t, m))

    vertices = tuple(
        QuiverVertex(fid, fid in frozen, an.labels[fid]) for fid in sorted(an.interior)
    )
    return IceQuiver(vertices, tuple(arrows))


def graph_mutation_class(
    g: PlabicGraph, limit: int | None = None
) -> tuple[list[tuple[PlabicGraph, FaceLabeling]], bool]:
    """Closure of a reduced graph under square moves, deduplicated by the face
    label collection.  Returns (members, complete)."""
    start = face_labels(g)
    seen: dict[frozenset[KSet], tuple[PlabicGraph, FaceLabeling]] = {
        start.collection(): (g, start)
    }
    queue = deque([(g, start)])
    complete = True
    while queue:
        cur, lab = queue.popleft()
        for face in movable_faces(lab):
            moved = square_move(cur, face.label, lab)
            mlab = face_labels(moved)
            key = mlab.collection()
            if key in seen:
                continue
            if limit is not None and len(seen) >= limit:
                complete = False
                continue
            seen[key] = (moved, mlab)
            queue.append((moved, mlab))
    return list(seen.values()), complete
