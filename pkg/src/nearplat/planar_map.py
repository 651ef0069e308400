"""Combinatorial maps (rotation systems) for simple connected graphs.

A map stores, for every vertex, the counterclockwise cyclic order of its
neighbours.  Faces are recovered by tracing darts: the dart following
``u -> v`` is ``v -> w`` where ``w`` succeeds ``u`` in the rotation at ``v``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Dart = tuple[int, int]


class MapError(ValueError):
    """Base class for rejected rotation systems."""


class NonSimpleError(MapError):
    """A loop or a repeated neighbour."""


class InconsistentInvolutionError(MapError):
    """Dart ``u -> v`` present without its reverse ``v -> u``."""


class DisconnectedError(MapError):
    pass


class BoundaryNotACycle(ValueError):
    """The face walk revisits a vertex, so chords are undefined."""


def _normalise(rot: Sequence[int]) -> tuple[int, ...]:
    if not rot:
        return ()
    i = min(range(len(rot)), key=rot.__getitem__)
    return tuple(rot[i:]) + tuple(rot[:i])


@dataclass(frozen=True)
class FaceWalk:
    darts: tuple[Dart, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.darts)

    def edges(self) -> set[frozenset[int]]:
        return {frozenset(d) for d in self.darts}

    def is_cycle(self) -> bool:
        return len(set(self.vertices)) == self.degree


@dataclass(frozen=True, eq=True)
class PlanarMap:
    """An immutable rotation system on vertices ``0..n-1``.

    Each rotation is stored starting at its smallest neighbour, so two maps
    compare equal exactly when they are the same labelled rotation system.
    """

    rotations: tuple[tuple[int, ...], ...]
    _pos: tuple[dict[int, int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __init__(self, rotations: Iterable[Sequence[int]]):
        rots = tuple(_normalise(tuple(r)) for r in rotations)
        object.__setattr__(self, "rotations", rots)
        object.__setattr__(
            self, "_pos", tuple({w: i for i, w in enumerate(r)} for r in rots)
        )
        self._validate()

    def _validate(self) -> None:
        n = len(self.rotations)
        if n == 0:
            raise MapError("a map needs at least one vertex")
        for u, rot in enumerate(self.rotations):
            for w in rot:
                if not 0 <= w < n:
                    raise MapError(f"vertex {u} has out-of-range neighbour {w}")
                if w == u:
                    raise NonSimpleError(f"loop at vertex {u}")
            if len(self._pos[u]) != len(rot):
                raise NonSimpleError(f"repeated neighbour at vertex {u}")
        for u, rot in enumerate(self.rotations):
            for w in rot:
                if u not in self._pos[w]:
                    raise InconsistentInvolutionError(
                        f"dart {u}->{w} has no reverse"
                    )
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.rotations[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise DisconnectedError(f"only {len(seen)} of {n} vertices reachable")

    # -- basic counts -------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def darts(self) -> list[Dart]:
        return [(u, w) for u, rot in enumerate(self.rotations) for w in rot]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u, rot in enumerate(self.rotations) for w in rot if u < w]

    def neighbours(self, u: int) -> tuple[int, ...]:
        return self.rotations[u]

    def has_edge(self, u: int, w: int) -> bool:
        return w in self._pos[u]

    def succ(self, v: int, u: int) -> int:
        """Neighbour after ``u`` in the rotation at ``v``."""
        rot = self.rotations[v]
        return rot[(self._pos[v][u] + 1) % len(rot)]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        return (v, self.succ(v, u))

    # -- derived maps -------------------------------------------------------

    def mirror(self) -> PlanarMap:
        return PlanarMap(tuple(reversed(r)) for r in self.rotations)

    def relabel(self, perm: Sequence[int]) -> PlanarMap:
        """Vertex ``u`` becomes ``perm[u]``."""
        n = self.vertex_count
        rots: list[tuple[int, ...]] = [()] * n
        for u, rot in enumerate(self.rotations):
            rots[perm[u]] = tuple(perm[w] for w in rot)
        return PlanarMap(rots)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges())
        return g

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        return tuple(trace_faces(self))


# -- construction helpers ---------------------------------------------------


def from_faces(faces: Iterable[Sequence[int]], n: int | None = None) -> PlanarMap:
    """Build a map from oriented face boundaries.

    Every directed edge must occur in exactly one face.  Consecutive vertices
    ``u, v, w`` on a face say that ``w`` follows ``u`` around ``v``.
    """
    succ: dict[int, dict[int, int]] = {}
    seen: set[Dart] = set()
    for face in faces:
        m = len(face)
        for i in range(m):
            u, v, w = face[i - 1], face[i], face[(i + 1) % m]
            if (v, w) in seen:
                raise MapError(f"directed edge {v}->{w} used twice")
            seen.add((v, w))
            if u in succ.setdefault(v, {}):
                raise MapError(f"corner {u},{v} used twice")
            succ[v][u] = w
    for v, w in seen:
        if (w, v) not in seen:
            raise InconsistentInvolutionError(f"edge {v}-{w} bounds only one face")
    if n is None:
        n = max(succ) + 1
    rots = []
    for v in range(n):
        s = succ.get(v, {})
        if not s:
            rots.append(())
            continue
        start = min(s)
        rot = [start]
        w = s[start]
        while w != start:
            rot.append(w)
            w = s[w]
        if len(rot) != len(s):
            raise MapError(f"vertex {v} has a pinched neighbourhood")
        rots.append(tuple(rot))
    return PlanarMap(rots)


def from_coordinates(
    points: Sequence[tuple[float, float]], edges: Iterable[tuple[int, int]]
) -> PlanarMap:
    """Rotation system of a straight-line drawing (neighbours sorted by angle)."""
    adj: dict[int, set[int]] = {i: set() for i in range(len(points))}
    for u, w in edges:
        if u == w or w in adj[u]:
            raise NonSimpleError(f"bad edge {u}-{w}")
        adj[u].add(w)
        adj[w].add(u)
    rots = []
    for u in range(len(points)):
        x, y = points[u]
        rots.append(
            sorted(adj[u], key=lambda w: math.atan2(points[w][1] - y, points[w][0] - x))
        )
    return PlanarMap(rots)


def dual(pm: PlanarMap) -> PlanarMap:
    """Geometric dual; only meaningful when the result is simple."""
    walks = pm.faces
    owner = {d: i for i, f in enumerate(walks) for d in f.darts}
    rots = [[owner[(w, u)] for u, w in f.darts] for f in walks]
    return PlanarMap(rots)


# -- operations ---------------------------------------------------------------


def trace_faces(pm: PlanarMap) -> list[FaceWalk]:
    seen: set[Dart] = set()
    walks = []
    for start in pm.darts():
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = pm.next_dart(d)
        walks.append(FaceWalk(tuple(walk)))
    return walks


def genus(pm: PlanarMap) -> int:
    chi = pm.vertex_count - pm.edge_count + len(pm.faces)
    return (2 - chi) // 2


def degree_sequence(pm: PlanarMap) -> Counter:
    return Counter(len(r) for r in pm.rotations)


def is_regular(pm: PlanarMap, k: int) -> bool:
    return all(len(r) == k for r in pm.rotations)


def face_vector(pm: PlanarMap) -> dict[int, int]:
    counts = Counter(f.degree for f in pm.faces)
    return dict(sorted(counts.items()))


def chords_of(pm: PlanarMap, face: FaceWalk) -> list[tuple[int, int]]:
    if not face.is_cycle():
        raise BoundaryNotACycle(f"face walk {face.vertices} repeats a vertex")
    on_face = set(face.vertices)
    walk_edges = face.edges()
    return sorted(
        (u, w)
        for u, w in pm.edges()
        if u in on_face and w in on_face and frozenset((u, w)) not in walk_edges
    )


def boundary_distance(face: FaceWalk, i: int, j: int) -> int:
    deg = face.degree
    return min((i - j) % deg, (j - i) % deg)


# -- canonical form -------------------------------------------------------------


def _bfs_code(rots, pos, root: int, first: int, orient: int) -> list[int]:
    labels = {root: 0}
    order = [root]
    ref = {root: first}
    out = [len(rots)]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        r = rots[x]
        deg = len(r)
        s = pos[x][ref[x]]
        for j in range(deg):
            y = r[(s + orient * j) % deg]
            lab = labels.get(y)
            if lab is None:
                lab = labels[y] = len(order)
                order.append(y)
                ref[y] = x
            out.append(lab + 1)
        out.append(0)
    return out


def canonical_code(pm: PlanarMap) -> bytes:
    """Minimal BFS relabelling code over all root darts and both orientations.

    Equal codes mean the maps are isomorphic as maps on the sphere with
    reflections allowed.
    """
    rots, pos = pm.rotations, pm._pos
    best: list[int] | None = None
    for u, rot in enumerate(rots):
        for w in rot:
            for orient in (1, -1):
                code = _bfs_code(rots, pos, u, w, orient)
                if best is None or code < best:
                    best = code
    assert best is not None
    width = 1 if pm.vertex_count < 255 else 2
    return bytes([width]) + b"".join(x.to_bytes(width, "big") for x in best)


def automorphism_count(pm: PlanarMap) -> int:
    """Number of (possibly orientation-reversing) map automorphisms."""
    rots, pos = pm.rotations, pm._pos
    codes = [
        _bfs_code(rots, pos, u, w, o) for u, rot in enumerate(rots) for w in rot for o in (1, -1)
    ]
    best = min(codes)
    return sum(1 for c in codes if c == best)
