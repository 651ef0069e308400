"""Platonic maps and the fifteen families with two equal disparate faces.

Each family is the ``d``-fold cyclic cover of a small *unit* map, branched
at the centres of two chosen faces.  A unit is a rotation system whose darts
carry an integer shift: the dart ``u -> w`` with shift ``s`` in copy ``i``
lands on ``w`` in copy ``i + s``.  Units come from a Platonic solid, either
whole (``symmetry=1``) or as the quotient by the rotation that fixes two
opposite faces, which is how prisms, antiprisms and truncated trapezohedra
arise from the cube, octahedron and dodecahedron.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .planar_map import (
    MapError,
    PlanarMap,
    dual,
    from_coordinates,
    from_faces,
)


class ParameterTooSmall(ValueError):
    def __init__(self, family, d: int, d_min: int):
        super().__init__(f"{getattr(family, 'value', family)} needs d >= {d_min}, got {d}")
        self.d = d


class PlatonicId(enum.Enum):
    TETRAHEDRON = (3, 3)
    CUBE = (3, 4)
    OCTAHEDRON = (4, 3)
    DODECAHEDRON = (3, 5)
    ICOSAHEDRON = (5, 3)

    @property
    def k(self) -> int:
        return self.value[0]

    @property
    def d2(self) -> int:
        return self.value[1]


_PHI = (1 + 5**0.5) / 2


def _hull_map(points) -> PlanarMap:
    from scipy.spatial import ConvexHull

    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    centre = pts.mean(axis=0)
    faces = []
    for a, b, c in hull.simplices:
        normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        if np.dot(normal, pts[a] - centre) < 0:
            b, c = c, b
        faces.append((int(a), int(b), int(c)))
    return from_faces(faces, len(pts))


@lru_cache(maxsize=None)
def generate_platonic(pid: PlatonicId) -> PlanarMap:
    if pid is PlatonicId.TETRAHEDRON:
        return _hull_map([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])
    if pid is PlatonicId.OCTAHEDRON:
        return _hull_map([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    if pid is PlatonicId.ICOSAHEDRON:
        pts = []
        for s in (1, -1):
            for t in (1, -1):
                pts += [(0, s, t * _PHI), (s, t * _PHI, 0), (t * _PHI, 0, s)]
        return _hull_map(pts)
    if pid is PlatonicId.CUBE:
        return dual(generate_platonic(PlatonicId.OCTAHEDRON))
    return dual(generate_platonic(PlatonicId.ICOSAHEDRON))


# -- units -----------------------------------------------------------------------


@dataclass(frozen=True)
class UnitTemplate:
    """A rotation system on darts ``0..2m-1`` with integer shifts.

    ``alpha`` reverses a dart, ``sigma`` steps to the next dart out of the
    same vertex, ``tail`` gives the vertex a dart leaves.  Darts with nonzero
    shift attach one copy of the unit to its neighbours.
    """

    tail: tuple[int, ...]
    alpha: tuple[int, ...]
    sigma: tuple[int, ...]
    shift: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return max(self.tail) + 1

    def attachments(self) -> tuple[list[int], list[int]]:
        right = [x for x, s in enumerate(self.shift) if s > 0]
        left = [x for x, s in enumerate(self.shift) if s < 0]
        return left, right

    def faces(self) -> list[list[int]]:
        seen = set()
        out = []
        for x in range(len(self.tail)):
            if x in seen:
                continue
            walk = []
            while x not in seen:
                seen.add(x)
                walk.append(x)
                x = self.sigma[self.alpha[x]]
            out.append(walk)
        return out

    def lift(self, d: int) -> PlanarMap:
        n = self.vertex_count
        first = {}
        for x, v in enumerate(self.tail):
            first.setdefault(v, x)
        rots = []
        for i in range(d):
            for v in range(n):
                rot = []
                x = first[v]
                while True:
                    w = self.tail[self.alpha[x]]
                    rot.append(((i + self.shift[x]) % d) * n + w)
                    x = self.sigma[x]
                    if x == first[v]:
                        break
                rots.append(rot)
        return PlanarMap(rots)


def _template_from_map(pm: PlanarMap) -> UnitTemplate:
    darts = pm.darts()
    idx = {d: i for i, d in enumerate(darts)}
    tail = tuple(u for u, _ in darts)
    alpha = tuple(idx[(w, u)] for u, w in darts)
    sigma = tuple(idx[(u, pm.succ(u, w))] for u, w in darts)
    return UnitTemplate(tail, alpha, sigma, (0,) * len(darts))


def _rotation_automorphism(pm: PlanarMap, src, dst) -> dict:
    """Orientation-preserving automorphism sending dart ``src`` to ``dst``."""
    vmap = {src[0]: dst[0]}
    ref = {src[0]: (src[1], dst[1])}
    queue = deque([src[0]])
    while queue:
        x = queue.popleft()
        p, q = ref[x]
        y = vmap[x]
        rx, ry = pm.rotations[x], pm.rotations[y]
        if len(rx) != len(ry):
            raise MapError("not an automorphism")
        ix, iy = rx.index(p), ry.index(q)
        for j in range(len(rx)):
            a, b = rx[(ix + j) % len(rx)], ry[(iy + j) % len(ry)]
            if a in vmap:
                if vmap[a] != b:
                    raise MapError("not an automorphism")
            else:
                vmap[a] = b
                ref[a] = (x, y)
                queue.append(a)
    return {(u, w): (vmap[u], vmap[w]) for u, w in pm.darts()}


def _quotient(pm: PlanarMap, rho: dict) -> tuple[UnitTemplate, dict]:
    """Quotient of ``pm`` by the free dart action generated by ``rho``."""
    orbit_of = {}
    reps = []
    for d in pm.darts():
        if d in orbit_of:
            continue
        o = len(reps)
        reps.append(d)
        x = d
        while x not in orbit_of:
            orbit_of[x] = o
            x = rho[x]
    vorbit = {}
    nv = 0
    for d in reps:
        if d[0] not in vorbit:
            orbit_v = set()
            x = d
            while x[0] not in orbit_v:
                orbit_v.add(x[0])
                x = rho[x]
            for u in orbit_v:
                vorbit[u] = nv
            nv += 1
    tail = tuple(vorbit[u] for u, _ in reps)
    alpha = tuple(orbit_of[(w, u)] for u, w in reps)
    sigma = tuple(orbit_of[(u, pm.succ(u, w))] for u, w in reps)
    return UnitTemplate(tail, alpha, sigma, (0,) * len(reps)), orbit_of


def _cut(unit: UnitTemplate, start_face: int, end_face: int) -> UnitTemplate:
    """Give shift +-1 to the edges crossed by a shortest dual path between two faces."""
    faces = unit.faces()
    face_of = {x: i for i, f in enumerate(faces) for x in f}
    prev = {start_face: None}
    queue = deque([start_face])
    while queue:
        g = queue.popleft()
        if g == end_face:
            break
        for x in faces[g]:
            h = face_of[unit.alpha[x]]
            if h not in prev:
                prev[h] = x
                queue.append(h)
    shift = list(unit.shift)
    g = end_face
    while prev[g] is not None:
        x = prev[g]
        shift[x] += 1
        shift[unit.alpha[x]] -= 1
        g = face_of[x]
    return UnitTemplate(unit.tail, unit.alpha, unit.sigma, tuple(shift))


def _face_distances(pm: PlanarMap) -> list[int]:
    walks = pm.faces
    owner = {d: i for i, f in enumerate(walks) for d in f.darts}
    dist = [-1] * len(walks)
    dist[0] = 0
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for u, w in walks[g].darts:
            h = owner[(w, u)]
            if dist[h] < 0:
                dist[h] = dist[g] + 1
                queue.append(h)
    return dist


def platonic_unit(pid: PlatonicId, face_distance: int, symmetry: int = 1) -> UnitTemplate:
    """Unit for the pair (face 0, first face at ``face_distance`` in the dual).

    ``symmetry > 1`` divides out the rotation of face 0 by one step, which
    is only an automorphism when the second face is the opposite one.
    """
    pm = generate_platonic(pid)
    dist = _face_distances(pm)
    f1 = 0
    f2 = dist.index(face_distance)
    walk = pm.faces[f1]
    if symmetry == 1:
        unit = _template_from_map(pm)
        darts = pm.darts()
        idx = {d: i for i, d in enumerate(darts)}
        faces = unit.faces()
        face_of = {x: i for i, f in enumerate(faces) for x in f}
        a = face_of[idx[walk.darts[0]]]
        b = face_of[idx[pm.faces[f2].darts[0]]]
        return _cut(unit, a, b)
    if symmetry != walk.degree:
        raise ValueError("symmetry must equal the degree of the rotated face")
    rho = _rotation_automorphism(pm, walk.darts[0], walk.darts[1])
    if rho[pm.faces[f2].darts[0]] not in pm.faces[f2].darts:
        raise ValueError("the second face is not fixed by the rotation")
    unit, orbit_of = _quotient(pm, rho)
    faces = unit.faces()
    face_of = {x: i for i, f in enumerate(faces) for x in f}
    a = face_of[orbit_of[walk.darts[0]]]
    b = face_of[orbit_of[pm.faces[f2].darts[0]]]
    return _cut(unit, a, b)


def cycle_unit() -> UnitTemplate:
    # one vertex carrying a loop with shift +1
    return UnitTemplate(tail=(0, 0), alpha=(1, 0), sigma=(1, 0), shift=(1, -1))


# -- the fifteen families --------------------------------------------------------


class FamilyId(enum.Enum):
    CYCLE = "cycle"
    TETRA_THIN_CYCLE = "tetra-thin"
    PRISM = "prism"
    CUBE_THIN_CYCLE = "cube-thin"
    ANTIPRISM = "antiprism"
    OCTA_THIN_CYCLE = "octa-thin"
    OCTA_VERTEX_CYCLE = "octa-vertex"
    TRUNCATED_TRAPEZOHEDRON = "truncated-trapezohedron"
    DODECA_THIN_CYCLE = "dodeca-thin"
    DODECA_THICK_CYCLE = "dodeca-thick"
    ICOSA_THIN_CYCLE = "icosa-thin"
    ICOSA_VERTEX_CYCLE = "icosa-vertex"
    ICOSA_THICK_CYCLE = "icosa-thick"
    ICOSA_FAR_VERTEX_CYCLE = "icosa-far-vertex"
    ICOSA_OPPOSITE_CYCLE = "icosa-opposite"

    @classmethod
    def parse(cls, text: str) -> FamilyId:
        key = text.strip().lower().replace("_", "-")
        for fid in cls:
            if key in (fid.value, fid.name.lower().replace("_", "-")):
                return fid
        raise ValueError(f"unknown family {text!r}")


@dataclass(frozen=True)
class FamilySpec:
    """How a family is built and what its face vector is.

    The disparate degree is ``disparate_per_unit * d`` and there are
    ``common_per_unit * d`` faces of the common degree ``d2``.  ``printed``
    marks vectors stated in the source; the others were fitted by face
    tracing and frozen.
    """

    fid: FamilyId
    k: int
    d2: int | None
    d_min: int
    disparate_per_unit: int
    common_per_unit: int
    printed: bool
    platonic: PlatonicId | None
    face_distance: int = 0
    symmetry: int = 1


_SPECS = [
    FamilySpec(FamilyId.CYCLE, 2, None, 3, 1, 0, True, None),
    FamilySpec(FamilyId.TETRA_THIN_CYCLE, 3, 3, 2, 3, 2, True, PlatonicId.TETRAHEDRON, 1),
    FamilySpec(FamilyId.PRISM, 3, 4, 3, 1, 1, True, PlatonicId.CUBE, 2, 4),
    FamilySpec(FamilyId.CUBE_THIN_CYCLE, 3, 4, 2, 4, 4, False, PlatonicId.CUBE, 1),
    FamilySpec(FamilyId.ANTIPRISM, 4, 3, 3, 1, 2, True, PlatonicId.OCTAHEDRON, 3, 3),
    FamilySpec(FamilyId.OCTA_THIN_CYCLE, 4, 3, 2, 3, 6, False, PlatonicId.OCTAHEDRON, 1),
    FamilySpec(FamilyId.OCTA_VERTEX_CYCLE, 4, 3, 2, 3, 6, True, PlatonicId.OCTAHEDRON, 2),
    FamilySpec(
        FamilyId.TRUNCATED_TRAPEZOHEDRON, 3, 5, 3, 1, 2, True, PlatonicId.DODECAHEDRON, 3, 5
    ),
    FamilySpec(FamilyId.DODECA_THIN_CYCLE, 3, 5, 2, 5, 10, False, PlatonicId.DODECAHEDRON, 1),
    FamilySpec(FamilyId.DODECA_THICK_CYCLE, 3, 5, 2, 5, 10, False, PlatonicId.DODECAHEDRON, 2),
    FamilySpec(FamilyId.ICOSA_THIN_CYCLE, 5, 3, 2, 3, 18, False, PlatonicId.ICOSAHEDRON, 1),
    FamilySpec(FamilyId.ICOSA_VERTEX_CYCLE, 5, 3, 2, 3, 18, False, PlatonicId.ICOSAHEDRON, 2),
    FamilySpec(FamilyId.ICOSA_THICK_CYCLE, 5, 3, 2, 3, 18, True, PlatonicId.ICOSAHEDRON, 4),
    FamilySpec(
        FamilyId.ICOSA_FAR_VERTEX_CYCLE, 5, 3, 2, 3, 18, False, PlatonicId.ICOSAHEDRON, 3
    ),
    FamilySpec(
        FamilyId.ICOSA_OPPOSITE_CYCLE, 5, 3, 3, 1, 6, False, PlatonicId.ICOSAHEDRON, 5, 3
    ),
]

FAMILY_SPECS: dict[FamilyId, FamilySpec] = {s.fid: s for s in _SPECS}

# Vertices and edges the two disparate faces have in common, per unit.
# Measured by face tracing on d_min..8 and frozen.
SHARED_PER_UNIT: dict[FamilyId, tuple[int, int]] = {
    FamilyId.CYCLE: (1, 1),
    FamilyId.TETRA_THIN_CYCLE: (2, 1),
    FamilyId.PRISM: (0, 0),
    FamilyId.CUBE_THIN_CYCLE: (2, 1),
    FamilyId.ANTIPRISM: (0, 0),
    FamilyId.OCTA_THIN_CYCLE: (2, 1),
    FamilyId.OCTA_VERTEX_CYCLE: (1, 0),
    FamilyId.TRUNCATED_TRAPEZOHEDRON: (0, 0),
    FamilyId.DODECA_THIN_CYCLE: (2, 1),
    FamilyId.DODECA_THICK_CYCLE: (0, 0),
    FamilyId.ICOSA_THIN_CYCLE: (2, 1),
    FamilyId.ICOSA_VERTEX_CYCLE: (1, 0),
    FamilyId.ICOSA_THICK_CYCLE: (0, 0),
    FamilyId.ICOSA_FAR_VERTEX_CYCLE: (0, 0),
    FamilyId.ICOSA_OPPOSITE_CYCLE: (0, 0),
}


@lru_cache(maxsize=None)
def family_unit(fid: FamilyId) -> UnitTemplate:
    spec = FAMILY_SPECS[fid]
    if spec.platonic is None:
        return cycle_unit()
    return platonic_unit(spec.platonic, spec.face_distance, spec.symmetry)


def disparate_degree(fid: FamilyId, d: int) -> int:
    return FAMILY_SPECS[fid].disparate_per_unit * d


def declared_face_vector(fid: FamilyId, d: int) -> dict[int, int]:
    spec = FAMILY_SPECS[fid]
    if d < spec.d_min:
        raise ParameterTooSmall(fid, d, spec.d_min)
    big = spec.disparate_per_unit * d
    vec = {big: 2}
    if spec.common_per_unit:
        vec[spec.d2] = vec.get(spec.d2, 0) + spec.common_per_unit * d
    return dict(sorted(vec.items()))


def generate_family(fid: FamilyId, d: int) -> PlanarMap:
    spec = FAMILY_SPECS[fid]
    if d < spec.d_min:
        raise ParameterTooSmall(fid, d, spec.d_min)
    try:
        return family_unit(fid).lift(d)
    except MapError as exc:
        raise ParameterTooSmall(fid, d, spec.d_min) from exc


def shift_labels(fid: FamilyId, d: int) -> list[int]:
    """Vertex permutation moving every unit copy one step around the cycle."""
    n = family_unit(fid).vertex_count
    return [(x + n) % (n * d) for x in range(n * d)]


# -- maps with three disparate faces -------------------------------------------------


def _distinct_degrees_fixture() -> PlanarMap:
    # diamonds (K4 minus an edge) strung along a path, closed by an arc over the top
    pts: list[tuple[float, float]] = []
    edges: list[tuple[int, int]] = []

    def add(p):
        pts.append(p)
        return len(pts) - 1

    def diamond(x0: float, x1: float):
        a = add((x0, 0.0))
        xm = (x0 + x1) / 2
        t = add((xm, 0.25))
        b = add((xm, -0.25))
        c = add((x1, 0.0))
        edges.extend([(a, t), (a, b), (t, b), (t, c), (b, c)])
        return a, c

    top = add((0.0, 6.0))
    origin = add((0.0, 0.0))
    g_top, g_left, g_bottom, g_right = add((0, 2)), add((-0.5, 1.5)), add((0, 1)), add((0.5, 1.5))
    edges += [
        (top, g_top), (g_top, g_left), (g_top, g_right), (g_left, g_right),
        (g_left, g_bottom), (g_right, g_bottom), (g_bottom, origin),
    ]
    r1 = diamond(0.5, 1.0)
    r2 = diamond(1.5, 2.0)
    r3 = diamond(2.5, 3.0)
    l1 = diamond(-0.5, -1.0)
    l2 = diamond(-2.5, -3.0)
    edges += [
        (origin, r1[0]), (r1[1], r2[0]), (r2[1], r3[0]),
        (origin, l1[0]), (l1[1], l2[0]),
        (r3[1], top), (l2[1], top),
    ]
    return from_coordinates(pts, edges)


def _square_fixture() -> PlanarMap:
    # 14-vertex drawing: four outer pentagons around two inner pentagons
    P = {
        "00": (0, 0), "05": (0, 5), "11": (1, 1), "13": (1, 2), "14": (1, 4),
        "23": (2, 3), "24": (3, 4), "31": (2, 1), "32": (3, 2), "41": (4, 1),
        "42": (4, 3), "44": (4, 4), "50": (5, 0), "55": (5, 5),
    }
    cycles = [
        ["00", "11", "13", "14", "05"],
        ["05", "55", "44", "24", "14"],
        ["55", "50", "41", "42", "44"],
        ["50", "41", "31", "11", "00"],
        ["11", "13", "23", "32", "31"],
        ["44", "24", "23", "32", "42"],
    ]
    names = list(P)
    idx = {n: i for i, n in enumerate(names)}
    edges = set()
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            edges.add(tuple(sorted((idx[a], idx[b]))))
    return from_coordinates([P[n] for n in names], sorted(edges))


def _hexagon_fixture() -> PlanarMap:
    # 26-vertex drawing: outer hexagon, a 12-cycle and an 8-cycle with rungs
    hexagon = [(3, 0), (-1, 3), (-1, 5), (3, 8), (7, 5), (7, 3)]
    ring12 = [(3, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (3, 7),
              (5, 6), (5, 5), (5, 4), (5, 3), (5, 2)]
    ring8 = [(3, 2), (2, 2), (2, 4), (2, 6), (3, 6), (4, 6), (4, 4), (4, 2)]
    rungs = [
        ((1, 6), (2, 6)), ((4, 6), (5, 6)), ((1, 4), (2, 4)), ((4, 4), (5, 4)),
        ((1, 2), (2, 2)), ((4, 2), (5, 2)), ((3, 2), (3, 6)),
        ((-1, 5), (1, 5)), ((5, 5), (7, 5)), ((-1, 3), (1, 3)), ((5, 3), (7, 3)),
        ((3, 0), (3, 1)), ((3, 7), (3, 8)),
    ]
    pts = hexagon + ring12 + ring8
    idx = {p: i for i, p in enumerate(pts)}
    edges = []
    for ring in (hexagon, ring12, ring8):
        edges += [(idx[a], idx[b]) for a, b in zip(ring, ring[1:] + ring[:1])]
    edges += [(idx[a], idx[b]) for a, b in rungs]
    return from_coordinates(pts, edges)


F3_FIXTURE_NOTES = {
    "distinct-degrees": "three disparate faces of pairwise distinct degree; the arc is straightened",
    "symmetric-14": "best-effort transcription of a shaded drawing; straight edges through "
    "marked points are split there",
    "symmetric-26": "best-effort transcription of a shaded drawing; the white triangles are "
    "hexagonal faces once the horizontal segments are split at marked points",
}


def f3_fixtures() -> list[PlanarMap]:
    return [_distinct_degrees_fixture(), _square_fixture(), _hexagon_fixture()]
