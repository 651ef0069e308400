"""Isomorph-free enumeration of regular plane maps with prescribed faces.

A task is split into independent *cells*, one per vertex count (and, with a
single disparate face, per disparate degree).  Each cell first passes the
counting identities; survivors are handed to the face-tracing backtracker in
:mod:`nearplat._tracer`, and the completed maps are deduplicated by canonical
code.  Cells that hit their node or time budget come back ``UNKNOWN`` and
never count as evidence of nonexistence.
"""

from __future__ import annotations

import hashlib
import itertools
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from ._tracer import BudgetExceeded, FaceRule, Tracer
from .counting import (
    Infeasible,
    Signature,
    admissible_pairs,
    disparate_degree_total,
    feasibility_check,
    total_faces,
    vertices_for_one_disparate,
)
from .families import FAMILY_SPECS, FamilyId, ParameterTooSmall, generate_family
from .planar_map import PlanarMap, canonical_code, face_vector, genus, is_regular

COMPLETE = "COMPLETE"
UNKNOWN = "UNKNOWN"

DEFAULT_BUDGET_NODES = 10**8
DEFAULT_BUDGET_SECS = 300.0


class ResourceBudgetExceeded(RuntimeError):
    """Raised on request when a report holds cells that ran out of budget."""


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SearchTask:
    """What to enumerate.

    ``d2=None`` drops every face constraint except Euler's formula (used to
    compare against the brute-force oracle).  ``d1=None`` lets disparate
    faces take any degree other than ``d2``; otherwise each disparate face
    takes a degree from the tuple.
    """

    k: int
    d2: int | None
    f1: int = 0
    d1: tuple[int, ...] | None = None
    v_max: int = 0
    v_min: int = 1
    policy: str = "face-trace"
    lemma3_pruning: bool = False
    budget_nodes: int | None = DEFAULT_BUDGET_NODES
    budget_secs: float | None = DEFAULT_BUDGET_SECS

    def __post_init__(self):
        if self.policy != "face-trace":
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.d1 is not None:
            object.__setattr__(self, "d1", tuple(sorted(set(self.d1))))
        if self.d2 is None:
            if self.f1 or self.d1:
                raise ValueError("disparate faces need a common degree d2")
            if self.k < 3:
                raise ValueError("k must be at least 3")
            return
        if (self.k, self.d2) not in admissible_pairs(self.f1):
            raise ValueError(f"(k, d2)=({self.k}, {self.d2}) is not admissible")
        if self.d1 is not None and (self.d2 in self.d1 or min(self.d1) < 3):
            raise ValueError("disparate degrees must be >= 3 and differ from d2")
        if self.lemma3_pruning and self.f1 != 1:
            raise ValueError("chord pruning is only sound with one disparate face")

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "d2": self.d2,
            "f1": self.f1,
            "d1": list(self.d1) if self.d1 is not None else None,
            "v_min": self.v_min,
            "v_max": self.v_max,
            "policy": self.policy,
            "lemma3_pruning": self.lemma3_pruning,
            "budget_nodes": self.budget_nodes,
            "budget_secs": self.budget_secs,
        }


@dataclass(frozen=True)
class Cell:
    v: int
    degrees: tuple[int, ...] | None  # allowed disparate degrees; None when unconstrained
    rule: FaceRule


@dataclass(frozen=True)
class PrunedCell:
    v: int | Fraction
    label: str
    reason: str


@dataclass
class CellResult:
    k: int
    d2: int | None
    f1: int
    v: int
    degrees: tuple[int, ...] | None
    status: str
    witnesses: list[tuple[bytes, PlanarMap]]
    rooted_maps: int
    nodes: int
    chord_prunes: int
    seconds: float

    @property
    def class_count(self) -> int:
        return len(self.witnesses)

    def signatures(self) -> dict[str, int]:
        sigs = Counter(str(Signature(self.k, face_vector(m))) for _, m in self.witnesses)
        return dict(sorted(sigs.items()))


@dataclass
class SearchReport:
    task: SearchTask
    cells: list[CellResult]
    pruned: list[PrunedCell]
    seconds: float = 0.0

    @property
    def complete(self) -> bool:
        return all(c.status == COMPLETE for c in self.cells)

    def witnesses(self) -> list[tuple[bytes, PlanarMap]]:
        return [w for c in self.cells for w in c.witnesses]

    def codes(self) -> set[bytes]:
        return {code for code, _ in self.witnesses()}

    def pruning_stats(self) -> dict[str, int]:
        return dict(sorted(Counter(p.reason.split(" (")[0] for p in self.pruned).items()))

    def raise_if_incomplete(self) -> None:
        bad = [c for c in self.cells if c.status != COMPLETE]
        if bad:
            where = ", ".join(f"v={c.v}" for c in bad)
            raise ResourceBudgetExceeded(f"cells without a complete answer: {where}")


# -- cells ------------------------------------------------------------------------


def _degree_multisets(f1: int, total: int, d2: int, allowed) -> list[tuple[int, ...]]:
    pool = sorted(allowed) if allowed is not None else [d for d in range(3, total + 1) if d != d2]
    return [
        combo
        for combo in itertools.combinations_with_replacement(pool, f1)
        if sum(combo) == total
    ]


def _one_disparate_cells(task: SearchTask):
    k, d2 = task.k, task.d2
    den = 4 - (k - 2) * (d2 - 2)
    top = (task.v_max * den) // 2 - d2
    pool = task.d1 if task.d1 is not None else [d for d in range(3, top + 1) if d != d2]
    for d1 in pool:
        v = vertices_for_one_disparate(k, d2, d1)
        if v > task.v_max or v < task.v_min:
            continue
        label = f"d1={d1}"
        if v.denominator != 1:
            yield PrunedCell(v, label, f"one-disparate vertex count non-integral ({v})")
            continue
        v = int(v)
        f = total_faces(k, v, 1, d1, d2)
        if f.denominator != 1:
            yield PrunedCell(v, label, f"face count non-integral ({f})")
            continue
        sig = Signature(k, {d1: 1, d2: int(f) - 1})
        verdict = feasibility_check(sig, v, d2)
        if isinstance(verdict, Infeasible):
            yield PrunedCell(v, str(sig), verdict.identity + f" ({verdict.detail})")
            continue
        rule = FaceRule(
            faces=int(f), d2=d2, n2=int(f) - 1, f1=1, total=d1,
            allowed=frozenset((d1,)), root_disparate=True,
        )
        yield Cell(v, (d1,), rule)


def _vertex_cells(task: SearchTask):
    k, d2, f1 = task.k, task.d2, task.f1
    for v in range(max(task.v_min, k + 1), task.v_max + 1):
        if (k * v) % 2:
            yield PrunedCell(v, "", f"handshake 2e = kv (kv = {k * v} is odd)")
            continue
        e = k * v // 2
        faces = 2 - v + e
        if d2 is None:
            yield Cell(v, None, FaceRule(faces=faces))
            continue
        total = disparate_degree_total(k, d2, f1, v)
        if total.denominator != 1 or total < 3 * f1:
            yield PrunedCell(v, "", f"disparate degree total unattainable ({total})")
            continue
        total = int(total)
        combos = _degree_multisets(f1, total, d2, task.d1)
        if not combos:
            yield PrunedCell(v, "", f"no allowed disparate degrees sum to {total}")
            continue
        alive, first = [], None
        for combo in combos:
            counts = Counter(combo)
            counts[d2] += faces - f1
            verdict = feasibility_check(Signature(k, counts), v, d2)
            if isinstance(verdict, Infeasible):
                first = first or verdict
            else:
                alive.append(combo)
        if not alive:
            yield PrunedCell(v, "", f"{first.identity} ({first.detail})")
            continue
        degrees = tuple(sorted({d for c in alive for d in c}))
        rule = FaceRule(
            faces=faces, d2=d2, n2=faces - f1, f1=f1, total=total,
            allowed=frozenset(degrees), root_disparate=f1 > 0,
        )
        yield Cell(v, degrees, rule)


def plan_cells(task: SearchTask) -> tuple[list[Cell], list[PrunedCell]]:
    """Split a task into searchable cells and cells refuted by counting alone."""
    gen = _one_disparate_cells(task) if task.f1 == 1 else _vertex_cells(task)
    cells, pruned = [], []
    for item in gen:
        (cells if isinstance(item, Cell) else pruned).append(item)
    cells.sort(key=lambda c: (c.v, c.degrees or ()))
    return cells, pruned


def run_cell(task: SearchTask, cell: Cell) -> CellResult:
    found: dict[bytes, PlanarMap] = {}
    rooted = 0

    def emit(rotations):
        nonlocal rooted
        rooted += 1
        pm = PlanarMap(rotations)
        code = canonical_code(pm)
        if code not in found:
            found[code] = pm

    tracer = Tracer(
        task.k,
        cell.v,
        cell.rule,
        chord_pruning=task.lemma3_pruning,
        max_nodes=task.budget_nodes,
        max_seconds=task.budget_secs,
    )
    t0 = time.monotonic()
    status = COMPLETE
    try:
        tracer.run(emit)
    except BudgetExceeded:
        status = UNKNOWN
    return CellResult(
        k=task.k,
        d2=task.d2,
        f1=task.f1,
        v=cell.v,
        degrees=cell.degrees,
        status=status,
        witnesses=sorted(found.items()),
        rooted_maps=rooted,
        nodes=tracer.nodes,
        chord_prunes=tracer.pruned,
        seconds=time.monotonic() - t0,
    )


def _run_cell_args(args):
    return run_cell(*args)


def default_threads() -> int:
    raw = os.environ.get("NEARPLAT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def enumerate_maps(task: SearchTask, threads: int | None = None) -> SearchReport:
    """Run every cell of ``task``; results come back in cell order whatever ``threads`` is."""
    threads = default_threads() if threads is None else max(1, threads)
    t0 = time.monotonic()
    cells, pruned = plan_cells(task)
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_cell_args, [(task, c) for c in cells]))
    else:
        results = [run_cell(task, c) for c in cells]
    return SearchReport(task, results, pruned, time.monotonic() - t0)


def report_digest(reports) -> str:
    """SHA-256 over the timing-free content of one or more reports."""
    h = hashlib.sha256()
    for rep in reports:
        h.update(repr(sorted(rep.task.as_dict().items())).encode())
        for c in rep.cells:
            h.update(f"{c.k},{c.d2},{c.f1},{c.v},{c.degrees},{c.status}".encode())
            for code, _ in c.witnesses:
                h.update(code)
        for p in rep.pruned:
            h.update(f"{p.v}|{p.label}|{p.reason}".encode())
    return h.hexdigest()


# -- theorem and conjecture harnesses -------------------------------------------------

THEOREM_BOUNDS = {(3, 3): 14, (3, 4): 12, (3, 5): 14, (4, 3): 12, (5, 3): 16}


@dataclass
class TheoremReport:
    reports: list[SearchReport]
    digest: str

    @property
    def cells(self) -> list[CellResult]:
        return [c for r in self.reports for c in r.cells]

    @property
    def holds(self) -> bool:
        """True when every cell finished and found nothing."""
        return all(c.status == COMPLETE and c.class_count == 0 for c in self.cells)

    def achieved_bounds(self) -> dict[tuple[int, int], int]:
        """Largest ``v`` per pair below which every searched cell is complete."""
        out = {}
        for rep in self.reports:
            bound = rep.task.v_max
            for c in rep.cells:
                if c.status != COMPLETE:
                    bound = min(bound, c.v - 1)
            out[(rep.task.k, rep.task.d2)] = bound
        return out


def verify_theorem_one_disparate(
    bounds: dict[tuple[int, int], int] | int | None = None,
    *,
    lemma3_pruning: bool = False,
    budget_nodes: int | None = DEFAULT_BUDGET_NODES,
    budget_secs: float | None = DEFAULT_BUDGET_SECS,
    threads: int | None = None,
) -> TheoremReport:
    """Search every single-disparate-face cell up to the given vertex bounds."""
    if bounds is None:
        bounds = THEOREM_BOUNDS
    elif isinstance(bounds, int):
        bounds = {pair: bounds for pair in admissible_pairs(1)}
    reports = []
    for k, d2 in admissible_pairs(1):
        if (k, d2) not in bounds:
            continue
        task = SearchTask(
            k, d2, f1=1, v_max=bounds[(k, d2)], lemma3_pruning=lemma3_pruning,
            budget_nodes=budget_nodes, budget_secs=budget_secs,
        )
        reports.append(enumerate_maps(task, threads))
    return TheoremReport(reports, report_digest(reports))


def family_codes(k: int, d2: int, v_max: int) -> dict[bytes, tuple[FamilyId, int]]:
    """Canonical codes of every family member with the given ``(k, d2)`` and at most ``v_max`` vertices."""
    out: dict[bytes, tuple[FamilyId, int]] = {}
    for fid, spec in FAMILY_SPECS.items():
        if (spec.k, spec.d2) != (k, d2):
            continue
        for d in itertools.count(spec.d_min):
            try:
                pm = generate_family(fid, d)
            except ParameterTooSmall:
                continue
            if pm.vertex_count > v_max:
                break
            out.setdefault(canonical_code(pm), (fid, d))
    return out


@dataclass
class ConjectureReport:
    report: SearchReport
    unequal: list[tuple[bytes, PlanarMap]]
    recovered: dict[bytes, tuple[FamilyId, int]]
    unexplained: list[tuple[bytes, PlanarMap]]

    @property
    def holds(self) -> bool:
        return self.report.complete and not self.unequal


def _disparate_degrees(pm: PlanarMap, d2: int) -> list[int]:
    return sorted(f.degree for f in pm.faces if f.degree != d2)


def check_conjecture_equal_degrees(
    k: int,
    d2: int,
    v_max: int,
    *,
    budget_nodes: int | None = DEFAULT_BUDGET_NODES,
    budget_secs: float | None = DEFAULT_BUDGET_SECS,
    threads: int | None = None,
) -> ConjectureReport:
    """Look for two-disparate-face maps whose disparate faces differ in degree.

    Equal-degree witnesses are matched against the known families; those
    that match none are listed as unexplained.
    """
    task = SearchTask(k, d2, f1=2, v_max=v_max, budget_nodes=budget_nodes, budget_secs=budget_secs)
    rep = enumerate_maps(task, threads)
    known = family_codes(k, d2, v_max)
    unequal, recovered, unexplained = [], {}, []
    for code, pm in rep.witnesses():
        a, b = _disparate_degrees(pm, d2)
        if a != b:
            unequal.append((code, pm))
        elif code in known:
            recovered[code] = known[code]
        else:
            unexplained.append((code, pm))
    return ConjectureReport(rep, unequal, recovered, unexplained)


# -- brute-force oracle ---------------------------------------------------------------

ORACLE_CAP = 10


def _regular_graphs(k: int, v: int):
    """Connected k-regular simple graphs on ``v`` vertices, one per isomorphism class."""
    import networkx as nx

    deg = [0] * v
    adj = [[False] * v for _ in range(v)]
    edges: list[tuple[int, int]] = []
    buckets: dict[str, list] = {}

    def fill(u: int, start: int):
        if u == v:
            g = nx.Graph(edges)
            if g.number_of_nodes() == v and nx.is_connected(g):
                key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(g, h) for h in bucket):
                    bucket.append(g)
            return
        if deg[u] == k:
            fill(u + 1, u + 2)
            return
        for w in range(start, v):
            if deg[w] < k and not adj[u][w]:
                adj[u][w] = adj[w][u] = True
                deg[u] += 1
                deg[w] += 1
                edges.append((u, w))
                fill(u, w + 1)
                edges.pop()
                deg[u] -= 1
                deg[w] -= 1
                adj[u][w] = adj[w][u] = False

    # vertex 0 is adjacent to 1..k in some labelling of every graph
    for w in range(1, k + 1):
        adj[0][w] = adj[w][0] = True
        deg[w] = 1
        edges.append((0, w))
    deg[0] = k
    fill(1, 2)
    return [g for key in sorted(buckets) for g in buckets[key]]


def _planar_rotation_systems(g, k: int, chunk: int = 1 << 16):
    """All rotation systems of ``g`` with Euler characteristic 2, by exhaustive product."""
    import numpy as np

    v = g.number_of_nodes()
    nbrs = [sorted(g.neighbors(u)) for u in range(v)]
    dart = {}
    for u in range(v):
        for w in nbrs[u]:
            dart[(u, w)] = len(dart)
    m = len(dart)
    rev = np.array([dart[(w, u)] for (u, w) in dart], dtype=np.int64)
    # cyclic orders fixing the first neighbour
    perms = [(0, *p) for p in itertools.permutations(range(1, k))]
    # table[u, pi, a] = dart after a around u under order pi
    table = np.zeros((v, len(perms), m), dtype=np.int64)
    for u in range(v):
        for pi, p in enumerate(perms):
            for j in range(k):
                a = dart[(u, nbrs[u][p[j]])]
                table[u, pi, a] = dart[(u, nbrs[u][p[(j + 1) % k]])]
    owner = np.array([u for (u, _) in dart], dtype=np.int64)
    faces_needed = 2 - v + m // 2
    total = len(perms) ** v
    ident = np.arange(m)
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk))
        digits = (idx[:, None] // len(perms) ** np.arange(v)) % len(perms)
        # succ[r, a]: rotation successor of dart a at its tail vertex
        succ = table[owner[None, :], digits[:, owner], ident[None, :]]
        # the face after u->w is w->succ_w(u): successor of the reverse dart
        phi = succ[:, rev]
        rows = np.arange(len(idx))[:, None]
        low = np.broadcast_to(ident, phi.shape).copy()
        cur = phi.copy()
        for _ in range(m):
            np.minimum(low, cur, out=low)
            cur = phi[rows, cur]
        counts = (low == ident).sum(axis=1)
        for r in np.nonzero(counts == faces_needed)[0]:
            rots = [[nbrs[u][j] for j in perms[digits[r, u]]] for u in range(v)]
            yield PlanarMap(rots)


def brute_force_oracle(k: int, v: int, cap: int = ORACLE_CAP) -> list[bytes]:
    """Canonical codes of all k-regular genus-0 maps on exactly ``v`` vertices.

    Generates every graph and every rotation system; only meant for tiny ``v``.
    """
    if v > cap:
        raise CapExceeded(f"v={v} is above the oracle cap {cap}")
    if (k * v) % 2 or v <= k:
        return []
    import networkx as nx

    codes = set()
    for g in _regular_graphs(k, v):
        if not nx.check_planarity(g)[0]:
            continue
        for pm in _planar_rotation_systems(g, k):
            assert genus(pm) == 0 and is_regular(pm, k)
            codes.add(canonical_code(pm))
    return sorted(codes)
