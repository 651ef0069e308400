"""Backtracking construction of rotation systems by tracing faces.

The search fixes the face permutation one dart at a time.  Setting
``nxt[a->b] = b->c`` says both "the face through ``a->b`` continues to
``c``" and "``c`` follows ``a`` around ``b``".  Open face chains carry their
length so that face-degree constraints prune early, and vertex labels are
handed out in discovery order, so every rooted oriented map is reached by
exactly one branch.
"""

from __future__ import annotations

import time
from dataclasses import dataclass


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, seconds: float):
        super().__init__(f"budget exhausted after {nodes} nodes / {seconds:.1f}s")
        self.nodes = nodes
        self.seconds = seconds


@dataclass(frozen=True)
class FaceRule:
    """Face-degree constraints for one search cell.

    With ``d2=None`` any face degree is accepted and only Euler's formula
    is enforced.  Otherwise there are exactly ``n2`` faces of degree ``d2``
    and ``f1`` disparate faces whose degrees (each ``!= d2`` and, if
    ``allowed`` is set, drawn from it) add up to ``total``.  With
    ``root_disparate`` the face through the root dart is disparate.
    """

    faces: int
    d2: int | None = None
    n2: int = 0
    f1: int = 0
    total: int = 0
    allowed: frozenset[int] | None = None
    root_disparate: bool = False


class Tracer:
    def __init__(
        self,
        k: int,
        v: int,
        rule: FaceRule,
        *,
        chord_pruning: bool = False,
        max_nodes: int | None = None,
        max_seconds: float | None = None,
    ):
        self.k = k
        self.v = v
        self.rule = rule
        self.chord_pruning = chord_pruning
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0
        self.pruned = 0
        m = k * v
        self.m = m
        self.tail = [0] * m
        self.head = [0] * m
        self.nxt = [-1] * m
        self.prv = [-1] * m
        self.cstart = [0] * m
        self.cend = [0] * m
        self.clen = [0] * m
        self.croot = [False] * m
        self.eid = [[-1] * v for _ in range(v)]
        self.deg = [0] * v
        self.outd: list[list[int]] = [[] for _ in range(v)]
        # nverts, ndarts, closed faces, closed darts, common, disparate,
        # disparate darts, root closed
        self.sc = [0, 0, 0, 0, 0, 0, 0, 0]
        self.trail: list = []
        self.root_set: list[set[int] | None] = [None]

    # -- trail ----------------------------------------------------------------

    def _set(self, arr, i, val):
        self.trail.append((arr, i, arr[i]))
        arr[i] = val

    def _undo(self, mark):
        trail = self.trail
        while len(trail) > mark:
            arr, i, old = trail.pop()
            if i < 0:
                arr.pop()
            else:
                arr[i] = old

    # -- primitives -------------------------------------------------------------

    def _new_vertex(self) -> int:
        u = self.sc[0]
        self._set(self.sc, 0, u + 1)
        return u

    def _new_edge(self, b: int, c: int) -> int:
        x = self.sc[1]
        self._set(self.sc, 1, x + 2)
        for d, s, t in ((x, b, c), (x + 1, c, b)):
            self.tail[d] = s
            self.head[d] = t
            self.nxt[d] = -1
            self.prv[d] = -1
            self.cstart[d] = d
            self.cend[d] = d
            self.clen[d] = 1
            self.croot[d] = False
            self._set(self.eid[s], t, d)
            self._set(self.deg, s, self.deg[s] + 1)
            self.outd[s].append(d)
            self.trail.append((self.outd[s], -1, None))
        return x

    def _max_len(self, root_chain: bool) -> int:
        """Longest face any open chain of this kind can still become."""
        r = self.rule
        sc = self.sc
        if r.d2 is None:
            remaining = r.faces - sc[2]
            return 2 * (self.k * self.v // 2) - sc[3] - 3 * (remaining - 1)
        slots = r.f1 - sc[5]
        if r.root_disparate and not sc[7] and not root_chain:
            slots -= 1
        best_disp = 0
        if slots > 0:
            best_disp = r.total - sc[6] - 3 * (r.f1 - sc[5] - 1)
            if r.allowed is not None:
                best_disp = min(best_disp, max(r.allowed))
        if root_chain and r.root_disparate:
            return best_disp
        common = r.d2 if sc[4] < r.n2 else 0
        return max(common, best_disp)

    def _close_ok(self, length: int, root_chain: bool) -> bool:
        r = self.rule
        sc = self.sc
        if r.d2 is None:
            return length >= 3
        if length == r.d2 and not (root_chain and r.root_disparate):
            return sc[4] < r.n2
        if length == r.d2 or length < 3:
            return False
        slots = r.f1 - sc[5]
        if r.root_disparate and not sc[7] and not root_chain:
            slots -= 1
        if slots <= 0:
            return False
        if r.allowed is not None and length not in r.allowed:
            return False
        left = r.total - sc[6] - length
        later = r.f1 - sc[5] - 1
        if later == 0:
            return left == 0
        return left >= 3 * later

    def _link(self, x: int, y: int) -> bool:
        """Set ``nxt[x] = y``; return False if a constraint breaks."""
        s = self.cstart[x]
        root_chain = self.croot[s] or self.croot[y]
        self._set(self.nxt, x, y)
        self._set(self.prv, y, x)
        sc = self.sc
        if s == y:
            length = self.clen[s]
            if not self._close_ok(length, root_chain):
                return False
            r = self.rule
            self._set(sc, 2, sc[2] + 1)
            self._set(sc, 3, sc[3] + length)
            if r.d2 is not None:
                if length == r.d2 and not (root_chain and r.root_disparate):
                    self._set(sc, 4, sc[4] + 1)
                else:
                    self._set(sc, 5, sc[5] + 1)
                    self._set(sc, 6, sc[6] + length)
            if root_chain:
                self._set(sc, 7, 1)
                if self.chord_pruning:
                    self._mark_root_face(y)
            return True
        e = self.cend[y]
        length = self.clen[s] + self.clen[y]
        self._set(self.cend, s, e)
        self._set(self.cstart, e, s)
        self._set(self.clen, s, length)
        if root_chain:
            self._set(self.croot, s, True)
        limit = self._max_len(root_chain)
        if length > limit:
            return False
        if length == limit and self.head[e] != self.tail[s]:
            return False
        return True

    def _mark_root_face(self, start: int) -> None:
        verts = []
        x = start
        while True:
            verts.append(self.tail[x])
            x = self.nxt[x]
            if x == start:
                break
        if len(set(verts)) == len(verts):
            self._set(self.root_set, 0, set(verts))

    # -- search -------------------------------------------------------------------

    def _choose_gap(self) -> int:
        nxt = self.nxt
        best = -1
        best_key = None
        k = self.k
        deg = self.deg
        for x in range(self.sc[1]):
            if nxt[x] != -1:
                continue
            s = self.cstart[x]
            length = self.clen[s]
            limit = self._max_len(self.croot[s])
            if length >= limit - 1:
                return x
            key = (deg[self.head[x]] == k, length)
            if best_key is None or key > best_key:
                best, best_key = x, key
        return best

    def _rotation_path_head(self, x: int) -> tuple[int, int]:
        """Head out-dart of the rotation path ending at ``head[x] -> tail[x]``, and its size."""
        o = x ^ 1
        size = 1
        prv = self.prv
        while prv[o] != -1:
            o = prv[o] ^ 1
            size += 1
        return o, size

    def _options(self, x: int):
        b = self.head[x]
        k = self.k
        h, size = self._rotation_path_head(x)
        heads = [y for y in self.outd[b] if self.prv[y] == -1]
        s = self.cstart[x]
        length = self.clen[s]
        limit = self._max_len(self.croot[s])
        target = self.tail[s]
        for y in heads:
            if y == h:
                if size == k and self.deg[b] == k:
                    yield ("link", y, 0)
            else:
                yield ("link", y, 0)
        if self.deg[b] >= k:
            return
        if length + 1 >= limit:
            # the face must close on the very next dart
            if length + 1 == limit and target != b:
                c = target
                if self.eid[b][c] == -1 and self.deg[c] < k:
                    yield ("edge", b, c)
            return
        on_root = self.root_set[0]
        nverts = self.sc[0]
        eid_b = self.eid[b]
        for c in range(nverts):
            if c != b and eid_b[c] == -1 and self.deg[c] < k:
                if on_root is not None and b in on_root and c in on_root:
                    self.pruned += 1
                    continue
                yield ("edge", b, c)
        if nverts < self.v:
            yield ("vertex", b, 0)

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(self.nodes, time.monotonic() - self.t0)
        if self.max_seconds is not None and not self.nodes & 1023:
            el = time.monotonic() - self.t0
            if el > self.max_seconds:
                raise BudgetExceeded(self.nodes, el)

    def _rotations(self) -> list[list[int]]:
        rots = []
        for b in range(self.v):
            o0 = self.outd[b][0]
            rot = []
            o = o0
            while True:
                rot.append(self.head[o])
                o = self.nxt[o ^ 1]
                if o == o0:
                    break
            rots.append(rot)
        return rots

    def _complete(self) -> bool:
        r = self.rule
        sc = self.sc
        if sc[0] != self.v:
            return False
        if r.d2 is None:
            return sc[2] == r.faces
        return sc[4] == r.n2 and sc[5] == r.f1

    def run(self, emit) -> None:
        """Call ``emit(rotations)`` for every completed rooted map."""
        self.t0 = time.monotonic()
        if self.v < 2:
            return
        self._new_vertex()
        self._new_vertex()
        x = self._new_edge(0, 1)
        self.croot[x] = True
        self._recurse(emit)

    def _recurse(self, emit) -> None:
        self._tick()
        x = self._choose_gap()
        if x < 0:
            if self._complete():
                emit(self._rotations())
            return
        for kind, p, q in list(self._options(x)):
            mark = len(self.trail)
            if kind == "link":
                ok = self._link(x, p)
            else:
                b = p
                c = q if kind == "edge" else self._new_vertex()
                y = self._new_edge(b, c)
                ok = self._link(x, y)
            if ok:
                self._recurse(emit)
            self._undo(mark)
