"""Exact counting identities for regular plane graphs with a few odd faces.

Notation: every vertex has degree ``k``; ``f1`` faces have the disparate
degree ``d1`` and the remaining faces have the common degree ``d2``.
Everything is evaluated in :class:`fractions.Fraction`, never floats.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union


class UnsupportedF1(ValueError):
    """Positivity of phi is only known for at most three disparate faces."""


class DegenerateDenominator(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class Signature:
    """``(k; d_1^{n_1} ... d_t^{n_t})``: regularity plus face-degree multiset."""

    k: int
    faces: tuple[tuple[int, int], ...]

    def __init__(self, k: int, faces: Mapping[int, int] | Iterable[tuple[int, int]]):
        items = faces.items() if isinstance(faces, Mapping) else faces
        merged: dict[int, int] = {}
        for deg, cnt in items:
            if cnt < 0:
                raise ValueError(f"negative face count for degree {deg}")
            if cnt:
                merged[deg] = merged.get(deg, 0) + cnt
        if k < 2:
            raise ValueError("k must be at least 2")
        if any(d < 3 for d in merged) and k != 2:
            raise ValueError("faces must be at least triangles")
        # fewest-first, then larger degree first: disparate faces lead
        ordered = tuple(sorted(merged.items(), key=lambda dc: (dc[1], -dc[0])))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "faces", ordered)

    @property
    def face_count(self) -> int:
        return sum(c for _, c in self.faces)

    @property
    def t(self) -> int:
        return len(self.faces)

    def as_dict(self) -> dict[int, int]:
        return dict(self.faces)

    def dominant(self) -> int:
        """The common degree ``d2``: the most frequent degree (larger wins ties)."""
        return max(self.faces, key=lambda dc: (dc[1], dc[0]))[0]

    def disparate(self, d2: int | None = None) -> dict[int, int]:
        d2 = self.dominant() if d2 is None else d2
        return {d: c for d, c in self.faces if d != d2}

    def __str__(self) -> str:
        body = " ".join(f"{d}^{c}" for d, c in self.faces)
        return f"({self.k}; {body})"

    @classmethod
    def parse(cls, text: str) -> Signature:
        m = re.fullmatch(r"\s*\(\s*(\d+)\s*;\s*(.*?)\s*\)\s*", text)
        if not m:
            raise ValueError(f"not a signature: {text!r}")
        faces = []
        for tok in m.group(2).split():
            deg, _, cnt = tok.partition("^")
            faces.append((int(deg), int(cnt) if cnt else 1))
        return cls(int(m.group(1)), faces)


def phi(f1: int, d1: int, d2: int) -> Fraction:
    return 2 + Fraction(f1 * (d1 - d2), d2)


def curvature_term(k: int, d2: int) -> int:
    """``4 - (k-2)(d2-2)``; positive exactly for the five admissible pairs."""
    return 4 - (k - 2) * (d2 - 2)


def phi_from_edges(k: int, d2: int, e: int) -> Fraction:
    """Left-hand side of the phi identity evaluated on an actual map."""
    return Fraction(e, k * d2) * curvature_term(k, d2)


def admissible_pairs(f1: int) -> list[tuple[int, int]]:
    """All ``(k, d2)`` with ``k, d2 >= 3`` and ``(k-2)(d2-2) < 4``."""
    if f1 > 3:
        raise UnsupportedF1(f"no positivity guarantee for f1={f1}")
    if f1 < 0:
        raise ValueError("f1 must be non-negative")
    pairs = []
    for k in itertools.count(3):
        if (k - 2) * (3 - 2) >= 4:
            break
        for d2 in itertools.count(3):
            if (k - 2) * (d2 - 2) >= 4:
                break
            pairs.append((k, d2))
    return pairs


def total_faces(k: int, v: int, f1: int, d1: int, d2: int) -> Fraction:
    return Fraction(k * v - f1 * (d1 - d2), d2)


def vertex_count(k: int, d2: int, f1: int, d1: int) -> Fraction:
    """Vertices forced by Euler's formula: ``v(2d2 - k d2 + 2k) = 2 f1 d1 + (4 - 2 f1) d2``."""
    den = 2 * d2 - k * d2 + 2 * k
    if den <= 0:
        raise DegenerateDenominator(f"(k, d2)=({k}, {d2}) has no positive solution")
    return Fraction(2 * f1 * d1 + (4 - 2 * f1) * d2, den)


def vertices_for_one_disparate(k: int, d2: int, d1: int) -> Fraction:
    den = curvature_term(k, d2)
    if den <= 0:
        raise DegenerateDenominator(f"4-(k-2)(d2-2) = {den} for (k, d2)=({k}, {d2})")
    return Fraction(2 * (d1 + d2), den)


def platonic_vertex_count(k: int, d2: int) -> int:
    v = vertex_count(k, d2, 0, d2)
    if v.denominator != 1:
        raise ValueError(f"(k, d2)=({k}, {d2}) is not a Platonic pair")
    return int(v)


def disparate_degree_total(k: int, d2: int, f1: int, v: int) -> Fraction:
    """Sum of the ``f1`` disparate degrees forced by Euler with ``v`` vertices.

    With ``e = kv/2`` and ``f = 2 - v + e`` the common faces use
    ``(f - f1) d2`` darts, so the disparate faces share the rest.
    """
    e = Fraction(k * v, 2)
    f = 2 - v + e
    return 2 * e - (f - f1) * d2


# -- feasibility -------------------------------------------------------------


@dataclass(frozen=True)
class Feasible:
    def __bool__(self) -> bool:
        return True

    def __str__(self) -> str:
        return "FEASIBLE"


@dataclass(frozen=True)
class Infeasible:
    identity: str
    detail: str = ""

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"INFEASIBLE: {self.identity}" + (f" ({self.detail})" if self.detail else "")


Verdict = Union[Feasible, Infeasible]


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def feasibility_check(sig: Signature, v: int, d2: int | None = None) -> Verdict:
    """Necessary conditions for a k-regular plane graph with signature ``sig`` on ``v`` vertices.

    Passing does not imply existence.  The first failed identity is reported.
    """
    k = sig.k
    faces = sig.as_dict()
    d2 = sig.dominant() if d2 is None else d2
    disparate = sig.disparate(d2)
    f1 = sum(disparate.values())

    if len(disparate) == 1 and f1 <= 3 and k >= 3:
        (d1,) = disparate
        p = phi(f1, d1, d2)
        if p <= 0:
            return Infeasible("phi positivity", _frac(p))
        if curvature_term(k, d2) <= 0:
            return Infeasible("admissible pair", f"(k, d2)=({k}, {d2})")
        if f1 == 1:
            w = vertices_for_one_disparate(k, d2, d1)
            if w.denominator != 1:
                return Infeasible("one-disparate vertex count non-integral", _frac(w))
            if w != v:
                return Infeasible("one-disparate vertex count", f"needs v={w}")
    if (k * v) % 2:
        return Infeasible("handshake 2e = kv", f"kv = {k * v} is odd")
    e = k * v // 2
    if len(disparate) <= 1:
        d1 = next(iter(disparate), d2)
        f = total_faces(k, v, f1, d1, d2)
        if f.denominator != 1:
            return Infeasible("face count non-integral", _frac(f))
        lhs = v * (2 * d2 - k * d2 + 2 * k)
        rhs = 2 * f1 * d1 + (4 - 2 * f1) * d2
        if lhs != rhs:
            return Infeasible("vertex relation", f"{lhs} != {rhs}")
    dart_total = sum(d * c for d, c in faces.items())
    if dart_total != 2 * e:
        return Infeasible("face handshake 2e = sum of face degrees", f"{dart_total} != {2 * e}")
    if v - e + sig.face_count != 2:
        return Infeasible("euler v - e + f = 2", f"{v} - {e} + {sig.face_count}")
    return Feasible()
