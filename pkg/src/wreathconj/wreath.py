"""Wreath products A wr B of finitely generated abelian groups.

Elements are pairs (f, b): f a finitely supported map B -> A, b in B.
The acting copy of B translates supports, (b.f)(x) = f(x - b), so the
support of b.f is supp(f) + b. Multiplication is
(f1, b1)(f2, b2) = (f1 + b1.f2, b1 + b2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .abelian import (
    AbelianElement,
    AbelianGroup,
    GroupMismatchError,
    element_order,
    format_group,
    parse_group,
    solve_multiple,
    word_length_abelian,
)


@dataclass(frozen=True)
class WreathGroup:
    lamp: AbelianGroup
    base: AbelianGroup

    def identity(self) -> "WreathElement":
        return WreathElement(self, (), self.base.zero())

    def element(
        self,
        f: Mapping[AbelianElement, AbelianElement] | Iterable,
        b,
    ) -> "WreathElement":
        items = f.items() if isinstance(f, Mapping) else f
        pairs = []
        for k, v in items:
            if not isinstance(k, AbelianElement):
                k = self.base.element(k)
            if not isinstance(v, AbelianElement):
                v = self.lamp.element(v)
            pairs.append((k, v))
        if not isinstance(b, AbelianElement):
            b = self.base.element(b)
        return WreathElement(self, tuple(pairs), b)

    def delta(self, key, value, b=None) -> "WreathElement":
        """Single-lamp element; b defaults to the identity."""
        return self.element([(key, value)], b if b is not None else self.base.zero())

    def order(self) -> Optional[int]:
        na, nb = self.lamp.order(), self.base.order()
        if na is None or nb is None:
            return None
        return na**nb * nb

    def __str__(self) -> str:
        return f"{format_group(self.lamp)} wr {format_group(self.base)}"


def _canonical_pairs(group: WreathGroup, pairs) -> tuple:
    merged: dict[AbelianElement, AbelianElement] = {}
    for k, v in pairs:
        if k.group != group.base:
            raise GroupMismatchError("support key outside the base group")
        if v.group != group.lamp:
            raise GroupMismatchError("lamp value outside the lamp group")
        merged[k] = merged[k] + v if k in merged else v
    out = [(k, v) for k, v in merged.items() if not v.is_zero()]
    out.sort(key=lambda kv: kv[0].coords)
    return tuple(out)


@dataclass(frozen=True)
class WreathElement:
    group: WreathGroup
    pairs: tuple
    b: AbelianElement

    def __post_init__(self):
        object.__setattr__(self, "pairs", _canonical_pairs(self.group, self.pairs))
        if self.b.group != self.group.base:
            raise GroupMismatchError("acting coordinate outside the base group")

    def f_map(self) -> dict[AbelianElement, AbelianElement]:
        return dict(self.pairs)

    def support(self) -> tuple[AbelianElement, ...]:
        return tuple(k for k, _ in self.pairs)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return multiply(self, other)

    def inv(self) -> "WreathElement":
        return inverse(self)

    def __str__(self) -> str:
        lamp = " + ".join(f"{v}@{k}" for k, v in self.pairs) or "0"
        return f"({lamp}, {self.b})"


def _check_same_group(g1: WreathElement, g2: WreathElement):
    if g1.group != g2.group:
        raise GroupMismatchError("elements of different wreath products")


def act(b: AbelianElement, g: WreathElement) -> WreathElement:
    """Translate the lamp configuration by b, fixing the acting part."""
    return WreathElement(
        g.group, tuple((k + b, v) for k, v in g.pairs), g.b
    )


def multiply(g1: WreathElement, g2: WreathElement) -> WreathElement:
    _check_same_group(g1, g2)
    shifted = tuple((k + g1.b, v) for k, v in g2.pairs)
    return WreathElement(g1.group, g1.pairs + shifted, g1.b + g2.b)


def inverse(g: WreathElement) -> WreathElement:
    nb = -g.b
    return WreathElement(
        g.group, tuple((k + nb, -v) for k, v in g.pairs), nb
    )


def conjugate(z: WreathElement, g: WreathElement) -> WreathElement:
    """z g z^{-1}."""
    return multiply(multiply(z, g), inverse(z))


# ---------------------------------------------------------------------------
# word length


def _walk_cost_line(points: list[int], end: int) -> int:
    lo = min(points + [0, end])
    hi = max(points + [0, end])
    return 2 * (hi - lo) - abs(end)


def _walk_cost_dp(points: list[AbelianElement], end: AbelianElement) -> int:
    # exact shortest walk 0 -> all points -> end, Held-Karp over <= 12 points
    pts = points
    n = len(pts)
    if n == 0:
        return word_length_abelian(end)
    dist0 = [word_length_abelian(p) for p in pts]
    dist = [[word_length_abelian(p - q) for q in pts] for p in pts]
    full = (1 << n) - 1
    best = [[None] * n for _ in range(1 << n)]
    for i in range(n):
        best[1 << i][i] = dist0[i]
    for mask in range(1, full + 1):
        row = best[mask]
        for last in range(n):
            cur = row[last]
            if cur is None or not (mask >> last) & 1:
                continue
            for nxt in range(n):
                if (mask >> nxt) & 1:
                    continue
                m2 = mask | (1 << nxt)
                cand = cur + dist[last][nxt]
                prev = best[m2][nxt]
                if prev is None or cand < prev:
                    best[m2][nxt] = cand
    return min(
        best[full][i] + word_length_abelian(end - pts[i]) for i in range(n)
    )


def _walk_cost_greedy(points: list[AbelianElement], end, zero) -> int:
    cur = zero
    remaining = sorted(points, key=lambda p: p.coords)
    total = 0
    while remaining:
        nxt = min(remaining, key=lambda p: (word_length_abelian(p - cur), p.coords))
        total += word_length_abelian(nxt - cur)
        cur = nxt
        remaining.remove(nxt)
    return total + word_length_abelian(end - cur)


def word_length_info(g: WreathElement) -> tuple[int, bool]:
    """(word length, exact flag).

    The walk part is exact on a free rank-one base for any support, and
    exact by dynamic programming up to 12 support points elsewhere;
    beyond that a nearest-neighbour upper bound is returned with the
    flag cleared.
    """
    base = g.group.base
    lamps = sum(word_length_abelian(v) for _, v in g.pairs)
    supp = list(g.support())
    if base.free_rank == 1 and not base.torsion:
        walk = _walk_cost_line([k.coords[0] for k in supp], g.b.coords[0])
        return walk + lamps, True
    if len(supp) <= 12:
        return _walk_cost_dp(supp, g.b) + lamps, True
    return _walk_cost_greedy(supp, g.b, base.zero()) + lamps, False


def word_length(g: WreathElement) -> int:
    return word_length_info(g)[0]


# ---------------------------------------------------------------------------
# coset bookkeeping along the cyclic subgroup generated by the acting part


def same_coset(x: AbelianElement, y: AbelianElement, b: AbelianElement) -> bool:
    return solve_multiple(x - y, b) is not None


def _coset_classes(points, b: AbelianElement) -> list[list[AbelianElement]]:
    classes: list[list[AbelianElement]] = []
    for p in sorted(points, key=lambda q: q.coords):
        for cls in classes:
            if same_coset(p, cls[0], b):
                cls.append(p)
                break
        else:
            classes.append([p])
    return classes


def _solve_twist(d: dict, b: AbelianElement, zero_lamp) -> Optional[dict]:
    """h with h - b.h = d, or None when some coset sum is nonzero."""
    support = [k for k, v in d.items() if not v.is_zero()]
    if not support:
        return {}
    if b.is_zero():
        return None
    order = element_order(b)
    h: dict[AbelianElement, AbelianElement] = {}
    for cls in _coset_classes(support, b):
        rep = cls[0]
        if order is None:
            offsets = {}
            for p in cls:
                t = solve_multiple(p - rep, b)
                assert t is not None
                offsets[t] = d[p]
            lo, hi = min(offsets), max(offsets)
            acc = zero_lamp
            for t in range(lo, hi + 1):
                if t in offsets:
                    acc = acc + offsets[t]
                if not acc.is_zero():
                    h[rep + t * b] = acc
            if not acc.is_zero():
                return None
        else:
            offsets = {}
            for p in cls:
                t = solve_multiple(p - rep, b)
                assert t is not None
                offsets[t % order] = d[p]
            acc = zero_lamp
            cells = []
            for t in range(order):
                if t in offsets:
                    acc = acc + offsets[t]
                cells.append((t, acc))
            if not acc.is_zero():
                return None
            for t, val in cells:
                if not val.is_zero():
                    h[rep + t * b] = val
    return h


def _f_difference(f2: dict, f1_shifted: dict, lamp: AbelianGroup) -> dict:
    out = dict(f2)
    zero = lamp.zero()
    for k, v in f1_shifted.items():
        out[k] = out.get(k, zero) - v
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# reduction to one support point per coset


def is_reduced(g: WreathElement) -> bool:
    return all(len(cls) == 1 for cls in _coset_classes(g.support(), g.b))


def reduce(g: WreathElement) -> tuple[WreathElement, WreathElement]:
    """Reduced conjugate plus a conjugator z with z g z^{-1} reduced.

    All lamp values inside one coset of <b> are accumulated onto the
    coset's least support point.
    """
    b = g.b
    f = g.f_map()
    target: dict[AbelianElement, AbelianElement] = {}
    for cls in _coset_classes(g.support(), b):
        total = f[cls[0]]
        for p in cls[1:]:
            total = total + f[p]
        if not total.is_zero():
            target[cls[0]] = total
    d = _f_difference(target, f, g.group.lamp)
    h = _solve_twist(d, b, g.group.lamp.zero())
    assert h is not None, "coset sums vanish by construction"
    z = WreathElement(g.group, tuple(h.items()), g.group.base.zero())
    reduced = WreathElement(g.group, tuple(target.items()), b)
    assert conjugate(z, g) == reduced
    return reduced, z


# ---------------------------------------------------------------------------
# translation of finite subsets of the base group


def all_translators(xs, ys) -> set[AbelianElement]:
    """All c with c + X = Y. Raises on empty input sets."""
    xs, ys = set(xs), set(ys)
    if not xs or not ys:
        raise ValueError("translator search needs nonempty sets")
    if len(xs) != len(ys):
        return set()
    x0 = min(xs, key=lambda p: p.coords)
    out = set()
    for y in ys:
        c = y - x0
        if {x + c for x in xs} == ys:
            out.add(c)
    return out


def is_translate(xs, ys) -> Optional[AbelianElement]:
    xs, ys = set(xs), set(ys)
    if not xs and not ys:
        raise ValueError("translator search needs nonempty sets")
    if not xs or not ys:
        return None
    found = all_translators(xs, ys)
    if not found:
        return None
    return min(found, key=lambda c: c.coords)


# ---------------------------------------------------------------------------
# conjugacy


def conjugate_test(g1: WreathElement, g2: WreathElement) -> Optional[WreathElement]:
    """A conjugating element, or None when g1 and g2 are not conjugate.

    For equal acting parts the criterion is: some translation c matches
    the coset-sum maps of the reduced lamp configurations, after which
    the leftover difference has vanishing coset sums and lifts to an
    explicit corrector. Candidate translations only matter modulo <b>,
    so they are read off support point differences. Every witness is
    re-verified by multiplication before it is returned.
    """
    _check_same_group(g1, g2)
    if g1.b != g2.b:
        return None
    r1, z1 = reduce(g1)
    r2, z2 = reduce(g2)
    b = r1.b
    f1, f2 = r1.f_map(), r2.f_map()
    s1, s2 = list(r1.support()), list(r2.support())
    if len(s1) != len(s2):
        return None
    if not s1:
        w = multiply(inverse(z2), z1)
        assert conjugate(w, g1) == g2
        return w
    x0 = min(s1, key=lambda p: p.coords)
    for y in sorted(s2, key=lambda p: p.coords):
        c = y - x0
        shifted = {k + c: v for k, v in f1.items()}
        used = set()
        for x, v in shifted.items():
            match = None
            for cand in s2:
                if cand not in used and same_coset(x, cand, b):
                    match = cand
                    break
            if match is None or f2[match] != v:
                break
            used.add(match)
        else:
            d = _f_difference(f2, shifted, g1.group.lamp)
            h = _solve_twist(d, b, g1.group.lamp.zero())
            if h is not None:
                inner = WreathElement(g1.group, tuple(h.items()), c)
                w = multiply(inverse(z2), multiply(inner, z1))
                if conjugate(w, g1) == g2:
                    return w
    return None


def brute_force_conjugate(
    g1: WreathElement, g2: WreathElement, budget: int = 10**6
) -> Optional[WreathElement]:
    """Exhaustive conjugator scan in a finite wreath product.

    Refuses when |A|^|B| * |B| exceeds the budget. Backed by the packed
    element kernel; the witness is decoded and re-verified.
    """
    from . import kernel

    _check_same_group(g1, g2)
    order = g1.group.order()
    if order is None:
        raise ValueError("brute force needs a finite wreath product")
    if order > budget:
        raise ValueError(f"group order {order} exceeds budget {budget}")
    kern = kernel.kernel_for(g1.group)
    zid = kern.find_conjugator(kernel.encode(kern, g1), kernel.encode(kern, g2))
    if zid is None:
        return None
    z = kernel.decode(kern, g1.group, zid)
    assert conjugate(z, g1) == g2
    return z


# ---------------------------------------------------------------------------
# quotients and retractions at the wreath level


def extend_quotient_acting(g: WreathElement, pi) -> WreathElement:
    """Apply a base-group quotient to keys and acting part, summing fibers."""
    target = WreathGroup(g.group.lamp, pi.target)
    acc: dict[AbelianElement, AbelianElement] = {}
    for k, v in g.pairs:
        kk = pi(k)
        acc[kk] = acc[kk] + v if kk in acc else v
    return WreathElement(target, tuple(acc.items()), pi(g.b))


def extend_quotient_base(g: WreathElement, pi) -> WreathElement:
    """Apply a lamp-group quotient to every value."""
    target = WreathGroup(pi.target, g.group.base)
    return WreathElement(
        target, tuple((k, pi(v)) for k, v in g.pairs), g.b
    )


@dataclass(frozen=True)
class Retraction:
    """Projection onto a subset of coordinates of an abelian group."""

    source: AbelianGroup
    free_keep: tuple[int, ...]
    torsion_keep: tuple[int, ...]

    @property
    def target(self) -> AbelianGroup:
        return AbelianGroup(
            len(self.free_keep),
            tuple(self.source.torsion[i] for i in self.torsion_keep),
        )

    def __call__(self, x: AbelianElement) -> AbelianElement:
        if x.group != self.source:
            raise GroupMismatchError("element outside the retraction source")
        free = x.free_part()
        tor = x.torsion_part()
        coords = tuple(free[i] for i in self.free_keep) + tuple(
            tor[i] for i in self.torsion_keep
        )
        return AbelianElement(self.target, coords)


def retract_wreath(
    g: WreathElement, rho_lamp: Retraction, rho_base: Retraction
) -> WreathElement:
    """Push (f, b) along coordinate retractions of both groups.

    Keys are projected with fibers summed, values are projected, the
    acting part is projected. On elements supported inside the kept
    coordinates this is the identity.
    """
    target = WreathGroup(rho_lamp.target, rho_base.target)
    acc: dict[AbelianElement, AbelianElement] = {}
    for k, v in g.pairs:
        kk = rho_base(k)
        vv = rho_lamp(v)
        acc[kk] = acc[kk] + vv if kk in acc else vv
    return WreathElement(target, tuple(acc.items()), rho_base(g.b))


# ---------------------------------------------------------------------------
# JSON encoding


def element_to_json(g: WreathElement) -> str:
    doc = {
        "A": format_group(g.group.lamp),
        "B": format_group(g.group.base),
        "f": [[list(k.coords), list(v.coords)] for k, v in g.pairs],
        "b": list(g.b.coords),
    }
    return json.dumps(doc, separators=(",", ":"))


def element_from_json(text: str | dict) -> WreathElement:
    doc = json.loads(text) if isinstance(text, str) else text
    for field in ("A", "B", "f", "b"):
        if field not in doc:
            raise ValueError(f"missing field {field!r}")
    lamp = parse_group(doc["A"])
    base = parse_group(doc["B"])
    group = WreathGroup(lamp, base)
    seen = set()
    pairs = []
    for entry in doc["f"]:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ValueError("support entries must be [key, value] pairs")
        k = AbelianElement(base, tuple(entry[0]))
        v = AbelianElement(lamp, tuple(entry[1]))
        if k in seen:
            raise ValueError(f"duplicate support key {k}")
        if v.is_zero():
            raise ValueError(f"zero lamp value at {k}")
        seen.add(k)
        pairs.append((k, v))
    return WreathElement(group, tuple(pairs), AbelianElement(base, tuple(doc["b"])))
