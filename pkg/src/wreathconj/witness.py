"""Finite quotients that witness nonconjugacy in A wr B.

Given a nonconjugate pair, build an explicit finite quotient separating
their conjugacy classes: first a modulus on the acting group that keeps
the reduced supports and their coset structure intact, then (for an
infinite lamp group) a modulus on the lamp group that keeps every range
value and every distinguishing value difference alive. Every quotient
is re-verified by running the conjugacy decision on the images.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Union

from .abelian import (
    AbelianElement,
    AbelianGroup,
    QuotientMap,
    format_group,
    quotient_mod,
    solve_multiple,
    word_length_abelian,
)
from .wreath import (
    WreathElement,
    WreathGroup,
    _coset_classes,
    all_translators,
    conjugate_test,
    element_to_json,
    extend_quotient_acting,
    extend_quotient_base,
    is_reduced,
    reduce,
)


class WitnessContractError(RuntimeError):
    """The inputs violate a nonconjugacy precondition, or a verified
    construction failed its own re-check."""


@dataclass(frozen=True)
class WitnessQuotient:
    """A finite quotient with verified nonconjugate images.

    `target` is either a finite wreath product or, for the shortcut when
    the acting parts already differ, a finite abelian group.
    """

    g1: WreathElement
    g2: WreathElement
    acting_map: Optional[QuotientMap]
    base_map: Optional[QuotientMap]
    target: Union[WreathGroup, AbelianGroup]
    image1: object
    image2: object
    certificate: str
    transcript: tuple = ()

    @property
    def order(self) -> int:
        n = self.target.order()
        assert n is not None
        return n

    def report(self) -> dict:
        target = (
            format_group(self.target)
            if isinstance(self.target, AbelianGroup)
            else str(self.target)
        )
        return {
            "input": [
                json.loads(element_to_json(self.g1)),
                json.loads(element_to_json(self.g2)),
            ],
            "acting_modulus": self.acting_map.modulus if self.acting_map else None,
            "base_modulus": self.base_map.modulus if self.base_map else None,
            "target": target,
            "target_order": self.order,
            "certificate": self.certificate,
            "transcript": list(self.transcript),
        }


def _exponent(B: AbelianGroup) -> int:
    e = 1
    for n in B.torsion:
        e = math.lcm(e, n)
    return e


def _difference_set(points) -> list[AbelianElement]:
    pts = list(points)
    out = {s - t for s in pts for t in pts}
    return sorted(out, key=lambda d: d.coords)


def _verify_modulus(pi: QuotientMap, b: AbelianElement, diffs) -> bool:
    images = [pi(d) for d in diffs]
    if len({im.coords for im in images}) != len(diffs):
        return False
    pb = pi(b)
    for d, im in zip(diffs, images):
        if (solve_multiple(d, b) is not None) != (solve_multiple(im, pb) is not None):
            return False
    return True


def separating_modulus(B: AbelianGroup, b: AbelianElement, supports, ell: int) -> int:
    """Least modulus m whose quotient is injective on the difference set
    of `supports` and preserves <b>-coset membership of every difference.

    The search starts at the rank-dependent threshold (4*ell for free
    rank one, k*2^k*(2*ell)^2 otherwise), runs over multiples of the
    rank-dependent divisor, and verifies both postconditions
    exhaustively before returning.
    """
    if b.group != B:
        raise ValueError("b must lie in B")
    if ell < 1:
        raise ValueError("ell must be positive")
    phi = b.free_part()
    if not any(phi):
        raise ValueError("b must have infinite-order free projection")
    supports = list(supports)
    for s in supports:
        if s.group != B:
            raise ValueError("support points must lie in B")
        if word_length_abelian(s) > ell:
            raise ValueError(f"support point {s.coords} outside Ball({ell})")
    k = B.free_rank
    e = _exponent(B)
    if k == 1:
        threshold = 4 * ell
        step = math.lcm(abs(phi[0]), e)
    else:
        threshold = k * 2**k * (2 * ell) ** 2
        step = math.lcm(math.gcd(*phi), e)
    m = -(-threshold // step) * step
    diffs = _difference_set(supports) if supports else []
    for _ in range(1000):
        if _verify_modulus(quotient_mod(B, m), b, diffs):
            return m
        m += step
    raise RuntimeError("no verified separating modulus found")


def translation_preserving_modulus(ell: int) -> int:
    """Modulus below which translation equivalence of subsets of
    Ball(ell) in Z is neither created nor destroyed."""
    if ell < 1:
        raise ValueError("ell must be positive")
    return 4 * ell


def rf_quotient(A: AbelianGroup, r: AbelianElement) -> QuotientMap:
    """Smallest quotient that keeps r alive.

    A nonzero torsion coordinate already survives the free collapse
    (modulus 1); otherwise the least m >= 2 with r nonzero mod m is
    found by direct search.
    """
    if r.group != A:
        raise ValueError("r must lie in A")
    if r.is_zero():
        raise ValueError("r must be nonzero")
    if any(r.torsion_part()):
        pi = quotient_mod(A, 1)
        assert not pi(r).is_zero()
        return pi
    m = 2
    while True:
        pi = quotient_mod(A, m)
        if not pi(r).is_zero():
            return pi
        m += 1


def _certificate_kind(r1: WreathElement, r2: WreathElement) -> str:
    s1, s2 = set(r1.support()), set(r2.support())
    if len(s1) != len(s2):
        return "support-size"
    if not all_translators(s1, s2):
        return "non-translate"
    return "value-mismatch"


def witness_acting_quotient(g1: WreathElement, g2: WreathElement) -> WitnessQuotient:
    """Quotient the acting group to a finite one keeping the images
    nonconjugate; when the lamp group is infinite the lamp quotient is
    composed on top so the returned target is always finite."""
    if g1.group != g2.group:
        raise ValueError("elements must share a group")
    if conjugate_test(g1, g2) is not None:
        raise WitnessContractError("inputs are conjugate; no witness exists")
    r1, _ = reduce(g1)
    r2, _ = reduce(g2)
    if r1.b != r2.b:
        raise ValueError("acting parts differ; use full_witness")
    B = g1.group.base
    A = g1.group.lamp
    b = r1.b
    kind = _certificate_kind(r1, r2) if (r1.pairs or r2.pairs) else "value-mismatch"
    transcript = [f"reduced pair shares acting part b = {b.coords}"]

    if B.order() is not None:
        acting_map = None
        h1, h2 = r1, r2
        transcript.append("acting group already finite; identity quotient")
    else:
        acting_map, h1, h2 = _acting_stage(r1, r2, transcript)

    witness = conjugate_test(h1, h2)
    if witness is not None:
        raise WitnessContractError("images conjugate in the acting quotient")
    transcript.append(f"images verified nonconjugate in {h1.group}")

    if A.order() is not None:
        return WitnessQuotient(
            g1, g2, acting_map, None, h1.group, h1, h2, kind, tuple(transcript)
        )

    transcript.append("lamp group infinite; composing lamp quotient")
    base_stage = witness_base_quotient(h1, h2)
    return WitnessQuotient(
        g1,
        g2,
        acting_map,
        base_stage.base_map,
        base_stage.target,
        base_stage.image1,
        base_stage.image2,
        kind,
        tuple(transcript) + base_stage.transcript,
    )


def _acting_stage(r1: WreathElement, r2: WreathElement, transcript: list):
    """Finite acting quotient keeping a reduced nonconjugate pair
    (shared acting part, infinite acting group) nonconjugate.

    The fed radius covers the support points and the acting part; the
    verification inside the modulus search still runs over the full
    difference set. A verified modulus can in rare cases still merge a
    shifted-support point with a support point, so the image pair is
    re-tested and the modulus bumped until the test fails again.
    """
    B = r1.group.base
    b = r1.b
    points = sorted(set(r1.support()) | set(r2.support()), key=lambda p: p.coords)
    diffs = _difference_set(points) if points else [B.zero()]
    ell = max(
        1,
        word_length_abelian(b),
        max((word_length_abelian(p) for p in points), default=1),
    )
    k = B.free_rank
    e = _exponent(B)
    phi = b.free_part()
    if any(phi):
        m = separating_modulus(B, b, points, ell)
        step = math.lcm(abs(phi[0]), e) if k == 1 else math.lcm(math.gcd(*phi), e)
        bound = 8 * ell * e if k == 1 else k * 2 ** (k + 2) * ell**2 * e
        transcript.append(f"separating modulus m = {m} at radius {ell}")
    else:
        # b is pure torsion inside an infinite acting group: a modulus
        # past twice every coordinate in sight separates exactly
        maxc = max((abs(c) for p in points for c in p.coords), default=0)
        m, step, bound = 1 + 2 * maxc, 1, None
        transcript.append("finite-order acting part; coordinate-range fallback")
    for _ in range(1000):
        pi = quotient_mod(B, m)
        if not _verify_modulus(pi, b, diffs):
            m += step
            continue
        h1 = extend_quotient_acting(r1, pi)
        h2 = extend_quotient_acting(r2, pi)
        if conjugate_test(h1, h2) is None:
            break
        m += step
    else:
        raise RuntimeError("no modulus kept the images nonconjugate")
    if bound is not None:
        assert m <= bound, f"modulus {m} above the tracked bound {bound}"
    size = pi.target.order()
    assert size is not None and size <= m**k * _torsion_order(B)
    transcript.append(f"acting modulus m = {m}, quotient target of order {size}")
    return pi, h1, h2


def _torsion_order(B: AbelianGroup) -> int:
    n = 1
    for t in B.torsion:
        n *= t
    return n


def _coset_value_mismatch_moduli(
    r1: WreathElement, r2: WreathElement, transcript: list
) -> list[QuotientMap]:
    """For every candidate translation, find a coset where the value
    multisets disagree and keep all values there separated."""
    s1 = sorted(r1.support(), key=lambda p: p.coords)
    s2 = sorted(r2.support(), key=lambda p: p.coords)
    if not s1 or not s2:
        return []
    A = r1.group.lamp
    f1, f2 = r1.f_map(), r2.f_map()
    b = r1.b
    x0 = s1[0]
    out = []
    for y in s2:
        c = y - x0
        shifted = {x + c: f1[x] for x in s1}
        classes = _coset_classes(sorted(set(shifted) | set(f2), key=lambda p: p.coords), b)
        for cls in classes:
            m1 = sorted(shifted[p].coords for p in cls if p in shifted)
            m2 = sorted(f2[p].coords for p in cls if p in f2)
            if m1 == m2:
                continue
            values = {tuple(v) for v in m1} | {tuple(v) for v in m2}
            values = [AbelianElement(A, v) for v in sorted(values)]
            for i, a in enumerate(values):
                for a2 in values[i + 1 :]:
                    out.append(rf_quotient(A, a - a2))
            transcript.append(
                f"translation c = {c.coords}: value multisets differ on the coset"
                f" of {cls[0].coords} ({len(values)} values kept separated)"
            )
            break
    return out


def witness_base_quotient(g1: WreathElement, g2: WreathElement) -> WitnessQuotient:
    """Quotient the lamp group to a finite one keeping reduced,
    nonconjugate inputs over a finite acting group nonconjugate.

    Every range value is kept alive, and for each candidate translation
    the values on one distinguishing coset stay pairwise separated, so
    the failing value comparison still fails downstairs.
    """
    if g1.group != g2.group:
        raise ValueError("elements must share a group")
    B = g1.group.base
    A = g1.group.lamp
    if B.order() is None:
        raise ValueError("acting group must be finite here")
    if not (is_reduced(g1) and is_reduced(g2)):
        raise ValueError("inputs must be reduced")
    if g1.b != g2.b:
        raise ValueError("acting parts differ; use full_witness")
    if conjugate_test(g1, g2) is not None:
        raise WitnessContractError("inputs are conjugate; no witness exists")
    kind = _certificate_kind(g1, g2) if (g1.pairs or g2.pairs) else "value-mismatch"
    transcript: list[str] = []

    maps = [rf_quotient(A, v) for _, v in g1.pairs + g2.pairs]
    range_moduli = sorted({pi.modulus for pi in maps})
    transcript.append(f"range values kept alive by moduli {range_moduli}")
    maps += _coset_value_mismatch_moduli(g1, g2, transcript)
    m = 1
    for pi in maps:
        m = math.lcm(m, pi.modulus)
    base_map = quotient_mod(A, m)
    h1 = extend_quotient_base(g1, base_map)
    h2 = extend_quotient_base(g2, base_map)
    transcript.append(f"lamp quotient modulus m = {m}")
    assert conjugate_test(h1, h2) is None, "lamp quotient failed to separate"
    transcript.append(f"images verified nonconjugate in {h1.group}")
    return WitnessQuotient(
        g1, g2, None, base_map, h1.group, h1, h2, kind, tuple(transcript)
    )


def full_witness(g1: WreathElement, g2: WreathElement) -> WitnessQuotient:
    """End-to-end separating quotient for a nonconjugate pair.

    Distinct acting parts are separated inside an abelian quotient of
    the acting group alone; otherwise the acting quotient (and, for an
    infinite lamp group, the composed lamp quotient) does the work.
    """
    if g1.group != g2.group:
        raise ValueError("elements must share a group")
    if g1.b != g2.b:
        diff = g1.b - g2.b
        pi = rf_quotient(g1.group.base, diff)
        i1, i2 = pi(g1.b), pi(g2.b)
        assert i1 != i2
        transcript = (
            f"acting parts differ by {diff.coords};"
            f" separated in {format_group(pi.target)}",
        )
        return WitnessQuotient(
            g1, g2, pi, None, pi.target, i1, i2, "acting-element", transcript
        )
    return witness_acting_quotient(g1, g2)
