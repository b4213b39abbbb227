"""Laurent polynomial model of R wr Z for R = Z or F_p.

An element (f, b) of R wr Z is stored as the pair (P, m) with
P = sum f(k) x^k and m = b; multiplication matches
(P1, m1)(P2, m2) = (P1 + x^{m1} P2, m1 + m2). Conjugacy classes,
cofinite ideals, and the finite quotients by split normal subgroups
J x| tZ are all handled in exact arithmetic.

Ring tags are integers: 0 for Z, a prime p for F_p.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass
from typing import Optional

from .abelian import AbelianGroup
from .wreath import WreathElement, WreathGroup


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _check_ring(ring: int):
    if ring != 0 and not is_prime(ring):
        raise ValueError(f"ring tag must be 0 (for Z) or a prime, got {ring}")


def parse_ring(text: str) -> int:
    s = text.strip().lower()
    if s == "z":
        return 0
    m = re.fullmatch(r"f(\d+)", s)
    if m and is_prime(int(m.group(1))):
        return int(m.group(1))
    raise ValueError(f"unknown ring {text!r}; use 'z' or 'f<p>' with p prime")


def format_ring(ring: int) -> str:
    return "z" if ring == 0 else f"f{ring}"


# ---------------------------------------------------------------------------
# Laurent polynomials


@dataclass(frozen=True)
class LaurentPoly:
    ring: int
    coeffs: tuple = ()

    def __post_init__(self):
        _check_ring(self.ring)
        acc: dict[int, int] = {}
        for e, c in self.coeffs:
            acc[e] = acc.get(e, 0) + c
        if self.ring:
            acc = {e: c % self.ring for e, c in acc.items()}
        object.__setattr__(
            self, "coeffs", tuple(sorted((e, c) for e, c in acc.items() if c))
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Optional[int]:
        return self.coeffs[-1][0] if self.coeffs else None

    @property
    def low(self) -> Optional[int]:
        return self.coeffs[0][0] if self.coeffs else None

    def coeff(self, e: int) -> int:
        for exp, c in self.coeffs:
            if exp == e:
                return c
        return 0

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_add(self, poly_neg(other))

    def __neg__(self):
        return poly_neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.ring, tuple((e, other * c) for e, c in self.coeffs))
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_laurent(self)


def zero_poly(ring: int) -> LaurentPoly:
    return LaurentPoly(ring)


def one_poly(ring: int) -> LaurentPoly:
    return LaurentPoly(ring, ((0, 1),))


def x_power(ring: int, e: int, c: int = 1) -> LaurentPoly:
    return LaurentPoly(ring, ((e, c),))


def xt_minus_1(ring: int, t: int) -> LaurentPoly:
    return LaurentPoly(ring, ((t, 1), (0, -1)))


def _same_ring(a: LaurentPoly, b: LaurentPoly):
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: {format_ring(a.ring)} vs {format_ring(b.ring)}")


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _same_ring(a, b)
    return LaurentPoly(a.ring, a.coeffs + b.coeffs)


def poly_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return poly_add(a, poly_neg(b))


def poly_neg(a: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(a.ring, tuple((e, -c) for e, c in a.coeffs))


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _same_ring(a, b)
    acc: dict[int, int] = {}
    for e1, c1 in a.coeffs:
        for e2, c2 in b.coeffs:
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return LaurentPoly(a.ring, tuple(acc.items()))


def poly_shift(a: LaurentPoly, m: int) -> LaurentPoly:
    """Multiply by x^m."""
    return LaurentPoly(a.ring, tuple((e + m, c) for e, c in a.coeffs))


# ---------------------------------------------------------------------------
# dense helpers; coefficient lists indexed from exponent 0, top entry nonzero


def _trim(cs: list[int], p: int) -> list[int]:
    if p:
        cs = [c % p for c in cs]
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _normalize(P: LaurentPoly) -> tuple[int, list[int]]:
    """(a, cs) with P = x^a * cs-polynomial and cs[0] != 0; zero -> (0, [])."""
    if not P.coeffs:
        return 0, []
    lo, hi = P.coeffs[0][0], P.coeffs[-1][0]
    cs = [0] * (hi - lo + 1)
    for e, c in P.coeffs:
        cs[e - lo] = c
    return lo, cs


def _from_dense(ring: int, a: int, cs) -> LaurentPoly:
    return LaurentPoly(ring, tuple((a + i, c) for i, c in enumerate(cs)))


def _dmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out, p)


def _dsub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out, p)


def _ddivmod(num, den, p):
    num = _trim(list(num), p)
    den = _trim(list(den), p)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead = den[-1]
    if p:
        inv = pow(lead, -1, p)
    elif lead not in (1, -1):
        raise ValueError("integer polynomial division needs leading coefficient 1 or -1")
    q = [0] * max(0, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        cur = num[i + len(den) - 1] % p if p else num[i + len(den) - 1]
        if not cur:
            continue
        f = cur * inv % p if p else cur * lead
        q[i] = f
        for j, dc in enumerate(den):
            num[i + j] -= f * dc
    return _trim(q, p), _trim(num[: len(den) - 1], p)


def _dgcd(a, b, p):
    a, b = _trim(list(a), p), _trim(list(b), p)
    while b:
        a, b = b, _ddivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _dpow_x(e: int, mod, p):
    """x^e reduced mod `mod` over F_p."""
    result = _ddivmod([1], mod, p)[1]
    base = _ddivmod([0, 1], mod, p)[1]
    while e:
        if e & 1:
            result = _ddivmod(_dmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _ddivmod(_dmul(base, base, p), mod, p)[1]
    return result


def _dirreducible(g, p) -> bool:
    g = _trim(list(g), p)
    n = len(g) - 1
    if n < 1:
        return False
    x = _ddivmod([0, 1], g, p)[1]
    if _dsub(_dpow_x(p**n, g, p), x, p):
        return False
    for r in _prime_factors(n):
        h = _dsub(_dpow_x(p ** (n // r), g, p), x, p)
        if len(_dgcd(g, h, p)) != 1:
            return False
    return True


def is_irreducible_fp(P: LaurentPoly) -> bool:
    if P.ring == 0:
        raise ValueError("irreducibility test works over F_p only")
    _, cs = _normalize(P)
    return _dirreducible(cs, P.ring)


def _laurent_div(D: LaurentPoly, E: LaurentPoly) -> Optional[LaurentPoly]:
    """Exact quotient D / E in the Laurent ring, or None if E does not divide D."""
    _same_ring(D, E)
    if D.is_zero():
        return zero_poly(D.ring)
    aD, nD = _normalize(D)
    aE, nE = _normalize(E)
    if not nE:
        return None
    q, r = _ddivmod(nD, nE, D.ring)
    if r:
        return None
    return _from_dense(D.ring, aD - aE, q)


# ---------------------------------------------------------------------------
# text format: `c*x^e` terms joined by + and -


_TERM_RE = re.compile(r"(?:(\d+)\*?)?x(?:\^(~?\d+))?")


def parse_laurent(text: str, ring: int) -> LaurentPoly:
    s = text.replace(" ", "").replace("**", "^").replace("^+", "^").replace("^-", "^~")
    if not s:
        raise ValueError("empty polynomial")
    tokens = re.findall(r"[+-]?[^+-]+", s)
    if "".join(tokens) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    pairs = []
    for tok in tokens:
        sign = -1 if tok[0] == "-" else 1
        body = tok.lstrip("+-")
        m = _TERM_RE.fullmatch(body)
        if m:
            c = int(m.group(1)) if m.group(1) else 1
            es = m.group(2)
            e = 1 if es is None else (-int(es[1:]) if es[0] == "~" else int(es))
        elif body.isdigit():
            c, e = int(body), 0
        else:
            raise ValueError(f"cannot parse term {tok!r} in {text!r}")
        pairs.append((e, sign * c))
    return LaurentPoly(ring, tuple(pairs))


def format_laurent(P: LaurentPoly) -> str:
    if P.is_zero():
        return "0"
    parts = []
    for e, c in sorted(P.coeffs, reverse=True):
        mag, sign = abs(c), "-" if c < 0 else "+"
        if e == 0:
            body = str(mag)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            body = xs if mag == 1 else f"{mag}*{xs}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = head if head_sign == "+" else "-" + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# the semidirect product R[x, x^-1] x| Z


@dataclass(frozen=True)
class SemidirectElement:
    poly: LaurentPoly
    shift: int

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return semidirect_mul(self, other)

    def inv(self) -> "SemidirectElement":
        return semidirect_inv(self)

    def __str__(self) -> str:
        return format_semidirect(self)


def semidirect_identity(ring: int) -> SemidirectElement:
    return SemidirectElement(zero_poly(ring), 0)


def semidirect_mul(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    return SemidirectElement(
        poly_add(a.poly, poly_shift(b.poly, a.shift)), a.shift + b.shift
    )


def semidirect_inv(a: SemidirectElement) -> SemidirectElement:
    return SemidirectElement(poly_neg(poly_shift(a.poly, -a.shift)), -a.shift)


def semidirect_conjugate(z: SemidirectElement, g: SemidirectElement) -> SemidirectElement:
    return semidirect_mul(semidirect_mul(z, g), semidirect_inv(z))


def parse_semidirect(text: str, ring: int) -> SemidirectElement:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if "," not in s:
        raise ValueError(f"expected '(P, m)', got {text!r}")
    left, right = s.rsplit(",", 1)
    return SemidirectElement(parse_laurent(left, ring), int(right.strip()))


def format_semidirect(g: SemidirectElement) -> str:
    return f"({format_laurent(g.poly)}, {g.shift})"


def wreath_group_for_ring(ring: int) -> WreathGroup:
    _check_ring(ring)
    lamp = AbelianGroup(1) if ring == 0 else AbelianGroup(0, (ring,))
    return WreathGroup(lamp, AbelianGroup(1))


def ring_of_wreath_group(W: WreathGroup) -> int:
    if W.base != AbelianGroup(1):
        raise ValueError("acting group must be Z")
    if W.lamp == AbelianGroup(1):
        return 0
    if (
        W.lamp.free_rank == 0
        and len(W.lamp.torsion) == 1
        and is_prime(W.lamp.torsion[0])
    ):
        return W.lamp.torsion[0]
    raise ValueError("lamp group must be Z or Z/p with p prime")


def from_wreath(g: WreathElement) -> SemidirectElement:
    ring = ring_of_wreath_group(g.group)
    return SemidirectElement(
        LaurentPoly(ring, tuple((k.coords[0], v.coords[0]) for k, v in g.pairs)),
        g.b.coords[0],
    )


def to_wreath(s: SemidirectElement) -> WreathElement:
    W = wreath_group_for_ring(s.poly.ring)
    return W.element([((e,), (c,)) for e, c in s.poly.coeffs], (s.shift,))


# ---------------------------------------------------------------------------
# conjugacy in R[x, x^-1] x| Z

# Conjugating (P, m) by (Q, c) gives (x^c P + (1 - x^m) Q, m), so the
# class of (P, m) is { (x^l P + (x^m - 1) Q, m) : l in Z, Q arbitrary }
# and l may be reduced mod |m| when m is nonzero.


def same_conjugacy_class(
    g1: SemidirectElement, g2: SemidirectElement
) -> Optional[tuple[int, LaurentPoly]]:
    """Certificate (l, Q) with P2 = x^l P1 + (x^m - 1) Q, or None."""
    _same_ring(g1.poly, g2.poly)
    if g1.shift != g2.shift:
        return None
    ring = g1.poly.ring
    m = g1.shift
    if m == 0:
        if g1.poly.is_zero() and g2.poly.is_zero():
            return 0, zero_poly(ring)
        if g1.poly.is_zero() or g2.poly.is_zero():
            return None
        a1, n1 = _normalize(g1.poly)
        a2, n2 = _normalize(g2.poly)
        if n1 == n2:
            return a2 - a1, zero_poly(ring)
        return None
    E = xt_minus_1(ring, m)
    for ell in range(abs(m)):
        D = poly_sub(g2.poly, poly_shift(g1.poly, ell))
        Q = _laurent_div(D, E)
        if Q is not None:
            assert poly_add(poly_shift(g1.poly, ell), poly_mul(E, Q)) == g2.poly
            return ell, Q
    return None


# ---------------------------------------------------------------------------
# split normal subgroups J x| tZ


@dataclass(frozen=True)
class FpSplitSubgroup:
    """Subgroup (P) x| tZ of F_p[x, x^-1] x| Z, P monic with P(0) != 0."""

    p: int
    t: int
    gen: LaurentPoly

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError("p must be prime")
        if self.t < 1:
            raise ValueError("t must be positive")
        g = self.gen
        if g.ring != self.p:
            raise ValueError("generator ring mismatch")
        if g.is_zero():
            raise ValueError("generator must be nonzero")
        if g.low != 0:
            raise ValueError("generator needs a nonzero constant term")
        if g.coeffs[-1][1] != 1:
            raise ValueError("generator must be monic")
        if not self.contains(xt_minus_1(self.p, self.t)):
            raise ValueError("x^t - 1 must lie in the ideal")

    @property
    def ring(self) -> int:
        return self.p

    @property
    def quotient_ring_order(self) -> int:
        return self.p**self.gen.degree

    @property
    def index(self) -> int:
        return self.t * self.quotient_ring_order

    def contains(self, P: LaurentPoly) -> bool:
        if P.is_zero():
            return True
        _, cs = _normalize(P)
        _, gd = _normalize(self.gen)
        return not _ddivmod(cs, gd, self.p)[1]

    def __str__(self) -> str:
        return f"({format_laurent(self.gen)}) x| {self.t}Z over F{self.p}"


def _rotate(vec: tuple) -> tuple:
    return (vec[-1],) + vec[:-1]


def _span(gens, d: int, width: int) -> frozenset:
    """Additive span of the generators inside (Z/d)^width."""
    zero = (0,) * width
    span = {zero}
    for g in gens:
        g = tuple(c % d for c in g)
        if g in span:
            continue
        multiples = [zero]
        cur = g
        while cur != zero:
            multiples.append(cur)
            cur = tuple((a + b) % d for a, b in zip(cur, g))
        span = {tuple((a + b) % d for a, b in zip(s, m)) for s in span for m in multiples}
    return frozenset(span)


def _close_vectors(vs, d: int, width: int) -> frozenset:
    """Smallest rotation-closed subgroup of (Z/d)^width containing vs."""
    gens = []
    for v in vs:
        v = tuple(c % d for c in v)
        for _ in range(width):
            gens.append(v)
            v = _rotate(v)
    return _span(gens, d, width)


@dataclass(frozen=True)
class ZSplitSubgroup:
    """Subgroup J x| tZ of Z[x, x^-1] x| Z.

    J is the preimage of the ideal spanned by `vectors` inside
    (Z/d)[x]/(x^t0 - 1); coefficient vectors are indexed by exponent
    mod t0. The characteristic d = 1 encodes the unit ideal. The shift
    t must be a multiple of t0 so that x^t - 1 lies in J.
    """

    d: int
    t0: int
    vectors: frozenset
    t: int

    def __post_init__(self):
        if self.d < 1 or self.t0 < 1 or self.t < 1:
            raise ValueError("d, t0, t must be positive")
        if self.t % self.t0:
            raise ValueError("shift must be a multiple of the ideal period")
        vs = frozenset(tuple(c % self.d for c in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vs)
        for v in vs:
            if len(v) != self.t0:
                raise ValueError("vector width must equal the ideal period")
        if vs != _close_vectors(vs, self.d, self.t0):
            raise ValueError("ideal data must be closed under sums and x-shifts")

    @property
    def ring(self) -> int:
        return 0

    @property
    def quotient_ring_order(self) -> int:
        return self.d**self.t0 // len(self.vectors)

    @property
    def index(self) -> int:
        return self.t * self.quotient_ring_order

    def vec(self, P: LaurentPoly) -> tuple:
        if P.ring != 0:
            raise ValueError("ring mismatch")
        out = [0] * self.t0
        for e, c in P.coeffs:
            out[e % self.t0] = (out[e % self.t0] + c) % self.d
        return tuple(out)

    def contains(self, P: LaurentPoly) -> bool:
        return self.vec(P) in self.vectors

    def __str__(self) -> str:
        return (
            f"(d={self.d}, period {self.t0}, ideal size {len(self.vectors)})"
            f" x| {self.t}Z over Z"
        )


def _canonical_ideal(d: int, t0: int, V: frozenset) -> bool:
    # characteristic is really d: no smaller positive constant in the ideal
    for c in range(1, d):
        if (c,) + (0,) * (t0 - 1) in V:
            return False
    # period is really t0: x^s - 1 outside the ideal for proper divisors s
    for r in _prime_factors(t0):
        s = t0 // r
        vec = [0] * t0
        vec[s] = 1
        vec[0] = (vec[0] - 1) % d
        if tuple(vec) in V:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _ideals_mod(d: int, t0: int) -> list[frozenset]:
    """All rotation-closed subgroups of (Z/d)^t0, i.e. ideals of
    (Z/d)[x]/(x^t0 - 1). The scan is expensive, so results are kept
    for the life of the process; callers must not mutate them."""
    zero = (0,) * t0
    vectors = list(itertools.product(range(d), repeat=t0))
    base = frozenset({zero})
    found = {base}
    queue = [base]
    while queue:
        ideal = queue.pop()
        for v in vectors:
            if v in ideal:
                continue
            bigger = _close_vectors(ideal | {v}, d, t0)
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return sorted(found, key=lambda V: (len(V), tuple(sorted(V))))


def enumerate_split_subgroups_fp(p: int, max_index: int) -> list[FpSplitSubgroup]:
    """Every (t, monic P | x^t - 1, P(0) != 0) with t * p^deg P <= max_index,
    sorted by nondecreasing index."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if max_index < 1:
        raise ValueError("max_index must be positive")
    subs = []
    for t in range(1, max_index + 1):
        dmax = 0
        while t * p ** (dmax + 1) <= max_index:
            dmax += 1
        factors = _bounded_factorization(p, t, dmax)
        for exps in itertools.product(*(range(m + 1) for _, m in factors)):
            deg = sum(e * (len(f) - 1) for (f, _), e in zip(factors, exps))
            if deg > dmax:
                continue
            gen = [1]
            for (f, _), e in zip(factors, exps):
                for _ in range(e):
                    gen = _dmul(gen, f, p)
            subs.append(FpSplitSubgroup(p, t, _from_dense(p, 0, gen)))
    subs.sort(key=lambda N: (N.index, N.t, N.gen.degree, N.gen.coeffs))
    return subs


def _bounded_factorization(p: int, t: int, dmax: int) -> list[tuple[list, int]]:
    """Irreducible factors of x^t - 1 over F_p of degree <= dmax, with
    multiplicity."""
    target = [p - 1] + [0] * (t - 1) + [1]
    out = []
    for deg in range(1, dmax + 1):
        for tail in itertools.product(range(p), repeat=deg - 1):
            for c0 in range(1, p):
                cand = [c0, *tail, 1]
                if not _dirreducible(cand, p):
                    continue
                mult = 0
                cur = target
                while True:
                    q, r = _ddivmod(cur, cand, p)
                    if r:
                        break
                    mult += 1
                    cur = q
                if mult:
                    out.append((cand, mult))
    return out


def enumerate_split_subgroups_z(
    max_index: int, ceiling: int = 1 << 20
) -> list[ZSplitSubgroup]:
    """Every subgroup J x| tZ of Z[x, x^-1] x| Z of index <= max_index,
    each exactly once, sorted by nondecreasing index.

    Ideals are scanned inside (Z/d)^t0; a block whose scan would exceed
    `ceiling` vectors is refused. Each ideal is kept only in its
    canonical presentation: d the true characteristic of the quotient
    and t0 the least period, so no subgroup appears twice.
    """
    if max_index < 1:
        raise ValueError("max_index must be positive")
    subs = []
    for t in range(1, max_index + 1):
        subs.append(ZSplitSubgroup(1, 1, frozenset({(0,)}), t))
    for d in range(2, max_index + 1):
        t0 = 1
        # any subgroup from block (d, t0) has index >= t0 * max(d, t0 + 1):
        # the quotient ring contains Z/d and a unit of multiplicative order t0
        while t0 * max(d, t0 + 1) <= max_index:
            if d**t0 > ceiling:
                raise ValueError(
                    f"ideal scan for d={d}, period {t0} needs {d**t0} vectors,"
                    f" above the ceiling {ceiling}"
                )
            for V in _ideals_mod(d, t0):
                if not _canonical_ideal(d, t0, V):
                    continue
                quot = d**t0 // len(V)
                t = t0
                while t * quot <= max_index:
                    subs.append(ZSplitSubgroup(d, t0, V, t))
                    t += t0
            t0 += 1
    subs.sort(key=lambda N: (N.index, N.d, N.t0, N.t, tuple(sorted(N.vectors))))
    return subs


# ---------------------------------------------------------------------------
# conjugacy in the quotient by a split subgroup


def conjugate_in_split_quotient(
    g1: SemidirectElement, g2: SemidirectElement, N
) -> bool:
    """Whether the images of g1 and g2 are conjugate in the finite
    quotient by N.

    The image criterion: shifts agree mod t, and P2 - x^l P1 lies in
    J + (x^{m mod t} - 1) for some l below the period.
    """
    if g1.poly.ring != N.ring or g2.poly.ring != N.ring:
        raise ValueError("ring mismatch")
    if (g1.shift - g2.shift) % N.t:
        return False
    mprime = g1.shift % N.t
    if isinstance(N, FpSplitSubgroup):
        p = N.p
        _, gd = _normalize(N.gen)
        if mprime:
            xm = [p - 1] + [0] * (mprime - 1) + [1]
            g0 = _dgcd(gd, xm, p)
        else:
            g0 = gd
        for ell in range(N.t):
            D = poly_sub(g2.poly, poly_shift(g1.poly, ell))
            if D.is_zero():
                return True
            _, cs = _normalize(D)
            if not _ddivmod(cs, g0, p)[1]:
                return True
        return False
    extra = N.vec(xt_minus_1(0, mprime))
    reachable = _close_vectors(N.vectors | {extra}, N.d, N.t0)
    for ell in range(N.t0):
        D = poly_sub(g2.poly, poly_shift(g1.poly, ell))
        if N.vec(D) in reachable:
            return True
    return False


def image_in_split_quotient(g: SemidirectElement, N):
    """Canonical image of g in the quotient by N.

    Over F_p: (remainder of P mod the generator, shift mod t), using
    x^t = 1 to clear negative exponents. Over Z: (least coset vector,
    shift mod t).
    """
    if g.poly.ring != N.ring:
        raise ValueError("ring mismatch")
    if isinstance(N, FpSplitSubgroup):
        folded = LaurentPoly(N.p, tuple((e % N.t, c) for e, c in g.poly.coeffs))
        dense = [0] * N.t
        for e, c in folded.coeffs:
            dense[e] = c
        _, gd = _normalize(N.gen)
        rep = _ddivmod(dense, gd, N.p)[1]
        return _from_dense(N.p, 0, rep), g.shift % N.t
    v = N.vec(g.poly)
    rep = min(
        tuple((a + b) % N.d for a, b in zip(v, w)) for w in N.vectors
    )
    return rep, g.shift % N.t


# ---------------------------------------------------------------------------
# gcd reduction certificates for ideals (x^m - 1, x^n - 1, d)


@dataclass(frozen=True)
class ModIdealCertificate:
    """Exact witnesses u, w, v for
    x^m - 1 = u (x^g - 1)  and  x^g - 1 = w (x^m - 1) + v (x^n - 1)
    with g = gcd(m, n) = t m + s n."""

    m: int
    n: int
    d: int
    g: int
    t: int
    s: int
    u: LaurentPoly
    w: LaurentPoly
    v: LaurentPoly


def _unit_cofactor(a: int, k: int) -> LaurentPoly:
    """C with x^{a k} - 1 = (x^a - 1) C, valid for either sign of k."""
    if k >= 0:
        return LaurentPoly(0, tuple((a * i, 1) for i in range(k)))
    pos = LaurentPoly(0, tuple((a * i, 1) for i in range(-k)))
    return poly_shift(poly_neg(pos), a * k)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def mod_ideal_reduce(m: int, n: int, d: int = 0) -> ModIdealCertificate:
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    g, t, s = _egcd(m, n)
    u = _unit_cofactor(g, m // g)
    w = _unit_cofactor(m, t)
    v = poly_shift(_unit_cofactor(n, s), t * m)
    cert = ModIdealCertificate(m, n, d, g, t, s, u, w, v)
    assert verify_mod_ideal(cert)
    return cert


def verify_mod_ideal(c: ModIdealCertificate) -> bool:
    first = xt_minus_1(0, c.m) == poly_mul(c.u, xt_minus_1(0, c.g))
    second = xt_minus_1(0, c.g) == poly_add(
        poly_mul(c.w, xt_minus_1(0, c.m)), poly_mul(c.v, xt_minus_1(0, c.n))
    )
    return first and second and c.g == math.gcd(c.m, c.n) == c.t * c.m + c.s * c.n


# ---------------------------------------------------------------------------
# the cyclic-quotient polynomials 1 + x + ... + x^{q-1}


def psi_poly(q: int, ring: int = 0) -> LaurentPoly:
    if not is_prime(q):
        raise ValueError("q must be prime")
    return LaurentPoly(ring, tuple((i, 1) for i in range(q)))


def primitive_root_primes(p: int, count: int) -> list[int]:
    """First `count` primes q > p with p a primitive root mod q; the
    polynomial 1 + x + ... + x^{q-1} is then irreducible over F_p."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    out = []
    q = p
    while len(out) < count:
        q += 1
        if not is_prime(q):
            continue
        order, cur = 1, p % q
        while cur != 1:
            cur = cur * p % q
            order += 1
        if order == q - 1:
            assert is_irreducible_fp(psi_poly(q, p))
            out.append(q)
    return out
