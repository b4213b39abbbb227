import itertools
import random

import pytest

from wreathconj.laurent import (
    FpSplitSubgroup,
    LaurentPoly,
    SemidirectElement,
    ZSplitSubgroup,
    conjugate_in_split_quotient,
    enumerate_split_subgroups_fp,
    enumerate_split_subgroups_z,
    format_laurent,
    format_semidirect,
    from_wreath,
    image_in_split_quotient,
    is_irreducible_fp,
    is_prime,
    mod_ideal_reduce,
    one_poly,
    parse_laurent,
    parse_ring,
    parse_semidirect,
    poly_add,
    poly_mul,
    poly_neg,
    poly_shift,
    poly_sub,
    primitive_root_primes,
    psi_poly,
    same_conjugacy_class,
    semidirect_conjugate,
    semidirect_identity,
    semidirect_inv,
    semidirect_mul,
    to_wreath,
    verify_mod_ideal,
    wreath_group_for_ring,
    x_power,
    xt_minus_1,
    zero_poly,
)
from wreathconj.wreath import conjugate, conjugate_test, multiply


def random_poly(rng, ring, span=6, terms=4, coeff=5):
    pairs = []
    for _ in range(rng.randrange(terms + 1)):
        c = rng.randrange(1, ring) if ring else rng.choice([c for c in range(-coeff, coeff + 1) if c])
        pairs.append((rng.randrange(-span, span + 1), c))
    return LaurentPoly(ring, tuple(pairs))


def test_ring_axioms_randomized():
    rng = random.Random(40001)
    for ring in (0, 2, 3, 5):
        for _ in range(400):
            a = random_poly(rng, ring)
            b = random_poly(rng, ring)
            c = random_poly(rng, ring)
            assert poly_add(a, b) == poly_add(b, a)
            assert poly_mul(a, b) == poly_mul(b, a)
            assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))
            assert poly_mul(poly_add(a, b), c) == poly_add(poly_mul(a, c), poly_mul(b, c))
            assert poly_add(a, zero_poly(ring)) == a
            assert poly_mul(a, one_poly(ring)) == a
            assert poly_add(a, poly_neg(a)).is_zero()
            m = rng.randrange(-4, 5)
            assert poly_shift(a, m) == poly_mul(a, x_power(ring, m))
            assert poly_shift(a, 0) == a


def test_product_example():
    for ring in (0, 2):
        lhs = poly_mul(
            parse_laurent("x - 1", ring), LaurentPoly(ring, ((0, 1), (1, 1), (2, 1)))
        )
        assert lhs == parse_laurent("x^3 - 1", ring)


def test_fp_coefficients_are_reduced():
    P = LaurentPoly(2, ((0, 3), (1, 2), (5, -1)))
    assert P.coeffs == ((0, 1), (5, 1))
    with pytest.raises(ValueError):
        LaurentPoly(4, ((0, 1),))
    with pytest.raises(ValueError):
        poly_add(LaurentPoly(2, ((0, 1),)), LaurentPoly(3, ((0, 1),)))


def test_parse_and_format():
    assert format_laurent(parse_laurent("x^3 - 1", 0)) == "x^3 - 1"
    P = parse_laurent("2*x^-2 + 3", 0)
    assert P.coeffs == ((-2, 2), (0, 3))
    assert format_laurent(P) == "3 + 2*x^-2"
    assert parse_laurent(format_laurent(P), 0) == P
    assert format_laurent(parse_laurent("0", 0)) == "0"
    assert parse_laurent("-x + 4", 0).coeffs == ((0, 4), (1, -1))
    assert parse_laurent("x", 0).coeffs == ((1, 1),)
    assert parse_laurent("x^2+x^2", 0).coeffs == ((2, 2),)
    rng = random.Random(40002)
    for _ in range(300):
        ring = rng.choice([0, 2, 5])
        P = random_poly(rng, ring)
        assert parse_laurent(format_laurent(P), ring) == P
    for bad in ("", "x^", "y + 1", "2**", "+", "1 + + 2", "x^3.5"):
        with pytest.raises(ValueError):
            parse_laurent(bad, 0)


def test_parse_ring():
    assert parse_ring("z") == 0
    assert parse_ring("F2") == 2
    assert parse_ring("f11") == 11
    for bad in ("f4", "q", "f"):
        with pytest.raises(ValueError):
            parse_ring(bad)


def test_semidirect_round_trip_and_group_law():
    g = parse_semidirect("(x^3 - 1, 3)", 2)
    assert g.shift == 3 and g.poly == parse_laurent("x^3 - 1", 2)
    assert parse_semidirect(format_semidirect(g), 2) == g
    rng = random.Random(40014)
    for ring in (0, 3):
        e = semidirect_identity(ring)
        for _ in range(300):
            a = SemidirectElement(random_poly(rng, ring), rng.randrange(-4, 5))
            b = SemidirectElement(random_poly(rng, ring), rng.randrange(-4, 5))
            c = SemidirectElement(random_poly(rng, ring), rng.randrange(-4, 5))
            assert semidirect_mul(semidirect_mul(a, b), c) == semidirect_mul(
                a, semidirect_mul(b, c)
            )
            assert semidirect_mul(a, semidirect_inv(a)) == e
            assert semidirect_mul(e, a) == a


def test_wreath_isomorphism():
    W2 = wreath_group_for_ring(2)
    f = W2.element([(0, 1), (2, 1)], 3)
    s = from_wreath(f)
    assert s == SemidirectElement(parse_laurent("1 + x^2", 2), 3)
    assert to_wreath(s) == f
    assert from_wreath(W2.identity()) == semidirect_identity(2)

    rng = random.Random(40003)
    for ring in (0, 2):
        W = wreath_group_for_ring(ring)
        for _ in range(5000):
            sa = SemidirectElement(random_poly(rng, ring), rng.randrange(-3, 4))
            sb = SemidirectElement(random_poly(rng, ring), rng.randrange(-3, 4))
            ga, gb = to_wreath(sa), to_wreath(sb)
            assert from_wreath(ga) == sa
            assert from_wreath(multiply(ga, gb)) == semidirect_mul(sa, sb)


def test_wreath_isomorphism_shape_rejection():
    from wreathconj.abelian import AbelianGroup
    from wreathconj.wreath import WreathGroup

    for lamp, base in (
        (AbelianGroup(0, (4,)), AbelianGroup(1)),
        (AbelianGroup(2), AbelianGroup(1)),
        (AbelianGroup(1), AbelianGroup(2)),
        (AbelianGroup(1), AbelianGroup(0, (2,))),
    ):
        with pytest.raises(ValueError):
            from_wreath(WreathGroup(lamp, base).identity())


def test_same_conjugacy_class_examples():
    g = parse_semidirect("(x - 1, 2)", 0)
    ell, Q = same_conjugacy_class(g, g)
    assert ell == 0 and Q.is_zero()

    shifted = SemidirectElement(
        poly_add(g.poly, poly_mul(xt_minus_1(0, 2), parse_laurent("7", 0))), 2
    )
    assert same_conjugacy_class(g, shifted) == (0, parse_laurent("7", 0))

    f3 = parse_semidirect("(x^3 - 1, 3)", 2)
    g3 = parse_semidirect("(x - 1 + x^3 - 1, 3)", 2)
    assert same_conjugacy_class(f3, g3) is None

    assert same_conjugacy_class(
        parse_semidirect("(1, 2)", 0), parse_semidirect("(1, 3)", 0)
    ) is None


def test_same_conjugacy_class_shift_zero():
    a = SemidirectElement(parse_laurent("x^2", 0), 0)
    b = SemidirectElement(parse_laurent("x^5", 0), 0)
    assert same_conjugacy_class(a, b) == (3, zero_poly(0))
    c = SemidirectElement(parse_laurent("x + 1", 0), 0)
    d = SemidirectElement(parse_laurent("x^2 + x", 0), 0)
    assert same_conjugacy_class(c, d) == (1, zero_poly(0))
    assert same_conjugacy_class(c, SemidirectElement(parse_laurent("x + 2", 0), 0)) is None
    z = SemidirectElement(zero_poly(0), 0)
    assert same_conjugacy_class(z, z) == (0, zero_poly(0))
    assert same_conjugacy_class(z, c) is None


def test_same_conjugacy_class_certificates_randomized():
    rng = random.Random(40004)
    hits = 0
    for _ in range(400):
        ring = rng.choice([0, 2, 3])
        m = rng.choice([-3, -2, -1, 1, 2, 3, 4])
        P = random_poly(rng, ring)
        ell0 = rng.randrange(-3, 4)
        Q0 = random_poly(rng, ring)
        g1 = SemidirectElement(P, m)
        g2 = SemidirectElement(
            poly_add(poly_shift(P, ell0), poly_mul(xt_minus_1(ring, m), Q0)), m
        )
        cert = same_conjugacy_class(g1, g2)
        assert cert is not None
        ell, Q = cert
        assert 0 <= ell < abs(m)
        assert poly_add(poly_shift(g1.poly, ell), poly_mul(xt_minus_1(ring, m), Q)) == g2.poly
        hits += 1
    assert hits == 400


def test_same_conjugacy_class_matches_wreath_criterion():
    rng = random.Random(40005)
    for ring in (2, 0):
        W = wreath_group_for_ring(ring)
        for trial in range(150):
            m = rng.randrange(-3, 4)
            s1 = SemidirectElement(random_poly(rng, ring, span=3, terms=3, coeff=2), m)
            if trial % 2:
                z = SemidirectElement(random_poly(rng, ring, span=3, terms=3, coeff=2),
                                      rng.randrange(-3, 4))
                s2 = semidirect_conjugate(z, s1)
            else:
                s2 = SemidirectElement(random_poly(rng, ring, span=3, terms=3, coeff=2), m)
            got = same_conjugacy_class(s1, s2)
            witness = conjugate_test(to_wreath(s1), to_wreath(s2))
            assert (got is None) == (witness is None)
            if witness is not None:
                assert conjugate(witness, to_wreath(s1)) == to_wreath(s2)
            if got is not None:
                ell, Q = got
                assert poly_add(
                    poly_shift(s1.poly, ell), poly_mul(xt_minus_1(ring, m), Q)
                ) == s2.poly


def test_enumerate_fp_small():
    subs = enumerate_split_subgroups_fp(2, 2)
    assert [(N.t, format_laurent(N.gen), N.index) for N in subs] == [
        (1, "1", 1),
        (1, "x + 1", 2),
        (2, "1", 2),
    ]
    assert subs == enumerate_split_subgroups_fp(2, 2)

    subs24 = enumerate_split_subgroups_fp(2, 24)
    at_t3 = [N for N in subs24 if N.t == 3]
    assert len(at_t3) == 4
    assert sorted(N.gen.degree for N in at_t3) == [0, 1, 2, 3]


def test_enumerate_fp_contract():
    for p, max_index in ((2, 16), (3, 18), (5, 10)):
        subs = enumerate_split_subgroups_fp(p, max_index)
        assert all(x.index <= y.index for x, y in zip(subs, subs[1:]))
        assert subs[0].t == 1 and subs[0].gen == one_poly(p) and subs[0].index == 1
        seen = set()
        for N in subs:
            key = (N.t, N.gen.coeffs)
            assert key not in seen
            seen.add(key)
            assert N.index == N.t * p**N.gen.degree <= max_index
            assert N.gen.coeff(0) != 0 and N.gen.coeffs[-1][1] == 1
            assert N.contains(xt_minus_1(p, N.t))


def test_enumerate_fp_against_trial_division():
    # oracle: try every monic polynomial with nonzero constant term directly
    p, max_index = 2, 16
    expected = set()
    for t in range(1, max_index + 1):
        dmax = 0
        while t * p ** (dmax + 1) <= max_index:
            dmax += 1
        expected.add((t, one_poly(p).coeffs))
        for deg in range(1, dmax + 1):
            for tail in itertools.product(range(p), repeat=deg - 1):
                cand = LaurentPoly(p, ((0, 1), *((i + 1, c) for i, c in enumerate(tail)), (deg, 1)))
                quot, rem = divmod_oracle(xt_minus_1(p, t), cand, p)
                if rem:
                    continue
                expected.add((t, cand.coeffs))
    got = {(N.t, N.gen.coeffs) for N in enumerate_split_subgroups_fp(p, max_index)}
    assert got == expected


def divmod_oracle(num, den, p):
    """Schoolbook division over F_p on plain coefficient dicts."""
    num = {e: c % p for e, c in num.coeffs if c % p}
    den_pairs = [(e, c % p) for e, c in den.coeffs]
    dlead, dcoef = den_pairs[-1]
    quot = {}
    while num and max(num) >= dlead:
        e = max(num)
        f = num[e] * pow(dcoef, -1, p) % p
        quot[e - dlead] = f
        for de, dc in den_pairs:
            key = e - dlead + de
            num[key] = (num.get(key, 0) - f * dc) % p
            if not num[key]:
                del num[key]
    return quot, num


def test_enumerate_z_small_frozen():
    subs = enumerate_split_subgroups_z(9)
    assert len(subs) == 26
    assert [N.index for N in subs] == sorted(N.index for N in subs)
    by_index = {}
    for N in subs:
        by_index.setdefault(N.index, []).append(N)
    assert len(by_index[1]) == 1 and by_index[1][0].d == 1
    assert [len(by_index[i]) for i in range(1, 10)] == [1, 2, 2, 3, 2, 5, 2, 6, 3]
    star = [N for N in by_index[6] if N.d == 3 and N.t0 == 2]
    assert len(star) == 1
    assert star[0].t == 2 and star[0].vectors == frozenset({(0, 0), (1, 1), (2, 2)})
    assert any(N.d == 2 and N.t0 == 2 and N.t == 2 for N in by_index[8])
    assert any(
        N.d == 4 and N.t0 == 2 and N.t == 2 and len(N.vectors) == 4 for N in by_index[8]
    )
    assert subs == enumerate_split_subgroups_z(9)
    for N in subs:
        assert N.contains(xt_minus_1(0, N.t))
        assert N.index == N.t * N.d**N.t0 // len(N.vectors)


def test_enumerate_z_against_subset_scan():
    # oracle: scan every subset of (Z/d)^t for the additive rotation-closed
    # ones, then compare as subgroups via characteristic-reduced signatures
    max_index = 8

    def signature(d, t, vectors):
        d0 = min(c for c in range(1, d + 1) if ((c % d,) + (0,) * (t - 1)) in vectors or c == d)
        folded = frozenset(tuple(c % d0 for c in v) for v in vectors)
        return t, d0, folded

    expected = set()
    for d in range(1, max_index + 1):
        for t in range(1, max_index + 1):
            if d**t > 16:
                continue
            cells = list(itertools.product(range(d), repeat=t))
            zero = (0,) * t
            for bits in itertools.product((0, 1), repeat=len(cells)):
                vs = {v for v, keep in zip(cells, bits) if keep}
                if zero not in vs:
                    continue
                if any(tuple((a + b) % d for a, b in zip(u, v)) not in vs for u in vs for v in vs):
                    continue
                if any((v[-1],) + v[:-1] not in vs for v in vs):
                    continue
                index = t * d**t // len(vs)
                if index <= max_index:
                    expected.add(signature(d, t, vs))

    got = set()
    for N in enumerate_split_subgroups_z(max_index):
        if N.d**N.t > 16:
            continue
        expanded = {
            v
            for v in itertools.product(range(N.d), repeat=N.t)
            if N.vec(LaurentPoly(0, tuple((i, c) for i, c in enumerate(v)))) in N.vectors
        }
        got.add(signature(N.d, N.t, expanded))
    assert got == expected


def test_enumerate_z_ceiling_refusal():
    with pytest.raises(ValueError):
        enumerate_split_subgroups_z(100, ceiling=2**8)


def test_split_subgroup_validation():
    with pytest.raises(ValueError):
        FpSplitSubgroup(2, 3, parse_laurent("x^2 + 1", 2))  # divides x^4-1, not x^3-1
    with pytest.raises(ValueError):
        FpSplitSubgroup(2, 2, parse_laurent("x", 2))
    with pytest.raises(ValueError):
        FpSplitSubgroup(4, 1, parse_laurent("1", 2))
    FpSplitSubgroup(2, 4, parse_laurent("x^2 + 1", 2))  # (x+1)^2 divides x^4-1
    with pytest.raises(ValueError):
        ZSplitSubgroup(2, 2, frozenset({(0, 0)}), 3)  # shift not a multiple of period
    with pytest.raises(ValueError):
        ZSplitSubgroup(2, 2, frozenset({(0, 0), (1, 0)}), 2)  # not rotation closed
    with pytest.raises(ValueError):
        ZSplitSubgroup(3, 2, frozenset({(0, 0), (1, 1)}), 2)  # not additively closed


def test_conjugate_in_split_quotient_psi3():
    N = FpSplitSubgroup(2, 3, psi_poly(3, 2))
    assert N.index == 12
    f = parse_semidirect("(x^3 - 1, 3)", 2)
    g = parse_semidirect("(x - 1 + x^3 - 1, 3)", 2)
    assert image_in_split_quotient(f, N) == (zero_poly(2), 0)
    assert image_in_split_quotient(g, N) == (parse_laurent("x + 1", 2), 0)
    assert not conjugate_in_split_quotient(f, g, N)
    assert conjugate_in_split_quotient(f, f, N)
    for M in enumerate_split_subgroups_fp(2, 7):
        assert conjugate_in_split_quotient(f, g, M)


def test_conjugate_in_split_quotient_z_side():
    pair_f = parse_semidirect("(2*x^2 - 2, 2)", 0)
    pair_g = parse_semidirect("(2*x^2 - 2 + 2*x - 2, 2)", 0)
    separator = ZSplitSubgroup(3, 2, frozenset({(0, 0), (1, 1), (2, 2)}), 2)
    assert separator.index == 6
    assert not conjugate_in_split_quotient(pair_f, pair_g, separator)
    assert image_in_split_quotient(pair_f, separator) == ((0, 0), 0)
    assert image_in_split_quotient(pair_g, separator) == ((0, 1), 0)
    for N in enumerate_split_subgroups_z(5):
        assert conjugate_in_split_quotient(pair_f, pair_g, N)


def test_conjugate_in_split_quotient_invariance():
    rng = random.Random(40006)
    fp_subs = enumerate_split_subgroups_fp(2, 12) + enumerate_split_subgroups_fp(3, 12)
    z_subs = enumerate_split_subgroups_z(8)
    for _ in range(250):
        N = rng.choice(fp_subs + z_subs)
        ring = N.ring
        g1 = SemidirectElement(random_poly(rng, ring, span=4, terms=3), rng.randrange(-4, 5))
        g2 = SemidirectElement(random_poly(rng, ring, span=4, terms=3), rng.randrange(-4, 5))
        z = SemidirectElement(random_poly(rng, ring, span=4, terms=3), rng.randrange(-4, 5))
        base = conjugate_in_split_quotient(g1, g2, N)
        assert base == conjugate_in_split_quotient(semidirect_conjugate(z, g1), g2, N)
        assert base == conjugate_in_split_quotient(g1, semidirect_conjugate(z, g2), N)
        assert conjugate_in_split_quotient(g1, g1, N)
        if same_conjugacy_class(g1, g2) is not None:
            assert base


def test_mod_ideal_example():
    cert = mod_ideal_reduce(4, 6, 5)
    assert cert.g == 2 and verify_mod_ideal(cert)
    # membership checked directly in the 5^6-element ring (Z/5)[x]/(x^6 - 1)
    from wreathconj.laurent import _close_vectors

    def vec6(P):
        out = [0] * 6
        for e, c in P.coeffs:
            out[e % 6] = (out[e % 6] + c) % 5
        return tuple(out)

    ideal_x4 = _close_vectors({vec6(xt_minus_1(0, 4))}, 5, 6)
    ideal_x2 = _close_vectors({vec6(xt_minus_1(0, 2))}, 5, 6)
    assert vec6(xt_minus_1(0, 4)) in ideal_x2
    assert vec6(xt_minus_1(0, 2)) in ideal_x4


def test_mod_ideal_exhaustive():
    for m in range(1, 13):
        for n in range(1, 13):
            for d in (2, 3, 4, 5):
                cert = mod_ideal_reduce(m, n, d)
                assert verify_mod_ideal(cert)
                assert cert.g == __import__("math").gcd(m, n)


def test_psi_and_primitive_roots():
    assert psi_poly(3, 2) == parse_laurent("x^2 + x + 1", 2)
    with pytest.raises(ValueError):
        psi_poly(4)
    for q in (3, 5, 7):
        assert poly_mul(parse_laurent("x - 1", 0), psi_poly(q)) == xt_minus_1(0, q)
    assert primitive_root_primes(2, 3) == [3, 5, 11]
    assert primitive_root_primes(2, 1) == [3]
    assert primitive_root_primes(3, 2) == [5, 7]
    assert is_irreducible_fp(psi_poly(5, 2))
    assert not is_irreducible_fp(psi_poly(7, 2))  # ord_7(2) = 3 < 6
    assert is_irreducible_fp(psi_poly(7, 3))
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
