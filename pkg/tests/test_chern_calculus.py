import random
from fractions import Fraction

import pytest

from hyperloc import family_model
from hyperloc.chern_calculus import (
    BadRanks, ChernSeries, NonUnitLeadingTerm, TruncationTooSmall,
    chern_of_extension, dual, inverse, porteous, quotient, whitney)
from hyperloc.graded_algebra import Generator, RingMismatch, ring_new


def pair_ring(truncation=2):
    """Free ring carrying c1, c2 of two abstract bundles."""
    return ring_new([Generator("e1", 1), Generator("e2", 2),
                     Generator("f1", 1), Generator("f2", 2)], [], truncation)


def abstract_pair(r):
    cE = ChernSeries(r, 3, [r.one(), r.gen("e1"), r.gen("e2")])
    cF = ChernSeries(r, 2, [r.one(), r.gen("f1"), r.gen("f2")])
    return cE, cF


def random_series(ring, rank, rng):
    deg1 = [ring.gen("e1"), ring.gen("f1")]
    deg2 = [ring.gen("e2"), ring.gen("f2"), ring.gen("e1") * ring.gen("f1"),
            ring.gen("e1") ** 2]
    c1 = sum((Fraction(rng.randrange(-4, 5)) * g for g in deg1), ring.zero())
    c2 = sum((Fraction(rng.randrange(-4, 5)) * g for g in deg2), ring.zero())
    return ChernSeries(ring, rank, [ring.one(), c1, c2])


# -- dual ---------------------------------------------------------------------

def test_dual_alternates_signs():
    r = pair_ring()
    cE, _ = abstract_pair(r)
    d = dual(cE)
    assert d.part(1) == -r.gen("e1")
    assert d.part(2) == r.gen("e2")


def test_dual_is_involution_randomized():
    rng = random.Random(3)
    r = pair_ring()
    for _ in range(50):
        s = random_series(r, 2, rng)
        assert dual(dual(s)) == s


def test_dual_of_trivial():
    r = pair_ring()
    assert dual(ChernSeries.trivial(r)) == ChernSeries.trivial(r)


# -- whitney ------------------------------------------------------------------

def test_whitney_extension_data():
    r = family_model.family_ring()
    K, X = r.gen("K"), r.gen("X")
    cF = whitney(ChernSeries.line(2 * K - X), ChernSeries.line(K - X))
    assert cF.rank == 2
    assert cF.part(1) == 3 * K - 2 * X
    assert cF.part(2) == (K - X) * (2 * K - X)


def test_whitney_unit_and_commutativity():
    rng = random.Random(5)
    r = pair_ring()
    one = ChernSeries.trivial(r)
    for _ in range(100):
        a = random_series(r, 3, rng)
        b = random_series(r, 2, rng)
        assert whitney(a, one) == a
        assert whitney(a, b) == whitney(b, a)


def test_whitney_associativity_randomized():
    rng = random.Random(6)
    r = pair_ring()
    for _ in range(100):
        a, b, c = (random_series(r, 1, rng) for _ in range(3))
        assert whitney(whitney(a, b), c) == whitney(a, whitney(b, c))


def test_whitney_ring_mismatch():
    with pytest.raises(RingMismatch):
        whitney(ChernSeries.trivial(pair_ring()),
                ChernSeries.trivial(family_model.family_ring()))


def test_whitney_of_lines_adds_first_chern_classes():
    rng = random.Random(8)
    r = pair_ring()
    gens = [r.gen("e1"), r.gen("f1")]
    for _ in range(100):
        n = rng.randrange(1, 5)
        lines = []
        for _ in range(n):
            c1 = sum((Fraction(rng.randrange(-3, 4)) * g for g in gens),
                     r.zero())
            lines.append(ChernSeries.line(c1))
        total = lines[0]
        for s in lines[1:]:
            total = whitney(total, s)
        assert total.rank == n
        expect = sum((s.part(1) for s in lines), r.zero())
        assert total.part(1) == expect


# -- inverse and quotient -----------------------------------------------------

def test_inverse_golden():
    r = pair_ring()
    _, cF = abstract_pair(r)
    inv = inverse(dual(cF))  # 1 - f1 + f2
    f1, f2 = r.gen("f1"), r.gen("f2")
    assert inv.part(1) == f1
    assert inv.part(2) == f1 * f1 - f2


def test_inverse_of_one():
    r = pair_ring()
    assert inverse(ChernSeries.trivial(r)) == ChernSeries.trivial(r)


def test_inverse_round_trip_randomized():
    rng = random.Random(9)
    r = pair_ring()
    one = ChernSeries.trivial(r)
    for _ in range(120):
        s = random_series(r, rng.randrange(0, 4), rng)
        prod = whitney(s, inverse(s))
        assert prod.parts == (one.parts[0],) + tuple(
            r.zero() for _ in range(r.truncation))
        double = inverse(inverse(s))
        assert double.parts == s.parts and double.rank == s.rank


def test_inverse_requires_unit_leading_term():
    r = pair_ring()
    bad = ChernSeries(r, 1, [r.one() * 2, r.gen("e1")])
    with pytest.raises(NonUnitLeadingTerm):
        inverse(bad)


def test_quotient_golden_and_degenerate_cases():
    r = pair_ring()
    cE, cF = abstract_pair(r)
    q = quotient(dual(cE), dual(cF))
    e1, e2, f1, f2 = (r.gen(n) for n in ("e1", "e2", "f1", "f2"))
    assert q.part(2) == e2 - e1 * f1 + f1 * f1 - f2
    assert quotient(cE, cE) == ChernSeries.trivial(r, 0)
    s = random_series(r, 2, random.Random(1))
    assert quotient(s, ChernSeries.trivial(r)).parts == s.parts


# -- porteous -----------------------------------------------------------------

def test_porteous_matches_quotient_route_golden():
    r = pair_ring()
    cE, cF = abstract_pair(r)
    assert porteous(cE, cF, 3, 2, 1) == quotient(dual(cE), dual(cF)).part(2)


def test_porteous_matches_quotient_route_randomized():
    rng = random.Random(17)
    r = pair_ring()
    for _ in range(120):
        cE = random_series(r, 3, rng)
        cF = random_series(r, 2, rng)
        det = porteous(cE, cF, 3, 2, 1)
        assert det == quotient(dual(cE), dual(cF)).part(2)
        assert det.is_homogeneous(2)


def test_porteous_one_by_one_case():
    # e = f = 1, k = 0: the determinant is the single entry c1(F - E)
    r = pair_ring()
    cE = ChernSeries.line(r.gen("e1"))
    cF = ChernSeries.line(r.gen("f1"))
    assert porteous(cE, cF, 1, 1, 0) == r.gen("f1") - r.gen("e1")


def test_porteous_rejects_bad_ranks():
    r = pair_ring()
    cE, cF = abstract_pair(r)
    with pytest.raises(BadRanks):
        porteous(cE, cF, 3, 2, 2)  # k = f: no degeneracy condition
    with pytest.raises(BadRanks):
        porteous(cE, cF, 3, 2, -1)


def test_porteous_needs_enough_truncation():
    r = pair_ring(truncation=1)
    cE = ChernSeries(r, 3, [r.one(), r.gen("e1")])
    cF = ChernSeries(r, 2, [r.one(), r.gen("f1")])
    with pytest.raises(TruncationTooSmall):
        porteous(cE, cF, 3, 2, 1)


# -- extensions and algebra of duals -----------------------------------------

def test_extension_of_trivial_is_quotient():
    r = pair_ring()
    s = random_series(r, 2, random.Random(2))
    assert chern_of_extension(ChernSeries.trivial(r), s) == s
    t = random_series(r, 1, random.Random(4))
    assert chern_of_extension(s, t) == chern_of_extension(t, s)


def test_dual_is_multiplicative_randomized():
    rng = random.Random(19)
    r = pair_ring()
    for _ in range(100):
        a = random_series(r, 2, rng)
        b = random_series(r, 1, rng)
        assert dual(whitney(a, b)) == whitney(dual(a), dual(b))


def test_series_constructor_validates_homogeneity():
    r = pair_ring()
    with pytest.raises(ValueError):
        ChernSeries(r, 1, [r.one(), r.gen("e2")])  # degree-2 class in slot 1
