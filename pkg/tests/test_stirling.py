import json
import math
from fractions import Fraction

import pytest

from deltaseries import classical as cl
from deltaseries import fps
from deltaseries import scalar as sc
from deltaseries import stirling as st
from deltaseries.errors import ArityTooSmall, InsufficientOrder, NonRepresentablePower

L = sc.LAMBDA


def delta(*coeffs):
    return fps.DeltaSeries(fps.Series(len(coeffs) - 1, coeffs))


def f_identity(order=20):
    return fps.DeltaSeries(fps.t_series(order))


def f_deg(order=16):
    return fps.DeltaSeries(
        fps.Series(
            order,
            [Fraction(0)] + [L ** (n - 1) / Fraction(math.factorial(n)) for n in range(1, order + 1)],
        )
    )


# --- independent oracle: partial Bell by integer-partition enumeration -----

def _partitions_into(n, k, largest=None):
    """Multisets of k positive parts summing to n, as sorted tuples."""
    if largest is None:
        largest = n
    if k == 0:
        return [()] if n == 0 else []
    out = []
    for part in range(min(n - k + 1, largest), 0, -1):
        for rest in _partitions_into(n - part, k - 1, part):
            out.append((part,) + rest)
    return out


def brute_partial_bell(n, k, xs):
    total = Fraction(0)
    for parts in _partitions_into(n, k):
        mult = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        ways = Fraction(math.factorial(n))
        prod = Fraction(1)
        for size, count in mult.items():
            ways /= Fraction(math.factorial(size)) ** count * math.factorial(count)
            prod = prod * xs[size - 1] ** count
        total = total + ways * prod
    return sc.simplify(total)


class TestTriangles:
    def test_identity_matches_classical(self):
        f = f_identity()
        s2 = st.s2_assoc(f, 8)
        s1 = st.s1_assoc(f, 8)
        for n in range(9):
            for k in range(n + 1):
                assert s2.entry(n, k) == cl.classical_s2(n, k)
                assert s1.entry(n, k) == cl.classical_s1(n, k)

    def test_entry_outside_is_zero(self):
        tri = st.s2_assoc(f_identity(), 5)
        assert tri.entry(3, 5) == 0
        assert tri.entry(2, -1) == 0

    def test_degenerate_matches_basis_oracle(self):
        f = f_deg()
        s2 = st.s2_assoc(f, 6)
        s1 = st.s1_assoc(f, 6)
        for n in range(7):
            for k in range(n + 1):
                assert s2.entry(n, k) == cl.deg_s2(n, k, L)
                assert s1.entry(n, k) == cl.deg_s1(n, k, L)

    def test_assoc_log_is_composition(self):
        f = delta(0, 1, -1, 2, 0, 1, 3, -2, 1)
        lg = st.assoc_log(f)
        u = fps.Series(
            f.order,
            [Fraction(0)] + [Fraction((-1) ** (n - 1), n) for n in range(1, f.order + 1)],
        )
        assert lg == fps.compose(f.series, u)

    def test_json_and_csv(self):
        tri = st.s2_assoc(f_identity(), 3)
        obj = tri.to_json("t")
        assert obj["kind"] == "s2" and obj["max_n"] == 3 and obj["f"] == "t"
        back = [[sc.parse_scalar(v) for v in row] for row in json.loads(json.dumps(obj))["rows"]]
        assert back[3] == [Fraction(0), Fraction(1), Fraction(3), Fraction(1)]
        csv = tri.to_csv()
        assert csv.splitlines()[0] == "n,k,value"
        assert "3,2,3" in csv.splitlines()


class TestOrthogonality:
    def test_clean_triangles_pass(self):
        rep = st.orthogonality_check(f_identity(), 8)
        assert rep.ok and not rep.failures

    def test_corrupted_triangle_fails_with_coordinates(self):
        f = f_identity()
        s2 = st.s2_assoc(f, 6)
        s1 = st.s1_assoc(f, 6)
        bad = s2.with_entry(4, 2, s2.entry(4, 2) + 1)
        rep = st.check_orthogonality_triangles(bad, s1)
        assert not rep.ok
        cells = {(kind, n, l) for kind, n, l, _got, _want in rep.failures}
        assert any(n == 4 for _kind, n, _l in cells)

    def test_symbolic_orthogonality(self):
        rep = st.orthogonality_check(f_deg(), 6)
        assert rep.ok


class TestPartialBell:
    def test_known_row(self):
        # B_{4,2}(x1, x2, x3) = 3 x2^2 + 4 x1 x3, checked at generic points
        xs = [Fraction(5), Fraction(7), Fraction(11)]
        assert st.partial_bell(4, 2, xs) == 3 * 7**2 + 4 * 5 * 11
        assert st.partial_bell(4, 2, [1, 1, 1]) == 7

    def test_edge_cases(self):
        assert st.partial_bell(0, 0, []) == 1
        assert st.partial_bell(3, 0, []) == 0
        with pytest.raises(ArityTooSmall):
            st.partial_bell(5, 2, [1, 2])

    def test_against_partition_enumeration(self):
        xs = [Fraction(2), Fraction(-3), Fraction(5), Fraction(1, 2), Fraction(7), Fraction(-1)]
        for n in range(7):
            for k in range(n + 1):
                assert st.partial_bell(n, k, xs) == brute_partial_bell(n, k, xs)

    def test_symbolic_arguments(self):
        xs = [1 + L, 2 * L, Fraction(1)]
        assert st.partial_bell(4, 2, xs) == sc.simplify(3 * (2 * L) ** 2 + 4 * (1 + L) * 1)


class TestBernoulli:
    def test_alpha_zero_is_trivial(self):
        fam = st.bernoulli_assoc(f_identity(), Fraction(0), 5)
        assert fam.values == (Fraction(1),) + (Fraction(0),) * 5

    def test_classical_alpha_one(self):
        fam = st.bernoulli_assoc(f_identity(), Fraction(1), 6)
        assert list(fam.values) == [
            Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0),
            Fraction(-1, 30), Fraction(0), Fraction(1, 42),
        ]

    def test_x_polynomials(self):
        fam = st.bernoulli_assoc(f_identity(), Fraction(1), 4, with_x=True)
        b1 = fam.xpolys[1]
        assert b1.coeffs == (Fraction(-1, 2), Fraction(1))  # B_1(x) = x - 1/2
        # B_n(1) - B_n(0) vanishes for n >= 2
        for n in range(2, 5):
            p = fam.xpolys[n]
            assert p.eval(Fraction(1)) - p.eval(Fraction(0)) == 0

    def test_rational_alpha(self):
        fam = st.bernoulli_assoc(f_identity(), Fraction(1, 2), 4)
        sq = st.bernoulli_assoc(f_identity(), Fraction(1), 4)
        # (t/(e^t-1))^{1/2} squared gives back alpha = 1
        base = fps.from_egf(list(fam.values))
        assert [fps.egf_coeff(fps.mul(base, base), n) for n in range(5)] == list(sq.values)

    def test_needs_order_headroom(self):
        with pytest.raises(InsufficientOrder):
            st.bernoulli_assoc(f_identity(4), Fraction(1), 4)

    def test_scalar_rat_pow(self):
        assert st.scalar_rat_pow(Fraction(2), Fraction(3)) == 8
        assert st.scalar_rat_pow(Fraction(1), Fraction(1, 2)) == 1
        with pytest.raises(NonRepresentablePower):
            st.scalar_rat_pow(Fraction(2), Fraction(1, 2))


class TestTheoremPaths:
    def test_s1_via_bernoulli(self):
        f = f_identity()
        s1 = st.s1_assoc(f, 8)
        for n in range(9):
            for k in range(n + 1):
                assert st.s1_via_bernoulli(f, n, k) == s1.entry(n, k)

    def test_schloemilch(self):
        f = delta(*([0, 1, 1] + [0] * 14))
        s1 = st.s1_assoc(f, 7)
        s2 = st.s2_assoc(f, 14)
        for n in range(8):
            for k in range(n + 1):
                assert st.schloemilch_s1(f, n, k, s2) == s1.entry(n, k)

    def test_moment_sequence_identity(self):
        assert st.moment_sequence(f_identity(), 5) == [Fraction(1)] * 6

    def test_bell_moment_lemma(self):
        f = f_deg()
        s2 = st.s2_assoc(f, 12)
        for n in range(7):
            for k in range(n + 1):
                assert st.lemma_bell_moments(f, n, k) == st.lemma_bell_moments_sum(f, n, k, s2)

    def test_bernoulli_three_ways(self):
        f = delta(*([0, 2, 1, -1] + [0] * 13))
        fb = st.compositional_inverse(f)
        s2 = st.s2_assoc(f, 12)
        for alpha in (-2, -1, 1, 2, 3):
            fam = st.bernoulli_assoc(fb, Fraction(alpha), 6)
            for n in range(7):
                assert st.bernoulli_via_lemma24(f, Fraction(alpha), n) == fam.values[n]
                assert st.bernoulli_via_s2(f, Fraction(alpha), n, s2) == fam.values[n]
        fam1 = st.bernoulli_assoc(fb, Fraction(1), 6)
        for n in range(7):
            assert st.bernoulli_via_s2_alpha1(f, n, s2) == fam1.values[n]

    def test_log_expansion(self):
        f = f_deg()
        got = st.assoc_log_expansion(f, 8)
        assert got == st.assoc_log(f).truncate(8)


class TestXPoly:
    def test_basis_round_trips(self):
        p = st.XPoly([Fraction(1), Fraction(-2), Fraction(0), Fraction(3)])
        for basis in (st.BASIS_FALLING, st.BASIS_FALLING_LAMBDA):
            q = st.basis_convert(p, basis)
            assert st.basis_convert(q, st.BASIS_MONOMIAL) == p

    def test_falling_basis_is_stirling(self):
        # x^3 = sum_k S2(3,k) (x)_k
        p = st.XPoly([0, 0, 0, 1])
        q = p.convert(st.BASIS_FALLING)
        assert list(q.coeffs) == [Fraction(cl.classical_s2(3, k)) for k in range(4)]

    def test_eval(self):
        p = st.XPoly([Fraction(1), Fraction(0), Fraction(2)])
        assert p.eval(Fraction(3)) == 19

    def test_poly_seq_identity(self):
        polys = st.poly_seq(f_identity(6), 4)
        for n, p in enumerate(polys):
            assert p.coeffs == tuple([Fraction(0)] * n + [Fraction(1)])

    def test_bell_assoc_bell_polynomials(self):
        # f = t gives the classical Bell polynomials (second-kind rows)
        rows = st.bell_assoc(f_identity(8), 4)
        assert list(rows[3].coeffs) == [Fraction(cl.classical_s2(3, k)) for k in range(4)]
        assert rows[4].eval(Fraction(1)) == 15  # Bell number B_4

    def test_poly_seq_bell(self):
        # f = log(1+t): the associated sequence is the Bell polynomials
        order = 8
        f = fps.DeltaSeries(
            fps.Series(order, [Fraction(0)] + [Fraction((-1) ** (n - 1), n) for n in range(1, order + 1)])
        )
        polys = st.poly_seq(f, 4)
        assert list(polys[3].coeffs) == [Fraction(cl.classical_s2(3, k)) for k in range(4)]
        assert polys[4].eval(Fraction(1)) == 15
