import math
from fractions import Fraction

import pytest

from deltaseries import classical as cl
from deltaseries import fps
from deltaseries import presets as pr
from deltaseries import scalar as sc
from deltaseries import stirling as st
from deltaseries.errors import LambdaModeRequired, NoOracle, UnknownPreset, ZeroFirstMoment

L = sc.LAMBDA
ORACLE_N = 8


def _preset(pid, order=18):
    mode = pr.LAMBDA_SYMBOLIC if pr.is_degenerate(pid) else pr.LAMBDA_ABSENT
    return pr.make_preset(pid, order, mode)


class TestRegistry:
    def test_all_ids_present(self):
        assert len(pr.PRESET_IDS) == 15
        reg = pr.registry_json()
        assert set(reg) == set(pr.PRESET_IDS)
        letters = {info["letter"] for info in reg.values()}
        assert letters == set("abcdefghijklmno")

    def test_unknown_preset(self):
        with pytest.raises(UnknownPreset):
            pr.make_preset("nope", 8)
        with pytest.raises(UnknownPreset):
            pr.is_degenerate("nope")

    def test_degenerate_requires_lambda(self):
        with pytest.raises(LambdaModeRequired):
            pr.make_preset("deg_falling", 8)
        with pytest.raises(LambdaModeRequired):
            pr.oracle_s2("partial_deg_bell", 3, 1)

    def test_preset_is_immutable(self):
        p = _preset("identity")
        with pytest.raises(AttributeError):
            p.id = "other"


class TestOracleAgreement:
    @pytest.mark.parametrize("pid", [p for p in pr.PRESET_IDS if p != "probabilistic"])
    def test_triangles_match_oracles(self, pid):
        p = _preset(pid)
        s2 = st.s2_assoc(p.f, ORACLE_N)
        s1 = st.s1_assoc(p.f, ORACLE_N)
        for n in range(ORACLE_N + 1):
            for k in range(n + 1):
                assert s2.entry(n, k) == p.oracle_s2(n, k), (pid, "s2", n, k)
                assert s1.entry(n, k) == p.oracle_s1(n, k), (pid, "s1", n, k)

    @pytest.mark.parametrize("pid", [p for p in pr.PRESET_IDS if p != "probabilistic"])
    def test_log_matches_oracle(self, pid):
        p = _preset(pid)
        assert st.assoc_log(p.f).truncate(ORACLE_N) == p.oracle_log(p.f.order).truncate(ORACLE_N)

    def test_probabilistic_has_no_closed_form(self):
        with pytest.raises(NoOracle):
            pr.oracle_s2("probabilistic", 3, 2, L)
        with pytest.raises(NoOracle):
            pr.oracle_log("probabilistic", 6, L)

    def test_rational_lambda_specializes_symbolic(self):
        r = Fraction(2, 5)
        for pid in ("deg_falling", "deg_lah_bell", "full_deg_bell"):
            sym = _preset(pid, order=8).f.series
            num = pr.make_preset(pid, 8, r).f.series
            assert [sc.eval_lambda(c, r) for c in sym.coeffs] == list(num.coeffs)


class TestKnownCoefficients:
    def test_mittag_leffler_log(self):
        # t/(2+t): coefficients (-1)^{n-1}/2^n
        lg = pr.oracle_log("mittag_leffler", 6)
        assert [lg.coeffs[n] for n in range(1, 7)] == [
            Fraction((-1) ** (n - 1), 2**n) for n in range(1, 7)
        ]

    def test_rising_is_lah(self):
        p = _preset("rising")
        s2 = st.s2_assoc(p.f, 4)
        assert [s2.entry(4, k) for k in range(5)] == [0, 24, 36, 12, 1]

    def test_laguerre_self_inverse(self):
        p = _preset("laguerre_m1")
        assert st.compositional_inverse(p.f).series == p.f.series

    def test_central_factorial_triangles_invert(self):
        for n in range(7):
            for l in range(n + 1):
                tot = sum(pr.central_t1(n, k) * pr.central_t2(k, l) for k in range(l, n + 1))
                assert tot == (1 if n == l else 0)

    def test_deg_central_at_zero_lambda(self):
        for n in range(6):
            for k in range(n + 1):
                assert sc.eval_lambda(pr.central_t2_deg(n, k, L), Fraction(0)) == pr.central_t2(n, k)
                assert sc.eval_lambda(pr.central_t1_deg(n, k, L), Fraction(0)) == pr.central_t1(n, k)

    def test_partial_deg_bell_closed_form(self):
        # log_l(1+t) has EGF (l-1)_{n-1}
        f = _preset("partial_deg_bell", order=8).f.series
        for n in range(1, 9):
            assert fps.egf_coeff(f, n) == sc.simplify(cl.falling_factorial(L - 1, n - 1))


class TestA2AndMoments:
    def test_a2_values(self):
        a = pr.a2_series(6)
        got = [fps.egf_coeff(a, n) for n in range(3)]
        assert got == [Fraction(1), Fraction(-1, 3), Fraction(1, 18)]
        # independent convolution oracle: (e^t - 1 - t) * A = t^2/2
        vals = [fps.egf_coeff(a, n) for n in range(7)]
        for n in range(5):
            acc = Fraction(0)
            for j in range(n + 1):
                acc += vals[j] / math.factorial(j) / math.factorial(n - j + 2)
            assert acc == (Fraction(1, 2) if n == 0 else 0)

    def test_uniform_moments(self):
        um = pr.uniform_moments(L)
        assert um.moments(0) == 1
        assert um.moments(1) == Fraction(1, 2)
        assert um.moments(2) == Fraction(1, 3) - L / 2
        plain = pr.uniform_moments()
        assert [plain.moments(n) for n in range(4)] == [1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]

    def test_point_mass_one_equals_deg_falling(self):
        f = pr.moment_delta(pr.point_mass_moments(1, L), 10)
        assert f == _preset("deg_falling", order=10).f

    def test_two_point_moments(self):
        tp = pr.two_point_moments(0, Fraction(1, 2), 2)
        assert tp.moments(1) == 1
        assert tp.moments(3) == 4

    def test_zero_first_moment(self):
        with pytest.raises(ZeroFirstMoment):
            pr.moment_delta(pr.two_point_moments(-1, Fraction(1, 2), 1), 6)

    def test_moment_seq_validates(self):
        with pytest.raises(ValueError):
            pr.MomentSeq(lambda n: Fraction(2))

    def test_uniform_multinomial_formula(self):
        f = pr.moment_delta(pr.uniform_moments(L), 12)
        s1 = st.s1_assoc(f, 6)
        for n in range(1, 7):
            assert s1.entry(n, 1) == pr.uniform_s1_multinomial(n, L)

    def test_probabilistic_preset_builds(self):
        p = pr.make_preset("probabilistic", 10, pr.LAMBDA_SYMBOLIC)
        assert p.f == pr.moment_delta(pr.uniform_moments(L), 10)
        rep = st.orthogonality_check(p.f, 6)
        assert rep.ok


class TestCorpus:
    def test_corpus_contents(self, corpus):
        labels = [e.label for e in corpus]
        assert "identity" in labels and "prob_uniform" in labels and "prob_one" in labels
        assert "probabilistic" not in labels
        assert len(labels) == 16

    def test_corpus_series_are_delta(self, corpus):
        for e in corpus:
            assert sc.is_zero_scalar(e.f.series.coeffs[0])
            assert not sc.is_zero_scalar(e.f.series.coeffs[1])
