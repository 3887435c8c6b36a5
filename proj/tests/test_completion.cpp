#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adist/completion.hpp"
#include "adist/dist_elem.hpp"

using namespace adist;

namespace {

// rank-1 series over Z_p with valuations prescribed by a function of k
template <typename F>
TruncatedSeries series_with_valuations(unsigned long p, unsigned long horizon, F&& vp) {
    TruncatedSeries s(LevelContext(Prime(p), Level::infinity()), 1, horizon);
    for (unsigned long k = 0; k <= horizon; ++k) {
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), p, static_cast<unsigned long>(vp(k)));
        s.add_term(MultiIndex{static_cast<std::uint32_t>(k)}, ValuedRational(p, pw, mpz_class(1)));
    }
    return s;
}

}  // namespace

TEST_CASE("dagger_classify: certified / refuted / indeterminate") {
    // a_k = p^k with certificate (eta=1, c=0)
    auto s = series_with_valuations(2, 20, [](unsigned long k) { return k; });
    s.attach_certificate(GrowthCertificate(Frac(1), Frac(0)));
    CHECK(dagger_classify(s) == DaggerVerdict::certified);

    // constant valuations: any certificate dies once the horizon passes -c/eta
    auto flat = series_with_valuations(2, 20, [](unsigned long) { return 0; });
    CHECK(dagger_classify(flat, GrowthCertificate(Frac(1), Frac(0))) ==
          DaggerVerdict::refuted_at_horizon);
    CHECK(dagger_classify(flat, GrowthCertificate(Frac(1, 2), Frac(-5))) ==
          DaggerVerdict::refuted_at_horizon);
    // ... and the declared constant pattern rules out every affine bound
    flat.declare_pattern(ValuationPattern{Frac(0), Frac(0)});
    CHECK(dagger_classify(flat) == DaggerVerdict::refuted_at_horizon);

    // no certificate, no excluding pattern: the data alone decides nothing
    auto bare = series_with_valuations(2, 10, [](unsigned long k) { return k; });
    CHECK(dagger_classify(bare) == DaggerVerdict::indeterminate);

    // certificates must be dominated by the stored valuations
    CHECK_THROWS_AS(flat.attach_certificate(GrowthCertificate(Frac(1), Frac(0))),
                    std::invalid_argument);
    CHECK_THROWS_AS(GrowthCertificate(Frac(0), Frac(0)), std::invalid_argument);

    // level-m coordinates must be converted first
    TruncatedSeries lvl(LevelContext(2, 1), 1, 4);
    lvl.add_term(MultiIndex{1}, ValuedRational(2ul, 1));
    CHECK_THROWS_AS(dagger_classify(lvl), std::invalid_argument);
    CHECK(dagger_classify(lvl.to_infinity_basis()) == DaggerVerdict::indeterminate);
}

TEST_CASE("ord_profile") {
    auto s = series_with_valuations(2, 30, [](unsigned long k) { return k; });
    auto prof = ord_profile(s, 12);
    for (long i = 0; i <= 12; ++i) CHECK(prof[static_cast<std::size_t>(i)] == i);

    TruncatedSeries zero(LevelContext(Prime(2), Level::infinity()), 1, 8);
    CHECK(ord_profile(zero, 5).empty());

    // a_k = p^{ceil(k/2)}: ord(P_i) = 2i
    auto half = series_with_valuations(3, 30, [](unsigned long k) { return (k + 1) / 2; });
    auto hp = ord_profile(half, 10);
    for (long i = 0; i <= 10; ++i)
        CHECK(hp[static_cast<std::size_t>(i)] == std::min<long>(2 * i, 30));
}

TEST_CASE("banach_norm") {
    auto s = series_with_valuations(2, 10, [](unsigned long k) { return k; });
    auto n = banach_norm(s);
    CHECK(!n.zero);
    CHECK(n.exponent == 0);  // the k=0 term is a unit

    TruncatedSeries t(LevelContext(2, 1), 1, 4);
    t.add_term(MultiIndex{1}, ValuedRational(2ul, 1, 2));
    CHECK(banach_norm(t).exponent == 1);  // (1/p) xi has norm p

    CHECK(banach_norm(TruncatedSeries(LevelContext(2, 1), 1, 4)).zero);

    // level maps never increase the norm
    for (unsigned long k = 0; k <= 10; ++k) {
        TruncatedSeries u(LevelContext(2, 0), 1, 10);
        u.add_term(MultiIndex{static_cast<std::uint32_t>(k)}, ValuedRational(2ul, 1));
        CHECK(banach_norm(u.to_infinity_basis()).exponent <= banach_norm(u).exponent);
    }
}

TEST_CASE("banach_norm is submultiplicative on truncated products") {
    Group ga = Group::additive(1);
    LevelContext ctx(2, 1);
    auto as_series = [&](const DistElement& u, unsigned long horizon) {
        TruncatedSeries s(ctx, 1, horizon);
        for (auto& [k, c] : u.terms()) s.add_term(k, c);
        return s;
    };
    DistElement u(ga, ctx), v(ga, ctx);
    u.add_term(MultiIndex{0}, ValuedRational(2ul, 3, 4));
    u.add_term(MultiIndex{3}, ValuedRational(2ul, 5));
    v.add_term(MultiIndex{2}, ValuedRational(2ul, 7, 2));
    v.add_term(MultiIndex{1}, ValuedRational(2ul, 6));
    auto w = mul(u, v);
    CHECK(banach_norm(as_series(w, 8)).exponent <=
          banach_norm(as_series(u, 8)).exponent + banach_norm(as_series(v, 8)).exponent);
}

TEST_CASE("ar pairing and norm bound") {
    LevelContext inf(Prime(2), Level::infinity());
    auto s = series_with_valuations(2, 10, [](unsigned long k) { return k; });

    auto t2 = PdPolynomial::monomial(inf, 1, 10, MultiIndex{2});
    CHECK(ar_pairing(s, t2) == ValuedRational(2ul, 4));  // a_2 = p^2

    TruncatedSeries unitvec(inf, 1, 10);
    unitvec.add_term(MultiIndex{2}, ValuedRational(2ul, 1));
    CHECK(ar_pairing(unitvec, t2) == ValuedRational(2ul, 1));
    CHECK(ar_pairing(unitvec, PdPolynomial::monomial(inf, 1, 10, MultiIndex{3})).is_zero());

    // v(a_k) = k against slope 1/2: -k - k/2 is maximized at k = 0
    auto bound = ar_norm_bound(s, Frac(1, 2));
    CHECK(!bound.zero);
    CHECK(bound.log_p == 0);
    CHECK(bound.attained_at == MultiIndex{0});

    CHECK_THROWS_AS(ar_norm_bound(s, Frac(0)), std::invalid_argument);
    CHECK_THROWS_AS(ar_norm_bound(s, Frac(-1, 2)), std::invalid_argument);
}

TEST_CASE("phi valuation growth tables") {
    auto g = phi_valuation_growth(Level::finite(0), Level::finite(1), 16, Prime(2));
    CHECK(g.table[4] == 2);  // v(4!/2!) = 3 - 1
    CHECK(g.table[8] == 4);  // v(8!/4!) = 7 - 3
    CHECK(g.monotone);
    CHECK(g.unbounded_on_range);

    // k < p^m: the factors coincide and the valuation vanishes
    auto g2 = phi_valuation_growth(Level::finite(1), Level::finite(2), 16, Prime(3));
    for (unsigned long k = 0; k < 3; ++k) CHECK(g2.table[k] == 0);
    CHECK(g2.monotone);

    auto ginf = phi_valuation_growth(Level::finite(0), Level::infinity(), 32, Prime(2));
    CHECK(ginf.monotone);
    CHECK(ginf.unbounded_on_range);
    CHECK(ginf.table[4] == 3);  // v(4!) = 3

    CHECK_THROWS_AS(phi_valuation_growth(Level::finite(2), Level::finite(1), 8, Prime(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(phi_valuation_growth(Level::finite(1), Level::finite(1), 8, Prime(2)),
                    std::invalid_argument);
}

TEST_CASE("conversion chain composes: direct to [k] equals stepwise") {
    for (unsigned long p : {2ul, 3ul}) {
        LevelContext m0(p, 0);
        TruncatedSeries s(m0, 1, 24);
        for (unsigned long k = 0; k <= 24; k += 3)
            s.add_term(MultiIndex{static_cast<std::uint32_t>(k)},
                       ValuedRational(p, static_cast<long>(k + 1), 3));

        // stepwise through the DistElement level maps m=0 -> 1 -> 2 -> infinity
        Group ga = Group::additive(1);
        DistElement u(ga, m0);
        for (auto& [k, c] : s.terms()) u.add_term(k, c);
        auto stepped = level_map(level_map(level_map(u, Level::finite(1)), Level::finite(2)),
                                 Level::infinity());

        auto direct = s.to_infinity_basis();
        CHECK(direct.terms().size() == stepped.terms().size());
        for (auto& [k, c] : stepped.terms()) {
            auto it = direct.terms().find(k);
            REQUIRE(it != direct.terms().end());
            CHECK(it->second == c);
        }

        // and k! xi^[k] = xi^<k>_0
        for (auto& [k, c] : s.terms())
            CHECK(direct.terms().at(k) ==
                  c * ValuedRational(p, factorial(k[0]), mpz_class(1)));
    }
}

TEST_CASE("(ii)<->(iii) equivalence on generated families (small; 50 families in acceptance)") {
    // affine families: v(a_k) = ceil(eta k) + c with eta > 0 -- certified, and the
    // ord profile is bounded by the affine function i -> (i - c)/eta
    for (auto [num, den, c] : {std::tuple{1L, 1L, 0L}, {1L, 2L, 3L}, {2L, 1L, -1L}}) {
        Frac eta(num, den);
        auto s = series_with_valuations(2, 32, [&](unsigned long k) {
            Frac v = eta * static_cast<long>(k) + c;
            mpz_class ceil_v;
            mpz_cdiv_q(ceil_v.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
            return std::max(0L, static_cast<long>(ceil_v.get_si()));
        });
        GrowthCertificate cert(eta, Frac(std::min(0L, c)));
        CHECK(dagger_classify(s, cert) == DaggerVerdict::certified);
        auto prof = ord_profile(s, 16);
        for (long i = 0; i <= 16; ++i) {
            Frac bound = (Frac(i) - Frac(std::min(0L, c))) / eta;
            CHECK(Frac(prof[static_cast<std::size_t>(i)]) <= bound);
        }
    }

    // a violating family: v(a_k) = floor(sqrt(k)); every affine certificate is
    // refuted once the horizon is long enough, and the profile outgrows the
    // affine envelope fitted to its first half
    auto s = series_with_valuations(2, 64, [](unsigned long k) {
        unsigned long r = 0;
        while ((r + 1) * (r + 1) <= k) ++r;
        return r;
    });
    CHECK(dagger_classify(s, GrowthCertificate(Frac(1, 4), Frac(2))) ==
          DaggerVerdict::refuted_at_horizon);
    auto prof = ord_profile(s, 8);
    // profile grows quadratically: successive differences increase
    CHECK(prof[8] - prof[4] > prof[4] - prof[0]);
}
