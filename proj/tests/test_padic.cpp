#include <atomic>
#include <thread>
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adist/padic.hpp"

using namespace adist;

namespace {

// Independent route: materialize the factorials and divide.
ValuedRational multinomial_by_division(unsigned long k, unsigned long kp, const LevelContext& ctx) {
    mpz_class num = factorial(q_of(k, ctx));
    mpz_class den = factorial(q_of(kp, ctx)) * factorial(q_of(k - kp, ctx));
    return ValuedRational(ctx.p.value(), num, den);
}

ValuedRational binomial_by_division(unsigned long k, unsigned long kp, const LevelContext& ctx) {
    ValuedRational c(ctx.p.value(), binomial(k, kp), mpz_class(1));
    return c / multinomial_by_division(k, kp, ctx);
}

}  // namespace

TEST_CASE("q_of: Euclidean quotient by p^m") {
    CHECK(q_of(4, LevelContext(2, 1)) == 2);
    CHECK(q_of(0, LevelContext(2, 1)) == 0);
    CHECK(q_of(0, LevelContext(5, 3)) == 0);
    CHECK(q_of(7, LevelContext(3, 1)) == 2);
    CHECK(q_of(7, LevelContext(3, 0)) == 7);           // m = 0: identity
    CHECK(q_of(1000, LevelContext(Prime(3), Level::infinity())) == 0);
    CHECK(q_of(5, LevelContext(2, 40)) == 0);          // p^m far beyond k
}

TEST_CASE("factorial_valuation: Legendre sums") {
    CHECK(factorial_valuation(4, 2ul) == 3);   // 4! = 24
    CHECK(factorial_valuation(0, 2ul) == 0);
    CHECK(factorial_valuation(10, 5ul) == 2);
    // spot-check against direct factorization
    for (unsigned long k : {1ul, 7ul, 32ul, 100ul})
        for (unsigned long p : {2ul, 3ul, 5ul})
            CHECK(static_cast<long>(factorial_valuation(k, p)) == int_valuation(factorial(k), p));
}

TEST_CASE("pd_multinomial scalar cases") {
    LevelContext p2m1(2, 1);
    CHECK(pd_multinomial(4, 2, p2m1) == ValuedRational(2ul, 2));   // 2!/(1! 1!)
    CHECK(pd_multinomial(9, 9, LevelContext(3, 2)) == ValuedRational(3ul, 1));
    CHECK(pd_multinomial(2, 1, LevelContext(2, 0)) == ValuedRational(2ul, 2));
    CHECK_THROWS_AS(pd_multinomial(2, 3, p2m1), std::invalid_argument);
}

TEST_CASE("pd_binomial scalar cases") {
    CHECK(pd_binomial(4, 2, LevelContext(2, 1)) == ValuedRational(2ul, 3));  // 6/2
    CHECK(pd_binomial(2, 1, LevelContext(2, 0)) == ValuedRational(2ul, 1));  // 2/2
    CHECK(pd_binomial(17, 0, LevelContext(5, 2)) == ValuedRational(5ul, 1));
    CHECK_THROWS_AS(pd_binomial(1, 2, LevelContext(2, 1)), std::invalid_argument);
}

TEST_CASE("factored route agrees with direct big-integer division") {
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (unsigned m = 0; m <= 3; ++m) {
            LevelContext ctx(p, m);
            for (unsigned long k = 0; k <= 48; ++k)
                for (unsigned long kp = 0; kp <= k; ++kp) {
                    CHECK(pd_multinomial(k, kp, ctx) == multinomial_by_division(k, kp, ctx));
                    CHECK(pd_binomial(k, kp, ctx) == binomial_by_division(k, kp, ctx));
                }
        }
}

TEST_CASE("multi-index lifts are componentwise products") {
    LevelContext p2m1(2, 1);
    MultiIndex uk{4, 2}, ukp{2, 1};
    CHECK(pd_binomial(uk, ukp, p2m1) == pd_binomial(4, 2, p2m1) * pd_binomial(2, 1, p2m1));
    CHECK(pd_binomial(uk, ukp, p2m1) == ValuedRational(2ul, 6));  // 3 * 2
    CHECK(pd_multinomial(uk, ukp, p2m1) ==
          pd_multinomial(4, 2, p2m1) * pd_multinomial(2, 1, p2m1));

    MultiIndex zero{0, 0};
    CHECK(pd_binomial(uk, zero, p2m1) == ValuedRational(2ul, 1));
    CHECK(pd_multinomial(uk, zero, p2m1) == ValuedRational(2ul, 1));

    LevelContext p2m0(2, 0);
    CHECK(pd_binomial(MultiIndex{2, 2}, MultiIndex{1, 1}, p2m0) == ValuedRational(2ul, 1));

    CHECK_THROWS_AS(pd_binomial(MultiIndex{1, 1}, MultiIndex{2, 0}, p2m1), std::invalid_argument);
    CHECK_THROWS_AS(pd_binomial(MultiIndex{1, 1}, MultiIndex{1}, p2m1), std::invalid_argument);
}

TEST_CASE("pd_binomial is p-integral (sampled; full range in acceptance)") {
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (unsigned m = 0; m <= 4; ++m) {
            LevelContext ctx(p, m);
            for (unsigned long k = 0; k <= 96; k += 3)
                for (unsigned long kp = 0; kp <= k; kp += 2)
                    CHECK(pd_binomial(k, kp, ctx).valuation() >= 0);
        }
}

TEST_CASE("multinomial identity <k'+k''; k'> q_{k'}! q_{k''}! = q_{k'+k''}!") {
    for (unsigned long p : {2ul, 3ul})
        for (unsigned m = 0; m <= 3; ++m) {
            LevelContext ctx(p, m);
            for (unsigned long kp = 0; kp <= 40; kp += 3)
                for (unsigned long kpp = 0; kpp <= 40; kpp += 5) {
                    ValuedRational lhs = pd_multinomial(kp + kpp, kp, ctx) *
                                         ValuedRational(p, factorial(q_of(kp, ctx)), mpz_class(1)) *
                                         ValuedRational(p, factorial(q_of(kpp, ctx)), mpz_class(1));
                    CHECK(lhs == ValuedRational(p, factorial(q_of(kp + kpp, ctx)), mpz_class(1)));
                }
        }
}

TEST_CASE("symmetry in k' <-> k - k'") {
    LevelContext ctx(3, 1);
    for (unsigned long k = 0; k <= 40; ++k)
        for (unsigned long kp = 0; kp <= k; ++kp) {
            CHECK(pd_binomial(k, kp, ctx) == pd_binomial(k, k - kp, ctx));
            CHECK(pd_multinomial(k, kp, ctx) == pd_multinomial(k, k - kp, ctx));
        }
}

TEST_CASE("level degenerations") {
    for (unsigned long k = 0; k <= 30; ++k)
        for (unsigned long kp = 0; kp <= k; ++kp) {
            LevelContext m0(2, 0);
            CHECK(pd_multinomial(k, kp, m0) == ValuedRational(2ul, binomial(k, kp), mpz_class(1)));
            CHECK(pd_binomial(k, kp, m0) == ValuedRational(2ul, 1));

            LevelContext minf(Prime(2), Level::infinity());
            CHECK(pd_multinomial(k, kp, minf) == ValuedRational(2ul, 1));
            CHECK(pd_binomial(k, kp, minf) == ValuedRational(2ul, binomial(k, kp), mpz_class(1)));
        }
}

TEST_CASE("ValuedRational basics") {
    ValuedRational a(2ul, mpz_class(10), mpz_class(4));  // 5/2
    CHECK(a.num() == 5);
    CHECK(a.den() == 2);
    CHECK(a.valuation() == -1);
    CHECK(!a.is_p_integral());
    CHECK(a.str() == "5/2");

    ValuedRational b = ValuedRational::parse(2, "-3/6");
    CHECK(b.str() == "-1/2");
    CHECK((a + b).str() == "2");
    CHECK((a + b).valuation() == 1);
    CHECK((a * b).str() == "-5/4");
    CHECK((a * b).valuation() == -2);
    CHECK((a - a).is_zero());
    CHECK((a - a).valuation() == kValInfinity);
    CHECK(a.inverse().str() == "2/5");
    CHECK(a.pow(3).str() == "125/8");

    ValuedRational c(3ul, 7);
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK_THROWS_AS(a / ValuedRational(2ul, 0), std::domain_error);
    CHECK_THROWS_AS(Prime(9), std::invalid_argument);
    CHECK_THROWS_AS(Prime(1), std::invalid_argument);
}

TEST_CASE("binomial_z handles negative upper argument") {
    CHECK(binomial_z(-1, 3) == -1);
    CHECK(binomial_z(-2, 2) == 3);
    CHECK(binomial_z(4, 2) == 6);
    CHECK(binomial_z(3, 5) == 0);
}

TEST_CASE("memoized tables are safe under concurrent readers") {
    std::vector<std::thread> workers;
    std::atomic<bool> ok{true};
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&, w] {
            LevelContext ctx(w % 2 ? 3ul : 2ul, 1 + static_cast<unsigned>(w % 3));
            for (unsigned long k = 0; k <= 160; ++k)
                for (unsigned long kp = 0; kp <= k; kp += 7)
                    if (pd_binomial(k, kp, ctx).valuation() < 0) ok = false;
        });
    for (auto& t : workers) t.join();
    CHECK(ok.load());
}
