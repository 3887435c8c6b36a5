#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adist/function_action.hpp"

using namespace adist;

namespace {

// coproduct of a monomial function, for the compatibility check:
// Ga: T^j -> sum C(j,i) T^i (x) T^{j-i};  Gm: T^j -> T^j (x) T^j
std::vector<std::tuple<long, long, ValuedRational>> comul_fn(CoordKind kind, long j,
                                                             unsigned long p) {
    std::vector<std::tuple<long, long, ValuedRational>> out;
    if (kind == CoordKind::multiplicative) {
        out.emplace_back(j, j, ValuedRational(p, 1));
        return out;
    }
    for (long i = 0; i <= j; ++i)
        out.emplace_back(i, j - i,
                         ValuedRational(p, binomial(static_cast<unsigned long>(j),
                                                    static_cast<unsigned long>(i)),
                                        mpz_class(1)));
    return out;
}

}  // namespace

TEST_CASE("act on the additive line") {
    LevelContext p2m1(2, 1);
    Group ga = Group::additive(1);
    auto xi2 = DistElement::generator(ga, p2m1, 0, 2);
    auto t2 = GroupFunction::monomial(ga, 2, {2}, ValuedRational(2ul, 1));
    CHECK(act(xi2, t2) == ValuedRational(2ul, 1));  // q_2! C(2,2) = 1

    // unit distribution evaluates at the identity
    auto f = GroupFunction::monomial(ga, 2, {3}, ValuedRational(2ul, 5)) +
             GroupFunction::monomial(ga, 2, {0}, ValuedRational(2ul, 7));
    CHECK(act(DistElement::unit(ga, p2m1), f) == ValuedRational(2ul, 7));
    CHECK(f.at_identity() == ValuedRational(2ul, 7));

    CHECK(act(xi2, GroupFunction::monomial(ga, 2, {1}, ValuedRational(2ul, 1))).is_zero());
}

TEST_CASE("act on the torus") {
    LevelContext p2m0(2, 0);
    Group gm = Group::multiplicative(1);
    auto xi = DistElement::generator(gm, p2m0, 0, 1);
    auto T = GroupFunction::monomial(gm, 2, {1}, ValuedRational(2ul, 1));
    CHECK(act(xi, T) == ValuedRational(2ul, 1));  // d/dT (T) at T=1

    // Laurent exponents work: xi(T^{-1}) = C(-1,1) = -1
    auto Tinv = GroupFunction::monomial(gm, 2, {-1}, ValuedRational(2ul, 1));
    CHECK(act(xi, Tinv) == ValuedRational(2ul, -1));

    CHECK_THROWS_AS(GroupFunction::monomial(Group::additive(1), 2, {-1}, ValuedRational(2ul, 1)),
                    std::invalid_argument);
}

TEST_CASE("taylor expansions") {
    LevelContext p2m1(2, 1);
    Group ga = Group::additive(1);

    // f = T: t^{1} with coefficient 1, nothing else
    auto T = GroupFunction::monomial(ga, 2, {1}, ValuedRational(2ul, 1));
    auto s1 = taylor(T, 1, p2m1);
    CHECK(s1.coefficient(MultiIndex{1}) == ValuedRational(2ul, 1));
    CHECK(s1.coefficient(MultiIndex{0}).is_zero());

    // f = T^2 at p=2, m=1: coefficient of t^{2} is <xi^<2>, T^2> = 1
    auto T2 = GroupFunction::monomial(ga, 2, {2}, ValuedRational(2ul, 1));
    CHECK(taylor(T2, 2, p2m1).coefficient(MultiIndex{2}) == ValuedRational(2ul, 1));

    // Gm, f = T = 1 + t: expansion 1 + t^{1}
    Group gm = Group::multiplicative(1);
    auto Tm = GroupFunction::monomial(gm, 2, {1}, ValuedRational(2ul, 1));
    auto sm = taylor(Tm, 2, p2m1);
    CHECK(sm.coefficient(MultiIndex{0}) == ValuedRational(2ul, 1));
    CHECK(sm.coefficient(MultiIndex{1}) == ValuedRational(2ul, 1));
    CHECK(sm.coefficient(MultiIndex{2}).is_zero());
}

TEST_CASE("level-infinity Taylor data reconstructs polynomials exactly") {
    LevelContext inf(Prime(3), Level::infinity());
    for (auto g : {Group::additive(1), Group::multiplicative(1)}) {
        GroupFunction f(g, 3);
        f.add_term({0}, ValuedRational(3ul, 2));
        f.add_term({1}, ValuedRational(3ul, -5, 2));
        f.add_term({3}, ValuedRational(3ul, 7, 9));
        f.add_term({4}, ValuedRational(3ul, 1));
        CHECK(from_taylor(taylor(f, 6, inf), g) == f);
    }
}

TEST_CASE("Taylor coefficients of integral polynomials are integral") {
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (unsigned m = 0; m <= 2; ++m) {
            LevelContext ctx(p, m);
            for (auto g : {Group::additive(1), Group::multiplicative(1)}) {
                GroupFunction f(g, p);
                f.add_term({5}, ValuedRational(p, 3));
                f.add_term({2}, ValuedRational(p, -11));
                f.add_term({0}, ValuedRational(p, 1));
                auto series = taylor(f, 8, ctx);
                for (auto& [k, c] : series.terms()) CHECK(c.valuation() >= 0);
            }
        }
}

TEST_CASE("act is compatible with multiplication through the function coproduct") {
    // act(u.v, f) = sum act(u, f_(1)) act(v, f_(2)) over the coproduct of f
    for (unsigned long p : {2ul, 3ul})
        for (unsigned m = 0; m <= 1; ++m) {
            LevelContext ctx(p, m);
            for (auto kind : {CoordKind::additive, CoordKind::multiplicative}) {
                Group g = kind == CoordKind::additive ? Group::additive(1)
                                                      : Group::multiplicative(1);
                for (std::uint32_t a = 0; a <= 4; ++a)
                    for (std::uint32_t b = 0; b <= 4; ++b)
                        for (long j = 0; j <= 8; ++j) {
                            auto u = DistElement::generator(g, ctx, 0, a);
                            auto v = DistElement::generator(g, ctx, 0, b);
                            auto f = GroupFunction::monomial(g, p, {j}, ValuedRational(p, 1));
                            ValuedRational lhs = act(mul(u, v), f);
                            ValuedRational rhs(p);
                            for (auto& [j1, j2, c] : comul_fn(kind, j, p)) {
                                auto f1 = GroupFunction::monomial(g, p, {j1}, ValuedRational(p, 1));
                                auto f2 = GroupFunction::monomial(g, p, {j2}, ValuedRational(p, 1));
                                rhs += c * act(u, f1) * act(v, f2);
                            }
                            CHECK(lhs == rhs);
                        }
            }
        }
}
