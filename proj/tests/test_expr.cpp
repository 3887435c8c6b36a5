#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "adist/expr.hpp"
#include "adist/flag_p1.hpp"
#include "adist/io_json.hpp"

using namespace adist;

TEST_CASE("parse basics and error positions") {
    CHECK_NOTHROW(parse("xi<2> * xi<2>"));
    CHECK_NOTHROW(parse("[h, e^2/2!]"));
    CHECK_NOTHROW(parse("(e^4/4!)*(f^4/4!)"));
    CHECK_NOTHROW(parse("3/4*xi<2> - xi + 1"));

    try {
        parse("xi<");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.line == 1);
        CHECK(err.col == 4);
    }

    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("xi<2> xi<2>"), ParseError);  // missing '*'
    CHECK_THROWS_AS(parse("[h, e"), ParseError);
    CHECK_THROWS_AS(parse("(xi"), ParseError);
}

TEST_CASE("evaluation of distributions") {
    LevelContext p2m1(2, 1);
    Group ga = Group::additive(1);

    auto u = eval_dist(parse("xi<2> * xi<2>"), ga, p2m1);
    CHECK(u == DistElement::generator(ga, p2m1, 0, 4).scaled(ValuedRational(2ul, 3)));
    CHECK(u.str() == "3*xi<4>");

    Group sl2 = Group::sl2();
    LevelContext p2m0(2, 0);
    auto fe = eval_dist(parse("f*e"), sl2, p2m0);
    CHECK(fe.str() == "e*f - h");

    // brackets and scalar division with factorial literals
    auto br = eval_dist(parse("[h, e^2/2!]"), sl2, p2m0);
    auto direct = commutator(DistElement::generator(sl2, p2m0, 1, 1),
                             mul(DistElement::generator(sl2, p2m0, 0, 1),
                                 DistElement::generator(sl2, p2m0, 0, 1))
                                 .scaled(ValuedRational(2ul, 1, 2)));
    CHECK(br == direct);

    // binom(h,k) is the binomial generator
    auto b2 = eval_dist(parse("binom(h,2)"), sl2, p2m0);
    CHECK(b2 == DistElement::generator(sl2, p2m0, 1, 2).scaled(ValuedRational(2ul, 1, 2)));

    // unknown generators are rejected with context
    CHECK_THROWS_AS(eval_dist(parse("nope<2>"), ga, p2m1), std::invalid_argument);
    CHECK_THROWS_AS(eval_dist(parse("t^2"), ga, p2m1), std::invalid_argument);
    CHECK_THROWS_AS(eval_dist(parse("e/f"), sl2, p2m0), std::invalid_argument);
}

TEST_CASE("evaluation of differential operators") {
    LevelContext p2m1(2, 1);
    Chart A = Chart::affine_line();

    auto P = eval_diffop(parse("d<2>*t"), A, p2m1);
    CHECK(P == DiffOp::term(p2m1, A, 1, 2, ValuedRational(2ul, 1)) +
                   DiffOp::term(p2m1, A, 0, 1, ValuedRational(2ul, 1)));

    auto Q = eval_diffop(parse("T^2*d<2>"), Chart::torus(), p2m1);
    CHECK(Q == DiffOp::term(p2m1, Chart::torus(), 2, 2, ValuedRational(2ul, 1)));
    CHECK(Q.str() == "T^2*d<2>");

    // plain power: d^2 = (2!/q_2!) d<2> = 2 d<2> at p=2, m=1
    auto D2 = eval_diffop(parse("d^2"), A, p2m1);
    CHECK(D2 == DiffOp::term(p2m1, A, 0, 2, ValuedRational(2ul, 2)));

    // Laurent coordinates on the torus only
    CHECK_NOTHROW(eval_diffop(parse("t^-1*d"), Chart::torus(), p2m1));
    CHECK_THROWS_AS(eval_diffop(parse("t^-1*d"), A, p2m1), std::invalid_argument);
}

TEST_CASE("round trip: parse(print) is the identity on 200 generated elements") {
    std::mt19937 rng(2024);
    LevelContext ctxs[] = {LevelContext(2, 1), LevelContext(3, 0),
                           LevelContext(Prime(5), Level::infinity())};
    Group groups[] = {Group::additive(1), Group::multiplicative(1), Group::additive(3),
                      Group::sl2(), Group::gl2()};
    int count = 0;
    while (count < 200) {
        const Group& g = groups[rng() % 5];
        const LevelContext& ctx = ctxs[rng() % 3];
        DistElement u(g, ctx);
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            MultiIndex k(g.rank());
            for (auto& e : k.e) e = rng() % 4;
            long num = static_cast<long>(rng() % 19) - 9;
            long den = 1 + static_cast<long>(rng() % 6);
            u.add_term(k, ValuedRational(ctx.p.value(), num, den));
        }
        if (u.is_zero()) continue;
        ++count;
        CHECK(eval_dist(parse(u.str()), g, ctx) == u);
    }
}

TEST_CASE("JSON serialization round trips and pinned shapes") {
    LevelContext p2m1(2, 1);

    // distributions: toral and reductive shapes
    Group ga = Group::additive(2);
    DistElement u(ga, p2m1);
    u.add_term(MultiIndex{2, 1}, ValuedRational(2ul, 10, 3));
    u.add_term(MultiIndex{0, 0}, ValuedRational(2ul, -1));
    Json ju = dist_to_json(u);
    CHECK(ju["p"] == 2);
    CHECK(ju["m"] == 1);
    CHECK(ju["terms"][0]["exp"] == Json::array({2, 1}));
    CHECK(ju["terms"][0]["coeff"] == "10/3");
    CHECK(dist_from_json(ju) == u);

    Group sl2 = Group::sl2();
    auto fe = eval_dist(parse("f*e"), sl2, LevelContext(2, 0));
    Json jfe = dist_to_json(fe);
    CHECK(jfe["terms"][0].contains("n"));
    CHECK(jfe["terms"][0].contains("t"));
    CHECK(jfe["terms"][0].contains("nbar"));
    CHECK(dist_from_json(jfe) == fe);

    // level infinity serializes as "inf"
    LevelContext inf(Prime(3), Level::infinity());
    auto w = DistElement::generator(Group::multiplicative(1), inf, 0, 4);
    Json jw = dist_to_json(w);
    CHECK(jw["m"] == "inf");
    CHECK(dist_from_json(jw) == w);

    // operators: the pinned example shape {"chart":"P1:0",...,"j":-1,"k":2}
    DiffOp P(p2m1, Chart::p1(0));
    P.add_term(-1, 2, ValuedRational(2ul, 5, 2));
    Json jp = diffop_to_json(P);
    CHECK(jp["chart"] == "P1:0");
    CHECK(jp["terms"][0]["j"] == -1);
    CHECK(jp["terms"][0]["k"] == 2);
    CHECK(jp["terms"][0]["coeff"] == "5/2");
    CHECK(diffop_from_json(jp) == P);

    // pd polynomials: terms sorted lexicographically by exponent
    PdPolynomial f(p2m1, 2, 6);
    f.add_term(MultiIndex{1, 2}, ValuedRational(2ul, 1));
    f.add_term(MultiIndex{0, 3}, ValuedRational(2ul, 7));
    Json jf = pd_to_json(f);
    CHECK(jf["terms"][0]["exp"] == Json::array({0, 3}));
    CHECK(pd_from_json(jf) == f);

    // series with certificate and pattern
    TruncatedSeries s(inf, 1, 8);
    s.add_term(MultiIndex{0}, ValuedRational(3ul, 1));
    s.add_term(MultiIndex{2}, ValuedRational(3ul, 9));
    s.declare_pattern(ValuationPattern{Frac(1), Frac(0)});
    s.attach_certificate(GrowthCertificate(Frac(1, 2), Frac(0)));
    Json js = series_to_json(s);
    auto s2 = series_from_json(js);
    CHECK(s2.terms() == s.terms());
    CHECK(s2.horizon() == 8);
    REQUIRE(s2.certificate());
    CHECK(s2.certificate()->eta == Frac(1, 2));
    REQUIRE(s2.pattern());
    CHECK(s2.pattern()->slope == Frac(1));

    // groups
    for (auto g : {Group::additive(3), Group::multiplicative(1), Group::sl2(), Group::gl2(),
                   Group::product({Group::additive(1), Group::multiplicative(2)})})
        CHECK(group_from_json(group_to_json(g)) == g);
}

TEST_CASE("round trip on differential operators") {
    std::mt19937 rng(7);
    LevelContext ctx(2, 1);
    for (int trial = 0; trial < 60; ++trial) {
        Chart chart = trial % 2 ? Chart::torus() : Chart::affine_line();
        DiffOp P(ctx, chart);
        int terms = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            long j = static_cast<long>(rng() % 5) - (chart.allows_poles() ? 2 : 0);
            unsigned long k = rng() % 5;
            long num = static_cast<long>(rng() % 19) - 9;
            if (num == 0) num = 1;
            P.add_term(j, k, ValuedRational(2ul, num, 1 + static_cast<long>(rng() % 4)));
        }
        if (P.is_zero()) continue;
        CHECK(eval_diffop(parse(P.str()), chart, ctx) == P);
    }
}
