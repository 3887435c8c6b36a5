#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adist/diff_op.hpp"
#include "adist/function_action.hpp"
#include "adist/linalg.hpp"

using namespace adist;

namespace {

DiffOp D(const LevelContext& ctx, const Chart& c, long j, unsigned long k, long a = 1) {
    return DiffOp::term(ctx, c, j, k, ValuedRational(ctx.p.value(), a));
}

}  // namespace

TEST_CASE("compose: Leibniz in divided powers") {
    LevelContext p2m1(2, 1);
    Chart A = Chart::affine_line();

    // d o t = t d + 1
    auto dt = compose(D(p2m1, A, 0, 1), D(p2m1, A, 1, 0));
    CHECK(dt == D(p2m1, A, 1, 1) + D(p2m1, A, 0, 0));

    // d<2> o t = t d<2> + <2;1> d = t d<2> + d at p=2, m=1
    auto d2t = compose(D(p2m1, A, 0, 2), D(p2m1, A, 1, 0));
    CHECK(d2t == D(p2m1, A, 1, 2) + D(p2m1, A, 0, 1));

    // d<2> o d<2> = 3 d<4>, mirroring the Ga distribution product
    auto d2d2 = compose(D(p2m1, A, 0, 2), D(p2m1, A, 0, 2));
    CHECK(d2d2 == D(p2m1, A, 0, 4, 3));
}

TEST_CASE("compose is associative") {
    LevelContext ctx(3, 1);
    Chart T = Chart::torus();
    std::vector<DiffOp> ops = {D(ctx, T, -1, 2), D(ctx, T, 1, 1) + D(ctx, T, 0, 0, 5),
                               D(ctx, T, 2, 3, -2) + D(ctx, T, 0, 1)};
    for (auto& a : ops)
        for (auto& b : ops)
            for (auto& c : ops) CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
}

TEST_CASE("apply") {
    LevelContext p2m1(2, 1);
    Chart A = Chart::affine_line();
    LaurentPoly t3{{3, ValuedRational(2ul, 1)}};

    auto r = adist::apply(D(p2m1, A, 0, 1), t3);  // d(t^3) = 3t^2
    CHECK(r == LaurentPoly{{2, ValuedRational(2ul, 3)}});

    LaurentPoly t2{{2, ValuedRational(2ul, 1)}};
    CHECK(adist::apply(D(p2m1, A, 0, 2), t2) == LaurentPoly{{0, ValuedRational(2ul, 1)}});  // q_2! C(2,2)

    LaurentPoly t1{{1, ValuedRational(2ul, 1)}};
    CHECK(adist::apply(D(p2m1, A, 0, 2), t1).empty());  // d<2>(t) = 0
}

TEST_CASE("compose against apply: (PQ)f = P(Qf)") {
    LevelContext ctx(2, 1);
    Chart T = Chart::torus();
    auto P = D(ctx, T, -2, 1) + D(ctx, T, 1, 3, 2);
    auto Q = D(ctx, T, 1, 2, -3) + D(ctx, T, 0, 0, 7);
    for (long e = -3; e <= 3; ++e) {
        LaurentPoly f{{e, ValuedRational(2ul, 1)}};
        CHECK(adist::apply(compose(P, Q), f) == adist::apply(P, adist::apply(Q, f)));
    }
}

TEST_CASE("qmap closed forms") {
    LevelContext p3m0(3, 0);
    Group ga = Group::additive(1);
    auto img = qmap(DistElement::generator(ga, p3m0, 0, 3), Chart::affine_line());
    CHECK(img == D(p3m0, Chart::affine_line(), 0, 3));

    Group gm = Group::multiplicative(1);
    auto img2 = qmap(DistElement::generator(gm, p3m0, 0, 2), Chart::torus());
    CHECK(img2 == D(p3m0, Chart::torus(), 2, 2));
    CHECK(img2.str() == "T^2*d<2>");

    CHECK_THROWS_AS(qmap(DistElement::generator(ga, p3m0, 0, 1), Chart::torus()),
                    std::invalid_argument);
}

TEST_CASE("qmap on sl2: vector fields and the Casimir") {
    Group sl2 = Group::sl2();
    LevelContext p2m0(2, 0);
    Chart c0 = Chart::p1(0), c1 = Chart::p1(1);

    auto e = DistElement::generator(sl2, p2m0, 0, 1);
    auto h = DistElement::generator(sl2, p2m0, 1, 1);
    auto f = DistElement::generator(sl2, p2m0, 2, 1);

    CHECK(qmap(e, c0) == D(p2m0, c0, 0, 1, -1));
    CHECK(qmap(h, c0) == D(p2m0, c0, 1, 1, 2));
    CHECK(qmap(f, c0) == D(p2m0, c0, 2, 1));
    CHECK(qmap(e, c1) == D(p2m0, c1, 2, 1));
    CHECK(qmap(h, c1) == D(p2m0, c1, 1, 1, -2));
    CHECK(qmap(f, c1) == D(p2m0, c1, 0, 1, -1));

    // Omega = h^2/2 + h + 2 f e maps to zero in both charts
    auto omega = mul(h, h).scaled(ValuedRational(2ul, 1, 2)) + h +
                 mul(f, e).scaled(ValuedRational(2ul, 2));
    CHECK(qmap(omega, c0).is_zero());
    CHECK(qmap(omega, c1).is_zero());
}

TEST_CASE("qmap is an anti-homomorphism (sampled; wider sweep in acceptance)") {
    LevelContext ctx(2, 1);

    Group ga = Group::additive(1);
    for (std::uint32_t a = 0; a <= 6; ++a)
        for (std::uint32_t b = 0; b <= 6; ++b) {
            auto u = DistElement::generator(ga, ctx, 0, a);
            auto v = DistElement::generator(ga, ctx, 0, b);
            CHECK(qmap(mul(u, v), Chart::affine_line()) ==
                  compose(qmap(v, Chart::affine_line()), qmap(u, Chart::affine_line())));
        }

    Group sl2 = Group::sl2();
    std::vector<MultiIndex> basis;
    for (std::uint32_t a = 0; a <= 2; ++a)
        for (std::uint32_t b = 0; b <= 2; ++b)
            for (std::uint32_t c = 0; a + b + c <= 3; ++c) basis.push_back(MultiIndex{a, b, c});
    for (auto& ka : basis)
        for (auto& kb : basis) {
            auto u = DistElement::basis(sl2, ctx, ka);
            auto v = DistElement::basis(sl2, ctx, kb);
            for (auto chart : {Chart::p1(0), Chart::p1(1)})
                CHECK(qmap(mul(u, v), chart) == compose(qmap(v, chart), qmap(u, chart)));
        }
}

TEST_CASE("bracket sanity: [qmap x, qmap y] = qmap of the opposite bracket") {
    Group sl2 = Group::sl2();
    LevelContext ctx(2, 0);
    auto d = sl2.datum();
    for (auto chart : {Chart::p1(0), Chart::p1(1)})
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j) {
                auto x = DistElement::generator(sl2, ctx, i, 1);
                auto y = DistElement::generator(sl2, ctx, j, 1);
                // [Q(x), Q(y)] = Q([y, x])
                DistElement yx(sl2, ctx);
                for (auto& [b, c] : d->bracket(j, i)) {
                    MultiIndex k(3);
                    k[b] = 1;
                    yx.add_term(k, ValuedRational(2ul, c));
                }
                CHECK(op_commutator(qmap(x, chart), qmap(y, chart)) == qmap(yx, chart));
            }
}

TEST_CASE("integrality of qmap images of the divided basis up to order 8") {
    Group sl2 = Group::sl2();
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (unsigned m = 0; m <= 2; ++m) {
            LevelContext ctx(p, m);
            for (std::uint32_t a = 0; a <= 8; ++a)
                for (std::uint32_t b = 0; a + b <= 8; ++b)
                    for (std::uint32_t c = 0; a + b + c <= 8; ++c) {
                        auto u = DistElement::basis(sl2, ctx, MultiIndex{a, b, c});
                        CHECK(qmap(u, Chart::p1(0)).is_integral());
                        CHECK(qmap(u, Chart::p1(1)).is_integral());
                    }
        }
}

TEST_CASE("eval_at_identity round-trips qmap") {
    for (unsigned long p : {2ul, 3ul})
        for (unsigned m = 0; m <= 2; ++m) {
            LevelContext ctx(p, m);
            Group ga = Group::additive(1);
            Group gm = Group::multiplicative(1);
            for (std::uint32_t k = 0; k <= 8; ++k) {
                auto ua = DistElement::generator(ga, ctx, 0, k);
                CHECK(eval_at_identity(qmap(ua, Chart::affine_line()), ga) == ua);
                auto um = DistElement::generator(gm, ctx, 0, k);
                CHECK(eval_at_identity(qmap(um, Chart::torus()), gm) == um);
            }
        }

    // constants evaluate to multiples of the unit
    LevelContext ctx(2, 1);
    Group ga = Group::additive(1);
    auto c = DiffOp::unit(ctx, Chart::affine_line()).scaled(ValuedRational(2ul, 7, 3));
    CHECK(eval_at_identity(c, ga) ==
          DistElement::unit(ga, ctx).scaled(ValuedRational(2ul, 7, 3)));

    // Gm: T^2 d<2> evaluates back to xi<2>
    Group gm = Group::multiplicative(1);
    CHECK(eval_at_identity(D(ctx, Chart::torus(), 2, 2), gm) ==
          DistElement::generator(gm, ctx, 0, 2));
}

TEST_CASE("action compatibility: act(P(e), f) = (Pf)(e)") {
    LevelContext ctx(2, 1);
    Group ga = Group::additive(1);
    auto P = D(ctx, Chart::affine_line(), 1, 2, 3) + D(ctx, Chart::affine_line(), 0, 1) +
             D(ctx, Chart::affine_line(), 2, 0, -5);
    for (long deg = 0; deg <= 8; ++deg) {
        LaurentPoly f{{deg, ValuedRational(2ul, 1)}};
        GroupFunction fg = GroupFunction::monomial(ga, 2, {deg}, ValuedRational(2ul, 1));
        LaurentPoly Pf = adist::apply(P, f);
        ValuedRational at0(2ul);
        if (auto it = Pf.find(0); it != Pf.end()) at0 = it->second;
        CHECK(act(eval_at_identity(P, ga), fg) == at0);
    }

    Group gm = Group::multiplicative(1);
    auto Q = D(ctx, Chart::torus(), -1, 2, 3) + D(ctx, Chart::torus(), 1, 1) +
             D(ctx, Chart::torus(), 0, 0, 7);
    for (long deg = -4; deg <= 4; ++deg) {
        LaurentPoly f{{deg, ValuedRational(2ul, 1)}};
        GroupFunction fg = GroupFunction::monomial(gm, 2, {deg}, ValuedRational(2ul, 1));
        LaurentPoly Qf = adist::apply(Q, f);
        ValuedRational at1(2ul);
        for (auto& [e, c] : Qf) at1 += c;
        CHECK(act(eval_at_identity(Q, gm), fg) == at1);
    }
}

TEST_CASE("evaluation at the identity is not a ring morphism on the torus") {
    // at m = 0, p odd: d^2(e) = xi^<2>, while xi.xi = xi^<2> + xi
    LevelContext p3m0(3, 0);
    Group gm = Group::multiplicative(1);
    auto d2 = D(p3m0, Chart::torus(), 0, 2);  // d^2 = d<2> at m=0
    auto d1 = D(p3m0, Chart::torus(), 0, 1);
    auto lhs = eval_at_identity(d2, gm);
    auto xi = eval_at_identity(d1, gm);
    CHECK(lhs == DistElement::generator(gm, p3m0, 0, 2));
    CHECK(lhs != mul(xi, xi));
    CHECK(mul(xi, xi) - lhs == xi);  // the defect is exactly the lower-order term
}

TEST_CASE("translate_conjugate") {
    LevelContext ctx(2, 1);
    Chart A = Chart::affine_line();

    // d^<k> is translation invariant
    for (long cvals : {1L, -3L, 5L})
        for (unsigned long k = 0; k <= 6; ++k)
            CHECK(translate_conjugate(D(ctx, A, 0, k), ValuedRational(2ul, cvals)) ==
                  D(ctx, A, 0, k));

    // T^k d^<k> is invariant under t -> ct
    Chart T = Chart::torus();
    for (unsigned long k = 0; k <= 6; ++k)
        CHECK(translate_conjugate(D(ctx, T, static_cast<long>(k), k), ValuedRational(2ul, 3)) ==
              D(ctx, T, static_cast<long>(k), k));

    // identity points change nothing
    auto P = D(ctx, A, 2, 1, 5) + D(ctx, A, 0, 3);
    CHECK(translate_conjugate(P, ValuedRational(2ul, 0)) == P);
    auto Q = D(ctx, T, -1, 2, 3);
    CHECK(translate_conjugate(Q, ValuedRational(2ul, 1)) == Q);

    // t^j picks up the shift; composing two translations composes the shifts
    CHECK(translate_conjugate(D(ctx, A, 1, 0), ValuedRational(2ul, 3)) ==
          D(ctx, A, 1, 0) + D(ctx, A, 0, 0, -3));
    auto twice = translate_conjugate(translate_conjugate(P, ValuedRational(2ul, 1)),
                                     ValuedRational(2ul, -4));
    CHECK(twice == translate_conjugate(P, ValuedRational(2ul, -3)));

    CHECK_THROWS_AS(translate_conjugate(Q, ValuedRational(2ul, 2)), std::invalid_argument);
}

TEST_CASE("invariant_operators equals the qmap image of the distribution basis") {
    for (unsigned long p : {2ul, 3ul}) {
        LevelContext ctx(p, 1);

        Group ga = Group::additive(1);
        auto inv = invariant_operators(2, ga, ctx);
        REQUIRE(inv.size() == 3);
        for (auto& op : inv) {
            for (long cv : {1L, -3L, 5L})
                CHECK(translate_conjugate(op, ValuedRational(p, cv)) == op);
        }
        // {1, d, d<2>}
        RatMatrix got, want;
        auto to_row = [&](const DiffOp& op) {
            std::vector<ValuedRational> row;
            for (long j = 0; j <= 2; ++j)
                for (unsigned long k = 0; k <= 2; ++k) row.push_back(op.coefficient(j, k));
            return row;
        };
        for (auto& op : inv) got.push_back(to_row(op));
        for (std::uint32_t k = 0; k <= 2; ++k)
            want.push_back(to_row(qmap(DistElement::generator(ga, ctx, 0, k), Chart::affine_line())));
        CHECK(same_row_span(got, want));

        Group gm = Group::multiplicative(1);
        auto invm = invariant_operators(2, gm, ctx);
        REQUIRE(invm.size() == 3);
        RatMatrix gotm, wantm;
        auto to_rowm = [&](const DiffOp& op) {
            std::vector<ValuedRational> row;
            for (long j = -2; j <= 2; ++j)
                for (unsigned long k = 0; k <= 2; ++k) row.push_back(op.coefficient(j, k));
            return row;
        };
        for (auto& op : invm) gotm.push_back(to_rowm(op));
        for (std::uint32_t k = 0; k <= 2; ++k)
            wantm.push_back(to_rowm(qmap(DistElement::generator(gm, ctx, 0, k), Chart::torus())));
        CHECK(same_row_span(gotm, wantm));

        CHECK(invariant_operators(0, ga, ctx).size() == 1);
    }
}
