#include "adist/diff_op.hpp"

#include <algorithm>
#include <sstream>

#include "adist/enveloping.hpp"
#include "adist/linalg.hpp"

namespace adist {

std::string Chart::str() const {
    switch (kind) {
        case Kind::affine_line: return "A1";
        case Kind::torus: return "Gm";
        case Kind::p1: return "P1:" + std::to_string(index);
    }
    return "?";
}

DiffOp DiffOp::unit(const LevelContext& ctx, const Chart& c) {
    DiffOp r(ctx, c);
    r.add_term(0, 0, ValuedRational(ctx.p.value(), 1));
    return r;
}

DiffOp DiffOp::term(const LevelContext& ctx, const Chart& c, long j, unsigned long k,
                    const ValuedRational& a) {
    DiffOp r(ctx, c);
    r.add_term(j, k, a);
    return r;
}

long DiffOp::order() const {
    long d = -1;
    for (auto& [jk, c] : terms_) d = std::max<long>(d, static_cast<long>(jk.second));
    return d;
}

long DiffOp::min_laurent() const {
    long j = 0;
    for (auto& [jk, c] : terms_) j = std::min(j, jk.first);
    return j;
}

bool DiffOp::is_integral() const {
    for (auto& [jk, c] : terms_)
        if (!c.is_p_integral()) return false;
    return true;
}

ValuedRational DiffOp::coefficient(long j, unsigned long k) const {
    auto it = terms_.find({j, k});
    return it == terms_.end() ? ValuedRational(ctx_.p.value()) : it->second;
}

void DiffOp::add_term(long j, unsigned long k, const ValuedRational& c) {
    if (j < 0 && !chart_.allows_poles())
        throw std::invalid_argument("DiffOp: negative exponent on the affine line");
    if (c.is_zero()) return;
    auto key = std::make_pair(j, k);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

DiffOp DiffOp::operator-() const {
    DiffOp r(ctx_, chart_);
    for (auto& [jk, c] : terms_) r.terms_.emplace(jk, -c);
    return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    if (ctx_ != o.ctx_ || chart_ != o.chart_) throw std::invalid_argument("DiffOp: chart mismatch");
    for (auto& [jk, c] : o.terms_) add_term(jk.first, jk.second, c);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    if (ctx_ != o.ctx_ || chart_ != o.chart_) throw std::invalid_argument("DiffOp: chart mismatch");
    for (auto& [jk, c] : o.terms_) add_term(jk.first, jk.second, -c);
    return *this;
}

DiffOp DiffOp::scaled(const ValuedRational& c) const {
    DiffOp r(ctx_, chart_);
    if (c.is_zero()) return r;
    for (auto& [jk, v] : terms_) r.terms_.emplace(jk, v * c);
    return r;
}

std::string DiffOp::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<std::pair<long, unsigned long>, ValuedRational>> sorted(terms_.begin(),
                                                                                  terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first < b.first.first;
    });
    const std::string t = chart_.coord();
    std::ostringstream os;
    bool first = true;
    for (auto& [jk, c0] : sorted) {
        ValuedRational c = c0;
        bool neg = c.num() < 0;
        if (first) {
            if (neg) { os << "-"; c = -c; }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) c = -c;
        }
        first = false;
        std::string mono;
        if (jk.first != 0) {
            mono = t;
            if (jk.first != 1) mono += "^" + std::to_string(jk.first);
        }
        if (jk.second != 0) {
            if (!mono.empty()) mono += "*";
            mono += "d";
            if (jk.second != 1) mono += "<" + std::to_string(jk.second) + ">";
        }
        if (mono.empty())
            os << c.str();
        else if (c.is_one())
            os << mono;
        else
            os << c.str() << "*" << mono;
    }
    return os.str();
}

DiffOp compose(const DiffOp& P, const DiffOp& Q) {
    if (P.ctx() != Q.ctx() || P.chart() != Q.chart())
        throw std::invalid_argument("compose: chart mismatch");
    const LevelContext& ctx = P.ctx();
    const unsigned long p = ctx.p.value();
    DiffOp r(ctx, P.chart());
    for (auto& [jk1, c1] : P.terms())
        for (auto& [jk2, c2] : Q.terms()) {
            const long j1 = jk1.first, j2 = jk2.first;
            const unsigned long k1 = jk1.second, k2 = jk2.second;
            // d^<k1> t^{j2} = sum_{a<=k1} <k1;a> d^<a>(t^{j2}) d^<k1-a>
            for (unsigned long a = 0; a <= k1; ++a) {
                mpz_class cjk = binomial_z(j2, a);
                if (cjk == 0) continue;
                ValuedRational w = c1 * c2 * pd_multinomial(k1, a, ctx) *
                                   q_factorial(MultiIndex{static_cast<std::uint32_t>(a)}, ctx) *
                                   ValuedRational(p, cjk, mpz_class(1)) *
                                   pd_binomial(k1 - a + k2, k2, ctx);
                r.add_term(j1 + j2 - static_cast<long>(a), k1 - a + k2, w);
            }
        }
    return r;
}

DiffOp op_commutator(const DiffOp& P, const DiffOp& Q) { return compose(P, Q) - compose(Q, P); }

DiffOp op_pow(const DiffOp& P, unsigned long e) {
    DiffOp r = DiffOp::unit(P.ctx(), P.chart());
    for (unsigned long i = 0; i < e; ++i) r = compose(r, P);
    return r;
}

LaurentPoly apply(const DiffOp& P, const LaurentPoly& f) {
    const LevelContext& ctx = P.ctx();
    const unsigned long p = ctx.p.value();
    LaurentPoly out;
    for (auto& [jk, c] : P.terms())
        for (auto& [r, fc] : f) {
            mpz_class b = binomial_z(r, jk.second);
            if (b == 0) continue;
            ValuedRational w = c * fc *
                               q_factorial(MultiIndex{static_cast<std::uint32_t>(jk.second)}, ctx) *
                               ValuedRational(p, b, mpz_class(1));
            if (w.is_zero()) continue;
            long e = jk.first + r - static_cast<long>(jk.second);
            auto it = out.find(e);
            if (it == out.end())
                out.emplace(e, w);
            else {
                it->second += w;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    return out;
}

namespace {

// vector-field images of the sl2 generators on a P1 chart, with an optional
// weight twist lambda (flag_p1 passes lambda != 0)
DiffOp sl2_gen_image(unsigned slot, const Chart& c, const LevelContext& ctx, long lambda) {
    const unsigned long p = ctx.p.value();
    DiffOp r(ctx, c);
    const bool chart0 = c.index == 0;
    switch (slot) {
        case 0:  // e
            if (chart0)
                r.add_term(0, 1, ValuedRational(p, -1));
            else {
                r.add_term(2, 1, ValuedRational(p, 1));
                r.add_term(1, 0, ValuedRational(p, -lambda));
            }
            break;
        case 1:  // h
            r.add_term(1, 1, ValuedRational(p, chart0 ? 2 : -2));
            r.add_term(0, 0, ValuedRational(p, chart0 ? -lambda : lambda));
            break;
        case 2:  // f
            if (chart0) {
                r.add_term(2, 1, ValuedRational(p, 1));
                r.add_term(1, 0, ValuedRational(p, -lambda));
            } else
                r.add_term(0, 1, ValuedRational(p, -1));
            break;
        default:
            throw std::invalid_argument("sl2_gen_image: bad slot");
    }
    return r;
}

}  // namespace

DiffOp qmap_sl2(const DistElement& u, const Chart& target, long lambda) {
    if (!u.group().is_reductive() || u.group().datum()->name != "sl2")
        throw std::invalid_argument("qmap: sl2 is the supported reductive group on P1 charts");
    if (target.kind != Chart::Kind::p1) throw std::invalid_argument("qmap: sl2 acts on P1 charts");
    const LevelContext& ctx = u.ctx();

    EnvElement env = dist_to_env(u);
    DiffOp out(ctx, target);
    DiffOp qe = sl2_gen_image(0, target, ctx, lambda);
    DiffOp qh = sl2_gen_image(1, target, ctx, lambda);
    DiffOp qf = sl2_gen_image(2, target, ctx, lambda);
    for (auto& [k, c] : env.terms()) {
        // anti-homomorphism: Q(e^a h^b f^c) = Q(f)^c Q(h)^b Q(e)^a
        DiffOp img = DiffOp::unit(ctx, target);
        for (std::uint32_t i = 0; i < k[2]; ++i) img = compose(img, qf);
        for (std::uint32_t i = 0; i < k[1]; ++i) img = compose(img, qh);
        for (std::uint32_t i = 0; i < k[0]; ++i) img = compose(img, qe);
        out += img.scaled(c);
    }
    return out;
}

DiffOp qmap(const DistElement& u, const Chart& target) {
    const Group& g = u.group();
    const LevelContext& ctx = u.ctx();
    if (g.is_reductive()) return qmap_sl2(u, target, 0);

    if (g.rank() != 1)
        throw std::invalid_argument("qmap: rank-1 toral groups only (one chart per factor)");
    const CoordKind kind = g.coords()[0];
    if (kind == CoordKind::additive && target.kind != Chart::Kind::affine_line)
        throw std::invalid_argument("qmap: Ga acts on the affine line");
    if (kind == CoordKind::multiplicative && target.kind != Chart::Kind::torus)
        throw std::invalid_argument("qmap: Gm acts on the torus");

    DiffOp r(ctx, target);
    for (auto& [k, c] : u.terms()) {
        const unsigned long kk = k[0];
        r.add_term(kind == CoordKind::additive ? 0 : static_cast<long>(kk), kk, c);
    }
    return r;
}

DistElement eval_at_identity(const DiffOp& P, const Group& g) {
    if (!g.is_toral() || g.rank() != 1)
        throw std::invalid_argument("eval_at_identity: rank-1 group charts only");
    const CoordKind kind = g.coords()[0];
    if (kind == CoordKind::additive && P.chart().kind != Chart::Kind::affine_line)
        throw std::invalid_argument("eval_at_identity: chart without an additive identity point");
    if (kind == CoordKind::multiplicative && P.chart().kind != Chart::Kind::torus)
        throw std::invalid_argument("eval_at_identity: chart without a torus identity point");

    const LevelContext& ctx = P.ctx();
    const unsigned long p = ctx.p.value();
    DistElement out(g, ctx);
    const long n = P.order();
    for (long k = 0; k <= n; ++k) {
        // pair against t^{k} = t^k / q_k!, with t = T on Ga and t = T-1 on Gm
        LaurentPoly tk;
        if (kind == CoordKind::additive) {
            tk[k] = ValuedRational(p, 1);
        } else {
            for (long r = 0; r <= k; ++r) {
                mpz_class b = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(r));
                if ((k - r) % 2) b = -b;
                tk[r] = ValuedRational(p, b, mpz_class(1));
            }
        }
        LaurentPoly img = adist::apply(P, tk);
        // evaluate at the identity point
        ValuedRational v(p);
        for (auto& [e, c] : img) {
            if (kind == CoordKind::additive) {
                if (e == 0) v += c;
            } else {
                v += c;  // T = 1
            }
        }
        v *= factorial_ratio({}, {q_of(static_cast<unsigned long>(k), ctx)}, ctx.p);
        out.add_term(MultiIndex{static_cast<std::uint32_t>(k)}, v);
    }
    return out;
}

DiffOp translate_conjugate(const DiffOp& P, const ValuedRational& c) {
    const LevelContext& ctx = P.ctx();
    const unsigned long p = ctx.p.value();
    DiffOp r(ctx, P.chart());
    switch (P.chart().kind) {
        case Chart::Kind::affine_line: {
            // t^j d^<k> -> (t - c)^j d^<k>
            for (auto& [jk, w] : P.terms()) {
                const unsigned long j = static_cast<unsigned long>(jk.first);
                for (unsigned long i = 0; i <= j; ++i) {
                    ValuedRational coeff =
                        w * ValuedRational(p, binomial(j, i), mpz_class(1)) * (-c).pow(j - i);
                    r.add_term(static_cast<long>(i), jk.second, coeff);
                }
            }
            return r;
        }
        case Chart::Kind::torus: {
            if (!c.is_p_unit())
                throw std::invalid_argument("translate_conjugate: Gm point must be a p-adic unit");
            // T^j d^<k> -> c^{k-j} T^j d^<k>
            for (auto& [jk, w] : P.terms()) {
                long e = static_cast<long>(jk.second) - jk.first;
                ValuedRational f = e >= 0 ? c.pow(static_cast<unsigned long>(e))
                                          : c.inverse().pow(static_cast<unsigned long>(-e));
                r.add_term(jk.first, jk.second, w * f);
            }
            return r;
        }
        default:
            throw std::invalid_argument("translate_conjugate: group charts only");
    }
}

std::vector<DiffOp> invariant_operators(unsigned n, const Group& g, const LevelContext& ctx) {
    if (!g.is_toral() || g.rank() != 1)
        throw std::invalid_argument("invariant_operators: Ga or Gm only");
    const CoordKind kind = g.coords()[0];
    const unsigned long p = ctx.p.value();
    const Chart chart = kind == CoordKind::additive ? Chart::affine_line() : Chart::torus();

    // unknowns a_{jk}, 0 <= j <= n (Ga) resp. -n <= j <= n (Gm), 0 <= k <= n
    std::vector<std::pair<long, unsigned long>> unknowns;
    const long jlo = kind == CoordKind::additive ? 0 : -static_cast<long>(n);
    for (long j = jlo; j <= static_cast<long>(n); ++j)
        for (unsigned long k = 0; k <= n; ++k) unknowns.emplace_back(j, k);
    auto col_of = [&](long j, unsigned long k) -> std::size_t {
        return static_cast<std::size_t>(j - jlo) * (n + 1) + k;
    };

    // conditions indexed by (target term, c-power d >= 1)
    RatMatrix rows;
    if (kind == CoordKind::additive) {
        // (t-c)^j = sum_i C(j,i) (-c)^{j-i} t^i: row per (i, k, d) with j = i+d
        for (long i = 0; i <= static_cast<long>(n); ++i)
            for (unsigned long k = 0; k <= n; ++k)
                for (long d = 1; i + d <= static_cast<long>(n); ++d) {
                    std::vector<ValuedRational> row(unknowns.size(), ValuedRational(p));
                    mpz_class b = binomial(static_cast<unsigned long>(i + d),
                                           static_cast<unsigned long>(i));
                    if (d % 2) b = -b;
                    row[col_of(i + d, k)] = ValuedRational(p, b, mpz_class(1));
                    rows.push_back(std::move(row));
                }
    } else {
        // T^j d^<k> scales by c^{k-j}: invariance forces a_{jk} = 0 for j != k
        for (auto& [j, k] : unknowns) {
            if (j == static_cast<long>(k)) continue;
            std::vector<ValuedRational> row(unknowns.size(), ValuedRational(p));
            row[col_of(j, k)] = ValuedRational(p, 1);
            rows.push_back(std::move(row));
        }
    }

    auto basis_vectors = nullspace(rows, p, unknowns.size());
    std::vector<DiffOp> out;
    for (auto& v : basis_vectors) {
        DiffOp op(ctx, chart);
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            if (!v[i].is_zero()) op.add_term(unknowns[i].first, unknowns[i].second, v[i]);
        out.push_back(std::move(op));
    }

    // the solved lattice must be exactly the span of the qmap images
    auto to_row = [&](const DiffOp& op) {
        std::vector<ValuedRational> row;
        for (auto& [j, k] : unknowns) row.push_back(op.coefficient(j, k));
        return row;
    };
    RatMatrix got, want;
    for (auto& op : out) got.push_back(to_row(op));
    for (std::uint32_t k = 0; k <= n; ++k)
        want.push_back(to_row(qmap(DistElement::generator(g, ctx, 0, k), chart)));
    if (!same_row_span(got, want))
        throw std::logic_error("invariant_operators: solution differs from the qmap image span");
    return out;
}

}  // namespace adist
