#include "adist/enveloping.hpp"

#include <mutex>

namespace adist {

long EnvElement::degree() const {
    long d = -1;
    for (auto& [k, c] : terms_) d = std::max<long>(d, static_cast<long>(k.total()));
    return d;
}

void EnvElement::add_term(const MultiIndex& k, const ValuedRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

EnvElement& EnvElement::operator+=(const EnvElement& o) {
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

EnvElement& EnvElement::operator-=(const EnvElement& o) {
    for (auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

EnvElement EnvElement::scaled(const ValuedRational& c) const {
    EnvElement r(datum_, p_);
    if (c.is_zero()) return r;
    for (auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

EnvElement EnvElement::unit(std::shared_ptr<const ChevalleyDatum> d, unsigned long p) {
    EnvElement r(std::move(d), p);
    r.add_term(MultiIndex(r.datum_->dim()), ValuedRational(p, 1));
    return r;
}

EnvElement EnvElement::generator(std::shared_ptr<const ChevalleyDatum> d, unsigned long p,
                                 unsigned index, std::uint32_t power) {
    EnvElement r(std::move(d), p);
    MultiIndex k(r.datum_->dim());
    k[index] = power;
    r.add_term(k, ValuedRational(p, 1));
    return r;
}

namespace {

using TermMap = std::map<MultiIndex, ValuedRational>;

void accumulate(TermMap& into, const MultiIndex& k, const ValuedRational& c) {
    if (c.is_zero()) return;
    auto it = into.find(k);
    if (it == into.end())
        into.emplace(k, c);
    else {
        it->second += c;
        if (it->second.is_zero()) into.erase(it);
    }
}

/**
 * PBW straightening: multiply an ordered monomial by one generator on the
 * right, rewriting x_j g = g x_j + [x_j, g] until everything is ordered.
 * Subproducts repeat heavily, so they are memoized per multiplication.
 */
struct Straightener {
    const ChevalleyDatum& d;
    unsigned long p;
    std::map<std::pair<MultiIndex, unsigned>, TermMap> memo;

    const TermMap& times_gen(const MultiIndex& mono, unsigned g) {
        auto key = std::make_pair(mono, g);
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;

        int j = -1;
        for (unsigned i = 0; i < mono.size(); ++i)
            if (mono[i] > 0) j = static_cast<int>(i);
        TermMap out;
        if (j < 0 || static_cast<unsigned>(j) <= g) {
            MultiIndex m = mono;
            m[g] += 1;
            out.emplace(std::move(m), ValuedRational(p, 1));
            return memo.emplace(std::move(key), std::move(out)).first->second;
        }
        MultiIndex rest = mono;
        rest[j] -= 1;

        // (rest * g) * x_j
        TermMap restg = times_gen(rest, g);
        for (auto& [m, c] : restg)
            for (auto& [m2, c2] : times_gen(m, static_cast<unsigned>(j)))
                accumulate(out, m2, c * c2);
        // rest * [x_j, g]
        for (auto& [b, cb] : d.bracket(static_cast<unsigned>(j), g)) {
            ValuedRational cc(p, cb);
            for (auto& [m, c] : times_gen(rest, b)) accumulate(out, m, c * cc);
        }
        return memo.emplace(std::move(key), std::move(out)).first->second;
    }

    TermMap mono_mul(const MultiIndex& m1, const MultiIndex& m2) {
        TermMap cur{{m1, ValuedRational(p, 1)}};
        for (unsigned i = 0; i < m2.size(); ++i)
            for (std::uint32_t rep = 0; rep < m2[i]; ++rep) {
                TermMap next;
                for (auto& [m, c] : cur)
                    for (auto& [m3, c3] : times_gen(m, i)) accumulate(next, m3, c * c3);
                cur = std::move(next);
            }
        return cur;
    }
};

}  // namespace

EnvElement env_mul(const EnvElement& a, const EnvElement& b) {
    if (a.datum() != b.datum() && a.datum()->name != b.datum()->name)
        throw std::invalid_argument("env_mul: mixed Lie data");
    if (a.prime() != b.prime()) throw std::invalid_argument("env_mul: mixed primes");
    Straightener s{*a.datum(), a.prime()};
    EnvElement r(a.datum(), a.prime());
    for (auto& [m1, c1] : a.terms())
        for (auto& [m2, c2] : b.terms()) {
            ValuedRational c = c1 * c2;
            for (auto& [m, cm] : s.mono_mul(m1, m2)) r.add_term(m, cm * c);
        }
    return r;
}

EnvElement env_commutator(const EnvElement& a, const EnvElement& b) {
    return env_mul(a, b) - env_mul(b, a);
}

EnvElement env_pow(const EnvElement& a, unsigned long e) {
    EnvElement r = EnvElement::unit(a.datum(), a.prime());
    for (unsigned long i = 0; i < e; ++i) r = env_mul(r, a);
    return r;
}

// ---- Stirling tables --------------------------------------------------------

namespace {

std::mutex g_stirling_mutex;
std::vector<std::vector<mpz_class>> g_s1{{mpz_class(1)}};  // signed, row n
std::vector<std::vector<mpz_class>> g_s2{{mpz_class(1)}};

void grow_stirling(unsigned long n) {
    while (g_s1.size() <= n) {
        unsigned long r = g_s1.size();
        std::vector<mpz_class> row1(r + 1), row2(r + 1);
        for (unsigned long j = 0; j <= r; ++j) {
            // s1(r,j) = s1(r-1,j-1) - (r-1) s1(r-1,j)
            mpz_class v = j > 0 ? g_s1[r - 1][j - 1] : mpz_class(0);
            if (j < r) v -= mpz_class(static_cast<unsigned long>(r - 1)) * g_s1[r - 1][j];
            row1[j] = v;
            // S2(r,j) = j S2(r-1,j) + S2(r-1,j-1)
            mpz_class w = j > 0 ? g_s2[r - 1][j - 1] : mpz_class(0);
            if (j < r) w += mpz_class(j) * g_s2[r - 1][j];
            row2[j] = w;
        }
        g_s1.push_back(std::move(row1));
        g_s2.push_back(std::move(row2));
    }
}

}  // namespace

const mpz_class& stirling1(unsigned long n, unsigned long j) {
    static const mpz_class zero(0);
    if (j > n) return zero;
    std::scoped_lock lock(g_stirling_mutex);
    grow_stirling(n);
    return g_s1[n][j];
}

const mpz_class& stirling2(unsigned long n, unsigned long j) {
    static const mpz_class zero(0);
    if (j > n) return zero;
    std::scoped_lock lock(g_stirling_mutex);
    grow_stirling(n);
    return g_s2[n][j];
}

std::vector<ValuedRational> shifted_binomial_in_powers(long shift, unsigned long k, unsigned long p) {
    // prod_{r=0}^{k-1} (x + shift - r), then divide by k!
    std::vector<mpz_class> poly{mpz_class(1)};
    for (unsigned long r = 0; r < k; ++r) {
        std::vector<mpz_class> next(poly.size() + 1);
        mpz_class a(shift - static_cast<long>(r));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i] * a;
            next[i + 1] += poly[i];
        }
        poly = std::move(next);
    }
    std::vector<ValuedRational> out;
    out.reserve(poly.size());
    for (auto& c : poly) out.push_back(ValuedRational(p, c, factorial(k)));
    return out;
}

// ---- basis conversions ------------------------------------------------------

EnvElement dist_to_env(const DistElement& u) {
    const Group& g = u.group();
    if (!g.is_reductive()) throw std::invalid_argument("dist_to_env: reductive groups only");
    auto d = g.datum();
    const unsigned q = d->q, l = d->l;
    const LevelContext& ctx = u.ctx();
    const unsigned long p = ctx.p.value();

    EnvElement out(d, p);
    for (auto& [exp, coeff] : u.terms()) {
        // nilpotent slots: xi^<a> = (q_a!/a!) xi^a
        ValuedRational c = coeff;
        for (unsigned i = 0; i < q; ++i) {
            c = c * factorial_ratio({q_of(exp[i], ctx)}, {exp[i]}, ctx.p);
            c = c * factorial_ratio({q_of(exp[q + l + i], ctx)}, {exp[q + l + i]}, ctx.p);
        }
        // torus slots: xi''^<b> = q_b! C(xi'', b) = (q_b!/b!) (xi'')_b, expanded in powers
        // via signed Stirling numbers; distribute over the torus coordinates
        std::vector<std::pair<MultiIndex, ValuedRational>> partial{{exp, c}};
        for (unsigned t = 0; t < l; ++t) {
            const std::uint32_t b = exp[q + t];
            if (b == 0) continue;
            ValuedRational scale = factorial_ratio({q_of(b, ctx)}, {b}, ctx.p);
            std::vector<std::pair<MultiIndex, ValuedRational>> next;
            for (auto& [m, cm] : partial)
                for (unsigned long j = 0; j <= b; ++j) {
                    const mpz_class& s = stirling1(b, j);
                    if (s == 0) continue;
                    MultiIndex m2 = m;
                    m2[q + t] = static_cast<std::uint32_t>(j);
                    next.emplace_back(m2, cm * scale * ValuedRational(p, s, mpz_class(1)));
                }
            partial = std::move(next);
        }
        for (auto& [m, cm] : partial) out.add_term(m, cm);
    }
    return out;
}

DistElement env_to_dist(const EnvElement& a, const Group& g, const LevelContext& ctx) {
    if (!g.is_reductive()) throw std::invalid_argument("env_to_dist: reductive groups only");
    auto d = g.datum();
    const unsigned q = d->q, l = d->l;
    const unsigned long p = ctx.p.value();
    if (a.prime() != p) throw std::invalid_argument("env_to_dist: prime mismatch");

    DistElement out(g, ctx);
    for (auto& [exp, coeff] : a.terms()) {
        // nilpotent slots: xi^a = (a!/q_a!) xi^<a>
        ValuedRational c = coeff;
        for (unsigned i = 0; i < q; ++i) {
            c = c * factorial_ratio({exp[i]}, {q_of(exp[i], ctx)}, ctx.p);
            c = c * factorial_ratio({exp[q + l + i]}, {q_of(exp[q + l + i], ctx)}, ctx.p);
        }
        // torus slots: x^n = sum_j S2(n,j) (x)_j = sum_j S2(n,j) (j!/q_j!) xi''^<j>
        std::vector<std::pair<MultiIndex, ValuedRational>> partial{{exp, c}};
        for (unsigned t = 0; t < l; ++t) {
            const std::uint32_t n = exp[q + t];
            if (n == 0) continue;
            std::vector<std::pair<MultiIndex, ValuedRational>> next;
            for (auto& [m, cm] : partial)
                for (unsigned long j = 0; j <= n; ++j) {
                    const mpz_class& s = stirling2(n, j);
                    if (s == 0) continue;
                    MultiIndex m2 = m;
                    m2[q + t] = static_cast<std::uint32_t>(j);
                    ValuedRational f = factorial_ratio({j}, {q_of(j, ctx)}, ctx.p);
                    next.emplace_back(m2, cm * f * ValuedRational(p, s, mpz_class(1)));
                }
            partial = std::move(next);
        }
        for (auto& [m, cm] : partial) out.add_term(m, cm);
    }
    return out;
}

}  // namespace adist
