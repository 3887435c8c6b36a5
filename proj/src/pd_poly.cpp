#include "adist/pd_poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace adist {

PdPolynomial PdPolynomial::one(const LevelContext& ctx, unsigned rank, unsigned order) {
    PdPolynomial r(ctx, rank, order);
    r.add_term(MultiIndex(rank), ValuedRational(ctx.p.value(), 1));
    return r;
}

PdPolynomial PdPolynomial::monomial(const LevelContext& ctx, unsigned rank, unsigned order,
                                    const MultiIndex& k) {
    PdPolynomial r(ctx, rank, order);
    r.add_term(k, ValuedRational(ctx.p.value(), 1));
    return r;
}

ValuedRational PdPolynomial::coefficient(const MultiIndex& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? ValuedRational(ctx_.p.value()) : it->second;
}

void PdPolynomial::add_term(const MultiIndex& k, const ValuedRational& c) {
    if (k.size() != rank_) throw std::invalid_argument("PdPolynomial: exponent length mismatch");
    if (k.total() > order_ || c.is_zero()) return;  // truncation past the order bound
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

PdPolynomial& PdPolynomial::operator+=(const PdPolynomial& o) {
    if (ctx_ != o.ctx_ || rank_ != o.rank_ || order_ != o.order_)
        throw std::invalid_argument("PdPolynomial: context mismatch");
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

PdPolynomial PdPolynomial::scaled(const ValuedRational& c) const {
    PdPolynomial r(ctx_, rank_, order_);
    if (c.is_zero()) return r;
    for (auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

std::string PdPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*t^{";
        for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
        os << "}";
    }
    return os.str();
}

PdPolynomial pd_mul(const PdPolynomial& a, const PdPolynomial& b) {
    if (a.ctx() != b.ctx() || a.rank() != b.rank() || a.order() != b.order())
        throw std::invalid_argument("pd_mul: context mismatch");
    PdPolynomial r(a.ctx(), a.rank(), a.order());
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            MultiIndex s = ka.plus(kb);
            if (s.total() > a.order()) continue;
            r.add_term(s, ca * cb * pd_multinomial(s, ka, a.ctx()));
        }
    return r;
}

std::vector<SumExpandTerm> pd_sum_expand(unsigned long k, const LevelContext& ctx) {
    std::vector<SumExpandTerm> out;
    out.reserve(k + 1);
    for (unsigned long kp = 0; kp <= k; ++kp)
        out.push_back({kp, k - kp, pd_binomial(k, kp, ctx)});
    return out;
}

std::vector<TensorTerm> comul_additive(const MultiIndex& k, unsigned n, unsigned np,
                                       const LevelContext& ctx) {
    std::vector<TensorTerm> out;
    // per coordinate: t^{k_i} -> sum cro(k_i, a) t^{a} (x) t^{k_i - a}
    std::vector<TensorTerm> cur{{MultiIndex(k.size()), MultiIndex(k.size()),
                                 ValuedRational(ctx.p.value(), 1)}};
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::vector<TensorTerm> next;
        for (auto& t : cur)
            for (auto& e : pd_sum_expand(k[i], ctx)) {
                TensorTerm t2 = t;
                t2.left[i] = static_cast<std::uint32_t>(e.kp);
                t2.right[i] = static_cast<std::uint32_t>(e.kpp);
                t2.coeff = t.coeff * e.coeff;
                next.push_back(std::move(t2));
            }
        cur = std::move(next);
    }
    for (auto& t : cur)
        if (t.left.total() <= n && t.right.total() <= np) out.push_back(std::move(t));
    return out;
}

std::vector<TensorTerm> comul_multiplicative(unsigned long l, unsigned n, unsigned np,
                                             const LevelContext& ctx) {
    // mu#(tau^{l}) = ((tau(x)1 + 1(x)tau) + tau(x)tau)^{l}
    //             = sum_{r+s=l} {l; r} (tau(x)1 + 1(x)tau)^{r} (tau(x)tau)^{s},
    // with (tau(x)tau)^{s} = q_s! tau^{s} (x) tau^{s}; the inner power expands
    // through pd_sum_expand and the diagonal part multiplies in with <.;.> factors.
    std::map<std::pair<std::uint32_t, std::uint32_t>, ValuedRational> acc;
    for (unsigned long r = 0; r <= l; ++r) {
        const unsigned long s = l - r;
        ValuedRational outer = pd_binomial(l, r, ctx) * q_factorial(MultiIndex{static_cast<std::uint32_t>(s)}, ctx);
        for (auto& e : pd_sum_expand(r, ctx)) {
            const unsigned long a = e.kp + s, b = e.kpp + s;
            if (a > n || b > np) continue;
            ValuedRational c = outer * e.coeff * pd_multinomial(a, s, ctx) * pd_multinomial(b, s, ctx);
            if (c.is_zero()) continue;
            auto key = std::make_pair(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, c);
            else {
                it->second += c;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    std::vector<TensorTerm> out;
    out.reserve(acc.size());
    for (auto& [ab, c] : acc)
        out.push_back({MultiIndex{ab.first}, MultiIndex{ab.second}, c});
    return out;
}

std::vector<TensorTerm> comul_toral(const Group& g, const MultiIndex& k, unsigned n, unsigned np,
                                    const LevelContext& ctx) {
    if (!g.is_toral()) throw std::invalid_argument("comul_toral: toral groups only");
    const auto& coords = g.coords();
    std::vector<TensorTerm> cur{{MultiIndex(k.size()), MultiIndex(k.size()),
                                 ValuedRational(ctx.p.value(), 1)}};
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::vector<TensorTerm> opts;
        if (coords[i] == CoordKind::additive) {
            for (auto& e : pd_sum_expand(k[i], ctx))
                opts.push_back({MultiIndex{static_cast<std::uint32_t>(e.kp)},
                                MultiIndex{static_cast<std::uint32_t>(e.kpp)}, e.coeff});
        } else {
            opts = comul_multiplicative(k[i], n, np, ctx);
        }
        std::vector<TensorTerm> next;
        for (auto& t : cur)
            for (auto& o : opts) {
                TensorTerm t2 = t;
                t2.left[i] = o.left[0];
                t2.right[i] = o.right[0];
                t2.coeff = t.coeff * o.coeff;
                if (t2.coeff.is_zero()) continue;
                next.push_back(std::move(t2));
            }
        cur = std::move(next);
    }
    std::vector<TensorTerm> out;
    for (auto& t : cur)
        if (t.left.total() <= n && t.right.total() <= np) out.push_back(std::move(t));
    return out;
}

ValuedRational pair(const DistElement& u, const PdPolynomial& f) {
    if (u.ctx() != f.ctx() || u.group().rank() != f.rank())
        throw std::invalid_argument("pair: context mismatch");
    ValuedRational s(u.ctx().p.value());
    for (auto& [k, c] : u.terms()) {
        ValuedRational fc = f.coefficient(k);
        if (!fc.is_zero()) s += c * fc;
    }
    return s;
}

const std::vector<TensorTerm>& ComulCache::get(const Group& g, const MultiIndex& k,
                                               const LevelContext& ctx) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(k, comul_toral(g, k, n_, np_, ctx)).first->second;
}

DistElement mul_via_comul(const DistElement& u, const DistElement& v, ComulCache* cache) {
    const Group& g = u.group();
    if (!g.is_toral())
        throw std::invalid_argument("mul_via_comul: comultiplication implemented for Ga/Gm kinds only");
    if (g != v.group() || u.ctx() != v.ctx())
        throw std::invalid_argument("mul_via_comul: group/context mismatch");
    const LevelContext& ctx = u.ctx();
    const unsigned n = static_cast<unsigned>(std::max<long>(u.order(), 0));
    const unsigned np = static_cast<unsigned>(std::max<long>(v.order(), 0));

    std::optional<ComulCache> local;
    if (!cache) {
        local.emplace(n, np);
        cache = &*local;
    }

    DistElement r(g, ctx);
    // (u.v)(t^{k}) = sum over delta(t^{k}) of coeff * u(left) * v(right)
    std::vector<std::uint32_t> stack(g.rank(), 0);
    MultiIndex k(g.rank());
    const unsigned long total_bound = n + np;

    // enumerate all k with |k| <= n + n'
    std::function<void(unsigned, unsigned long)> walk = [&](unsigned pos, unsigned long used) {
        if (pos == g.rank()) {
            ValuedRational c(ctx.p.value());
            for (auto& t : cache->get(g, k, ctx)) {
                ValuedRational cu = u.coefficient(t.left);
                if (cu.is_zero()) continue;
                ValuedRational cv = v.coefficient(t.right);
                if (cv.is_zero()) continue;
                c += t.coeff * cu * cv;
            }
            r.add_term(k, c);
            return;
        }
        for (unsigned long e = 0; used + e <= total_bound; ++e) {
            k[pos] = static_cast<std::uint32_t>(e);
            walk(pos + 1, used + e);
        }
        k[pos] = 0;
    };
    walk(0, 0);
    return r;
}

}  // namespace adist

