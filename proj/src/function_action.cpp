#include "adist/function_action.hpp"

#include <cstdlib>
#include <functional>
#include <sstream>

namespace adist {

GroupFunction::GroupFunction(Group group, unsigned long prime)
    : group_(std::move(group)), p_(prime) {
    if (!group_.is_toral())
        throw std::invalid_argument("GroupFunction: Additive/Multiplicative groups only");
}

GroupFunction GroupFunction::monomial(const Group& g, unsigned long prime, const Exponent& e,
                                      const ValuedRational& c) {
    GroupFunction f(g, prime);
    f.add_term(e, c);
    return f;
}

long GroupFunction::degree() const {
    long d = 0;
    for (auto& [e, c] : terms_) {
        long s = 0;
        for (auto x : e) s += std::abs(x);
        d = std::max(d, s);
    }
    return d;
}

void GroupFunction::add_term(const Exponent& e, const ValuedRational& c) {
    if (e.size() != group_.rank()) throw std::invalid_argument("GroupFunction: exponent length mismatch");
    for (unsigned i = 0; i < e.size(); ++i)
        if (e[i] < 0 && group_.coords()[i] == CoordKind::additive)
            throw std::invalid_argument("GroupFunction: negative exponent on an additive coordinate");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

GroupFunction& GroupFunction::operator+=(const GroupFunction& o) {
    if (group_ != o.group_ || p_ != o.p_)
        throw std::invalid_argument("GroupFunction: group/prime mismatch");
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

GroupFunction GroupFunction::scaled(const ValuedRational& c) const {
    GroupFunction r(group_, p_);
    if (c.is_zero()) return r;
    for (auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

GroupFunction operator*(const GroupFunction& a, const GroupFunction& b) {
    if (a.group_ != b.group_ || a.p_ != b.p_)
        throw std::invalid_argument("GroupFunction: group/prime mismatch");
    GroupFunction r(a.group_, a.p_);
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            GroupFunction::Exponent e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

ValuedRational GroupFunction::at_identity() const {
    ValuedRational s(p_);
    for (auto& [e, c] : terms_) {
        bool vanishes = false;
        for (unsigned i = 0; i < e.size(); ++i)
            if (group_.coords()[i] == CoordKind::additive && e[i] != 0) vanishes = true;
        if (!vanishes) s += c;  // T = 1 on multiplicative coordinates
    }
    return s;
}

std::string GroupFunction::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string mono;
        for (unsigned i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (group_.rank() == 1 ? "T" : "T" + std::to_string(i + 1));
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
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

ValuedRational act(const DistElement& u, const GroupFunction& f) {
    if (!u.group().is_toral()) throw std::invalid_argument("act: unsupported group kind");
    if (u.group() != f.group() || u.ctx().p.value() != f.prime())
        throw std::invalid_argument("act: group/prime mismatch");
    const LevelContext& ctx = u.ctx();
    const auto& coords = u.group().coords();

    ValuedRational total(f.prime());
    for (auto& [k, cu] : u.terms())
        for (auto& [j, cf] : f.terms()) {
            // product over coordinates of q_{k_i}! C(j_i, k_i), with the additive
            // factor surviving only when j_i = k_i (evaluation at 0)
            ValuedRational w = cu * cf;
            bool zero = false;
            for (unsigned i = 0; i < coords.size() && !zero; ++i) {
                if (coords[i] == CoordKind::additive) {
                    if (j[i] != static_cast<long>(k[i])) { zero = true; break; }
                    w *= q_factorial(MultiIndex{k[i]}, ctx);
                } else {
                    mpz_class binom = binomial_z(j[i], k[i]);
                    if (binom == 0) { zero = true; break; }
                    w *= q_factorial(MultiIndex{k[i]}, ctx) *
                         ValuedRational(f.prime(), binom, mpz_class(1));
                }
            }
            if (!zero) total += w;
        }
    return total;
}

PdPolynomial taylor(const GroupFunction& f, unsigned order, const LevelContext& ctx) {
    const Group& g = f.group();
    PdPolynomial out(ctx, g.rank(), order);

    // enumerate |k| <= order and pair
    MultiIndex k(g.rank());
    std::function<void(unsigned, unsigned long)> walk = [&](unsigned pos, unsigned long used) {
        if (pos == g.rank()) {
            ValuedRational c = act(DistElement::basis(g, ctx, k), f);
            out.add_term(k, c);
            return;
        }
        for (unsigned long e = 0; used + e <= order; ++e) {
            k[pos] = static_cast<std::uint32_t>(e);
            walk(pos + 1, used + e);
        }
        k[pos] = 0;
    };
    walk(0, 0);
    return out;
}

GroupFunction from_taylor(const PdPolynomial& series, const Group& g) {
    if (!series.ctx().m.is_infinite())
        throw std::invalid_argument("from_taylor: level-infinity Taylor data required");
    const unsigned long p = series.ctx().p.value();
    GroupFunction out(g, p);
    const auto& coords = g.coords();
    for (auto& [k, c] : series.terms()) {
        // t^{k} at level infinity is prod (T_i - id_i)^{k_i}: expand binomially
        std::vector<std::pair<GroupFunction::Exponent, ValuedRational>> partial{
            {GroupFunction::Exponent(g.rank(), 0), c}};
        for (unsigned i = 0; i < coords.size(); ++i) {
            std::vector<std::pair<GroupFunction::Exponent, ValuedRational>> next;
            for (auto& [e, w] : partial) {
                if (coords[i] == CoordKind::additive) {
                    auto e2 = e;
                    e2[i] = static_cast<long>(k[i]);
                    next.emplace_back(e2, w);
                } else {
                    for (unsigned long r = 0; r <= k[i]; ++r) {
                        auto e2 = e;
                        e2[i] = static_cast<long>(r);
                        mpz_class sign = binomial(k[i], r);
                        if ((k[i] - r) % 2) sign = -sign;
                        next.emplace_back(e2, w * ValuedRational(p, sign, mpz_class(1)));
                    }
                }
            }
            partial = std::move(next);
        }
        for (auto& [e, w] : partial) out.add_term(e, w);
    }
    return out;
}

}  // namespace adist
