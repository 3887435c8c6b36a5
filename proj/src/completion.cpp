#include "adist/completion.hpp"

namespace adist {

std::string to_string(DaggerVerdict v) {
    switch (v) {
        case DaggerVerdict::certified: return "certified";
        case DaggerVerdict::refuted_at_horizon: return "refuted-at-horizon";
        case DaggerVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

void TruncatedSeries::add_term(const MultiIndex& k, const ValuedRational& c) {
    if (k.size() != rank_) throw std::invalid_argument("TruncatedSeries: exponent length mismatch");
    if (k.total() > horizon_)
        throw std::invalid_argument("TruncatedSeries: term beyond the declared horizon");
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void TruncatedSeries::attach_certificate(const GrowthCertificate& cert) {
    if (!certificate_holds(*this, cert))
        throw std::invalid_argument(
            "TruncatedSeries: certificate is not dominated by the stored valuations");
    cert_ = cert;
}

TruncatedSeries TruncatedSeries::to_infinity_basis() const {
    if (in_infinity_basis()) return *this;
    LevelContext inf(ctx_.p, Level::infinity());
    TruncatedSeries out(inf, rank_, horizon_);
    for (auto& [k, c] : terms_) {
        std::vector<unsigned long> qs;
        for (std::size_t i = 0; i < k.size(); ++i) qs.push_back(q_of(k[i], ctx_));
        out.add_term(k, c * factorial_ratio(qs, {}, ctx_.p));
    }
    out.pattern_ = pattern_;
    return out;
}

bool certificate_holds(const TruncatedSeries& s, const GrowthCertificate& cert) {
    for (auto& [k, c] : s.terms()) {
        Frac bound = cert.eta * static_cast<long>(k.total()) + cert.c;
        if (Frac(c.valuation()) < bound) return false;
    }
    return true;
}

namespace {

DaggerVerdict classify(const TruncatedSeries& s, const std::optional<GrowthCertificate>& cert) {
    if (!s.in_infinity_basis())
        throw std::invalid_argument("dagger_classify: convert to the xi^[k] basis first");
    if (cert) {
        if (certificate_holds(s, *cert)) return DaggerVerdict::certified;
        return DaggerVerdict::refuted_at_horizon;
    }
    if (s.pattern() && s.pattern()->slope <= 0 && !s.is_zero())
        return DaggerVerdict::refuted_at_horizon;  // no affine bound with eta > 0 can hold
    return DaggerVerdict::indeterminate;
}

}  // namespace

DaggerVerdict dagger_classify(const TruncatedSeries& s) { return classify(s, s.certificate()); }

DaggerVerdict dagger_classify(const TruncatedSeries& s, const GrowthCertificate& cert) {
    return classify(s, cert);
}

std::vector<long> ord_profile(const TruncatedSeries& s, long i_max) {
    if (!s.in_infinity_basis())
        throw std::invalid_argument("ord_profile: convert to the xi^[k] basis first");
    if (s.is_zero()) return {};
    std::vector<long> out;
    out.reserve(static_cast<std::size_t>(i_max) + 1);
    for (long i = 0; i <= i_max; ++i) {
        long ord = -1;
        for (auto& [k, c] : s.terms())
            if (c.valuation() <= i) ord = std::max(ord, static_cast<long>(k.total()));
        out.push_back(ord);
    }
    return out;
}

PPower banach_norm(const TruncatedSeries& s) {
    if (s.is_zero()) return {true, 0};
    long minv = kValInfinity;
    for (auto& [k, c] : s.terms()) minv = std::min(minv, c.valuation());
    return {false, -minv};
}

ValuedRational ar_pairing(const TruncatedSeries& s, const PdPolynomial& f) {
    if (!s.in_infinity_basis() || !f.ctx().m.is_infinite())
        throw std::invalid_argument("ar_pairing: xi^[k] coordinates and a Tate truncation required");
    if (s.ctx().p != f.ctx().p || s.rank() != f.rank())
        throw std::invalid_argument("ar_pairing: context mismatch");
    ValuedRational out(s.ctx().p.value());
    for (auto& [k, c] : s.terms()) {
        ValuedRational fc = f.coefficient(k);
        if (!fc.is_zero()) out += c * fc;
    }
    return out;
}

ArBound ar_norm_bound(const TruncatedSeries& s, const Frac& slope) {
    if (slope <= 0) throw std::invalid_argument("ar_norm_bound: r must lie in (0,1)");
    if (s.is_zero()) return {true, Frac(0), MultiIndex(s.rank())};
    ArBound best{false, Frac(0), MultiIndex(s.rank())};
    bool first = true;
    for (auto& [k, c] : s.terms()) {
        // log_p(|a_k| r^{|k|}) = -v(a_k) - slope |k|
        Frac value = Frac(-c.valuation()) - slope * static_cast<long>(k.total());
        if (first || value > best.log_p) {
            best.log_p = value;
            best.attained_at = k;
            first = false;
        }
    }
    return best;
}

PhiGrowth phi_valuation_growth(Level m, Level m2, unsigned long k_max, Prime p) {
    if (!(m <= m2) || m == m2)
        throw std::invalid_argument("phi_valuation_growth: m' > m required");
    PhiGrowth out;
    out.table.reserve(k_max + 1);
    LevelContext lo(p, m), hi(p, m2);
    for (unsigned long k = 0; k <= k_max; ++k) {
        long v = static_cast<long>(factorial_valuation(q_of(k, lo), p)) -
                 static_cast<long>(factorial_valuation(q_of(k, hi), p));
        out.table.push_back(v);
    }
    out.monotone = true;
    for (std::size_t i = 1; i < out.table.size(); ++i)
        if (out.table[i] < out.table[i - 1]) out.monotone = false;
    out.max = out.table.empty() ? 0 : out.table.back();
    for (long v : out.table) out.max = std::max(out.max, v);
    out.unbounded_on_range =
        !out.table.empty() && out.table.back() > out.table[out.table.size() / 2];
    return out;
}

}  // namespace adist
