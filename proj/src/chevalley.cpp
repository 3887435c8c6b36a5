#include "adist/chevalley.hpp"

#include <algorithm>
#include <stdexcept>

namespace adist {

std::vector<std::pair<unsigned, long>> ChevalleyDatum::bracket(unsigned i, unsigned j) const {
    if (i == j) return {};
    if (i < j) {
        auto it = table.find({i, j});
        return it == table.end() ? std::vector<std::pair<unsigned, long>>{} : it->second;
    }
    auto r = bracket(j, i);
    for (auto& [b, c] : r) c = -c;
    return r;
}

namespace {

// bracket of a sparse vector with a basis element
std::map<unsigned, long> bracket_vec(const ChevalleyDatum& d, const std::map<unsigned, long>& v,
                                     unsigned j) {
    std::map<unsigned, long> out;
    for (auto& [i, c] : v)
        for (auto& [b, cb] : d.bracket(i, j)) {
            out[b] += c * cb;
            if (out[b] == 0) out.erase(b);
        }
    return out;
}

}  // namespace

void ChevalleyDatum::validate() const {
    const unsigned n = dim();
    if (labels.size() != n) throw std::invalid_argument("ChevalleyDatum: label count mismatch");
    if (alpha.size() != q) throw std::invalid_argument("ChevalleyDatum: alpha row count mismatch");
    for (auto& row : alpha)
        if (row.size() != l) throw std::invalid_argument("ChevalleyDatum: alpha column count mismatch");

    // torus is abelian
    for (unsigned a = q; a < q + l; ++a)
        for (unsigned b = a + 1; b < q + l; ++b)
            if (!bracket(a, b).empty())
                throw std::invalid_argument("ChevalleyDatum: torus elements must commute");

    // [xi''_k, xi_j] = alpha_j(xi''_k) xi_j and the opposite sign on the negative side
    for (unsigned k = 0; k < l; ++k)
        for (unsigned j = 0; j < q; ++j) {
            auto pos = bracket(q + k, j);
            long a = alpha[j][k];
            bool ok_pos = (a == 0) ? pos.empty()
                                   : (pos.size() == 1 && pos[0].first == j && pos[0].second == a);
            auto neg = bracket(q + k, q + l + j);
            bool ok_neg = (a == 0) ? neg.empty()
                                   : (neg.size() == 1 && neg[0].first == q + l + j && neg[0].second == -a);
            if (!ok_pos || !ok_neg)
                throw std::invalid_argument("ChevalleyDatum: root value table contradicts brackets");
        }

    // Jacobi on all basis triples
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = a + 1; b < n; ++b)
            for (unsigned c = b + 1; c < n; ++c) {
                std::map<unsigned, long> acc;
                auto add_term = [&](unsigned x, unsigned y, unsigned z) {
                    std::map<unsigned, long> xy;
                    for (auto& [i, w] : bracket(x, y)) xy[i] += w;
                    for (auto& [i, w] : bracket_vec(*this, xy, z)) {
                        acc[i] += w;
                        if (acc[i] == 0) acc.erase(i);
                    }
                };
                add_term(a, b, c);
                add_term(b, c, a);
                add_term(c, a, b);
                if (!acc.empty())
                    throw std::invalid_argument("ChevalleyDatum: Jacobi identity fails on basis triple");
            }

    // declared sl2-triples
    for (auto& t : triples) {
        auto he = bracket(t.h, t.e);
        auto hf = bracket(t.h, t.f);
        auto ef = bracket(t.e, t.f);
        bool ok = he.size() == 1 && he[0] == std::pair<unsigned, long>{t.e, 2} &&
                  hf.size() == 1 && hf[0] == std::pair<unsigned, long>{t.f, -2} &&
                  ef.size() == 1 && ef[0] == std::pair<unsigned, long>{t.h, 1};
        if (!ok) throw std::invalid_argument("ChevalleyDatum: declared sl2-triple has wrong brackets");
    }
}

std::shared_ptr<const ChevalleyDatum> ChevalleyDatum::sl2() {
    static std::shared_ptr<const ChevalleyDatum> d = [] {
        auto r = std::make_shared<ChevalleyDatum>();
        r->name = "sl2";
        r->q = 1;
        r->l = 1;
        r->labels = {"e", "h", "f"};
        r->table[{0, 1}] = {{0, -2}};  // [e,h] = -2e
        r->table[{0, 2}] = {{1, 1}};   // [e,f] = h
        r->table[{1, 2}] = {{2, -2}};  // [h,f] = -2f
        r->alpha = {{2}};
        r->triples = {{1, 0, 2}};
        r->validate();
        return r;
    }();
    return d;
}

std::shared_ptr<const ChevalleyDatum> ChevalleyDatum::gl2() {
    static std::shared_ptr<const ChevalleyDatum> d = [] {
        auto r = std::make_shared<ChevalleyDatum>();
        r->name = "gl2";
        r->q = 1;
        r->l = 2;
        // torus basis: h = E11-E22 (semisimple part), z = E11+E22 (center)
        r->labels = {"e", "h", "z", "f"};
        r->table[{0, 1}] = {{0, -2}};  // [e,h] = -2e
        r->table[{0, 3}] = {{1, 1}};   // [e,f] = h
        r->table[{1, 3}] = {{3, -2}};  // [h,f] = -2f
        r->alpha = {{2, 0}};
        r->triples = {{1, 0, 3}};
        r->validate();
        return r;
    }();
    return d;
}

std::shared_ptr<const ChevalleyDatum> ChevalleyDatum::sl2xsl2() {
    static std::shared_ptr<const ChevalleyDatum> d = [] {
        auto r = std::make_shared<ChevalleyDatum>();
        r->name = "sl2xsl2";
        r->q = 2;
        r->l = 2;
        r->labels = {"e1", "e2", "h1", "h2", "f1", "f2"};
        // factor 1: e1=0, h1=2, f1=4 ; factor 2: e2=1, h2=3, f2=5
        r->table[{0, 2}] = {{0, -2}};
        r->table[{0, 4}] = {{2, 1}};
        r->table[{2, 4}] = {{4, -2}};
        r->table[{1, 3}] = {{1, -2}};
        r->table[{1, 5}] = {{3, 1}};
        r->table[{3, 5}] = {{5, -2}};
        r->alpha = {{2, 0}, {0, 2}};
        r->triples = {{2, 0, 4}, {3, 1, 5}};
        r->validate();
        return r;
    }();
    return d;
}

std::shared_ptr<const ChevalleyDatum> ChevalleyDatum::by_name(const std::string& name) {
    if (name == "sl2") return sl2();
    if (name == "gl2") return gl2();
    if (name == "sl2xsl2") return sl2xsl2();
    throw std::invalid_argument("ChevalleyDatum: unknown built-in '" + name + "'");
}

// ---- Group ----------------------------------------------------------------

Group Group::additive(unsigned n) {
    if (n == 0) throw std::invalid_argument("Group: rank must be positive");
    Group g;
    g.coords_.assign(n, CoordKind::additive);
    g.factors_ = {{CoordKind::additive, n}};
    return g;
}

Group Group::multiplicative(unsigned n) {
    if (n == 0) throw std::invalid_argument("Group: rank must be positive");
    Group g;
    g.coords_.assign(n, CoordKind::multiplicative);
    g.factors_ = {{CoordKind::multiplicative, n}};
    return g;
}

Group Group::product(const std::vector<Group>& factors) {
    if (factors.empty()) throw std::invalid_argument("Group: empty product");
    Group g;
    for (auto& f : factors) {
        if (!f.is_toral())
            throw std::invalid_argument("Group: products are supported for Ga/Gm factors only");
        g.coords_.insert(g.coords_.end(), f.coords_.begin(), f.coords_.end());
        g.factors_.insert(g.factors_.end(), f.factors_.begin(), f.factors_.end());
    }
    return g;
}

Group Group::reductive(std::shared_ptr<const ChevalleyDatum> datum) {
    if (!datum) throw std::invalid_argument("Group: null Chevalley datum");
    datum->validate();
    Group g;
    g.datum_ = std::move(datum);
    return g;
}

unsigned Group::rank() const { return datum_ ? datum_->dim() : static_cast<unsigned>(coords_.size()); }

const std::vector<CoordKind>& Group::coords() const {
    if (datum_) throw std::logic_error("Group: coords() on a reductive group");
    return coords_;
}

std::string Group::label(unsigned i) const {
    if (datum_) return datum_->labels.at(i);
    if (coords_.size() == 1) return "xi";
    return "xi" + std::to_string(i + 1);
}

unsigned Group::resolve_label(const std::string& lbl) const {
    for (unsigned i = 0; i < rank(); ++i)
        if (label(i) == lbl) return i;
    throw std::invalid_argument("Group: unknown generator '" + lbl + "'");
}

std::string Group::str() const {
    if (datum_) return datum_->name;
    std::string s;
    for (auto& [kind, n] : factors_) {
        if (!s.empty()) s += " x ";
        s += (kind == CoordKind::additive ? "Ga:" : "Gm:") + std::to_string(n);
    }
    return s;
}

bool operator==(const Group& a, const Group& b) {
    if (a.is_reductive() != b.is_reductive()) return false;
    if (a.is_reductive()) return a.datum_->name == b.datum_->name && a.datum_->dim() == b.datum_->dim();
    return a.coords_ == b.coords_;
}

}  // namespace adist
