#include "adist/io_json.hpp"

#include <algorithm>

namespace adist {

namespace {

std::string coeff_str(const ValuedRational& c) { return c.str(); }

Json exp_to_json(const MultiIndex& k) {
    Json a = Json::array();
    for (auto e : k.e) a.push_back(e);
    return a;
}

MultiIndex exp_from_json(const Json& j) {
    MultiIndex k;
    for (auto& e : j) k.e.push_back(e.get<std::uint32_t>());
    return k;
}

std::vector<std::pair<MultiIndex, ValuedRational>> sorted_terms(
    const std::map<MultiIndex, ValuedRational>& terms) {
    std::vector<std::pair<MultiIndex, ValuedRational>> v(terms.begin(), terms.end());
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) {
        if (a.first.total() != b.first.total()) return a.first.total() > b.first.total();
        return a.first < b.first;
    });
    return v;
}

}  // namespace

Json level_to_json(const Level& m) {
    if (m.is_infinite()) return "inf";
    return m.value();
}

Level level_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return Level::infinity();
        throw std::invalid_argument("level_from_json: expected an integer or \"inf\"");
    }
    return Level::finite(j.get<unsigned>());
}

Json group_to_json(const Group& g) {
    if (g.is_reductive()) return Json{{"kind", g.datum()->name}};
    const auto& coords = g.coords();
    bool homogeneous = std::all_of(coords.begin(), coords.end(),
                                   [&](CoordKind k) { return k == coords[0]; });
    if (homogeneous)
        return Json{{"kind", coords[0] == CoordKind::additive ? "Ga" : "Gm"},
                    {"rank", coords.size()}};
    Json factors = Json::array();
    for (auto k : coords)
        factors.push_back(Json{{"kind", k == CoordKind::additive ? "Ga" : "Gm"}, {"rank", 1}});
    return Json{{"kind", "product"}, {"factors", factors}};
}

Group group_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Ga") return Group::additive(j.value("rank", 1u));
    if (kind == "Gm") return Group::multiplicative(j.value("rank", 1u));
    if (kind == "product") {
        std::vector<Group> factors;
        for (auto& f : j.at("factors")) factors.push_back(group_from_json(f));
        return Group::product(factors);
    }
    return Group::reductive(ChevalleyDatum::by_name(kind));
}

Json dist_to_json(const DistElement& u) {
    Json out{{"group", group_to_json(u.group())},
             {"p", u.ctx().p.value()},
             {"m", level_to_json(u.ctx().m)}};
    Json terms = Json::array();
    const bool red = u.group().is_reductive();
    unsigned q = 0, l = 0;
    if (red) {
        q = u.group().datum()->q;
        l = u.group().datum()->l;
    }
    for (auto& [k, c] : sorted_terms(u.terms())) {
        Json t;
        if (red) {
            Json n = Json::array(), tt = Json::array(), nbar = Json::array();
            for (unsigned i = 0; i < q; ++i) n.push_back(k[i]);
            for (unsigned i = 0; i < l; ++i) tt.push_back(k[q + i]);
            for (unsigned i = 0; i < q; ++i) nbar.push_back(k[q + l + i]);
            t = Json{{"n", n}, {"t", tt}, {"nbar", nbar}, {"coeff", coeff_str(c)}};
        } else {
            t = Json{{"exp", exp_to_json(k)}, {"coeff", coeff_str(c)}};
        }
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

DistElement dist_from_json(const Json& j) {
    Group g = group_from_json(j.at("group"));
    LevelContext ctx(Prime(j.at("p").get<unsigned long>()), level_from_json(j.at("m")));
    DistElement u(g, ctx);
    for (auto& t : j.at("terms")) {
        MultiIndex k;
        if (t.contains("exp")) {
            k = exp_from_json(t.at("exp"));
        } else {
            for (auto& part : {"n", "t", "nbar"})
                for (auto& e : t.at(part)) k.e.push_back(e.get<std::uint32_t>());
        }
        u.add_term(k, ValuedRational::parse(ctx.p.value(), t.at("coeff").get<std::string>()));
    }
    return u;
}

Json pd_to_json(const PdPolynomial& f) {
    Json out{{"p", f.ctx().p.value()},
             {"m", level_to_json(f.ctx().m)},
             {"rank", f.rank()},
             {"order", f.order()}};
    Json terms = Json::array();
    for (auto& [k, c] : f.terms())  // std::map: lexicographic
        terms.push_back(Json{{"exp", exp_to_json(k)}, {"coeff", coeff_str(c)}});
    out["terms"] = std::move(terms);
    return out;
}

PdPolynomial pd_from_json(const Json& j) {
    LevelContext ctx(Prime(j.at("p").get<unsigned long>()), level_from_json(j.at("m")));
    PdPolynomial f(ctx, j.at("rank").get<unsigned>(), j.at("order").get<unsigned>());
    for (auto& t : j.at("terms"))
        f.add_term(exp_from_json(t.at("exp")),
                   ValuedRational::parse(ctx.p.value(), t.at("coeff").get<std::string>()));
    return f;
}

namespace {

Chart chart_from_string(const std::string& s) {
    if (s == "A1") return Chart::affine_line();
    if (s == "Gm") return Chart::torus();
    if (s == "P1:0") return Chart::p1(0);
    if (s == "P1:1") return Chart::p1(1);
    throw std::invalid_argument("chart_from_string: unknown chart '" + s + "'");
}

}  // namespace

Json diffop_to_json(const DiffOp& P) {
    Json out{{"chart", P.chart().str()},
             {"p", P.ctx().p.value()},
             {"m", level_to_json(P.ctx().m)}};
    Json terms = Json::array();
    std::vector<std::pair<std::pair<long, unsigned long>, ValuedRational>> v(P.terms().begin(),
                                                                             P.terms().end());
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first < b.first.first;
    });
    for (auto& [jk, c] : v)
        terms.push_back(Json{{"j", jk.first}, {"k", jk.second}, {"coeff", coeff_str(c)}});
    out["terms"] = std::move(terms);
    return out;
}

DiffOp diffop_from_json(const Json& j) {
    LevelContext ctx(Prime(j.at("p").get<unsigned long>()), level_from_json(j.at("m")));
    DiffOp P(ctx, chart_from_string(j.at("chart").get<std::string>()));
    for (auto& t : j.at("terms"))
        P.add_term(t.at("j").get<long>(), t.at("k").get<unsigned long>(),
                   ValuedRational::parse(ctx.p.value(), t.at("coeff").get<std::string>()));
    return P;
}

Json fn_to_json(const GroupFunction& f) {
    Json out{{"group", group_to_json(f.group())}, {"p", f.prime()}};
    Json terms = Json::array();
    for (auto& [e, c] : f.terms()) {
        Json exp = Json::array();
        for (auto x : e) exp.push_back(x);
        terms.push_back(Json{{"exp", exp}, {"coeff", coeff_str(c)}});
    }
    out["terms"] = std::move(terms);
    return out;
}

GroupFunction fn_from_json(const Json& j) {
    Group g = group_from_json(j.at("group"));
    unsigned long p = j.at("p").get<unsigned long>();
    GroupFunction f(g, p);
    for (auto& t : j.at("terms")) {
        GroupFunction::Exponent e;
        for (auto& x : t.at("exp")) e.push_back(x.get<long>());
        f.add_term(e, ValuedRational::parse(p, t.at("coeff").get<std::string>()));
    }
    return f;
}

Json series_to_json(const TruncatedSeries& s) {
    Json out{{"p", s.ctx().p.value()},
             {"m", level_to_json(s.ctx().m)},
             {"rank", s.rank()},
             {"horizon", s.horizon()}};
    Json terms = Json::array();
    for (auto& [k, c] : s.terms())
        terms.push_back(Json{{"exp", exp_to_json(k)}, {"coeff", coeff_str(c)}});
    out["terms"] = std::move(terms);
    if (s.certificate())
        out["certificate"] = Json{{"eta", s.certificate()->eta.get_str()},
                                  {"c", s.certificate()->c.get_str()}};
    if (s.pattern())
        out["pattern"] = Json{{"slope", s.pattern()->slope.get_str()},
                              {"offset", s.pattern()->offset.get_str()}};
    return out;
}

TruncatedSeries series_from_json(const Json& j) {
    LevelContext ctx(Prime(j.at("p").get<unsigned long>()), level_from_json(j.at("m")));
    TruncatedSeries s(ctx, j.value("rank", 1u), j.at("horizon").get<unsigned long>());
    for (auto& t : j.at("terms"))
        s.add_term(exp_from_json(t.at("exp")),
                   ValuedRational::parse(ctx.p.value(), t.at("coeff").get<std::string>()));
    if (j.contains("pattern")) {
        Frac slope(j.at("pattern").at("slope").get<std::string>());
        Frac offset(j.at("pattern").at("offset").get<std::string>());
        slope.canonicalize();
        offset.canonicalize();
        s.declare_pattern(ValuationPattern{slope, offset});
    }
    if (j.contains("certificate")) {
        Frac eta(j.at("certificate").at("eta").get<std::string>());
        Frac c(j.at("certificate").at("c").get<std::string>());
        eta.canonicalize();
        c.canonicalize();
        s.attach_certificate(GrowthCertificate(eta, c));
    }
    return s;
}

Json report_to_json(const SuiteReport& r) {
    Json items = Json::array();
    for (auto& i : r.items)
        items.push_back(Json{{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
    return Json{{"items", items}, {"all_pass", r.all_pass()}};
}

}  // namespace adist
