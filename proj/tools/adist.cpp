// adist: exact arithmetic for level-m distribution algebras on the command line.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "adist/expr.hpp"
#include "adist/function_action.hpp"
#include "adist/io_json.hpp"
#include "adist/suite.hpp"

using namespace adist;

namespace {

Level parse_level(const std::string& s) {
    if (s == "inf" || s == "infinity") return Level::infinity();
    return Level::finite(static_cast<unsigned>(std::stoul(s)));
}

Group parse_group(const std::string& s) {
    auto one = [](const std::string& part) {
        auto colon = part.find(':');
        std::string kind = part.substr(0, colon);
        unsigned rank = colon == std::string::npos
                            ? 1
                            : static_cast<unsigned>(std::stoul(part.substr(colon + 1)));
        if (kind == "Ga") return Group::additive(rank);
        if (kind == "Gm") return Group::multiplicative(rank);
        return Group::reductive(ChevalleyDatum::by_name(kind));
    };
    if (s.rfind("product:", 0) == 0) {
        std::vector<Group> factors;
        std::string rest = s.substr(8);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            std::string part = rest.substr(pos, comma - pos);
            factors.push_back(one(part));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return Group::product(factors);
    }
    return one(s);
}

Chart default_chart(const Group& g) {
    if (g.is_reductive()) return Chart::p1(0);
    return g.coords()[0] == CoordKind::additive ? Chart::affine_line() : Chart::torus();
}

Chart parse_chart(const std::string& s) {
    if (s == "A1") return Chart::affine_line();
    if (s == "Gm") return Chart::torus();
    if (s == "P1:0") return Chart::p1(0);
    if (s == "P1:1") return Chart::p1(1);
    throw std::invalid_argument("unknown chart '" + s + "' (A1, Gm, P1:0, P1:1)");
}

void print_dist(const DistElement& u, bool as_json, bool with_val) {
    if (as_json) {
        std::cout << dist_to_json(u).dump(2) << "\n";
        return;
    }
    std::cout << u.str();
    if (with_val && !u.is_zero()) {
        long minv = kValInfinity;
        for (auto& [k, c] : u.terms()) minv = std::min(minv, c.valuation());
        std::cout << "   (min coefficient valuation " << minv << ")";
    }
    std::cout << "\n";
}

void print_op(const DiffOp& P, bool as_json) {
    if (as_json)
        std::cout << diffop_to_json(P).dump(2) << "\n";
    else
        std::cout << P.str() << "\n";
}

// expression arguments starting with '@' load a JSON element from a file
DistElement dist_arg(const std::string& arg, const Group& g, const LevelContext& ctx) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::invalid_argument("cannot open " + arg.substr(1));
        DistElement u = dist_from_json(Json::parse(in));
        if (u.group() != g || u.ctx() != ctx)
            throw std::invalid_argument(arg.substr(1) + ": group/context differs from the flags");
        return u;
    }
    return eval_dist(parse(arg), g, ctx);
}

DiffOp diffop_arg(const std::string& arg, const Chart& chart, const LevelContext& ctx) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::invalid_argument("cannot open " + arg.substr(1));
        DiffOp P = diffop_from_json(Json::parse(in));
        if (P.chart() != chart || P.ctx() != ctx)
            throw std::invalid_argument(arg.substr(1) + ": chart/context differs from the flags");
        return P;
    }
    return eval_diffop(parse(arg), chart, ctx);
}

GroupFunction parse_function(const std::string& text, const Group& g, unsigned long p) {
    // monomial sums in T (rank 1): reuse the operator parser on the torus chart,
    // then read off the order-0 coefficients
    Expr e = parse(text);
    DiffOp op = eval_diffop(e, Chart::torus(), LevelContext(Prime(p), Level::finite(0)));
    GroupFunction f(g, p);
    for (auto& [jk, c] : op.terms()) {
        if (jk.second != 0)
            throw std::invalid_argument("--fn expects a polynomial in T, not an operator");
        f.add_term({jk.first}, c);
    }
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for level-m distribution algebras"};
    app.require_subcommand(1);

    std::string p_str = "2", m_str = "0", group_str = "Ga", chart_str, fn_str, to_m_str;
    std::string input_path, eta_str, c_str;
    bool json_out = false, with_val = false;
    unsigned order_n = 4;
    long lambda = 0;
    unsigned long horizon = 64;
    std::vector<std::string> exprs;
    std::vector<int> suite_ids;
    bool suite_all = false;

    auto add_common = [&](CLI::App* sub, int n_exprs) {
        sub->add_option("--p", p_str, "prime");
        sub->add_option("--m", m_str, "level (integer or 'inf')");
        sub->add_option("--group", group_str, "Ga[:N], Gm[:N], sl2, gl2, sl2xsl2, product:...");
        sub->add_flag("--json", json_out, "emit JSON");
        sub->add_flag("--with-valuations", with_val, "print coefficient valuations");
        if (n_exprs > 0)
            sub->add_option("expr", exprs, "expression(s)")->required()->expected(n_exprs);
    };

    auto* cmd_normalize = app.add_subcommand("normalize", "PBW normal form of an expression");
    add_common(cmd_normalize, 1);
    auto* cmd_mul = app.add_subcommand("mul", "product of two expressions");
    add_common(cmd_mul, 2);
    auto* cmd_act = app.add_subcommand("act", "act by a distribution on a function");
    add_common(cmd_act, 1);
    cmd_act->add_option("--fn", fn_str, "polynomial in T")->required();
    auto* cmd_qmap = app.add_subcommand("qmap", "operator image of a distribution");
    add_common(cmd_qmap, 1);
    cmd_qmap->add_option("--chart", chart_str, "A1, Gm, P1:0, P1:1");
    auto* cmd_evale = app.add_subcommand("eval-e", "distribution P(e) of a group-chart operator");
    add_common(cmd_evale, 1);
    cmd_evale->add_option("--chart", chart_str, "A1 or Gm");
    auto* cmd_phi = app.add_subcommand("phi", "level map to --to-m");
    add_common(cmd_phi, 1);
    cmd_phi->add_option("--to-m", to_m_str, "target level")->required();
    auto* cmd_flag = app.add_subcommand("flag-check", "localization report on P1");
    add_common(cmd_flag, 0);
    cmd_flag->add_option("--n", order_n, "order bound");
    cmd_flag->add_option("--lambda", lambda, "twist weight");
    auto* cmd_dagger = app.add_subcommand("dagger-check", "growth-certificate verdict");
    cmd_dagger->add_option("--input", input_path, "series JSON file")->required();
    cmd_dagger->add_option("--eta", eta_str, "certificate slope a/b");
    cmd_dagger->add_option("--c", c_str, "certificate offset a/b");
    cmd_dagger->add_option("--horizon", horizon, "truncate to this horizon");
    cmd_dagger->add_flag("--json", json_out, "emit JSON");
    auto* cmd_suite = app.add_subcommand("suite", "run acceptance criteria");
    cmd_suite->add_flag("--all", suite_all, "run all criteria");
    cmd_suite->add_option("--only", suite_ids, "criterion numbers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        LevelContext ctx(Prime(std::stoul(p_str)), parse_level(m_str));
        Group g = parse_group(group_str);

        if (cmd_normalize->parsed()) {
            print_dist(dist_arg(exprs[0], g, ctx), json_out, with_val);
        } else if (cmd_mul->parsed()) {
            auto u = dist_arg(exprs[0], g, ctx);
            auto v = dist_arg(exprs[1], g, ctx);
            print_dist(mul(u, v), json_out, with_val);
        } else if (cmd_act->parsed()) {
            auto u = dist_arg(exprs[0], g, ctx);
            auto f = parse_function(fn_str, g, ctx.p.value());
            std::cout << act(u, f).str() << "\n";
        } else if (cmd_qmap->parsed()) {
            auto u = dist_arg(exprs[0], g, ctx);
            Chart chart = chart_str.empty() ? default_chart(g) : parse_chart(chart_str);
            DiffOp img = qmap(u, chart);
            print_op(img, json_out);
            if (u.is_integral() && !img.is_integral()) {
                std::cerr << "non-integral image of an integral distribution\n";
                return 1;
            }
        } else if (cmd_evale->parsed()) {
            Chart chart = chart_str.empty() ? default_chart(g) : parse_chart(chart_str);
            DiffOp P = diffop_arg(exprs[0], chart, ctx);
            print_dist(eval_at_identity(P, g), json_out, with_val);
        } else if (cmd_phi->parsed()) {
            auto u = dist_arg(exprs[0], g, ctx);
            print_dist(level_map(u, parse_level(to_m_str)), json_out, with_val);
        } else if (cmd_flag->parsed()) {
            auto rep = localization_check(order_n, ctx, TwistDatum{lambda});
            if (json_out) {
                std::cout << report_to_json(rep).dump(2) << "\n";
            } else {
                for (auto& item : rep.items)
                    std::cout << (item.pass ? "ok   " : "FAIL ") << item.name
                              << (item.detail.empty() ? "" : "  [" + item.detail + "]") << "\n";
            }
            if (!rep.all_pass()) return 1;
        } else if (cmd_dagger->parsed()) {
            std::ifstream in(input_path);
            if (!in) throw std::invalid_argument("cannot open " + input_path);
            Json j = Json::parse(in);
            TruncatedSeries file_series = series_from_json(j);
            TruncatedSeries s(file_series.ctx(), file_series.rank(),
                              std::min(horizon, file_series.horizon()));
            for (auto& [k, c] : file_series.terms())
                if (k.total() <= s.horizon()) s.add_term(k, c);
            if (file_series.pattern()) s.declare_pattern(*file_series.pattern());
            if (!s.in_infinity_basis()) s = s.to_infinity_basis();

            DaggerVerdict verdict;
            if (!eta_str.empty()) {
                Frac eta(eta_str), cc(c_str.empty() ? "0" : c_str);
                eta.canonicalize();
                cc.canonicalize();
                verdict = dagger_classify(s, GrowthCertificate(eta, cc));
            } else if (file_series.certificate()) {
                verdict = dagger_classify(s, *file_series.certificate());
            } else {
                verdict = dagger_classify(s);
            }
            if (json_out)
                std::cout << Json{{"verdict", to_string(verdict)}}.dump(2) << "\n";
            else
                std::cout << to_string(verdict) << "\n";
            if (verdict == DaggerVerdict::refuted_at_horizon) return 1;
        } else if (cmd_suite->parsed()) {
            std::vector<int> which = suite_all ? std::vector<int>{} : suite_ids;
            if (!suite_all && suite_ids.empty()) which = {};
            int failures = suite::run_and_print(std::cout, which);
            if (failures) return 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
