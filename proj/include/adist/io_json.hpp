#pragma once

#include <json.hpp>

#include "adist/completion.hpp"
#include "adist/diff_op.hpp"
#include "adist/flag_p1.hpp"
#include "adist/function_action.hpp"

namespace adist {

using Json = nlohmann::json;

Json level_to_json(const Level& m);
Level level_from_json(const Json& j);

Json group_to_json(const Group& g);
Group group_from_json(const Json& j);

/// {"group":...,"p":2,"m":1,"terms":[...]} with terms ordered by (degree desc, lex);
/// reductive terms carry the n/t/nbar split, toral terms a single "exp" array.
Json dist_to_json(const DistElement& u);
DistElement dist_from_json(const Json& j);

/// {"rank":N,"order":n,"terms":[{"exp":[...],"coeff":"a/b"}]} sorted lexicographically.
Json pd_to_json(const PdPolynomial& f);
PdPolynomial pd_from_json(const Json& j);

/// {"chart":"P1:0","p":2,"m":1,"terms":[{"j":-1,"k":2,"coeff":"a/b"}]}
Json diffop_to_json(const DiffOp& P);
DiffOp diffop_from_json(const Json& j);

/// coefficient map exponent -> "a/b"
Json fn_to_json(const GroupFunction& f);
GroupFunction fn_from_json(const Json& j);

Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);

Json report_to_json(const SuiteReport& r);

}  // namespace adist
