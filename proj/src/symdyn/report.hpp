#pragma once

// Analysis bundles behind the batch front end. Each returns a JSON body
// (object keys sorted, integers only) and whether every check passed.

#include <optional>
#include <string>
#include <utility>

#include "symdyn/io.hpp"
#include "symdyn/semigroup.hpp"

namespace symdyn {

struct Report {
  Json body = Json::object();
  bool passed = true;
};

std::string render_json(const Json& body);
// One "path: value" line per scalar; lists of strings one entry per line.
std::string render_text(const Json& body);

Report classify_report(const Graph& g);
Report jset_report(const Graph& g, const ModelPtr& m);
Report spectrum_report(const ModelPtr& m, std::uint32_t level, std::optional<Vertex> window);
Report ck_report(const ModelPtr& m, Vertex window);
// Without a pair, every 0 <= m < n <= 3 is scanned.
Report freeness_report(const ModelPtr& m, std::optional<std::pair<std::uint32_t, std::uint32_t>> pair,
                       std::uint32_t depth);
Report periodic_report(const ModelPtr& m, std::uint32_t max_period, std::uint32_t max_preperiod);
Report rn_report(const ModelPtr& m, std::uint32_t big_n, std::uint32_t level);
// level 0 picks the least level at which the normal form can be evaluated.
Report monomial_report(const ModelPtr& m, const std::string& expr, std::uint32_t level);

Report sse_verify_report(const Certificate& c);
Report sse_search_report(const IntMatrix& a, const IntMatrix& b, std::uint64_t inner_dim,
                         std::uint64_t entry_bound);
// Input: {"A": M} with optional "B" (comparison) and "elements" ([{"v":[..],
// "level":m}], evaluated in G(A) with positivity bound k_max).
Report invariants_report(const Json& input, std::uint64_t k_max);
Report conjugacy_report(const Certificate& c, std::size_t max_length);

Json clopen_to_json(const ClopenSet& a);

}  // namespace symdyn
