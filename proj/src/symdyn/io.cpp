#include "symdyn/io.hpp"

#include <algorithm>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::validation, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, "missing field '" + key + "'");
  return *it;
}

std::uint64_t as_count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    bad(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

BigInt as_bigint(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + start, s.end(), [](char c) {
          return c >= '0' && c <= '9';
        })) {
      return BigInt(s);
    }
  }
  bad(path, "expected an integer");
}

BitMatrix bits(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of rows");
  BitMatrix out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) bad(rp, "expected a row");
    std::vector<std::uint8_t> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const std::string ep = rp + "[" + std::to_string(k) + "]";
      const std::uint64_t v = as_count(j[i][k], ep);
      if (v > 1) bad(ep, "expected 0 or 1");
      row.push_back(static_cast<std::uint8_t>(v));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::uint64_t> counts(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list");
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(as_count(j[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    fail(ErrorKind::parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Graph parse_graph(const Json& j) {
  const std::string root = "graph";
  const Json& type = field(j, "type", root);
  if (!type.is_string()) bad(root + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "finite") {
    return Graph::finite(bits(field(j, "rows", root), root + ".rows"));
  }
  if (t == "block") {
    const Json& cls = field(j, "classes", root);
    if (!cls.is_array()) bad(root + ".classes", "expected a list");
    std::vector<BlockClass> classes;
    for (std::size_t k = 0; k < cls.size(); ++k) {
      const std::string cp = root + ".classes[" + std::to_string(k) + "]";
      const Json& card = field(cls[k], "card", cp);
      if (card.is_string() && card.get<std::string>() == "inf") {
        classes.push_back({std::nullopt});
      } else {
        const std::uint64_t c = as_count(card, cp + ".card");
        if (c == 0) bad(cp + ".card", "a class needs at least one vertex");
        classes.push_back({c});
      }
    }
    return Graph::block(std::move(classes), bits(field(j, "block", root), root + ".block"));
  }
  if (t == "banded") {
    BitMatrix prefix = j.contains("prefix") ? bits(j["prefix"], root + ".prefix") : BitMatrix{};
    const std::uint64_t cutoff = as_count(field(j, "cutoff", root), root + ".cutoff");
    std::vector<std::uint64_t> offsets = counts(field(j, "offsets", root), root + ".offsets");
    std::vector<std::pair<Vertex, Vertex>> cross;
    if (j.contains("cross")) {
      const Json& c = j["cross"];
      if (!c.is_array()) bad(root + ".cross", "expected a list of [from,to] pairs");
      for (std::size_t k = 0; k < c.size(); ++k) {
        const std::string cp = root + ".cross[" + std::to_string(k) + "]";
        auto pair = counts(c[k], cp);
        if (pair.size() != 2) bad(cp, "expected [from,to]");
        cross.emplace_back(pair[0], pair[1]);
      }
    }
    return Graph::banded(std::move(prefix), cutoff, std::move(offsets), std::move(cross));
  }
  bad(root + ".type", "unknown graph type '" + t + "' (finite, block, banded)");
}

std::vector<BoundaryPattern> parse_boundary(const Graph& g, const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "auto") bad("boundary", "expected \"auto\" or a list of patterns");
    return compute_JA(g);
  }
  if (!j.is_array()) bad("boundary", "expected \"auto\" or a list of patterns");
  std::vector<BoundaryPattern> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = "boundary[" + std::to_string(k) + "]";
    if (!j[k].is_object()) bad(p, "expected an object with 'finite' and 'classes'");
    for (auto it = j[k].begin(); it != j[k].end(); ++it) {
      if (it.key() != "finite" && it.key() != "classes") bad(p, "unknown field '" + it.key() + "'");
    }
    BoundaryPattern pat;
    if (j[k].contains("finite")) pat.finite = counts(j[k]["finite"], p + ".finite");
    if (j[k].contains("classes")) {
      for (std::uint64_t c : counts(j[k]["classes"], p + ".classes")) {
        if (c == 0) bad(p + ".classes", "class numbers start at 1");
        pat.classes.push_back(static_cast<std::size_t>(c - 1));
      }
    }
    out.push_back(canonical_pattern(g, std::move(pat)));
  }
  return out;
}

ModelPtr build_model(const Graph& g, const Json& graph_file, const std::optional<std::string>& spec) {
  if (spec) {
    if (*spec == "auto") return dense_model(g);
    return validate_model(g, parse_boundary(g, parse_json_text(*spec, "--boundary")));
  }
  if (graph_file.is_object() && graph_file.contains("boundary")) {
    return validate_model(g, parse_boundary(g, graph_file["boundary"]));
  }
  return dense_model(g);
}

IntMatrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a nonempty list of rows");
  std::vector<std::vector<BigInt>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].empty()) bad(rp, "expected a nonempty row");
    std::vector<BigInt> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      row.push_back(as_bigint(j[i][k], rp + "[" + std::to_string(k) + "]"));
    }
    if (i > 0 && row.size() != rows.front().size()) bad(rp, "ragged row");
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

Json bigint_to_json(const BigInt& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(bigint_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

Certificate parse_certificate(const Json& j) {
  const std::string root = "certificate";
  if (!j.is_object()) bad(root, "expected an object");
  Certificate c;
  c.a = parse_matrix(field(j, "A", root), root + ".A");
  c.b = parse_matrix(field(j, "B", root), root + ".B");
  if (j.contains("chain")) {
    if (j.contains("R") || j.contains("S")) bad(root, "give either 'chain' or 'R'/'S', not both");
    const Json& ch = j["chain"];
    if (!ch.is_array()) bad(root + ".chain", "expected a list of {\"R\",\"S\"} steps");
    for (std::size_t k = 0; k < ch.size(); ++k) {
      const std::string p = root + ".chain[" + std::to_string(k) + "]";
      c.chain.push_back({parse_matrix(field(ch[k], "R", p), p + ".R"),
                         parse_matrix(field(ch[k], "S", p), p + ".S")});
    }
    return c;
  }
  c.chain.push_back({parse_matrix(field(j, "R", root), root + ".R"),
                     parse_matrix(field(j, "S", root), root + ".S")});
  if (j.contains("lag")) {
    c.lag = as_count(j["lag"], root + ".lag");
    if (*c.lag == 0) bad(root + ".lag", "the lag must be at least 1");
  }
  return c;
}

}  // namespace symdyn
