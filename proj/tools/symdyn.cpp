// symdyn command-line front end.
//
// Exit codes: 0 analysis completed and every check passed, 1 completed with
// failures or witnesses, 2 usage, input or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "symdyn/symdyn.h"

namespace {

struct Options {
  std::string input;
  unsigned depth = 6;
  unsigned max_period = 6;
  std::optional<unsigned> max_preperiod;
  unsigned entry_bound = 3;
  unsigned inner_dim = 4;
  std::optional<std::string> boundary;
  std::string format = "text";
  unsigned long window = 4;
  std::optional<unsigned> level;
  unsigned rn = 1;
  std::string pair;
  std::string expr;
};

class Failure {
 public:
  explicit Failure(std::string msg) : msg_(std::move(msg)) {}
  const std::string& what() const { return msg_; }

 private:
  std::string msg_;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw Failure("--input is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(sd_status s, const std::string& context) {
  if (s != SD_OK) throw Failure(context + ": " + sd_last_error());
}

struct GraphHandle {
  sd_graph* g = nullptr;
  sd_model* m = nullptr;
  ~GraphHandle() {
    sd_model_free(m);
    sd_graph_free(g);
  }
};

void load(GraphHandle& h, const Options& o, bool with_model) {
  check(sd_graph_parse(read_file(o.input).c_str(), &h.g), o.input);
  if (with_model) {
    check(sd_model_create(h.g, o.boundary ? o.boundary->c_str() : nullptr, &h.m), o.input);
  }
}

sd_report* run(const std::string& verb, const Options& o) {
  sd_report* r = nullptr;
  GraphHandle h;
  if (verb == "classify") {
    load(h, o, false);
    check(sd_classify(h.g, &r), verb);
  } else if (verb == "jset") {
    load(h, o, true);
    check(sd_jset(h.m, &r), verb);
  } else if (verb == "spectrum") {
    load(h, o, true);
    check(sd_spectrum(h.m, o.level.value_or(2), o.window, &r), verb);
  } else if (verb == "ck-verify") {
    load(h, o, true);
    check(sd_ck_verify(h.m, o.window, &r), verb);
  } else if (verb == "essential-freeness") {
    load(h, o, true);
    unsigned m = 0, n = 0;
    const bool all = o.pair.empty();
    if (!all && std::sscanf(o.pair.c_str(), "%u,%u", &m, &n) != 2) {
      throw Failure("--pair expects m,n");
    }
    check(sd_essential_freeness(h.m, all ? 1 : 0, m, n, o.depth, &r), verb);
  } else if (verb == "periodic") {
    load(h, o, true);
    check(sd_periodic(h.m, o.max_period, o.max_preperiod.value_or(o.max_period), &r), verb);
  } else if (verb == "rn") {
    load(h, o, true);
    check(sd_rn_partition(h.m, o.rn, o.level.value_or(2), &r), verb);
  } else if (verb == "monomial") {
    load(h, o, true);
    if (o.expr.empty()) throw Failure("--expr is required");
    check(sd_monomial(h.m, o.expr.c_str(), o.level.value_or(0), &r), verb);
  } else if (verb == "sse-verify") {
    check(sd_sse_verify(read_file(o.input).c_str(), &r), o.input);
  } else if (verb == "sse-search") {
    check(sd_sse_search(read_file(o.input).c_str(), o.inner_dim, o.entry_bound, &r), o.input);
  } else if (verb == "invariants") {
    check(sd_invariants(read_file(o.input).c_str(), o.depth, &r), o.input);
  } else if (verb == "conjugacy") {
    check(sd_conjugacy(read_file(o.input).c_str(), o.depth, &r), o.input);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov shift models, Cuntz-Krieger relations and shift equivalence"};
  app.require_subcommand(1);
  Options o;

  const char* verbs[][2] = {
      {"classify", "graph predicates and classification verdicts"},
      {"spectrum", "level-n spectrum and projection coherence"},
      {"ck-verify", "Cuntz-Krieger relations CK1-4"},
      {"essential-freeness", "bounded scan for cylinders where T^m = T^n"},
      {"periodic", "eventually periodic points and the trace bridge"},
      {"jset", "the boundary family J_A"},
      {"sse-verify", "verify an elementary, strong or lag-k shift equivalence certificate"},
      {"sse-search", "search an elementary equivalence within bounds"},
      {"invariants", "Bowen-Franks group, det(I-A), characteristic polynomial"},
      {"conjugacy", "edge-shift conjugacy of an elementary pair"},
      {"rn", "R_N partition of a spectrum level"},
      {"monomial", "normal form and evaluation of a generator product"},
  };
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v[0], v[1]);
    sub->add_option("--input", o.input, "input file (JSON)")->required();
    sub->add_option("--depth", o.depth, "scan depth, path length or positivity bound")
        ->capture_default_str();
    sub->add_option("--max-period", o.max_period, "largest period")->capture_default_str();
    sub->add_option("--max-preperiod", o.max_preperiod, "largest preperiod (default: max period)");
    sub->add_option("--entry-bound", o.entry_bound, "largest entry of R and S")->capture_default_str();
    sub->add_option("--inner-dim", o.inner_dim, "largest inner dimension")->capture_default_str();
    sub->add_option("--boundary", o.boundary, "boundary family: auto or a JSON list");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--window", o.window, "vertex window for infinite graphs")->capture_default_str();
    sub->add_option("--level", o.level, "spectrum level");
    sub->add_option("--rn", o.rn, "N of the R_N partition")->capture_default_str();
    sub->add_option("--pair", o.pair, "m,n for essential-freeness (default: all m<n<=3)");
    sub->add_option("--expr", o.expr, "generator product, e.g. \"S(1,2)* . S(1)\"");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "symdyn: " << e.what() << "\n";
    return 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  sd_report* r = nullptr;
  try {
    r = run(verb, o);
  } catch (const Failure& f) {
    std::cerr << "symdyn: " << f.what() << "\n";
    return 2;
  }
  std::cout << (o.format == "json" ? sd_report_json(r) : sd_report_text(r));
  const int code = sd_report_passed(r) ? 0 : 1;
  sd_report_free(r);
  return code;
}
