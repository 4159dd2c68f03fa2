#include "symdyn/symdyn.h"

#include <exception>
#include <new>
#include <string>

#include "symdyn/error.hpp"
#include "symdyn/report.hpp"

using namespace symdyn;

struct sd_graph {
  Graph graph;
  Json file;
};

struct sd_model {
  ModelPtr model;
};

struct sd_report {
  std::string json;
  std::string text;
  bool passed;
};

namespace {

thread_local std::string last_error;

sd_status to_status(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
      return SD_ERR_PARSE;
    case ErrorKind::validation:
      return SD_ERR_VALIDATION;
    case ErrorKind::unsupported:
      return SD_ERR_UNSUPPORTED;
    case ErrorKind::domain:
      return SD_ERR_DOMAIN;
    case ErrorKind::parameter:
      return SD_ERR_PARAMETER;
  }
  return SD_ERR_INTERNAL;
}

template <class F>
sd_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return SD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return SD_ERR_INTERNAL;
}

sd_status null_arg(const char* what) {
  last_error = std::string(what) + " is NULL";
  return SD_ERR_NULL;
}

sd_report* make_report(const Report& r) {
  return new sd_report{render_json(r.body), render_text(r.body), r.passed};
}

#define SD_REQUIRE(p)              \
  do {                             \
    if (!(p)) return null_arg(#p); \
  } while (0)

}  // namespace

extern "C" {

const char* sd_version(void) { return "0.1.0"; }

const char* sd_status_name(sd_status status) {
  switch (status) {
    case SD_OK:
      return "ok";
    case SD_ERR_PARSE:
      return "parse error";
    case SD_ERR_VALIDATION:
      return "validation error";
    case SD_ERR_UNSUPPORTED:
      return "unsupported presentation";
    case SD_ERR_DOMAIN:
      return "domain error";
    case SD_ERR_PARAMETER:
      return "parameter error";
    case SD_ERR_INTERNAL:
      return "internal error";
    case SD_ERR_NULL:
      return "null argument";
  }
  return "unknown status";
}

const char* sd_last_error(void) { return last_error.c_str(); }

sd_status sd_graph_parse(const char* json_text, sd_graph** out) {
  SD_REQUIRE(json_text);
  SD_REQUIRE(out);
  return guarded([&] {
    Json j = parse_json_text(json_text, "graph");
    Graph g = parse_graph(j);
    *out = new sd_graph{std::move(g), std::move(j)};
  });
}

void sd_graph_free(sd_graph* graph) { delete graph; }

sd_status sd_model_create(const sd_graph* graph, const char* boundary, sd_model** out) {
  SD_REQUIRE(graph);
  SD_REQUIRE(out);
  return guarded([&] {
    std::optional<std::string> spec;
    if (boundary) spec = boundary;
    *out = new sd_model{build_model(graph->graph, graph->file, spec)};
  });
}

void sd_model_free(sd_model* model) { delete model; }

sd_status sd_classify(const sd_graph* graph, sd_report** out) {
  SD_REQUIRE(graph);
  SD_REQUIRE(out);
  return guarded([&] { *out = make_report(classify_report(graph->graph)); });
}

sd_status sd_jset(const sd_model* model, sd_report** out) {
  SD_REQUIRE(model);
  SD_REQUIRE(out);
  return guarded([&] { *out = make_report(jset_report(model->model->graph(), model->model)); });
}

sd_status sd_spectrum(const sd_model* model, unsigned level, unsigned long window,
                      sd_report** out) {
  SD_REQUIRE(model);
  SD_REQUIRE(out);
  return guarded([&] {
    std::optional<Vertex> w;
    if (window) w = window;
    *out = make_report(spectrum_report(model->model, level, w));
  });
}

sd_status sd_ck_verify(const sd_model* model, unsigned long window, sd_report** out) {
  SD_REQUIRE(model);
  SD_REQUIRE(out);
  return guarded([&] { *out = make_report(ck_report(model->model, window)); });
}

sd_status sd_essential_freeness(const sd_model* model, int all_pairs, unsigned m, unsigned n,
                                unsigned depth, sd_report** out) {
  SD_REQUIRE(model);
  SD_REQUIRE(out);
  return guarded([&] {
    std::optional<std::pair<std::uint32_t, std::uint32_t>> pair;
    if (!all_pairs) pair.emplace(m, n);
    *out = make_report(freeness_report(model->model, pair, depth));
  });
}

sd_status sd_periodic(const sd_model* model, unsigned max_period, unsigned max_preperiod,
                      sd_report** out) {
  SD_REQUIRE(model);
  SD_REQUIRE(out);
  return guarded(
      [&] { *out = make_report(periodic_report(model->model, max_period, max_preperiod)); });
}

sd_status sd_rn_partition(const sd_model* model, unsigned big_n, unsigned level,
                          sd_report** out) {
  SD_REQUIRE(model);
  SD_REQUIRE(out);
  return guarded([&] { *out = make_report(rn_report(model->model, big_n, level)); });
}

sd_status sd_monomial(const sd_model* model, const char* expr, unsigned level, sd_report** out) {
  SD_REQUIRE(model);
  SD_REQUIRE(expr);
  SD_REQUIRE(out);
  return guarded([&] { *out = make_report(monomial_report(model->model, expr, level)); });
}

sd_status sd_sse_verify(const char* certificate_json, sd_report** out) {
  SD_REQUIRE(certificate_json);
  SD_REQUIRE(out);
  return guarded([&] {
    const Certificate c = parse_certificate(parse_json_text(certificate_json, "certificate"));
    *out = make_report(sse_verify_report(c));
  });
}

sd_status sd_sse_search(const char* json_text, unsigned inner_dim, unsigned entry_bound,
                        sd_report** out) {
  SD_REQUIRE(json_text);
  SD_REQUIRE(out);
  return guarded([&] {
    const Json j = parse_json_text(json_text, "input");
    if (!j.is_object() || !j.contains("A") || !j.contains("B")) {
      fail(ErrorKind::validation, "input: expected {\"A\": matrix, \"B\": matrix}");
    }
    *out = make_report(sse_search_report(parse_matrix(j["A"], "input.A"),
                                         parse_matrix(j["B"], "input.B"), inner_dim, entry_bound));
  });
}

sd_status sd_invariants(const char* json_text, unsigned positivity_bound, sd_report** out) {
  SD_REQUIRE(json_text);
  SD_REQUIRE(out);
  return guarded([&] {
    *out = make_report(invariants_report(parse_json_text(json_text, "input"), positivity_bound));
  });
}

sd_status sd_conjugacy(const char* certificate_json, unsigned max_length, sd_report** out) {
  SD_REQUIRE(certificate_json);
  SD_REQUIRE(out);
  return guarded([&] {
    const Certificate c = parse_certificate(parse_json_text(certificate_json, "certificate"));
    *out = make_report(conjugacy_report(c, max_length));
  });
}

const char* sd_report_json(const sd_report* report) { return report ? report->json.c_str() : ""; }

const char* sd_report_text(const sd_report* report) { return report ? report->text.c_str() : ""; }

int sd_report_passed(const sd_report* report) { return report && report->passed ? 1 : 0; }

void sd_report_free(sd_report* report) { delete report; }

}  // extern "C"
