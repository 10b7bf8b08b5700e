#include "qre/qre.h"

#include <cstring>
#include <memory>
#include <string>

#include "qre/combinatorics.hpp"
#include "qre/context.hpp"
#include "qre/cyclotomic.hpp"
#include "qre/error.hpp"
#include "qre/presentations.hpp"
#include "qre/qscalar.hpp"
#include "qre/verify.hpp"

struct qre_context {
  std::shared_ptr<const qre::Context> ctx;
};

struct qre_element {
  std::shared_ptr<const qre::Context> ctx;
  qre::Element body;
  bool braided = false;
};

struct qre_doc {
  qre::PresentationDoc doc;
};

namespace {

thread_local std::string last_error;

qre_status to_status(qre::ErrorCode c) { return static_cast<qre_status>(static_cast<int>(c)); }

template <class F>
qre_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return QRE_OK;
  } catch (const qre::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return QRE_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QRE_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QRE_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) qre::fail(qre::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

qre_element* make(std::shared_ptr<const qre::Context> ctx, qre::Element body, bool braided) {
  return new qre_element{std::move(ctx), std::move(body), braided};
}

void same_context(const qre_element* a, const qre_element* b) {
  need(a, "left operand");
  need(b, "right operand");
  if (a->ctx != b->ctx) qre::fail(qre::ErrorCode::kContextMismatch, "operands belong to different contexts");
}

void same_kind(const qre_element* a, const qre_element* b) {
  if (a->braided != b->braided)
    qre::fail(qre::ErrorCode::kInvalidArgument, "cannot combine a braided element with an unbraided one");
}

void unbraided(const qre_element* a, const char* op) {
  if (a->braided) qre::fail(qre::ErrorCode::kInvalidArgument, std::string(op) + " expects an unbraided element");
}

}  // namespace

extern "C" {

const char* qre_version(void) { return "1.0.0"; }

const char* qre_last_error(void) { return last_error.c_str(); }

const char* qre_status_name(qre_status s) {
  switch (s) {
    case QRE_OK: return "ok";
    case QRE_INVALID_ARGUMENT: return "invalid-argument";
    case QRE_PARSE_ERROR: return "parse-error";
    case QRE_INFEASIBLE: return "infeasible";
    case QRE_CONTEXT_MISMATCH: return "context-mismatch";
    case QRE_INTERNAL: return "internal";
  }
  return "unknown";
}

void qre_string_free(char* s) { std::free(s); }

qre_status qre_context_new(int n, qre_context** out) {
  return guarded([&] {
    need(out, "out");
    qre::require(n >= 1 && n <= qre::kMaxMatrixSize, "matrix size must be between 1 and 8");
    *out = new qre_context{std::make_shared<const qre::Context>(n)};
  });
}

void qre_context_free(qre_context* ctx) { delete ctx; }

int qre_context_n(const qre_context* ctx) { return ctx ? ctx->ctx->n() : 0; }

qre_status qre_context_set_cache_cap(qre_context* ctx, size_t cap) {
  return guarded([&] {
    need(ctx, "context");
    ctx->ctx->set_cache_cap(cap);
  });
}

qre_status qre_context_cache_size(const qre_context* ctx, size_t* out) {
  return guarded([&] {
    need(ctx, "context");
    need(out, "out");
    *out = ctx->ctx->cache_size();
  });
}

qre_status qre_context_rform_json(const qre_context* ctx, char** out) {
  return guarded([&] {
    need(ctx, "context");
    need(out, "out");
    *out = dup(ctx->ctx->rform().to_json().dump(2));
  });
}

qre_status qre_element_one(const qre_context* ctx, qre_element** out) {
  return guarded([&] {
    need(ctx, "context");
    need(out, "out");
    *out = make(ctx->ctx, qre::Element::one(ctx->ctx->n()), false);
  });
}

qre_status qre_element_generator(const qre_context* ctx, int row, int col, qre_element** out) {
  return guarded([&] {
    need(ctx, "context");
    need(out, "out");
    const int n = ctx->ctx->n();
    qre::require(row >= 1 && row <= n && col >= 1 && col <= n, "generator index out of range");
    *out = make(ctx->ctx, ctx->ctx->algebra().generator(row, col), false);
  });
}

qre_status qre_element_from_word(const qre_context* ctx, const char* word, qre_element** out) {
  return guarded([&] {
    need(ctx, "context");
    need(word, "word");
    need(out, "out");
    const auto& alg = ctx->ctx->algebra();
    *out = make(ctx->ctx, alg.normal_form(qre::parse_word(word, alg.n())), false);
  });
}

qre_status qre_element_from_json(const qre_context* ctx, const char* json, qre_element** out) {
  return guarded([&] {
    need(ctx, "context");
    need(json, "json");
    need(out, "out");
    const auto j = nlohmann::json::parse(json);
    qre::Element e = qre::Element::from_json(j);
    if (e.n() != ctx->ctx->n()) qre::fail(qre::ErrorCode::kContextMismatch, "element has a different matrix size");
    const bool braided = j.contains("algebra") && j.at("algebra") == "braided";
    *out = make(ctx->ctx, std::move(e), braided);
  });
}

qre_status qre_element_qdet(const qre_context* ctx, qre_element** out) {
  return guarded([&] {
    need(ctx, "context");
    need(out, "out");
    *out = make(ctx->ctx, ctx->ctx->algebra().qdet(), false);
  });
}

qre_status qre_element_braided_det(const qre_context* ctx, int as_printed, qre_element** out) {
  return guarded([&] {
    need(ctx, "context");
    need(out, "out");
    *out = make(ctx->ctx, ctx->ctx->braided().det(as_printed != 0).body, true);
  });
}

qre_status qre_braided_det_formula(int n, int as_printed, const char* format, char** out) {
  return guarded([&] {
    need(format, "format");
    need(out, "out");
    qre::require(n >= 1 && n <= qre::kMaxMatrixSize, "matrix size must be between 1 and 8");
    const qre::FormalExpr e = qre::braided_det_formula(n, as_printed != 0);
    const std::string f = format;
    if (f == "json") {
      *out = dup(nlohmann::json{{"n", n}, {"terms", qre::formal_json(e, n)}}.dump(2) + "\n");
    } else if (f == "text") {
      *out = dup(qre::formal_text(e, n) + "\n");
    } else if (f == "latex") {
      *out = dup(qre::formal_latex(e, n) + "\n");
    } else {
      qre::fail(qre::ErrorCode::kInvalidArgument, "unknown format '" + f + "'");
    }
  });
}

void qre_element_free(qre_element* e) { delete e; }

qre_status qre_element_add(const qre_element* a, const qre_element* b, qre_element** out) {
  return guarded([&] {
    same_context(a, b);
    same_kind(a, b);
    need(out, "out");
    *out = make(a->ctx, a->body + b->body, a->braided);
  });
}

qre_status qre_element_sub(const qre_element* a, const qre_element* b, qre_element** out) {
  return guarded([&] {
    same_context(a, b);
    same_kind(a, b);
    need(out, "out");
    *out = make(a->ctx, a->body - b->body, a->braided);
  });
}

qre_status qre_element_mul(const qre_element* a, const qre_element* b, qre_element** out) {
  return guarded([&] {
    same_context(a, b);
    unbraided(a, "mul");
    unbraided(b, "mul");
    need(out, "out");
    *out = make(a->ctx, a->ctx->algebra().multiply(a->body, b->body), false);
  });
}

qre_status qre_element_braided_mul(const qre_element* a, const qre_element* b, qre_element** out) {
  return guarded([&] {
    same_context(a, b);
    need(out, "out");
    const auto& br = a->ctx->braided();
    *out = make(a->ctx, br.multiply(qre::BraidedElement(a->body), qre::BraidedElement(b->body)).body, true);
  });
}

qre_status qre_element_twist(const qre_element* a, qre_element** out) {
  return guarded([&] {
    need(a, "element");
    need(out, "out");
    unbraided(a, "twist");
    *out = make(a->ctx, a->ctx->twister().twist(a->body).body, true);
  });
}

qre_status qre_element_specialize(const qre_element* a, int ell, qre_element** out) {
  return guarded([&] {
    need(a, "element");
    need(out, "out");
    qre::require(ell >= 1, "ell must be positive");
    const qre::CyclotomicCtx cyc(ell, a->ctx->n());
    *out = make(a->ctx, qre::specialize(a->body, cyc), a->braided);
  });
}

qre_status qre_element_equal(const qre_element* a, const qre_element* b, int* out) {
  return guarded([&] {
    same_context(a, b);
    need(out, "out");
    *out = a->braided == b->braided && a->body == b->body ? 1 : 0;
  });
}

qre_status qre_element_term_count(const qre_element* a, size_t* out) {
  return guarded([&] {
    need(a, "element");
    need(out, "out");
    *out = a->body.terms().size();
  });
}

qre_status qre_element_to_string(const qre_element* a, char** out) {
  return guarded([&] {
    need(a, "element");
    need(out, "out");
    *out = dup(a->body.to_string(a->braided ? "u" : "x"));
  });
}

qre_status qre_element_to_json(const qre_element* a, char** out) {
  return guarded([&] {
    need(a, "element");
    need(out, "out");
    auto j = a->body.to_json();
    j["algebra"] = a->braided ? "braided" : "frt";
    *out = dup(j.dump());
  });
}

qre_status qre_doc_present(const char* family, int n, int ell, qre_doc** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    const qre::Family f = qre::parse_family(family);
    std::optional<int> e;
    if (qre::is_small(f)) e = ell;
    *out = new qre_doc{qre::present(f, n, e)};
  });
}

qre_status qre_doc_from_json(const char* json, qre_doc** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new qre_doc{qre::presentation_from_json(nlohmann::json::parse(json))};
  });
}

void qre_doc_free(qre_doc* doc) { delete doc; }

qre_status qre_doc_relation_count(const qre_doc* doc, size_t* out) {
  return guarded([&] {
    need(doc, "document");
    need(out, "out");
    *out = doc->doc.relations.size();
  });
}

qre_status qre_doc_render(const qre_doc* doc, const char* format, char** out) {
  return guarded([&] {
    need(doc, "document");
    need(format, "format");
    need(out, "out");
    const std::string f = format;
    if (f == "json") {
      *out = dup(qre::to_json(doc->doc).dump(2) + "\n");
    } else if (f == "text") {
      *out = dup(qre::to_text(doc->doc));
    } else if (f == "latex") {
      *out = dup(qre::to_latex(doc->doc));
    } else {
      qre::fail(qre::ErrorCode::kInvalidArgument, "unknown format '" + f + "'");
    }
  });
}

qre_status qre_sigma_json(const int* parts, size_t len, int n, int ell, char** out) {
  return guarded([&] {
    need(parts, "parts");
    need(out, "out");
    qre::require(len > 0, "a composition needs at least one part");
    qre::require(n >= 1, "n must be positive");
    const std::vector<int> p(parts, parts + len);
    const qre::Composition lam(p);
    const qre::LaurentInt value = qre::sigma_q(lam.parts(), n);
    nlohmann::json j;
    j["composition"] = p;
    j["value"] = value.to_json(n);
    j["factors"] = qre::sigma_q_factors(p);
    std::string display;
    for (int f : qre::sigma_q_factors(p)) display += (display.empty() ? "(1 - q^" : "·(1 - q^") + std::to_string(f) + ")";
    j["display"] = display.empty() ? "1" : display;
    j["expanded"] = value.to_string(n);
    if (ell > 0) {
      const qre::CyclotomicCtx cyc(ell, n);
      const qre::LaurentInt reduced = qre::specialize(value, cyc);
      j["ell"] = ell;
      j["specialized"] = reduced.to_json(n);
      j["specialized_display"] = reduced.to_string(n, "ε");
    }
    *out = dup(j.dump());
  });
}

qre_status qre_vset_json(int k, const int* parts, size_t len, char** out) {
  return guarded([&] {
    need(parts, "parts");
    need(out, "out");
    qre::require(len > 0, "a composition needs at least one part");
    qre::require(k >= 1, "k must be positive");
    const qre::Composition lam(std::vector<int>(parts, parts + len));
    *out = dup(nlohmann::json(qre::v_set(k, lam)).dump());
  });
}

qre_status qre_count_terms(int n, int ell, int k, uint64_t* enumerated, uint64_t* formula) {
  return guarded([&] {
    need(enumerated, "enumerated");
    need(formula, "formula");
    const qre::TermCount tc = qre::count_terms(n, ell, k);
    *enumerated = tc.enumerated;
    *formula = tc.formula;
  });
}

qre_status qre_verify(const char* suite, const char* params_json, char** report, size_t* failures) {
  return guarded([&] {
    need(suite, "suite");
    need(report, "report");
    qre::SuiteParams p;
    if (params_json && *params_json) {
      const auto j = nlohmann::json::parse(params_json);
      if (j.contains("n")) p.n = j.at("n").get<std::vector<int>>();
      if (j.contains("ell")) p.ell = j.at("ell").get<std::vector<int>>();
      if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("workers")) p.workers = j.at("workers").get<int>();
      if (j.contains("budget")) p.budget = j.at("budget").get<std::uint64_t>();
      if (j.contains("long_running")) p.long_running = j.at("long_running").get<bool>();
      if (j.contains("timing")) p.timing = j.at("timing").get<bool>();
    }
    const qre::SuiteReport r = qre::run_suite(suite, p);
    *report = dup(r.to_json().dump(2) + "\n");
    if (failures) *failures = r.failures();
  });
}

qre_status qre_verify_suites(char** out) {
  return guarded([&] {
    need(out, "out");
    std::string s;
    for (const auto& name : qre::suite_names()) s += name + "\n";
    *out = dup(s);
  });
}

}  // extern "C"
