#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qre/qre.h"

namespace {

struct CliConfig {
  std::string format = "text";
  std::string out;
  int workers = 1;
  std::size_t cache_cap = 0;
  std::uint64_t seed = 20240611;
};

struct Failure {
  qre_status status;
};

void check(qre_status s) {
  if (s != QRE_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  qre_string_free(s);
  return out;
}

using ContextPtr = std::unique_ptr<qre_context, decltype(&qre_context_free)>;
using ElementPtr = std::unique_ptr<qre_element, decltype(&qre_element_free)>;
using DocPtr = std::unique_ptr<qre_doc, decltype(&qre_doc_free)>;

ContextPtr open_context(int n, const CliConfig& cfg) {
  qre_context* raw = nullptr;
  check(qre_context_new(n, &raw));
  ContextPtr ctx(raw, qre_context_free);
  check(qre_context_set_cache_cap(ctx.get(), cfg.cache_cap));
  return ctx;
}

ElementPtr own(qre_element* e) { return ElementPtr(e, qre_element_free); }

void emit(const CliConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + cfg.out + " for writing");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

// Elements print as PBW text followed by their JSON, or as a single JSON object.
std::string render_element(const CliConfig& cfg, const qre_element* e, const nlohmann::json& extra) {
  char* text = nullptr;
  char* json = nullptr;
  check(qre_element_to_string(e, &text));
  const std::string pbw = take(text);
  check(qre_element_to_json(e, &json));
  const std::string js = take(json);
  if (cfg.format == "json") {
    nlohmann::json j = extra;
    j["pbw"] = pbw;
    j["element"] = nlohmann::json::parse(js);
    return j.dump(2) + "\n";
  }
  return pbw + "\n" + js + "\n";
}

std::string report_text(const nlohmann::json& r) {
  std::string out = "suite " + r.at("suite").get<std::string>() + " (seed " +
                    std::to_string(r.at("params").at("seed").get<std::uint64_t>()) + ")\n";
  std::size_t total = 0;
  for (const auto& c : r.at("checks")) {
    ++total;
    out += (c.at("status") == "pass" ? "PASS " : "FAIL ") + c.at("name").get<std::string>();
    if (c.contains("detail")) out += " :: " + c.at("detail").get<std::string>();
    out += "\n";
  }
  const std::size_t failed = r.at("failures").get<std::size_t>();
  out += std::to_string(total - failed) + "/" + std::to_string(total) + " checks passed";
  if (r.contains("wall_seconds")) out += " in " + std::to_string(r.at("wall_seconds").get<double>()) + " s";
  return out + "\n";
}

int default_workers() {
  if (const char* env = std::getenv("QRE_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    std::cerr << "qre: ignoring QRE_WORKERS=" << env << "\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in quantum matrix and reflection equation algebras"};
  app.require_subcommand(1);
  CliConfig cfg;
  cfg.workers = default_workers();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "latex", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");
  app.add_option("--workers", cfg.workers, "Worker threads for verify (default from QRE_WORKERS)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cache-cap", cfg.cache_cap, "Entries per memo table, 0 for unbounded")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  app.fallthrough();

  std::string family = "small-gln";
  int n = 2;
  int ell = 0;
  auto* present = app.add_subcommand("present", "Emit a presentation by generators and relations");
  present->add_option("--family", family, "mn, gln, sln, small-gln or small-sln")->capture_default_str();
  present->add_option("--n", n, "Matrix size")->capture_default_str();
  present->add_option("--ell", ell, "Odd order of the root of unity (small families)");

  std::string suite;
  std::vector<int> suite_n, suite_ell;
  std::uint64_t budget = 65536;
  bool long_running = false, timing = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name, or 'all'")->required();
  verify->add_option("--n", suite_n, "Matrix sizes, comma separated")->delimiter(',');
  verify->add_option("--ell", suite_ell, "Root of unity orders, comma separated")->delimiter(',');
  verify->add_option("--budget", budget, "Largest admissible expansion size")->capture_default_str();
  verify->add_flag("--long-running", long_running, "Include the slow checks");
  verify->add_flag("--timing", timing, "Report wall time");

  bool braided = false, as_printed = false;
  auto* det = app.add_subcommand("det", "Quantum determinant or its braided counterpart");
  det->add_option("--n", n, "Matrix size")->capture_default_str();
  det->add_flag("--braided", braided, "Braided determinant as a sum of braided monomials");
  det->add_flag("--as-printed", as_printed, "Use exceedance exponents in the braided formula");

  std::string word;
  auto* twist = app.add_subcommand("twist", "Apply the twisting map to a word");
  twist->add_option("--word", word, "Word such as x[1,1]^3*x[1,2]")->required();
  twist->add_option("--n", n, "Matrix size (default: largest index in the word)");

  std::vector<int> composition;
  int sigma_n = 1;
  auto* sigma = app.add_subcommand("sigma", "The scalar sigma_q of a composition");
  sigma->add_option("--composition", composition, "Parts, e.g. 3,1,2")->delimiter(',')->required();
  sigma->add_option("--ell", ell, "Also reduce modulo the ell-th cyclotomic polynomial");
  sigma->add_option("--n", sigma_n, "Write q = v^n")->capture_default_str();

  int k = 0;
  auto* count = app.add_subcommand("count", "Monomial counts of the unipotent relations");
  count->add_option("--n", n, "Matrix size")->capture_default_str();
  count->add_option("--ell", ell, "Odd order of the root of unity")->required();
  count->add_option("--k", k, "Only this diagonal index");

  auto* vset = app.add_subcommand("vset", "Enumerate the index tuples attached to a composition");
  vset->add_option("--k", k, "Largest index")->required();
  vset->add_option("--composition", composition, "Parts, e.g. 3,1,2")->delimiter(',')->required();

  auto* rform = app.add_subcommand("rform", "Dump the generator tables of the R-form");
  rform->add_option("--n", n, "Matrix size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*present) {
      qre_doc* raw = nullptr;
      check(qre_doc_present(family.c_str(), n, ell, &raw));
      DocPtr doc(raw, qre_doc_free);
      char* text = nullptr;
      check(qre_doc_render(doc.get(), cfg.format.c_str(), &text));
      emit(cfg, take(text));
    } else if (*verify) {
      nlohmann::json params = {{"seed", cfg.seed},     {"workers", cfg.workers},   {"budget", budget},
                               {"long_running", long_running}, {"timing", timing}};
      if (!suite_n.empty()) params["n"] = suite_n;
      if (!suite_ell.empty()) params["ell"] = suite_ell;
      std::vector<std::string> suites;
      if (suite == "all") {
        char* names = nullptr;
        check(qre_verify_suites(&names));
        std::string list = take(names);
        std::size_t pos = 0;
        while (pos < list.size()) {
          const std::size_t nl = list.find('\n', pos);
          suites.push_back(list.substr(pos, nl - pos));
          pos = nl + 1;
        }
      } else {
        suites.push_back(suite);
      }
      std::size_t failures = 0;
      nlohmann::json reports = nlohmann::json::array();
      std::string text;
      const std::string p = params.dump();
      for (const auto& s : suites) {
        char* report = nullptr;
        std::size_t f = 0;
        check(qre_verify(s.c_str(), p.c_str(), &report, &f));
        failures += f;
        const auto r = nlohmann::json::parse(take(report));
        text += report_text(r);
        reports.push_back(r);
      }
      if (cfg.format == "json") {
        emit(cfg, (reports.size() == 1 ? reports[0] : reports).dump(2) + "\n");
      } else {
        emit(cfg, text);
      }
      return failures == 0 ? 0 : 1;
    } else if (*det) {
      if (braided) {
        char* text = nullptr;
        check(qre_braided_det_formula(n, as_printed ? 1 : 0, cfg.format.c_str(), &text));
        emit(cfg, take(text));
      } else {
        auto ctx = open_context(n, cfg);
        qre_element* raw = nullptr;
        check(qre_element_qdet(ctx.get(), &raw));
        auto d = own(raw);
        emit(cfg, render_element(cfg, d.get(), {{"n", n}}));
      }
    } else if (*twist) {
      int size = n;
      if (twist->count("--n") == 0) {
        size = 1;
        int value = 0;
        bool in_index = false;
        for (char c : word) {
          if (c == '[' || c == ',') {
            in_index = true;
            value = 0;
          } else if (in_index && c >= '0' && c <= '9') {
            value = value * 10 + (c - '0');
            size = std::max(size, value);
          } else {
            in_index = false;
          }
        }
      }
      auto ctx = open_context(size, cfg);
      qre_element* raw = nullptr;
      check(qre_element_from_word(ctx.get(), word.c_str(), &raw));
      auto w = own(raw);
      check(qre_element_twist(w.get(), &raw));
      auto t = own(raw);
      emit(cfg, render_element(cfg, t.get(), {{"n", size}, {"word", word}}));
    } else if (*sigma) {
      char* text = nullptr;
      check(qre_sigma_json(composition.data(), composition.size(), sigma_n, ell, &text));
      const auto j = nlohmann::json::parse(take(text));
      if (cfg.format == "json") {
        emit(cfg, j.dump(2) + "\n");
      } else {
        std::string out = j.at("display").get<std::string>() + "\n" + j.at("expanded").get<std::string>() + "\n";
        if (j.contains("specialized_display")) out += j.at("specialized_display").get<std::string>() + "\n";
        emit(cfg, out);
      }
    } else if (*count) {
      nlohmann::json rows = nlohmann::json::array();
      std::string text = "k  enumerated  formula\n";
      const int lo = k > 0 ? k : 1;
      const int hi = k > 0 ? k : n;
      for (int kk = lo; kk <= hi; ++kk) {
        std::uint64_t enumerated = 0, formula = 0;
        check(qre_count_terms(n, ell, kk, &enumerated, &formula));
        rows.push_back({{"k", kk}, {"enumerated", enumerated}, {"formula", formula}});
        text += std::to_string(kk) + "  " + std::to_string(enumerated) + "  " + std::to_string(formula) +
                (enumerated == formula ? "" : "  differ") + "\n";
      }
      if (cfg.format == "json") {
        emit(cfg, nlohmann::json{{"n", n}, {"ell", ell}, {"counts", rows}}.dump(2) + "\n");
      } else {
        emit(cfg, text);
      }
    } else if (*vset) {
      char* text = nullptr;
      check(qre_vset_json(k, composition.data(), composition.size(), &text));
      const auto tuples = nlohmann::json::parse(take(text));
      if (cfg.format == "json") {
        emit(cfg, tuples.dump() + "\n");
      } else {
        std::string out;
        for (const auto& t : tuples) {
          std::string line;
          for (const auto& x : t) line += (line.empty() ? "" : ",") + std::to_string(x.get<int>());
          out += line + "\n";
        }
        emit(cfg, out);
      }
    } else if (*rform) {
      auto ctx = open_context(n, cfg);
      char* text = nullptr;
      check(qre_context_rform_json(ctx.get(), &text));
      emit(cfg, take(text) + "\n");
    }
  } catch (const Failure& f) {
    std::cerr << "qre: " << qre_status_name(f.status) << ": " << qre_last_error() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qre: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
