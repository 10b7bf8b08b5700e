#include "qre/presentations.hpp"

#include <cctype>
#include <sstream>

#include "qre/combinatorics.hpp"
#include "qre/error.hpp"
#include "qre/qscalar.hpp"
#include "qre/twisting.hpp"

namespace qre {

namespace {

struct FamilyName {
  Family family;
  const char* name;
};

constexpr FamilyName kFamilies[] = {
    {Family::kMn, "mn"},
    {Family::kGLn, "gln"},
    {Family::kSLn, "sln"},
    {Family::kSmallGLn, "small-gln"},
    {Family::kSmallSLn, "small-sln"},
};

std::size_t choose2(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

int code(int n, int i, int j) { return (i - 1) * n + (j - 1); }

FormalExpr unit_expr() { return {FormalTerm{1, {}, {}}}; }

FormalExpr with_inverse(const FormalExpr& det, bool on_right) {
  FormalExpr out;
  for (const auto& t : det) {
    FormalTerm r = t;
    if (on_right) {
      r.word.push_back(kAdjoinedInverse);
    } else {
      r.word.insert(r.word.begin(), kAdjoinedInverse);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string factor_text(int e, std::string_view q_name) {
  std::string s = "(1 - ";
  s += q_name;
  if (e != 1) s += "^" + std::to_string(e);
  return s + ")";
}

std::string word_text(const std::vector<int>& word, int n) {
  if (word.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    if (!out.empty()) out += "·";
    out += formal_word_to_string({word[i]}, n);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

bool single_negative(const LaurentInt& c) { return c.size() == 1 && c.terms()[0].coeff < 0; }

std::string expr_text(const FormalExpr& e, int n, std::string_view q_name) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e) {
    const bool neg = t.factors.empty() && single_negative(t.coeff);
    const FormalTerm shown{neg ? -t.coeff : t.coeff, t.word, t.factors};
    std::string c = coefficient_text(shown, n, q_name);
    if (first) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (c == "1") {
      out += word_text(t.word, n);
    } else if (t.word.empty()) {
      out += c;
    } else {
      out += c + "·" + word_text(t.word, n);
    }
  }
  return out;
}

std::string latex_laurent(const LaurentInt& c, int n, std::string_view var) {
  std::string s = c.to_string(n, var);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '^') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '-')) ++j;
      out += "^{" + s.substr(i + 1, j - i - 1) + "}";
      i = j - 1;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string latex_term_coeff(const FormalTerm& t, int n, std::string_view var) {
  if (!t.factors.empty()) {
    std::string out;
    for (int e : t.factors) out += "\\left(1-" + std::string(var) + "^{" + std::to_string(e) + "}\\right)";
    return out;
  }
  if (t.coeff.is_one()) return "";
  std::string body = latex_laurent(t.coeff, n, var);
  return t.coeff.size() > 1 ? "\\left(" + body + "\\right)" : body;
}

std::string latex_word(const std::vector<int>& word, int n) {
  if (word.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    if (!out.empty()) out += "\\underline{\\cdot}";
    if (word[i] == kAdjoinedInverse) {
      out += "t";
    } else {
      out += "u^{" + std::to_string(word[i] / n + 1) + "}_{" + std::to_string(word[i] % n + 1) + "}";
    }
    if (j - i > 1) out += "^{\\underline{\\cdot}" + std::to_string(j - i) + "}";
    i = j;
  }
  return out;
}

std::string latex_expr(const FormalExpr& e, int n, std::string_view var) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e) {
    const bool neg = t.factors.empty() && single_negative(t.coeff);
    const FormalTerm shown{neg ? -t.coeff : t.coeff, t.word, t.factors};
    std::string c = latex_term_coeff(shown, n, var);
    if (first) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (t.word.empty()) {
      out += c.empty() ? "1" : c;
    } else {
      out += c + latex_word(t.word, n);
    }
  }
  return out;
}

nlohmann::json word_json(const std::vector<int>& word, int n) {
  nlohmann::json w = nlohmann::json::array();
  for (int c : word) {
    if (c == kAdjoinedInverse) {
      w.push_back("t");
    } else {
      w.push_back({c / n + 1, c % n + 1});
    }
  }
  return w;
}

std::vector<int> word_from(const nlohmann::json& j, int n) {
  if (!j.is_array()) fail(ErrorCode::kParse, "relation word must be an array");
  std::vector<int> out;
  for (const auto& x : j) {
    if (x.is_string()) {
      if (x.get<std::string>() != "t") fail(ErrorCode::kParse, "unknown symbol in relation word");
      out.push_back(kAdjoinedInverse);
      continue;
    }
    if (!x.is_array() || x.size() != 2) fail(ErrorCode::kParse, "generator must be [row, col]");
    const int i = x[0].get<int>();
    const int k = x[1].get<int>();
    if (i < 1 || i > n || k < 1 || k > n) fail(ErrorCode::kParse, "generator index out of range");
    out.push_back(code(n, i, k));
  }
  return out;
}

nlohmann::json coefficient_json(const FormalTerm& t, int n, const CyclotomicCtx* ctx) {
  nlohmann::json c;
  if (ctx == nullptr) {
    c = t.coeff.to_json(n);
  } else {
    const LaurentInt reduced = ctx->reduce(t.coeff);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : reduced.terms()) terms.push_back({term.exp / n, bigint_to_json(term.coeff)});
    c["var"] = "eps";
    c["ell"] = ctx->ell();
    c["terms"] = terms;
    c["display"] = coefficient_text(t, n, "ε");
    c["generic"] = t.coeff.to_json(n);
  }
  if (!t.factors.empty()) c["factors"] = t.factors;
  return c;
}

FormalTerm term_from(const nlohmann::json& j, int n) {
  FormalTerm t;
  const auto& c = j.at("coeff");
  t.coeff = c.contains("generic") ? LaurentInt::from_json(c.at("generic")) : LaurentInt::from_json(c);
  if (c.contains("factors")) t.factors = c.at("factors").get<std::vector<int>>();
  t.word = word_from(j.at("word"), n);
  return t;
}

nlohmann::json expr_json(const FormalExpr& e, int n, const CyclotomicCtx* ctx) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : e) out.push_back({{"coeff", coefficient_json(t, n, ctx)}, {"word", word_json(t.word, n)}});
  return out;
}

}  // namespace

const char* family_name(Family f) {
  for (const auto& entry : kFamilies)
    if (entry.family == f) return entry.name;
  return "?";
}

Family parse_family(std::string_view text) {
  for (const auto& entry : kFamilies)
    if (text == entry.name) return entry.family;
  fail(ErrorCode::kParse, "unknown algebra family '" + std::string(text) + "'");
}

bool is_small(Family f) { return f == Family::kSmallGLn || f == Family::kSmallSLn; }

std::size_t PresentationDoc::count_tag(std::string_view prefix) const {
  std::size_t c = 0;
  for (const auto& r : relations)
    if (std::string_view(r.tag).substr(0, prefix.size()) == prefix) ++c;
  return c;
}

std::size_t expected_relation_count(Family family, int n) {
  const std::size_t pairs = choose2(n);
  const std::size_t quadratic = 2 * static_cast<std::size_t>(n) * pairs + 2 * pairs * pairs;
  switch (family) {
    case Family::kMn: return quadratic;
    case Family::kGLn: return quadratic + 2;
    case Family::kSLn: return quadratic + 1;
    case Family::kSmallGLn: return quadratic + static_cast<std::size_t>(n) * n;
    case Family::kSmallSLn: return quadratic + static_cast<std::size_t>(n) * n + 1;
  }
  return 0;
}

PresentationDoc present(Family family, int n, std::optional<int> ell) {
  require(n >= 1 && n <= kMaxMatrixSize, "matrix size must be between 1 and 8");
  PresentationDoc doc;
  doc.family = family;
  doc.n = n;
  if (is_small(family)) {
    require(ell.has_value(), "small algebras need an order ell");
    require(*ell >= 3 && *ell % 2 == 1, "ell must be odd and at least 3");
    doc.ell = ell;
  } else {
    require(!ell.has_value(), "ell only applies to the small algebras");
  }
  for (int fam = 1; fam <= 4; ++fam)
    for (const auto& idx : quadratic_indices(n, fam)) doc.relations.push_back(quadratic_relation(n, fam, idx));

  const FormalExpr det = braided_det_formula(n);
  switch (family) {
    case Family::kMn:
      break;
    case Family::kGLn:
      doc.relations.push_back({"inverse-right", {}, with_inverse(det, true), unit_expr()});
      doc.relations.push_back({"inverse-left", {}, with_inverse(det, false), unit_expr()});
      break;
    case Family::kSLn:
      doc.relations.push_back({"determinant", {}, det, unit_expr()});
      break;
    case Family::kSmallGLn:
    case Family::kSmallSLn: {
      const int order = *ell;
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          if (k == l) continue;
          FormalTerm power{1, std::vector<int>(static_cast<std::size_t>(order), code(n, k, l)), {}};
          doc.relations.push_back({"nilpotent", {k, l}, {power}, {}});
        }
      for (int k = 1; k <= n; ++k) {
        FormalExpr lhs = (n == 2 && k == 2) ? reversed_block_expr(order) : diag_power_expr(n, k, order);
        doc.relations.push_back({"unipotent", {k}, std::move(lhs), unit_expr()});
      }
      if (family == Family::kSmallSLn) doc.relations.push_back({"determinant", {}, det, unit_expr()});
      break;
    }
  }
  return doc;
}

LaurentInt specialize(const LaurentInt& f, const CyclotomicCtx& ctx) { return ctx.reduce(f); }

Element specialize(const Element& e, const CyclotomicCtx& ctx) {
  Element out(e.n());
  for (const auto& [w, c] : e.terms()) out.add_term(w, ctx.reduce(c));
  return out;
}

FormalExpr specialize(const FormalExpr& e, const CyclotomicCtx& ctx) {
  FormalExpr out;
  for (const auto& t : canonicalize(e)) {
    LaurentInt c = ctx.reduce(t.coeff);
    if (!c.is_zero()) out.push_back({std::move(c), t.word, {}});
  }
  return out;
}

std::string coefficient_text(const FormalTerm& t, int n, std::string_view q_name) {
  if (!t.factors.empty()) {
    std::string out;
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (i) out += "·";
      out += factor_text(t.factors[i], q_name);
    }
    return out;
  }
  if (t.coeff.size() > 1) return "(" + t.coeff.to_string(n, q_name) + ")";
  return t.coeff.to_string(n, q_name);
}

std::string formal_text(const FormalExpr& e, int n, std::string_view q_name) { return expr_text(e, n, q_name); }

std::string formal_latex(const FormalExpr& e, int n, std::string_view q_name) { return latex_expr(e, n, q_name); }

nlohmann::json formal_json(const FormalExpr& e, int n) { return expr_json(e, n, nullptr); }

nlohmann::json to_json(const PresentationDoc& doc) {
  std::optional<CyclotomicCtx> ctx;
  if (doc.ell) ctx.emplace(*doc.ell, doc.n);
  const CyclotomicCtx* cp = ctx ? &*ctx : nullptr;
  nlohmann::json j;
  j["algebra"] = family_name(doc.family);
  j["n"] = doc.n;
  j["ell"] = doc.ell ? nlohmann::json(*doc.ell) : nlohmann::json(nullptr);
  nlohmann::json ring;
  if (cp) {
    nlohmann::json phi = nlohmann::json::array();
    for (const auto& c : cyclotomic_phi(*doc.ell)) phi.push_back(bigint_to_json(c));
    ring = {{"base", "Z[eps]"}, {"modulus", phi}, {"note", "eps is a primitive ell-th root of unity; q = eps"}};
  } else {
    ring = {{"base", "Z[v, v^-1]"}, {"q", "v^" + std::to_string(doc.n)}};
  }
  j["ring"] = ring;
  nlohmann::json gens = nlohmann::json::array();
  for (int i = 1; i <= doc.n; ++i)
    for (int k = 1; k <= doc.n; ++k) gens.push_back({"u", i, k});
  if (doc.has_inverse_generator()) gens.push_back({"t"});
  j["generators"] = gens;
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : doc.relations) {
    rels.push_back({{"tag", r.tag},
                    {"indices", r.indices},
                    {"terms", expr_json(r.lhs, doc.n, cp)},
                    {"equals", expr_json(r.rhs, doc.n, cp)}});
  }
  j["relations"] = rels;
  return j;
}

PresentationDoc presentation_from_json(const nlohmann::json& j) {
  try {
    PresentationDoc doc;
    doc.family = parse_family(j.at("algebra").get<std::string>());
    doc.n = j.at("n").get<int>();
    require(doc.n >= 1 && doc.n <= kMaxMatrixSize, "matrix size out of range");
    if (j.contains("ell") && !j.at("ell").is_null()) doc.ell = j.at("ell").get<int>();
    for (const auto& r : j.at("relations")) {
      FormalRelation rel;
      rel.tag = r.at("tag").get<std::string>();
      rel.indices = r.at("indices").get<std::vector<int>>();
      for (const auto& t : r.at("terms")) rel.lhs.push_back(term_from(t, doc.n));
      for (const auto& t : r.at("equals")) rel.rhs.push_back(term_from(t, doc.n));
      doc.relations.push_back(std::move(rel));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed presentation: ") + e.what());
  }
}

std::string to_text(const PresentationDoc& doc) {
  const std::string_view var = doc.ell ? "ε" : "q";
  std::ostringstream out;
  out << "algebra " << family_name(doc.family) << ", n = " << doc.n;
  if (doc.ell) out << ", ell = " << *doc.ell << " (q = ε, a primitive root of unity of order " << *doc.ell << ")";
  out << "\ngenerators: u[i,j] for 1 <= i,j <= " << doc.n;
  if (doc.has_inverse_generator()) out << ", t";
  out << "\nrelations (" << doc.relations.size() << "):\n";
  for (const auto& r : doc.relations) {
    out << "[" << r.tag;
    for (std::size_t i = 0; i < r.indices.size(); ++i) out << (i ? "," : " ") << r.indices[i];
    out << "] " << expr_text(r.lhs, doc.n, var) << " = " << expr_text(r.rhs, doc.n, var) << "\n";
  }
  return out.str();
}

std::string to_latex(const PresentationDoc& doc) {
  const std::string_view var = doc.ell ? "\\epsilon" : "q";
  std::ostringstream out;
  out << "% " << family_name(doc.family) << ", n = " << doc.n;
  if (doc.ell) out << ", ell = " << *doc.ell;
  out << "\n\\begin{align*}\n";
  for (std::size_t i = 0; i < doc.relations.size(); ++i) {
    const auto& r = doc.relations[i];
    out << latex_expr(r.lhs, doc.n, var) << " &= " << latex_expr(r.rhs, doc.n, var);
    out << (i + 1 < doc.relations.size() ? " \\\\\n" : "\n");
  }
  out << "\\end{align*}\n";
  return out.str();
}

TermCount count_terms(int n, int ell, int k) {
  require(ell >= 3 && ell % 2 == 1, "ell must be odd and at least 3");
  require(k >= 1 && k <= n, "k must lie in 1..n");
  const CyclotomicCtx ctx(ell, n);
  TermCount tc;
  CompositionStream comps(ell);
  while (auto lambda = comps.next()) {
    if (ctx.is_zero(sigma_q(lambda->parts(), n))) continue;
    tc.enumerated += VSetStream(k, *lambda).cardinality();
  }
  tc.formula = 1 + ((std::uint64_t{1} << (ell - 1)) - 1) * static_cast<std::uint64_t>(k - 1);
  return tc;
}

}  // namespace qre
