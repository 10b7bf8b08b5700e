#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qre/braided.hpp"
#include "qre/cyclotomic.hpp"

namespace qre {

enum class Family { kMn, kGLn, kSLn, kSmallGLn, kSmallSLn };

const char* family_name(Family f);
Family parse_family(std::string_view text);
bool is_small(Family f);

/// A presentation by generators and relations. Relations are formal: words
/// in the u-generators (and t for the GL family) that are never normalized.
/// For the small families every coefficient is kept both in its generic
/// q-form and reduced modulo Phi_ell.
struct PresentationDoc {
  Family family = Family::kMn;
  int n = 1;
  std::optional<int> ell;
  std::vector<FormalRelation> relations;

  bool has_inverse_generator() const { return family == Family::kGLn; }
  std::size_t count_tag(std::string_view prefix) const;
};

PresentationDoc present(Family family, int n, std::optional<int> ell = std::nullopt);

/// Relation counts the family is documented to have.
std::size_t expected_relation_count(Family family, int n);

LaurentInt specialize(const LaurentInt& f, const CyclotomicCtx& ctx);
Element specialize(const Element& e, const CyclotomicCtx& ctx);
/// Reduces every coefficient; merges terms whose reduced coefficients cancel.
FormalExpr specialize(const FormalExpr& e, const CyclotomicCtx& ctx);

/// Renders a coefficient with q replaced by the given symbol, keeping
/// factored forms like (1 - q^-2)(1 - q^-4) when available.
std::string coefficient_text(const FormalTerm& t, int n, std::string_view q_name);

/// Renderings of a single formal expression in the document formats.
std::string formal_text(const FormalExpr& e, int n, std::string_view q_name = "q");
std::string formal_latex(const FormalExpr& e, int n, std::string_view q_name = "q");
nlohmann::json formal_json(const FormalExpr& e, int n);

nlohmann::json to_json(const PresentationDoc& doc);
PresentationDoc presentation_from_json(const nlohmann::json& j);
std::string to_text(const PresentationDoc& doc);
std::string to_latex(const PresentationDoc& doc);

struct TermCount {
  std::uint64_t enumerated = 0;
  std::uint64_t formula = 0;
  bool agrees() const { return enumerated == formula; }
};

/// Number of monomials with nonzero coefficient in the unipotent relation for
/// index k, by enumeration, next to the value 1 + (2^(ell-1) - 1)(k-1).
TermCount count_terms(int n, int ell, int k);

}  // namespace qre
