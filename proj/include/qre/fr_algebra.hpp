#pragma once

#include <atomic>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qre/laurent.hpp"

namespace qre {

/// Generator x^i_j of an n x n quantum matrix algebra is stored as the code
/// (i-1)*n + (j-1), so comparing codes is comparing generators row-major.
using Letter = std::uint8_t;

constexpr int kMaxMatrixSize = 8;

struct Word {
  std::string codes;

  Word() = default;
  explicit Word(std::string c) : codes(std::move(c)) {}

  std::size_t size() const { return codes.size(); }
  bool empty() const { return codes.empty(); }
  Letter operator[](std::size_t i) const { return static_cast<Letter>(codes[i]); }
  Letter back() const { return static_cast<Letter>(codes.back()); }
  void push_back(Letter x) { codes.push_back(static_cast<char>(x)); }
  Word prefix(std::size_t len) const { return Word(codes.substr(0, len)); }
  Word operator+(const Word& other) const { return Word(codes + other.codes); }

  friend auto operator<=>(const Word&, const Word&) = default;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return std::hash<std::string>{}(w.codes); }
};

/// Linear combination of PBW-normal words with Laurent coefficients.
class Element {
 public:
  using Terms = std::map<Word, LaurentInt>;

  explicit Element(int n = 1) : n_(n) {}
  static Element one(int n);
  static Element monomial(int n, const Word& w, const LaurentInt& c = 1);

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  LaurentInt coeff(const Word& w) const;
  /// Maximal word length, or -1 for zero.
  int degree() const;

  /// Adds c * w; the caller guarantees that w is PBW-normal.
  void add_term(const Word& w, const LaurentInt& c);
  void add_scaled(const Element& other, const LaurentInt& c);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element operator-() const;
  Element scaled(const LaurentInt& c) const;

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend bool operator==(const Element& a, const Element& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// e.g. "x[1,1]·x[2,2] - q^-1·x[1,2]·x[2,1]".
  std::string to_string(std::string_view var = "x") const;
  nlohmann::json to_json() const;
  static Element from_json(const nlohmann::json& j);

 private:
  int n_;
  Terms terms_;
};

std::string word_to_string(const Word& w, int n, std::string_view var = "x");
nlohmann::json word_to_json(const Word& w, int n);
Word word_from_json(const nlohmann::json& j, int n);
/// Parses "x[1,2]·x[2,1]", "x[1,1]^3*x[1,2]" or "1" (the empty word).
Word parse_word(std::string_view text, int n);

struct TensorElement {
  int n = 1;
  std::map<std::pair<Word, Word>, LaurentInt> terms;
  void add(const Word& a, const Word& b, const LaurentInt& c);
  friend bool operator==(const TensorElement&, const TensorElement&) = default;
};

struct TripleTensorElement {
  int n = 1;
  std::map<std::array<Word, 3>, LaurentInt> terms;
  void add(const std::array<Word, 3>& key, const LaurentInt& c);
  friend bool operator==(const TripleTensorElement&, const TripleTensorElement&) = default;
};

/// A single adjacent-swap outcome: coeff * first * second.
struct SwapTerm {
  LaurentInt coeff;
  Letter first;
  Letter second;
};

/// The quantum matrix bialgebra on generators x^i_j, 1 <= i,j <= n. Products
/// are kept in the PBW basis of row-major sorted words.
class FrAlgebra {
 public:
  explicit FrAlgebra(int n);

  int n() const { return n_; }
  int num_letters() const { return n_ * n_; }
  Letter letter(int row, int col) const;
  int row(Letter x) const { return x / n_ + 1; }
  int col(Letter x) const { return x % n_ + 1; }
  Word make_word(const std::vector<std::pair<int, int>>& gens) const;

  bool is_normal(const Word& w) const;
  /// Rewrite of the unsorted adjacent pair (y, x), y > x.
  std::vector<SwapTerm> swap_rule(Letter y, Letter x) const;

  Element normal_form(const Word& w, const LaurentInt& c = 1) const;
  Element multiply(const Element& a, const Element& b) const;
  Element multiply_letter(const Element& a, Letter x) const;
  Element generator(int row, int col) const;
  Element power(Letter x, int exponent) const;

  TensorElement coproduct(const Element& a) const;
  TripleTensorElement coproduct2(const Element& a) const;
  LaurentInt counit(const Word& w) const;
  LaurentInt counit(const Element& a) const;

  Element qdet() const;

  std::size_t cache_size() const;
  void set_cache_cap(std::size_t cap) const { cache_cap_ = cap; }

 private:
  std::shared_ptr<const Element> word_times_letter(const Word& normal, Letter x) const;

  int n_;
  LaurentInt q_;
  LaurentInt q_minus_qinv_;
  mutable std::mutex mu_;
  mutable std::atomic<std::size_t> cache_cap_{0};
  mutable std::unordered_map<std::string, std::shared_ptr<const Element>> cache_;
};

}  // namespace qre
