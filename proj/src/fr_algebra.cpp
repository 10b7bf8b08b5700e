#include "qre/fr_algebra.hpp"

#include <algorithm>
#include <charconv>

#include "qre/combinatorics.hpp"
#include "qre/error.hpp"
#include "qre/memo.hpp"

namespace qre {

Element Element::one(int n) { return monomial(n, Word(), 1); }

Element Element::monomial(int n, const Word& w, const LaurentInt& c) {
  Element e(n);
  e.add_term(w, c);
  return e;
}

LaurentInt Element::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? LaurentInt() : it->second;
}

int Element::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void Element::add_term(const Word& w, const LaurentInt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Element::add_scaled(const Element& other, const LaurentInt& c) {
  if (other.n_ != n_) fail(ErrorCode::kContextMismatch, "elements of different matrix sizes");
  if (c.is_zero()) return;
  for (const auto& [w, d] : other.terms_) add_term(w, c.is_one() ? d : c * d);
}

Element& Element::operator+=(const Element& other) {
  add_scaled(other, 1);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  add_scaled(other, -1);
  return *this;
}

Element Element::operator-() const { return scaled(-1); }

Element Element::scaled(const LaurentInt& c) const {
  Element r(n_);
  if (c.is_zero()) return r;
  for (const auto& [w, d] : terms_) r.terms_.emplace(w, c * d);
  return r;
}

std::string word_to_string(const Word& w, int n, std::string_view var) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "·";
    out += std::string(var) + "[" + std::to_string(w[i] / n + 1) + "," + std::to_string(w[i] % n + 1) + "]";
  }
  return out;
}

std::string Element::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string coeff = c.to_string(n_);
    bool negative = false;
    if (c.size() == 1 && coeff[0] == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    const bool unit = coeff == "1";
    if (c.size() > 1) coeff = "(" + coeff + ")";
    if (w.empty()) {
      out += coeff;
    } else {
      if (!unit) out += coeff + "·";
      out += word_to_string(w, n_, var);
    }
  }
  return out;
}

nlohmann::json word_to_json(const Word& w, int n) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({w[i] / n + 1, w[i] % n + 1});
  return out;
}

Word word_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array()) fail(ErrorCode::kParse, "word must be an array of [i,j] pairs");
  Word w;
  for (const auto& g : j) {
    if (!g.is_array() || g.size() != 2) fail(ErrorCode::kParse, "word entries must be [i,j] pairs");
    const int i = g[0].get<int>();
    const int k = g[1].get<int>();
    if (i < 1 || i > n || k < 1 || k > n) fail(ErrorCode::kParse, "generator index out of range");
    w.push_back(static_cast<Letter>((i - 1) * n + (k - 1)));
  }
  return w;
}

nlohmann::json Element::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : terms_) terms.push_back({{"word", word_to_json(w, n_)}, {"coeff", c.to_json(n_)}});
  return {{"n", n_}, {"terms", terms}};
}

Element Element::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms")) fail(ErrorCode::kParse, "expected element object");
  const int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxMatrixSize) fail(ErrorCode::kParse, "matrix size out of range");
  Element e(n);
  FrAlgebra alg(n);
  for (const auto& t : j.at("terms")) {
    const Word w = word_from_json(t.at("word"), n);
    const LaurentInt c = LaurentInt::from_json(t.at("coeff"));
    if (alg.is_normal(w)) {
      e.add_term(w, c);
    } else {
      e += alg.normal_form(w, c);
    }
  }
  return e;
}

namespace {

void skip_spaces(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && s[pos] == ' ') ++pos;
}

int read_int(std::string_view s, std::size_t& pos) {
  skip_spaces(s, pos);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), value);
  if (ec != std::errc()) fail(ErrorCode::kParse, "expected integer in word: " + std::string(s));
  pos = static_cast<std::size_t>(ptr - s.data());
  return value;
}

void expect(std::string_view s, std::size_t& pos, char c) {
  skip_spaces(s, pos);
  if (pos >= s.size() || s[pos] != c)
    fail(ErrorCode::kParse, std::string("expected '") + c + "' in word: " + std::string(s));
  ++pos;
}

}  // namespace

Word parse_word(std::string_view text, int n) {
  std::size_t pos = 0;
  skip_spaces(text, pos);
  Word w;
  if (text.substr(pos) == "1") return w;
  bool need_factor = true;
  while (true) {
    skip_spaces(text, pos);
    if (pos >= text.size()) break;
    if (!need_factor) {
      if (text[pos] == '*') {
        ++pos;
      } else if (text.substr(pos, 2) == "·") {
        pos += 2;
      } else {
        fail(ErrorCode::kParse, "expected separator in word: " + std::string(text));
      }
      need_factor = true;
      continue;
    }
    skip_spaces(text, pos);
    if (pos >= text.size() || (text[pos] != 'x' && text[pos] != 'u'))
      fail(ErrorCode::kParse, "expected generator x[i,j] in word: " + std::string(text));
    ++pos;
    expect(text, pos, '[');
    const int i = read_int(text, pos);
    expect(text, pos, ',');
    const int j = read_int(text, pos);
    expect(text, pos, ']');
    if (i < 1 || i > n || j < 1 || j > n) fail(ErrorCode::kParse, "generator index out of range: " + std::string(text));
    int power = 1;
    skip_spaces(text, pos);
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      power = read_int(text, pos);
      if (power < 0) fail(ErrorCode::kParse, "negative power in word");
    }
    for (int p = 0; p < power; ++p) w.push_back(static_cast<Letter>((i - 1) * n + (j - 1)));
    need_factor = false;
  }
  if (need_factor) fail(ErrorCode::kParse, "empty or dangling word: " + std::string(text));
  return w;
}

void TensorElement::add(const Word& a, const Word& b, const LaurentInt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void TripleTensorElement::add(const std::array<Word, 3>& key, const LaurentInt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

FrAlgebra::FrAlgebra(int n) : n_(n) {
  require(n >= 1 && n <= kMaxMatrixSize, "matrix size must be between 1 and 8");
  q_ = q_power(1, n);
  q_minus_qinv_ = q_power(1, n) - q_power(-1, n);
}

Letter FrAlgebra::letter(int row, int col) const {
  require(row >= 1 && row <= n_ && col >= 1 && col <= n_, "generator index out of range");
  return static_cast<Letter>((row - 1) * n_ + (col - 1));
}

Word FrAlgebra::make_word(const std::vector<std::pair<int, int>>& gens) const {
  Word w;
  for (auto [i, j] : gens) w.push_back(letter(i, j));
  return w;
}

Element FrAlgebra::generator(int row, int col) const {
  Word w;
  w.push_back(letter(row, col));
  return Element::monomial(n_, w);
}

bool FrAlgebra::is_normal(const Word& w) const {
  return std::is_sorted(w.codes.begin(), w.codes.end());
}

std::vector<SwapTerm> FrAlgebra::swap_rule(Letter y, Letter x) const {
  const int a = row(y), b = col(y), c = row(x), d = col(x);
  if (a == c || b == d) return {{q_, x, y}};
  if (b < d) return {{1, x, y}};
  return {{1, x, y}, {q_minus_qinv_, letter(c, b), letter(a, d)}};
}

std::shared_ptr<const Element> FrAlgebra::word_times_letter(const Word& normal, Letter x) const {
  std::string key = normal.codes;
  key.push_back(static_cast<char>(x));
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  Element result(n_);
  if (normal.empty() || normal.back() <= x) {
    result.add_term(Word(key), 1);
  } else {
    const Letter y = normal.back();
    const Word head = normal.prefix(normal.size() - 1);
    for (const auto& t : swap_rule(y, x)) {
      auto partial = word_times_letter(head, t.first);
      for (const auto& [w, c] : partial->terms()) {
        result.add_scaled(*word_times_letter(w, t.second), t.coeff * c);
      }
    }
  }
  auto ptr = std::make_shared<const Element>(std::move(result));
  std::lock_guard lock(mu_);
  make_room(cache_, cache_cap_);
  return cache_.try_emplace(std::move(key), ptr).first->second;
}

Element FrAlgebra::multiply_letter(const Element& a, Letter x) const {
  if (a.n() != n_) fail(ErrorCode::kContextMismatch, "element belongs to a different matrix size");
  Element r(n_);
  for (const auto& [w, c] : a.terms()) r.add_scaled(*word_times_letter(w, x), c);
  return r;
}

Element FrAlgebra::normal_form(const Word& w, const LaurentInt& c) const {
  Element r = Element::monomial(n_, Word(), c);
  for (std::size_t i = 0; i < w.size(); ++i) r = multiply_letter(r, w[i]);
  return r;
}

Element FrAlgebra::multiply(const Element& a, const Element& b) const {
  if (a.n() != n_ || b.n() != n_) fail(ErrorCode::kContextMismatch, "element belongs to a different matrix size");
  Element r(n_);
  for (const auto& [w, c] : b.terms()) {
    Element part = a;
    for (std::size_t i = 0; i < w.size(); ++i) part = multiply_letter(part, w[i]);
    r.add_scaled(part, c);
  }
  return r;
}

Element FrAlgebra::power(Letter x, int exponent) const {
  require(exponent >= 0, "negative power");
  Element r = Element::one(n_);
  for (int i = 0; i < exponent; ++i) r = multiply_letter(r, x);
  return r;
}

namespace {

// Calls f(chain) for every assignment of inner summation indices, where
// chain has (legs + 1) * len entries laid out letter by letter.
template <class F>
void for_each_leg_split(const FrAlgebra& alg, const Word& w, int legs, F&& f) {
  const int n = alg.n();
  const std::size_t m = w.size();
  const std::size_t inner = m * static_cast<std::size_t>(legs - 1);
  std::vector<int> idx(inner, 1);
  std::vector<Word> parts(static_cast<std::size_t>(legs));
  while (true) {
    for (auto& p : parts) p.codes.clear();
    for (std::size_t t = 0; t < m; ++t) {
      int prev = alg.row(w[t]);
      for (int leg = 0; leg < legs; ++leg) {
        const int next = leg + 1 < legs ? idx[t * (legs - 1) + leg] : alg.col(w[t]);
        parts[leg].push_back(alg.letter(prev, next));
        prev = next;
      }
    }
    f(parts);
    std::size_t pos = inner;
    while (pos > 0) {
      --pos;
      if (idx[pos] < n) {
        ++idx[pos];
        break;
      }
      idx[pos] = 1;
      if (pos == 0) return;
    }
    if (inner == 0) return;
  }
}

}  // namespace

TensorElement FrAlgebra::coproduct(const Element& a) const {
  TensorElement out;
  out.n = n_;
  for (const auto& [w, c] : a.terms()) {
    for_each_leg_split(*this, w, 2, [&](const std::vector<Word>& legs) {
      const Element left = normal_form(legs[0]);
      const Element right = normal_form(legs[1]);
      for (const auto& [lw, lc] : left.terms())
        for (const auto& [rw, rc] : right.terms()) out.add(lw, rw, c * lc * rc);
    });
  }
  return out;
}

TripleTensorElement FrAlgebra::coproduct2(const Element& a) const {
  TripleTensorElement out;
  out.n = n_;
  for (const auto& [w, c] : a.terms()) {
    for_each_leg_split(*this, w, 3, [&](const std::vector<Word>& legs) {
      const Element e0 = normal_form(legs[0]);
      const Element e1 = normal_form(legs[1]);
      const Element e2 = normal_form(legs[2]);
      for (const auto& [w0, c0] : e0.terms())
        for (const auto& [w1, c1] : e1.terms())
          for (const auto& [w2, c2] : e2.terms()) out.add({w0, w1, w2}, c * c0 * c1 * c2);
    });
  }
  return out;
}

LaurentInt FrAlgebra::counit(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (row(w[i]) != col(w[i])) return {};
  return 1;
}

LaurentInt FrAlgebra::counit(const Element& a) const {
  LaurentInt r;
  for (const auto& [w, c] : a.terms())
    if (!counit(w).is_zero()) r += c;
  return r;
}

Element FrAlgebra::qdet() const {
  Element r(n_);
  for (const auto& perm : permutations(n_)) {
    const int inv = inversion_count(perm);
    Word w;
    for (int i = 0; i < n_; ++i) w.push_back(letter(i + 1, perm[i]));
    const LaurentInt sign = inv % 2 ? -1 : 1;
    r += normal_form(w, sign * q_power(-inv, n_));
  }
  return r;
}

std::size_t FrAlgebra::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

}  // namespace qre
