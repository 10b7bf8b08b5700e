#include "qre/laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qre/error.hpp"

namespace qre {

LaurentInt::LaurentInt(long c) {
  if (c != 0) terms_.push_back({0, BigInt(c)});
}

LaurentInt LaurentInt::monomial(const BigInt& c, int exp) {
  LaurentInt r;
  if (c != 0) r.terms_.push_back({exp, c});
  return r;
}

LaurentInt LaurentInt::from_terms(std::vector<Term> terms) {
  LaurentInt r;
  r.terms_ = std::move(terms);
  r.normalize();
  return r;
}

void LaurentInt::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool LaurentInt::is_one() const {
  return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coeff == 1;
}

int LaurentInt::min_exp() const {
  if (terms_.empty()) fail(ErrorCode::kInvalidArgument, "min_exp of zero polynomial");
  return terms_.front().exp;
}

int LaurentInt::max_exp() const {
  if (terms_.empty()) fail(ErrorCode::kInvalidArgument, "max_exp of zero polynomial");
  return terms_.back().exp;
}

BigInt LaurentInt::coeff(int exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, int e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp) return it->coeff;
  return 0;
}

bool LaurentInt::in_q(int n) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [n](const Term& t) { return t.exp % n == 0; });
}

LaurentInt LaurentInt::shifted(int exp) const {
  LaurentInt r = *this;
  for (auto& t : r.terms_) t.exp += exp;
  return r;
}

LaurentInt& LaurentInt::operator+=(const LaurentInt& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exp < b->exp)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp < a->exp) {
      out.push_back(*b++);
    } else {
      BigInt c = a->coeff + b->coeff;
      if (c != 0) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentInt& LaurentInt::operator-=(const LaurentInt& other) { return *this += -other; }

LaurentInt LaurentInt::operator-() const {
  LaurentInt r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentInt operator*(const LaurentInt& a, const LaurentInt& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 && a.terms_[0].coeff == 1) return b.shifted(a.terms_[0].exp);
  if (b.terms_.size() == 1 && b.terms_[0].coeff == 1) return a.shifted(b.terms_[0].exp);
  const int lo = a.min_exp() + b.min_exp();
  const long span = static_cast<long>(a.max_exp()) + b.max_exp() - lo + 1;
  LaurentInt r;
  if (span <= 4096) {
    std::vector<BigInt> dense(static_cast<std::size_t>(span));
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) dense[x.exp + y.exp - lo] += x.coeff * y.coeff;
    for (long i = 0; i < span; ++i)
      if (dense[i] != 0) r.terms_.push_back({static_cast<int>(i + lo), std::move(dense[i])});
    return r;
  }
  std::map<int, BigInt> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[x.exp + y.exp] += x.coeff * y.coeff;
  for (auto& [e, c] : acc)
    if (c != 0) r.terms_.push_back({e, std::move(c)});
  return r;
}

LaurentInt& LaurentInt::operator*=(const LaurentInt& other) { return *this = *this * other; }

bool operator==(const LaurentInt& a, const LaurentInt& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::optional<LaurentInt> LaurentInt::divide_exact(const LaurentInt& a, const LaurentInt& b) {
  if (b.is_zero()) fail(ErrorCode::kInvalidArgument, "division by zero polynomial");
  if (a.is_zero()) return LaurentInt();
  // Both shifted to have nonzero constant term; the quotient is then an
  // honest polynomial and long division from the top is exact or fails.
  const int shift = a.min_exp() - b.min_exp();
  const int bdeg = b.max_exp() - b.min_exp();
  std::vector<BigInt> rem(static_cast<std::size_t>(a.max_exp() - a.min_exp() + 1));
  for (const auto& t : a.terms_) rem[t.exp - a.min_exp()] = t.coeff;
  std::vector<BigInt> den(static_cast<std::size_t>(bdeg + 1));
  for (const auto& t : b.terms_) den[t.exp - b.min_exp()] = t.coeff;
  const BigInt& lead = den.back();
  if (static_cast<int>(rem.size()) - 1 < bdeg) return std::nullopt;
  std::vector<Term> quot;
  for (int top = static_cast<int>(rem.size()) - 1; top >= bdeg; --top) {
    if (rem[top] == 0) continue;
    BigInt qc;
    if (!mpz_divisible_p(rem[top].get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    mpz_divexact(qc.get_mpz_t(), rem[top].get_mpz_t(), lead.get_mpz_t());
    const int qexp = top - bdeg;
    for (int i = 0; i <= bdeg; ++i)
      if (den[i] != 0) rem[qexp + i] -= qc * den[i];
    quot.push_back({qexp + shift, std::move(qc)});
  }
  for (const auto& c : rem)
    if (c != 0) return std::nullopt;
  return from_terms(std::move(quot));
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::uint64_t LaurentInt::eval_mod(std::uint64_t p, std::uint64_t v0) const {
  const std::uint64_t inv = powmod(v0, p - 2, p);
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    BigInt c = t.coeff % BigInt(static_cast<unsigned long>(p));
    if (c < 0) c += static_cast<unsigned long>(p);
    const std::uint64_t cm = c.get_ui();
    const std::uint64_t pw =
        t.exp >= 0 ? powmod(v0, static_cast<std::uint64_t>(t.exp), p)
                   : powmod(inv, static_cast<std::uint64_t>(-static_cast<long>(t.exp)), p);
    acc = (acc + mulmod(cm, pw, p)) % p;
  }
  return acc;
}

std::string LaurentInt::to_string(int n, std::string_view q_name, std::string_view v_name) const {
  if (terms_.empty()) return "0";
  const bool use_q = in_q(n);
  const std::string_view var = use_q ? q_name : v_name;
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const int e = use_q ? it->exp / n : it->exp;
    BigInt mag = abs(it->coeff);
    const bool neg = it->coeff < 0;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str();
    out << var;
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

nlohmann::json bigint_to_json(const BigInt& c) {
  if (c.fits_slong_p()) return c.get_si();
  return c.get_str();
}

BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) {
    BigInt c;
    if (c.set_str(j.get<std::string>(), 10) != 0) fail(ErrorCode::kParse, "bad integer literal");
    return c;
  }
  fail(ErrorCode::kParse, "expected integer coefficient");
}

nlohmann::json LaurentInt::to_json(int n) const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) terms.push_back({t.exp, bigint_to_json(t.coeff)});
  return {{"var", "v"}, {"n", n}, {"terms", terms}};
}

LaurentInt LaurentInt::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms")) fail(ErrorCode::kParse, "expected Laurent object");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2) fail(ErrorCode::kParse, "expected [exp, coeff] pair");
    terms.push_back({t[0].get<int>(), bigint_from_json(t[1])});
  }
  return from_terms(std::move(terms));
}

}  // namespace qre
