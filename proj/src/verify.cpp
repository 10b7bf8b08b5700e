#include "qre/verify.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "qre/combinatorics.hpp"
#include "qre/context.hpp"
#include "qre/cyclotomic.hpp"
#include "qre/error.hpp"
#include "qre/presentations.hpp"
#include "qre/qscalar.hpp"

namespace qre {

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  std::size_t f = 0;
  for (const auto& c : checks)
    if (!c.passed) ++f;
  return f;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["params"] = {{"n", params.n},         {"ell", params.ell},         {"seed", params.seed},
                 {"budget", params.budget}, {"long_running", params.long_running}};
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e = {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(e);
  }
  j["checks"] = cs;
  j["passed"] = passed();
  j["failures"] = failures();
  if (params.timing) j["wall_seconds"] = wall_seconds;
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite << " (seed " << params.seed << ")\n";
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " :: " << c.detail;
    out << "\n";
  }
  out << (checks.size() - failures()) << "/" << checks.size() << " checks passed";
  if (params.timing) out << " in " << wall_seconds << " s";
  out << "\n";
  return out.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ring",  "fr",      "rform",    "braided",
                                                 "twist", "theorem", "examples", "counts"};
  return names;
}

std::uint64_t expansion_cost(int n, int degree) {
  std::uint64_t c = 1;
  for (int i = 0; i < 2 * degree; ++i) {
    if (c > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(n)) return ~std::uint64_t{0};
    c *= static_cast<std::uint64_t>(n);
  }
  return c;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  std::string name;
  std::function<CheckResult()> run;
};

CheckResult ok(std::string detail = {}) { return {"", true, std::move(detail)}; }
CheckResult bad(std::string detail) { return {"", false, std::move(detail)}; }
CheckResult verdict(bool passed, std::string detail = {}) { return {"", passed, passed ? std::string() : std::move(detail)}; }

class ContextPool {
 public:
  const Context& get(int n) {
    std::lock_guard lock(mu_);
    auto& slot = ctx_[n];
    if (!slot) slot = std::make_unique<Context>(n);
    return *slot;
  }

 private:
  std::mutex mu_;
  std::map<int, std::unique_ptr<Context>> ctx_;
};

std::mt19937_64 rng_for(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = seed;
  for (char c : tag) h = h * 1099511628211ULL ^ static_cast<unsigned char>(c);
  return std::mt19937_64(h);
}

Word random_word(const FrAlgebra& alg, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, alg.num_letters() - 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(static_cast<Letter>(pick(rng)));
  return w;
}

LaurentInt random_coeff(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> e(-2, 2);
  LaurentInt r = LaurentInt::monomial(c(rng), n * e(rng));
  if (r.is_zero()) r = 1;
  return r;
}

Element random_element(const FrAlgebra& alg, int max_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  Element e(alg.n());
  for (int t = 0; t < 3; ++t) e += alg.normal_form(random_word(alg, deg(rng), rng), random_coeff(alg.n(), rng));
  return e;
}

// Reduces by always rewriting the rightmost out-of-order adjacent pair.
Element rightmost_normal_form(const FrAlgebra& alg, const Word& w) {
  std::map<Word, LaurentInt> pending{{w, LaurentInt(1)}};
  Element out(alg.n());
  while (!pending.empty()) {
    auto node = pending.extract(std::prev(pending.end()));
    const Word cur = node.key();
    const LaurentInt c = node.mapped();
    if (c.is_zero()) continue;
    std::size_t pos = cur.size();
    for (std::size_t i = cur.size(); i >= 2; --i) {
      if (cur[i - 2] > cur[i - 1]) {
        pos = i - 2;
        break;
      }
    }
    if (pos == cur.size()) {
      out.add_term(cur, c);
      continue;
    }
    for (const auto& st : alg.swap_rule(cur[pos], cur[pos + 1])) {
      Word next(cur.codes.substr(0, pos));
      next.push_back(st.first);
      next.push_back(st.second);
      next.codes += cur.codes.substr(pos + 2);
      pending[next] += c * st.coeff;
    }
  }
  return out;
}

// All ways of writing the iterated coproduct of a word with the given number of legs.
std::vector<std::vector<Word>> leg_splits(const FrAlgebra& alg, const Word& w, int legs) {
  std::vector<std::vector<Word>> out;
  const int n = alg.n();
  const std::size_t m = w.size();
  const std::size_t inner = m * static_cast<std::size_t>(legs - 1);
  std::vector<int> idx(inner, 1);
  while (true) {
    std::vector<Word> parts(static_cast<std::size_t>(legs));
    for (std::size_t t = 0; t < m; ++t) {
      int prev = alg.row(w[t]);
      for (int leg = 0; leg < legs; ++leg) {
        const int next = leg + 1 < legs ? idx[t * (legs - 1) + leg] : alg.col(w[t]);
        parts[leg].push_back(alg.letter(prev, next));
        prev = next;
      }
    }
    out.push_back(std::move(parts));
    std::size_t pos = inner;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (idx[pos] < n) {
        ++idx[pos];
        done = false;
        break;
      }
      idx[pos] = 1;
    }
    if (done) return out;
  }
}

Word single(Letter x) {
  Word w;
  w.push_back(x);
  return w;
}

// Fully expanded pairing: split the second slot across the letters of the
// first, then split each generator across the letters of its partner.
LaurentInt brute_pairing(const FrAlgebra& alg, const RForm& rf, RVariant v, const Word& a, const Word& b) {
  if (a.empty()) return alg.counit(b);
  if (b.empty()) return alg.counit(a);
  const std::size_t m = a.size();
  const bool reverse_first = v != RVariant::kR;
  const bool reverse_second = v == RVariant::kR;
  LaurentInt total;
  for (const auto& bl : leg_splits(alg, b, static_cast<int>(m))) {
    LaurentInt prod = 1;
    for (std::size_t i = 0; i < m && !prod.is_zero(); ++i) {
      const Word& part = bl[reverse_first ? m - 1 - i : i];
      const std::size_t p = part.size();
      LaurentInt inner;
      for (const auto& al : leg_splits(alg, single(a[i]), static_cast<int>(p))) {
        LaurentInt f = 1;
        for (std::size_t j = 0; j < p && !f.is_zero(); ++j)
          f *= rf.entry(v, al[j][0], part[reverse_second ? p - 1 - j : j]);
        inner += f;
      }
      prod *= inner;
    }
    total += prod;
  }
  return total;
}

std::vector<Word> sample_words(const FrAlgebra& alg, int degree, std::size_t count, std::mt19937_64& rng) {
  auto all = normal_words(alg, degree);
  if (all.size() <= count) return all;
  std::vector<Word> out;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[pick(rng)]);
  return out;
}

std::vector<Word> generator_words(const FrAlgebra& alg) { return normal_words(alg, 1); }

std::string idx_string(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s;
}

std::string tag_n(std::string_view base, int n) { return std::string(base) + "/n=" + std::to_string(n); }

// ---------------------------------------------------------------- ring

void ring_checks(const SuiteParams& p, std::vector<Check>& out) {
  out.push_back({"ring/laurent-axioms", [p] {
                   auto rng = rng_for(p.seed, "laurent");
                   for (int t = 0; t < 200; ++t) {
                     LaurentInt a, b, c;
                     for (int k = 0; k < 4; ++k) {
                       a += random_coeff(1, rng).shifted(k);
                       b += random_coeff(1, rng).shifted(-k);
                       c += random_coeff(1, rng).shifted(2 * k - 3);
                     }
                     if (a * (b + c) != a * b + a * c) return bad("distributivity");
                     if ((a * b) * c != a * (b * c)) return bad("associativity");
                     if (a * b != b * a) return bad("commutativity");
                     if (a - a != LaurentInt()) return bad("additive inverse");
                   }
                   if (LaurentInt::v_power(1) * LaurentInt::v_power(-1) != LaurentInt(1)) return bad("v is not a unit");
                   return ok();
                 }});
  out.push_back({"ring/q-integers", [] {
                   for (int n = 1; n <= 3; ++n)
                     for (int k = 0; k <= 12; ++k)
                       if (q_int(k, n) * (q_power(1, n) - q_power(-1, n)) != q_power(k, n) - q_power(-k, n))
                         return bad("k=" + std::to_string(k));
                   return ok();
                 }});
  out.push_back({"ring/sigma-recursion-and-quotient", [] {
                   for (int N = 1; N <= 8; ++N)
                     for (const auto& lam : compositions(N)) {
                       const LaurentInt s = sigma_q(lam.parts(), 1);
                       LaurentInt num = 1, den = 1;
                       for (int j = 1; j <= N - 1; ++j) num *= one_minus_q_power(-2 * (N - j), 1);
                       int tail = 0;
                       for (int k = 1; k <= lam.length() - 1; ++k) {
                         tail += lam.part_from_end(k);
                         den *= one_minus_q_power(-2 * (N - tail), 1);
                       }
                       if (s * den != num) return bad("quotient form at " + lam.to_string());
                       if (lam.length() > 1) {
                         LaurentInt head = 1;
                         for (int j = 1; j <= lam.last_part() - 1; ++j) head *= one_minus_q_power(-2 * (N - j), 1);
                         if (s != head * sigma_q(lam.truncate().parts(), 1)) return bad("recursion at " + lam.to_string());
                       }
                     }
                   return ok();
                 }});
  out.push_back({"ring/sigma-example", [] {
                   const LaurentInt expect =
                       one_minus_q_power(-2, 1) * one_minus_q_power(-4, 1) * one_minus_q_power(-10, 1);
                   return verdict(sigma_q({3, 1, 2}, 1) == expect, "sigma(3,1,2) differs");
                 }});
  out.push_back({"ring/cyclotomic", [p] {
                   const std::vector<std::vector<long>> phis = {{-1, 1}, {1, 1, 1}, {1, 1, 1, 1, 1}};
                   const int ells[] = {1, 3, 5};
                   for (int i = 0; i < 3; ++i) {
                     auto got = cyclotomic_phi(ells[i]);
                     if (got.size() != phis[i].size()) return bad("degree of Phi_" + std::to_string(ells[i]));
                     for (std::size_t k = 0; k < got.size(); ++k)
                       if (got[k] != phis[i][k]) return bad("coefficients of Phi_" + std::to_string(ells[i]));
                   }
                   auto rng = rng_for(p.seed, "cyclotomic");
                   for (int ell : {3, 5, 7}) {
                     for (int n = 1; n <= 3; ++n) {
                       const CyclotomicCtx ctx(ell, n);
                       if (ctx.is_zero(LaurentInt(1))) return bad("1 reduced to zero");
                       if (!ctx.is_zero(q_power(ell, n) - 1)) return bad("q^ell - 1 not zero");
                       if (ctx.reduce(q_power(-ell * (ell - 1) / 2, n)) != LaurentInt(1))
                         return bad("q^(-ell(ell-1)/2) is not 1");
                       for (int t = 0; t < 10; ++t) {
                         LaurentInt g;
                         for (int k = -3; k <= 3; ++k) g += random_coeff(n, rng).shifted(k);
                         if (!ctx.is_zero(ctx.phi() * g)) return bad("multiple of Phi not zero");
                       }
                       if (ctx.is_zero(q_power(1, n) - 1)) return bad("q - 1 reduced to zero");
                     }
                   }
                   return ok();
                 }});
}

// ---------------------------------------------------------------- fr

void fr_checks(const SuiteParams& p, ContextPool& pool, const std::vector<int>& ns, std::vector<Check>& out) {
  for (int n : ns) {
    const bool small = n <= 3;
    if (small) {
      out.push_back({tag_n("fr/confluence", n), [&pool, n, p] {
                       const auto& alg = pool.get(n).algebra();
                       auto rng = rng_for(p.seed, tag_n("confluence", n));
                       std::uniform_int_distribution<int> len(0, 6);
                       for (int t = 0; t < 60; ++t) {
                         const Word w = random_word(alg, len(rng), rng);
                         const Element a = alg.normal_form(w);
                         if (!(a == rightmost_normal_form(alg, w))) return bad("strategies disagree on a word");
                         if (!(alg.multiply(a, Element::one(n)) == a)) return bad("normal form not idempotent");
                       }
                       return ok();
                     }});
      out.push_back({tag_n("fr/associativity", n), [&pool, n, p] {
                       const auto& alg = pool.get(n).algebra();
                       auto rng = rng_for(p.seed, tag_n("assoc", n));
                       for (int t = 0; t < 10; ++t) {
                         const Element a = random_element(alg, 3, rng), b = random_element(alg, 3, rng),
                                       c = random_element(alg, 3, rng);
                         if (!(alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c))))
                           return bad("(ab)c != a(bc)");
                       }
                       return ok();
                     }});
      out.push_back({tag_n("fr/coalgebra", n), [&pool, n, p] {
                       const auto& alg = pool.get(n).algebra();
                       auto rng = rng_for(p.seed, tag_n("coalg", n));
                       for (int t = 0; t < 6; ++t) {
                         const Element a = random_element(alg, 3, rng);
                         const Element b = random_element(alg, 2, rng);
                         const TensorElement da = alg.coproduct(a);
                         TripleTensorElement left, right;
                         left.n = right.n = n;
                         Element counit_left(n), counit_right(n);
                         for (const auto& [key, c] : da.terms) {
                           for (const auto& [k2, c2] : alg.coproduct(Element::monomial(n, key.first)).terms)
                             left.add({k2.first, k2.second, key.second}, c * c2);
                           for (const auto& [k2, c2] : alg.coproduct(Element::monomial(n, key.second)).terms)
                             right.add({key.first, k2.first, k2.second}, c * c2);
                           counit_left.add_term(key.second, c * alg.counit(key.first));
                           counit_right.add_term(key.first, c * alg.counit(key.second));
                         }
                         if (!(left == right)) return bad("coassociativity");
                         if (!(left == alg.coproduct2(a))) return bad("double coproduct");
                         if (!(counit_left == a) || !(counit_right == a)) return bad("counit law");
                         TensorElement prod;
                         prod.n = n;
                         const TensorElement db = alg.coproduct(b);
                         for (const auto& [ka, ca] : da.terms)
                           for (const auto& [kb, cb] : db.terms) {
                             const Element l = alg.multiply(Element::monomial(n, ka.first), Element::monomial(n, kb.first));
                             const Element r = alg.multiply(Element::monomial(n, ka.second), Element::monomial(n, kb.second));
                             for (const auto& [lw, lc] : l.terms())
                               for (const auto& [rw, rc] : r.terms()) prod.add(lw, rw, ca * cb * lc * rc);
                           }
                         if (!(prod == alg.coproduct(alg.multiply(a, b)))) return bad("coproduct not multiplicative");
                       }
                       return ok();
                     }});
      out.push_back({tag_n("fr/qdet-grouplike", n), [&pool, n] {
                       const auto& alg = pool.get(n).algebra();
                       const Element d = alg.qdet();
                       TensorElement dd;
                       dd.n = n;
                       for (const auto& [w1, c1] : d.terms())
                         for (const auto& [w2, c2] : d.terms()) dd.add(w1, w2, c1 * c2);
                       if (!(alg.coproduct(d) == dd)) return bad("coproduct of qdet");
                       return verdict(alg.counit(d) == LaurentInt(1), "counit of qdet");
                     }});
    }
    out.push_back({tag_n("fr/qdet-central", n), [&pool, n] {
                     const auto& alg = pool.get(n).algebra();
                     const Element d = alg.qdet();
                     for (int i = 1; i <= n; ++i)
                       for (int j = 1; j <= n; ++j) {
                         const Element x = alg.generator(i, j);
                         if (!(alg.multiply(d, x) == alg.multiply(x, d)))
                           return bad("fails against x[" + std::to_string(i) + "," + std::to_string(j) + "]");
                       }
                     return ok();
                   }});
  }
}

// ---------------------------------------------------------------- rform

template <class F>
CheckResult over_pairs(const FrAlgebra& alg, std::uint64_t seed, const std::string& tag, F&& f) {
  auto gens = generator_words(alg);
  for (const auto& a : gens)
    for (const auto& b : gens)
      if (auto r = f(a, b); !r.passed) return r;
  auto rng = rng_for(seed, tag);
  auto left = sample_words(alg, 2, 12, rng);
  auto right = sample_words(alg, 2, 12, rng);
  for (std::size_t i = 0; i < left.size(); ++i)
    if (auto r = f(left[i], right[i]); !r.passed) return r;
  return ok();
}

void rform_checks(const SuiteParams& p, ContextPool& pool, const std::vector<int>& ns, std::vector<Check>& out) {
  for (int n : ns) {
    out.push_back({tag_n("rform/tilde-table", n), [&pool, n] {
                     const auto& rf = pool.get(n).rform();
                     for (int i = 1; i <= n; ++i)
                       for (int j = 1; j <= n; ++j)
                         for (int k = 1; k <= n; ++k)
                           for (int l = 1; l <= n; ++l) {
                             LaurentInt s;
                             for (int m = 1; m <= n; ++m)
                               for (int q = 1; q <= n; ++q)
                                 s += rf.entry(RVariant::kTilde, i, m, q, l) * rf.entry(RVariant::kR, m, j, k, q);
                             if (s != LaurentInt((i == j && k == l) ? 1 : 0)) return bad("generator identity");
                           }
                     return ok();
                   }});
    out.push_back({tag_n("rform/convolution-inverse", n), [&pool, n, p] {
                     const auto& ctx = pool.get(n);
                     const auto& alg = ctx.algebra();
                     const auto& rf = ctx.rform();
                     return over_pairs(alg, p.seed, tag_n("conv", n), [&](const Word& a, const Word& b) {
                       const LaurentInt target = alg.counit(a) * alg.counit(b);
                       LaurentInt s1, s2, s3;
                       const auto as = leg_splits(alg, a, 2);
                       const auto bs = leg_splits(alg, b, 2);
                       for (const auto& al : as)
                         for (const auto& bl : bs) {
                           s1 += rf.eval(RVariant::kInverse, al[0], bl[0]) * rf.eval(RVariant::kR, al[1], bl[1]);
                           s2 += rf.eval(RVariant::kR, al[0], bl[0]) * rf.eval(RVariant::kInverse, al[1], bl[1]);
                           s3 += rf.eval(RVariant::kTilde, al[0], bl[1]) * rf.eval(RVariant::kR, al[1], bl[0]);
                         }
                       if (s1 != target) return bad("R^-1 * R on " + word_to_string(a, n) + " | " + word_to_string(b, n));
                       if (s2 != target) return bad("R * R^-1 on " + word_to_string(a, n) + " | " + word_to_string(b, n));
                       if (s3 != target) return bad("R~ identity on " + word_to_string(a, n) + " | " + word_to_string(b, n));
                       return ok();
                     });
                   }});
    out.push_back({tag_n("rform/commutation", n), [&pool, n, p] {
                     const auto& ctx = pool.get(n);
                     const auto& alg = ctx.algebra();
                     const auto& rf = ctx.rform();
                     return over_pairs(alg, p.seed, tag_n("comm", n), [&](const Word& a, const Word& b) {
                       Element lhs(n), rhs(n);
                       const auto as = leg_splits(alg, a, 2);
                       const auto bs = leg_splits(alg, b, 2);
                       for (const auto& al : as)
                         for (const auto& bl : bs) {
                           const LaurentInt f = rf.eval(RVariant::kR, al[0], bl[0]);
                           if (!f.is_zero()) lhs += alg.normal_form(al[1] + bl[1], f);
                           const LaurentInt g = rf.eval(RVariant::kR, al[1], bl[1]);
                           if (!g.is_zero()) rhs += alg.normal_form(bl[0] + al[0], g);
                         }
                       return verdict(lhs == rhs, "on " + word_to_string(a, n) + " | " + word_to_string(b, n));
                     });
                   }});
    out.push_back({tag_n("rform/pairing-expansion", n), [&pool, n, p] {
                     const auto& ctx = pool.get(n);
                     const auto& alg = ctx.algebra();
                     const auto& rf = ctx.rform();
                     auto rng = rng_for(p.seed, tag_n("expand", n));
                     std::uniform_int_distribution<int> len(1, 3);
                     for (int t = 0; t < 25; ++t) {
                       const Word a = random_word(alg, len(rng), rng);
                       const Word b = random_word(alg, len(rng), rng);
                       for (auto v : {RVariant::kR, RVariant::kInverse, RVariant::kTilde})
                         if (rf.eval(v, a, b) != brute_pairing(alg, rf, v, a, b))
                           return bad(std::string(variant_name(v)) + " on " + word_to_string(a, n) + " | " +
                                      word_to_string(b, n));
                     }
                     return ok();
                   }});
  }
}

// ---------------------------------------------------------------- braided

void braided_checks(const SuiteParams& p, ContextPool& pool, const std::vector<int>& ns, std::vector<Check>& out) {
  for (int n : ns) {
    for (int fam = 1; fam <= 4; ++fam) {
      out.push_back({tag_n("braided/relations-" + std::to_string(fam), n), [&pool, n, fam] {
                       const auto& br = pool.get(n).braided();
                       std::size_t count = 0;
                       for (const auto& idx : quadratic_indices(n, fam)) {
                         ++count;
                         if (!br.residual(quadratic_relation(n, fam, idx)).is_zero())
                           return bad("nonzero residual at (" + idx_string(idx) + ")");
                       }
                       return ok(std::to_string(count) + " tuples");
                     }});
    }
    if (n > 3) continue;
    out.push_back({tag_n("braided/associativity", n), [&pool, n] {
                     const auto& ctx = pool.get(n);
                     const auto& br = ctx.braided();
                     const auto gens = generator_words(ctx.algebra());
                     for (const auto& a : gens)
                       for (const auto& b : gens)
                         for (const auto& c : gens) {
                           const BraidedElement x(Element::monomial(n, a)), y(Element::monomial(n, b)),
                               z(Element::monomial(n, c));
                           const BraidedElement xy = br.multiply(x, y);
                           if (!(br.multiply(xy, z) == br.multiply_general(x, br.multiply_general(y, z))))
                             return bad("on a generator triple");
                         }
                     return ok();
                   }});
    out.push_back({tag_n("braided/unit-and-fast-path", n), [&pool, n, p] {
                     const auto& ctx = pool.get(n);
                     const auto& br = ctx.braided();
                     auto rng = rng_for(p.seed, tag_n("fast", n));
                     for (int t = 0; t < 8; ++t) {
                       const BraidedElement a(random_element(ctx.algebra(), 2, rng));
                       if (!(br.multiply(br.unit(), a) == a) || !(br.multiply(a, br.unit()) == a)) return bad("unit");
                       for (int x = 0; x < ctx.algebra().num_letters(); ++x) {
                         const BraidedElement g(Element::monomial(n, single(static_cast<Letter>(x))));
                         if (!(br.multiply(a, g) == br.multiply_general(a, g))) return bad("fast path");
                       }
                     }
                     return ok();
                   }});
    out.push_back({tag_n("braided/det-central", n), [&pool, n] {
                     const auto& ctx = pool.get(n);
                     const auto& br = ctx.braided();
                     const BraidedElement d = br.det();
                     for (int i = 1; i <= n; ++i)
                       for (int j = 1; j <= n; ++j) {
                         const BraidedElement g = br.generator(i, j);
                         if (!(br.multiply(d, g) == br.multiply(g, d))) return bad("against a generator");
                       }
                     return ok();
                   }});
    out.push_back({tag_n("braided/recovered-product", n), [&pool, n, p] {
                     const auto& ctx = pool.get(n);
                     const auto& alg = ctx.algebra();
                     auto rng = rng_for(p.seed, tag_n("recover", n));
                     const int left_degree = n <= 2 ? 2 : 1;
                     for (int t = 0; t < 6; ++t) {
                       const Element a = random_element(alg, left_degree, rng);
                       const Element b = random_element(alg, 2, rng);
                       if (!(ctx.braided().recovered_product(a, b) == alg.multiply(a, b))) return bad("product not recovered");
                     }
                     return ok();
                   }});
  }
}

// ---------------------------------------------------------------- twist

void twist_checks(const SuiteParams& p, ContextPool& pool, const std::vector<int>& ns, std::vector<Check>& out) {
  for (int n : ns) {
    if (n <= 3) {
      out.push_back({tag_n("twist/quadratic", n), [&pool, n] {
                       const auto& ctx = pool.get(n);
                       const auto& alg = ctx.algebra();
                       for (int i = 1; i <= n; ++i)
                         for (int j = 1; j <= n; ++j)
                           for (int k = 1; k <= n; ++k)
                             for (int l = 1; l <= n; ++l) {
                               const Element w = alg.normal_form(alg.make_word({{i, j}, {k, l}}));
                               const BraidedElement expect = ctx.braided().evaluate(twist_quadratic_expr(n, i, j, k, l));
                               if (!(ctx.twister().twist(w) == expect))
                                 return bad("at (" + idx_string({i, j, k, l}) + ")");
                             }
                       return ok();
                     }});
      out.push_back({tag_n("twist/well-defined", n), [&pool, n, p] {
                       const auto& ctx = pool.get(n);
                       const auto& alg = ctx.algebra();
                       auto rng = rng_for(p.seed, tag_n("welldef", n));
                       for (int t = 0; t < 20; ++t) {
                         const Word w = random_word(alg, t < 10 ? 2 : 3, rng);
                         if (!(ctx.twister().twist_unnormalized(w) == ctx.twister().twist(alg.normal_form(w))))
                           return bad("on " + word_to_string(w, n));
                       }
                       return ok();
                     }});
      out.push_back({tag_n("twist/offdiagonal-powers", n), [&pool, n] {
                       const auto& ctx = pool.get(n);
                       const auto& alg = ctx.algebra();
                       for (int k = 1; k <= n; ++k)
                         for (int l = 1; l <= n; ++l) {
                           if (k == l) continue;
                           for (int N = 0; N <= 6; ++N) {
                             auto [s, e] = ctx.twister().offdiag_power(k, l, N);
                             if (!(ctx.twister().twist(alg.power(alg.letter(k, l), N)) == e.scaled(s)))
                               return bad("at (" + idx_string({k, l, N}) + ")");
                           }
                         }
                       return ok();
                     }});
      out.push_back({tag_n("twist/mixed-powers", n), [&pool, n] {
                       const auto& ctx = pool.get(n);
                       const auto& alg = ctx.algebra();
                       const auto& tw = ctx.twister();
                       for (int k = 1; k <= n; ++k)
                         for (int l = 1; l <= n; ++l)
                           for (int N = 1; N <= 4; ++N) {
                             const Element w = alg.multiply_letter(alg.power(alg.letter(k, k), N), alg.letter(k, l));
                             const BraidedElement direct = tw.twist(w);
                             if (!(direct == tw.mixed_closed(k, l, N))) return bad("closed sum at (" + idx_string({k, l, N}) + ")");
                             if (!(direct == tw.mixed_recursion(k, l, N))) return bad("recursion at (" + idx_string({k, l, N}) + ")");
                           }
                       return ok();
                     }});
      out.push_back({tag_n("twist/diagonal-powers", n), [&pool, n] {
                       const auto& ctx = pool.get(n);
                       const auto& alg = ctx.algebra();
                       const int top = n == 2 ? 7 : 5;
                       for (int k = 1; k <= n; ++k)
                         for (int N = 2; N <= top; ++N)
                           if (!(ctx.twister().twist(alg.power(alg.letter(k, k), N)) == ctx.twister().diag_power_closed(k, N)))
                             return bad("at k=" + std::to_string(k) + ", N=" + std::to_string(N));
                       return ok();
                     }});
      out.push_back({tag_n("twist/injective", n), [&pool, n] {
                       const auto& tw = pool.get(n).twister();
                       const int top = n <= 2 ? 4 : 3;
                       constexpr std::uint64_t kPrime = 2147483647;
                       for (int d = 1; d <= top; ++d)
                         if (tw.degree_determinant_mod(d, kPrime, 3) == 0)
                           return bad("singular in degree " + std::to_string(d));
                       return ok("degrees 1.." + std::to_string(top));
                     }});
    }
    if (n <= 3 || p.long_running) {
      out.push_back({tag_n("twist/determinant", n), [&pool, n] {
                       const auto& ctx = pool.get(n);
                       return verdict(ctx.twister().twist(ctx.algebra().qdet()) == ctx.braided().det(),
                                      "twisted qdet differs from the braided determinant");
                     }});
    }
  }
}

// ---------------------------------------------------------------- theorem

void theorem_checks(ContextPool& pool, const std::vector<std::pair<int, int>>& cells, std::vector<Check>& out) {
  for (auto [n, ell] : cells) {
    const std::string cell = "theorem/n=" + std::to_string(n) + ",ell=" + std::to_string(ell);
    out.push_back({cell + "/unipotent", [&pool, n, ell] {
                     const auto& ctx = pool.get(n);
                     const CyclotomicCtx cyc(ell, n);
                     const auto doc = present(Family::kSmallGLn, n, ell);
                     for (const auto& rel : doc.relations) {
                       if (rel.tag != "unipotent") continue;
                       const int k = rel.indices.at(0);
                       const Element x = ctx.algebra().power(ctx.algebra().letter(k, k), ell) - Element::one(n);
                       const Element lhs = specialize(ctx.twister().twist(x).body, cyc);
                       const Element rhs = specialize((ctx.braided().evaluate(rel.lhs) - ctx.braided().evaluate(rel.rhs)).body, cyc);
                       if (!(lhs == rhs)) return bad("k=" + std::to_string(k));
                     }
                     return ok();
                   }});
    out.push_back({cell + "/nilpotent", [&pool, n, ell] {
                     const auto& ctx = pool.get(n);
                     const CyclotomicCtx cyc(ell, n);
                     if (cyc.reduce(q_power(-ell * (ell - 1) / 2, n)) != LaurentInt(1)) return bad("scalar is not 1");
                     for (int k = 1; k <= n; ++k)
                       for (int l = 1; l <= n; ++l) {
                         if (k == l) continue;
                         const Element x = ctx.algebra().power(ctx.algebra().letter(k, l), ell);
                         const std::vector<Letter> w(static_cast<std::size_t>(ell), ctx.algebra().letter(k, l));
                         if (!(specialize(ctx.twister().twist(x).body, cyc) == specialize(ctx.braided().chain(w).body, cyc)))
                           return bad("at (" + idx_string({k, l}) + ")");
                       }
                     return ok();
                   }});
    out.push_back({cell + "/determinant", [&pool, n, ell] {
                     const auto& ctx = pool.get(n);
                     const CyclotomicCtx cyc(ell, n);
                     const auto doc = present(Family::kSmallSLn, n, ell);
                     const auto& rel = doc.relations.back();
                     const Element lhs = specialize(ctx.twister().twist(ctx.algebra().qdet()).body, cyc);
                     const Element rhs = specialize(ctx.braided().evaluate(rel.lhs).body, cyc);
                     return verdict(rel.tag == "determinant" && lhs == rhs, "determinant relation");
                   }});
  }
}

// ---------------------------------------------------------------- examples

int abcd(char c) {
  switch (c) {
    case 'a': return 0;
    case 'b': return 1;
    case 'c': return 2;
    case 'd': return 3;
  }
  fail(ErrorCode::kInternal, "bad letter");
}

// "d^3 c b" -> codes for n = 2.
std::vector<int> abcd_word(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    const int c = abcd(text[i++]);
    int times = 1;
    if (i < text.size() && text[i] == '^') {
      times = text[++i] - '0';
      ++i;
    }
    for (int k = 0; k < times; ++k) out.push_back(c);
  }
  return out;
}

struct DisplayTerm {
  std::vector<int> factors;
  std::string word;
};

FormalExpr display_expr(const std::vector<DisplayTerm>& terms) {
  FormalExpr e;
  for (const auto& t : terms) {
    LaurentInt c = 1;
    for (int f : t.factors) c *= one_minus_q_power(f, 2);
    e.push_back({c, abcd_word(t.word), t.factors});
  }
  return e;
}

// Order-insensitive comparison of two formal expressions, coefficient by coefficient.
bool same_terms(const FormalExpr& a, const FormalExpr& b, const CyclotomicCtx* ctx) {
  std::map<std::vector<int>, LaurentInt> ma, mb;
  for (const auto& t : canonicalize(a)) ma[t.word] = ctx ? ctx->reduce(t.coeff) : t.coeff;
  for (const auto& t : canonicalize(b)) mb[t.word] = ctx ? ctx->reduce(t.coeff) : t.coeff;
  return ma == mb;
}

FormalExpr ell5_display() {
  return display_expr({
      {{}, "d^5"},
      {{-2}, "d^3 c b"},
      {{-4}, "d^2 c b d"},
      {{-6}, "d c b d^2"},
      {{-8}, "c b d^3"},
      {{-2, -4}, "d^2 c a b"},
      {{-4, -6}, "d c a b d"},
      {{-6, -8}, "c a b d^2"},
      {{-2, -6}, "c b c b d"},
      {{-2, -8}, "c b d c b"},
      {{-4, -8}, "d c b c b"},
      {{-2, -4, -8}, "c a b c b"},
      {{-2, -6, -8}, "c b c a b"},
      {{-2, -4, -6}, "d c a^2 b"},
      {{-4, -6, -8}, "c a^2 b d"},
      {{-2, -4, -6, -8}, "c a^3 b"},
  });
}

std::size_t word_mismatches(const FormalExpr& a, const FormalExpr& b) {
  std::map<std::vector<int>, LaurentInt> ma, mb;
  for (const auto& t : canonicalize(a)) ma[t.word] = t.coeff;
  for (const auto& t : canonicalize(b)) mb[t.word] = t.coeff;
  std::size_t diff = 0;
  for (const auto& [w, c] : ma)
    if (auto it = mb.find(w); it == mb.end() || it->second != c) ++diff;
  for (const auto& [w, c] : mb)
    if (!ma.count(w)) ++diff;
  return diff;
}

const FormalRelation* find_relation(const PresentationDoc& doc, std::string_view tag, const std::vector<int>& idx) {
  for (const auto& r : doc.relations)
    if (r.tag == tag && r.indices == idx) return &r;
  return nullptr;
}

void example_checks(ContextPool& pool, std::vector<Check>& out) {
  out.push_back({"examples/v-set-tuple", [] {
                   const Composition lam({3, 1, 2});
                   const auto set = v_set(4, lam);
                   const std::vector<int> shown = {4, 2, 3, 4, 4, 1, 4};
                   const bool found = std::find(set.begin(), set.end(), shown) != set.end();
                   return verdict(set.size() == 27 && found, "V^4(3,1,2)");
                 }});
  out.push_back({"examples/bqm2-display", [&pool] {
                   const auto& br = pool.get(2).braided();
                   auto chain = [&](std::string_view w) {
                     std::vector<Letter> ls;
                     for (int c : abcd_word(w)) ls.push_back(static_cast<Letter>(c));
                     return br.chain(ls);
                   };
                   const LaurentInt q2 = q_power(2, 2);
                   std::vector<std::string> failed;
                   auto expect_zero = [&](const std::string& name, const BraidedElement& r) {
                     if (!r.is_zero()) failed.push_back(name);
                   };
                   expect_zero("ba=q^2ab", chain("b a") - chain("a b").scaled(q2));
                   expect_zero("ca=q^2ac", chain("c a") - chain("a c").scaled(q2));
                   expect_zero("ad=da", chain("a d") - chain("d a"));
                   expect_zero("cd-dc", chain("c d") - chain("d c") - chain("c a").scaled(one_minus_q_power(-2, 2)));
                   expect_zero("db-bd", chain("d b") - chain("b d") - chain("a b").scaled(one_minus_q_power(-2, 2)));
                   expect_zero("cb-bc", chain("c b") - chain("b c") - (chain("d a") - chain("a a")).scaled(one_minus_q_power(2, 2)));
                   if (failed.empty()) return ok();
                   std::string d = "displayed relations not satisfied:";
                   for (const auto& f : failed) d += " " + f;
                   return bad(d);
                 }});
  out.push_back({"examples/brdq2-display", [&pool] {
                   const auto& ctx = pool.get(2);
                   const FormalExpr shown = {{1, abcd_word("d a"), {}}, {-q_power(2, 2), abcd_word("c b"), {}}};
                   return verdict(ctx.twister().twist(ctx.algebra().qdet()) == ctx.braided().evaluate(shown),
                                  "twisted qdet differs from the display");
                 }});
  out.push_back({"examples/brdq3-display", [&pool] {
                   const auto& ctx = pool.get(3);
                   auto u = [](int i, int j) { return (i - 1) * 3 + (j - 1); };
                   const FormalExpr shown = {
                       {1, {u(3, 3), u(2, 2), u(1, 1)}, {}},
                       {-q_power(2, 3), {u(3, 3), u(2, 1), u(1, 2)}, {}},
                       {-q_power(2, 3), {u(3, 1), u(2, 2), u(1, 3)}, {}},
                       {-q_power(2, 3), {u(3, 2), u(2, 3), u(1, 1)}, {}},
                       {q_power(3, 3), {u(3, 2), u(2, 1), u(1, 3)}, {}},
                       {q_power(4, 3), {u(3, 1), u(2, 3), u(1, 2)}, {}},
                   };
                   const BraidedElement twisted = ctx.twister().twist(ctx.algebra().qdet());
                   if (twisted == ctx.braided().evaluate(shown)) return ok();
                   std::string d = "display differs from the twisted qdet; closed formula ";
                   d += twisted == ctx.braided().det() ? "with deficiency exponents matches" : "also differs";
                   return bad(d);
                 }});
  out.push_back({"examples/ell3-gl2-display", [] {
                   const auto doc = present(Family::kSmallGLn, 2, 3);
                   const auto* rel = find_relation(doc, "unipotent", {2});
                   const FormalExpr shown = display_expr({{{}, "d^3"}, {{-2}, "d c b"}, {{-4}, "c b d"}, {{-2, -4}, "c a b"}});
                   const CyclotomicCtx cyc(3, 2);
                   return verdict(rel && same_terms(rel->lhs, shown, nullptr) && same_terms(rel->lhs, shown, &cyc),
                                  "emitted relation differs from the display");
                 }});
  out.push_back({"examples/ell5-gl2-display/terms", [] {
                   const auto doc = present(Family::kSmallGLn, 2, 5);
                   const auto* rel = find_relation(doc, "unipotent", {2});
                   const FormalExpr shown = ell5_display();
                   if (!rel || same_terms(rel->lhs, shown, nullptr)) return verdict(rel != nullptr, "relation missing");
                   return bad("words differing: " + std::to_string(word_mismatches(rel->lhs, shown)));
                 }});
  out.push_back({"examples/ell5-gl2-display/basis", [&pool] {
                   const auto doc = present(Family::kSmallGLn, 2, 5);
                   const auto* rel = find_relation(doc, "unipotent", {2});
                   const auto& br = pool.get(2).braided();
                   return verdict(rel && br.evaluate(rel->lhs) == br.evaluate(ell5_display()),
                                  "emitted relation and display are different elements");
                 }});
  out.push_back({"examples/ell3-general-display", [&pool] {
                   const int n = 3;
                   const auto doc = present(Family::kSmallGLn, n, 3);
                   auto u = [n](int i, int j) { return (i - 1) * n + (j - 1); };
                   for (int k = 1; k <= n; ++k) {
                     FormalExpr shown = {{1, {u(k, k), u(k, k), u(k, k)}, {}}};
                     for (int i = 1; i < k; ++i) {
                       shown.push_back({one_minus_q_power(-2, n), {u(k, i), u(i, k), u(k, k)}, {-2}});
                       shown.push_back({one_minus_q_power(-4, n), {u(k, k), u(k, i), u(i, k)}, {-4}});
                     }
                     for (int i = 1; i < k; ++i)
                       for (int j = 1; j < k; ++j)
                         shown.push_back({one_minus_q_power(-2, n) * one_minus_q_power(-4, n), {u(k, i), u(i, j), u(j, k)}, {-2, -4}});
                     const auto* rel = find_relation(doc, "unipotent", {k});
                     if (!rel || !same_terms(rel->lhs, shown, nullptr)) return bad("k=" + std::to_string(k));
                   }
                   // The two-by-two instance of the same display, compared as elements.
                   const auto& ctx = pool.get(2);
                   const CyclotomicCtx cyc(3, 2);
                   const FormalExpr small = display_expr({{{}, "d^3"}, {{-2}, "c b d"}, {{-4}, "d c b"}, {{-2, -4}, "c a b"}});
                   const auto gl2 = present(Family::kSmallGLn, 2, 3);
                   const auto* rel = find_relation(gl2, "unipotent", {2});
                   if (!(specialize(ctx.braided().evaluate(small).body, cyc) == specialize(ctx.braided().evaluate(rel->lhs).body, cyc)))
                     return bad("n=2 instance evaluates differently");
                   return ok();
                 }});
  out.push_back({"examples/sl3-determinant-display", [] {
                   const auto doc = present(Family::kSmallSLn, 3, 3);
                   auto u = [](int i, int j) { return (i - 1) * 3 + (j - 1); };
                   const FormalExpr shown = {
                       {1, {u(3, 3), u(2, 2), u(1, 1)}, {}},
                       {-q_power(2, 3), {u(3, 3), u(2, 1), u(1, 2)}, {}},
                       {-q_power(2, 3), {u(3, 1), u(2, 2), u(1, 3)}, {}},
                       {-q_power(2, 3), {u(3, 2), u(2, 3), u(1, 1)}, {}},
                       {q_power(3, 3), {u(3, 2), u(2, 1), u(1, 3)}, {}},
                       {q_power(4, 3), {u(3, 1), u(2, 3), u(1, 2)}, {}},
                   };
                   const CyclotomicCtx cyc(3, 3);
                   const auto* rel = find_relation(doc, "determinant", {});
                   return verdict(rel && same_terms(rel->lhs, shown, &cyc), "emitted determinant relation differs from the display");
                 }});
}

// ---------------------------------------------------------------- counts

void count_checks(std::vector<Check>& out) {
  out.push_back({"counts/compositions", [] {
                   for (int N = 1; N <= 12; ++N)
                     if (compositions(N).size() != (std::size_t{1} << (N - 1))) return bad("N=" + std::to_string(N));
                   return ok();
                 }});
  out.push_back({"counts/v-sets", [] {
                   for (int N = 1; N <= 7; ++N)
                     for (const auto& lam : compositions(N)) {
                       for (int k = 1; k <= 4; ++k) {
                         const auto set = v_set(k, lam);
                         std::uint64_t expect = 1;
                         for (int i = 0; i < N - lam.length(); ++i) expect *= static_cast<std::uint64_t>(k - 1);
                         if (set.size() != expect) return bad("cardinality at " + lam.to_string());
                         for (const auto& b : set)
                           if (!in_v_set(b, k, lam)) return bad("membership at " + lam.to_string());
                       }
                       const auto two = v_set(2, lam);
                       if (two.size() != 1) return bad("V^2 not a singleton");
                     }
                   return ok();
                 }});
  for (int ell : {3, 5})
    for (int k = 1; k <= 4; ++k) {
      out.push_back({"counts/ell=" + std::to_string(ell) + ",k=" + std::to_string(k), [ell, k] {
                       const TermCount tc = count_terms(std::max(k, 2), ell, k);
                       return verdict(tc.agrees(), "enumerated " + std::to_string(tc.enumerated) + ", formula " +
                                                       std::to_string(tc.formula));
                     }});
    }
}

std::vector<int> pick(const std::vector<int>& requested, std::vector<int> fallback) {
  return requested.empty() ? fallback : requested;
}

void gate(std::uint64_t cost, std::uint64_t budget, const std::string& what) {
  if (cost > budget)
    fail(ErrorCode::kInfeasible, what + " needs about " + std::to_string(cost) + " expansion terms per word, budget is " +
                                     std::to_string(budget));
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteParams& params) {
  SuiteReport report;
  report.suite = std::string(name);
  report.params = params;
  require(params.workers >= 1, "worker count must be positive");
  for (int n : params.n) require(n >= 1 && n <= kMaxMatrixSize, "matrix size must be between 1 and 8");
  for (int ell : params.ell) require(ell >= 3 && ell % 2 == 1, "ell must be odd and at least 3");
  ContextPool pool;
  std::vector<Check> checks;
  if (name == "ring") {
    ring_checks(params, checks);
  } else if (name == "fr") {
    const auto ns = pick(params.n, {1, 2, 3, 4});
    for (int n : ns) gate(expansion_cost(n, 3), params.budget, "coalgebra checks at n=" + std::to_string(n));
    fr_checks(params, pool, ns, checks);
  } else if (name == "rform") {
    const auto ns = pick(params.n, {2, 3});
    for (int n : ns) gate(expansion_cost(n, 3), params.budget, "pairing checks at n=" + std::to_string(n));
    rform_checks(params, pool, ns, checks);
  } else if (name == "braided") {
    const auto ns = pick(params.n, {2, 3, 4});
    for (int n : ns) gate(expansion_cost(n, std::min(n, 3)), params.budget, "braided checks at n=" + std::to_string(n));
    braided_checks(params, pool, ns, checks);
  } else if (name == "twist") {
    const auto ns = pick(params.n, {2, 3});
    for (int n : ns) {
      const int degree = n <= 2 ? 7 : (n == 3 ? 5 : n);
      gate(expansion_cost(n, degree), params.budget, "twist checks at n=" + std::to_string(n));
    }
    twist_checks(params, pool, ns, checks);
  } else if (name == "theorem") {
    std::vector<std::pair<int, int>> cells;
    if (params.n.empty() && params.ell.empty()) {
      cells = {{2, 3}, {2, 5}, {3, 3}, {2, 7}};
    } else {
      for (int n : pick(params.n, {2}))
        for (int ell : pick(params.ell, {3})) cells.emplace_back(n, ell);
    }
    for (auto [n, ell] : cells)
      gate(expansion_cost(n, ell), params.budget, "n=" + std::to_string(n) + ", ell=" + std::to_string(ell));
    theorem_checks(pool, cells, checks);
  } else if (name == "examples") {
    example_checks(pool, checks);
  } else if (name == "counts") {
    count_checks(checks);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown suite '" + std::string(name) + "'");
  }

  const auto start = Clock::now();
  std::vector<CheckResult> results(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) {
      CheckResult r;
      try {
        r = checks[i].run();
      } catch (const std::exception& e) {
        r = bad(std::string("exception: ") + e.what());
      }
      r.name = checks[i].name;
      results[i] = std::move(r);
    }
  };
  const int threads = std::min<int>(params.workers, static_cast<int>(checks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool_threads;
    for (int t = 0; t < threads; ++t) pool_threads.emplace_back(worker);
    for (auto& t : pool_threads) t.join();
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report.checks = std::move(results);
  return report;
}

}  // namespace qre
