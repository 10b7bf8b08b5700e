#pragma once

// Slow, direct reimplementations used to cross-check the library. They share
// only the exact ring type with it.

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qre/fr_algebra.hpp"
#include "qre/laurent.hpp"
#include "qre/r_form.hpp"

namespace oracle {

using qre::LaurentInt;
using Gen = std::pair<int, int>;  // (row, col), 1-based
using GWord = std::vector<Gen>;
using Poly = std::map<GWord, LaurentInt>;

inline LaurentInt q_to(int e, int n) { return LaurentInt::v_power(e * n); }

inline LaurentInt symmetric_q_int(int k, int n) {
  LaurentInt s;
  for (int j = 0; j < k; ++j) s += q_to(k - 1 - 2 * j, n);
  return s;
}

inline LaurentInt one_minus(int e, int n) { return LaurentInt(1) - q_to(e, n); }

// The quotient form, divided out exactly.
inline LaurentInt sigma_by_quotient(const std::vector<int>& parts, int n) {
  int N = 0;
  for (int p : parts) N += p;
  LaurentInt num = 1, den = 1;
  for (int j = 1; j <= N - 1; ++j) num *= one_minus(-2 * (N - j), n);
  int tail = 0;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    tail += parts[parts.size() - k];
    den *= one_minus(-2 * (N - tail), n);
  }
  auto q = LaurentInt::divide_exact(num, den);
  return q ? *q : LaurentInt();
}

inline void add(Poly& p, const GWord& w, const LaurentInt& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

// Rewrites y x (y after x in row-major order) into ordered words.
inline std::vector<std::pair<LaurentInt, std::pair<Gen, Gen>>> swap(Gen y, Gen x, int n) {
  const LaurentInt q = q_to(1, n);
  if (y.first == x.first || y.second == x.second) return {{q, {x, y}}};
  if (y.second < x.second) return {{LaurentInt(1), {x, y}}};
  return {{LaurentInt(1), {x, y}}, {q - q_to(-1, n), {{x.first, y.second}, {y.first, x.second}}}};
}

// Always rewrites the leftmost inversion.
inline Poly normal_form(const GWord& w, int n, const LaurentInt& c = 1) {
  Poly out;
  std::vector<std::pair<GWord, LaurentInt>> stack{{w, c}};
  while (!stack.empty()) {
    auto [cur, coeff] = stack.back();
    stack.pop_back();
    std::size_t pos = 0;
    while (pos + 1 < cur.size() && !(cur[pos + 1] < cur[pos])) ++pos;
    if (pos + 1 >= cur.size()) {
      add(out, cur, coeff);
      continue;
    }
    for (const auto& [k, pr] : swap(cur[pos], cur[pos + 1], n)) {
      GWord next = cur;
      next[pos] = pr.first;
      next[pos + 1] = pr.second;
      stack.push_back({next, coeff * k});
    }
  }
  return out;
}

inline Poly multiply(const Poly& a, const Poly& b, int n) {
  Poly out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      GWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      for (const auto& [wn, cn] : normal_form(w, n, ca * cb)) add(out, wn, cn);
    }
  return out;
}

inline GWord from_word(const qre::Word& w, int n) {
  GWord out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({w[i] / n + 1, w[i] % n + 1});
  return out;
}

inline qre::Element to_element(const Poly& p, int n) {
  qre::Element e(n);
  for (const auto& [w, c] : p) {
    qre::Word word;
    for (auto [i, j] : w) word.push_back(static_cast<qre::Letter>((i - 1) * n + (j - 1)));
    e.add_term(word, c);
  }
  return e;
}

inline Poly from_element(const qre::Element& e) {
  Poly p;
  for (const auto& [w, c] : e.terms()) add(p, from_word(w, e.n()), c);
  return p;
}

// Generator tables written straight from the defining formulas.
inline LaurentInt r_entry(int i, int j, int k, int l, int n) {
  LaurentInt s;
  if (i == j && k == l) s += j == l ? q_to(1, n) : LaurentInt(1);
  if (j > l && i == l && k == j) s += q_to(1, n) - q_to(-1, n);
  return LaurentInt::v_power(-1) * s;
}

inline LaurentInt rinv_entry(int i, int j, int k, int l, int n) {
  LaurentInt s;
  if (i == j && k == l) s += j == l ? q_to(-1, n) : LaurentInt(1);
  if (j > l && i == l && k == j) s -= q_to(1, n) - q_to(-1, n);
  return LaurentInt::v_power(1) * s;
}

// Every leg decomposition of a word under the iterated coproduct.
inline void for_each_legs(const GWord& w, int legs, int n, const std::function<void(const std::vector<GWord>&)>& f) {
  const std::size_t m = w.size();
  std::vector<std::vector<int>> chain(m, std::vector<int>(static_cast<std::size_t>(legs) + 1));
  std::function<void(std::size_t, int)> go = [&](std::size_t t, int leg) {
    if (t == m) {
      std::vector<GWord> parts(static_cast<std::size_t>(legs));
      for (std::size_t s = 0; s < m; ++s)
        for (int l = 0; l < legs; ++l) parts[l].push_back({chain[s][l], chain[s][l + 1]});
      f(parts);
      return;
    }
    if (leg == 0) {
      chain[t][0] = w[t].first;
      chain[t][legs] = w[t].second;
      go(t, 1);
      return;
    }
    if (leg == legs) {
      go(t + 1, 0);
      return;
    }
    for (int x = 1; x <= n; ++x) {
      chain[t][leg] = x;
      go(t, leg + 1);
    }
  };
  go(0, 0);
}

// State sum over the m x p grid of generator pairings. Letter s of the first
// word splits into p legs and letter t of the second into m legs; the leg
// met at cell (s, t) depends on the variant.
inline LaurentInt grid_pairing(const qre::RForm& rf, qre::RVariant v, const GWord& a, const GWord& b, int n) {
  const int m = static_cast<int>(a.size());
  const int p = static_cast<int>(b.size());
  auto counit = [](const GWord& w) {
    for (auto [i, j] : w)
      if (i != j) return LaurentInt();
    return LaurentInt(1);
  };
  if (m == 0) return counit(b);
  if (p == 0) return counit(a);
  auto a_leg = [&](int, int t) { return v == qre::RVariant::kR ? p - 1 - t : t; };
  auto b_leg = [&](int s, int) { return v == qre::RVariant::kR ? s : m - 1 - s; };
  std::vector<std::vector<int>> alpha(m, std::vector<int>(p + 1));
  std::vector<std::vector<int>> beta(p, std::vector<int>(m + 1));
  for (int s = 0; s < m; ++s) alpha[s][0] = a[s].first, alpha[s][p] = a[s].second;
  for (int t = 0; t < p; ++t) beta[t][0] = b[t].first, beta[t][m] = b[t].second;
  std::vector<int*> free_slots;
  for (int s = 0; s < m; ++s)
    for (int x = 1; x < p; ++x) free_slots.push_back(&alpha[s][x]);
  for (int t = 0; t < p; ++t)
    for (int x = 1; x < m; ++x) free_slots.push_back(&beta[t][x]);
  LaurentInt total;
  std::function<void(std::size_t)> go = [&](std::size_t slot) {
    if (slot < free_slots.size()) {
      for (int x = 1; x <= n; ++x) {
        *free_slots[slot] = x;
        go(slot + 1);
      }
      return;
    }
    LaurentInt prod = 1;
    for (int s = 0; s < m && !prod.is_zero(); ++s)
      for (int t = 0; t < p && !prod.is_zero(); ++t) {
        const int la = a_leg(s, t), lb = b_leg(s, t);
        prod *= rf.entry(v, alpha[s][la], alpha[s][la + 1], beta[t][lb], beta[t][lb + 1]);
      }
    total += prod;
  };
  go(0);
  return total;
}

// a ⋆ b = sum R~(a3 ⊗ b1) R(a1 ⊗ b2) a2 b3 with everything recomputed here.
inline Poly braided_product(const qre::RForm& rf, const Poly& a, const Poly& b, int n) {
  Poly out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b)
      for_each_legs(wa, 3, n, [&](const std::vector<GWord>& al) {
        for_each_legs(wb, 3, n, [&](const std::vector<GWord>& bl) {
          const LaurentInt f = grid_pairing(rf, qre::RVariant::kTilde, al[2], bl[0], n);
          if (f.is_zero()) return;
          const LaurentInt g = grid_pairing(rf, qre::RVariant::kR, al[0], bl[1], n);
          if (g.is_zero()) return;
          GWord w = al[1];
          w.insert(w.end(), bl[2].begin(), bl[2].end());
          for (const auto& [wn, cn] : normal_form(w, n, ca * cb * f * g)) add(out, wn, cn);
        });
      });
  return out;
}

}  // namespace oracle
