#pragma once

#include <cstddef>
#include <vector>

#include "qre/laurent.hpp"

namespace qre::detail {

struct Path {
  std::vector<int> labels;
  LaurentInt coeff;
  int end;
};

// Walks index chains through a sparse table: at each position the current
// state selects the admissible links, each link fixes the label at that
// position and the next state.
template <class Lookup>
void walk(std::size_t m, bool backward, int start, const Lookup& lookup, std::vector<Path>& out) {
  std::vector<int> labels(m);
  auto rec = [&](auto& self, std::size_t step, int state, const LaurentInt& coeff) -> void {
    if (step == m) {
      out.push_back({labels, coeff, state});
      return;
    }
    const std::size_t pos = backward ? m - 1 - step : step;
    for (const auto& link : lookup(pos, state)) {
      labels[pos] = link.a;
      self(self, step + 1, link.b, coeff * link.value);
    }
  };
  rec(rec, 0, start, LaurentInt(1));
}

}  // namespace qre::detail
