#pragma once

#include <cstddef>

namespace qre {

/// Clears a memo table that has reached its cap; a cap of 0 means unbounded.
template <class Map>
void make_room(Map& table, std::size_t cap) {
  if (cap != 0 && table.size() >= cap) table.clear();
}

}  // namespace qre
