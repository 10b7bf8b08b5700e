#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qre {

class Composition {
 public:
  explicit Composition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  /// The i-th part counted from the end, i >= 1.
  int part_from_end(int i) const;
  int last_part() const { return parts_.back(); }
  /// Drops the final part; fails for single-part compositions.
  Composition truncate() const;

  std::string to_string() const;
  static Composition parse(std::string_view text);

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All 2^(N-1) compositions of N. Bit g of the mask (g = 0 .. N-2) marks a
/// cut after the (g+1)-th unit; masks are visited in ascending order.
class CompositionStream {
 public:
  explicit CompositionStream(int weight);
  std::optional<Composition> next();
  std::uint64_t total() const { return std::uint64_t{1} << (weight_ - 1); }

 private:
  int weight_;
  std::uint64_t mask_ = 0;
};

std::vector<Composition> compositions(int weight);

/// Index tuples beta of length N+1 whose entries at the block boundaries
/// equal k and whose free entries range over 1 .. k-1. Free positions are
/// advanced like an odometer, rightmost position fastest.
class VSetStream {
 public:
  VSetStream(int k, const Composition& lambda);
  std::optional<std::vector<int>> next();
  std::uint64_t cardinality() const;

 private:
  int k_;
  std::vector<int> current_;
  std::vector<int> free_positions_;
  bool exhausted_ = false;
};

std::vector<std::vector<int>> v_set(int k, const Composition& lambda);
bool in_v_set(const std::vector<int>& beta, int k, const Composition& lambda);

/// Number of inversions and of exceedances (sigma(i) > i) of a permutation
/// of 1..n given in one-line notation.
int inversion_count(const std::vector<int>& perm);
int exceedance_count(const std::vector<int>& perm);
/// Number of i with sigma(i) < i.
int deficiency_count(const std::vector<int>& perm);
/// All permutations of 1..n in lexicographic order.
std::vector<std::vector<int>> permutations(int n);

}  // namespace qre
