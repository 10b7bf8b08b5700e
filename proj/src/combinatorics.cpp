#include "qre/combinatorics.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "qre/error.hpp"

namespace qre {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  require(!parts_.empty(), "composition must have at least one part");
  for (int p : parts_) require(p >= 1, "composition parts must be positive");
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Composition::part_from_end(int i) const {
  require(i >= 1 && i <= length(), "part index out of range");
  return parts_[parts_.size() - static_cast<std::size_t>(i)];
}

Composition Composition::truncate() const {
  require(length() >= 2, "cannot truncate a single-part composition");
  return Composition(std::vector<int>(parts_.begin(), parts_.end() - 1));
}

std::string Composition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out;
}

Composition Composition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || value < 1) fail(ErrorCode::kParse, "malformed composition: " + std::string(text));
    parts.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) break;
    if (text[pos] != ',') fail(ErrorCode::kParse, "malformed composition: " + std::string(text));
    ++pos;
  }
  return Composition(std::move(parts));
}

CompositionStream::CompositionStream(int weight) : weight_(weight) {
  require(weight >= 1, "compositions need a positive weight");
  require(weight <= 62, "composition weight too large to enumerate");
}

std::optional<Composition> CompositionStream::next() {
  if (mask_ >= total()) return std::nullopt;
  std::vector<int> parts;
  int run = 1;
  for (int g = 0; g < weight_ - 1; ++g) {
    if (mask_ >> g & 1) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  parts.push_back(run);
  ++mask_;
  return Composition(std::move(parts));
}

std::vector<Composition> compositions(int weight) {
  std::vector<Composition> out;
  CompositionStream stream(weight);
  while (auto c = stream.next()) out.push_back(std::move(*c));
  return out;
}

VSetStream::VSetStream(int k, const Composition& lambda) : k_(k) {
  require(k >= 1, "V-set index must be positive");
  const int n = lambda.weight();
  current_.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> fixed(current_.size(), false);
  int boundary = 0;
  fixed[0] = true;
  for (int p : lambda.parts()) {
    boundary += p;
    fixed[boundary] = true;
  }
  for (std::size_t i = 0; i < current_.size(); ++i) {
    if (fixed[i]) {
      current_[i] = k;
    } else {
      current_[i] = 1;
      free_positions_.push_back(static_cast<int>(i));
    }
  }
  exhausted_ = !free_positions_.empty() && k == 1;
}

std::uint64_t VSetStream::cardinality() const {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < free_positions_.size(); ++i) c *= static_cast<std::uint64_t>(k_ - 1);
  return c;
}

std::optional<std::vector<int>> VSetStream::next() {
  if (exhausted_) return std::nullopt;
  std::vector<int> out = current_;
  exhausted_ = true;
  for (auto it = free_positions_.rbegin(); it != free_positions_.rend(); ++it) {
    if (current_[*it] < k_ - 1) {
      ++current_[*it];
      exhausted_ = false;
      break;
    }
    current_[*it] = 1;
  }
  return out;
}

std::vector<std::vector<int>> v_set(int k, const Composition& lambda) {
  std::vector<std::vector<int>> out;
  VSetStream stream(k, lambda);
  while (auto b = stream.next()) out.push_back(std::move(*b));
  return out;
}

bool in_v_set(const std::vector<int>& beta, int k, const Composition& lambda) {
  if (beta.size() != static_cast<std::size_t>(lambda.weight()) + 1) return false;
  std::vector<bool> fixed(beta.size(), false);
  int boundary = 0;
  fixed[0] = true;
  for (int p : lambda.parts()) fixed[boundary += p] = true;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (fixed[i] ? beta[i] != k : (beta[i] < 1 || beta[i] >= k)) return false;
  }
  return true;
}

int inversion_count(const std::vector<int>& perm) {
  int count = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++count;
  return count;
}

int exceedance_count(const std::vector<int>& perm) {
  int count = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] > static_cast<int>(i) + 1) ++count;
  return count;
}

int deficiency_count(const std::vector<int>& perm) {
  int count = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] < static_cast<int>(i) + 1) ++count;
  return count;
}

std::vector<std::vector<int>> permutations(int n) {
  require(n >= 0, "permutation size must be nonnegative");
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace qre
