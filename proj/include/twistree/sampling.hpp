#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "twistree/cayley_tree.hpp"
#include "twistree/inc_tree_seq.hpp"

namespace twistree {

// Injected source of uniform integers; next_int(k) is uniform on {1..k} and
// assumed O(1) per draw. Implementations must be deterministic per seed.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual int next_int(int k) = 0;
};

// mt19937_64 driven, with mask rejection so every next_int is exactly uniform.
class Mt19937Rng final : public Rng {
 public:
  explicit Mt19937Rng(std::uint64_t seed) : gen_(seed) {}
  // Independent stream for batch workers; reproducible given (seed, stream).
  Mt19937Rng(std::uint64_t seed, std::uint64_t stream);
  int next_int(int k) override;

 private:
  std::mt19937_64 gen_;
};

// Replays a fixed list of values; throws RngExhausted past the end.
class ScriptedRng final : public Rng {
 public:
  explicit ScriptedRng(std::vector<int> values) : values_(std::move(values)) {}
  int next_int(int k) override;

 private:
  std::vector<int> values_;
  std::size_t pos_ = 0;
};

struct SampleStats {
  std::uint64_t draws = 0;
  std::chrono::nanoseconds elapsed{0};
};

// Skip-ahead random walk on the complete graph: exactly uniform over the
// n^(n-2) Cayley trees, worst-case O(n), on average 3n/2 draws.
std::pair<CayleyTree, SampleStats> sample_cayley(int n, Rng& rng);

// Uniform over increasing 1,2-trees: sample a Cayley tree and pull it back
// through the bijection; every stage is O(n).
std::pair<IncTreeSeq, SampleStats> sample_inc12(int n, Rng& rng);

// Smallest-leaf Prüfer code, linear time via the pointer technique. Decoding
// a uniform code yields a uniform tree, which makes the pair an independent
// uniformity oracle for sample_cayley.
std::vector<int> prufer_encode(const CayleyTree& t);
CayleyTree prufer_decode(const std::vector<int>& code, int n);

// Pearson statistic for observed counts against expected counts.
double chi_square(const std::vector<std::int64_t>& observed, const std::vector<double>& expected);

}  // namespace twistree
