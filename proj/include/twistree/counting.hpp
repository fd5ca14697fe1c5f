#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

namespace twistree {

// Exact counts c(n,m) of increasing 1,2-trees with n vertices and m edges
// (equivalently Cayley trees with n vertices and m-n+1 twists), filled from
// c(n,m) = (n-1) c(n-1,m-1) + (m-2) c(n-1,m-2), c(1,0) = 1.
// The support for n >= 2 is n-1 <= m <= 2n-3, exactly n-1 values per row,
// stored densely and indexed by (n, m-n+1).
class CountTable {
 public:
  explicit CountTable(int n_max);

  int n_max() const { return n_max_; }
  // Zero outside the support.
  const mpz_class& at(int n, int m) const;
  mpz_class row_sum(int n) const;

 private:
  int n_max_;
  std::vector<std::vector<mpz_class>> rows_;
  mpz_class zero_;
};

CountTable build_count_table(int n_max);

// n^(n-2) for n >= 2; 1 for n = 1.
mpz_class cayley_number(int n);

// k -> number of Cayley trees of size n with exactly k twists, i.e. c(n, k+n-1).
std::map<int, mpz_class> twist_distribution(int n);

}  // namespace twistree
