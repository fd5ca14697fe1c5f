#include "twistree/counting.hpp"

#include <stdexcept>

namespace twistree {

CountTable::CountTable(int n_max) : n_max_(n_max), zero_(0) {
  if (n_max < 1) throw std::invalid_argument("CountTable: n_max must be >= 1");
  rows_.resize(n_max + 1);
  rows_[1] = {mpz_class(1)};  // c(1,0)
  for (int n = 2; n <= n_max; ++n) {
    rows_[n].assign(n - 1, mpz_class(0));  // m = n-1 .. 2n-3
    for (int m = n - 1; m <= 2 * n - 3; ++m) {
      mpz_class v = mpz_class(n - 1) * at(n - 1, m - 1);
      if (m >= 2) v += mpz_class(m - 2) * at(n - 1, m - 2);
      rows_[n][m - (n - 1)] = v;
    }
  }
}

const mpz_class& CountTable::at(int n, int m) const {
  if (n < 1 || n > n_max_) return zero_;
  if (n == 1) return m == 0 ? rows_[1][0] : zero_;
  if (m < n - 1 || m > 2 * n - 3) return zero_;
  return rows_[n][m - (n - 1)];
}

mpz_class CountTable::row_sum(int n) const {
  mpz_class s = 0;
  if (n == 1) return rows_.size() > 1 ? rows_[1][0] : mpz_class(0);
  for (int m = n - 1; m <= 2 * n - 3; ++m) s += at(n, m);
  return s;
}

CountTable build_count_table(int n_max) { return CountTable(n_max); }

mpz_class cayley_number(int n) {
  if (n < 1) throw std::invalid_argument("cayley_number: n must be >= 1");
  if (n == 1) return 1;
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n - 2));
  return r;
}

std::map<int, mpz_class> twist_distribution(int n) {
  CountTable table(n);
  std::map<int, mpz_class> dist;
  if (n == 1) {
    dist[0] = 1;
    return dist;
  }
  for (int k = 0; k <= n - 2; ++k) dist[k] = table.at(n, k + n - 1);
  return dist;
}

}  // namespace twistree
