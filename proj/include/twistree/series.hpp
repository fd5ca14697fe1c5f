#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistree/counting.hpp"

namespace twistree {

using Rat = mpq_class;

// Univariate truncated power series with exact rational coefficients;
// coefficients are tracked for degrees 0..order.
class Series {
 public:
  explicit Series(int order) : c_(order + 1, Rat(0)) {}
  static Series x(int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& operator[](int k) const { return c_[k]; }
  Rat& operator[](int k) { return c_[k]; }

  Series add(const Series& o) const;
  Series sub(const Series& o) const;
  Series mul(const Series& o) const;  // truncated at min(order, o.order)
  Series scaled(const Rat& s) const;
  Series reflected() const;  // x -> -x
  bool is_zero() const;

 private:
  std::vector<Rat> c_;
};

Series exp_of(const Series& a);        // requires a[0] == 0
Series inverse_unit(const Series& a);  // requires a[0] != 0

// W(x) = sum (-n)^(n-1)/n! x^n; checked internally against W exp(W) = x.
Series lambert_w_series(int order);

// -W(-x) - W(-x)^2/2; coefficient of x^n is n^(n-2)/n!.
Series cayley_series(int order);

// Truncated bivariate series sum a_{i,j} z^i u^j. Coefficients are exact for
// all i <= zcap and j <= ucap and dropped beyond; kExact marks an axis along
// which every coefficient is known (finite support). Multiplication tightens
// caps using the factors' valuations, so multiplying by a monomial extends
// the tracked region instead of clipping it.
class BiSeries {
 public:
  static constexpr int kExact = 1 << 20;

  BiSeries(int zcap, int ucap) : zcap_(zcap), ucap_(ucap) {}
  static BiSeries constant(const Rat& v);
  static BiSeries monomial(int i, int j, const Rat& v);
  static BiSeries from_univariate_z(const Series& s);
  static BiSeries from_univariate_u(const Series& s);

  int zcap() const { return zcap_; }
  int ucap() const { return ucap_; }
  const Rat& coeff(int i, int j) const;
  void set(int i, int j, const Rat& v);

  BiSeries add(const BiSeries& o) const;
  BiSeries sub(const BiSeries& o) const;
  BiSeries mul(const BiSeries& o) const;
  BiSeries scaled(const Rat& s) const;
  BiSeries derivative_z() const;
  BiSeries derivative_u() const;
  BiSeries truncated(int zc, int uc) const;

  bool is_zero() const;
  struct Term {
    int i, j;
    Rat v;
  };
  std::optional<Term> first_nonzero() const;  // lexicographic by (i, j)

  const std::map<std::pair<int, int>, Rat>& terms() const { return t_; }

 private:
  int z_valuation() const;
  int u_valuation() const;

  int zcap_, ucap_;
  std::map<std::pair<int, int>, Rat> t_;
};

// f(g) for univariate f; g must have zero constant term. Intermediates are
// truncated to the given window; coefficients with i+j <= f.order() inside
// the window are exact because g has total valuation >= 1.
BiSeries compose_univariate(const Series& f, const BiSeries& g, int z_window = BiSeries::kExact,
                            int u_window = BiSeries::kExact);

// Coefficient of z^n u^m is c(n,m)/n!; the u axis is exact (finite support).
BiSeries egf_from_counts(const CountTable& table, int order);

// dC/dz - 1 - z u dC/dz - u^3 dC/du, tracked to z-degree order-1.
BiSeries pde_residual(const BiSeries& c);

struct PdeReport {
  bool ok = true;
  bool initial_ok = true;  // C(0,0) == 0; nonzero C(0,j) surfaces in the residual
  std::optional<BiSeries::Term> offender;
};
PdeReport pde_check(const BiSeries& c);

// a_{n,m} -> a_{n,m}/n! (ordinary -> exponential coefficients).
BiSeries borel(const BiSeries& a);

struct ClosedFormReport {
  bool ok = true;
  std::string detail;  // first mismatching coefficient when not ok
};

// Verifies, as exact series identities expanded at u = 1+s (respectively
// t = 1+s), that the vertex/edge EGF equals
//   Cayley((uz+u-1)/u * e^((1-u)/u)) + 1/(2u^2) - 1/2
// and that the twist-variable EGF equals
//   t*Cayley(((z+t-1)/t) * e^((1-t)/t)) + 1/(2t) - t/2,
// comparing every coefficient with z-degree <= order and s-degree <= order
// against the table side.
ClosedFormReport closed_form_check(int order);

}  // namespace twistree
