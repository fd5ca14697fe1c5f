#include "twistree/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "twistree/errors.hpp"

namespace twistree {

namespace {

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

int cap_add(int cap, int delta) {
  long v = static_cast<long>(cap) + delta;
  if (v >= BiSeries::kExact) return BiSeries::kExact;
  return static_cast<int>(std::max(0L, v));
}

}  // namespace

Series Series::x(int order) {
  Series s(order);
  if (order >= 1) s[1] = 1;
  return s;
}

Series Series::add(const Series& o) const {
  Series r(std::min(order(), o.order()));
  for (int k = 0; k <= r.order(); ++k) r[k] = c_[k] + o[k];
  return r;
}

Series Series::sub(const Series& o) const {
  Series r(std::min(order(), o.order()));
  for (int k = 0; k <= r.order(); ++k) r[k] = c_[k] - o[k];
  return r;
}

Series Series::mul(const Series& o) const {
  Series r(std::min(order(), o.order()));
  for (int i = 0; i <= r.order(); ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; i + j <= r.order(); ++j) {
      if (o[j] == 0) continue;
      r[i + j] += c_[i] * o[j];
    }
  }
  return r;
}

Series Series::scaled(const Rat& s) const {
  Series r(order());
  for (int k = 0; k <= order(); ++k) r[k] = c_[k] * s;
  return r;
}

Series Series::reflected() const {
  Series r(order());
  for (int k = 0; k <= order(); ++k) r[k] = (k % 2 == 0) ? c_[k] : -c_[k];
  return r;
}

bool Series::is_zero() const {
  for (const Rat& v : c_)
    if (v != 0) return false;
  return true;
}

Series exp_of(const Series& a) {
  if (a[0] != 0) throw SubstitutionIllFormed("exp_of requires zero constant term");
  int n = a.order();
  Series b(n);
  b[0] = 1;
  // b' = a' b, coefficient by coefficient.
  for (int k = 1; k <= n; ++k) {
    Rat acc = 0;
    for (int j = 1; j <= k; ++j) acc += Rat(j) * a[j] * b[k - j];
    b[k] = acc / k;
  }
  return b;
}

Series inverse_unit(const Series& a) {
  if (a[0] == 0) throw SubstitutionIllFormed("inverse_unit requires a unit constant term");
  int n = a.order();
  Series b(n);
  b[0] = Rat(1) / a[0];
  for (int k = 1; k <= n; ++k) {
    Rat acc = 0;
    for (int j = 1; j <= k; ++j) acc += a[j] * b[k - j];
    b[k] = -acc / a[0];
  }
  return b;
}

Series lambert_w_series(int order) {
  if (order < 1) throw std::invalid_argument("lambert_w_series: order must be >= 1");
  Series w(order);
  for (int n = 1; n <= order; ++n) {
    mpz_class p;
    mpz_class base = -n;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n - 1));
    w[n] = Rat(p) / Rat(factorial(n));
  }
  Series residual = w.mul(exp_of(w)).sub(Series::x(order));
  if (!residual.is_zero()) throw std::logic_error("lambert W series fails W exp(W) = x");
  return w;
}

Series cayley_series(int order) {
  if (order < 1) throw std::invalid_argument("cayley_series: order must be >= 1");
  Series wm = lambert_w_series(order).reflected();  // W(-x)
  return wm.scaled(-1).sub(wm.mul(wm).scaled(Rat(1, 2)));
}

BiSeries BiSeries::constant(const Rat& v) {
  BiSeries s(kExact, kExact);
  s.set(0, 0, v);
  return s;
}

BiSeries BiSeries::monomial(int i, int j, const Rat& v) {
  BiSeries s(kExact, kExact);
  s.set(i, j, v);
  return s;
}

BiSeries BiSeries::from_univariate_z(const Series& s) {
  BiSeries b(s.order(), kExact);
  for (int k = 0; k <= s.order(); ++k) b.set(k, 0, s[k]);
  return b;
}

BiSeries BiSeries::from_univariate_u(const Series& s) {
  BiSeries b(kExact, s.order());
  for (int k = 0; k <= s.order(); ++k) b.set(0, k, s[k]);
  return b;
}

const Rat& BiSeries::coeff(int i, int j) const {
  static const Rat zero(0);
  auto it = t_.find({i, j});
  return it == t_.end() ? zero : it->second;
}

void BiSeries::set(int i, int j, const Rat& v) {
  if (i < 0 || j < 0) throw std::out_of_range("BiSeries::set: negative exponent");
  if (i > zcap_ || j > ucap_) throw std::out_of_range("BiSeries::set: beyond truncation");
  if (v == 0)
    t_.erase({i, j});
  else
    t_[{i, j}] = v;
}

int BiSeries::z_valuation() const {
  int v = kExact;
  for (const auto& [ij, _] : t_) v = std::min(v, ij.first);
  return v;
}

int BiSeries::u_valuation() const {
  int v = kExact;
  for (const auto& [ij, _] : t_) v = std::min(v, ij.second);
  return v;
}

BiSeries BiSeries::add(const BiSeries& o) const {
  BiSeries r(std::min(zcap_, o.zcap_), std::min(ucap_, o.ucap_));
  for (const auto& [ij, v] : t_)
    if (ij.first <= r.zcap_ && ij.second <= r.ucap_) r.t_[ij] = v;
  for (const auto& [ij, v] : o.t_) {
    if (ij.first > r.zcap_ || ij.second > r.ucap_) continue;
    auto it = r.t_.find(ij);
    if (it == r.t_.end())
      r.t_[ij] = v;
    else {
      it->second += v;
      if (it->second == 0) r.t_.erase(it);
    }
  }
  return r;
}

BiSeries BiSeries::sub(const BiSeries& o) const { return add(o.scaled(Rat(-1))); }

BiSeries BiSeries::scaled(const Rat& s) const {
  BiSeries r(zcap_, ucap_);
  if (s == 0) return r;
  for (const auto& [ij, v] : t_) r.t_[ij] = v * s;
  return r;
}

BiSeries BiSeries::mul(const BiSeries& o) const {
  // Coefficient (i,j) of the product is exact when every contributing split
  // stays inside both tracked regions, which holds up to cap + the other
  // factor's valuation on each axis.
  int zc = std::min(cap_add(zcap_, o.z_valuation()), cap_add(o.zcap_, z_valuation()));
  int uc = std::min(cap_add(ucap_, o.u_valuation()), cap_add(o.ucap_, u_valuation()));
  BiSeries r(zc, uc);
  for (const auto& [ij1, v1] : t_) {
    for (const auto& [ij2, v2] : o.t_) {
      int i = ij1.first + ij2.first;
      int j = ij1.second + ij2.second;
      if (i > zc || j > uc) continue;
      auto it = r.t_.find({i, j});
      if (it == r.t_.end())
        r.t_[{i, j}] = v1 * v2;
      else
        it->second += v1 * v2;
    }
  }
  for (auto it = r.t_.begin(); it != r.t_.end();)
    it = (it->second == 0) ? r.t_.erase(it) : std::next(it);
  return r;
}

BiSeries BiSeries::derivative_z() const {
  BiSeries r(zcap_ == kExact ? kExact : std::max(0, zcap_ - 1), ucap_);
  for (const auto& [ij, v] : t_) {
    if (ij.first == 0) continue;
    if (ij.first - 1 > r.zcap_) continue;
    r.t_[{ij.first - 1, ij.second}] = v * ij.first;
  }
  return r;
}

BiSeries BiSeries::derivative_u() const {
  BiSeries r(zcap_, ucap_ == kExact ? kExact : std::max(0, ucap_ - 1));
  for (const auto& [ij, v] : t_) {
    if (ij.second == 0) continue;
    if (ij.second - 1 > r.ucap_) continue;
    r.t_[{ij.first, ij.second - 1}] = v * ij.second;
  }
  return r;
}

BiSeries BiSeries::truncated(int zc, int uc) const {
  BiSeries r(std::min(zc, zcap_), std::min(uc, ucap_));
  for (const auto& [ij, v] : t_)
    if (ij.first <= r.zcap_ && ij.second <= r.ucap_) r.t_[ij] = v;
  return r;
}

bool BiSeries::is_zero() const { return t_.empty(); }

std::optional<BiSeries::Term> BiSeries::first_nonzero() const {
  if (t_.empty()) return std::nullopt;
  const auto& [ij, v] = *t_.begin();
  return Term{ij.first, ij.second, v};
}

BiSeries compose_univariate(const Series& f, const BiSeries& g, int z_window, int u_window) {
  if (g.coeff(0, 0) != 0)
    throw SubstitutionIllFormed("composition requires a zero constant term");
  BiSeries acc = BiSeries::constant(f[0]).truncated(std::min(z_window, g.zcap()),
                                                    std::min(u_window, g.ucap()));
  BiSeries power = g.truncated(z_window, u_window);
  for (int k = 1; k <= f.order(); ++k) {
    if (f[k] != 0) acc = acc.add(power.scaled(f[k]));
    if (k < f.order()) power = power.mul(g).truncated(z_window, u_window);
  }
  return acc;
}

BiSeries egf_from_counts(const CountTable& table, int order) {
  if (table.n_max() < order) throw std::invalid_argument("count table does not cover the order");
  BiSeries c(order, BiSeries::kExact);
  for (int n = 1; n <= order; ++n) {
    Rat inv_fact = Rat(1) / Rat(factorial(n));
    if (n == 1) {
      c.set(1, 0, Rat(table.at(1, 0)) * inv_fact);
      continue;
    }
    for (int m = n - 1; m <= 2 * n - 3; ++m) c.set(n, m, Rat(table.at(n, m)) * inv_fact);
  }
  return c;
}

BiSeries pde_residual(const BiSeries& c) {
  BiSeries dz = c.derivative_z();
  BiSeries term_zu = dz.mul(BiSeries::monomial(1, 1, Rat(1)));
  BiSeries term_u3 = c.derivative_u().mul(BiSeries::monomial(0, 3, Rat(1)));
  return dz.sub(BiSeries::constant(Rat(1))).sub(term_zu).sub(term_u3);
}

PdeReport pde_check(const BiSeries& c) {
  PdeReport report;
  if (c.coeff(0, 0) != 0) {
    report.ok = false;
    report.initial_ok = false;
    report.offender = BiSeries::Term{0, 0, c.coeff(0, 0)};
    return report;
  }
  BiSeries residual = pde_residual(c);
  if (!residual.is_zero()) {
    report.ok = false;
    report.offender = residual.first_nonzero();
  }
  return report;
}

BiSeries borel(const BiSeries& a) {
  BiSeries r(a.zcap(), a.ucap());
  for (const auto& [ij, v] : a.terms()) r.set(ij.first, ij.second, v / Rat(factorial(ij.first)));
  return r;
}

namespace {

std::string describe_term(const char* side, const BiSeries::Term& t) {
  std::ostringstream os;
  os << side << " first mismatch at z^" << t.i << " s^" << t.j << " with difference "
     << t.v.get_str();
  return os.str();
}

// Left side of either identity from the count table, re-expanded at 1+s:
// exponent_of_u = m for the vertex/edge form, m-n+1 for the twist form.
BiSeries table_side(const CountTable& table, int order, int s_order, bool twist_exponent) {
  BiSeries lhs(order, s_order);
  for (int n = 1; n <= order; ++n) {
    Rat inv_fact = Rat(1) / Rat(factorial(n));
    int m_lo = (n == 1) ? 0 : n - 1;
    int m_hi = (n == 1) ? 0 : 2 * n - 3;
    for (int m = m_lo; m <= m_hi; ++m) {
      const mpz_class& cnm = table.at(n, m);
      if (cnm == 0) continue;
      int e = twist_exponent ? m - n + 1 : m;
      for (int k = 0; k <= std::min(e, s_order); ++k) {
        Rat add = Rat(cnm * binomial(e, k)) * inv_fact;
        lhs.set(n, k, lhs.coeff(n, k) + add);
      }
    }
  }
  return lhs;
}

}  // namespace

ClosedFormReport closed_form_check(int order) {
  if (order < 3) throw std::invalid_argument("closed_form_check: order must be >= 3");
  ClosedFormReport report;
  const int s_order = order;
  const int compose_order = order + s_order;

  CountTable table(order);
  Series cay = cayley_series(compose_order);

  // Shared univariate pieces in s.
  Series one_plus_s(s_order);
  one_plus_s[0] = 1;
  if (s_order >= 1) one_plus_s[1] = 1;
  Series inv_1ps = inverse_unit(one_plus_s);
  Series minus_s_over_1ps = inv_1ps.scaled(Rat(-1)).mul(Series::x(s_order));
  Series expo = exp_of(minus_s_over_1ps);  // e^(-s/(1+s)) = e^((1-u)/u) at u = 1+s

  // Identity 1: argument (uz+u-1)/u e^((1-u)/u) = z E(s) + (s/(1+s)) E(s).
  {
    BiSeries z_part = BiSeries::from_univariate_u(expo).mul(BiSeries::monomial(1, 0, Rat(1)));
    Series b = expo.mul(inv_1ps).mul(Series::x(s_order));
    BiSeries argument = z_part.add(BiSeries::from_univariate_u(b));
    if (argument.coeff(0, 0) != 0)
      throw SubstitutionIllFormed("closed-form argument has a constant term");
    BiSeries rhs = compose_univariate(cay, argument, order, s_order);
    Series tail = inv_1ps.mul(inv_1ps).scaled(Rat(1, 2));  // 1/(2(1+s)^2)
    tail[0] -= Rat(1, 2);
    rhs = rhs.add(BiSeries::from_univariate_u(tail));

    BiSeries lhs = table_side(table, order, s_order, false);
    BiSeries diff = lhs.sub(rhs).truncated(order, s_order);
    if (auto t = diff.first_nonzero()) {
      report.ok = false;
      report.detail = describe_term("vertex/edge identity:", *t);
      return report;
    }
  }

  // Identity 2 (twist variable): t Cayley(((z+t-1)/t) e^((1-t)/t)) + 1/(2t) - t/2.
  {
    Series g = expo.mul(inv_1ps);
    BiSeries z_part = BiSeries::from_univariate_u(g).mul(BiSeries::monomial(1, 0, Rat(1)));
    Series b = g.mul(Series::x(s_order));
    BiSeries argument = z_part.add(BiSeries::from_univariate_u(b));
    if (argument.coeff(0, 0) != 0)
      throw SubstitutionIllFormed("closed-form argument has a constant term");
    BiSeries rhs = compose_univariate(cay, argument, order, s_order);
    rhs = rhs.mul(BiSeries::from_univariate_u(one_plus_s));
    Series tail = inv_1ps.scaled(Rat(1, 2));  // 1/(2(1+s))
    tail[0] -= Rat(1, 2);
    if (s_order >= 1) tail[1] -= Rat(1, 2);  // -(1+s)/2
    rhs = rhs.add(BiSeries::from_univariate_u(tail));

    BiSeries lhs = table_side(table, order, s_order, true);
    BiSeries diff = lhs.sub(rhs).truncated(order, s_order);
    if (auto t = diff.first_nonzero()) {
      report.ok = false;
      report.detail = describe_term("twist identity:", *t);
      return report;
    }
  }

  report.detail = "all coefficients match";
  return report;
}

}  // namespace twistree
