#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qball {

using cplx = std::complex<double>;

struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct coincident_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct window_overflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct schema_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Immutable numeric context. p = q^2 is the base of every series in the library.
class QContext {
 public:
  explicit QContext(double q, double series_tol = 1e-15, double product_tol = 1e-16,
                    int max_terms = 500)
      : q_(q), series_tol_(series_tol), product_tol_(product_tol), max_terms_(max_terms) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
    if (!(series_tol > 0.0) || !(product_tol > 0.0))
      throw std::invalid_argument("tolerances must be positive");
    if (max_terms < 1) throw std::invalid_argument("max_terms must be >= 1");
    log_q_ = std::log(q);
    h_ = -2.0 * log_q_;
  }

  double q() const { return q_; }
  double p() const { return q_ * q_; }
  double h() const { return h_; }
  double log_q() const { return log_q_; }
  double series_tol() const { return series_tol_; }
  double product_tol() const { return product_tol_; }
  int max_terms() const { return max_terms_; }

  // q^x through the real logarithm of q, so q^{ix} = exp(i x ln q).
  cplx qpow(cplx x) const { return std::exp(x * log_q_); }
  double qpow(double x) const { return std::exp(x * log_q_); }
  // p^k for integer k, exact up to rounding of repeated products.
  double ppow(int k) const { return std::pow(p(), k); }
  long double ppowl(int k) const { return std::pow(static_cast<long double>(q_) * q_, k); }

  // Right end of the principal spectral interval [0, pi/h].
  double rho_max() const { return M_PI / h_; }

 private:
  double q_;
  double series_tol_;
  double product_tol_;
  int max_terms_;
  double log_q_;
  double h_;
};

// Neumaier compensated accumulator.
template <class Real>
struct CompensatedSum {
  Real s{0}, c{0};
  void add(Real x) {
    Real t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  Real value() const { return s + c; }
};

template <class Real>
struct CompensatedSum<std::complex<Real>> {
  CompensatedSum<Real> re, im;
  void add(std::complex<Real> x) {
    re.add(x.real());
    im.add(x.imag());
  }
  std::complex<Real> value() const { return {re.value(), im.value()}; }
};

}  // namespace qball
