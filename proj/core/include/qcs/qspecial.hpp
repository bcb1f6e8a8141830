#pragma once

// Scalar q-series primitives: q-shifted factorials, q-integers, the
// generalized q-exponential E_q^(mu) and the closed form of Ramanujan's
// moment integral. Everything here is a pure function of its arguments.

#include <complex>
#include <cstddef>

namespace qcs {

using cplx = std::complex<double>;

/// Truncation control for infinite products and series.
struct SeriesTolerance {
  double rel_tol = 1e-12;
  std::size_t max_terms = 100000;

  /// Throws InvalidParameter unless 0 < rel_tol < 1 and max_terms >= 1.
  void validate() const;
};

/// Deformation parameter, restricted to the open interval (0, 1).
class QBase {
 public:
  /// Throws InvalidParameter for q outside (0, 1) or non-finite q.
  explicit QBase(double q);

  double value() const noexcept { return q_; }
  /// log(q) < 0, computed as log1p(q - 1) so it stays accurate near q = 1.
  double log() const noexcept { return log_q_; }
  /// q^x for real x.
  double pow(double x) const noexcept;

 private:
  double q_;
  double log_q_;
};

/// (z; q)_n = prod_{j<n} (1 - z q^j). n = 0 gives exactly 1.
cplx pochhammer_n(cplx z, QBase q, int n);
double pochhammer_n(double z, QBase q, int n);

/// Truncated infinite product together with its a-priori error bound.
template <typename T>
struct ProductEstimate {
  T value;
  /// expm1(w / ((1-q)(1-w))) with w = |z| q^J: bounds |value/exact - 1|.
  double rel_err_bound;
  /// Number of factors J actually multiplied.
  std::size_t terms;
};

/// (z; q)_inf truncated at the first J with |z| q^J < rel_tol (1 - q).
/// Throws NonConvergent if J would exceed tol.max_terms.
ProductEstimate<cplx> pochhammer_inf_estimate(cplx z, QBase q, const SeriesTolerance& tol = {});
ProductEstimate<double> pochhammer_inf_estimate(double z, QBase q, const SeriesTolerance& tol = {});

cplx pochhammer_inf(cplx z, QBase q, const SeriesTolerance& tol = {});
double pochhammer_inf(double z, QBase q, const SeriesTolerance& tol = {});

/// Index J at which pochhammer_inf truncates for |z| = abs_z.
std::size_t pochhammer_inf_terms(double abs_z, QBase q, double rel_tol);

/// q-integer [n]_q = (1 - q^n)/(1 - q); requires n >= 0.
double q_int(int n, QBase q);

/// Generalized q-exponential E_q^(mu)(x) = sum_n q^(mu n^2) x^n / (q;q)_n.
///
/// Terms are generated by the ratio t_{n+1}/t_n = q^(mu(2n+1)) x / (1 - q^(n+1)),
/// whose modulus is non-increasing in n for mu >= 0. Summation stops once the
/// geometric tail bound |t_{n+1}| / (1 - r) falls below rel_tol times the
/// partial sum. Requires mu > 0, or mu == 0 with |x| < 1.
/// Rounding adds a relative error of order eps * E(|x|) / |E(x)|, which is
/// large for alternating series (x < 0) near the radius of convergence.
cplx q_exp(double mu, QBase q, cplx x, const SeriesTolerance& tol = {});

/// Ramanujan's moment in closed form: (q;q)_n q^(-n(n+1)/2) (-log q).
/// Throws Overflow when the value exceeds the double range.
double ramanujan_closed_form(int n, QBase q);

}  // namespace qcs
