#include "qcs/qspecial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcs/errors.hpp"
#include "qcs/summation.hpp"

namespace qcs {

void SeriesTolerance::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw InvalidParameter("series rel_tol must lie in (0,1), got " + std::to_string(rel_tol));
  }
  if (max_terms < 1) {
    throw InvalidParameter("series max_terms must be >= 1");
  }
}

QBase::QBase(double q) : q_(q), log_q_(0.0) {
  if (!std::isfinite(q) || !(q > 0.0 && q < 1.0)) {
    throw InvalidParameter("q must lie in the open interval (0,1), got " + std::to_string(q));
  }
  log_q_ = std::log1p(q - 1.0);
}

double QBase::pow(double x) const noexcept { return std::pow(q_, x); }

namespace {

template <typename T>
T finite_product(T z, QBase q, std::size_t n) {
  T prod{1.0};
  double qj = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    prod *= (T{1.0} - z * qj);
    qj *= q.value();
  }
  return prod;
}

template <typename T>
ProductEstimate<T> infinite_product(T z, QBase q, const SeriesTolerance& tol) {
  tol.validate();
  const double az = std::abs(z);
  const std::size_t terms = pochhammer_inf_terms(az, q, tol.rel_tol);
  if (terms > tol.max_terms) {
    throw NonConvergent("(z;q)_inf needs " + std::to_string(terms) + " factors, budget is " +
                        std::to_string(tol.max_terms));
  }
  const T value = finite_product(z, q, terms);
  // |1/prod_{j>=J}(1 - z q^j) - 1| <= expm1(sum_j w_j / (1 - w_j)), w_j = |z| q^j
  const double lead = az * q.pow(static_cast<double>(terms));
  const double tail = lead / ((1.0 - q.value()) * (1.0 - lead));
  return {value, std::expm1(tail), terms};
}

}  // namespace

std::size_t pochhammer_inf_terms(double abs_z, QBase q, double rel_tol) {
  const double threshold = rel_tol * (1.0 - q.value());
  if (abs_z < threshold) return 0;
  // smallest J with abs_z q^J < threshold
  double j = std::ceil(std::log(threshold / abs_z) / q.log());
  if (!std::isfinite(j) || j > 1e15) return std::numeric_limits<std::size_t>::max();
  auto terms = static_cast<std::size_t>(std::max(j, 0.0));
  while (abs_z * q.pow(static_cast<double>(terms)) >= threshold) ++terms;
  while (terms > 0 && abs_z * q.pow(static_cast<double>(terms - 1)) < threshold) --terms;
  return terms;
}

cplx pochhammer_n(cplx z, QBase q, int n) {
  if (n < 0) throw InvalidParameter("pochhammer_n requires n >= 0");
  return finite_product(z, q, static_cast<std::size_t>(n));
}

double pochhammer_n(double z, QBase q, int n) {
  if (n < 0) throw InvalidParameter("pochhammer_n requires n >= 0");
  return finite_product(z, q, static_cast<std::size_t>(n));
}

ProductEstimate<cplx> pochhammer_inf_estimate(cplx z, QBase q, const SeriesTolerance& tol) {
  return infinite_product(z, q, tol);
}

ProductEstimate<double> pochhammer_inf_estimate(double z, QBase q, const SeriesTolerance& tol) {
  return infinite_product(z, q, tol);
}

cplx pochhammer_inf(cplx z, QBase q, const SeriesTolerance& tol) {
  return infinite_product(z, q, tol).value;
}

double pochhammer_inf(double z, QBase q, const SeriesTolerance& tol) {
  return infinite_product(z, q, tol).value;
}

double q_int(int n, QBase q) {
  if (n < 0) throw InvalidParameter("q_int requires n >= 0");
  if (n == 0) return 0.0;
  // 1 - q^n via expm1 keeps full precision as q -> 1.
  return -std::expm1(n * q.log()) / (1.0 - q.value());
}

cplx q_exp(double mu, QBase q, cplx x, const SeriesTolerance& tol) {
  tol.validate();
  if (!std::isfinite(mu) || mu < 0.0) {
    throw InvalidParameter("q_exp requires mu >= 0");
  }
  if (mu == 0.0 && std::abs(x) >= 1.0) {
    throw NonConvergent("q_exp with mu = 0 diverges for |x| >= 1");
  }
  const double lq = q.log();
  // |t_{k+1}/t_k| for the step k -> k+1
  auto ratio = [&](std::size_t k) {
    const double num = std::exp(mu * static_cast<double>(2 * k + 1) * lq);
    const double den = -std::expm1(static_cast<double>(k + 1) * lq);
    return num / den;
  };

  CompensatedSum<cplx> sum;
  sum += cplx{1.0};
  cplx term{1.0};
  for (std::size_t k = 0; k < tol.max_terms; ++k) {
    term *= x * ratio(k);
    sum += term;
    const double r = std::abs(x) * ratio(k + 1);
    if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= tol.rel_tol * std::abs(sum.value())) {
      return sum.value();
    }
  }
  throw NonConvergent("q_exp did not converge within " + std::to_string(tol.max_terms) + " terms");
}

double ramanujan_closed_form(int n, QBase q) {
  if (n < 0) throw InvalidParameter("ramanujan_closed_form requires n >= 0");
  const double half_tri = 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);
  const double value = pochhammer_n(q.value(), q, n) * q.pow(-half_tri) * (-q.log());
  if (!std::isfinite(value)) {
    throw Overflow("Ramanujan moment n = " + std::to_string(n) + " exceeds the double range");
  }
  return value;
}

}  // namespace qcs
