#include "qcs/coherent.hpp"

#include <cmath>
#include <string>

#include "qcs/errors.hpp"
#include "qcs/summation.hpp"

namespace qcs {

FunctionalSelector FunctionalSelector::power(double p) {
  if (!std::isfinite(p)) throw InvalidParameter("power functional exponent must be finite");
  return {FunctionalKind::power, p};
}

double FunctionalSelector::operator()(double r) const {
  switch (kind) {
    case FunctionalKind::unit:
      return 1.0;
    case FunctionalKind::linear:
      return r;
    case FunctionalKind::power:
      return std::pow(r, exponent);
  }
  return 1.0;
}

std::string FunctionalSelector::name() const {
  switch (kind) {
    case FunctionalKind::unit:
      return "unit";
    case FunctionalKind::linear:
      return "linear";
    case FunctionalKind::power:
      return "power(" + std::to_string(exponent) + ")";
  }
  return "unknown";
}

RemainderSequence scaling_remainder(const ModelParams& p) {
  p.validate();
  return [p](int k) { return r_value(k, p); };
}

namespace {

double checked_remainder(const RemainderSequence& r, int k) {
  const double v = r(k);
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidParameter("remainder R(a_" + std::to_string(k) +
                           ") is not positive; finite bound-state towers are not supported");
  }
  return v;
}

void check_level(int N) {
  if (N < 0) throw InvalidParameter("truncation level must be >= 0");
}

}  // namespace

double reversed_partial_sum(int m, int n, const RemainderSequence& r) {
  if (m < 1 || m > n) throw InvalidParameter("reversed_partial_sum requires 1 <= m <= n");
  CompensatedSum<double> s;
  for (int k = m; k <= n; ++k) s += checked_remainder(r, k);
  return s.value();
}

double reversed_partial_sum(int m, int n, const ModelParams& p) {
  return reversed_partial_sum(m, n, scaling_remainder(p));
}

std::vector<double> coherent_lowering_amplitudes(const RemainderSequence& r, int N) {
  check_level(N);
  std::vector<double> lambda(static_cast<std::size_t>(N) + 1, 0.0);
  // sigma[m] holds sigma_{m,n-1} while lambda_n is formed
  std::vector<double> sigma(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    const double rn = checked_remainder(r, n);
    // d_n / d_{n-1} = R(a_n) prod_{m<n} sigma_{m,n} / sigma_{m,n-1}
    double ratio = rn;
    for (int m = 1; m < n; ++m) {
      const double next = sigma[m] + rn;
      ratio *= next / sigma[m];
      sigma[m] = next;
    }
    sigma[n] = rn;
    lambda[n] = std::sqrt(ratio);
  }
  return lambda;
}

TruncatedOperator coherent_lowering(const RemainderSequence& r, int N) {
  const auto lambda = coherent_lowering_amplitudes(r, N);
  Matrix m = Matrix::Zero(N + 1, N + 1);
  for (int n = 1; n <= N; ++n) m(n - 1, n) = lambda[n];
  return TruncatedOperator(std::move(m));
}

FockVector coherent_coeffs_general(cplx z, const Functional& f, const RemainderSequence& r, int N) {
  const auto lambda = coherent_lowering_amplitudes(r, N);
  Vector c = Vector::Zero(N + 1);
  c(0) = 1.0;
  for (int n = 1; n <= N; ++n) {
    c(n) = c(n - 1) * z * f(r(n)) / lambda[n];
    if (!std::isfinite(c(n).real()) || !std::isfinite(c(n).imag())) {
      throw Overflow("coherent coefficient at level " + std::to_string(n) + " is not representable");
    }
  }
  return FockVector(std::move(c));
}

FockVector coherent_coeffs_general(const CoherentSpec& s, int N) {
  return coherent_coeffs_general(s.label, s.f, scaling_remainder(s.params), N);
}

FockVector coherent_coeffs_derivative(cplx z, const Functional& f, const RemainderSequence& r, int N) {
  const auto lambda = coherent_lowering_amplitudes(r, N);
  Vector d = Vector::Zero(N + 1);
  // p_n = z^(n-1) prod f / sqrt(d_n); derivative is n p_n
  cplx p{1.0};
  for (int n = 1; n <= N; ++n) {
    p = (n == 1 ? cplx{1.0} : p * z) * f(r(n)) / lambda[n];
    d(n) = static_cast<double>(n) * p;
    if (!std::isfinite(d(n).real()) || !std::isfinite(d(n).imag())) {
      throw Overflow("coherent derivative at level " + std::to_string(n) + " is not representable");
    }
  }
  return FockVector(std::move(d));
}

FockVector coherent_coeffs_q(cplx zeta, QBase q, int N) {
  check_level(N);
  Vector c = Vector::Zero(N + 1);
  c(0) = 1.0;
  // c_n / c_{n-1} = q^(n/2) zeta / sqrt(1 - q^n)
  for (int n = 1; n <= N; ++n) {
    const double one_minus = -std::expm1(n * q.log());
    c(n) = c(n - 1) * zeta * q.pow(0.5 * n) / std::sqrt(one_minus);
  }
  return FockVector(std::move(c));
}

cplx zeta_from_z(cplx z, const ModelParams& p) {
  p.validate();
  return std::sqrt((1.0 - p.q) / p.q) * std::sqrt(r_value(1, p)) * z;
}

double norm_sq(cplx zeta, QBase q, const SeriesTolerance& tol) {
  tol.validate();
  const double x = std::norm(zeta);
  // t_{n+1} / t_n = q^(n+1) |zeta|^2 / (1 - q^(n+1)), non-increasing in n
  auto ratio = [&](std::size_t n) {
    const double k = static_cast<double>(n + 1);
    return q.pow(k) * x / -std::expm1(k * q.log());
  };
  CompensatedSum<double> sum;
  sum += 1.0;
  double term = 1.0;
  for (std::size_t n = 0; n < tol.max_terms; ++n) {
    term *= ratio(n);
    sum += term;
    const double r = ratio(n + 1);
    if (r < 1.0 && term * r / (1.0 - r) <= tol.rel_tol * sum.value()) return sum.value();
  }
  throw NonConvergent("norm series did not converge within " + std::to_string(tol.max_terms) +
                      " terms");
}

int truncation_level(cplx zeta, QBase q, double eps) {
  if (!(eps > 0.0)) throw InvalidParameter("truncation_level requires eps > 0");
  const double total = norm_sq(zeta, q);
  const double x = std::norm(zeta);
  auto ratio = [&](int n) {  // t_n / t_{n-1}
    return q.pow(n) * x / -std::expm1(n * q.log());
  };
  double term = 1.0;  // t_N
  for (int N = 0; N < 100000; ++N) {
    const double next = term * ratio(N + 1);
    const double r = ratio(N + 2);
    if (r < 1.0 && next / (1.0 - r) < eps * total) return N;
    term = next;
  }
  throw NonConvergent("truncation_level scan exhausted");
}

double eigen_residual(cplx z, const Functional& f, const RemainderSequence& r, int N) {
  if (N < 3) throw InvalidParameter("eigen_residual requires N >= 3");
  const FockVector state = coherent_coeffs_general(z, f, r, N);
  const Vector lowered = coherent_lowering(r, N).apply(state).amplitudes();
  Vector defect = lowered;
  for (int n = 0; n <= N; ++n) defect(n) -= z * f(r(n + 1)) * state[n];
  return defect.head(N - 1).norm() / state.norm();
}

double eigen_residual(const CoherentSpec& s, int N) {
  return eigen_residual(s.label, s.f, scaling_remainder(s.params), N);
}

double derivative_condition_residual(cplx z, const Functional& f, const RemainderSequence& r, int N) {
  if (N < 3) throw InvalidParameter("derivative_condition_residual requires N >= 3");
  const FockVector state = coherent_coeffs_general(z, f, r, N);
  const FockVector deriv = coherent_coeffs_derivative(z, f, r, N);
  const Vector lowered = coherent_lowering(r, N).apply(deriv).amplitudes();
  Vector defect = lowered;
  for (int n = 0; n <= N; ++n) {
    const double fn = f(r(n + 1));
    defect(n) -= z * fn * deriv[n] + fn * state[n];
  }
  return defect.head(N - 1).norm() / state.norm();
}

double derivative_condition_residual(const CoherentSpec& s, int N) {
  return derivative_condition_residual(s.label, s.f, scaling_remainder(s.params), N);
}

FockVector generalized_exponential_state(cplx z, const ModelParams& p, const TruncatedOperator& raising) {
  p.validate();
  const QBase q = p.qbase();
  const int d = raising.dim();
  const cplx x = (1.0 - p.q) * q.pow(-0.25) * z;

  Vector power = Vector::Zero(d);  // (x B+)^n |0>
  power(0) = 1.0;
  Vector state = power;
  double weight = 1.0;  // q^(n^2/4) / (q;q)_n
  for (int n = 1; n < d; ++n) {
    power = x * (raising.matrix() * power);
    weight *= q.pow(0.25 * (2 * n - 1)) / -std::expm1(n * q.log());
    state += weight * power;
  }
  return FockVector(std::move(state));
}

}  // namespace qcs
