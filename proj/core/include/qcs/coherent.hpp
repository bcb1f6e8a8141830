#pragma once

// Coherent states of the shape-invariant ladder.
//
// Two ladder normalizations coexist and every function below says which one
// it uses:
//   spectral convention  <n+1|B+|n> = sqrt(E_{n+1} - E0)            (fockrep)
//   coherent convention  <n-1|B-|n> = lambda_n = sqrt(d_n / d_{n-1}),
//                        d_n = prod_{m=1..n} sigma_{m,n},
//                        sigma_{m,n} = R(a_m) + ... + R(a_n).
// For the q-scaling remainder the two differ by q^((n-1)/2) per step, i.e. by
// q^(n(n-1)/4) cumulatively at level n.

#include <functional>
#include <string>
#include <vector>

#include "qcs/fockrep.hpp"
#include "qcs/qspecial.hpp"

namespace qcs {

enum class FunctionalKind { unit, linear, power };

/// f[R] applied to remainder values: 1, R, or R^p.
struct FunctionalSelector {
  FunctionalKind kind = FunctionalKind::unit;
  double exponent = 1.0;

  static FunctionalSelector unit() { return {FunctionalKind::unit, 1.0}; }
  static FunctionalSelector linear() { return {FunctionalKind::linear, 1.0}; }
  static FunctionalSelector power(double p);

  double operator()(double r) const;
  std::string name() const;
};

/// k -> R(a_k) for k >= 1. Must stay positive: an infinite tower is assumed.
using RemainderSequence = std::function<double(int)>;
using Functional = std::function<double(double)>;

RemainderSequence scaling_remainder(const ModelParams& p);

struct CoherentSpec {
  cplx label{0.0, 0.0};
  FunctionalSelector f{};
  ModelParams params{};
};

/// sigma_{m,n} = sum_{k=m..n} R(a_k), 1 <= m <= n.
double reversed_partial_sum(int m, int n, const ModelParams& p);
double reversed_partial_sum(int m, int n, const RemainderSequence& r);

/// lambda_1 .. lambda_N of the coherent-convention lowering operator
/// (index 0 of the result is unused and set to 0).
std::vector<double> coherent_lowering_amplitudes(const RemainderSequence& r, int N);

/// Coherent-convention B- as a dense (N+1)x(N+1) matrix.
TruncatedOperator coherent_lowering(const RemainderSequence& r, int N);

/// c_n = z^n prod_{k<=n} f[R(a_k)] / sqrt(d_n), built by the recurrence
/// c_n = c_{n-1} z f[R(a_n)] / lambda_n. Throws Overflow on non-finite output.
FockVector coherent_coeffs_general(const CoherentSpec& s, int N);
FockVector coherent_coeffs_general(cplx z, const Functional& f, const RemainderSequence& r, int N);

/// d c_n / dz = n z^(n-1) prod f / sqrt(d_n); well defined at z = 0.
FockVector coherent_coeffs_derivative(cplx z, const Functional& f, const RemainderSequence& r, int N);

/// q-closed form q^(n(n+1)/4) zeta^n / sqrt((q;q)_n).
FockVector coherent_coeffs_q(cplx zeta, QBase q, int N);

/// zeta = sqrt((1-q)/q) sqrt(R(a1)) z.
cplx zeta_from_z(cplx z, const ModelParams& p);

/// <zeta|zeta> = sum_n q^(n(n+1)/2) |zeta|^(2n) / (q;q)_n, summed directly.
double norm_sq(cplx zeta, QBase q, const SeriesTolerance& tol = {});

/// Smallest N with sum_{n>N} |c_n|^2 < eps * norm_sq(zeta).
int truncation_level(cplx zeta, QBase q, double eps);

/// ||B-|z> - z D_f |z>|| / |||z>|| in the coherent convention, where
/// D_f = diag(f[R(a_{n+1})]). The top two levels are excluded.
double eigen_residual(const CoherentSpec& s, int N);
double eigen_residual(cplx z, const Functional& f, const RemainderSequence& r, int N);

/// ||(B- - z D_f) d|z>/dz - D_f |z>|| / |||z>||, interior levels only.
double derivative_condition_residual(const CoherentSpec& s, int N);
double derivative_condition_residual(cplx z, const Functional& f, const RemainderSequence& r, int N);

/// E_q^(1/4)(x B+)|0> with x = (1-q) q^(-1/4) z, summed through level N.
/// With the spectral raising operator this reproduces coherent_coeffs_q at
/// zeta_from_z(z); with the coherent-convention one each level picks up an
/// extra q^(n(n-1)/4).
FockVector generalized_exponential_state(cplx z, const ModelParams& p, const TruncatedOperator& raising);

}  // namespace qcs
