#pragma once

// Truncated Fock-space realization of the self-similar shape-invariant
// algebra: q-oscillator ladders S+-, spectral ladders B+- = sqrt(R(a1)) S+-,
// the Hamiltonian, the diagonal remainder family R_j and residual checks of
// the commutation relations.
//
// Basis is |0>, ..., |N>; all operators are dense (N+1)x(N+1).

#include <map>
#include <string>

#include <Eigen/Dense>

#include "qcs/qspecial.hpp"

namespace qcs {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct ModelParams {
  double q = 0.5;
  double a1 = 1.0;
  double c = 1.0;
  /// Truncation level: basis |0> ... |N>.
  int N = 32;
  double ground_energy = 0.0;

  /// Throws InvalidParameter on 0<q<1, a1>0, c>0, N>=2 violations.
  void validate() const;
  QBase qbase() const { return QBase(q); }
  int dim() const { return N + 1; }
};

class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(Vector amplitudes);
  static FockVector basis(int dim, int n);

  int dim() const { return static_cast<int>(amps_.size()); }
  cplx operator[](int n) const { return amps_(n); }
  const Vector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  Vector amps_;
};

class TruncatedOperator {
 public:
  /// Requires a square matrix of dimension >= 3 with finite entries.
  explicit TruncatedOperator(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  TruncatedOperator adjoint() const { return TruncatedOperator(m_.adjoint()); }
  FockVector apply(const FockVector& v) const;

  friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
    return TruncatedOperator(a.m_ * b.m_);
  }

 private:
  Matrix m_;
};

struct LadderPair {
  TruncatedOperator raising;
  TruncatedOperator lowering;
};

/// R(a_k) = c a1 q^(k-1); k <= 0 uses the scaling extension a_k = q^(k-1) a1.
double r_value(int k, const ModelParams& p);

/// E_n - E0 = R(a1) [n]_q.
double excitation_energy(int n, const ModelParams& p);

/// <n+1|S+|n> = sqrt([n+1]_q); S- = S+^dagger.
LadderPair ladder_q(const ModelParams& p);

/// B+ = sqrt(R(a1)) S+, i.e. <n+1|B+|n> = sqrt(E_{n+1} - E0).
LadderPair ladder_spectral(const ModelParams& p);

/// diag(E0 + R(a1) [n]_q).
TruncatedOperator hamiltonian(const ModelParams& p);

/// diag(R(a_{n+1-j})): R_0 is the commutator [B-, B+], R_1 its shift by one.
TruncatedOperator r_operator(int j, const ModelParams& p);

/// Right inverse of B-: <n+1|B-^{-1}|n> = 1/sqrt(E_{n+1} - E0).
TruncatedOperator b_minus_inverse(const ModelParams& p);

struct ResidualReport {
  /// Relative max-norm residuals on interior indices, keyed by identity.
  std::map<std::string, double> interior;
  /// <N|S-S+ - qS+S- - 1|N>, nonzero because S+|N> = 0 in the truncation.
  double top_defect = 0.0;
  /// The exact value of that defect, -[N+1]_q.
  double top_defect_expected = 0.0;

  double max_interior() const;
};

/// Residuals of S-S+ - qS+S- = 1, [B-,B+] = R_0, [B+,R_0] = (R_1-R_0)B+,
/// the double commutator, and the Hermitian conjugates of the last two.
/// Each is max|lhs - rhs| / max(1, max|term|) over rows/cols 0..N-2
/// (0..N-3 for the double commutator). Requires N >= 4.
ResidualReport commutator_residuals(const ModelParams& p);

}  // namespace qcs
