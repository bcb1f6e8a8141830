#include "qcs/fockrep.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include "qcs/errors.hpp"

namespace qcs {

void ModelParams::validate() const {
  (void)QBase{q};
  if (!std::isfinite(a1) || !(a1 > 0.0)) throw InvalidParameter("a1 must be positive");
  if (!std::isfinite(c) || !(c > 0.0)) throw InvalidParameter("c must be positive");
  if (N < 2) throw InvalidParameter("truncation level N must be >= 2");
  if (!std::isfinite(ground_energy)) throw InvalidParameter("ground energy must be finite");
}

FockVector::FockVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (!amps_.allFinite()) throw InvalidParameter("FockVector amplitudes must be finite");
}

FockVector FockVector::basis(int dim, int n) {
  if (n < 0 || n >= dim) throw InvalidParameter("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return FockVector(std::move(v));
}

TruncatedOperator::TruncatedOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidParameter("operator matrix must be square");
  if (m_.rows() < 3) throw InvalidParameter("operator dimension must be >= 3");
  if (!m_.allFinite()) throw Overflow("operator has non-finite entries");
}

FockVector TruncatedOperator::apply(const FockVector& v) const {
  if (v.dim() != dim()) throw InvalidParameter("dimension mismatch in operator application");
  return FockVector(m_ * v.amplitudes());
}

double r_value(int k, const ModelParams& p) {
  return p.c * p.a1 * std::pow(p.q, static_cast<double>(k - 1));
}

double excitation_energy(int n, const ModelParams& p) { return r_value(1, p) * q_int(n, p.qbase()); }

namespace {

Matrix raising_from(const ModelParams& p, double scale) {
  const int d = p.dim();
  Matrix m = Matrix::Zero(d, d);
  const QBase q = p.qbase();
  for (int n = 0; n + 1 < d; ++n) m(n + 1, n) = std::sqrt(scale * q_int(n + 1, q));
  return m;
}

double max_abs(const Matrix& m, int k) { return m.topLeftCorner(k, k).cwiseAbs().maxCoeff(); }

// max|lhs - rhs| / max(1, max|term|) on the leading k x k block
double relative_residual(const Matrix& lhs, const Matrix& rhs, std::initializer_list<const Matrix*> terms,
                         int k) {
  double scale = 1.0;
  for (const Matrix* t : terms) scale = std::max(scale, max_abs(*t, k));
  return max_abs(lhs - rhs, k) / scale;
}

}  // namespace

LadderPair ladder_q(const ModelParams& p) {
  p.validate();
  TruncatedOperator up(raising_from(p, 1.0));
  return {up, up.adjoint()};
}

LadderPair ladder_spectral(const ModelParams& p) {
  p.validate();
  TruncatedOperator up(raising_from(p, r_value(1, p)));
  return {up, up.adjoint()};
}

TruncatedOperator hamiltonian(const ModelParams& p) {
  p.validate();
  const int d = p.dim();
  Matrix h = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) h(n, n) = p.ground_energy + excitation_energy(n, p);
  return TruncatedOperator(std::move(h));
}

TruncatedOperator r_operator(int j, const ModelParams& p) {
  p.validate();
  const int d = p.dim();
  Matrix r = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) r(n, n) = r_value(n + 1 - j, p);
  return TruncatedOperator(std::move(r));
}

TruncatedOperator b_minus_inverse(const ModelParams& p) {
  p.validate();
  const int d = p.dim();
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; n + 1 < d; ++n) m(n + 1, n) = 1.0 / std::sqrt(excitation_energy(n + 1, p));
  return TruncatedOperator(std::move(m));
}

double ResidualReport::max_interior() const {
  double worst = 0.0;
  for (const auto& [name, value] : interior) worst = std::max(worst, value);
  return worst;
}

ResidualReport commutator_residuals(const ModelParams& p) {
  p.validate();
  if (p.N < 4) throw InvalidParameter("commutator_residuals requires N >= 4");
  const int d = p.dim();
  const int inner = d - 1;   // rows/cols 0..N-2
  const int inner2 = d - 2;  // rows/cols 0..N-3

  const auto s = ladder_q(p);
  const auto b = ladder_spectral(p);
  const Matrix& sp = s.raising.matrix();
  const Matrix& sm = s.lowering.matrix();
  const Matrix& bp = b.raising.matrix();
  const Matrix& bm = b.lowering.matrix();
  const Matrix r0 = r_operator(0, p).matrix();
  const Matrix r1 = r_operator(1, p).matrix();
  const Matrix r2 = r_operator(2, p).matrix();
  const Matrix id = Matrix::Identity(d, d);

  ResidualReport report;

  // S-S+ - q S+S- = 1
  const Matrix smsp = sm * sp;
  const Matrix qspsm = p.q * (sp * sm);
  report.interior["q_oscillator"] = relative_residual(smsp - qspsm, id, {&smsp, &qspsm}, inner);
  report.top_defect = (smsp - qspsm - id)(d - 1, d - 1).real();
  report.top_defect_expected = -q_int(d, p.qbase());

  // [B-, B+] = R_0
  const Matrix bmbp = bm * bp;
  const Matrix bpbm = bp * bm;
  report.interior["bminus_bplus"] = relative_residual(bmbp - bpbm, r0, {&bmbp, &bpbm, &r0}, inner);

  // [B+, R_0] = (R_1 - R_0) B+
  const Matrix d1 = r1 - r0;
  const Matrix bpr0 = bp * r0;
  const Matrix r0bp = r0 * bp;
  const Matrix d1bp = d1 * bp;
  report.interior["bplus_r0"] = relative_residual(bpr0 - r0bp, d1bp, {&bpr0, &r0bp, &d1bp}, inner);

  // [B+, (R_1 - R_0) B+] = ((R_2 - R_1) - (R_1 - R_0)) B+^2
  const Matrix d2 = (r2 - r1) - d1;
  const Matrix x1 = bp * d1bp;
  const Matrix x2 = d1bp * bp;
  const Matrix rhs4 = d2 * bp * bp;
  report.interior["bplus_double"] = relative_residual(x1 - x2, rhs4, {&x1, &x2, &rhs4}, inner2);

  // conjugates: [R_0, B-] = B-(R_1 - R_0) and [B- (R_1-R_0), B-] = B-^2 ((R_2-R_1)-(R_1-R_0))
  const Matrix r0bm = r0 * bm;
  const Matrix bmr0 = bm * r0;
  const Matrix bmd1 = bm * d1;
  report.interior["bplus_r0_adjoint"] =
      relative_residual(r0bm - bmr0, bmd1, {&r0bm, &bmr0, &bmd1}, inner);

  const Matrix y1 = bmd1 * bm;
  const Matrix y2 = bm * bmd1;
  const Matrix rhs5 = bm * bm * d2;
  report.interior["bplus_double_adjoint"] = relative_residual(y1 - y2, rhs5, {&y1, &y2, &rhs5}, inner2);

  return report;
}

}  // namespace qcs
