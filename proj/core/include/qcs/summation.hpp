#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace qcs {

/// Neumaier (improved Kahan) compensated accumulator. Works for double and
/// std::complex<double>; the complex case compensates each component.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) { add_impl(x); }
  CompensatedSum& operator+=(T x) {
    add_impl(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  static void step(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  void add_impl(double x) requires std::is_same_v<T, double> { step(sum_, comp_, x); }

  void add_impl(std::complex<double> x) requires std::is_same_v<T, std::complex<double>> {
    double sr = sum_.real(), si = sum_.imag();
    double cr = comp_.real(), ci = comp_.imag();
    step(sr, cr, x.real());
    step(si, ci, x.imag());
    sum_ = {sr, si};
    comp_ = {cr, ci};
  }

  T sum_{};
  T comp_{};
};

}  // namespace qcs
