#pragma once

#include <span>
#include <vector>

#include "tvw/grid.hpp"

namespace tvw::detail {

/// Log-domain application of the squared-Euclidean Gibbs kernel between two
/// grids, exploiting separability: exp(-|x-y|^2/eps) factors into two 1-D
/// kernels, so one application costs two batches of 1-D log-sum-exp sweeps.
class GibbsKernel {
 public:
  GibbsKernel(const Grid& source, const Grid& target, double eps);

  double eps() const noexcept { return eps_; }

  /// out[t] = log sum_s exp(a[s] - |x_t - x_s|^2 / eps). Entries of `a` may be
  /// -inf (zero-mass cells).
  void apply(std::span<const double> a, std::span<double> out) const;

 private:
  int snx_, sny_, tnx_, tny_;
  double eps_;
  std::vector<double> dx_;  // tnx x snx, (x_t - x_s)^2 / eps
  std::vector<double> dy_;  // tny x sny
  std::vector<double> kx_;  // exp(-dx_)
  std::vector<double> ky_;  // exp(-dy_)
  mutable std::vector<double> row_;
  mutable std::vector<double> buf1_;
  mutable std::vector<double> buf2_;
};

/// Row-wise 1-D soft-min sweep: out(r, k) = log sum_j exp(in(r, j) - d(k, j)).
void lse_rows(int rows, int in_len, int out_len, const double* in, const double* d, double* out);

/// Same result as lse_rows; `kd` holds exp(-d). Faster when the row has no
/// extreme dynamic range, with an exact log-domain fallback otherwise.
void lse_rows_scaled(int rows, int in_len, int out_len, const double* in, const double* d, const double* kd,
                     double* out, std::vector<double>& scratch);

/// exp(x) for x <= 0 with relative error ~3e-16; inputs below -700 flush to
/// a denormal-free tiny value.
double exp_nonpositive(double x);

}  // namespace tvw::detail
