#include "gibbs_kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace tvw::detail {

namespace {

// Range reduction x = k ln2 + r, |r| <= ln2/2, then a degree-13 Taylor
// polynomial. Written branch-free so the sweeps below vectorise.
inline double fast_exp_nonpositive(double x) {
  x = std::max(x, -700.0);
  constexpr double kMagic = 6755399441055744.0;  // 1.5 * 2^52
  const double t = x * 1.4426950408889634 + kMagic;
  const double k = t - kMagic;
  double r = x - k * 6.93147180369123816490e-01;
  r = r - k * 1.90821492927058770002e-10;
  double p = 1.0 / 6227020800.0;
  p = p * r + 1.0 / 479001600.0;
  p = p * r + 1.0 / 39916800.0;
  p = p * r + 1.0 / 3628800.0;
  p = p * r + 1.0 / 362880.0;
  p = p * r + 1.0 / 40320.0;
  p = p * r + 1.0 / 5040.0;
  p = p * r + 1.0 / 720.0;
  p = p * r + 1.0 / 120.0;
  p = p * r + 1.0 / 24.0;
  p = p * r + 1.0 / 6.0;
  p = p * r + 0.5;
  p = p * r + 1.0;
  p = p * r + 1.0;
  const std::int64_t ki = std::bit_cast<std::int64_t>(t) - std::bit_cast<std::int64_t>(kMagic);
  return p * std::bit_cast<double>((ki + 1023) << 52);
}

void transpose(int rows, int cols, const double* in, double* out) {
  constexpr int kBlock = 16;
  for (int r0 = 0; r0 < rows; r0 += kBlock) {
    for (int c0 = 0; c0 < cols; c0 += kBlock) {
      const int r1 = std::min(rows, r0 + kBlock);
      const int c1 = std::min(cols, c0 + kBlock);
      for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) out[static_cast<std::size_t>(c) * rows + r] = in[static_cast<std::size_t>(r) * cols + c];
      }
    }
  }
}

}  // namespace

double exp_nonpositive(double x) { return fast_exp_nonpositive(x); }

void lse_rows(int rows, int in_len, int out_len, const double* in, const double* d, double* out) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < rows; ++r) {
    const double* row = in + static_cast<std::size_t>(r) * in_len;
    double* orow = out + static_cast<std::size_t>(r) * out_len;
    for (int k = 0; k < out_len; ++k) {
      const double* dk = d + static_cast<std::size_t>(k) * in_len;
      double mx = kNegInf;
#pragma omp simd reduction(max : mx)
      for (int j = 0; j < in_len; ++j) mx = std::max(mx, row[j] - dk[j]);
      if (mx == kNegInf) {
        orow[k] = kNegInf;
        continue;
      }
      double s = 0.0;
#pragma omp simd reduction(+ : s)
      for (int j = 0; j < in_len; ++j) s += fast_exp_nonpositive(row[j] - dk[j] - mx);
      orow[k] = mx + std::log(s);
    }
  }
}

void lse_rows_scaled(int rows, int in_len, int out_len, const double* in, const double* d, const double* kd,
                     double* out, std::vector<double>& scratch) {
  // Exponentials are taken once per row against the row maximum and the sum
  // becomes a product with the precomputed kernel. Products of positive
  // numbers keep full relative precision unless they underflow; outputs whose
  // sum falls below kTiny may have lost terms and are recomputed in the log
  // domain.
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  constexpr double kTiny = 1e-250;
  scratch.resize(static_cast<std::size_t>(in_len));
  double* e = scratch.data();
  for (int r = 0; r < rows; ++r) {
    const double* row = in + static_cast<std::size_t>(r) * in_len;
    double* orow = out + static_cast<std::size_t>(r) * out_len;
    double mr = kNegInf;
#pragma omp simd reduction(max : mr)
    for (int j = 0; j < in_len; ++j) mr = std::max(mr, row[j]);
    if (mr == kNegInf) {
      std::fill(orow, orow + out_len, kNegInf);
      continue;
    }
    for (int j = 0; j < in_len; ++j) e[j] = row[j] == kNegInf ? 0.0 : fast_exp_nonpositive(row[j] - mr);
    for (int k = 0; k < out_len; ++k) {
      const double* kk = kd + static_cast<std::size_t>(k) * in_len;
      double s = 0.0;
#pragma omp simd reduction(+ : s)
      for (int j = 0; j < in_len; ++j) s += e[j] * kk[j];
      if (s >= kTiny) {
        orow[k] = mr + std::log(s);
      } else {
        lse_rows(1, in_len, 1, row, d + static_cast<std::size_t>(k) * in_len, orow + k);
      }
    }
  }
}

GibbsKernel::GibbsKernel(const Grid& source, const Grid& target, double eps)
    : snx_(source.nx()), sny_(source.ny()), tnx_(target.nx()), tny_(target.ny()), eps_(eps) {
  if (!(eps > 0.0)) throw InvalidArgument("GibbsKernel: eps must be positive");
  const auto sx = source.x_coords();
  const auto sy = source.y_coords();
  const auto tx = target.x_coords();
  const auto ty = target.y_coords();
  dx_.resize(static_cast<std::size_t>(tnx_) * snx_);
  dy_.resize(static_cast<std::size_t>(tny_) * sny_);
  for (int k = 0; k < tnx_; ++k) {
    for (int j = 0; j < snx_; ++j) {
      const double d = tx[k] - sx[j];
      dx_[static_cast<std::size_t>(k) * snx_ + j] = d * d / eps;
    }
  }
  for (int k = 0; k < tny_; ++k) {
    for (int j = 0; j < sny_; ++j) {
      const double d = ty[k] - sy[j];
      dy_[static_cast<std::size_t>(k) * sny_ + j] = d * d / eps;
    }
  }
  kx_.resize(dx_.size());
  ky_.resize(dy_.size());
  for (std::size_t i = 0; i < dx_.size(); ++i) kx_[i] = std::exp(-dx_[i]);
  for (std::size_t i = 0; i < dy_.size(); ++i) ky_[i] = std::exp(-dy_[i]);
}

void GibbsKernel::apply(std::span<const double> a, std::span<double> out) const {
  // a is sny x snx (row = y index). Sweep along x, transpose, sweep along y.
  buf1_.resize(static_cast<std::size_t>(sny_) * tnx_);
  buf2_.resize(static_cast<std::size_t>(sny_) * tnx_);
  lse_rows_scaled(sny_, snx_, tnx_, a.data(), dx_.data(), kx_.data(), buf1_.data(), row_);
  transpose(sny_, tnx_, buf1_.data(), buf2_.data());  // now tnx x sny
  buf1_.resize(static_cast<std::size_t>(tnx_) * tny_);
  lse_rows_scaled(tnx_, sny_, tny_, buf2_.data(), dy_.data(), ky_.data(), buf1_.data(), row_);  // tnx x tny
  transpose(tnx_, tny_, buf1_.data(), out.data());
}

}  // namespace tvw::detail
