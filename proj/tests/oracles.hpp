#pragma once

// Independent reference solvers used to validate the library. None of them
// calls into the code under test beyond plain data types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// Forward differences with zero extension on the (nx+1) x (ny+1) extended
/// index set; returns (gx, gy) in physical units.
inline void grad(const std::vector<double>& u, int nx, int ny, double h, std::vector<double>& gx,
                 std::vector<double>& gy) {
  const int ex = nx + 1;
  gx.assign(static_cast<std::size_t>(ex) * (ny + 1), 0.0);
  gy.assign(gx.size(), 0.0);
  const auto at = [&](int i, int j) {
    return (i < 0 || j < 0 || i >= nx || j >= ny) ? 0.0 : u[static_cast<std::size_t>(j) * nx + i];
  };
  for (int j = -1; j < ny; ++j) {
    for (int i = -1; i < nx; ++i) {
      const std::size_t e = static_cast<std::size_t>(j + 1) * ex + (i + 1);
      gx[e] = (at(i + 1, j) - at(i, j)) / h;
      gy[e] = (at(i, j + 1) - at(i, j)) / h;
    }
  }
}

/// Negative adjoint of grad with respect to sum-over-cells inner products.
inline std::vector<double> div(const std::vector<double>& px, const std::vector<double>& py, int nx, int ny,
                               double h) {
  const int ex = nx + 1;
  std::vector<double> out(static_cast<std::size_t>(nx) * ny, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t e = static_cast<std::size_t>(j + 1) * ex + (i + 1);
      const std::size_t w = e - 1;
      const std::size_t s = e - ex;
      out[static_cast<std::size_t>(j) * nx + i] = (px[e] - px[w] + py[e] - py[s]) / h;
    }
  }
  return out;
}

inline double tv(const std::vector<double>& u, int nx, int ny, double h) {
  std::vector<double> gx, gy;
  grad(u, nx, ny, h, gx, gy);
  double s = 0.0;
  for (std::size_t e = 0; e < gx.size(); ++e) s += std::hypot(gx[e], gy[e]);
  return s * h * h;
}

/// ROF by accelerated primal-dual hybrid gradient (strongly convex variant),
/// optionally with the constraint u >= 0.
///   min_u  sum |D u| + 1 / (2 lambda) sum (u - g)^2   [ + indicator(u >= 0) ]
/// (the cell-area factor h^2 divided out). The step-size schedule restarts
/// from the current point every `period` iterations.
inline std::vector<double> rof_pdhg(const std::vector<double>& g, int nx, int ny, double h, double lambda,
                                    bool nonneg, int iterations, int period = 8000) {
  const double L = std::sqrt(8.0) / h;  // |D| with the 1/h factor
  const double mu = 1.0 / lambda;
  double tau = 1.0 / L;
  double sigma = 1.0 / L;
  std::vector<double> u = g;
  if (nonneg) {
    for (double& v : u) v = std::max(v, 0.0);
  }
  std::vector<double> ubar = u;
  std::vector<double> px((nx + 1) * (ny + 1), 0.0), py(px.size(), 0.0);
  std::vector<double> gx, gy;
  for (int it = 0; it < iterations; ++it) {
    if (period > 0 && it > 0 && it % period == 0) {
      tau = 1.0 / L;
      sigma = 1.0 / L;
      ubar = u;
    }
    grad(ubar, nx, ny, h, gx, gy);
    for (std::size_t e = 0; e < px.size(); ++e) {
      const double ax = px[e] + sigma * gx[e];
      const double ay = py[e] + sigma * gy[e];
      const double nrm = std::hypot(ax, ay);
      const double scale = nrm > 1.0 ? 1.0 / nrm : 1.0;
      px[e] = ax * scale;
      py[e] = ay * scale;
    }
    const std::vector<double> d = div(px, py, nx, ny, h);
    const std::vector<double> uold = u;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double v = u[k] + tau * d[k];
      u[k] = (v + tau * mu * g[k]) / (1.0 + tau * mu);
      if (nonneg) u[k] = std::max(u[k], 0.0);
    }
    const double theta = 1.0 / std::sqrt(1.0 + 2.0 * mu * tau);
    tau *= theta;
    sigma /= theta;
    for (std::size_t k = 0; k < u.size(); ++k) ubar[k] = u[k] + theta * (u[k] - uold[k]);
  }
  return u;
}

inline double l2(const std::vector<double>& a, double h) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s * h * h);
}

inline double l2_diff(const std::vector<double>& a, const std::vector<double>& b, double h) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s * h * h);
}

/// Weighted 2-D point.
struct WPoint {
  double x, y, m;
};

/// W2^2 between equal-count, equal-weight point sets by brute force over all
/// permutations (n <= 8).
inline double w2_assignment_bruteforce(const std::vector<WPoint>& a, const std::vector<WPoint>& b) {
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double dx = a[i].x - b[perm[i]].x;
      const double dy = a[i].y - b[perm[i]].y;
      c += a[i].m * (dx * dx + dy * dy);
    }
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// W2^2 between weighted point sets on a line (y ignored) by the monotone
/// (quantile) coupling.
inline double w2_1d(std::vector<WPoint> a, std::vector<WPoint> b) {
  const auto by_x = [](const WPoint& p, const WPoint& q) { return p.x < q.x; };
  std::sort(a.begin(), a.end(), by_x);
  std::sort(b.begin(), b.end(), by_x);
  std::size_t i = 0, j = 0;
  double ra = a[0].m, rb = b[0].m, cost = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(ra, rb);
    cost += t * (a[i].x - b[j].x) * (a[i].x - b[j].x);
    ra -= t;
    rb -= t;
    if (ra <= 1e-15 && ++i < a.size()) ra = a[i].m;
    if (rb <= 1e-15 && ++j < b.size()) rb = b[j].m;
  }
  return cost;
}

/// Minimum of a transportation LP by enumerating all basic solutions of the
/// m x n transport polytope: choose m + n - 1 cells, solve the (tree) system
/// by elimination, keep nonnegative solutions. Feasible only for m, n <= 4.
inline double w2_vertex_enumeration(const std::vector<WPoint>& a, const std::vector<WPoint>& b) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(b.size());
  const int cells = m * n;
  const int basis = m + n - 1;
  double best = INFINITY;
  std::vector<int> pick(cells, 0);
  std::fill(pick.end() - basis, pick.end(), 1);
  do {
    std::vector<double> row(a.size()), col(b.size());
    for (int i = 0; i < m; ++i) row[i] = a[i].m;
    for (int j = 0; j < n; ++j) col[j] = b[j].m;
    std::vector<char> used(cells, 0);
    std::vector<double> flow(cells, 0.0);
    // Peel leaves: a row or column with exactly one unused chosen cell fixes it.
    bool ok = true;
    for (int done = 0; done < basis && ok;) {
      bool progress = false;
      for (int i = 0; i < m && !progress; ++i) {
        int cnt = 0, last = -1;
        for (int j = 0; j < n; ++j) {
          if (pick[i * n + j] && !used[i * n + j]) ++cnt, last = j;
        }
        if (cnt == 1) {
          const int c = i * n + last;
          flow[c] = row[i];
          row[i] = 0.0;
          col[last] -= flow[c];
          used[c] = 1;
          progress = true;
        }
      }
      for (int j = 0; j < n && !progress; ++j) {
        int cnt = 0, last = -1;
        for (int i = 0; i < m; ++i) {
          if (pick[i * n + j] && !used[i * n + j]) ++cnt, last = i;
        }
        if (cnt == 1) {
          const int c = last * n + j;
          flow[c] = col[j];
          col[j] = 0.0;
          row[last] -= flow[c];
          used[c] = 1;
          progress = true;
        }
      }
      if (!progress) ok = false;
      else ++done;
    }
    if (!ok) continue;
    double cost = 0.0;
    for (int c = 0; c < cells && ok; ++c) {
      if (flow[c] < -1e-12) ok = false;
      const WPoint& p = a[c / n];
      const WPoint& q = b[c % n];
      cost += flow[c] * ((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y));
    }
    for (int i = 0; i < m && ok; ++i) ok = std::abs(row[i]) <= 1e-12;
    for (int j = 0; j < n && ok; ++j) ok = std::abs(col[j]) <= 1e-12;
    if (ok) best = std::min(best, cost);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

/// Root of a continuous function with f(lo) < 0 < f(hi), by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
  for (int it = 0; it < iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Minimiser of a unimodal function by golden-section search.
inline double golden_section(const std::function<double(double)>& f, double lo, double hi,
                             int iterations = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - r * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + r * (b - a), fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Number of cell centers of the n x n grid on [x0, x0 + side]^2 inside the
/// closed disk, by integer-lattice counting.
inline long count_disk_cells(int n, double x0, double side, double cx, double cy, double r) {
  const double h = side / n;
  long count = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double x = x0 + (i + 0.5) * h - cx;
      const double y = x0 + (j + 0.5) * h - cy;
      if (x * x + y * y <= r * r) ++count;
    }
  }
  return count;
}

}  // namespace oracle
