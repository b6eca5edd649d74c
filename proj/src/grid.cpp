#include "tvw/grid.hpp"

#include <algorithm>
#include <string>

namespace tvw {

Grid::Grid(int nx, int ny, Point origin, double spacing)
    : nx_(nx), ny_(ny), origin_(origin), h_(spacing) {
  if (nx < 2 || ny < 2) {
    throw InvalidArgument("grid needs at least 2 cells per axis, got " + std::to_string(nx) +
                          "x" + std::to_string(ny));
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidArgument("grid spacing must be positive and finite");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw InvalidArgument("grid origin must be finite");
  }
}

double Grid::diameter() const noexcept {
  const Point e = extent();
  return std::sqrt(e.x * e.x + e.y * e.y);
}

std::vector<double> Grid::x_coords() const {
  std::vector<double> xs(nx_);
  for (int i = 0; i < nx_; ++i) xs[i] = origin_.x + (i + 0.5) * h_;
  return xs;
}

std::vector<double> Grid::y_coords() const {
  std::vector<double> ys(ny_);
  for (int j = 0; j < ny_; ++j) ys[j] = origin_.y + (j + 0.5) * h_;
  return ys;
}

bool Grid::contains_disk(Point center, double radius) const noexcept {
  const Point e = extent();
  return center.x - radius > origin_.x && center.x + radius < origin_.x + e.x &&
         center.y - radius > origin_.y && center.y + radius < origin_.y + e.y;
}

Grid make_grid(int n, Point origin, double side) {
  if (n < 2) throw InvalidArgument("make_grid: n must be >= 2");
  if (!(side > 0.0)) throw InvalidArgument("make_grid: side must be positive");
  return Grid(n, n, origin, side / n);
}

Field::Field(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field size " + std::to_string(values_.size()) +
                          " does not match grid size " + std::to_string(grid_.size()));
  }
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
}

}  // namespace

double dot(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * a.grid().cell_area();
}

double l2_norm(const Field& a) { return std::sqrt(dot(a, a)); }

double l2_distance(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s * a.grid().cell_area());
}

double max_abs(const Field& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

Field combine(double a, const Field& x, double b, const Field& y) {
  require_same_grid(x, y);
  Field out(x.grid());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = a * x[k] + b * y[k];
  return out;
}

Field positive_part(const Field& u) {
  Field out(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::max(u[k], 0.0);
  return out;
}

Density::Density(Field field) : field_(std::move(field)) {
  for (double v : field_.values()) {
    if (!std::isfinite(v)) throw InvalidArgument("density values must be finite");
    if (v < 0.0) throw InvalidArgument("density values must be nonnegative");
  }
}

Density::Density(const Grid& grid, std::vector<double> values)
    : Density(Field(grid, std::move(values))) {}

Density Density::scaled(double c) const {
  if (!(c >= 0.0)) throw InvalidArgument("density scale must be nonnegative");
  Field f = field_;
  for (double& v : f.values()) v *= c;
  return Density(std::move(f));
}

std::size_t count_cells_in_disk(const Grid& grid, Point center, double radius) {
  std::size_t count = 0;
  const double r2 = radius * radius;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (squared_distance(grid.cell_center(i, j), center) <= r2) ++count;
    }
  }
  return count;
}

Density rasterize_ball(const Grid& grid, Point center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("rasterize_ball: radius must be positive");
  if (!grid.contains_disk(center, radius)) {
    throw InvalidArgument("rasterize_ball: ball intersects the domain boundary");
  }
  const std::size_t count = count_cells_in_disk(grid, center, radius);
  if (count == 0) throw InvalidArgument("rasterize_ball: no cell center inside the ball");
  const double r2 = radius * radius;
  const double height = 1.0 / (static_cast<double>(count) * grid.cell_area());
  Field f(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (squared_distance(grid.cell_center(i, j), center) <= r2) f.at(i, j) = height;
    }
  }
  return Density(std::move(f));
}

double mass(const Field& u) {
  double s = 0.0;
  for (double v : u.values()) s += v;
  return s * u.grid().cell_area();
}

double mass(const Density& rho) { return mass(rho.field()); }

double second_moment(const Density& rho, Point center) {
  const Grid& g = rho.grid();
  double total = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    total += rho[k];
    acc += rho[k] * squared_distance(g.cell_center(k), center);
  }
  if (!(total > 0.0)) throw InvalidArgument("second_moment: zero mass");
  return acc / total;
}

Point barycenter(const Density& rho) {
  const Grid& g = rho.grid();
  double total = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const Point c = g.cell_center(k);
    total += rho[k];
    sx += rho[k] * c.x;
    sy += rho[k] * c.y;
  }
  if (!(total > 0.0)) throw InvalidArgument("barycenter: zero mass");
  return {sx / total, sy / total};
}

}  // namespace tvw
