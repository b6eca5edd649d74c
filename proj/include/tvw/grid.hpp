#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tvw/common.hpp"

namespace tvw {

/// Uniform cell-centered grid on an axis-aligned rectangle with square cells.
class Grid {
 public:
  Grid(int nx, int ny, Point origin, double spacing);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  Point origin() const noexcept { return origin_; }
  double spacing() const noexcept { return h_; }
  double cell_area() const noexcept { return h_ * h_; }
  Point extent() const noexcept { return {nx_ * h_, ny_ * h_}; }
  double diameter() const noexcept;

  /// Row-major: x index fastest.
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  Point cell_center(int i, int j) const noexcept {
    return {origin_.x + (i + 0.5) * h_, origin_.y + (j + 0.5) * h_};
  }
  Point cell_center(std::size_t k) const noexcept {
    return cell_center(static_cast<int>(k % nx_), static_cast<int>(k / nx_));
  }
  /// 1-D cell-center coordinates along each axis.
  std::vector<double> x_coords() const;
  std::vector<double> y_coords() const;

  bool contains_disk(Point center, double radius) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int nx_;
  int ny_;
  Point origin_;
  double h_;
};

Grid make_grid(int n, Point origin, double side);

/// Scalar field on a grid; values may be signed. Intensities, not cell masses.
class Field {
 public:
  explicit Field(const Grid& grid, double fill = 0.0);
  Field(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double at(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
  double& at(int i, int j) noexcept { return values_[grid_.index(i, j)]; }

  bool all_finite() const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// L2(Omega) inner product and norm (cell-area weighted).
double dot(const Field& a, const Field& b);
double l2_norm(const Field& a);
double l2_distance(const Field& a, const Field& b);
double max_abs(const Field& a);
/// a*x + b*y, grids must agree.
Field combine(double a, const Field& x, double b, const Field& y);
Field positive_part(const Field& u);

/// Nonnegative finite scalar field. Construction validates the invariant.
class Density {
 public:
  explicit Density(Field field);
  Density(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return field_.grid(); }
  const Field& field() const noexcept { return field_; }
  std::span<const double> values() const noexcept { return field_.values(); }
  double operator[](std::size_t k) const noexcept { return field_[k]; }
  std::size_t size() const noexcept { return field_.size(); }

  Density scaled(double c) const;

  friend bool operator==(const Density&, const Density&) = default;

 private:
  Field field_;
};

/// Uniform unit-mass density on cells whose centers lie in the closed disk.
Density rasterize_ball(const Grid& grid, Point center, double radius);
/// Number of cell centers inside the disk (before normalisation).
std::size_t count_cells_in_disk(const Grid& grid, Point center, double radius);

double mass(const Density& rho);
double mass(const Field& u);
double second_moment(const Density& rho, Point center);
Point barycenter(const Density& rho);

}  // namespace tvw
