#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tvw {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Raised on violated preconditions (bad sizes, negative masses, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative solver exhausts its budget before meeting its
/// tolerance. `achieved` is the last value of the monitored criterion.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved, int iterations)
      : std::runtime_error(what), achieved_(achieved), iterations_(iterations) {}

  double achieved() const noexcept { return achieved_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double achieved_;
  int iterations_;
};

}  // namespace tvw
