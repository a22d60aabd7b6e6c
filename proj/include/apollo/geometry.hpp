#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace apollo {

inline constexpr double kPi = std::numbers::pi;

// Relative tolerance for tangency and identity checks. Absolute tolerances
// are this value times the outer radius of the configuration.
inline constexpr double kRelTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
// Counter-clockwise perpendicular.
constexpr Point perp(Point a) { return {-a.y, a.x}; }

inline double to_radians(double deg) { return deg * kPi / 180.0; }
inline double to_degrees(double rad) { return rad * 180.0 / kPi; }

// Unit vector at `deg` degrees (0 = 3 o'clock, counter-clockwise positive).
Point unit_at(double deg);
Point on_circle(Point center, double radius, double deg);
// Direction of `v` in degrees, normalized to (-180, 180].
double direction_deg(Point v);
// Wraps to [0, 360).
double wrap360(double deg);

class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double degrees) : degrees_(normalize(degrees)) {}

  double degrees() const { return degrees_; }
  double radians() const { return to_radians(degrees_); }

  // Maps any angle onto (-180, 180].
  static double normalize(double degrees);

  friend bool operator==(Angle, Angle) = default;

 private:
  double degrees_ = 0.0;
};

struct Circle {
  Point center;
  double radius = 1.0;
  bool enclosing = false;  // true only for an outer circle

  double curvature() const { return enclosing ? -1.0 / radius : 1.0 / radius; }
};

struct CurvaturePair {
  double plus = 0.0;   // k1 + k2 + k3 + 2 sqrt(...)
  double minus = 0.0;  // k1 + k2 + k3 - 2 sqrt(...)
};

// Both fourth curvatures from the Descartes circle theorem. A discriminant
// within `rel_tol * max(k_i)^2` below zero is clamped to zero.
CurvaturePair descartes_curvatures(double k1, double k2, double k3, double rel_tol = kRelTol);

// Distance between centers minus the distance tangency requires.
double tangency_defect(const Circle& a, const Circle& b);
bool is_tangent(const Circle& a, const Circle& b, double tol);

// All circles of curvature `target_k` that the complex Descartes formula
// produces and that pass the tangency-distance check against a, b and c.
std::vector<Circle> tangent_circle_candidates(const Circle& a, const Circle& b, const Circle& c,
                                              double target_k, double tol);

// Circle of curvature `target_k` tangent to a, b and c. When both candidate
// centers are valid the one nearest `near` wins (first valid otherwise).
Circle solve_tangent_circle(const Circle& a, const Circle& b, const Circle& c, double target_k,
                            double tol = kRelTol, std::optional<Point> near = std::nullopt);

Point tangency_point(const Circle& a, const Circle& b, double tol = kRelTol);

Angle angular_position(const Circle& c, Point p, double tol = kRelTol);

}  // namespace apollo
