#include "apollo/geometry.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <string>

#include "apollo/error.hpp"

namespace apollo {

Point unit_at(double deg) {
  const double rad = to_radians(deg);
  return {std::cos(rad), std::sin(rad)};
}

Point on_circle(Point center, double radius, double deg) { return center + radius * unit_at(deg); }

double direction_deg(Point v) { return Angle::normalize(to_degrees(std::atan2(v.y, v.x))); }

double wrap360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

double Angle::normalize(double degrees) {
  double r = std::fmod(degrees, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

CurvaturePair descartes_curvatures(double k1, double k2, double k3, double rel_tol) {
  const double sum = k1 + k2 + k3;
  double disc = k1 * k2 + k2 * k3 + k3 * k1;
  const double scale = std::max({k1 * k1, k2 * k2, k3 * k3});
  if (disc < 0.0) {
    if (disc < -rel_tol * scale) {
      throw Error(ErrorCode::NegativeDiscriminant,
                  "curvatures are not mutually tangent-compatible (discriminant " +
                      std::to_string(disc) + ")");
    }
    disc = 0.0;
  }
  const double root = 2.0 * std::sqrt(disc);
  return {sum + root, sum - root};
}

double tangency_defect(const Circle& a, const Circle& b) {
  const double d = distance(a.center, b.center);
  if (a.enclosing && b.enclosing) return std::numeric_limits<double>::infinity();
  if (a.enclosing || b.enclosing) return std::abs(d - std::abs(a.radius - b.radius));
  return std::abs(d - (a.radius + b.radius));
}

bool is_tangent(const Circle& a, const Circle& b, double tol) {
  return tangency_defect(a, b) <= tol;
}

std::vector<Circle> tangent_circle_candidates(const Circle& a, const Circle& b, const Circle& c,
                                              double target_k, double tol) {
  using cplx = std::complex<double>;
  if (!(target_k > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "target curvature must be positive");
  }
  const double ka = a.curvature();
  const double kb = b.curvature();
  const double kc = c.curvature();
  const cplx za(a.center.x, a.center.y);
  const cplx zb(b.center.x, b.center.y);
  const cplx zc(c.center.x, c.center.y);

  const cplx linear = ka * za + kb * zb + kc * zc;
  const cplx root = 2.0 * std::sqrt(ka * kb * za * zb + kb * kc * zb * zc + kc * ka * zc * za);

  // Near-valid centers get a few Gauss-Newton steps on the tangency
  // distances.
  const double r4 = 1.0 / target_k;
  const Circle* parents[3] = {&a, &b, &c};
  double scale = r4;
  for (const Circle* p : parents) scale = std::max(scale, p->radius);
  auto polish = [&](Point z) {
    for (int iter = 0; iter < 4; ++iter) {
      double jtj[2][2] = {{0, 0}, {0, 0}};
      double jtr[2] = {0, 0};
      for (const Circle* p : parents) {
        const Point d = z - p->center;
        const double len = norm(d);
        if (len == 0.0) return z;
        const double want = p->enclosing ? p->radius - r4 : p->radius + r4;
        const double res = len - want;
        const Point g = d / len;
        jtj[0][0] += g.x * g.x;
        jtj[0][1] += g.x * g.y;
        jtj[1][1] += g.y * g.y;
        jtr[0] += g.x * res;
        jtr[1] += g.y * res;
      }
      const double det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[0][1];
      if (std::abs(det) < 1e-14) return z;
      const Point step{(jtj[1][1] * jtr[0] - jtj[0][1] * jtr[1]) / det,
                       (jtj[0][0] * jtr[1] - jtj[0][1] * jtr[0]) / det};
      z = z - step;
    }
    return z;
  };

  std::vector<Circle> out;
  for (const cplx& w : {linear + root, linear - root}) {
    const cplx z = w / target_k;
    Circle cand{{z.real(), z.imag()}, r4, false};
    const double defect = std::max(
        {tangency_defect(cand, a), tangency_defect(cand, b), tangency_defect(cand, c)});
    if (defect > tol && defect < 1e-6 * scale) cand.center = polish(cand.center);
    if (!is_tangent(cand, a, tol) || !is_tangent(cand, b, tol) || !is_tangent(cand, c, tol)) {
      continue;
    }
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Circle& o) {
      return distance(o.center, cand.center) <= tol;
    });
    if (!duplicate) out.push_back(cand);
  }
  return out;
}

Circle solve_tangent_circle(const Circle& a, const Circle& b, const Circle& c, double target_k,
                            double tol, std::optional<Point> near) {
  const auto cands = tangent_circle_candidates(a, b, c, target_k, tol);
  if (cands.empty()) {
    throw Error(ErrorCode::NoValidCenter, "no candidate center passes the tangency check");
  }
  if (!near) return cands.front();
  return *std::min_element(cands.begin(), cands.end(), [&](const Circle& l, const Circle& r) {
    return distance(l.center, *near) < distance(r.center, *near);
  });
}

Point tangency_point(const Circle& a, const Circle& b, double tol) {
  if (!is_tangent(a, b, tol)) {
    throw Error(ErrorCode::NotTangent, "circles are not tangent");
  }
  const Point d = b.center - a.center;
  const double len = norm(d);
  if (len <= tol) {
    throw Error(ErrorCode::NotTangent, "concentric circles have no tangency point");
  }
  const Point u = d / len;
  if (b.enclosing) return b.center - u * b.radius;
  return a.center + u * a.radius;
}

Angle angular_position(const Circle& c, Point p, double tol) {
  const Point v = p - c.center;
  if (std::abs(norm(v) - c.radius) > tol) {
    throw Error(ErrorCode::NotOnCircle, "point does not lie on the circle");
  }
  return Angle(to_degrees(std::atan2(v.y, v.x)));
}

}  // namespace apollo
