#include "sylvbq/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace sylvbq {

CoefficientSet compute_coefficients(double alpha, double q, double l, double h) {
  if (!(h > 0.0) || !(l > 0.0)) {
    throw std::invalid_argument("compute_coefficients: l and h must be positive");
  }
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("compute_coefficients: alpha must be finite");
  }
  CoefficientSet c;
  c.alpha = alpha;
  c.q = q;
  c.l = l;
  c.h = h;
  c.sigma = (l * l) / (h * h);
  c.delta = q / (h * h);
  c.a1 = 0.5 + 2.0 * alpha * c.sigma;
  c.a2 = -alpha * c.sigma;
  c.b1 = 1.0 - 2.0 * (1.0 - 2.0 * alpha) * c.sigma;
  c.b2 = (1.0 - 2.0 * alpha) * c.sigma;
  c.c1 = (1.0 - 2.0 * alpha) * c.delta;
  c.c2 = alpha * c.delta;
  c.omega = 2.0 * c.a2 * c.c2;
  c.omega1 = c.a1 + 6.0 * c.omega;
  c.omega1bar = c.omega1 + c.omega;
  c.omega2 = c.a2 - 4.0 * c.omega;
  return c;
}

CoefficientSet compute_coefficients(const GridSpec& grid, const SchemeParams& params) {
  return compute_coefficients(params.alpha, params.q, grid.l, grid.h);
}

}  // namespace sylvbq
