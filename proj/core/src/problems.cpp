#include "sylvbq/problems.hpp"

#include <cmath>

namespace sylvbq {

SourceForm source_form_from_string(const std::string& name) {
  if (name == "consistent") return SourceForm::consistent;
  if (name == "printed") return SourceForm::printed;
  throw std::invalid_argument("unknown source form: " + name);
}

std::string to_string(SourceForm f) {
  return f == SourceForm::printed ? "printed" : "consistent";
}

ManufacturedCase<double> example1(double q) {
  ManufacturedCase<double> mc;
  mc.name = "example1";
  mc.L0 = -1.0;
  mc.L1 = 1.0;
  mc.q = q;

  mc.exact_u = [](double x, double y, double t) {
    const double a = x * x - 1.0;
    const double b = y * y - 1.0;
    const double a2 = a * a;
    return (a2 * a2 + b * b) * std::exp(-t);
  };
  mc.phi = [](double x, double y) {
    const double a = x * x - 1.0;
    const double b = y * y - 1.0;
    const double a2 = a * a;
    return -(a2 * a2 + b * b);  // du/dt = -u
  };

  // First bracket of the published display, with the x^4-stencil term carrying
  // the coefficient `c4`; the display fixes c4 = 48, the consistent source
  // needs c4 = 48 q.
  const auto first_bracket = [](double x, double y, double c4) {
    const double x2 = x * x;
    const double a = x2 - 1.0;
    const double a2 = a * a;
    const double y2 = y * y;
    return a2 * (x2 * x2 - 58.0 * x2 + 9.0) - c4 * (35.0 * x2 * x2 - 30.0 * x2 + 3.0) +
           y2 * y2 - 14.0 * y2 + 5.0;
  };
  const auto second_bracket = [](double x, double y) {
    const double x2 = x * x;
    const double a = x2 - 1.0;
    const double a2 = a * a;
    const double a4 = a2 * a2;
    const double b = y * y - 1.0;
    return -16.0 * a2 * (a4 * (15.0 * x2 - 1.0) + b * b * (7.0 * x2 - 1.0));
  };
  mc.g_printed = [first_bracket, second_bracket](double x, double y, double t) {
    return first_bracket(x, y, 48.0) * std::exp(-t) + second_bracket(x, y) * std::exp(-2.0 * t);
  };
  mc.g_consistent = [first_bracket, second_bracket, q](double x, double y, double t) {
    return first_bracket(x, y, 48.0 * q) * std::exp(-t) +
           second_bracket(x, y) * std::exp(-2.0 * t);
  };
  mc.v_exact = [q](double x, double y, double t) {
    const double x2 = x * x;
    const double a = x2 - 1.0;
    const double a2 = a * a;
    const double b = y * y - 1.0;
    const double u = (a2 * a2 + b * b) * std::exp(-t);
    const double u_xx = 8.0 * a2 * (7.0 * x2 - 1.0) * std::exp(-t);
    return q * u_xx + u * u;
  };
  return mc;
}

ManufacturedCase<std::complex<double>> example2(double q) {
  using C = std::complex<double>;
  ManufacturedCase<C> mc;
  mc.name = "example2";
  mc.L0 = -2.0 * M_PI;
  mc.L1 = 2.0 * M_PI;
  mc.q = q;

  const auto p = [](double z) {
    const double c = std::cos(0.5 * z);
    return c * c;
  };
  const auto theta = [](double t) { return std::exp(C(0.0, -t)); };

  mc.exact_u = [p, theta](double x, double y, double t) -> C {
    return 2.0 * p(x) * p(y) * theta(t);
  };
  mc.phi = [p](double x, double y) -> C {
    return C(0.0, -2.0) * p(x) * p(y);
  };
  mc.g_printed = [p, theta](double x, double y, double t) -> C {
    const C u = 2.0 * p(x) * p(y) * theta(t);
    return (4.0 - 6.0 * p(y)) * u * u - p(x) * u;
  };
  mc.g_consistent = [p, theta, q](double x, double y, double t) -> C {
    const double px = p(x);
    const double py = p(y);
    const C th = theta(t);
    const C u = 2.0 * px * py * th;
    // u_tt = -u; lap u = (px + py - 4 px py) th;
    // q u_xxxx = q (2 px - 1) py th; (u^2)_xx = 4 (3 px - 4 px^2) py^2 th^2
    return -u - (px + py - 4.0 * px * py) * th - q * (2.0 * px - 1.0) * py * th -
           4.0 * (3.0 * px - 4.0 * px * px) * py * py * th * th;
  };
  mc.v_exact = [p, theta, q](double x, double y, double t) -> C {
    const double px = p(x);
    const double py = p(y);
    const C th = theta(t);
    const C u = 2.0 * px * py * th;
    const C u_xx = (1.0 - 2.0 * px) * py * th;
    return q * u_xx + u * u;
  };
  return mc;
}

}  // namespace sylvbq
