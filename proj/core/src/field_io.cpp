#include "sylvbq/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sylvbq {

namespace {

void write_header(std::ostream& out, int J, double t) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "# sylvbq field J=%d t=%.17g", J, t);
  out << buf << '\n';
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::complex<double>& v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

std::complex<double> parse_entry(const std::string& tok) {
  // forms: <re> | <re>+<im>i | <re>-<im>i
  if (!tok.empty() && tok.back() == 'i') {
    const std::string body = tok.substr(0, tok.size() - 1);
    // split at the sign of the imaginary part (skip a leading sign and
    // exponent signs)
    for (std::size_t p = body.size(); p-- > 1;) {
      const char ch = body[p];
      if ((ch == '+' || ch == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
        const double re = std::stod(body.substr(0, p));
        const double im = std::stod(body.substr(p));
        return {re, im};
      }
    }
    throw std::invalid_argument("field snapshot: malformed complex entry: " + tok);
  }
  return {std::stod(tok), 0.0};
}

}  // namespace

void dump_field(std::ostream& out, const RealField& F, double t) {
  write_header(out, static_cast<int>(F.rows()) - 1, t);
  for (Eigen::Index j = 0; j < F.rows(); ++j) {
    for (Eigen::Index m = 0; m < F.cols(); ++m) {
      if (m) out << ' ';
      out << fmt(F(j, m));
    }
    out << '\n';
  }
}

void dump_field(std::ostream& out, const ComplexField& F, double t) {
  write_header(out, static_cast<int>(F.rows()) - 1, t);
  for (Eigen::Index j = 0; j < F.rows(); ++j) {
    for (Eigen::Index m = 0; m < F.cols(); ++m) {
      if (m) out << ' ';
      out << fmt(F(j, m));
    }
    out << '\n';
  }
}

FieldSnapshot load_field(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::invalid_argument("field snapshot: empty stream");
  }
  FieldSnapshot snap;
  if (std::sscanf(header.c_str(), "# sylvbq field J=%d t=%lf", &snap.J, &snap.t) != 2) {
    throw std::invalid_argument("field snapshot: bad header: " + header);
  }
  const int n = snap.J + 1;
  snap.values.resize(n, n);
  std::string line;
  for (int j = 0; j < n; ++j) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("field snapshot: truncated at row " + std::to_string(j));
    }
    std::istringstream row(line);
    std::string tok;
    for (int m = 0; m < n; ++m) {
      if (!(row >> tok)) {
        throw std::invalid_argument("field snapshot: short row " + std::to_string(j));
      }
      const auto v = parse_entry(tok);
      snap.values(j, m) = v;
      if (v.imag() != 0.0) snap.is_complex = true;
    }
  }
  return snap;
}

}  // namespace sylvbq
