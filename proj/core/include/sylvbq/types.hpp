#ifndef SYLVBQ_TYPES_HPP
#define SYLVBQ_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sylvbq {

/// Grid-sampled quantity: entry (j,m) holds the value at node (x_j, y_m).
template <typename Scalar>
using Field = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealField = Field<double>;
using ComplexField = Field<std::complex<double>>;

template <typename Scalar>
struct scalar_traits {
  static constexpr bool is_complex = false;
};
template <typename T>
struct scalar_traits<std::complex<T>> {
  static constexpr bool is_complex = true;
};

class SolverFailure : public std::runtime_error {
 public:
  explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

class BlowupError : public std::runtime_error {
 public:
  BlowupError(int step, double norm)
      : std::runtime_error("field norm " + std::to_string(norm) +
                           " exceeded blow-up guard at step " + std::to_string(step)),
        step(step),
        norm(norm) {}
  int step;
  double norm;
};

}  // namespace sylvbq

#endif
