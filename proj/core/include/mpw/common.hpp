#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpw {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
  invalid_input,
  domain_escape,
  blow_up,
  not_fixed_point,
  aliasing,
  undefined_fit,
  degenerate_point,
  truncation,
  precondition,
  bracket,
  singularity,
  solver,
  insufficient_resolution,
  invalid_field,
  invalid_mode,
  io,
  usage,
  parse,
  internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by integrators when the state stops being finite.
class BlowUpError : public Error {
 public:
  BlowUpError(double last_valid_time, const std::string& what)
      : Error(ErrorKind::blow_up, what), last_valid_time_(last_valid_time) {}

  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

/// A named inequality instance `lhs <= rhs (+ tolerance)`.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string provenance;
};

BoundReport make_bound(std::string name, double lhs, double rhs, double tolerance,
                       std::string provenance);

bool all_finite(const Vec& v);
bool all_finite(const CVec& v);
bool all_finite(const CMat& m);

// Quadrature on uniform samples.
double trapezoid(const std::vector<double>& values, double spacing);
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);
Complex simpson(const std::function<Complex(double)>& f, double a, double b, int intervals);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

// Central finite differences of scalar maps on R^n.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double step);
Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double step);
Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& x, double step);

/// Eigenvalues of a real matrix sorted by (real, imag).
std::vector<Complex> sorted_eigenvalues(const Mat& m);

}  // namespace mpw
