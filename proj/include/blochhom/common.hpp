// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_COMMON_HPP
#define BLOCHHOM_COMMON_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <Eigen/Dense>

namespace blochhom
{

using Complex = std::complex<double>;
using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;
using VectorR = Eigen::VectorXd;
using MatrixR = Eigen::MatrixXd;

// Wavevectors and points carry two slots; the second one is ignored (and kept at zero)
// for one-dimensional problems.
using Vec2 = std::array<double, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

//
// Error hierarchy. The category determines the CLI exit status: validation problems map
// to 2, numerical failures to 3.
//
enum class ErrorCategory
{
  Validation,
  Numerical
};

class Error : public std::runtime_error
{
public:
  Error(ErrorCategory category, std::string name, const std::string &what)
    : std::runtime_error(name + ": " + what), category_(category), name_(std::move(name))
  {
  }

  ErrorCategory Category() const { return category_; }
  const std::string &Name() const { return name_; }

private:
  ErrorCategory category_;
  std::string name_;
};

class ValidationError : public Error
{
public:
  explicit ValidationError(const std::string &what)
    : Error(ErrorCategory::Validation, "ValidationError", what)
  {
  }
  ValidationError(std::string name, const std::string &what)
    : Error(ErrorCategory::Validation, std::move(name), what)
  {
  }
};

class NumericalError : public Error
{
public:
  NumericalError(std::string name, const std::string &what)
    : Error(ErrorCategory::Numerical, std::move(name), what)
  {
  }
};

// Named failures used across modules.
struct NotInGap : ValidationError
{
  explicit NotInGap(const std::string &what) : ValidationError("NotInGap", what) {}
};
struct NotSimple : NumericalError
{
  explicit NotSimple(const std::string &what) : NumericalError("NotSimple", what) {}
};
struct CompatibilityViolation : NumericalError
{
  explicit CompatibilityViolation(const std::string &what)
    : NumericalError("CompatibilityViolation", what)
  {
  }
};
struct SingularSystem : NumericalError
{
  explicit SingularSystem(const std::string &what) : NumericalError("SingularSystem", what) {}
};
struct GapViolation : NumericalError
{
  explicit GapViolation(const std::string &what) : NumericalError("GapViolation", what) {}
};
struct EnvelopeSingularity : NumericalError
{
  explicit EnvelopeSingularity(const std::string &what)
    : NumericalError("EnvelopeSingularity", what)
  {
  }
};
struct DecayCheckFailed : NumericalError
{
  explicit DecayCheckFailed(const std::string &what) : NumericalError("DecayCheckFailed", what)
  {
  }
};

}  // namespace blochhom

#endif  // BLOCHHOM_COMMON_HPP
