#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace fraclap {

using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: meshes, configuration files, parameter ranges.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// A solver failed to converge or produced non-finite values.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

/// Counters reported by every matrix-function evaluation.
struct MatfuncStats {
    int lanczos_iterations = 0;
    int matvecs = 0;
    double worst_residual = 0.0;
    int quad_points = 0;
    bool preconditioned = false;
    bool used_fast_path = false;   // collapsed to sparse matvec / linear solve
    bool accuracy_warning = false; // successive-P refinement disagreed
    double refinement_error = 0.0;

    void accumulate(const MatfuncStats& s) {
        lanczos_iterations += s.lanczos_iterations;
        matvecs += s.matvecs;
        worst_residual = std::max(worst_residual, s.worst_residual);
        quad_points = std::max(quad_points, s.quad_points);
        preconditioned = preconditioned || s.preconditioned;
        accuracy_warning = accuracy_warning || s.accuracy_warning;
        refinement_error = std::max(refinement_error, s.refinement_error);
    }
};

} // namespace fraclap
