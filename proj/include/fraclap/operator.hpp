#pragma once

#include <Eigen/SparseCholesky>
#include <memory>
#include <optional>

#include "fraclap/discretize.hpp"
#include "fraclap/matfunc.hpp"

namespace fraclap {

/// Piecewise-constant fractional order over a two-region partition:
/// alpha1 on region 1, alpha2 on region 2, both in (1, 2].
struct FractionalOrderField {
    double alpha1 = 2.0;
    double alpha2 = 2.0;
    RegionPartition partition;

    void validate() const;
};

/// The spatially discretised variable-order fractional Laplacian in split
/// form, plus the two composite matrix functions of the implicit scheme:
///
///   L u       = A^{ab/2} u + E_corr (A^{ac/2} - A^{ab/2}) u
///   f_a(A) u  = D (A^{ab/2} - A^{ac/2}) u            (one contour pass)
///   f_b(A) r  = (I + D dt A^{ab/2})^{-1} r
///
/// where the base order ab drives the implicit solve. When one of the two
/// orders equals 2 the roles are arranged so that the base is the integer
/// order and f_b collapses to a sparse SPD linear solve.
///
/// Immutable after construction + prepare(); all apply/solve calls are
/// reentrant.
class VoflOperator {
public:
    struct Config {
        MatfuncSettings engine;
        double diffusivity = 1.0; // effective D multiplying the operator
    };

    VoflOperator(SymmetrizedOperator op, FractionalOrderField orders, Config cfg);

    /// Build the per-time-step machinery (sparse factorisation for the
    /// integer-order implicit solve). Call once before stepping.
    void prepare(double dt);

    Index dim() const { return op_.sym.dim(); }
    double diffusivity() const { return cfg_.diffusivity; }
    double base_order() const { return alpha_base_; }
    double correction_order() const { return alpha_corr_; }
    bool has_correction() const { return has_correction_; }
    /// Partition whose region 2 marks the correction rows (already
    /// swap-adjusted).
    const RegionPartition& correction_partition() const { return corr_partition_; }
    const SymmetrizedOperator& discrete_operator() const { return op_; }
    const MatfuncEngine* engine() const { return engine_ ? &*engine_ : nullptr; }

    /// The full variable-order operator application (no diffusivity).
    Vector apply_vofl(const Vector& u, MatfuncStats* stats = nullptr) const;

    /// f_a(A) u = D (A^{ab/2} - A^{ac/2}) u, unmasked; callers apply the
    /// correction-region mask.
    Vector apply_fa(const Vector& u, MatfuncStats* stats = nullptr) const;

    /// x = (I + D dt A^{ab/2})^{-1} rhs.
    Vector solve_fb(const Vector& rhs, double dt, MatfuncStats* stats = nullptr) const;

private:
    Vector apply_function(const SpectralFunction& f, const Vector& u,
                          MatfuncStats* stats) const;
    Vector apply_a_exact(const Vector& u) const;

    SymmetrizedOperator op_;
    FractionalOrderField orders_;
    Config cfg_;
    double alpha_base_ = 2.0;
    double alpha_corr_ = 2.0;
    RegionPartition corr_partition_;
    bool has_correction_ = false;
    std::optional<MatfuncEngine> engine_;

    // alpha_base == 2 fast path: LLT of (I + D dt A~) in the scaled domain.
    using Cholesky = Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>;
    std::shared_ptr<Cholesky> fb_factor_;
    double prepared_dt_ = -1.0;
};

} // namespace fraclap
