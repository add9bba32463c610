#include "fraclap/operator.hpp"

#include <cmath>

namespace fraclap {

void FractionalOrderField::validate() const {
    auto check = [](double a, const char* name) {
        if (!(a > 1.0) || !(a <= 2.0))
            throw ConfigError(std::string(name) + " must lie in (1, 2], got " +
                              std::to_string(a));
    };
    check(alpha1, "alpha1");
    check(alpha2, "alpha2");
}

VoflOperator::VoflOperator(SymmetrizedOperator op, FractionalOrderField orders, Config cfg)
    : op_(std::move(op)), orders_(std::move(orders)), cfg_(cfg) {
    orders_.validate();
    if (orders_.partition.n_nodes() != op_.sym.dim())
        throw ConfigError("region partition size does not match operator dimension");

    const bool region2_empty = orders_.partition.region2().empty();
    const bool region1_empty = orders_.partition.region1().empty();
    if (region2_empty || orders_.alpha1 == orders_.alpha2) {
        // Fixed order alpha1 everywhere.
        alpha_base_ = orders_.alpha1;
        alpha_corr_ = orders_.alpha1;
        corr_partition_ = RegionPartition::all_region1(op_.sym.dim());
        has_correction_ = false;
    } else if (region1_empty) {
        // Fixed order alpha2 everywhere.
        alpha_base_ = orders_.alpha2;
        alpha_corr_ = orders_.alpha2;
        corr_partition_ = RegionPartition::all_region1(op_.sym.dim());
        has_correction_ = false;
    } else if (orders_.alpha2 > orders_.alpha1) {
        // Swap so the implicit solve sees the larger order. This keeps the
        // Picard map contractive at every frequency (the damping of f_b then
        // dominates the growth of f_a), and when the larger order is 2 it
        // also turns f_b into a plain sparse linear solve. The fixed point
        // is unchanged: E_1 + E_2 = I makes the two arrangements identical.
        alpha_base_ = orders_.alpha2;
        alpha_corr_ = orders_.alpha1;
        corr_partition_ = orders_.partition.swapped();
        has_correction_ = true;
    } else {
        alpha_base_ = orders_.alpha1;
        alpha_corr_ = orders_.alpha2;
        corr_partition_ = orders_.partition;
        has_correction_ = true;
    }

    const bool fractional = alpha_base_ != 2.0 || (has_correction_ && alpha_corr_ != 2.0);
    if (fractional && dim() > 1)
        engine_ = MatfuncEngine::build(op_.sym, cfg_.engine);
}

void VoflOperator::prepare(double dt) {
    prepared_dt_ = dt;
    if (alpha_base_ == 2.0 && cfg_.diffusivity != 0.0 && dt > 0.0) {
        const double c = cfg_.diffusivity * dt;
        Eigen::SparseMatrix<double> sys = op_.sym.matrix();
        sys *= c;
        Eigen::SparseMatrix<double> eye(dim(), dim());
        eye.setIdentity();
        sys += eye;
        fb_factor_ = std::make_shared<Cholesky>();
        fb_factor_->compute(sys);
        if (fb_factor_->info() != Eigen::Success)
            throw NumericalError("solve_fb: sparse Cholesky factorisation failed");
    }
}

Vector VoflOperator::apply_a_exact(const Vector& u) const {
    // A_true u = M^{-1} K u, evaluated without square roots of eigenvalues.
    return op_.from_scaled(op_.sym.apply(op_.to_scaled(u)));
}

Vector VoflOperator::apply_function(const SpectralFunction& f, const Vector& u,
                                    MatfuncStats* stats) const {
    if (dim() == 1) {
        // 1x1 operator: exact spectral evaluation.
        const double a = op_.sym.matrix().coeff(0, 0);
        Vector out(1);
        out[0] = f.eval_real(a) * u[0];
        return out;
    }
    if (!engine_)
        throw NumericalError("VoflOperator: matrix-function engine unavailable "
                             "(operator built without fractional orders?)");
    const Vector scaled = op_.to_scaled(u);
    Vector result = matfunc_apply(f, op_.sym, scaled, *engine_, stats);
    return op_.from_scaled(result);
}

Vector VoflOperator::apply_vofl(const Vector& u, MatfuncStats* stats) const {
    if (u.size() != dim())
        throw ConfigError("apply_vofl: dimension mismatch");
    // Base part A^{ab/2} u.
    Vector base;
    if (alpha_base_ == 2.0) {
        base = apply_a_exact(u);
        if (stats)
            stats->used_fast_path = true;
    } else {
        base = apply_function(SpectralFunction::power(alpha_base_ / 2.0), u, stats);
    }
    if (!has_correction_)
        return base;
    // Correction E_corr (A^{ac/2} - A^{ab/2}) u, one contour pass.
    const Vector corr = apply_function(
        SpectralFunction::power_difference(1.0, alpha_corr_ / 2.0, alpha_base_ / 2.0), u,
        stats);
    return base + corr_partition_.mask2(corr);
}

Vector VoflOperator::apply_fa(const Vector& u, MatfuncStats* stats) const {
    if (u.size() != dim())
        throw ConfigError("apply_fa: dimension mismatch");
    Vector out = Vector::Zero(dim());
    if (cfg_.diffusivity == 0.0 || !has_correction_ || alpha_base_ == alpha_corr_)
        return out;
    return apply_function(SpectralFunction::power_difference(
                              cfg_.diffusivity, alpha_base_ / 2.0, alpha_corr_ / 2.0),
                          u, stats);
}

Vector VoflOperator::solve_fb(const Vector& rhs, double dt, MatfuncStats* stats) const {
    if (rhs.size() != dim())
        throw ConfigError("solve_fb: dimension mismatch");
    if (cfg_.diffusivity == 0.0 || dt == 0.0)
        return rhs;
    if (alpha_base_ == 2.0) {
        // (I + D dt M^{-1} K) x = rhs  <=>  (I + D dt A~) x~ = rhs~.
        std::shared_ptr<Cholesky> factor = fb_factor_;
        if (!factor || dt != prepared_dt_) {
            // Ad-hoc dt: factorise locally (prepare() avoids this cost in
            // the time loop).
            const double c = cfg_.diffusivity * dt;
            Eigen::SparseMatrix<double> sys = op_.sym.matrix();
            sys *= c;
            Eigen::SparseMatrix<double> eye(dim(), dim());
            eye.setIdentity();
            sys += eye;
            factor = std::make_shared<Cholesky>();
            factor->compute(sys);
            if (factor->info() != Eigen::Success)
                throw NumericalError("solve_fb: sparse Cholesky factorisation failed");
        }
        Vector x = factor->solve(op_.to_scaled(rhs));
        if (factor->info() != Eigen::Success)
            throw NumericalError("solve_fb: sparse solve failed");
        if (stats)
            stats->used_fast_path = true;
        return op_.from_scaled(x);
    }
    return apply_function(
        SpectralFunction::resolvent_of_power(cfg_.diffusivity, dt, alpha_base_ / 2.0), rhs,
        stats);
}

} // namespace fraclap
