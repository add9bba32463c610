#pragma once

#include <memory>

#include "fraclap/ionic.hpp"
#include "fraclap/types.hpp"

namespace fraclap {

/// Per-node solution state: potential plus model-specific auxiliary block
/// (one column per node).
struct State {
    Vector v;
    Eigen::MatrixXd aux;

    Index n_nodes() const { return v.size(); }
};

/// Pointwise reaction dynamics g(u) coupled to the PDE, plus the update
/// rule for the auxiliary (gating) state. Pure per-node functions, keyed
/// off immutable model parameters; trivially parallel.
class ReactionModel {
public:
    virtual ~ReactionModel() = default;

    virtual int aux_dim() const = 0;

    /// g in du/dt units; stim holds the applied per-node current density
    /// (uA/cm^3 for membrane models, plain additive rate otherwise).
    virtual void reaction(const Vector& v, const Eigen::MatrixXd& aux, const Vector& stim,
                          Vector& g, int threads) const = 0;

    /// Advance the auxiliary state over dt at frozen voltage.
    virtual void advance_aux(const Eigen::MatrixXd& aux_n, const Vector& v, double dt,
                             Eigen::MatrixXd& aux_out, int threads) const = 0;

    virtual State resting_state(Index n_nodes) const = 0;
};

/// g(u) = u (1 - u); no auxiliary state. Stimulus adds directly to g.
class FisherModel final : public ReactionModel {
public:
    int aux_dim() const override { return 0; }
    void reaction(const Vector& v, const Eigen::MatrixXd& aux, const Vector& stim,
                  Vector& g, int threads) const override;
    void advance_aux(const Eigen::MatrixXd& aux_n, const Vector& v, double dt,
                     Eigen::MatrixXd& aux_out, int threads) const override;
    State resting_state(Index n_nodes) const override;
};

/// Full Beeler-Reuter membrane model. The reaction term is
///   g = (-I_ion + I_stim / chi) / C_m
/// with I_stim the applied current density (uA/cm^3).
class BeelerReuterModel final : public ReactionModel {
public:
    struct Parameters {
        double capacitance = 1.0;       // C_m, uF/cm^2
        double surface_to_volume = 2000.0; // chi, 1/cm
        bool use_rate_table = false;    // 0.01 mV tabulation switch
    };

    explicit BeelerReuterModel(Parameters p);

    int aux_dim() const override { return br::kAuxDim; }
    void reaction(const Vector& v, const Eigen::MatrixXd& aux, const Vector& stim,
                  Vector& g, int threads) const override;
    void advance_aux(const Eigen::MatrixXd& aux_n, const Vector& v, double dt,
                     Eigen::MatrixXd& aux_out, int threads) const override;
    State resting_state(Index n_nodes) const override;

    const Parameters& parameters() const { return params_; }

private:
    Parameters params_;
    std::shared_ptr<const br::RateTable> table_;
};

} // namespace fraclap
