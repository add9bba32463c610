#pragma once

#include <functional>
#include <vector>

#include "fraclap/operator.hpp"
#include "fraclap/reaction.hpp"

namespace fraclap {

struct TimeGrid {
    double dt = 0.25;   // ms
    double t_end = 0.0; // ms
    Index n_steps = 0;

    static TimeGrid make(double dt, double t_end) {
        if (!(dt > 0.0))
            throw ConfigError("time step must be positive");
        const Index n = static_cast<Index>(std::llround(t_end / dt));
        if (n < 1)
            throw ConfigError("time grid needs at least one step");
        return TimeGrid{dt, t_end, n};
    }
};

struct PicardSettings {
    double tol = 1e-6; // relative infinity-norm update
    int max_iter = 50;
};

/// Applied current density per node at a given time; the implementation
/// zeroes `stim` first and adds active contributions.
using StimulusSource = std::function<void(double t, Vector& stim)>;

/// Read-only view of the trajectory at observation points.
struct ObserverEntry {
    Index every_steps = 1; // invoke when step % every_steps == 0, plus the final step
    std::function<void(Index step, double t, const State&)> fn;
};

struct StepOutcome {
    int picard_iterations = 0;
};

struct IntegrationResult {
    State state;
    Index steps = 0;
    double average_picard = 0.0; // fixed-point iterations per step
    MatfuncStats matfunc;
};

/// One fully implicit backward-Euler step converged by Picard iteration:
///   u_{k+1} = f_b( u_n + dt E_corr f_a u_k + dt g(u_k) ),
/// gating state re-advanced from aux_n at each voltage iterate.
StepOutcome backward_euler_step(const VoflOperator& op, const State& current,
                                const ReactionModel& model, double t_next, double dt,
                                const PicardSettings& picard, const Vector& stim,
                                State& next, MatfuncStats* stats = nullptr,
                                int threads = 1);

/// Sequential time loop with stimulus scheduling and observers. Throws
/// NumericalError on divergence, naming the first offending node.
IntegrationResult integrate(const VoflOperator& op, State initial,
                            const ReactionModel& model, const TimeGrid& grid,
                            const StimulusSource& stimulus,
                            const std::vector<ObserverEntry>& observers,
                            const PicardSettings& picard, int threads = 1,
                            const std::function<bool(Index, double, const State&)>&
                                stop_when = nullptr);

} // namespace fraclap
