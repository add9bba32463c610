#include "fraclap/stepper.hpp"

#include <cmath>
#include <cstdio>

namespace fraclap {

namespace {

void check_finite(const Vector& u, double t) {
    if (u.allFinite())
        return;
    for (Index i = 0; i < u.size(); ++i)
        if (!std::isfinite(u[i]))
            throw NumericalError("divergence: non-finite value at node " +
                                 std::to_string(i) + ", t = " + std::to_string(t) + " ms");
}

} // namespace

StepOutcome backward_euler_step(const VoflOperator& op, const State& current,
                                const ReactionModel& model, double t_next, double dt,
                                const PicardSettings& picard, const Vector& stim,
                                State& next, MatfuncStats* stats, int threads) {
    const Index n = current.v.size();
    const bool with_correction = op.has_correction() && op.diffusivity() != 0.0;

    Vector u_k = current.v;
    Eigen::MatrixXd aux_k;
    Vector g(n), rhs(n), u_next(n);

    double update = 0.0;
    for (int k = 0; k < picard.max_iter; ++k) {
        model.advance_aux(current.aux, u_k, dt, aux_k, threads);
        model.reaction(u_k, aux_k, stim, g, threads);
        rhs = current.v + dt * g;
        if (with_correction)
            rhs += dt * op.correction_partition().mask2(op.apply_fa(u_k, stats));
        u_next = op.solve_fb(rhs, dt, stats);
        check_finite(u_next, t_next);
        update = (u_next - u_k).lpNorm<Eigen::Infinity>();
        u_k = u_next;
        if (update <= picard.tol * (1.0 + u_next.lpNorm<Eigen::Infinity>())) {
            next.v = u_next;
            model.advance_aux(current.aux, u_next, dt, next.aux, threads);
            return StepOutcome{k + 1};
        }
    }
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "Picard iteration did not converge in %d iterations at t = %g ms "
                  "(last update %.3e)",
                  picard.max_iter, t_next, update);
    throw NumericalError(msg);
}

IntegrationResult integrate(const VoflOperator& op, State initial,
                            const ReactionModel& model, const TimeGrid& grid,
                            const StimulusSource& stimulus,
                            const std::vector<ObserverEntry>& observers,
                            const PicardSettings& picard, int threads,
                            const std::function<bool(Index, double, const State&)>&
                                stop_when) {
    IntegrationResult out;
    out.state = std::move(initial);

    auto observe = [&](Index step, double t) {
        for (const auto& o : observers)
            if (o.fn && (step % std::max<Index>(o.every_steps, 1) == 0 ||
                         step == grid.n_steps))
                o.fn(step, t, out.state);
    };

    observe(0, 0.0);
    Vector stim = Vector::Zero(out.state.v.size());
    State next;
    long total_picard = 0;
    for (Index step = 1; step <= grid.n_steps; ++step) {
        const double t_next = static_cast<double>(step) * grid.dt;
        stim.setZero();
        if (stimulus)
            stimulus(t_next, stim);
        const StepOutcome so = backward_euler_step(op, out.state, model, t_next, grid.dt,
                                                   picard, stim, next, &out.matfunc,
                                                   threads);
        total_picard += so.picard_iterations;
        std::swap(out.state, next);
        out.steps = step;
        observe(step, t_next);
        if (stop_when && stop_when(step, t_next, out.state))
            break;
    }
    out.average_picard =
        out.steps > 0 ? static_cast<double>(total_picard) / static_cast<double>(out.steps)
                      : 0.0;
    return out;
}

} // namespace fraclap
