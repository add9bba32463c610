#include "fraclap/reaction.hpp"

#include "fraclap/parallel.hpp"

namespace fraclap {

void FisherModel::reaction(const Vector& v, const Eigen::MatrixXd&, const Vector& stim,
                           Vector& g, int threads) const {
    g.resize(v.size());
    parallel_for(v.size(), threads, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i)
            g[i] = v[i] * (1.0 - v[i]) + stim[i];
    });
}

void FisherModel::advance_aux(const Eigen::MatrixXd& aux_n, const Vector&, double,
                              Eigen::MatrixXd& aux_out, int) const {
    aux_out = aux_n;
}

State FisherModel::resting_state(Index n_nodes) const {
    return State{Vector::Zero(n_nodes), Eigen::MatrixXd(0, n_nodes)};
}

BeelerReuterModel::BeelerReuterModel(Parameters p) : params_(p) {
    if (!(params_.capacitance > 0.0) || !(params_.surface_to_volume > 0.0))
        throw ConfigError("Beeler-Reuter parameters must be positive");
    if (params_.use_rate_table)
        table_ = std::make_shared<br::RateTable>();
}

void BeelerReuterModel::reaction(const Vector& v, const Eigen::MatrixXd& aux,
                                 const Vector& stim, Vector& g, int threads) const {
    g.resize(v.size());
    const double inv_cm = 1.0 / params_.capacitance;
    const double inv_chi = 1.0 / params_.surface_to_volume;
    parallel_for(v.size(), threads, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            const auto col = aux.col(i);
            const br::Currents cur =
                br::currents(v[i], col[br::M], col[br::H], col[br::J], col[br::D],
                             col[br::F], col[br::X], col[br::C]);
            g[i] = (-cur.total() + stim[i] * inv_chi) * inv_cm;
        }
    });
}

void BeelerReuterModel::advance_aux(const Eigen::MatrixXd& aux_n, const Vector& v,
                                    double dt, Eigen::MatrixXd& aux_out,
                                    int threads) const {
    aux_out = aux_n;
    parallel_for(v.size(), threads, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            double* g = aux_out.col(i).data();
            if (table_)
                br::advance_gates(table_->rates(v[i]), v[i], dt, g);
            else
                br::advance_gates(v[i], dt, g);
        }
    });
}

State BeelerReuterModel::resting_state(Index n_nodes) const {
    const br::RestState rest = br::resting_state();
    State s;
    s.v = Vector::Constant(n_nodes, rest.v);
    s.aux.resize(br::kAuxDim, n_nodes);
    for (Index i = 0; i < n_nodes; ++i)
        for (int k = 0; k < br::kAuxDim; ++k)
            s.aux(k, i) = rest.aux[static_cast<size_t>(k)];
    return s;
}

} // namespace fraclap
