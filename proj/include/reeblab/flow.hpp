#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "reeblab/geometry.hpp"

namespace reeblab {

struct FlowOptions {
    double rtol = 1e-12;   // relative local tolerance
    double atol = 1e-14;   // absolute local tolerance
    double h_init = 0.0;   // initial step, 0 = automatic
    double fixed_step = 0.0;  // > 0 switches off adaptivity (order studies)
    long max_steps = 4000000;
    bool store_dense = true;
    // Newton projection onto H^{-1}(k) along grad H after each accepted step;
    // off by default, recommended for long orbit refinement.
    std::optional<double> project_to_level;
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    long evaluations = 0;
};

// One accepted step of the order-4 continuous extension.
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    Vec rc1, rc2, rc3, rc4, rc5;
};

struct FlowResult {
    Vec final_point;
    double t0 = 0.0;
    double t_final = 0.0;
    std::vector<double> sample_times;  // accepted step endpoints (incl. t0)
    std::vector<Vec> samples;
    double energy_drift = 0.0;  // max |H(x(t)) - H(x(0))| over samples
    StepStats stats;
    std::vector<DenseStep> dense;

    /// Dense-output evaluation for t within the integrated span.
    Vec at(double t) const;
};

struct IntegrationError : Error {
    IntegrationError(const std::string& what, FlowResult partial_result)
        : Error(what), partial(std::move(partial_result)) {}
    FlowResult partial;
};

using OdeRhs = std::function<void(double, const Vec&, Vec&)>;

/// Generic driver: adaptive embedded Dormand-Prince 5(4) pair with the
/// standard quartic continuous extension.
FlowResult integrate_ode(const OdeRhs& rhs, const Vec& x0, double t_begin,
                         double t_end, const FlowOptions& opts = {});

/// Hamiltonian flow of the system (autonomous); reports energy drift and
/// optionally projects each accepted point back onto H^{-1}(k).
FlowResult integrate_flow(const SymplecticSystem& sys, const VecRef& x0,
                          double T, const FlowOptions& opts = {});

struct MonodromyResult {
    Mat monodromy;                 // D Phi_T(x0)
    double symplecticity_defect = 0.0;  // || M^T Omega M - Omega ||_F
    bool defect_flagged = false;
    CVec eigenvalues;
    FlowResult flow;
};

/// Integrates the flow jointly with its linearization M' = Omega^{-1} Hess H M.
MonodromyResult integrate_variational(const SymplecticSystem& sys,
                                      const VecRef& x0, double T,
                                      const FlowOptions& opts = {},
                                      double symplecticity_tol = 1e-6);

struct Section {
    std::function<double(const Vec&)> value;  // the section is {value = 0}
    int direction = 0;  // sign of d/dt value at the crossing; 0 accepts both

    static Section hyperplane(const Vec& normal, double offset,
                              int direction = 0);
};

/// First crossing of the section within [0, horizon], located on the dense
/// output to 1e-12 in time.  A start on the section does not count; the
/// trajectory must leave it first.
std::pair<double, Vec> section_crossing(const SymplecticSystem& sys,
                                        const VecRef& x0,
                                        const Section& section, double horizon,
                                        const FlowOptions& opts = {});

/// Independent integrations over a batch of initial conditions with
/// deterministic output ordering.
std::vector<FlowResult> flow_map_batch(const SymplecticSystem& sys,
                                       const std::vector<Vec>& x0s, double T,
                                       const FlowOptions& opts = {},
                                       int jobs = 0);

}  // namespace reeblab
