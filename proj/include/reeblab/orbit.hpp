#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reeblab/flow.hpp"

namespace reeblab {

struct FloquetData {
    CVec multipliers;  // spectrum of the restricted twisted return map
    int kernel_dimension = 0;
    bool nondegenerate = false;
    double symplecticity_defect = 0.0;
    double basis_condition = 0.0;
};

// A solution of Phi_tau(x0) = phi^j(x0) on H^{-1}(k), parametrized in
// X_H-time.  On star-shaped hypersurfaces X_H-time and Reeb time coincide;
// the conversion for stable (magnetic) levels lives in invariants.
struct TwistedOrbit {
    std::string system_name;
    int twist = 0;  // j in {0..m-1}
    Vec x0;
    double tau = 0.0;  // > 0
    double energy = 0.0;
    double residual_norm = 0.0;
    int closure_order = 1;  // m / gcd(j, m): concatenations closing the loop
    std::optional<double> action;
    std::optional<FloquetData> floquet;
};

int closure_order_of(int twist, int symmetry_order);

struct ShootingConfig {
    enum class SeedStrategy { Grid, QuasiRandom, UserList };
    SeedStrategy strategy = SeedStrategy::QuasiRandom;
    int seed_count = 32;
    std::vector<Vec> user_seeds;

    int twist = 0;
    double energy = 0.0;
    double tau_min = 0.5;  // must stay > 0
    double tau_max = 8.0;
    int tau_grid = 32;
    int candidates_per_seed = 4;

    double newton_tol = 1e-11;
    int max_iterations = 40;
    double accept_tol = 1e-9;
    double dedup_threshold = 1e-6;
    double grad_floor = 1e-6;  // regularity floor for ||grad H|| at seeds
    int jobs = 0;
    FlowOptions flow;
};

/// Residual (Phi_tau(x) - phi^j(x), H(x) - k); torus q-components are
/// compared with the nearest-integer lift.
Vec twisted_residual(const SymplecticSystem& sys, int twist, const VecRef& x,
                     double tau, double energy, const FlowOptions& opts = {});

struct NewtonOutcome {
    bool converged = false;
    TwistedOrbit orbit;  // valid only when converged
    int iterations = 0;
    double final_residual = 0.0;
    int jacobian_rank = 0;
    int kernel_dimension = 0;
    std::string message;
};

/// Damped Gauss-Newton on the twisted residual augmented with phase rows
/// (orthogonality of the update to X_H(x), plus the energy row which pins the
/// grad H direction).  Minimal-norm steps handle Morse-Bott orbit families;
/// a singular system that stalls raises RankDeficiencyError.
NewtonOutcome newton_refine(const SymplecticSystem& sys,
                            const ShootingConfig& config, const VecRef& x_guess,
                            double tau_guess);

struct SweepResult {
    std::vector<TwistedOrbit> orbits;  // deduplicated, sorted by (j, tau, x0)
    int seeds_requested = 0;
    int seeds_on_level = 0;
    int seeds_discarded = 0;
    int candidates_tried = 0;
    int converged_raw = 0;
};

SweepResult seed_sweep(const SymplecticSystem& sys,
                       const ShootingConfig& config);

enum class OrbitRelation { Distinct, TimeShift, Symmetry, Iterate };

struct DuplicateRecord {
    std::size_t orbit_index = 0;
    std::size_t representative_index = 0;
    OrbitRelation relation = OrbitRelation::Distinct;
    int multiplicity = 1;  // p for iterates
};

struct DedupResult {
    std::vector<TwistedOrbit> representatives;  // smallest tau per class
    std::vector<DuplicateRecord> merged;
};

/// Quotients by time shift, by the symmetry action, and by iteration
/// (trace-set comparison with a Hausdorff threshold).
DedupResult deduplicate_orbits(const std::vector<TwistedOrbit>& orbits,
                               const SymplecticSystem& sys,
                               double threshold = 1e-6);

/// Relation of b to a (is b a time shift / symmetry image / p-fold iterate of
/// a?).  Writes p when the relation is Iterate.
OrbitRelation orbit_relation(const TwistedOrbit& a, const TwistedOrbit& b,
                             const SymplecticSystem& sys, double threshold,
                             int* multiplicity = nullptr);

struct TorusSearchBox {
    double tau_min = 0.1;
    double tau_max = 10.0;
    int tau_scan = 600;
    int winding_max = 2;  // |w_i| <= winding_max in the q-condition
};

/// Solves the magnetic-torus twisted-orbit conditions
///   int_0^tau e^{sJ} p ds + q = phi^j(q),  e^{tau J} p = S_j p,  |p|^2 = 2k
/// directly: the p-condition by a sigma_min scan of e^{tau J} - S_j over tau
/// (plus the ker-J lattice branch), the q-condition as an affine solve modulo
/// Z^n with enumerated winding vectors.  Every emitted orbit is cross-checked
/// against the integrated flow.
std::vector<TwistedOrbit> torus_closed_form(const SymplecticSystem& sys,
                                            double energy, int twist,
                                            const TorusSearchBox& box);

struct ContinuationResult {
    std::vector<TwistedOrbit> family;  // monotone in energy
    bool reached_target = false;
    bool fold_detected = false;
    std::string diagnostic;
};

/// Pseudo-arclength style continuation of (x0, tau) in the energy k with
/// Newton correction each step; halts at folds with a diagnostic.
ContinuationResult continuation_in_energy(const SymplecticSystem& sys,
                                          const TwistedOrbit& orbit,
                                          double k_target, int steps,
                                          const ShootingConfig& config = {});

struct OrbitVerification {
    double residual = 0.0;
    double energy_error = 0.0;
    double closure_defect = 0.0;      // ord-fold concatenation against x0
    double equivariance_defect = 0.0; // phi(trace) against the trace
    bool passed = false;
};

OrbitVerification verify_orbit(const SymplecticSystem& sys,
                               const TwistedOrbit& orbit, double tol = 1e-8,
                               const FlowOptions& opts = {});

/// Evenly spaced samples along the closed (concatenated) orbit.
std::vector<Vec> orbit_trace_points(const SymplecticSystem& sys,
                                    const TwistedOrbit& orbit, int count,
                                    const FlowOptions& opts = {});

/// Low-discrepancy samples projected onto H^{-1}(k) along grad H.  Failures
/// to project within 20 Newton steps are discarded and counted.
std::vector<Vec> sample_on_level(const SymplecticSystem& sys, double energy,
                                 int count, int* discarded = nullptr,
                                 double grad_floor = 1e-6);

/// e^{tJ} and int_0^t e^{sJ} ds for antisymmetric J, via the (unitary)
/// complex eigendecomposition.
Mat matrix_exp_antisymmetric(const Mat& j, double t);
Mat matrix_expint_antisymmetric(const Mat& j, double t);

double halton(unsigned long long index, int base);

}  // namespace reeblab
