#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reeblab/errors.hpp"
#include "reeblab/types.hpp"

namespace reeblab {

// Phase-space layouts
//
// exact-standard on R^{2n}:  coordinates interleaved as (x_1,y_1,...,x_n,y_n)
// with z_j = x_j + i y_j a view, never a storage format.  The primitive is
// lambda = 1/2 sum (y_j dx_j - x_j dy_j), so omega = d(lambda) = -sum dx_j ^ dy_j.
//
// magnetic-cotangent on T*T^n = T^n x R^n:  coordinates (q_1..q_n,p_1..p_n),
// omega = dp ^ dq + pi^* rho with rho(u,v) = <u, J v>.  The global primitive is
// lambda_theta = p dq + 1/2 <q, J dq>.  q lives in [0,1)^n on the torus; flows
// and loops work in the R^n cover and reduce mod Z^n only at comparison
// boundaries.
//
// Sign convention, fixed project-wide: i_{X_H} omega = -dH.  This is the unique
// choice for which H = |z|^2 / r^2 generates the rotation z(t) = e^{-2it/r^2} z
// on the radius-r sphere.

enum class StructureKind { ExactStandard, MagneticCotangent };

struct SymplecticStructure {
    StructureKind kind = StructureKind::ExactStandard;
    int dim = 0;  // 2n

    // magnetic case only
    Mat j_mag;      // n x n, antisymmetric, nonzero
    Mat proj_ker;   // orthogonal projector onto ker J
    Mat proj_im;    // orthogonal projector onto im J = (ker J)^perp
    Mat a_inv;      // (J restricted to im J)^{-1}, extended by zero on ker J

    // constant matrix of the form and its inverse, Omega_{ij} = omega(e_i,e_j)
    Mat omega;
    Mat omega_inv;

    int pairs() const { return dim / 2; }

    static SymplecticStructure exact_standard(int dim);
    static SymplecticStructure magnetic_cotangent(const Mat& j_mag);
};

/// omega_x(u, v); antisymmetric in (u, v).
double omega_eval(const SymplecticStructure& s, const VecRef& x,
                  const VecRef& u, const VecRef& v);

/// The global primitive one-form at x applied to v (lambda resp. lambda_theta).
double primitive_eval(const SymplecticStructure& s, const VecRef& x,
                      const VecRef& v);

/// The stabilizing one-form of the energy hypersurface applied to v.  Equals
/// the primitive on exact-standard structures; on the magnetic torus it is
///   <pr_ker p, dq> + 1/2 <pr_im p, A pr_im dp>,  A = (J|_{im J})^{-1}.
double stabilizing_form_eval(const SymplecticStructure& s, const VecRef& x,
                             const VecRef& v);

/// Liouville field X = x/2 of the exact-standard structure (i_X d(lambda) = lambda).
Vec liouville_field_eval(const SymplecticStructure& s, const VecRef& x);

/// Reduces torus q-components to [0,1); identity on exact structures.
Vec wrap_torus_point(const SymplecticStructure& s, const VecRef& x);

/// Reduces a phase-space difference: q-components to nearest-integer
/// representatives in [-1/2, 1/2); identity on exact structures.
Vec wrap_torus_delta(const SymplecticStructure& s, const VecRef& dx);

// ---------------------------------------------------------------------------

struct SymmetryAction {
    enum class Kind { Identity, ComplexRotation, CotangentLift };

    Kind kind = Kind::Identity;
    int order = 1;  // m, smallest power giving the identity
    int dim = 0;
    Mat linear;  // constant differential D(phi)
    Vec shift;   // affine part (torus lifts); zero otherwise
    std::vector<int> exponents;  // rotation case: k_1..k_n

    static SymmetryAction identity(int dim);

    /// z_j -> e^{2 pi i k_j / m} z_j on C^n (interleaved pairs).  Each k_j must
    /// be coprime to m.
    static SymmetryAction complex_rotation(int m, const std::vector<int>& ks);

    /// Cotangent lift of the simultaneous rotation of the configuration and
    /// momentum planes of a 2-dof standard system: (q, p) -> (R q, R p) with
    /// R the rotation by 2 pi k / m, in interleaved storage (q1,p1,q2,p2).
    static SymmetryAction configuration_rotation(int m, int k = 1);

    /// Cotangent lift of the torus isometry q -> S q + c (S orthogonal with
    /// integer entries): (q, p) -> (S q + c, S p).
    static SymmetryAction cotangent_lift(int m, const Mat& s_base,
                                         const Vec& c_base);
};

Vec symmetry_apply(const SymmetryAction& a, const VecRef& x);
Mat symmetry_differential(const SymmetryAction& a, const VecRef& x);

/// Affine data (L, c) of phi^j, with j reduced mod order (j may be negative).
void symmetry_power(const SymmetryAction& a, int j, Mat& linear, Vec& shift);
Vec symmetry_apply_power(const SymmetryAction& a, int j, const VecRef& x);

// ---------------------------------------------------------------------------

// Scalar field with analytic derivatives.  Finite differences are test
// oracles only; every catalog system ships analytic gradient and Hessian.
struct Hamiltonian {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
};

struct SymplecticSystem {
    SymplecticStructure structure;
    Hamiltonian hamiltonian;
    SymmetryAction symmetry;
    std::string name;
    Interval energy_window;    // recommended validity window for levels k
    double sample_radius = 1.0;  // ambient scale for seeding and certificates

    int dim() const { return structure.dim; }
};

/// X_H(x) with the convention i_{X_H} omega = -dH, i.e. X_H = Omega^{-1} grad H.
Vec ham_vector_field(const SymplecticSystem& sys, const VecRef& x);

/// Time-derivative matrix of the variational equations at x:
/// delta' = Omega^{-1} Hess H(x) delta.
Mat variational_matrix(const SymplecticSystem& sys, const VecRef& x);

void check_dim(const SymplecticStructure& s, const VecRef& v,
               const char* what);

}  // namespace reeblab
