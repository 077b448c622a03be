#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reeblab/geometry.hpp"

namespace reeblab {

struct KnownFact {
    std::string statement;
    std::string citation;
};

struct CatalogEntry {
    std::string name;
    std::optional<SymplecticSystem> system;  // empty for catalog stubs
    Interval energy_window;
    double default_level = 0.0;
    std::vector<KnownFact> known_facts;

    bool runnable() const { return system.has_value(); }
};

// Radial profile of a star-shaped hypersurface: the 0-homogeneous extension
// F(z) = f(z / |z|) of a positive function on the unit sphere, with analytic
// first and second derivatives (so Euler's relation grad F . z = 0 holds).
struct StarShapedProfile {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
    std::string description;
};

StarShapedProfile constant_profile(double r);

/// f(u) = (sum |u_j|^2 / r_j^2)^{-1/2}: the ellipsoid with complex semi-axes
/// r_1..r_n.  The induced defining Hamiltonian is the quadratic
/// sum |z_j|^2 / r_j^2 - 1.
StarShapedProfile ellipsoid_profile(const std::vector<double>& radii);

/// f(z) = r (1 + eps Re(z_1^mu) / |z|^mu): a rotation-invariant bump whenever
/// mu is a multiple of the symmetry order.  Requires |eps| < 1.
StarShapedProfile bump_profile(double r, double eps, int mu);

CatalogEntry make_henon_heiles(bool validate = true);
CatalogEntry make_hill_lunar_regularized(double level = 0.01,
                                         bool validate = true);

struct TorusIsometry {
    int order = 1;
    Mat s_base;  // orthogonal, integer entries
    Vec c_base;
};

CatalogEntry make_magnetic_torus(const Mat& j_mag,
                                 const std::optional<TorusIsometry>& isometry =
                                     std::nullopt,
                                 bool validate = true);

CatalogEntry make_star_shaped(int n, const StarShapedProfile& profile, int m,
                              const std::vector<int>& exponents,
                              bool validate = true);

/// Moser-regularized Stark--Zeeman systems: catalog stub with citation
/// metadata only (no Hamiltonian is attached).
CatalogEntry make_stark_zeeman_stub();

/// Catalog with default parameters, as listed by the CLI.
std::vector<CatalogEntry> default_catalog();

/// Sampled validation used at construction: symmetry invariance of H,
/// symplecticity of D(phi), m-fold closure, and gradient/Hessian versus
/// central finite differences.  Throws ParameterError on failure.
void validate_system(const SymplecticSystem& sys, int samples = 60,
                     unsigned seed = 12345u);

}  // namespace reeblab
