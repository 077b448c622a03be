#include "reeblab/catalog.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <random>

namespace reeblab {

namespace {

Vec random_point(const SymplecticSystem& sys, std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    Vec x(sys.dim());
    if (sys.structure.kind == StructureKind::MagneticCotangent) {
        const int n = sys.structure.pairs();
        for (int i = 0; i < n; ++i) x[i] = unit(rng);
        for (int i = 0; i < n; ++i) x[n + i] = 1.2 * sym(rng);
    } else {
        for (int i = 0; i < sys.dim(); ++i) x[i] = sys.sample_radius * sym(rng);
        if (x.norm() < 0.2 * sys.sample_radius)
            x += Vec::Constant(sys.dim(), 0.3 * sys.sample_radius);
    }
    return x;
}

Vec fd_gradient(const Hamiltonian& h, const Vec& x, double step = 1e-6) {
    Vec g(x.size());
    Vec e = x;
    for (int i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        e[i] = xi + step;
        const double hp = h.value(e);
        e[i] = xi - step;
        const double hm = h.value(e);
        e[i] = xi;
        g[i] = (hp - hm) / (2.0 * step);
    }
    return g;
}

}  // namespace

void validate_system(const SymplecticSystem& sys, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    const Mat& omega = sys.structure.omega;
    const SymmetryAction& a = sys.symmetry;

    for (int s = 0; s < samples; ++s) {
        Vec x = random_point(sys, rng);

        // H o phi = H
        Vec px = symmetry_apply(a, x);
        double hx = sys.hamiltonian.value(x);
        double hpx = sys.hamiltonian.value(px);
        if (std::abs(hpx - hx) > 1e-10 * (1.0 + std::abs(hx)))
            throw ParameterError(sys.name +
                                 ": Hamiltonian not invariant under the symmetry");

        // D(phi)^T Omega D(phi) = Omega
        Mat d = symmetry_differential(a, x);
        if ((d.transpose() * omega * d - omega).norm() > 1e-10 * (1.0 + omega.norm()))
            throw ParameterError(sys.name + ": symmetry differential not symplectic");

        // m-fold application returns the input (mod the torus lattice)
        Vec y = x;
        for (int i = 0; i < a.order; ++i) y = symmetry_apply(a, y);
        Vec diff = wrap_torus_delta(sys.structure, y - x);
        if (diff.norm() > 1e-12 * (1.0 + x.norm()) + 1e-12)
            throw ParameterError(sys.name + ": symmetry order does not close");

        // analytic gradient against central differences
        Vec g = sys.hamiltonian.gradient(x);
        Vec gfd = fd_gradient(sys.hamiltonian, x);
        if ((g - gfd).norm() > 1e-6 * (1.0 + g.norm()))
            throw ParameterError(sys.name + ": analytic gradient disagrees with "
                                            "finite differences");
    }
}

// ---------------------------------------------------------------------------
// Star-shaped profiles

StarShapedProfile constant_profile(double r) {
    if (r <= 0.0) throw ParameterError("constant_profile: radius must be positive");
    StarShapedProfile p;
    p.value = [r](const Vec&) { return r; };
    p.gradient = [r](const Vec& z) { return Vec::Zero(z.size()).eval(); };
    p.hessian = [r](const Vec& z) {
        return Mat::Zero(z.size(), z.size()).eval();
    };
    p.description = "constant radius " + std::to_string(r);
    return p;
}

StarShapedProfile ellipsoid_profile(const std::vector<double>& radii) {
    for (double r : radii)
        if (r <= 0.0) throw ParameterError("ellipsoid_profile: radii must be positive");
    const int n = static_cast<int>(radii.size());
    Vec ddiag(2 * n);
    for (int j = 0; j < n; ++j)
        ddiag[2 * j] = ddiag[2 * j + 1] = 1.0 / (radii[j] * radii[j]);

    StarShapedProfile p;
    p.value = [ddiag](const Vec& z) {
        const double s = z.squaredNorm();
        const double q = z.dot(ddiag.asDiagonal() * z);
        return std::sqrt(s / q);
    };
    p.gradient = [ddiag](const Vec& z) {
        const double s = z.squaredNorm();
        const double q = z.dot(ddiag.asDiagonal() * z);
        Vec dz = ddiag.asDiagonal() * z;
        return (std::pow(s, -0.5) * std::pow(q, -0.5) * z -
                std::pow(s, 0.5) * std::pow(q, -1.5) * dz)
            .eval();
    };
    p.hessian = [ddiag](const Vec& z) {
        const double s = z.squaredNorm();
        const double q = z.dot(ddiag.asDiagonal() * z);
        Vec dz = ddiag.asDiagonal() * z;
        const int dim = static_cast<int>(z.size());
        Mat h = std::pow(s, -0.5) * std::pow(q, -0.5) * Mat::Identity(dim, dim);
        h -= std::pow(s, -1.5) * std::pow(q, -0.5) * (z * z.transpose());
        h -= std::pow(s, -0.5) * std::pow(q, -1.5) *
             (z * dz.transpose() + dz * z.transpose());
        h += 3.0 * std::pow(s, 0.5) * std::pow(q, -2.5) * (dz * dz.transpose());
        h -= std::pow(s, 0.5) * std::pow(q, -1.5) *
             Mat(ddiag.asDiagonal());
        return h;
    };
    p.description = "ellipsoid";
    return p;
}

StarShapedProfile bump_profile(double r, double eps, int mu) {
    if (r <= 0.0 || std::abs(eps) >= 1.0)
        throw ParameterError("bump_profile: need r > 0 and |eps| < 1");
    if (mu < 2) throw ParameterError("bump_profile: harmonic degree must be >= 2");

    using Cd = std::complex<double>;
    auto w_data = [mu](const Vec& z, double& w, Vec& gw, Mat& hw, int want) {
        Cd z1(z[0], z[1]);
        w = std::real(std::pow(z1, mu));
        if (want < 1) return;
        Cd zm1 = std::pow(z1, mu - 1);
        gw = Vec::Zero(z.size());
        gw[0] = mu * std::real(zm1);
        gw[1] = -mu * std::imag(zm1);
        if (want < 2) return;
        Cd zm2 = std::pow(z1, mu - 2);
        hw = Mat::Zero(z.size(), z.size());
        const double c = mu * (mu - 1);
        hw(0, 0) = c * std::real(zm2);
        hw(0, 1) = hw(1, 0) = -c * std::imag(zm2);
        hw(1, 1) = -c * std::real(zm2);
    };

    StarShapedProfile p;
    p.value = [r, eps, mu, w_data](const Vec& z) {
        double w;
        Vec gw;
        Mat hw;
        w_data(z, w, gw, hw, 0);
        return r * (1.0 + eps * w * std::pow(z.squaredNorm(), -0.5 * mu));
    };
    p.gradient = [r, eps, mu, w_data](const Vec& z) {
        double w;
        Vec gw;
        Mat hw;
        w_data(z, w, gw, hw, 1);
        const double s = z.squaredNorm();
        return (r * eps *
                (std::pow(s, -0.5 * mu) * gw -
                 mu * w * std::pow(s, -0.5 * (mu + 2)) * z))
            .eval();
    };
    p.hessian = [r, eps, mu, w_data](const Vec& z) {
        double w;
        Vec gw;
        Mat hw;
        w_data(z, w, gw, hw, 2);
        const double s = z.squaredNorm();
        const int dim = static_cast<int>(z.size());
        Mat h = std::pow(s, -0.5 * mu) * hw;
        h -= mu * std::pow(s, -0.5 * (mu + 2)) *
             (gw * z.transpose() + z * gw.transpose() + w * Mat::Identity(dim, dim));
        h += mu * (mu + 2) * w * std::pow(s, -0.5 * (mu + 4)) * (z * z.transpose());
        return (r * eps * h).eval();
    };
    p.description = "bump r=" + std::to_string(r) + " eps=" + std::to_string(eps);
    return p;
}

// ---------------------------------------------------------------------------

CatalogEntry make_star_shaped(int n, const StarShapedProfile& profile, int m,
                              const std::vector<int>& exponents, bool validate) {
    if (n < 2) throw ParameterError("make_star_shaped: need n >= 2");
    if (static_cast<int>(exponents.size()) != n)
        throw ParameterError("make_star_shaped: need one exponent per complex coordinate");

    SymplecticSystem sys;
    sys.structure = SymplecticStructure::exact_standard(2 * n);
    sys.symmetry = SymmetryAction::complex_rotation(m, exponents);
    sys.name = "star-shaped(" + profile.description + ")";

    auto fval = profile.value;
    auto fgrad = profile.gradient;
    auto fhess = profile.hessian;

    // H_f(z) = |z|^2 / f(z/|z|)^2 - 1, the square of the Minkowski gauge of
    // Sigma_f minus one.  f is evaluated on the unit sphere through its
    // 0-homogeneous extension; the gauge-squared normalization is what makes
    // lambda(X_H) = 1 along Sigma_f.
    sys.hamiltonian.value = [fval](const Vec& z) {
        const double f = fval(z);
        return z.squaredNorm() / (f * f) - 1.0;
    };
    sys.hamiltonian.gradient = [fval, fgrad](const Vec& z) {
        const double f = fval(z);
        const Vec gf = fgrad(z);
        return (2.0 / (f * f) * z -
                2.0 * z.squaredNorm() / (f * f * f) * gf)
            .eval();
    };
    sys.hamiltonian.hessian = [fval, fgrad, fhess](const Vec& z) {
        const double f = fval(z);
        const Vec gf = fgrad(z);
        const Mat hf = fhess(z);
        const double s = z.squaredNorm();
        const int dim = static_cast<int>(z.size());
        Mat h = 2.0 / (f * f) * Mat::Identity(dim, dim);
        h -= 4.0 / (f * f * f) * (z * gf.transpose() + gf * z.transpose());
        h += 6.0 * s / (f * f * f * f) * (gf * gf.transpose());
        h -= 2.0 * s / (f * f * f) * hf;
        return h;
    };

    // f o phi = f, f bounded away from zero: sampled at construction
    {
        std::mt19937 rng(98765u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double fmin = std::numeric_limits<double>::infinity();
        double fmax = 0.0;
        for (int s = 0; s < 256; ++s) {
            Vec u(2 * n);
            for (int i = 0; i < 2 * n; ++i) u[i] = gauss(rng);
            u.normalize();
            const double fu = fval(u);
            fmin = std::min(fmin, fu);
            fmax = std::max(fmax, fu);
            const double fpu = fval(symmetry_apply(sys.symmetry, u));
            if (std::abs(fpu - fu) > 1e-10 * (1.0 + std::abs(fu)))
                throw ParameterError("make_star_shaped: profile not invariant "
                                     "under the rotation");
        }
        if (fmin <= 1e-6)
            throw ParameterError("make_star_shaped: profile not bounded away from zero");
        sys.sample_radius = 1.3 * fmax;
    }

    sys.energy_window = {-0.5, 1.0};

    CatalogEntry e;
    e.name = "star-shaped";
    e.energy_window = sys.energy_window;
    e.default_level = 0.0;
    e.known_facts.push_back(
        {"Sigma_f = H^{-1}(0) is a contact hypersurface with lambda(X_H) = 1",
         "Frauenfelder & van Koert 2018, Lemma 12.2.2"});
    e.system = std::move(sys);
    if (validate) validate_system(*e.system);
    return e;
}

CatalogEntry make_henon_heiles(bool validate) {
    SymplecticSystem sys;
    sys.structure = SymplecticStructure::exact_standard(4);
    sys.symmetry = SymmetryAction::configuration_rotation(3, 1);
    sys.name = "henon-heiles";
    sys.sample_radius = 0.8;
    sys.energy_window = {0.0, 1.0 / 6.0};

    // storage (q1, p1, q2, p2)
    sys.hamiltonian.value = [](const Vec& x) {
        const double q1 = x[0], p1 = x[1], q2 = x[2], p2 = x[3];
        return 0.5 * (p1 * p1 + p2 * p2 + q1 * q1 + q2 * q2) + q1 * q1 * q2 -
               q2 * q2 * q2 / 3.0;
    };
    sys.hamiltonian.gradient = [](const Vec& x) {
        const double q1 = x[0], p1 = x[1], q2 = x[2], p2 = x[3];
        Vec g(4);
        g[0] = q1 + 2.0 * q1 * q2;
        g[1] = p1;
        g[2] = q2 + q1 * q1 - q2 * q2;
        g[3] = p2;
        return g;
    };
    sys.hamiltonian.hessian = [](const Vec& x) {
        const double q1 = x[0], q2 = x[2];
        Mat h = Mat::Zero(4, 4);
        h(0, 0) = 1.0 + 2.0 * q2;
        h(0, 2) = h(2, 0) = 2.0 * q1;
        h(2, 2) = 1.0 - 2.0 * q2;
        h(1, 1) = h(3, 3) = 1.0;
        return h;
    };

    CatalogEntry e;
    e.name = "henon-heiles";
    e.energy_window = sys.energy_window;
    e.default_level = 0.125;
    e.known_facts.push_back(
        {"for 0 < k < 1/6 the level set contains a strictly convex sphere-like "
         "component; the quotient by the Z_3 rotation is a lens space",
         "Henon & Heiles 1964; Schneider 2020"});
    e.system = std::move(sys);
    if (validate) validate_system(*e.system);
    return e;
}

CatalogEntry make_hill_lunar_regularized(double level, bool validate) {
    SymplecticSystem sys;
    sys.structure = SymplecticStructure::exact_standard(4);
    sys.symmetry = SymmetryAction::configuration_rotation(4, 1);
    sys.name = "hill-lunar";
    sys.sample_radius = 0.5;
    sys.energy_window = {0.0, 0.05};

    // Levi-Civita regularized Hamiltonian, storage (q1, p1, q2, p2)
    sys.hamiltonian.value = [](const Vec& x) {
        const double q1 = x[0], p1 = x[1], q2 = x[2], p2 = x[3];
        const double qq = q1 * q1 + q2 * q2;
        const double g = std::pow(q1, 6) - 3.0 * std::pow(q1, 4) * q2 * q2 -
                         3.0 * q1 * q1 * std::pow(q2, 4) + std::pow(q2, 6);
        return 0.5 * (p1 * p1 + p2 * p2 + qq) +
               2.0 * qq * (q2 * p1 - q1 * p2) - 4.0 * g;
    };
    sys.hamiltonian.gradient = [](const Vec& x) {
        const double q1 = x[0], p1 = x[1], q2 = x[2], p2 = x[3];
        const double qq = q1 * q1 + q2 * q2;
        const double cross = q2 * p1 - q1 * p2;
        const double g1 = 6.0 * std::pow(q1, 5) -
                          12.0 * std::pow(q1, 3) * q2 * q2 -
                          6.0 * q1 * std::pow(q2, 4);
        const double g2 = -6.0 * std::pow(q1, 4) * q2 -
                          12.0 * q1 * q1 * std::pow(q2, 3) +
                          6.0 * std::pow(q2, 5);
        Vec g(4);
        g[0] = q1 + 4.0 * q1 * cross - 2.0 * qq * p2 - 4.0 * g1;
        g[1] = p1 + 2.0 * qq * q2;
        g[2] = q2 + 4.0 * q2 * cross + 2.0 * qq * p1 - 4.0 * g2;
        g[3] = p2 - 2.0 * qq * q1;
        return g;
    };
    sys.hamiltonian.hessian = [](const Vec& x) {
        const double q1 = x[0], p1 = x[1], q2 = x[2], p2 = x[3];
        const double qq = q1 * q1 + q2 * q2;
        const double cross = q2 * p1 - q1 * p2;
        const double g11 = 30.0 * std::pow(q1, 4) - 36.0 * q1 * q1 * q2 * q2 -
                           6.0 * std::pow(q2, 4);
        const double g12 = -24.0 * std::pow(q1, 3) * q2 -
                           24.0 * q1 * std::pow(q2, 3);
        const double g22 = -6.0 * std::pow(q1, 4) - 36.0 * q1 * q1 * q2 * q2 +
                           30.0 * std::pow(q2, 4);
        Mat h = Mat::Zero(4, 4);
        h(0, 0) = 1.0 + 4.0 * cross - 8.0 * q1 * p2 - 4.0 * g11;
        h(0, 2) = h(2, 0) = 4.0 * q1 * p1 - 4.0 * q2 * p2 - 4.0 * g12;
        h(0, 1) = h(1, 0) = 4.0 * q1 * q2;
        h(0, 3) = h(3, 0) = -4.0 * q1 * q1 - 2.0 * qq;
        h(2, 2) = 1.0 + 4.0 * cross + 8.0 * q2 * p1 - 4.0 * g22;
        h(2, 1) = h(1, 2) = 4.0 * q2 * q2 + 2.0 * qq;
        h(2, 3) = h(3, 2) = -4.0 * q1 * q2;
        h(1, 1) = h(3, 3) = 1.0;
        return h;
    };

    CatalogEntry e;
    e.name = "hill-lunar";
    e.energy_window = sys.energy_window;
    // "k > 0 sufficiently small" is not quantified; the default below is the
    // test setting and is configurable, not asserted.
    e.default_level = level;
    e.known_facts.push_back(
        {"for small k > 0 the regularized level set contains a strictly convex "
         "sphere-like component with at least two periodic orbits",
         "Frauenfelder & van Koert 2018, Sec. 5.8"});
    e.system = std::move(sys);
    if (validate) validate_system(*e.system);
    return e;
}

CatalogEntry make_magnetic_torus(const Mat& j_mag,
                                 const std::optional<TorusIsometry>& isometry,
                                 bool validate) {
    SymplecticSystem sys;
    sys.structure = SymplecticStructure::magnetic_cotangent(j_mag);
    const int n = sys.structure.pairs();

    if (isometry) {
        if ((isometry->s_base * j_mag - j_mag * isometry->s_base).norm() >
            1e-12 * (1.0 + j_mag.norm()))
            throw ParameterError(
                "make_magnetic_torus: base isometry does not commute with J");
        sys.symmetry = SymmetryAction::cotangent_lift(
            isometry->order, isometry->s_base, isometry->c_base);
    } else {
        sys.symmetry = SymmetryAction::identity(2 * n);
    }
    sys.name = "magnetic-torus";
    sys.sample_radius = 1.5;
    sys.energy_window = {0.0, std::numeric_limits<double>::infinity()};

    sys.hamiltonian.value = [n](const Vec& x) {
        return 0.5 * x.tail(n).squaredNorm();
    };
    sys.hamiltonian.gradient = [n](const Vec& x) {
        Vec g = Vec::Zero(2 * n);
        g.tail(n) = x.tail(n);
        return g;
    };
    sys.hamiltonian.hessian = [n](const Vec& x) {
        Mat h = Mat::Zero(2 * n, 2 * n);
        h.bottomRightCorner(n, n) = Mat::Identity(n, n);
        return h;
    };

    CatalogEntry e;
    e.name = "magnetic-torus";
    e.energy_window = sys.energy_window;
    e.default_level = 0.5;
    e.known_facts.push_back(
        {"Sigma_k is a displaceable stable Hamiltonian hypersurface for every "
         "k > 0",
         "Cieliebak, Frauenfelder & Paternain 2010, Prop. 6.3"});
    e.system = std::move(sys);
    if (validate) validate_system(*e.system);
    return e;
}

CatalogEntry make_stark_zeeman_stub() {
    CatalogEntry e;
    e.name = "stark-zeeman";
    e.energy_window = {0.0, 0.0};
    e.known_facts.push_back(
        {"below the first critical value, Moser-regularized energy surfaces "
         "are diffeomorphic to S*S^2 = RP^3; no explicit Hamiltonian is "
         "catalogued",
         "Cieliebak, Frauenfelder & Zhao 2017, Cor. 1"});
    return e;
}

std::vector<CatalogEntry> default_catalog() {
    std::vector<CatalogEntry> cat;
    cat.push_back(make_star_shaped(2, constant_profile(1.0), 2, {1, 1}, false));
    cat.back().name = "star-shaped";
    cat.push_back(make_henon_heiles(false));
    cat.push_back(make_hill_lunar_regularized(0.01, false));
    Mat j(2, 2);
    j << 0.0, -1.0, 1.0, 0.0;
    cat.push_back(make_magnetic_torus(j, std::nullopt, false));
    cat.push_back(make_stark_zeeman_stub());
    return cat;
}

}  // namespace reeblab
