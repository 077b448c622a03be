#include "reeblab/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

namespace reeblab {

namespace {

constexpr double kPi = 3.14159265358979323846;

int gcd_int(int a, int b) { return std::gcd(a, b); }

Mat rotation_2x2(double theta) {
    Mat r(2, 2);
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}

}  // namespace

void check_dim(const SymplecticStructure& s, const VecRef& v,
               const char* what) {
    if (v.size() != s.dim)
        throw InputError(std::string(what) + ": expected dimension " +
                         std::to_string(s.dim) + ", got " +
                         std::to_string(v.size()));
}

SymplecticStructure SymplecticStructure::exact_standard(int dim) {
    if (dim <= 0 || dim % 2 != 0)
        throw ParameterError("exact_standard: dimension must be even and positive");
    SymplecticStructure s;
    s.kind = StructureKind::ExactStandard;
    s.dim = dim;
    s.omega = Mat::Zero(dim, dim);
    s.omega_inv = Mat::Zero(dim, dim);
    for (int j = 0; j < dim / 2; ++j) {
        // omega(e_x, e_y) = -1 per pair, matching omega = -sum dx ^ dy
        s.omega(2 * j, 2 * j + 1) = -1.0;
        s.omega(2 * j + 1, 2 * j) = 1.0;
        s.omega_inv(2 * j, 2 * j + 1) = 1.0;
        s.omega_inv(2 * j + 1, 2 * j) = -1.0;
    }
    return s;
}

SymplecticStructure SymplecticStructure::magnetic_cotangent(const Mat& j_mag) {
    const int n = static_cast<int>(j_mag.rows());
    if (n < 2 || j_mag.cols() != n)
        throw ParameterError("magnetic_cotangent: J must be square, n >= 2");
    if ((j_mag + j_mag.transpose()).norm() > 1e-14 * (1.0 + j_mag.norm()))
        throw ParameterError("magnetic_cotangent: J must be antisymmetric");
    if (j_mag.norm() == 0.0)
        throw ParameterError("magnetic_cotangent: J must be nonzero");

    SymplecticStructure s;
    s.kind = StructureKind::MagneticCotangent;
    s.dim = 2 * n;
    s.j_mag = j_mag;

    // Orthogonal splitting R^n = ker J + im J and A = (J|_{im J})^{-1}.
    // The pseudo-inverse delivers both: J pinv(J) is the projector onto im J
    // and pinv(J) inverts J there.
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(j_mag);
    Mat pinv = cod.pseudoInverse();
    s.a_inv = pinv;
    s.proj_im = j_mag * pinv;
    s.proj_ker = Mat::Identity(n, n) - s.proj_im;

    s.omega = Mat::Zero(2 * n, 2 * n);
    s.omega.topLeftCorner(n, n) = j_mag;
    s.omega.topRightCorner(n, n) = -Mat::Identity(n, n);
    s.omega.bottomLeftCorner(n, n) = Mat::Identity(n, n);

    s.omega_inv = Mat::Zero(2 * n, 2 * n);
    s.omega_inv.topRightCorner(n, n) = Mat::Identity(n, n);
    s.omega_inv.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    s.omega_inv.bottomRightCorner(n, n) = j_mag;
    return s;
}

double omega_eval(const SymplecticStructure& s, const VecRef& x,
                  const VecRef& u, const VecRef& v) {
    check_dim(s, x, "omega_eval point");
    check_dim(s, u, "omega_eval tangent u");
    check_dim(s, v, "omega_eval tangent v");
    return u.dot(s.omega * v);
}

double primitive_eval(const SymplecticStructure& s, const VecRef& x,
                      const VecRef& v) {
    check_dim(s, x, "primitive_eval point");
    check_dim(s, v, "primitive_eval tangent");
    const int n = s.pairs();
    if (s.kind == StructureKind::ExactStandard) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += 0.5 * (x[2 * j + 1] * v[2 * j] - x[2 * j] * v[2 * j + 1]);
        return acc;
    }
    // lambda_theta = p dq + 1/2 <q, J dq>
    return x.tail(n).dot(v.head(n)) + 0.5 * x.head(n).dot(s.j_mag * v.head(n));
}

double stabilizing_form_eval(const SymplecticStructure& s, const VecRef& x,
                             const VecRef& v) {
    check_dim(s, x, "stabilizing_form_eval point");
    check_dim(s, v, "stabilizing_form_eval tangent");
    if (s.kind == StructureKind::ExactStandard)
        return primitive_eval(s, x, v);
    const int n = s.pairs();
    Vec p = x.tail(n);
    return (s.proj_ker * p).dot(v.head(n)) +
           0.5 * (s.proj_im * p).dot(s.a_inv * (s.proj_im * v.tail(n)));
}

Vec liouville_field_eval(const SymplecticStructure& s, const VecRef& x) {
    if (s.kind != StructureKind::ExactStandard)
        throw UnsupportedStructureError(
            "liouville_field_eval: defined on the exact-standard structure only");
    check_dim(s, x, "liouville_field_eval point");
    return 0.5 * x;
}

Vec wrap_torus_point(const SymplecticStructure& s, const VecRef& x) {
    Vec y = x;
    if (s.kind == StructureKind::MagneticCotangent) {
        for (int i = 0; i < s.pairs(); ++i) y[i] -= std::floor(y[i]);
    }
    return y;
}

Vec wrap_torus_delta(const SymplecticStructure& s, const VecRef& dx) {
    Vec y = dx;
    if (s.kind == StructureKind::MagneticCotangent) {
        for (int i = 0; i < s.pairs(); ++i) y[i] -= std::round(y[i]);
    }
    return y;
}

// ---------------------------------------------------------------------------

SymmetryAction SymmetryAction::identity(int dim) {
    SymmetryAction a;
    a.kind = Kind::Identity;
    a.order = 1;
    a.dim = dim;
    a.linear = Mat::Identity(dim, dim);
    a.shift = Vec::Zero(dim);
    return a;
}

SymmetryAction SymmetryAction::complex_rotation(int m,
                                                const std::vector<int>& ks) {
    if (m < 2) throw ParameterError("complex_rotation: order m must be >= 2");
    if (ks.empty()) throw ParameterError("complex_rotation: empty exponents");
    for (int k : ks) {
        int kr = ((k % m) + m) % m;
        if (gcd_int(kr == 0 ? m : kr, m) != 1)
            throw ParameterError("complex_rotation: exponent " +
                                 std::to_string(k) + " not coprime to m = " +
                                 std::to_string(m));
    }
    SymmetryAction a;
    a.kind = Kind::ComplexRotation;
    a.order = m;
    a.dim = 2 * static_cast<int>(ks.size());
    a.exponents = ks;
    a.linear = Mat::Zero(a.dim, a.dim);
    for (std::size_t j = 0; j < ks.size(); ++j)
        a.linear.block<2, 2>(2 * j, 2 * j) = rotation_2x2(2.0 * kPi * ks[j] / m);
    a.shift = Vec::Zero(a.dim);
    return a;
}

SymmetryAction SymmetryAction::configuration_rotation(int m, int k) {
    if (m < 2) throw ParameterError("configuration_rotation: order m must be >= 2");
    SymmetryAction a;
    a.kind = Kind::ComplexRotation;
    a.order = m;
    a.dim = 4;
    a.exponents = {k, k};
    const double theta = 2.0 * kPi * k / m;
    const double c = std::cos(theta), s = std::sin(theta);
    // storage (q1, p1, q2, p2): rotate the (q1,q2) plane and the (p1,p2) plane
    a.linear = Mat::Zero(4, 4);
    a.linear(0, 0) = c;  a.linear(0, 2) = -s;
    a.linear(2, 0) = s;  a.linear(2, 2) = c;
    a.linear(1, 1) = c;  a.linear(1, 3) = -s;
    a.linear(3, 1) = s;  a.linear(3, 3) = c;
    a.shift = Vec::Zero(4);
    return a;
}

SymmetryAction SymmetryAction::cotangent_lift(int m, const Mat& s_base,
                                              const Vec& c_base) {
    const int n = static_cast<int>(s_base.rows());
    if (s_base.cols() != n || c_base.size() != n)
        throw ParameterError("cotangent_lift: inconsistent base dimensions");
    if ((s_base.transpose() * s_base - Mat::Identity(n, n)).norm() > 1e-12)
        throw ParameterError("cotangent_lift: base map must be an isometry");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(s_base(i, j) - std::round(s_base(i, j))) > 1e-12)
                throw ParameterError(
                    "cotangent_lift: base isometry must preserve the Z^n lattice");

    SymmetryAction a;
    a.kind = Kind::CotangentLift;
    a.order = m;
    a.dim = 2 * n;
    a.linear = Mat::Zero(2 * n, 2 * n);
    a.linear.topLeftCorner(n, n) = s_base;
    // (D phi^{-1})^T = S for orthogonal S
    a.linear.bottomRightCorner(n, n) = s_base;
    a.shift = Vec::Zero(2 * n);
    a.shift.head(n) = c_base;

    // m-fold application must be a deck transformation of the cover
    Mat l = Mat::Identity(2 * n, 2 * n);
    Vec sh = Vec::Zero(2 * n);
    for (int i = 0; i < m; ++i) {
        sh = a.linear * sh + a.shift;
        l = a.linear * l;
    }
    if ((l - Mat::Identity(2 * n, 2 * n)).norm() > 1e-10)
        throw ParameterError("cotangent_lift: declared order does not close");
    for (int i = 0; i < n; ++i)
        if (std::abs(sh[i] - std::round(sh[i])) > 1e-10)
            throw ParameterError(
                "cotangent_lift: m-fold shift is not an integer lattice vector");
    return a;
}

Vec symmetry_apply(const SymmetryAction& a, const VecRef& x) {
    if (x.size() != a.dim)
        throw InputError("symmetry_apply: dimension mismatch");
    return a.linear * x + a.shift;
}

Mat symmetry_differential(const SymmetryAction& a, const VecRef& x) {
    if (x.size() != a.dim)
        throw InputError("symmetry_differential: dimension mismatch");
    return a.linear;
}

void symmetry_power(const SymmetryAction& a, int j, Mat& linear, Vec& shift) {
    int m = a.order;
    int jr = m > 0 ? ((j % m) + m) % m : 0;
    linear = Mat::Identity(a.dim, a.dim);
    shift = Vec::Zero(a.dim);
    for (int i = 0; i < jr; ++i) {
        shift = a.linear * shift + a.shift;
        linear = a.linear * linear;
    }
}

Vec symmetry_apply_power(const SymmetryAction& a, int j, const VecRef& x) {
    Mat l;
    Vec s;
    symmetry_power(a, j, l, s);
    return l * x + s;
}

// ---------------------------------------------------------------------------

Vec ham_vector_field(const SymplecticSystem& sys, const VecRef& x) {
    check_dim(sys.structure, x, "ham_vector_field point");
    return sys.structure.omega_inv * sys.hamiltonian.gradient(x);
}

Mat variational_matrix(const SymplecticSystem& sys, const VecRef& x) {
    return sys.structure.omega_inv * sys.hamiltonian.hessian(x);
}

}  // namespace reeblab
