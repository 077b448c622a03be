// Adaptive Dormand-Prince 5(4) integration with the standard order-4
// continuous extension, after the DOPRI5 code of Hairer, Norsett & Wanner
// (Solving ODEs I, 2nd ed.).  One integrator family serves every catalog
// system; the magnetic and rotation-term Hamiltonians are not separable, so
// splitting methods buy nothing here.

#include "reeblab/flow.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "reeblab/parallel.hpp"

namespace reeblab {

namespace {

// Butcher tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// error weights (5th minus embedded 4th order)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

Vec dense_eval(const DenseStep& s, double t) {
    const double theta = (t - s.t0) / s.h;
    const double theta1 = 1.0 - theta;
    return s.rc1 +
           theta * (s.rc2 + theta1 * (s.rc3 + theta * (s.rc4 + theta1 * s.rc5)));
}

double initial_step(const OdeRhs& rhs, double t0, const Vec& x0, const Vec& f0,
                    double rtol, double atol, double dir, double span,
                    StepStats& stats) {
    const double d0 = x0.norm();
    const double d1n = f0.norm();
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, span);
    Vec x1 = x0 + dir * h0 * f0;
    Vec f1(x0.size());
    rhs(t0 + dir * h0, x1, f1);
    ++stats.evaluations;
    const double d2 = (f1 - f0).norm() / h0;
    double h1;
    const double dm = std::max(d1n, d2);
    if (dm <= 1e-15)
        h1 = std::max(1e-6, h0 * 1e-3);
    else
        h1 = std::pow(0.01 / dm, 0.2);
    double h = std::min({100.0 * h0, h1, span});
    (void)rtol;
    (void)atol;
    return h;
}

}  // namespace

Vec FlowResult::at(double t) const {
    if (dense.empty()) {
        if (t == t0 || samples.size() == 1) return final_point;
        throw InputError("FlowResult::at: no dense output stored");
    }
    const double lo = dense.front().t0;
    const double hi = dense.back().t0 + dense.back().h;
    const double span = hi - lo;
    const double slack = 1e-9 * (std::abs(span) + 1.0);
    if ((span > 0 && (t < lo - slack || t > hi + slack)) ||
        (span < 0 && (t > lo + slack || t < hi - slack)))
        throw InputError("FlowResult::at: time outside integrated span");
    // binary search over step start times
    std::size_t a = 0, b = dense.size() - 1;
    const bool fwd = span > 0;
    while (a < b) {
        std::size_t mid = (a + b + 1) / 2;
        if (fwd ? (dense[mid].t0 <= t) : (dense[mid].t0 >= t))
            a = mid;
        else
            b = mid - 1;
    }
    return dense_eval(dense[a], t);
}

FlowResult integrate_ode(const OdeRhs& rhs, const Vec& x0, double t_begin,
                         double t_end, const FlowOptions& opts) {
    const long n = x0.size();
    FlowResult res;
    res.t0 = t_begin;
    res.final_point = x0;
    res.t_final = t_begin;
    res.sample_times.push_back(t_begin);
    res.samples.push_back(x0);
    if (t_end == t_begin) return res;

    const double dir = t_end > t_begin ? 1.0 : -1.0;
    const double span = std::abs(t_end - t_begin);

    Vec y = x0, ynew(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n),
        yst(n), yerr(n);
    double t = t_begin;
    rhs(t, y, k1);
    ++res.stats.evaluations;

    double h;
    const bool fixed = opts.fixed_step > 0.0;
    if (fixed)
        h = opts.fixed_step;
    else if (opts.h_init > 0.0)
        h = std::min(opts.h_init, span);
    else
        h = initial_step(rhs, t, y, k1, opts.rtol, opts.atol, dir, span,
                         res.stats);

    double facold = 1e-4;
    bool last = false;

    while (!last) {
        if (res.stats.accepted + res.stats.rejected > opts.max_steps)
            throw IntegrationError("integrate_ode: step budget exhausted", res);
        const double remaining = std::abs(t_end - t);
        if (h >= remaining * (1.0 - 1e-14)) {
            h = remaining;
            last = true;
        }
        if (h < 1e-14 * (std::abs(t) + 1.0) && !last)
            throw IntegrationError("integrate_ode: step size underflow", res);

        const double hs = dir * h;
        yst = y + hs * (a21 * k1);
        rhs(t + c2 * hs, yst, k2);
        yst = y + hs * (a31 * k1 + a32 * k2);
        rhs(t + c3 * hs, yst, k3);
        yst = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * hs, yst, k4);
        yst = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * hs, yst, k5);
        yst = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + hs, yst, k6);
        ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + hs, ynew, k7);
        res.stats.evaluations += 6;

        double err = 0.0;
        if (!fixed) {
            yerr = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 +
                         e7 * k7);
            for (long i = 0; i < n; ++i) {
                const double sc = opts.atol +
                                  opts.rtol * std::max(std::abs(y[i]),
                                                       std::abs(ynew[i]));
                const double q = yerr[i] / sc;
                err += q * q;
            }
            err = std::sqrt(err / static_cast<double>(n));
        }

        if (fixed || err <= 1.0) {
            ++res.stats.accepted;
            if (opts.store_dense) {
                DenseStep ds;
                ds.t0 = t;
                ds.h = hs;
                ds.rc1 = y;
                ds.rc2 = ynew - y;
                ds.rc3 = hs * k1 - ds.rc2;
                ds.rc4 = ds.rc2 - hs * k7 - ds.rc3;
                ds.rc5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 +
                               d6 * k6 + d7 * k7);
                res.dense.push_back(std::move(ds));
            }
            t += hs;
            y = ynew;
            k1 = k7;  // FSAL
            res.sample_times.push_back(t);
            res.samples.push_back(y);
            if (!fixed) {
                const double expo = 0.2;
                double fac = std::pow(std::max(err, 1e-16), expo) /
                             std::pow(facold, 0.04);
                fac = std::clamp(0.9 / fac, 0.2, 5.0);
                h = h * fac;
                facold = std::max(err, 1e-4);
            }
        } else {
            ++res.stats.rejected;
            last = false;
            const double fac = std::max(0.2, 0.9 * std::pow(err, -0.2) / 1.0);
            h = h * std::min(fac, 1.0);
        }
    }

    res.final_point = y;
    res.t_final = t;
    return res;
}

FlowResult integrate_flow(const SymplecticSystem& sys, const VecRef& x0,
                          double T, const FlowOptions& opts) {
    check_dim(sys.structure, x0, "integrate_flow initial point");
    OdeRhs rhs = [&sys](double, const Vec& x, Vec& dx) {
        dx = sys.structure.omega_inv * sys.hamiltonian.gradient(x);
    };

    FlowResult res;
    if (opts.project_to_level && T != 0.0) {
        // stepwise: integrate step chunks and project back onto the level set
        const double k = *opts.project_to_level;
        FlowOptions chunk_opts = opts;
        chunk_opts.project_to_level.reset();
        const int chunks = std::max(8, static_cast<int>(std::ceil(std::abs(T))));
        Vec y = x0;
        res.t0 = 0.0;
        res.sample_times.push_back(0.0);
        res.samples.push_back(y);
        for (int c = 0; c < chunks; ++c) {
            const double ta = T * c / chunks, tb = T * (c + 1) / chunks;
            FlowResult part = integrate_ode(rhs, y, ta, tb, chunk_opts);
            y = part.final_point;
            for (int it = 0; it < 2; ++it) {
                Vec g = sys.hamiltonian.gradient(y);
                const double gn2 = g.squaredNorm();
                if (gn2 < 1e-18) break;
                y -= (sys.hamiltonian.value(y) - k) / gn2 * g;
            }
            for (std::size_t i = 1; i < part.sample_times.size(); ++i) {
                res.sample_times.push_back(part.sample_times[i]);
                res.samples.push_back(part.samples[i]);
            }
            for (auto& ds : part.dense) res.dense.push_back(std::move(ds));
            res.stats.accepted += part.stats.accepted;
            res.stats.rejected += part.stats.rejected;
            res.stats.evaluations += part.stats.evaluations;
        }
        res.final_point = y;
        res.t_final = T;
    } else {
        res = integrate_ode(rhs, x0, 0.0, T, opts);
    }

    const double h0 = sys.hamiltonian.value(x0);
    double drift = 0.0;
    for (const Vec& s : res.samples)
        drift = std::max(drift, std::abs(sys.hamiltonian.value(s) - h0));
    res.energy_drift = drift;
    return res;
}

MonodromyResult integrate_variational(const SymplecticSystem& sys,
                                      const VecRef& x0, double T,
                                      const FlowOptions& opts,
                                      double symplecticity_tol) {
    check_dim(sys.structure, x0, "integrate_variational initial point");
    const int d = sys.dim();
    Vec z0(d + d * d);
    z0.head(d) = x0;
    Eigen::Map<Mat>(z0.data() + d, d, d) = Mat::Identity(d, d);

    OdeRhs rhs = [&sys, d](double, const Vec& z, Vec& dz) {
        dz.resize(d + d * d);
        const Vec x = z.head(d);
        dz.head(d) = sys.structure.omega_inv * sys.hamiltonian.gradient(x);
        const Mat a = sys.structure.omega_inv * sys.hamiltonian.hessian(x);
        Eigen::Map<Mat>(dz.data() + d, d, d) =
            a * Eigen::Map<const Mat>(z.data() + d, d, d);
    };

    MonodromyResult out;
    out.flow = integrate_ode(rhs, z0, 0.0, T, opts);
    out.monodromy = Eigen::Map<const Mat>(out.flow.final_point.data() + d, d, d);
    out.symplecticity_defect =
        (out.monodromy.transpose() * sys.structure.omega * out.monodromy -
         sys.structure.omega)
            .norm();
    out.defect_flagged = out.symplecticity_defect > symplecticity_tol;
    Eigen::EigenSolver<Mat> es(out.monodromy);
    out.eigenvalues = es.eigenvalues();
    return out;
}

Section Section::hyperplane(const Vec& normal, double offset, int direction) {
    Section s;
    Vec nrm = normal;
    s.value = [nrm, offset](const Vec& x) { return nrm.dot(x) - offset; };
    s.direction = direction;
    return s;
}

std::pair<double, Vec> section_crossing(const SymplecticSystem& sys,
                                        const VecRef& x0,
                                        const Section& section, double horizon,
                                        const FlowOptions& opts) {
    if (horizon <= 0.0)
        throw InputError("section_crossing: horizon must be positive");
    FlowOptions o = opts;
    o.store_dense = true;
    FlowResult flow = integrate_flow(sys, x0, horizon, o);

    const double g0 = section.value(Vec(x0));
    const double leave_eps = 1e-9 * (1.0 + std::abs(g0));
    bool left_section = std::abs(g0) > leave_eps;

    const int sub = 8;
    double tp = 0.0;
    double gp = g0;
    for (const DenseStep& ds : flow.dense) {
        for (int i = 1; i <= sub; ++i) {
            const double t = ds.t0 + ds.h * i / sub;
            const double g = section.value(dense_eval(ds, t));
            if (!left_section) {
                if (std::abs(g) > leave_eps) left_section = true;
                tp = t;
                gp = g;
                continue;
            }
            const bool sign_change = (gp < 0.0 && g >= 0.0) ||
                                     (gp > 0.0 && g <= 0.0);
            if (sign_change) {
                const int slope = g > gp ? 1 : -1;
                if (section.direction == 0 || slope == section.direction) {
                    // bisection on the dense interpolant
                    double ta = tp, tb = t, ga = gp;
                    for (int it = 0; it < 80 && (tb - ta) > 1e-13; ++it) {
                        const double tm = 0.5 * (ta + tb);
                        const double gm = section.value(flow.at(tm));
                        if ((ga < 0.0) == (gm < 0.0)) {
                            ta = tm;
                            ga = gm;
                        } else {
                            tb = tm;
                        }
                    }
                    const double tc = 0.5 * (ta + tb);
                    return {tc, flow.at(tc)};
                }
            }
            tp = t;
            gp = g;
        }
    }
    throw NotFoundError("section_crossing: no crossing within the horizon");
}

std::vector<FlowResult> flow_map_batch(const SymplecticSystem& sys,
                                       const std::vector<Vec>& x0s, double T,
                                       const FlowOptions& opts, int jobs) {
    std::vector<FlowResult> out(x0s.size());
    parallel_for(
        x0s.size(),
        [&](std::size_t i) { out[i] = integrate_flow(sys, x0s[i], T, opts); },
        jobs);
    return out;
}

}  // namespace reeblab
