#include "loghls/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "loghls/calculus.hpp"
#include "loghls/greens.hpp"

namespace loghls {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/** Finite-volume geometry: faces at midpoints between nodes; the cell
 * volumes are the quadrature weights so the discrete conserved mass is the
 * interior part of the quadrature mass. */
struct FvGeometry {
    std::vector<double> rf;    ///< face radii, size n-1
    std::vector<double> h;     ///< node spacing, size n-1
    std::vector<double> area;  ///< face circumference 2 pi r_f, size n-1
};

FvGeometry fv_geometry(const RadialGrid& g) {
    FvGeometry geo;
    geo.rf.resize(g.n - 1);
    geo.h.resize(g.n - 1);
    geo.area.resize(g.n - 1);
    for (int i = 0; i + 1 < g.n; ++i) {
        geo.rf[i] = 0.5 * (g.r[i] + g.r[i + 1]);
        geo.h[i] = g.r[i + 1] - g.r[i];
        geo.area[i] = 2.0 * kPi * geo.rf[i];
    }
    return geo;
}

/** Tridiagonal solve with partial pivoting (one superdiagonal of fill-in).
 * sub[i] couples row i+1 to column i; sup[i] couples row i to column i+1. */
std::vector<double> solve_tridiag(std::vector<double> sub, std::vector<double> diag,
                                  std::vector<double> sup, std::vector<double> b) {
    const int n = static_cast<int>(diag.size());
    std::vector<double> sup2(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(diag[i])) {
            std::swap(diag[i], sub[i]);
            std::swap(sup[i], diag[i + 1]);
            if (i + 2 < n) std::swap(sup2[i], sup[i + 1]);
            std::swap(b[i], b[i + 1]);
        }
        if (diag[i] == 0.0) throw std::runtime_error("solve_tridiag: singular matrix");
        const double m = sub[i] / diag[i];
        diag[i + 1] -= m * sup[i];
        if (i + 2 < n) sup[i + 1] -= m * sup2[i];
        b[i + 1] -= m * b[i];
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double acc = b[i];
        if (i + 1 < n) acc -= sup[i] * x[i + 1];
        if (i + 2 < n) acc -= sup2[i] * x[i + 2];
        if (diag[i] == 0.0) throw std::runtime_error("solve_tridiag: singular matrix");
        x[i] = acc / diag[i];
    }
    return x;
}

double fv_mass(const RadialGrid& g, const std::vector<double>& f) {
    double m = 0.0;
    for (int i = 0; i < g.n; ++i) m += g.weights[i] * f[i];
    return m;
}

double clipped_negative_mass(const RadialGrid& g, const std::vector<double>& f) {
    double m = 0.0;
    for (int i = 0; i < g.n; ++i)
        if (f[i] < 0.0) m -= g.weights[i] * f[i];
    return m;
}

bool all_finite(const std::vector<double>& f) {
    for (double x : f)
        if (!std::isfinite(x)) return false;
    return true;
}

/** Bernoulli function x / (e^x - 1), the exponential-fitting weight. */
double bernoulli(double x) {
    if (std::abs(x) < 1e-5) return 1.0 - 0.5 * x + x * x / 12.0;
    return x / std::expm1(x);
}

// ---------------------------------------------------------------------------
// rescaled nonlinear diffusion flow (backward Euler + Newton)
// ---------------------------------------------------------------------------

struct ProofAttempt {
    std::vector<double> f;  ///< Newton iterate (not yet clipped)
    double residual = 0.0;  ///< sup-norm of the nonlinear residual
    double scale = 1.0;     ///< residual scale max(1, |Vol f/dt|)
};

/** Solve the backward-Euler system
 *   Vol (f - f_old)/dt = div( A fhat d(xi)/dr ),  xi = sqrt(pi) r^2 - (f+s)^{-1/2}
 * by Newton iteration; s is the additive mobility floor. */
ProofAttempt proof_backward_euler(const RadialGrid& g, const FvGeometry& geo,
                                  const std::vector<double>& f_old, double dt, double s) {
    const int n = g.n;
    ProofAttempt out;
    out.f = f_old;
    for (int i = 0; i < n; ++i)
        out.scale = std::max(out.scale, std::abs(g.weights[i] * f_old[i] / dt));

    std::vector<double> xi(n), xip(n), a(n - 1), G(n);
    std::vector<double> sub(n - 1), diag(n), sup(n - 1);
    out.residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 40; ++it) {
        for (int i = 0; i < n; ++i) {
            const double ft = out.f[i] + s;
            const double root = std::sqrt(ft);
            xi[i] = kSqrtPi * g.r[i] * g.r[i] - 1.0 / root;
            xip[i] = 0.5 / (ft * root);
        }
        for (int i = 0; i + 1 < n; ++i) {
            const double fhat = 0.5 * (out.f[i] + s + out.f[i + 1] + s);
            a[i] = geo.area[i] * fhat / geo.h[i];
        }
        for (int i = 0; i < n; ++i) G[i] = g.weights[i] * (out.f[i] - f_old[i]) / dt;
        for (int i = 0; i + 1 < n; ++i) {
            const double flux = a[i] * (xi[i + 1] - xi[i]);
            G[i] -= flux;
            G[i + 1] += flux;
        }
        double res = 0.0;
        for (double x : G) res = std::max(res, std::abs(x));
        out.residual = res;
        if (!std::isfinite(res)) break;
        if (res < 1e-12 * out.scale) break;

        for (int i = 0; i < n; ++i) diag[i] = g.weights[i] / dt;
        for (int i = 0; i + 1 < n; ++i) {
            diag[i] += a[i] * xip[i];
            diag[i + 1] += a[i] * xip[i + 1];
            sup[i] = -a[i] * xip[i + 1];
            sub[i] = -a[i] * xip[i];
        }
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = -G[i];
        const std::vector<double> delta = solve_tridiag(sub, diag, sup, rhs);
        for (int i = 0; i < n; ++i) out.f[i] += delta[i];
    }
    return out;
}

bool proof_step_ok(const ProofAttempt& att, double clip, double M0) {
    return all_finite(att.f) && att.residual < 1e-9 * att.scale && clip <= 1e-8 * M0;
}

// ---------------------------------------------------------------------------
// drift-diffusion-Poisson flow (exponential fitting, frozen potential)
// ---------------------------------------------------------------------------

struct DdpAttempt {
    std::vector<double> f;
    std::vector<double> face_speed;  ///< |dU/dr| at faces, for the CFL bound
};

DdpAttempt ddp_implicit_step(const RadialGrid& g, const FvGeometry& geo,
                             const std::vector<double>& f, double beta, double eps, double dt) {
    const int n = g.n;
    const PotentialSolution pot = inverse_laplacian(g, f);
    std::vector<double> U(n);
    for (int i = 0; i < n; ++i) U[i] = beta * V_of(g.r[i]) + eps * pot.u.values[i];

    std::vector<double> sub(n - 1), diag(n), sup(n - 1), rhs(n);
    DdpAttempt out;
    out.face_speed.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        diag[i] = g.weights[i] / dt;
        rhs[i] = g.weights[i] * f[i] / dt;
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double d = U[i + 1] - U[i];
        const double c = geo.area[i] / geo.h[i];
        const double bp = bernoulli(d);
        const double bm = bernoulli(-d);
        diag[i] += c * bp;
        diag[i + 1] += c * bm;
        sup[i] = -c * bm;
        sub[i] = -c * bp;
        out.face_speed[i] = std::abs(d) / geo.h[i];
    }
    out.f = solve_tridiag(sub, diag, sup, rhs);
    return out;
}

double ddp_dt_cap(const FvGeometry& geo, const std::vector<double>& face_speed,
                  double cfl_safety) {
    double cap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < face_speed.size(); ++i)
        cap = std::min(cap, geo.h[i] / std::max(face_speed[i], 1e-30));
    return cfl_safety * cap;
}

// ---------------------------------------------------------------------------
// trace recording
// ---------------------------------------------------------------------------

void record_state(const RadialGrid& g, FlowTrace& trace, double t,
                  const std::vector<double>& f) {
    Density d;
    d.values = f;
    d.mass = quad_mass(g, f);
    trace.times.push_back(t);
    trace.mass.push_back(fv_mass(g, f));
    if (trace.is_ddp) {
        trace.reports.push_back(make_report(g, d, trace.alphas, trace.beta, trace.eps));
        DissipationReport rep;
        rep.gn_part = ddp_entropy_production(g, d, trace.beta, trace.eps);
        rep.phi_part = 0.0;
        rep.total = -rep.gn_part;
        trace.dissipation.push_back(rep);
    } else {
        const double alpha = trace.alphas.front();
        trace.reports.push_back(make_report(g, d, trace.alphas, alpha, 1.0));
        trace.dissipation.push_back(dissipation(g, d, alpha));
    }
}

void finish_trace(FlowTrace& trace) {
    const std::size_t k = trace.times.size();
    trace.dFdt_fd.assign(k, kNaN);
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const double fp = trace.is_ddp ? trace.reports[i + 1].free_energy
                                       : trace.reports[i + 1].deficits.front();
        const double fm = trace.is_ddp ? trace.reports[i - 1].free_energy
                                       : trace.reports[i - 1].deficits.front();
        trace.dFdt_fd[i] = (fp - fm) / (trace.times[i + 1] - trace.times[i - 1]);
    }
}

void validate_flow_config(const FlowConfig& config) {
    if (!(config.t_end > 0.0)) throw std::invalid_argument("flow: t_end must be positive");
    if (config.dt_init < 0.0) throw std::invalid_argument("flow: dt_init must be nonnegative");
    if (!(config.cfl_safety > 0.0) || config.cfl_safety > 1.0)
        throw std::invalid_argument("flow: cfl_safety must lie in (0, 1]");
    if (config.floor < 0.0) throw std::invalid_argument("flow: floor must be nonnegative");
    if (config.record_every < 1) throw std::invalid_argument("flow: record_every must be >= 1");
    if (config.max_steps < 1) throw std::invalid_argument("flow: max_steps must be >= 1");
}

}  // namespace

double proof_flow_dt_cap(const RadialGrid& g, double cfl_safety) {
    const FvGeometry geo = fv_geometry(g);
    double cap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < geo.rf.size(); ++i)
        cap = std::min(cap, geo.h[i] / (2.0 * kSqrtPi * geo.rf[i]));
    return cfl_safety * cap;
}

double ddp_entropy_production(const RadialGrid& g, const Density& f, double beta, double eps) {
    const int n = g.n;
    std::vector<double> root(n);
    for (int i = 0; i < n; ++i) root[i] = std::sqrt(std::max(f.values[i], 0.0));
    const std::vector<double> droot = gradient_r(g, root);
    const std::vector<double> df = gradient_r(g, f.values);
    const std::vector<double> m = cumulative_mass(g, f.values);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double up = i == 0 ? 0.0 : -m[i] / (2.0 * kPi * g.r[i]);
        const double dU = beta * 4.0 * g.r[i] / (1.0 + g.r[i] * g.r[i]) + eps * up;
        const double integ =
            4.0 * droot[i] * droot[i] + 2.0 * df[i] * dU + f.values[i] * dU * dU;
        total += g.weights[i] * integ;
    }
    return total;
}

Density step_proof_flow(const RadialGrid& g, const Density& f, double dt, double floor) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_proof_flow: dt must be positive");
    validate_density(g, f);
    const FvGeometry geo = fv_geometry(g);
    double fmax = 0.0;
    for (double x : f.values) fmax = std::max(fmax, x);
    const double s = floor > 0.0 ? floor : 1e-12 * fmax;
    const double M0 = fv_mass(g, f.values);
    const ProofAttempt att = proof_backward_euler(g, geo, f.values, dt, s);
    const double clip = clipped_negative_mass(g, att.f);
    if (!proof_step_ok(att, clip, M0))
        throw std::runtime_error("step_proof_flow: step rejected; retry with smaller dt");
    Density out;
    out.values.resize(g.n);
    for (int i = 0; i < g.n; ++i) out.values[i] = std::max(att.f[i], 0.0);
    out.mass = quad_mass(g, out.values);
    return out;
}

Density step_ddp_flow(const RadialGrid& g, const Density& f, double beta, double eps, double dt,
                      bool allow_supercritical) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_ddp_flow: dt must be positive");
    if (eps != 1.0 && eps != -1.0)
        throw std::domain_error("step_ddp_flow: eps must be +1 or -1");
    validate_density(g, f);
    if (eps == -1.0 && f.mass >= 8.0 * kPi && !allow_supercritical)
        throw std::domain_error(
            "step_ddp_flow: attractive coupling at mass >= 8 pi concentrates in finite "
            "time; pass allow_supercritical to explore blow-up");
    const FvGeometry geo = fv_geometry(g);
    const double M0 = fv_mass(g, f.values);
    const DdpAttempt att = ddp_implicit_step(g, geo, f.values, beta, eps, dt);
    const double clip = clipped_negative_mass(g, att.f);
    if (!all_finite(att.f) || clip > 1e-8 * M0)
        throw std::runtime_error("step_ddp_flow: step rejected; retry with smaller dt");
    Density out;
    out.values.resize(g.n);
    for (int i = 0; i < g.n; ++i) out.values[i] = std::max(att.f[i], 0.0);
    out.mass = quad_mass(g, out.values);
    return out;
}

FlowTrace run_proof_flow(const RadialGrid& g, const Density& f0, const FlowConfig& config,
                         const std::vector<double>& alphas) {
    validate_flow_config(config);
    validate_density(g, f0);
    for (double a : alphas)
        if (a < 0.0) throw std::domain_error("run_proof_flow: alpha must be nonnegative");

    FlowTrace trace;
    trace.alphas = alphas.empty() ? std::vector<double>{1.0} : alphas;
    trace.is_ddp = false;
    trace.beta = trace.alphas.front();
    trace.eps = 1.0;

    const FvGeometry geo = fv_geometry(g);
    std::vector<double> f = f0.values;
    double fmax0 = 0.0;
    for (double x : f) fmax0 = std::max(fmax0, x);
    const double s = config.floor > 0.0 ? config.floor : 1e-12 * fmax0;
    const double M0 = fv_mass(g, f);
    const double cap = proof_flow_dt_cap(g, config.cfl_safety);
    double dt = config.dt_init > 0.0 ? std::min(config.dt_init, cap) : cap / 4.0;
    double t = 0.0;

    record_state(g, trace, t, f);

    if (config.scheme == FlowScheme::explicit_euler) {
        // Reference scheme for small grids: forward Euler on the same flux.
        while (t < config.t_end && trace.steps < config.max_steps) {
            const double dt_step = std::min(dt, config.t_end - t);
            std::vector<double> f1 = f;
            std::vector<double> xi(g.n);
            for (int i = 0; i < g.n; ++i)
                xi[i] = kSqrtPi * g.r[i] * g.r[i] - 1.0 / std::sqrt(f[i] + s);
            for (int i = 0; i + 1 < g.n; ++i) {
                const double fhat = 0.5 * (f[i] + f[i + 1]) + s;
                const double flux = geo.area[i] * fhat * (xi[i + 1] - xi[i]) / geo.h[i];
                f1[i] += dt_step * flux / g.weights[i];
                f1[i + 1] -= dt_step * flux / g.weights[i + 1];
            }
            const double clip = clipped_negative_mass(g, f1);
            if (!all_finite(f1) || clip > 1e-8 * M0) {
                dt = dt_step * 0.5;
                if (++trace.rejections > 600 || dt < 1e-14) break;
                continue;
            }
            for (int i = 0; i < g.n; ++i) f[i] = std::max(f1[i], 0.0);
            t += dt_step;
            if (config.t_end - t <= 1e-12 * config.t_end) t = config.t_end;
            ++trace.steps;
            trace.clipped_mass += clip;
            if (trace.steps % config.record_every == 0 || t >= config.t_end)
                record_state(g, trace, t, f);
        }
    } else {
        while (t < config.t_end && trace.steps < config.max_steps) {
            const double dt_step = std::min(dt, config.t_end - t);
            const ProofAttempt att = proof_backward_euler(g, geo, f, dt_step, s);
            const double clip = clipped_negative_mass(g, att.f);
            if (!proof_step_ok(att, clip, M0)) {
                dt = dt_step * 0.5;
                if (++trace.rejections > 600 || dt < 1e-14) break;
                continue;
            }
            for (int i = 0; i < g.n; ++i) f[i] = std::max(att.f[i], 0.0);
            t += dt_step;
            if (config.t_end - t <= 1e-12 * config.t_end) t = config.t_end;
            ++trace.steps;
            trace.clipped_mass += clip;
            dt = std::min(dt_step * 1.2, cap);
            if (trace.steps % config.record_every == 0 || t >= config.t_end)
                record_state(g, trace, t, f);
        }
    }

    trace.completed = t >= config.t_end;
    if (trace.times.back() < t) record_state(g, trace, t, f);
    trace.final_state.values = f;
    trace.final_state.mass = quad_mass(g, f);
    finish_trace(trace);
    return trace;
}

FlowTrace run_ddp_flow(const RadialGrid& g, const Density& f0, double beta, double eps,
                       const FlowConfig& config) {
    validate_flow_config(config);
    validate_density(g, f0);
    if (eps != 1.0 && eps != -1.0) throw std::domain_error("run_ddp_flow: eps must be +1 or -1");
    if (eps == -1.0 && f0.mass >= 8.0 * kPi && !config.allow_supercritical)
        throw std::domain_error(
            "run_ddp_flow: attractive coupling at mass >= 8 pi concentrates in finite "
            "time; set allow_supercritical to explore blow-up");
    if (config.scheme == FlowScheme::explicit_euler)
        throw std::invalid_argument("run_ddp_flow: only the implicit scheme is supported");

    FlowTrace trace;
    trace.is_ddp = true;
    trace.beta = beta;
    trace.eps = eps;

    const FvGeometry geo = fv_geometry(g);
    std::vector<double> f = f0.values;
    double fmax0 = 0.0;
    for (double x : f) fmax0 = std::max(fmax0, x);
    const double M0 = fv_mass(g, f);
    double t = 0.0;

    record_state(g, trace, t, f);

    // Initial accuracy bound from the frozen-potential drift speed.
    const PotentialSolution pot0 = inverse_laplacian(g, f);
    std::vector<double> speed(g.n - 1);
    for (int i = 0; i + 1 < g.n; ++i) {
        const double du = beta * (V_of(g.r[i + 1]) - V_of(g.r[i])) +
                          eps * (pot0.u.values[i + 1] - pot0.u.values[i]);
        speed[i] = std::abs(du) / geo.h[i];
    }
    double cap = ddp_dt_cap(geo, speed, config.cfl_safety);
    double dt = config.dt_init > 0.0 ? config.dt_init : cap / 4.0;

    while (t < config.t_end && trace.steps < config.max_steps) {
        const double dt_step = std::min(dt, config.t_end - t);
        const DdpAttempt att = ddp_implicit_step(g, geo, f, beta, eps, dt_step);
        if (all_finite(att.f)) {
            double fmax = 0.0;
            for (double x : att.f) fmax = std::max(fmax, x);
            if (fmax > config.concentration_factor * fmax0) {
                trace.blow_up = true;
                break;
            }
        }
        const double clip = clipped_negative_mass(g, att.f);
        if (!all_finite(att.f) || clip > 1e-8 * M0) {
            dt = dt_step * 0.5;
            if (++trace.rejections > 600 || dt < 1e-14) break;
            continue;
        }
        for (int i = 0; i < g.n; ++i) f[i] = std::max(att.f[i], 0.0);
        t += dt_step;
        if (config.t_end - t <= 1e-12 * config.t_end) t = config.t_end;
        ++trace.steps;
        trace.clipped_mass += clip;
        cap = ddp_dt_cap(geo, att.face_speed, config.cfl_safety);
        dt = std::min(dt_step * 1.2, cap);
        if (trace.steps % config.record_every == 0 || t >= config.t_end)
            record_state(g, trace, t, f);
    }

    trace.completed = t >= config.t_end;
    if (trace.times.back() < t) record_state(g, trace, t, f);
    trace.final_state.values = f;
    trace.final_state.mass = quad_mass(g, f);
    finish_trace(trace);
    return trace;
}

}  // namespace loghls
