#include "loghls/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "loghls/calculus.hpp"
#include "loghls/cartesian.hpp"
#include "loghls/flow.hpp"
#include "loghls/functionals.hpp"
#include "loghls/greens.hpp"
#include "loghls/grid.hpp"
#include "loghls/profiles.hpp"
#include "loghls/stationary.hpp"

namespace loghls {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return std::string(buf);
}

/** Accumulates checks and timing for one scenario. */
struct Builder {
    ScenarioResult out;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Builder(std::string name) { out.name = std::move(name); }

    void push(ScenarioCheck c) { out.checks.push_back(std::move(c)); }

    void close(const std::string& label, double value, double target, double tol,
               const std::string& prov) {
        ScenarioCheck c;
        c.label = label;
        c.mode = ScenarioCheck::Mode::close;
        c.value = value;
        c.target = target;
        c.tolerance = tol;
        c.provenance = prov;
        c.pass = std::isfinite(value) && std::abs(value - target) <= tol;
        push(std::move(c));
    }

    void at_least(const std::string& label, double value, double bound, const std::string& prov) {
        ScenarioCheck c;
        c.label = label;
        c.mode = ScenarioCheck::Mode::at_least;
        c.value = value;
        c.target = bound;
        c.provenance = prov;
        c.pass = std::isfinite(value) && value >= bound;
        push(std::move(c));
    }

    void at_most(const std::string& label, double value, double bound, const std::string& prov) {
        ScenarioCheck c;
        c.label = label;
        c.mode = ScenarioCheck::Mode::at_most;
        c.value = value;
        c.target = bound;
        c.provenance = prov;
        c.pass = std::isfinite(value) && value <= bound;
        push(std::move(c));
    }

    void flag(const std::string& label, bool ok, const std::string& prov) {
        ScenarioCheck c;
        c.label = label;
        c.mode = ScenarioCheck::Mode::boolean;
        c.value = ok ? 1.0 : 0.0;
        c.target = 1.0;
        c.provenance = prov;
        c.pass = ok;
        push(std::move(c));
    }

    ScenarioResult finish() {
        out.passed = !out.checks.empty();
        for (const ScenarioCheck& c : out.checks) out.passed = out.passed && c.pass;
        out.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::move(out);
    }
};

Density mix_densities(const RadialGrid& g, const Density& a, const Density& b, double wa) {
    std::vector<double> v(a.values.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = wa * a.values[i] + (1.0 - wa) * b.values[i];
    return make_density(g, std::move(v));
}

double l1_distance(const RadialGrid& g, const std::vector<double>& a,
                   const std::vector<double>& b) {
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) s += g.weights[i] * std::abs(a[i] - b[i]);
    return s;
}

// --- 1. the deficit vanishes identically on the reference family ------------

ScenarioResult scenario_equality_case(const GridSpec& gs) {
    Builder b("equality_case");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    const std::vector<double> alphas{0.0, 0.5, 1.0, 2.0, 10.0};
    for (double M : {1.0, 8.0 * kPi}) {
        const std::string mlab = (M == 1.0) ? "M=1" : "M=8pi";
        Density f = make_reference_density(g, M);
        FunctionalReport rep = make_report(g, f, alphas);
        for (std::size_t k = 0; k < alphas.size(); ++k)
            b.close("deficit(M mu) " + mlab + " alpha=" + num(alphas[k]), rep.deficits[k], 0.0,
                    1e-6 * M, "analytic");
        b.at_least("relative entropy of M mu, " + mlab, rep.relative_entropy, -1e-9 * M,
                   "analytic");
    }
    // One directly assembled evaluation (not through the affine form).
    Density f = make_reference_density(g, 8.0 * kPi);
    b.close("direct deficit(8pi mu) alpha=10", loghls_deficit(g, f, 10.0), 0.0, 1e-6 * 8.0 * kPi,
            "analytic");
    return b.finish();
}

// --- 2. the three-halves moment of the reference density --------------------

ScenarioResult scenario_moment_three_halves(const GridSpec& gs) {
    Builder b("moment_three_halves");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = std::pow(mu_of(g.r[i]), 1.5);
    const double m32 = integrate(g, v, 6.0);
    b.close("int mu^{3/2}", m32, 0.5 / std::sqrt(kPi), 1e-8, "analytic");
    return b.finish();
}

// --- 3. the confinement potential solves its Poisson equation ---------------

ScenarioResult scenario_potential_laplacian(const GridSpec& gs) {
    Builder b("potential_laplacian");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    ReferencePair ref = make_reference(g);
    std::vector<double> lap = laplacian_r(g, ref.V.values);
    // Relative sup-norm: the pointwise ratio is not meaningful far out, where
    // Lap V = v_rr + v_r/r cancels four digits while the target decays as 8/r^4.
    double sup_resid = 0.0, sup_want = 0.0;
    for (int i = 0; i < g.n; ++i) {
        if (g.r[i] > 0.5 * g.r_max) break;
        const double want = 8.0 * kPi * mu_of(g.r[i]);
        sup_want = std::max(sup_want, want);
        sup_resid = std::max(sup_resid, std::abs(lap[static_cast<std::size_t>(i)] - want));
    }
    b.at_most("sup |Lap V - 8 pi mu| / sup |8 pi mu| on r <= r_max/2", sup_resid / sup_want,
              1e-6, "analytic");
    return b.finish();
}

// --- 4. interaction integrals against closed forms and the 2-d oracle -------

ScenarioResult scenario_interaction_closed_forms(const GridSpec& gs) {
    Builder b("interaction_closed_forms");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    Density mu = make_reference_density(g, 1.0);
    Density gauss = make_gaussian(g, 1.0, 1.0);
    const double i_mu = interaction_integral(g, mu);
    const double i_gauss = interaction_integral(g, gauss);
    b.close("interaction(mu)", i_mu, 0.5, 1e-6, "analytic");
    b.close("interaction(gaussian)", i_gauss, std::log(2.0) - 0.5 * kEulerGamma, 1e-6,
            "analytic");
    CartesianPatch pm = make_cartesian_patch(
        20.0, 64, [](double x, double y) { return mu_of(std::hypot(x, y)); });
    CartesianPatch pg = make_cartesian_patch(20.0, 64, [](double x, double y) {
        return std::exp(-0.5 * (x * x + y * y)) / (2.0 * kPi);
    });
    b.close("cartesian double sum (mu, n=64)", oracle_interaction_cartesian(pm), i_mu, 3e-2,
            "oracle");
    b.close("cartesian double sum (gaussian, n=64)", oracle_interaction_cartesian(pg), i_gauss,
            3e-2, "oracle");
    return b.finish();
}

// --- 5. sharpness of the interpolation inequality ---------------------------

ScenarioResult scenario_gn_sharpness(const GridSpec& gs) {
    Builder b("gn_sharpness");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = std::pow(mu_of(g.r[i]), 0.25);
    GNParts parts = gn_parts(g, v, 4.0);
    const double lhs = parts.grad2 * parts.l4;
    const double rhs = kPi * parts.l6;
    const double half_sqrt_pi = 0.5 * std::sqrt(kPi);
    b.close("deficit at mu^{1/4}", lhs - rhs, 0.0, 1e-5, "analytic");
    b.close("|grad v|_2^2 |v|_4^4 at mu^{1/4}", lhs, half_sqrt_pi, 1e-5, "analytic");
    b.close("pi |v|_6^6 at mu^{1/4}", rhs, half_sqrt_pi, 1e-5, "analytic");

    std::vector<std::pair<std::string, Density>> family;
    for (double s : {0.25, 0.35, 0.5, 0.7, 1.0, 1.4, 2.0, 3.0})
        family.emplace_back("gaussian(" + num(s) + ")", make_gaussian(g, s, 1.0));
    for (double l : {0.25, 0.5, 2.0, 4.0})
        family.emplace_back("dilated(" + num(l) + ")", make_dilated_reference(g, l, 1.0));
    family.emplace_back("bump(0.5,2.5)", make_bump(g, 0.5, 2.5, 1.0));
    family.emplace_back("bump(0.2,1.2)", make_bump(g, 0.2, 1.2, 1.0));
    family.emplace_back("bump(1,4)", make_bump(g, 1.0, 4.0, 1.0));
    family.emplace_back("bump(0.1,3)", make_bump(g, 0.1, 3.0, 1.0));
    family.emplace_back("mix gaussians",
                        mix_densities(g, make_gaussian(g, 0.5, 1.0), make_gaussian(g, 2.0, 1.0),
                                      0.5));
    family.emplace_back("mix mu+gaussian",
                        mix_densities(g, make_reference_density(g, 1.0),
                                      make_gaussian(g, 1.0, 1.0), 0.7));
    family.emplace_back("mix bump+mu",
                        mix_densities(g, make_bump(g, 0.5, 2.5, 1.0),
                                      make_reference_density(g, 1.0), 0.5));
    family.emplace_back("mix gaussian+dilated",
                        mix_densities(g, make_gaussian(g, 0.3, 1.0),
                                      make_dilated_reference(g, 2.0, 1.0), 0.3));

    double min_deficit = std::numeric_limits<double>::infinity();
    std::string argmin;
    for (const auto& [name, f] : family) {
        std::vector<double> root(f.values.size());
        for (std::size_t i = 0; i < root.size(); ++i)
            root[i] = std::pow(std::max(f.values[i], 0.0), 0.25);
        const double d = gn_deficit(g, root, 4.0);
        if (d < min_deficit) {
            min_deficit = d;
            argmin = name;
        }
    }
    b.at_least("min deficit over 20-member family (at " + argmin + ")", min_deficit, -1e-7,
               "analytic");
    return b.finish();
}

// --- 6. the rescaled flow drives the deficit to zero ------------------------

ScenarioResult scenario_proof_flow_convergence(const GridSpec& gs) {
    Builder b("proof_flow_convergence");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    const std::vector<double> alphas{0.0, 1.0, 2.0};
    std::vector<std::pair<std::string, Density>> starts;
    starts.emplace_back("gaussian(0.5)", make_gaussian(g, 0.5, 1.0));
    starts.emplace_back("gaussian(2)", make_gaussian(g, 2.0, 1.0));
    starts.emplace_back("bump", make_bump(g, 0.5, 2.5, 1.0));
    for (const auto& [name, f0] : starts) {
        FlowConfig cfg;
        cfg.t_end = 10.0;
        cfg.record_every = 10;
        FlowTrace tr = run_proof_flow(g, f0, cfg, alphas);
        b.flag(name + ": reached t=10", tr.completed && !tr.blow_up, "identity");
        const FunctionalReport& last = tr.reports.back();
        for (std::size_t k = 0; k < alphas.size(); ++k)
            b.at_most(name + ": final deficit alpha=" + num(alphas[k]), last.deficits[k], 1e-3,
                      "analytic");
        double worst_rise = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j < tr.reports.size(); ++j)
            for (std::size_t k = 0; k < alphas.size(); ++k)
                worst_rise = std::max(worst_rise,
                                      tr.reports[j].deficits[k] - tr.reports[j - 1].deficits[k]);
        b.at_most(name + ": max deficit rise per record", worst_rise,
                  1e-7 * static_cast<double>(cfg.record_every), "identity");
        double drift = 0.0;
        for (double m : tr.mass) drift = std::max(drift, std::abs(m - tr.mass.front()));
        b.at_most(name + ": relative mass drift", drift / tr.mass.front(), 1e-6, "identity");
    }
    return b.finish();
}

// --- 7. measured Lyapunov slope vs the analytic dissipation split -----------

ScenarioResult scenario_dissipation_identity(const GridSpec& gs) {
    Builder b("dissipation_identity");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    FlowConfig cfg;
    cfg.cfl_safety = 1.0;
    cfg.dt_init = proof_flow_dt_cap(g, 1.0);
    cfg.record_every = 1;
    cfg.t_end = 0.4;
    std::vector<std::pair<std::string, Density>> starts;
    starts.emplace_back("bump", make_bump(g, 0.5, 2.5, 1.0));
    starts.emplace_back("gaussian(0.5)", make_gaussian(g, 0.5, 1.0));
    for (const auto& [name, f0] : starts) {
        FlowTrace tr = run_proof_flow(g, f0, cfg, {1.0});
        long gated = 0;
        double worst = 0.0;
        for (std::size_t k = 1; k + 1 < tr.times.size(); ++k) {
            const double slope = tr.dFdt_fd[k];
            if (!(std::abs(slope) > 1e-4)) continue;
            ++gated;
            worst = std::max(worst, std::abs(slope - tr.dissipation[k].total) / std::abs(slope));
        }
        b.at_least(name + ": records with |dF/dt| > 1e-4", static_cast<double>(gated), 100.0,
                   "identity");
        b.at_most(name + ": worst rel gap between dF/dt and -(gn+phi)", worst, 0.02, "identity");
    }
    return b.finish();
}

// --- 8. free-energy divergence rate under dilation ---------------------------

ScenarioResult scenario_scaling_divergence(const GridSpec& gs) {
    Builder b("scaling_divergence");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    std::vector<double> lambdas;
    for (int k = 0; k <= 8; ++k) lambdas.push_back(std::pow(2.0, -k));
    {
        const double M = 16.0 * kPi;
        Density f = make_reference_density(g, M);
        const double slope = fit_log_slope(scaling_curve(g, f, 0.0, lambdas));
        b.close("log-slope of F(f_lambda), M=16pi", slope, 32.0 * kPi, 0.05 * 32.0 * kPi,
                "analytic");
    }
    {
        const double M = 8.0 * kPi;
        Density f = make_reference_density(g, M);
        const double slope = fit_log_slope(scaling_curve(g, f, 0.0, lambdas));
        b.close("log-slope of F(f_lambda), M=8pi", slope, 0.0, 0.5, "analytic");
    }
    return b.finish();
}

// --- 9. the repulsive stationary state and its basin -------------------------

ScenarioResult scenario_repulsive_minimizer(const GridSpec& gs) {
    Builder b("repulsive_minimizer");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    const double M = 1.0;
    const double beta = 1.0 + M / (8.0 * kPi);
    StationaryResult st = solve_stationary(g, M, beta);
    b.flag("fixed-point iteration converged", st.converged, "identity");

    // psi = (beta - 1) V + phi solves the reduced equation with gamma = 1.
    ReferencePair ref = make_reference(g);
    std::vector<double> psi(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
        psi[static_cast<std::size_t>(i)] =
            (beta - 1.0) * ref.V.values[static_cast<std::size_t>(i)] +
            st.phi_stat.values[static_cast<std::size_t>(i)];
    std::vector<double> res = residual_reduced_equation(g, psi, M, 1.0);
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
        if (g.r[i] > 0.5 * g.r_max) break;
        worst = std::max(worst, std::abs(res[static_cast<std::size_t>(i)]));
    }
    b.at_most("sup reduced-equation residual on r <= r_max/2", worst, 1e-4, "identity");

    // Initial data with a thin far tail converge in plain L1 only like ~0.5/t
    // (the stationary r^-4 tail fills in diffusively), so the two distinct
    // starts are O(0.2-0.3) interior perturbations of the reference profile
    // with a matched tail amplitude; t = 400 brings the gap to ~3.5e-4.
    FlowConfig cfg;
    cfg.t_end = 400.0;
    cfg.record_every = 200;
    std::vector<std::pair<std::string, Density>> starts;
    starts.emplace_back("0.7 mu + 0.3 gaussian(0.5)",
                        mix_densities(g, make_reference_density(g, M),
                                      make_gaussian(g, 0.5, M), 0.7));
    starts.emplace_back("0.7 mu + 0.3 gaussian(2)",
                        mix_densities(g, make_reference_density(g, M),
                                      make_gaussian(g, 2.0, M), 0.7));
    std::vector<Density> finals;
    for (const auto& [name, f0] : starts) {
        FlowTrace tr = run_ddp_flow(g, f0, beta, 1.0, cfg);
        b.flag("ddp from " + name + ": reached t=400", tr.completed && !tr.blow_up, "identity");
        b.at_most("ddp from " + name + ": L1 distance to stationary state",
                  l1_distance(g, tr.final_state.values, st.f_stat.values), 1e-3, "oracle");
        finals.push_back(tr.final_state);
    }
    b.at_most("L1 distance between the two ddp endpoints",
              l1_distance(g, finals[0].values, finals[1].values), 1e-3, "oracle");

    const double f_min = free_energy(g, st.f_stat, beta, 1.0);
    std::vector<std::pair<std::string, Density>> probes;
    probes.emplace_back("dilated(0.5)", make_dilated_reference(g, 0.5, M));
    probes.emplace_back("dilated(2)", make_dilated_reference(g, 2.0, M));
    probes.emplace_back("gaussian(0.5)", make_gaussian(g, 0.5, M));
    probes.emplace_back("gaussian(1)", make_gaussian(g, 1.0, M));
    probes.emplace_back("gaussian(2)", make_gaussian(g, 2.0, M));
    probes.emplace_back("bump", make_bump(g, 0.5, 2.5, M));
    for (const auto& [name, f] : probes)
        b.at_most("F(f_stat) - F(" + name + ")", f_min - free_energy(g, f, beta, 1.0), 0.0,
                  "analytic");
    return b.finish();
}

// --- 10. the deficit is affine in alpha --------------------------------------

ScenarioResult scenario_alpha_affinity(const GridSpec& gs) {
    Builder b("alpha_affinity");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    const std::vector<double> alphas{0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
    std::vector<std::pair<std::string, Density>> family;
    family.emplace_back("mu", make_reference_density(g, 1.0));
    family.emplace_back("gaussian(0.5)", make_gaussian(g, 0.5, 1.0));
    family.emplace_back("gaussian(1) M=3", make_gaussian(g, 1.0, 3.0));
    family.emplace_back("gaussian(2)", make_gaussian(g, 2.0, 1.0));
    family.emplace_back("bump", make_bump(g, 0.5, 2.5, 1.0));
    family.emplace_back("dilated(0.5)", make_dilated_reference(g, 0.5, 1.0));
    family.emplace_back("mix", mix_densities(g, make_gaussian(g, 1.0, 1.0),
                                             make_gaussian(g, 2.0, 1.0), 0.5));
    double worst = 0.0;
    std::string argmax = family.front().first;
    for (const auto& [name, f] : family) {
        FunctionalReport rep = make_report(g, f, alphas);
        for (double a : alphas) {
            const double direct = loghls_deficit(g, f, a);
            const double affine = rep.deficit_at(a);
            const double rel =
                std::abs(direct - affine) / std::max(1.0, std::abs(direct));
            if (rel > worst) {
                worst = rel;
                argmax = name + " alpha=" + num(a);
            }
        }
    }
    b.at_most("max rel gap, direct vs affine deficit (worst: " + argmax + ")", worst, 1e-10,
              "identity");
    return b.finish();
}

// --- 11. nonnegativity of the dual gap ---------------------------------------

ScenarioResult scenario_dual_gap(const GridSpec& gs) {
    Builder b("dual_gap");
    RadialGrid g = build_grid(gs.n, gs.r_max, gs.stretch);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10; ++k) {
        const double c0 = normal(rng), c1 = normal(rng), c2 = normal(rng), c3 = normal(rng);
        std::vector<double> v(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) {
            const double r2 = g.r[i] * g.r[i];
            const double raw = c0 * std::exp(-r2 / (1.0 + c1 * c1)) +
                               0.3 * c2 * std::log1p(r2) / (1.0 + 0.1 * c3 * c3);
            v[static_cast<std::size_t>(i)] = std::clamp(raw, -20.0, 20.0);
        }
        for (double a : {0.0, 0.5, 0.9})
            min_gap = std::min(min_gap, onofri_gap(g, v, a, 1.0));
    }
    b.at_least("min gap over 10 random fields x alpha in {0, 0.5, 0.9}", min_gap, -1e-8,
               "analytic");
    const double c = 3.7, M = 2.0;
    std::vector<double> flat(static_cast<std::size_t>(g.n), c);
    b.close("gap at the constant field c=3.7, M=2", onofri_gap(g, flat, 0.5, M), 0.0,
            1e-12 * M * (1.0 + std::abs(c)), "identity");
    return b.finish();
}

// --- 12. translates sink the subcritical free energy -------------------------

ScenarioResult scenario_translated_unboundedness(const GridSpec&) {
    Builder b("translated_unboundedness");
    TranslationScan scan = translated_scan();
    TranslationReport down = assemble_translation_report(scan, -0.5);
    b.flag("beta=-0.5: F strictly decreasing along |y| in {0,5,10,20}", down.strictly_decreasing,
           "oracle");
    TranslationReport flat = assemble_translation_report(scan, 0.0);
    b.at_most("beta=0 control: max |Delta F|", flat.max_abs_diff, 1e-6, "identity");
    TranslationReport up = assemble_translation_report(scan, 1.0);
    b.flag("beta=+1 control: F strictly increasing", up.strictly_increasing, "oracle");
    return b.finish();
}

}  // namespace

const std::vector<ScenarioEntry>& scenario_registry() {
    static const std::vector<ScenarioEntry> registry{
        {"equality_case", "deficit vanishes on the reference family at every alpha",
         scenario_equality_case},
        {"moment_three_halves", "int mu^{3/2} matches 1/(2 sqrt(pi))",
         scenario_moment_three_halves},
        {"potential_laplacian", "Lap V = 8 pi mu on the inner half grid",
         scenario_potential_laplacian},
        {"interaction_closed_forms",
         "interaction integrals match closed forms and the Cartesian oracle",
         scenario_interaction_closed_forms},
        {"gn_sharpness", "interpolation inequality sharp at mu^{1/4}, nonnegative on a family",
         scenario_gn_sharpness},
        {"proof_flow_convergence", "rescaled flow drives the deficit to zero monotonically",
         scenario_proof_flow_convergence},
        {"dissipation_identity", "measured dF/dt matches the analytic dissipation split",
         scenario_dissipation_identity},
        {"scaling_divergence", "free-energy dilation slope matches 2M(M/(8 pi) - 1)",
         scenario_scaling_divergence},
        {"repulsive_minimizer",
         "stationary state solves the reduced equation and attracts the flow",
         scenario_repulsive_minimizer},
        {"alpha_affinity", "deficit is affine in alpha", scenario_alpha_affinity},
        {"dual_gap", "dual gap is nonnegative and vanishes for constants", scenario_dual_gap},
        {"translated_unboundedness", "translates drive the subcritical free energy down",
         scenario_translated_unboundedness},
    };
    return registry;
}

ScenarioResult run_scenario(const std::string& name, const GridSpec& spec) {
    for (const ScenarioEntry& e : scenario_registry())
        if (e.name == name) return e.run(spec);
    throw std::invalid_argument("unknown scenario: " + name);
}

std::string format_scenario_result(const ScenarioResult& result) {
    std::ostringstream os;
    os << "scenario " << result.name << ": " << (result.passed ? "PASS" : "FAIL") << " ("
       << result.checks.size() << " checks, " << num(result.seconds) << " s)\n";
    for (const ScenarioCheck& c : result.checks) {
        os << "  " << (c.pass ? "PASS" : "FAIL") << " [" << c.provenance << "] " << c.label
           << ": ";
        switch (c.mode) {
            case ScenarioCheck::Mode::close:
                os << "value=" << num(c.value) << " target=" << num(c.target)
                   << " tol=" << num(c.tolerance);
                break;
            case ScenarioCheck::Mode::at_least:
                os << "value=" << num(c.value) << " min=" << num(c.target);
                break;
            case ScenarioCheck::Mode::at_most:
                os << "value=" << num(c.value) << " max=" << num(c.target);
                break;
            case ScenarioCheck::Mode::boolean:
                os << (c.pass ? "yes" : "no");
                break;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace loghls
