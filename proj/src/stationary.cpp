#include "loghls/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "loghls/calculus.hpp"
#include "loghls/greens.hpp"

namespace loghls {

namespace {

constexpr double kPi = std::numbers::pi;

/** Quadrature with the generic r^{-p} tail model (p may differ from the
 * grid's density exponent; the Gibbs weight decays like r^{-4 gamma}). */
double quad_with_tail(const RadialGrid& g, const std::vector<double>& q, double p) {
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) s += g.weights[i] * q[i];
    if (q[g.n - 1] > 0.0) s += 2.0 * kPi * q[g.n - 1] * g.r_max * g.r_max / (p - 2.0);
    return s;
}

/** Normalized Gibbs density M e^{expo - max(expo)} / Z for expo = -beta V - phi. */
std::vector<double> gibbs_map(const RadialGrid& g, const std::vector<double>& expo, double M) {
    double shift = expo[0];
    for (double e : expo) shift = std::max(shift, e);
    std::vector<double> q(g.n);
    for (int i = 0; i < g.n; ++i) q[i] = std::exp(expo[i] - shift);
    const double Z = quad_with_tail(g, q, 4.0);
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw std::runtime_error("solve_stationary: partition function degenerate");
    for (double& x : q) x *= M / Z;
    return q;
}

}  // namespace

StationaryResult solve_stationary(const RadialGrid& g, double M, double beta, double theta,
                                  int max_iter, const Density* start) {
    if (!(M > 0.0) || !std::isfinite(M))
        throw std::invalid_argument("solve_stationary: mass must be positive");
    if (!(theta > 0.0) || theta > 1.0)
        throw std::invalid_argument("solve_stationary: damping must lie in (0, 1]");
    if (max_iter < 1) throw std::invalid_argument("solve_stationary: max_iter must be >= 1");
    if (start) validate_density(g, *start);

    StationaryResult out;
    out.beta = beta;
    out.mass = M;
    out.subcritical_regime = beta >= 1.0 + M / (8.0 * kPi);

    std::vector<double> f(g.n);
    if (start) {
        f = start->values;
    } else {
        for (int i = 0; i < g.n; ++i) f[i] = M * mu_of(g.r[i]);
    }

    std::vector<double> expo(g.n);
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        const PotentialSolution phi = inverse_laplacian(g, f);
        for (int i = 0; i < g.n; ++i) expo[i] = -beta * V_of(g.r[i]) - phi.u.values[i];
        const std::vector<double> fnew = gibbs_map(g, expo, M);
        double change = 0.0, fmax = 0.0;
        for (int i = 0; i < g.n; ++i) {
            change = std::max(change, std::abs(fnew[i] - f[i]));
            f[i] = (1.0 - theta) * f[i] + theta * fnew[i];
            fmax = std::max(fmax, std::abs(f[i]));
        }
        if (change < 1e-10 * fmax) {
            out.converged = true;
            break;
        }
    }

    // Renormalize so the recorded mass and the quadrature agree exactly.
    const double qm = quad_with_tail(g, f, 4.0);
    for (double& x : f) x *= M / qm;

    const PotentialSolution phi = inverse_laplacian(g, f);
    for (int i = 0; i < g.n; ++i) expo[i] = -beta * V_of(g.r[i]) - phi.u.values[i];
    const std::vector<double> gibbs = gibbs_map(g, expo, M);
    double residual = 0.0;
    for (int i = 0; i < g.n; ++i) residual = std::max(residual, std::abs(f[i] - gibbs[i]));
    out.residual = residual;

    out.f_stat.values = f;
    out.f_stat.mass = M;
    out.phi_stat = phi.u;
    return out;
}

double j_functional(const RadialGrid& g, const std::vector<double>& psi, double M,
                    double gamma) {
    if (!(gamma > 0.5))
        throw std::domain_error("j_functional: gamma must exceed 1/2 for an integrable tail");
    if (psi.size() != static_cast<std::size_t>(g.n))
        throw std::invalid_argument("j_functional: value count does not match grid");
    for (double x : psi)
        if (!std::isfinite(x)) throw std::domain_error("j_functional: field must be finite");

    const std::vector<double> dpsi = gradient_r(g, psi);
    double grad2 = 0.0;
    for (int i = 0; i < g.n; ++i) grad2 += g.weights[i] * dpsi[i] * dpsi[i];

    // Normalized reference measure including its lumped r^{-4} tail mass, so
    // a constant field shifts the linear and log terms by exactly M c each.
    std::vector<double> nu(g.n);
    double nu_sum = 0.0;
    for (int i = 0; i < g.n; ++i) {
        nu[i] = g.weights[i] * mu_of(g.r[i]);
        nu_sum += nu[i];
    }
    const double nu_tail = kPi * mu_of(g.r_max) * g.r_max * g.r_max;
    nu_sum += nu_tail;
    double mean_psi = nu_tail / nu_sum * psi[g.n - 1];
    for (int i = 0; i < g.n; ++i) mean_psi += nu[i] / nu_sum * psi[i];

    std::vector<double> expo(g.n);
    double shift = -1e300;
    for (int i = 0; i < g.n; ++i) {
        expo[i] = -gamma * V_of(g.r[i]) - psi[i];
        shift = std::max(shift, expo[i]);
    }
    std::vector<double> q(g.n);
    for (int i = 0; i < g.n; ++i) q[i] = std::exp(expo[i] - shift);
    const double Z = quad_with_tail(g, q, 4.0 * gamma);
    return 0.5 * grad2 + M * mean_psi + M * (shift + std::log(Z));
}

std::vector<double> residual_reduced_equation(const RadialGrid& g,
                                              const std::vector<double>& psi, double M,
                                              double gamma) {
    if (!(gamma > 0.5))
        throw std::domain_error(
            "residual_reduced_equation: gamma must exceed 1/2 for an integrable tail");
    if (psi.size() != static_cast<std::size_t>(g.n))
        throw std::invalid_argument("residual_reduced_equation: value count mismatch");

    std::vector<double> expo(g.n);
    double shift = -1e300;
    for (int i = 0; i < g.n; ++i) {
        expo[i] = -gamma * V_of(g.r[i]) - psi[i];
        shift = std::max(shift, expo[i]);
    }
    std::vector<double> q(g.n);
    for (int i = 0; i < g.n; ++i) q[i] = std::exp(expo[i] - shift);
    const double Z = quad_with_tail(g, q, 4.0 * gamma);

    const std::vector<double> lap = laplacian_r(g, psi);
    std::vector<double> res(g.n);
    for (int i = 0; i < g.n; ++i)
        res[i] = -lap[i] - M * (q[i] / Z - mu_of(g.r[i]));
    return res;
}

}  // namespace loghls
