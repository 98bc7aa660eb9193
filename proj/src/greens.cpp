#include "loghls/greens.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loghls {

namespace {
constexpr double kPi = std::numbers::pi;
}

PotentialSolution inverse_laplacian(const RadialGrid& g, const std::vector<double>& f,
                                    double p_tail) {
    if (f.size() != static_cast<std::size_t>(g.n))
        throw std::invalid_argument("inverse_laplacian: value count does not match grid");
    if (!(p_tail > 2.0))
        throw std::invalid_argument("inverse_laplacian: tail exponent must exceed 2");

    const std::vector<double> M = cumulative_mass(g, f);
    const std::vector<double> L = cumulative_logmom(g, f);
    const double R = g.r_max;
    const double fN = f[g.n - 1];
    const double tail_T = fN > 0.0 ? tail_product(std::log(R), 1.0, fN, R, p_tail) : 0.0;
    const double mass =
        M[g.n - 1] + (fN > 0.0 ? 2.0 * kPi * fN * R * R / (p_tail - 2.0) : 0.0);

    PotentialSolution sol;
    sol.u.values.resize(g.n);
    // T(r) = int_r^inf log(s) f 2 pi s ds, assembled from the cumulative
    // log-moment plus the analytic tail beyond the grid.
    sol.u.values[0] = -((L[g.n - 1] - L[0]) + tail_T) / (2.0 * kPi);
    for (int i = 1; i < g.n; ++i) {
        const double T = (L[g.n - 1] - L[i]) + tail_T;
        sol.u.values[i] = -(std::log(g.r[i]) * M[i] + T) / (2.0 * kPi);
    }
    sol.u.far_field = -mass / (2.0 * kPi);
    sol.mass = mass;
    return sol;
}

PotentialSolution log_convolution(const RadialGrid& g, const std::vector<double>& f,
                                  double p_tail) {
    PotentialSolution sol = inverse_laplacian(g, f, p_tail);
    for (double& v : sol.u.values) v *= -2.0 * kPi;
    sol.u.far_field = sol.mass;
    return sol;
}

double interaction_integral(const RadialGrid& g, const std::vector<double>& f, double p_tail) {
    const PotentialSolution lc = log_convolution(g, f, p_tail);
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) s += g.weights[i] * f[i] * lc.u.values[i];
    const double fN = f[g.n - 1];
    if (fN > 0.0) s += tail_product(lc.u.values[g.n - 1], lc.mass, fN, g.r_max, p_tail);
    return s;
}

}  // namespace loghls
