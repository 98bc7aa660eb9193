#ifndef LOGHLS_STATIONARY_HPP
#define LOGHLS_STATIONARY_HPP

#include <vector>

#include "loghls/grid.hpp"
#include "loghls/profiles.hpp"

namespace loghls {

/** Self-consistent stationary state of the repulsive drift-diffusion flow. */
struct StationaryResult {
    Density f_stat;        ///< fixed point of f = M e^{-beta V - phi[f]} / Z
    Field phi_stat;        ///< repulsive potential phi = (-Lap)^{-1} f_stat
    double residual = 0.0; ///< sup-norm of f_stat minus the Gibbs map of itself
    int iterations = 0;
    bool converged = false;
    double beta = 0.0;
    double mass = 0.0;
    bool subcritical_regime = true;  ///< beta >= 1 + M/(8 pi) held on entry
};

/** Damped fixed-point iteration f <- (1-theta) f + theta M e^{-beta V - phi[f]}/Z.
 * Convergence when the undamped update moves by less than 1e-10 relative
 * sup-norm; the exponent is max-shifted before exponentiation. The converged
 * density is renormalized to quadrature mass exactly M.
 * \throws std::invalid_argument for M <= 0 or theta outside (0, 1].
 */
StationaryResult solve_stationary(const RadialGrid& g, double M, double beta,
                                  double theta = 0.5, int max_iter = 500,
                                  const Density* start = nullptr);

/** Variational functional of the reduced equation,
 *   J(psi) = (1/2) int |grad psi|^2 + M int psi dmu + M log int e^{-gamma V - psi},
 * gauge-invariant under psi -> psi + const.
 * \throws std::domain_error for gamma <= 1/2 (the exponential tail
 * (1+r^2)^{-2 gamma} stops being integrable).
 */
double j_functional(const RadialGrid& g, const std::vector<double>& psi, double M, double gamma);

/** Pointwise residual of -Lap psi = M (e^{-gamma V - psi}/Z - mu), evaluated
 * with the finite-difference radial Laplacian. */
std::vector<double> residual_reduced_equation(const RadialGrid& g,
                                              const std::vector<double>& psi, double M,
                                              double gamma);

}  // namespace loghls

#endif
