#ifndef LOGHLS_CALCULUS_HPP
#define LOGHLS_CALCULUS_HPP

#include <array>
#include <vector>

#include "loghls/grid.hpp"

namespace loghls {

/** First and second derivatives of a nodal field with respect to the uniform
 * grid parameter s, using 5-point quartic stencils (one-sided near the ends).
 */
void derivs_s(const RadialGrid& g, const std::vector<double>& v,
              std::vector<double>& vs, std::vector<double>& vss);

/** Least-squares fit v ~ a0 + a1 r^2 + a2 r^4 + a3 r^6 over the first mwin
 * nodes; returns {a0, a1, a2, a3}. Used to evaluate radial derivatives near
 * the origin where the chain rule through the stretched map loses accuracy.
 */
std::array<double, 4> even_poly_fit(const RadialGrid& g, const std::vector<double>& v, int mwin);

/** Number of head nodes delegated to the even-polynomial fit. */
int origin_nodes(const RadialGrid& g);

/** Width of the fitting window for the origin treatment. */
int fit_window(const RadialGrid& g);

/** dv/dr at the nodes; origin-safe for smooth radial fields. */
std::vector<double> gradient_r(const RadialGrid& g, const std::vector<double>& v);

/** Laplacian of a radial field, v_rr + v_r / r; origin-safe. */
std::vector<double> laplacian_r(const RadialGrid& g, const std::vector<double>& v);

}  // namespace loghls

#endif
