#ifndef LOGHLS_GRID_HPP
#define LOGHLS_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace loghls {

/** One quadrature cell [r_i, r_{i+1}].
 *
 * Each cell carries weights for the plain 2D radial measure 2*pi*r dr and
 * for the log-moment measure 2*pi*r*log(r) dr, expressed on a nodal stencil
 * (4 nodes for the cubic product rule, 2 for the linear fallback).  Keeping
 * both moment families per cell lets the Green-function module evaluate
 * cumulative integrals with exactly the same rule as plain integration.
 */
struct QuadCell {
    int lo = 0;                      ///< first node of the stencil
    int size = 0;                    ///< stencil length (2 or 4)
    std::array<double, 4> w1{};      ///< weights against 2*pi*r dr
    std::array<double, 4> wlog{};    ///< weights against 2*pi*r*log(r) dr
};

/** Graded radial grid on [0, r_max] with product-integration weights.
 *
 * Nodes follow the power map r(s) = r_max * s^stretch with s uniform in
 * [0, 1]; stretch > 1 clusters nodes near the origin where densities peak.
 * Per-cell weights integrate the local cubic (or linear) interpolant exactly
 * against the 2D measure, so the rule is exact for constants and linears in
 * r regardless of grading.  Cells whose cubic weights would make any nodal
 * weight negative are demoted to the strictly positive linear rule, so the
 * aggregated nodal weights are always nonnegative.
 */
struct RadialGrid {
    int n = 0;                       ///< node count
    double r_max = 0.0;              ///< truncation radius
    double stretch = 1.0;            ///< grading exponent of the power map
    double tail_exponent = 4.0;      ///< assumed decay power of integrands beyond r_max
    double ds = 0.0;                 ///< uniform spacing of the map parameter

    std::vector<double> s;           ///< uniform map parameter in [0, 1]
    std::vector<double> r;           ///< nodes, r[0] = 0 < r[1] < ... = r_max
    std::vector<double> dr_ds;       ///< dr/ds at nodes
    std::vector<double> d2r_ds2;     ///< d2r/ds2 at nodes
    std::vector<double> weights;     ///< aggregated nodal weights (2D measure)
    std::vector<QuadCell> cells;     ///< per-cell rules, n-1 of them
};

/** Build a graded radial grid.
 *
 * \param n        node count (>= 16)
 * \param r_max    truncation radius (> 1)
 * \param stretch  grading exponent (>= 1; 1 gives a uniform grid)
 * \throws std::invalid_argument on out-of-range or non-finite parameters
 */
RadialGrid build_grid(int n, double r_max, double stretch);

/** Quadrature of nodal values against the 2D measure 2*pi*r dr.
 *
 * When tail_p > 2 is given, the integrand is extended beyond r_max by the
 * power model v(r) = v_N (r_max/r)^p and the analytic remainder
 * 2*pi*v_N*r_max^2/(p-2) is added.
 *
 * \throws std::invalid_argument on non-finite values
 */
double integrate(const RadialGrid& g, const std::vector<double>& v, double tail_p = 0.0);

/** Tail of int_{r_max}^inf field * dens * 2*pi*r dr for a logarithmically
 * growing field and an algebraically decaying density.
 *
 * The field is modelled as A*log(r) + B with B matched so the field equals
 * field_last at r_max; the density decays as a*r^-p with a matched so it
 * equals dens_last at r_max.
 */
double tail_product(double field_last, double field_A, double dens_last, double r_max, double p);

/** Cumulative 2D-measure integral m(r_j) = int_0^{r_j} f * 2*pi*s ds at every node. */
std::vector<double> cumulative_mass(const RadialGrid& g, const std::vector<double>& f);

/** Cumulative log-moment integral L(r_j) = int_0^{r_j} log(s) * f * 2*pi*s ds at every node. */
std::vector<double> cumulative_logmom(const RadialGrid& g, const std::vector<double>& f);

}  // namespace loghls

#endif
