#ifndef LOGHLS_GREENS_HPP
#define LOGHLS_GREENS_HPP

#include <vector>

#include "loghls/grid.hpp"
#include "loghls/profiles.hpp"

namespace loghls {

/** Result of solving -Lap u = f on the plane for radial data. */
struct PotentialSolution {
    Field u;            ///< nodal potential; far_field = -mass/(2 pi)
    double mass = 0.0;  ///< total source mass including the tail model
};

/** Newtonian potential of a radial density, vanishing gauge at infinity up to
 * the unavoidable -mass/(2 pi) log r growth:
 *
 *   u(r) = -(1/(2 pi)) [ log(r) * M(r) + int_r^inf log(s) f(s) 2 pi s ds ],
 *
 * where M(r) is the cumulative mass. The density tail is modeled as
 * f ~ f_N (R/r)^p beyond the grid.
 */
PotentialSolution inverse_laplacian(const RadialGrid& g, const std::vector<double>& f,
                                    double p_tail = 4.0);

/** (log|.| * f)(r) = -2 pi u(r); far_field of the result is +mass. */
PotentialSolution log_convolution(const RadialGrid& g, const std::vector<double>& f,
                                  double p_tail = 4.0);

/** Double integral int int f(x) log|x-y| f(y) dx dy via the convolution. */
double interaction_integral(const RadialGrid& g, const std::vector<double>& f,
                            double p_tail = 4.0);

inline PotentialSolution inverse_laplacian(const RadialGrid& g, const Density& f) {
    return inverse_laplacian(g, f.values);
}
inline PotentialSolution log_convolution(const RadialGrid& g, const Density& f) {
    return log_convolution(g, f.values);
}
inline double interaction_integral(const RadialGrid& g, const Density& f) {
    return interaction_integral(g, f.values);
}

}  // namespace loghls

#endif
