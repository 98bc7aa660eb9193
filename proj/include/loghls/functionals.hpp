#ifndef LOGHLS_FUNCTIONALS_HPP
#define LOGHLS_FUNCTIONALS_HPP

#include <utility>
#include <vector>

#include "loghls/grid.hpp"
#include "loghls/profiles.hpp"

namespace loghls {

/** All scalar functionals of a density evaluated together.
 *
 * The deficit is stored through deficit0 (its value at alpha = 0) plus the
 * relative entropy; deficit_at evaluates the affine interpolation
 *   deficit(alpha) = (1 - alpha) * deficit0 + alpha * relative_entropy,
 * which makes the interpolation identity exact by construction.
 */
struct FunctionalReport {
    double mass = 0.0;
    double boltzmann_entropy = 0.0;  ///< int f log f
    double relative_entropy = 0.0;   ///< int f log(f / (M mu)) = entropy + potential - M log M
    double potential_energy = 0.0;   ///< int V f
    double interaction = 0.0;        ///< int int f(x) f(y) log|x-y|
    double deficit0 = 0.0;           ///< deficit at alpha = 0
    std::vector<double> alphas;      ///< requested evaluation points
    std::vector<double> deficits;    ///< deficit_at(alphas[k])
    double free_energy = 0.0;        ///< at the (beta, eps) recorded below
    double beta = 0.0;
    double eps = 1.0;

    double deficit_at(double alpha) const {
        return (1.0 - alpha) * deficit0 + alpha * relative_entropy;
    }
};

/** Signed parts of the entropy production along the rescaled fast-diffusion
 * flow: d/dt(deficit) = -(gn_part + phi_part), with both parts nonnegative.
 */
struct DissipationReport {
    double gn_part = 0.0;   ///< 8 (int |grad f^{1/4}|^2 - pi int f^{3/2})
    double phi_part = 0.0;  ///< 8 pi alpha int phi(f/mu) mu^{3/2}
    double total = 0.0;     ///< -(gn_part + phi_part)
};

/// Component integrals; p is the tail decay exponent of the density.
double quad_mass(const RadialGrid& g, const std::vector<double>& f, double p = 4.0);
double boltzmann_entropy(const RadialGrid& g, const std::vector<double>& f, double p = 4.0);
double potential_energy(const RadialGrid& g, const std::vector<double>& f, double p = 4.0);

/** int W f where W grows like far_field * log(r) beyond the grid. */
double field_energy(const RadialGrid& g, const Field& W, const std::vector<double>& f,
                    double p = 4.0);

/** Full report: components, deficits at the requested alphas, free energy at
 * (beta, eps). */
FunctionalReport make_report(const RadialGrid& g, const Density& f,
                             const std::vector<double>& alphas = {}, double beta = 0.0,
                             double eps = 1.0);

/** int f log(f / (M mu)) >= 0; equality iff f = M mu. */
double relative_entropy(const RadialGrid& g, const Density& f);

/** Deficit of the interpolated inequality at parameter alpha >= 0:
 *   int f log(f/M) + alpha int V f + M(1-alpha)(1+log pi) - (2/M)(alpha-1) I.
 * \throws std::domain_error for alpha < 0.
 */
double loghls_deficit(const RadialGrid& g, const Density& f, double alpha);

/** Free energy int f log f + beta int V f + (1/2) int phi f, where
 * -eps Lap phi = f. With eps = +1 the interaction term is -(1/(4 pi)) I,
 * with eps = -1 it is +(1/(4 pi)) I. If W is given it replaces the beta*V
 * term entirely (pass W = beta*V to reproduce the built-in potential).
 * \throws std::domain_error for non-finite W or |eps| != 1.
 */
double free_energy(const RadialGrid& g, const Density& f, double beta, double eps,
                   const Field* W = nullptr);

/** The three norms entering the interpolation inequality for a field with
 * far-field decay ~ r^{-p/4}: {int |grad v|^2, int v^4, int v^6}. */
struct GNParts {
    double grad2 = 0.0;
    double l4 = 0.0;
    double l6 = 0.0;
};
GNParts gn_parts(const RadialGrid& g, const std::vector<double>& v, double p = 4.0);

/** ||grad v||_2^2 ||v||_4^4 - pi ||v||_6^6 >= 0 (sharp for v = mu^{1/4}). */
double gn_deficit(const RadialGrid& g, const std::vector<double>& v, double p = 4.0);

/** phi(t) = t^{3/2} - t - sqrt(t) + 1; nonnegative, convex, phi(1) = 0. */
double phi_fn(double t);

/** Analytic decomposition of the deficit dissipation at parameter alpha. */
DissipationReport dissipation(const RadialGrid& g, const Density& f, double alpha);

/** Dual-form gap
 *   M/(16 pi (1-alpha)) int |grad v|^2 + M int v dnu - M log int e^v dnu,
 * with dnu the normalized reference measure mu dx. Nonnegative for
 * alpha in [0,1).
 * \throws std::domain_error for alpha outside [0,1) or unbounded v.
 */
double onofri_gap(const RadialGrid& g, const std::vector<double>& v, double alpha, double M);

/** Free energy (beta, eps = -1) along the dilation family
 * f_lambda(x) = f(x/lambda)/lambda^2, returned as (lambda, value) pairs.
 * Large-mass densities make the values diverge like 2M(M/(8 pi) - 1) log
 * lambda as lambda -> 0.
 * \throws std::domain_error for any lambda <= 0.
 */
std::vector<std::pair<double, double>> scaling_curve(const RadialGrid& g, const Density& f,
                                                     double beta,
                                                     const std::vector<double>& lambdas);

/** Least-squares slope of y against log(lambda) for a scaling curve. */
double fit_log_slope(const std::vector<std::pair<double, double>>& curve);

}  // namespace loghls

#endif
