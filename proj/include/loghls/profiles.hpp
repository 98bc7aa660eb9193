#ifndef LOGHLS_PROFILES_HPP
#define LOGHLS_PROFILES_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "loghls/grid.hpp"

namespace loghls {

/** Nonnegative radial profile with its recorded quadrature mass. */
struct Density {
    std::vector<double> values;  ///< f_i >= 0 at grid nodes
    double mass = 0.0;           ///< recorded quadrature of values (with tail model)
};

/** Scalar radial profile without mass semantics (potentials, test functions).
 *
 * far_field is the coefficient c of the logarithmic growth c*log(r) beyond
 * r_max; 0 means the field is treated as bounded (no tail model).
 */
struct Field {
    std::vector<double> values;
    double far_field = 0.0;
};

/** The reference pair: mu = 1/(pi (1+r^2)^2) and V = -log(mu). */
struct ReferencePair {
    Density mu;  ///< mass-1 reference density
    Field V;     ///< confinement potential, V ~ 4 log r at infinity
};

/// Pointwise closed forms.
double mu_of(double r);
double V_of(double r);

/** Quadrature mass of nodal values with the density tail model r^-p. */
double density_mass(const RadialGrid& g, const std::vector<double>& values, double p = 4.0);

/** Wrap nodal values as a Density, recording the quadrature mass.
 * \throws std::invalid_argument on negative or non-finite values or zero mass. */
Density make_density(const RadialGrid& g, std::vector<double> values);

/** Check Density invariants (nonnegative, finite, recorded mass consistent).
 * \throws std::invalid_argument when violated. */
void validate_density(const RadialGrid& g, const Density& f, double mass_rel_tol = 1e-10);

/** Sample the reference pair on the grid from the closed forms. */
ReferencePair make_reference(const RadialGrid& g);

/** Specification of a standard test density. */
struct TestDensitySpec {
    enum class Kind { gaussian, reference, dilated_reference, translated, bump, custom };
    Kind kind = Kind::reference;
    double sigma = 1.0;                ///< gaussian width
    double lambda = 1.0;               ///< dilation parameter, f_lambda(x) = f(x/lambda)/lambda^2
    double y = 0.0;                    ///< translation distance (radial core accepts only y = 0)
    double a = 0.5, b = 2.5;           ///< bump support [a, b]
    std::vector<double> values;        ///< custom nodal values
};

/** Build a normalized test density of total mass M.
 *
 * gaussian(sigma):        exp(-r^2/(2 sigma^2)) / (2 pi sigma^2)
 * reference:              mu = 1/(pi (1+r^2)^2)
 * dilated_reference(l):   l^2 / (pi (l^2 + r^2)^2)
 * translated(y):          accepted only at y = 0 (translates are not radial;
 *                         the Cartesian oracle handles them)
 * bump(a, b):             C^inf bump exp(-1/((r-a)(b-r))) on (a, b)
 * custom(values):         caller-provided nodal values
 *
 * Every kind is renormalized so the quadrature mass is exactly M; the
 * recorded mass then matches the quadrature to machine precision.
 *
 * \throws std::invalid_argument on invalid parameters or negative custom values
 */
Density make_test_density(const RadialGrid& g, const TestDensitySpec& spec, double M);

/// Convenience wrappers for the common kinds.
Density make_gaussian(const RadialGrid& g, double sigma, double M = 1.0);
Density make_reference_density(const RadialGrid& g, double M = 1.0);
Density make_dilated_reference(const RadialGrid& g, double lambda, double M = 1.0);
Density make_bump(const RadialGrid& g, double a, double b, double M = 1.0);

/** Serialize as two-column "r value" text with header "# mass=<M> rmax=<r_max>". */
void write_density(std::ostream& os, const RadialGrid& g, const Density& f);
std::string density_to_string(const RadialGrid& g, const Density& f);

/** Parse the two-column format back; validates node count against the grid. */
Density read_density(std::istream& is, const RadialGrid& g);

}  // namespace loghls

#endif
