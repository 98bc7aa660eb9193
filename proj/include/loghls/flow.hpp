#ifndef LOGHLS_FLOW_HPP
#define LOGHLS_FLOW_HPP

#include <vector>

#include "loghls/functionals.hpp"
#include "loghls/grid.hpp"
#include "loghls/profiles.hpp"

namespace loghls {

/** Time-integration scheme. The semi-implicit schemes are the production
 * path; explicit Euler exists as a cross-check at small scale only. */
enum class FlowScheme { semi_implicit, explicit_euler };

struct FlowConfig {
    FlowScheme scheme = FlowScheme::semi_implicit;
    double dt_init = 0.0;       ///< 0 = automatic (a quarter of the CFL bound)
    double t_end = 1.0;
    double cfl_safety = 0.9;    ///< fraction of the face-drift CFL bound
    double floor = 0.0;         ///< mobility floor; 0 = automatic 1e-12 * max f0
    int record_every = 10;      ///< trace stride in accepted steps
    long max_steps = 1000000;
    double concentration_factor = 1e6;  ///< blow-up guard on max f / max f0
    bool allow_supercritical = false;   ///< opt-in for attractive mass >= 8 pi
};

/** Sampled history of a flow run. The k-th record holds the state at
 * times[k]; dFdt_fd[k] is the centered finite-difference slope of the
 * Lyapunov column (deficit at alphas.front() for the rescaled nonlinear
 * flow, free energy for the drift-diffusion flow); its first and last
 * entries are NaN.
 */
struct FlowTrace {
    std::vector<double> times;
    std::vector<double> mass;               ///< conserved finite-volume mass
    std::vector<FunctionalReport> reports;
    std::vector<DissipationReport> dissipation;
    std::vector<double> dFdt_fd;
    std::vector<double> alphas;             ///< deficit evaluation points
    double beta = 0.0;
    double eps = 1.0;
    bool is_ddp = false;
    long steps = 0;
    long rejections = 0;
    double clipped_mass = 0.0;              ///< cumulative clipped negative mass
    bool completed = false;                 ///< reached t_end within budget
    bool blow_up = false;                   ///< concentration guard tripped
    Density final_state;
};

/** One backward-Euler step of the rescaled nonlinear diffusion flow
 * df/dt = Lap sqrt(f) + 2 sqrt(pi) div(x f) in conservative radial
 * finite-volume form. The two transport mechanisms combine into a single
 * degenerate diffusion in the variable xi = sqrt(pi) r^2 - 1/sqrt(f):
 * flux = f * d(xi)/dr, which is stationary exactly at f = M mu. The
 * nonlinear system is solved by Newton iteration on the nodal values.
 * \throws std::runtime_error if the step is rejected (caller halves dt).
 */
Density step_proof_flow(const RadialGrid& g, const Density& f, double dt, double floor = 0.0);

/** One step of the drift-diffusion-Poisson flow
 * df/dt = div(grad f + f grad(beta V + eps u)), u = (-Lap)^{-1} f,
 * with the potential frozen at the current state and the flux discretized
 * by exponential fitting, so the discrete steady state is the Gibbs profile
 * of the frozen potential and positivity is unconditional.
 * \throws std::domain_error for supercritical attractive mass (eps = -1,
 * M >= 8 pi); std::runtime_error on rejection.
 */
Density step_ddp_flow(const RadialGrid& g, const Density& f, double beta, double eps, double dt,
                      bool allow_supercritical = false);

/** Integrate the rescaled nonlinear flow to t_end with adaptive dt
 * (halving on rejection, growth 1.2x up to the CFL bound), recording
 * functional reports and dissipation decompositions at the requested
 * alphas (alphas.front() drives the dissipation column). */
FlowTrace run_proof_flow(const RadialGrid& g, const Density& f0, const FlowConfig& config,
                         const std::vector<double>& alphas);

/** Integrate the drift-diffusion-Poisson flow; records free energy at
 * (beta, eps) and the entropy production int f |grad(log f + beta V + u)|^2
 * (stored in gn_part of the dissipation records, phi_part = 0). */
FlowTrace run_ddp_flow(const RadialGrid& g, const Density& f0, double beta, double eps,
                       const FlowConfig& config);

/** Entropy production of the drift-diffusion flow, computed in the
 * vacuum-safe form int (4 |grad sqrt(f)|^2 + 2 grad f . grad U + f |grad U|^2)
 * with U = beta V + eps u. */
double ddp_entropy_production(const RadialGrid& g, const Density& f, double beta, double eps);

/** CFL-type bound on dt for the rescaled nonlinear flow: the drift speed
 * toward the origin is 2 sqrt(pi) r, so dt <= cfl * min h_face / (2 sqrt(pi) r_face). */
double proof_flow_dt_cap(const RadialGrid& g, double cfl_safety);

}  // namespace loghls

#endif
