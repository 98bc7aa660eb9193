#ifndef LOGHLS_CARTESIAN_HPP
#define LOGHLS_CARTESIAN_HPP

#include <functional>
#include <vector>

namespace loghls {

/** Uniform n x n cell-centered patch covering [-L, L]^2; the trusted-slow
 * oracle grid for non-radial checks. */
struct CartesianPatch {
    int n = 0;
    double L = 0.0;
    double h = 0.0;                  ///< cell width 2L/n
    std::vector<double> values;      ///< row-major f at cell centers, size n*n
    std::vector<double> centers;     ///< 1-d center coordinates, size n
};

/** Cell-centered sampling of fn(x, y) on [-L, L]^2.
 * \throws std::invalid_argument for n outside [2, 128] (cost guard) or
 * negative samples. */
CartesianPatch make_cartesian_patch(double L, int n,
                                    const std::function<double(double, double)>& fn);

/** Direct O(n^4) double sum for int int f(x) f(y) log|x - y|. Off-diagonal
 * cell pairs use midpoint distances; the diagonal (self-cell) pairs use the
 * exact average of log|x - y| over a square cell pair, log h + C0 with
 * C0 = 2 int_0^1 int_0^1 (1-u)(1-v) log(u^2+v^2) du dv = -0.8050867219...
 * \throws std::invalid_argument for patches beyond the cost guard.
 */
double oracle_interaction_cartesian(const CartesianPatch& patch);

/** Free energy of a patch density: entropy + beta * potential
 * - (eps/(4 pi)) * interaction, all by midpoint sums. */
double patch_free_energy(const CartesianPatch& patch, double beta, double eps);

/** Per-shift free-energy components of a unit gaussian translated to
 * distance y along the first axis, for |y| in {0, 5, 10, 20}. The beta- and
 * eps-independent pieces are computed once so several couplings can be
 * assembled from one oracle pass. */
struct TranslationScan {
    std::vector<double> shifts;
    std::vector<double> entropy;
    std::vector<double> potential;
    std::vector<double> interaction;

    /** entropy + beta * potential - (eps/(4 pi)) * interaction at shift k. */
    double free_energy(std::size_t k, double beta, double eps) const;
};

/** Free energies along the translation scan at one (beta, eps). */
struct TranslationReport {
    std::vector<double> shifts;
    std::vector<double> values;       ///< free energy at each shift
    bool strictly_decreasing = false;
    bool strictly_increasing = false;
    double max_abs_diff = 0.0;        ///< largest |F(y_{k+1}) - F(y_k)|
};

/** Run the oracle passes for the translation scan.
 * \throws std::invalid_argument if the patch cannot contain the largest
 * translate (parameter error). */
TranslationScan translated_scan(double L = 26.0, int n = 104);

/** Assemble a TranslationReport from a scan at the given beta (eps = +1). */
TranslationReport assemble_translation_report(const TranslationScan& scan, double beta);

/** Evaluate the translated-density free-energy scan at the given beta
 * (eps = +1). A negative beta makes the sequence decrease without bound as
 * the translate escapes the potential well. */
TranslationReport scenario_translated_unboundedness(double beta, double L = 26.0, int n = 104);

}  // namespace loghls

#endif
