#include "loghls/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loghls {

namespace {

constexpr double kPi = std::numbers::pi;

/// int_a^b s^q log(s) ds with the integrable limit at s = 0.
double int_pow_log(int q, double a, double b) {
    auto F = [q](double x) {
        if (x == 0.0) return 0.0;
        const double q1 = q + 1.0;
        return std::pow(x, q1) * (std::log(x) / q1 - 1.0 / (q1 * q1));
    };
    return F(b) - F(a);
}

/// Solve the k x k system A x = rhs in place (partial pivoting); k <= 4.
void solve_small(double A[4][4], double rhs[4], double x[4], int k) {
    int piv[4] = {0, 1, 2, 3};
    for (int c = 0; c < k; ++c) {
        int best = c;
        for (int rrow = c + 1; rrow < k; ++rrow)
            if (std::abs(A[piv[rrow]][c]) > std::abs(A[piv[best]][c])) best = rrow;
        std::swap(piv[c], piv[best]);
        const double d = A[piv[c]][c];
        if (d == 0.0) throw std::runtime_error("singular cell moment system");
        for (int rrow = c + 1; rrow < k; ++rrow) {
            const double m = A[piv[rrow]][c] / d;
            for (int cc = c; cc < k; ++cc) A[piv[rrow]][cc] -= m * A[piv[c]][cc];
            rhs[piv[rrow]] -= m * rhs[piv[c]];
        }
    }
    for (int c = k - 1; c >= 0; --c) {
        double acc = rhs[piv[c]];
        for (int cc = c + 1; cc < k; ++cc) acc -= A[piv[c]][cc] * x[cc];
        x[c] = acc / A[piv[c]][c];
    }
}

/// Linear product rule on [r_i, r_{i+1}]: exact for linear integrands, both
/// weights strictly positive for r_i >= 0.
QuadCell linear_cell(const std::vector<double>& r, int i) {
    const double a = r[i], b = r[i + 1], h = b - a;
    QuadCell c;
    c.lo = i;
    c.size = 2;
    c.w1[0] = kPi * h * (b + 2.0 * a) / 3.0;
    c.w1[1] = kPi * h * (2.0 * b + a) / 3.0;
    const double m0 = 2.0 * kPi * int_pow_log(1, a, b);
    const double m1 = 2.0 * kPi * int_pow_log(2, a, b);
    c.wlog[0] = (b * m0 - m1) / h;
    c.wlog[1] = (m1 - a * m0) / h;
    return c;
}

/// Cubic product rule: match the first four monomial moments of 2*pi*r dr
/// (and of 2*pi*r*log(r) dr) on a 4-node stencil around the cell.
QuadCell cubic_cell(const std::vector<double>& r, int i) {
    const int n = static_cast<int>(r.size());
    int lo = std::max(0, std::min(i - 1, n - 4));
    // On strongly graded grids the left neighbour can be much closer than the
    // cell itself; shifting the stencil right keeps the Vandermonde system
    // well conditioned.
    if (lo == i - 1 && i >= 1 && (r[i] - r[i - 1]) < 0.5 * (r[i + 1] - r[i]))
        lo = std::min(i, n - 4);

    const double a = r[i], b = r[i + 1];
    const double c = 0.5 * (a + b), d = 0.5 * (b - a);

    double tau[4];
    for (int j = 0; j < 4; ++j) tau[j] = (r[lo + j] - c) / d;

    // Moments of tau^j against both measures, in cell-local coordinates.
    double m[4], l[4];
    for (int j = 0; j < 4; ++j) {
        const double I_j = (j % 2 == 0) ? 2.0 / (j + 1) : 0.0;
        const double I_j1 = ((j + 1) % 2 == 0) ? 2.0 / (j + 2) : 0.0;
        m[j] = 2.0 * kPi * d * (c * I_j + d * I_j1);

        double acc = 0.0;
        double binom = 1.0;  // C(j, mm) built up iteratively
        for (int mm = 0; mm <= j; ++mm) {
            if (mm > 0) binom = binom * (j - mm + 1) / mm;
            acc += binom * std::pow(-c, j - mm) * int_pow_log(mm + 1, a, b);
        }
        l[j] = 2.0 * kPi * acc / std::pow(d, j);
    }

    // Weights solve V^T w = moments where V rows are [1, tau, tau^2, tau^3].
    double VT[4][4];
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) VT[row][col] = std::pow(tau[col], row);

    QuadCell cell;
    cell.lo = lo;
    cell.size = 4;
    double A[4][4], rhs[4], x[4];
    std::copy(&VT[0][0], &VT[0][0] + 16, &A[0][0]);
    std::copy(m, m + 4, rhs);
    solve_small(A, rhs, x, 4);
    std::copy(x, x + 4, cell.w1.begin());
    std::copy(&VT[0][0], &VT[0][0] + 16, &A[0][0]);
    std::copy(l, l + 4, rhs);
    solve_small(A, rhs, x, 4);
    std::copy(x, x + 4, cell.wlog.begin());
    return cell;
}

}  // namespace

RadialGrid build_grid(int n, double r_max, double stretch) {
    if (n < 16 || !std::isfinite(r_max) || r_max <= 1.0 || !std::isfinite(stretch) || stretch < 1.0)
        throw std::invalid_argument("build_grid: need n >= 16, r_max > 1, stretch >= 1");

    RadialGrid g;
    g.n = n;
    g.r_max = r_max;
    g.stretch = stretch;
    g.tail_exponent = 4.0;
    g.ds = 1.0 / (n - 1);
    g.s.resize(n);
    g.r.resize(n);
    g.dr_ds.resize(n);
    g.d2r_ds2.resize(n);
    for (int i = 0; i < n; ++i) {
        const double si = static_cast<double>(i) / (n - 1);
        g.s[i] = si;
        g.r[i] = r_max * std::pow(si, stretch);
        if (si > 0.0) {
            g.dr_ds[i] = stretch * r_max * std::pow(si, stretch - 1.0);
            g.d2r_ds2[i] = stretch * (stretch - 1.0) * r_max * std::pow(si, stretch - 2.0);
        } else {
            g.dr_ds[i] = (stretch == 1.0) ? r_max : 0.0;
            g.d2r_ds2[i] = (stretch == 2.0) ? 2.0 * r_max : 0.0;
        }
    }
    g.r[n - 1] = r_max;  // avoid pow round-off at the endpoint

    g.cells.resize(n - 1);
    std::vector<bool> demoted(n - 1, false);
    for (int i = 0; i < n - 1; ++i) g.cells[i] = cubic_cell(g.r, i);

    // Fixpoint repair: while any aggregated nodal weight is negative, demote
    // every not-yet-demoted cell touching that node to the linear rule.  The
    // loop terminates because each pass demotes at least one cell.
    for (int pass = 0; pass < n; ++pass) {
        std::vector<double> w(n, 0.0);
        for (const QuadCell& c : g.cells)
            for (int j = 0; j < c.size; ++j) w[c.lo + j] += c.w1[j];
        bool any_neg = false;
        for (int j = 0; j < n; ++j) {
            if (w[j] >= 0.0) continue;
            any_neg = true;
            for (int i = 0; i < n - 1; ++i) {
                if (demoted[i]) continue;
                const QuadCell& c = g.cells[i];
                if (j >= c.lo && j < c.lo + c.size) {
                    g.cells[i] = linear_cell(g.r, i);
                    demoted[i] = true;
                }
            }
        }
        if (!any_neg) {
            g.weights = std::move(w);
            break;
        }
    }
    if (g.weights.empty()) throw std::runtime_error("build_grid: weight repair did not converge");
    return g;
}

double integrate(const RadialGrid& g, const std::vector<double>& v, double tail_p) {
    if (static_cast<int>(v.size()) != g.n)
        throw std::invalid_argument("integrate: size mismatch with grid");
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) {
        if (!std::isfinite(v[i])) throw std::invalid_argument("integrate: non-finite value");
        s += g.weights[i] * v[i];
    }
    if (tail_p > 2.0 && v[g.n - 1] != 0.0)
        s += 2.0 * kPi * v[g.n - 1] * g.r_max * g.r_max / (tail_p - 2.0);
    return s;
}

double tail_product(double field_last, double field_A, double dens_last, double r_max, double p) {
    if (dens_last == 0.0) return 0.0;
    const double q = p - 2.0;
    const double a = dens_last * std::pow(r_max, p);
    const double B = field_last - field_A * std::log(r_max);
    const double Rq = std::pow(r_max, q);
    return 2.0 * kPi * a *
           (field_A * (std::log(r_max) / (q * Rq) + 1.0 / (q * q * Rq)) + B / (q * Rq));
}

std::vector<double> cumulative_mass(const RadialGrid& g, const std::vector<double>& f) {
    std::vector<double> out(g.n, 0.0);
    double acc = 0.0;
    for (int i = 0; i < g.n - 1; ++i) {
        const QuadCell& c = g.cells[i];
        double ci = 0.0;
        for (int j = 0; j < c.size; ++j) ci += c.w1[j] * f[c.lo + j];
        acc += ci;
        out[i + 1] = acc;
    }
    return out;
}

std::vector<double> cumulative_logmom(const RadialGrid& g, const std::vector<double>& f) {
    std::vector<double> out(g.n, 0.0);
    double acc = 0.0;
    for (int i = 0; i < g.n - 1; ++i) {
        const QuadCell& c = g.cells[i];
        double ci = 0.0;
        for (int j = 0; j < c.size; ++j) ci += c.wlog[j] * f[c.lo + j];
        acc += ci;
        out[i + 1] = acc;
    }
    return out;
}

}  // namespace loghls
