#include "loghls/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loghls {

namespace {

/** Solve the k x k system A x = b in place by Gaussian elimination with
 * partial pivoting (k <= 5 here, so a dense direct solve is fine). */
void solve_dense(std::vector<double>& A, std::vector<double>& b, int k) {
    for (int col = 0; col < k; ++col) {
        int piv = col;
        double best = std::abs(A[col * k + col]);
        for (int row = col + 1; row < k; ++row) {
            const double cand = std::abs(A[row * k + col]);
            if (cand > best) {
                best = cand;
                piv = row;
            }
        }
        if (best == 0.0) throw std::runtime_error("solve_dense: singular matrix");
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(A[col * k + j], A[piv * k + j]);
            std::swap(b[col], b[piv]);
        }
        for (int row = col + 1; row < k; ++row) {
            const double m = A[row * k + col] / A[col * k + col];
            if (m == 0.0) continue;
            for (int j = col; j < k; ++j) A[row * k + j] -= m * A[col * k + j];
            b[row] -= m * b[col];
        }
    }
    for (int row = k - 1; row >= 0; --row) {
        double acc = b[row];
        for (int j = row + 1; j < k; ++j) acc -= A[row * k + j] * b[j];
        b[row] = acc / A[row * k + row];
    }
}

/** Finite-difference weights for the m-th derivative at x0 from 5 nodes,
 * obtained by solving the transposed Vandermonde system. */
std::array<double, 5> fd_weights(const double* xs, double x0, int m) {
    constexpr int k = 5;
    std::vector<double> A(k * k);
    std::vector<double> b(k, 0.0);
    for (int j = 0; j < k; ++j) {
        for (int c = 0; c < k; ++c) {
            const double d = xs[c] - x0;
            A[j * k + c] = (j == 0) ? 1.0 : A[(j - 1) * k + c] * d;
        }
    }
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    b[m] = fact;
    solve_dense(A, b, k);
    std::array<double, 5> w;
    for (int c = 0; c < k; ++c) w[c] = b[c];
    return w;
}

}  // namespace

void derivs_s(const RadialGrid& g, const std::vector<double>& v,
              std::vector<double>& vs, std::vector<double>& vss) {
    const int n = g.n;
    if (v.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("derivs_s: value count does not match grid");
    const double h = g.ds;
    vs.assign(n, 0.0);
    vss.assign(n, 0.0);
    const double c1[5] = {1.0 / (12 * h), -8.0 / (12 * h), 0.0, 8.0 / (12 * h), -1.0 / (12 * h)};
    const double c2[5] = {-1.0 / (12 * h * h), 16.0 / (12 * h * h), -30.0 / (12 * h * h),
                          16.0 / (12 * h * h), -1.0 / (12 * h * h)};
    for (int i = 0; i < n; ++i) {
        const int lo = std::min(std::max(i - 2, 0), n - 5);
        if (lo == i - 2) {
            double a1 = 0.0, a2 = 0.0;
            for (int j = 0; j < 5; ++j) {
                a1 += c1[j] * v[lo + j];
                a2 += c2[j] * v[lo + j];
            }
            vs[i] = a1;
            vss[i] = a2;
        } else {
            const auto w1 = fd_weights(&g.s[lo], g.s[i], 1);
            const auto w2 = fd_weights(&g.s[lo], g.s[i], 2);
            double a1 = 0.0, a2 = 0.0;
            for (int j = 0; j < 5; ++j) {
                a1 += w1[j] * v[lo + j];
                a2 += w2[j] * v[lo + j];
            }
            vs[i] = a1;
            vss[i] = a2;
        }
    }
}

std::array<double, 4> even_poly_fit(const RadialGrid& g, const std::vector<double>& v, int mwin) {
    if (mwin < 4 || mwin > g.n) throw std::invalid_argument("even_poly_fit: bad window");
    const double scale = g.r[mwin - 1];
    // Normal equations of the 4-column design matrix [1, rho^2, rho^4, rho^6]
    // with rho in [0, 1]; well conditioned enough at this size.
    std::vector<double> ata(16, 0.0);
    std::vector<double> atb(4, 0.0);
    for (int i = 0; i < mwin; ++i) {
        const double rho = g.r[i] / scale;
        const double rho2 = rho * rho;
        double col[4] = {1.0, rho2, rho2 * rho2, rho2 * rho2 * rho2};
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) ata[a * 4 + b] += col[a] * col[b];
            atb[a] += col[a] * v[i];
        }
    }
    solve_dense(ata, atb, 4);
    std::array<double, 4> coef;
    double s = 1.0;
    const double s2 = scale * scale;
    for (int a = 0; a < 4; ++a) {
        coef[a] = atb[a] / s;
        s *= s2;
    }
    return coef;
}

int origin_nodes(const RadialGrid& g) {
    constexpr double s_safe = 0.02;
    if (g.stretch == 1.0) return 1;  // uniform map: only r = 0 itself needs care
    const int i0 = static_cast<int>(std::ceil(s_safe * (g.n - 1)));
    return std::max(1, std::min(i0, g.n - 6));
}

int fit_window(const RadialGrid& g) {
    const int i0 = origin_nodes(g);
    return std::max(8, std::min(2 * i0, g.n));
}

std::vector<double> gradient_r(const RadialGrid& g, const std::vector<double>& v) {
    std::vector<double> vs, vss;
    derivs_s(g, v, vs, vss);
    std::vector<double> out(g.n, 0.0);
    const int i0 = origin_nodes(g);
    for (int i = i0; i < g.n; ++i) out[i] = vs[i] / g.dr_ds[i];
    const auto a = even_poly_fit(g, v, fit_window(g));
    for (int i = 0; i < i0; ++i) {
        const double r = g.r[i];
        const double r2 = r * r;
        out[i] = 2.0 * a[1] * r + 4.0 * a[2] * r2 * r + 6.0 * a[3] * r2 * r2 * r;
    }
    return out;
}

std::vector<double> laplacian_r(const RadialGrid& g, const std::vector<double>& v) {
    std::vector<double> vs, vss;
    derivs_s(g, v, vs, vss);
    std::vector<double> out(g.n, 0.0);
    const int i0 = origin_nodes(g);
    for (int i = i0; i < g.n; ++i) {
        const double vr = vs[i] / g.dr_ds[i];
        const double vrr = (vss[i] - vr * g.d2r_ds2[i]) / (g.dr_ds[i] * g.dr_ds[i]);
        out[i] = vrr + vr / g.r[i];
    }
    const auto a = even_poly_fit(g, v, fit_window(g));
    for (int i = 0; i < i0; ++i) {
        const double r2 = g.r[i] * g.r[i];
        out[i] = 4.0 * a[1] + 16.0 * a[2] * r2 + 36.0 * a[3] * r2 * r2;
    }
    return out;
}

}  // namespace loghls
