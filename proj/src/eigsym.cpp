#include "ctrlgraph/eigsym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ctrlgraph::control {

namespace {
inline double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

// Householder reduction of a (column-major, symmetric) to tridiagonal form;
// the transformation accumulates in z. Classic tred2.
void tridiagonalize(std::vector<double>& z, int n, std::vector<double>& d, std::vector<double>& e) {
    auto at = [&](int i, int j) -> double& { return z[i + static_cast<std::size_t>(n) * j]; };

    for (int i = n - 1; i > 0; --i) {
        const int l = i - 1;
        double h = 0, scale = 0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0;
                for (int j = 0; j <= l; ++j) {
                    at(j, i) = at(i, j) / h;
                    g = 0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    d[0] = 0;
    e[0] = 0;
    for (int i = 0; i < n; ++i) {
        const int l = i - 1;
        if (d[i] != 0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0;
                for (int k = 0; k <= l; ++k) g += at(i, k) * at(k, j);
                for (int k = 0; k <= l; ++k) at(k, j) -= g * at(k, i);
            }
        }
        d[i] = at(i, i);
        at(i, i) = 1;
        for (int j = 0; j <= l; ++j) at(j, i) = at(i, j) = 0;
    }
}

// QL iteration with implicit shifts on the tridiagonal (d, e), accumulating
// eigenvectors in z. Classic tql2.
void ql_implicit(std::vector<double>& z, int n, std::vector<double>& d, std::vector<double>& e) {
    auto at = [&](int i, int j) -> double& { return z[i + static_cast<std::size_t>(n) * j]; };

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (++iter == 64) throw std::runtime_error("eig_sym: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2 * e[l]);
                double r = hypot2(g, 1);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1, c = 1, p = 0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0) {
                        d[i + 1] -= p;
                        e[m] = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = at(k, i + 1);
                        at(k, i + 1) = s * at(k, i) + c * f;
                        at(k, i) = c * at(k, i) - s * f;
                    }
                }
                if (r == 0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
}
}  // namespace

EigenDecomposition eig_sym(const std::vector<double>& a_dense, int n) {
    if (n <= 0 || static_cast<std::size_t>(n) * n != a_dense.size())
        throw std::invalid_argument("eig_sym: bad dimensions");
    if (n > 512) throw std::invalid_argument("eig_sym: dimension cap is 512");

    EigenDecomposition out;
    out.n = n;
    out.vectors = a_dense;
    out.values.assign(n, 0);
    std::vector<double> e(n, 0);
    if (n == 1) {
        out.values[0] = a_dense[0];
        out.vectors[0] = 1;
    } else {
        tridiagonalize(out.vectors, n, out.values, e);
        ql_implicit(out.vectors, n, out.values, e);
    }

    // sort ascending, carrying eigenvector columns along
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return out.values[x] < out.values[y]; });
    std::vector<double> sv(n), svec(out.vectors.size());
    for (int k = 0; k < n; ++k) {
        sv[k] = out.values[order[k]];
        for (int i = 0; i < n; ++i)
            svec[i + static_cast<std::size_t>(n) * k] =
                out.vectors[i + static_cast<std::size_t>(n) * order[k]];
    }
    out.values = std::move(sv);
    out.vectors = std::move(svec);

    // residual and orthogonality checks
    double norm_a = 0;
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) row += std::abs(a_dense[i + static_cast<std::size_t>(n) * j]);
        norm_a = std::max(norm_a, row);
    }
    for (int k = 0; k < n; ++k) {
        double res = 0;
        for (int i = 0; i < n; ++i) {
            double acc = 0;
            for (int j = 0; j < n; ++j)
                acc += a_dense[i + static_cast<std::size_t>(n) * j] * out.vec(j, k);
            acc -= out.values[k] * out.vec(i, k);
            res += acc * acc;
        }
        out.max_residual = std::max(out.max_residual, std::sqrt(res));
    }
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            double dot = 0;
            for (int i = 0; i < n; ++i) dot += out.vec(i, k) * out.vec(i, l);
            out.max_cross_dot = std::max(out.max_cross_dot, std::abs(dot));
        }
    const double tol = 1e-8 * std::max(1.0, norm_a);
    if (out.max_residual > tol || out.max_cross_dot > 1e-8)
        throw std::runtime_error("eig_sym: residual check failed");
    return out;
}

EigenDecomposition eig_sym(const matgen::IntSymMatrix& a) {
    const int n = a.dim();
    std::vector<double> dense(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            dense[i + static_cast<std::size_t>(n) * j] = static_cast<double>(a(i, j));
    return eig_sym(dense, n);
}

}  // namespace ctrlgraph::control
