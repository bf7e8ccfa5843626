#include "ctrlgraph/matgen.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ctrlgraph::matgen {

namespace {
// dense index of the strict-upper-triangle entry (i, j), i < j
inline std::uint64_t tri_index(int i, int j) {
    return static_cast<std::uint64_t>(j) * (j - 1) / 2 + i;
}
}  // namespace

IntSymMatrix sample_gnp(int n, double p, const SeedSpec& seed) {
    if (n < 1) throw std::invalid_argument("sample_gnp: n >= 1 required");
    if (p < 0 || p > 1) throw std::invalid_argument("sample_gnp: p outside [0,1]");
    IntSymMatrix a(n);
    const rng::Stream es = seed.edges();
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (es.bernoulli_at(tri_index(i, j), p)) a.set(i, j, 1);
    return a;
}

IntSymMatrix sample_gnpq(int n, double p, double q, const SeedSpec& seed) {
    if (q < 0 || q > 1) throw std::invalid_argument("sample_gnpq: q outside [0,1]");
    IntSymMatrix a = sample_gnp(n, p, seed);
    const rng::Stream ls = seed.loops();
    for (int i = 0; i < n; ++i)
        if (ls.bernoulli_at(i, q)) a.set(i, i, 1);
    return a;
}

IntSymMatrix sample_wigner(int n, const AtomDistribution& xi, const AtomDistribution& zeta,
                           const SeedSpec& seed) {
    if (n < 1) throw std::invalid_argument("sample_wigner: n >= 1 required");
    if (!xi.has_integer_support() || !zeta.has_integer_support())
        throw std::invalid_argument("sample_wigner: atoms must have integer support");
    IntSymMatrix w(n);
    const rng::Stream us = seed.wigner_upper();
    const rng::Stream ds = seed.wigner_diag();
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) w.set(i, j, xi.sample_int(us, tri_index(i, j)));
    for (int i = 0; i < n; ++i) w.set(i, i, zeta.sample_int(ds, i));
    return w;
}

IntSymMatrix adjacency_wigner_shift(const IntSymMatrix& a, ShiftDirection dir) {
    const int n = a.dim();
    IntSymMatrix out(n);
    if (dir == ShiftDirection::adjacency_to_wigner) {
        if (!a.is_zero_one())
            throw std::invalid_argument("shift: forward direction expects 0/1 entries");
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) out.set(i, j, 2 * a(i, j) - 1);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const long long v = a(i, j);
                if (v != 1 && v != -1)
                    throw std::invalid_argument("shift: backward direction expects +-1 entries");
                out.set(i, j, (v + 1) / 2);
            }
    }
    return out;
}

namespace {
// dominant eigenvalue of (sign*W + c I) by power iteration; returns the
// Rayleigh quotient minus c
struct PowerResult {
    double value;
    int iterations;
    bool converged;
};

PowerResult power_extreme(const IntSymMatrix& w, double sign, double c, int cap, double tol) {
    const int n = w.dim();
    std::vector<double> v(n), av(n);
    const rng::Stream s = rng::derive_stream(0x9a7e, "power-start");
    double nv = 0;
    for (int i = 0; i < n; ++i) {
        v[i] = s.uniform_at(i) - 0.5;
        nv += v[i] * v[i];
    }
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;

    double rq = 0, prev = 0;
    int it = 0;
    for (it = 1; it <= cap; ++it) {
        for (int i = 0; i < n; ++i) {
            double acc = c * v[i];
            for (int j = 0; j < n; ++j) acc += sign * static_cast<double>(w(i, j)) * v[j];
            av[i] = acc;
        }
        double norm = 0, dot = 0;
        for (int i = 0; i < n; ++i) {
            norm += av[i] * av[i];
            dot += av[i] * v[i];
        }
        norm = std::sqrt(norm);
        if (norm == 0) return {-c, it, true};  // zero matrix with zero shift
        rq = dot;  // Rayleigh quotient of the shifted matrix (v is unit)
        for (int i = 0; i < n; ++i) v[i] = av[i] / norm;
        if (it > 1 && std::abs(rq - prev) <= tol * std::max(1.0, std::abs(rq))) break;
        prev = rq;
    }
    return {rq - c, it, it <= cap};
}
}  // namespace

SpectralNormEvent spectral_norm_event(const IntSymMatrix& w, double M) {
    if (M < 1) throw std::invalid_argument("spectral_norm_event: M >= 1 required");
    const int n = w.dim();
    SpectralNormEvent ev;
    ev.M = M;

    // Gershgorin bound, also an early exit for the zero matrix
    double c = 0;
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) row += std::abs(static_cast<double>(w(i, j)));
        c = std::max(c, row);
    }
    if (c == 0) {
        ev.norm_estimate = 0;
        ev.holds = true;
        return ev;
    }

    const int cap = 10'000;
    const double tol = 1e-8;
    const PowerResult hi = power_extreme(w, +1.0, c, cap, tol);
    const PowerResult lo = power_extreme(w, -1.0, c, cap, tol);
    ev.norm_estimate = std::max(hi.value, lo.value);
    ev.iterations = hi.iterations + lo.iterations;
    ev.status = (hi.converged && lo.converged) ? NormStatus::resolved : NormStatus::unresolved;
    ev.holds = ev.norm_estimate <= M * std::sqrt(static_cast<double>(n));
    return ev;
}

}  // namespace ctrlgraph::matgen
