#include "ctrlgraph/smallball.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ctrlgraph::smallball {

namespace {
constexpr double kZ99 = 2.5758293035489004;

double binomial_ci(double p, std::uint64_t n) {
    return kZ99 * std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(n));
}
}  // namespace

ConcentrationEstimate levy_estimate(const ScalarSampler& z, double t, std::uint64_t n_samples) {
    if (t < 0) throw std::invalid_argument("levy_estimate: t >= 0 required");
    if (n_samples < 100) throw std::invalid_argument("levy_estimate: need at least 100 samples");
    std::vector<double> s(n_samples);
    for (std::uint64_t i = 0; i < n_samples; ++i) s[i] = z(i);
    std::sort(s.begin(), s.end());

    // exact empirical sup: best window [u-t, u+t] starts at a sample point
    std::size_t best = 0, arg = 0, j = 0;
    const double w = 2 * t;
    for (std::size_t i = 0; i < s.size(); ++i) {
        while (s[i] - s[j] > w) ++j;
        if (i - j + 1 > best) {
            best = i - j + 1;
            arg = j;
        }
    }
    ConcentrationEstimate est;
    est.t = t;
    est.value = static_cast<double>(best) / static_cast<double>(n_samples);
    est.ci_halfwidth = binomial_ci(est.value, n_samples);
    est.n_samples = n_samples;
    est.sup_location = {s[arg] + t};
    return est;
}

ConcentrationEstimate levy_estimate_vector(const VectorSampler& z, double t,
                                           std::uint64_t n_samples) {
    if (t < 0) throw std::invalid_argument("levy_estimate_vector: t >= 0 required");
    if (n_samples < 100) throw std::invalid_argument("levy_estimate_vector: need at least 100 samples");
    if (n_samples > 20'000)
        throw std::invalid_argument("levy_estimate_vector: quadratic scan capped at 2e4 samples");
    std::vector<std::vector<double>> s(n_samples);
    for (std::uint64_t i = 0; i < n_samples; ++i) s[i] = z(i);
    const double t2 = t * t;
    std::size_t best = 0, arg = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::size_t cnt = 0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            double d2 = 0;
            for (std::size_t k = 0; k < s[i].size(); ++k) {
                const double d = s[i][k] - s[j][k];
                d2 += d * d;
            }
            if (d2 <= t2 + 1e-15) ++cnt;
        }
        if (cnt > best) {
            best = cnt;
            arg = i;
        }
    }
    ConcentrationEstimate est;
    est.t = t;
    est.value = static_cast<double>(best) / static_cast<double>(n_samples);
    est.ci_halfwidth = binomial_ci(est.value, n_samples);
    est.n_samples = n_samples;
    est.sup_location = s[arg];
    return est;
}

ScalarSampler atom_sampler(const matgen::AtomDistribution& atom, rng::Stream stream) {
    return [atom, stream](std::uint64_t i) { return atom.sample_double(stream, i); };
}

ScalarSampler weighted_sum_sampler(std::vector<double> x, const matgen::AtomDistribution& atom,
                                   rng::Stream stream) {
    const std::uint64_t n = x.size();
    return [x = std::move(x), atom, stream, n](std::uint64_t i) {
        double s = 0;
        for (std::uint64_t k = 0; k < n; ++k) s += x[k] * atom.sample_double(stream, i * n + k);
        return s;
    };
}

BoundEvaluation lcd_bound(double t, double L, double D, double C, double p0, double K) {
    if (t < 0 || C <= 0) throw std::invalid_argument("lcd_bound: t >= 0, C > 0 required");
    if (!(p0 > 0 && p0 < 1)) throw std::invalid_argument("lcd_bound: p0 in (0,1) required");
    if (K < 1) throw std::invalid_argument("lcd_bound: K >= 1 required");
    if (L < std::sqrt(1.0 / p0) * K)
        throw std::invalid_argument("lcd_bound: L >= p0^(-1/2) K required");
    if (D < L) throw std::invalid_argument("lcd_bound: D >= L required");
    BoundEvaluation ev;
    ev.kind = K == 1.0 ? BoundKind::lcd_scalar : BoundKind::lcd_coefficient;
    ev.value = std::clamp(C * L * (t + 1.0 / D), 0.0, 1.0);
    ev.constants_used = "C=" + std::to_string(C) + " L=" + std::to_string(L) +
                        " p0=" + std::to_string(p0) + " K=" + std::to_string(K);
    return ev;
}

namespace {
double regularized_base(double t, double L, double gamma, double c2, double D_hat, double C) {
    if (t < 0 || C <= 0) throw std::invalid_argument("regularized bound: t >= 0, C > 0 required");
    if (!(gamma > 0 && gamma < c2))
        throw std::invalid_argument("regularized bound: gamma in (0, c2) required");
    if (D_hat < L) throw std::invalid_argument("regularized bound: D_hat >= L required");
    return C * L * (t / std::sqrt(gamma) + 1.0 / D_hat);
}
}  // namespace

BoundEvaluation regularized_bound(double t, double L, double gamma, double c2, double D_hat,
                                  double C) {
    BoundEvaluation ev;
    ev.kind = BoundKind::regularized;
    ev.value = std::clamp(regularized_base(t, L, gamma, c2, D_hat, C), 0.0, 1.0);
    ev.constants_used = "C=" + std::to_string(C) + " L=" + std::to_string(L) +
                        " gamma=" + std::to_string(gamma);
    return ev;
}

BoundEvaluation matrix_bound(double t, double L, double gamma, double c2, double D_hat, double C,
                             int n) {
    if (n < 1) throw std::invalid_argument("matrix_bound: n >= 1 required");
    const double base = regularized_base(t, L, gamma, c2, D_hat, C);
    const int expo = n - static_cast<int>(std::ceil(gamma * n));
    BoundEvaluation ev;
    ev.kind = BoundKind::matrix_regularized;
    ev.value = base >= 1.0 ? 1.0 : std::clamp(std::pow(base, expo), 0.0, 1.0);
    ev.constants_used = "C=" + std::to_string(C) + " L=" + std::to_string(L) +
                        " gamma=" + std::to_string(gamma) + " n=" + std::to_string(n);
    return ev;
}

namespace {
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double rel_eps, int depth,
                        int& evals_left) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    if (evals_left < 2) throw std::runtime_error("esseen_bound: quadrature evaluation budget exhausted");
    const double flm = f(lm), frm = f(rm);
    evals_left -= 2;
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw std::runtime_error("esseen_bound: quadrature did not converge");
    if (std::abs(delta) <= 15 * rel_eps * std::max(1e-12, std::abs(left + right)))
        return left + right + delta / 15;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, rel_eps, depth - 1, evals_left) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, rel_eps, depth - 1, evals_left);
}
}  // namespace

BoundEvaluation esseen_bound(const std::function<double(double)>& abs_char_fn, int max_evals,
                             double C) {
    int budget = max_evals;
    // split at 0 where |phi| often has a kink
    auto integrate = [&](double a, double b) {
        const double fa = abs_char_fn(a), fb = abs_char_fn(b), fm = abs_char_fn(0.5 * (a + b));
        budget -= 3;
        const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
        return adaptive_simpson(abs_char_fn, a, b, fa, fm, fb, whole, 1e-7, 48, budget);
    };
    // quarter panels bound the period structure of oscillatory |phi|
    double total = 0;
    for (double a = -1.0; a < 0.99; a += 0.25) total += integrate(a, a + 0.25);
    BoundEvaluation ev;
    ev.kind = BoundKind::esseen;
    ev.value = C * total;
    ev.constants_used = "C=" + std::to_string(C);
    return ev;
}

SimpleBoundReport simple_bound_check(const std::vector<double>& x,
                                     const matgen::AtomDistribution& atom,
                                     std::uint64_t n_samples, std::uint64_t seed) {
    const matgen::NondegeneracyCert cert = matgen::certify_nondegeneracy(atom);
    const double eps0 = cert.eps0.get_d();
    const double p0 = cert.p0.get_d();

    SimpleBoundReport rep;
    rep.atom_bound = std::sqrt(1 - p0 / 2);
    const auto atom_est =
        levy_estimate(atom_sampler(atom, rng::derive_stream(seed, "atom")), eps0 / 2, n_samples);
    rep.levy_atom = atom_est.value;
    rep.ci = atom_est.ci_halfwidth;
    rep.atom_ok = rep.levy_atom <= rep.atom_bound + rep.ci;

    // radius implied by the certificate through the calibrated LCD constant:
    // eta = 1/(4 C L (2 + eps0)) with L = p0^(-1/2), c = eps0 eta / 2
    const double L = 1.0 / std::sqrt(p0);
    const double eta = 1.0 / (4 * kLcdBoundC * L * (2 + eps0));
    rep.c_used = 0.5 * eps0 * eta;
    const auto sum_est = levy_estimate(
        weighted_sum_sampler(x, atom, rng::derive_stream(seed, "sum")), rep.c_used, n_samples);
    rep.levy_sum = sum_est.value;
    rep.cprime_implied = 1 - rep.levy_sum;
    return rep;
}

BoundEvaluation tensorization_check(double M, double t0, int n, double t, double C) {
    if (M < 0 || t0 < 0 || t < 0 || n < 1)
        throw std::invalid_argument("tensorization_check: nonnegative inputs, n >= 1 required");
    BoundEvaluation ev;
    ev.kind = BoundKind::simple;
    const double base = C * M * (t + t0);
    ev.value = base >= 1.0 ? 1.0 : std::clamp(std::pow(base, n), 0.0, 1.0);
    ev.constants_used = "C=" + std::to_string(C) + " M=" + std::to_string(M) +
                        " t0=" + std::to_string(t0);
    return ev;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("spearman: need two equal-length samples");
    auto ranks = [](const std::vector<double>& v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return v[x] < v[y]; });
        std::vector<double> r(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto ra = ranks(a), rb = ranks(b);
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    if (da == 0 || db == 0) return 0;
    return num / std::sqrt(da * db);
}

}  // namespace ctrlgraph::smallball
