#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ctrlgraph/atom.hpp"
#include "ctrlgraph/rng.hpp"

namespace ctrlgraph::smallball {

// Empirical Levy concentration sup_u P(||Z - u|| <= t).
struct ConcentrationEstimate {
    double t = 0;
    double value = 0;
    double ci_halfwidth = 0;  // 99% binomial CI at the maximizing center
    std::uint64_t n_samples = 0;
    std::vector<double> sup_location;
};

// Scalar samplers are pure functions of the draw index, so estimates are
// deterministic and order-independent.
using ScalarSampler = std::function<double(std::uint64_t)>;
using VectorSampler = std::function<std::vector<double>(std::uint64_t)>;

// Scalar case: sort the samples and slide a window of width 2t; this is the
// exact sup over centers for the empirical measure.
ConcentrationEstimate levy_estimate(const ScalarSampler& z, double t, std::uint64_t n_samples);

// Vector case: candidate centers are the sample points themselves; the sup is
// under-reported by at most one empirical CDF step.
ConcentrationEstimate levy_estimate_vector(const VectorSampler& z, double t,
                                           std::uint64_t n_samples);

ScalarSampler atom_sampler(const matgen::AtomDistribution& atom, rng::Stream stream);
// S = sum_k x_k xi_k with iid atoms
ScalarSampler weighted_sum_sampler(std::vector<double> x, const matgen::AtomDistribution& atom,
                                   rng::Stream stream);

enum class BoundKind {
    lcd_scalar,        // C L (t + 1/D)
    lcd_coefficient,   // same bound for sums with reciprocal-integer coefficients
    regularized,       // C L (t/sqrt(gamma) + 1/Dhat)
    matrix_regularized,// [C L t/sqrt(gamma) + C L/Dhat]^(n - ceil(gamma n))
    simple,            // 1 - c'
    esseen,            // C * integral of |phi|
    levy_atom,         // sqrt(1 - p0/2)
};

struct BoundEvaluation {
    BoundKind kind;
    double value = 0;
    std::string constants_used;
};

// Calibrated defaults, frozen from sweeps over the designed vector family
// (LCD bound) and exhaustive product distributions (tensorization).
inline constexpr double kLcdBoundC = 0.6;
inline constexpr double kTensorizationC = 1.0;
inline constexpr double kEsseenC = 1.0;

// C L (t + 1/D) clamped to [0,1]; requires L >= p0^{-1/2} (scalar) or
// L >= p0^{-1/2} K (coefficient variant) and D >= L.
BoundEvaluation lcd_bound(double t, double L, double D, double C, double p0, double K = 1.0);

BoundEvaluation regularized_bound(double t, double L, double gamma, double c2, double D_hat,
                                  double C);
BoundEvaluation matrix_bound(double t, double L, double gamma, double c2, double D_hat, double C,
                             int n);

// Adaptive quadrature of C * int_{-1}^{1} |phi(theta)| d theta to 1e-6
// relative accuracy.
BoundEvaluation esseen_bound(const std::function<double(double)>& abs_char_fn,
                             int max_evals = 1 << 20, double C = kEsseenC);

// Empirical check of the certificate-implied bounds: L(xi, eps0/2) against
// sqrt(1 - p0/2), plus L(sum x_k xi_k, c) at the calibrated c.
struct SimpleBoundReport {
    double levy_atom = 0;          // empirical L(xi, eps0/2)
    double atom_bound = 0;         // sqrt(1 - p0/2)
    bool atom_ok = false;          // empirical <= bound + CI
    double c_used = 0;
    double levy_sum = 0;           // empirical L(sum, c_used)
    double cprime_implied = 0;     // 1 - levy_sum
    double ci = 0;
};

SimpleBoundReport simple_bound_check(const std::vector<double>& x,
                                     const matgen::AtomDistribution& atom,
                                     std::uint64_t n_samples = 100'000,
                                     std::uint64_t seed = 0x57a7);

// [C M (t + t0)]^n clamped to [0,1].
BoundEvaluation tensorization_check(double M, double t0, int n, double t,
                                    double C = kTensorizationC);

// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ctrlgraph::smallball
