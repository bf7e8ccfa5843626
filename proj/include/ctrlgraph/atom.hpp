#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ctrlgraph/rng.hpp"

namespace ctrlgraph::matgen {

enum class AtomKind { rademacher, bernoulli01, two_point, uniform_int, gaussian_grid };

// Distribution of a scalar atom variable. All kinds except gaussian_grid have
// finite support with exactly representable (rational) probabilities;
// gaussian_grid has bounded support after truncation but only approximate
// point probabilities, so it is certified empirically.
class AtomDistribution {
public:
    static AtomDistribution rademacher();
    static AtomDistribution bernoulli01(const mpq_class& p);
    static AtomDistribution two_point(const mpq_class& a, const mpq_class& b, const mpq_class& p);
    static AtomDistribution uniform_int(long lo, long hi);
    // standard normal rounded to a rational grid and truncated at +-trunc
    static AtomDistribution gaussian_grid(const mpq_class& step, double trunc);

    AtomKind kind() const { return kind_; }
    std::string name() const;

    // number of raw 64-bit draws consumed per sample
    int draw_stride() const { return kind_ == AtomKind::gaussian_grid ? 2 : 1; }

    // pure function of (stream, sample index)
    mpq_class sample(const rng::Stream& s, std::uint64_t index) const;
    double sample_double(const rng::Stream& s, std::uint64_t index) const;

    bool has_integer_support() const;
    long long sample_int(const rng::Stream& s, std::uint64_t index) const;

    // finite support as (value, probability); throws for gaussian_grid
    std::vector<std::pair<mpq_class, mpq_class>> support() const;
    bool has_finite_support() const { return kind_ != AtomKind::gaussian_grid; }
    bool is_degenerate() const;
    bool is_symmetric() const;

    // multiply all support points by the LCM of their denominators, making the
    // support integral; returns the scaled distribution and the multiplier
    std::pair<AtomDistribution, mpz_class> scaled_to_integer() const;

    double max_abs_value() const;  // bound on |value| (truncation bound for gaussian)

private:
    AtomDistribution() = default;
    AtomKind kind_ = AtomKind::rademacher;
    mpq_class a_ = 0, b_ = 0, p_ = 0;  // two_point / bernoulli parameters
    long lo_ = 0, hi_ = 0;             // uniform_int parameters
    mpq_class step_ = 0;               // gaussian grid step
    double trunc_ = 0;                 // gaussian truncation
};

enum class CertMethod { analytic, empirical };

// Witnesses the non-degeneracy bounds
//   P(|xi - xi'| <= eps0) <= 1 - p0   and   P(|xi| > K0) <= p0 / 4.
struct NondegeneracyCert {
    mpq_class eps0;
    mpq_class p0;
    mpq_class K0;
    CertMethod method = CertMethod::analytic;
    std::uint64_t n_samples = 0;  // empirical mode only
};

// Exact check of the two certificate bounds on a finite-support atom.
bool cert_validates(const AtomDistribution& atom, const mpq_class& eps0, const mpq_class& p0,
                    const mpq_class& K0);

// Produce a certificate. Finite support: exact enumeration with
// eps0 = (minimum support gap)/4, p0 = 1 - P(xi = xi'), K0 = max |support|.
// Otherwise: empirical estimate from n_samples draws with a 99% CI folded in.
// Throws std::invalid_argument for degenerate (single-point) atoms.
NondegeneracyCert certify_nondegeneracy(const AtomDistribution& atom,
                                        std::uint64_t empirical_samples = 1'000'000,
                                        std::uint64_t seed = 0x5eed);

}  // namespace ctrlgraph::matgen
