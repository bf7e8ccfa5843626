#include "ctrlgraph/atom.hpp"

#include <algorithm>
#include <cmath>

namespace ctrlgraph::matgen {

AtomDistribution AtomDistribution::rademacher() {
    AtomDistribution d;
    d.kind_ = AtomKind::rademacher;
    return d;
}

AtomDistribution AtomDistribution::bernoulli01(const mpq_class& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("bernoulli01: p outside [0,1]");
    AtomDistribution d;
    d.kind_ = AtomKind::bernoulli01;
    d.p_ = p;
    d.p_.canonicalize();
    return d;
}

AtomDistribution AtomDistribution::two_point(const mpq_class& a, const mpq_class& b, const mpq_class& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("two_point: p outside [0,1]");
    AtomDistribution d;
    d.kind_ = AtomKind::two_point;
    d.a_ = a; d.b_ = b; d.p_ = p;
    d.a_.canonicalize(); d.b_.canonicalize(); d.p_.canonicalize();
    return d;
}

AtomDistribution AtomDistribution::uniform_int(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    AtomDistribution d;
    d.kind_ = AtomKind::uniform_int;
    d.lo_ = lo; d.hi_ = hi;
    return d;
}

AtomDistribution AtomDistribution::gaussian_grid(const mpq_class& step, double trunc) {
    if (step <= 0) throw std::invalid_argument("gaussian_grid: step must be positive");
    if (trunc <= 0) throw std::invalid_argument("gaussian_grid: truncation must be positive");
    AtomDistribution d;
    d.kind_ = AtomKind::gaussian_grid;
    d.step_ = step;
    d.step_.canonicalize();
    d.trunc_ = trunc;
    return d;
}

std::string AtomDistribution::name() const {
    switch (kind_) {
        case AtomKind::rademacher: return "rademacher";
        case AtomKind::bernoulli01: return "bernoulli01";
        case AtomKind::two_point: return "two-point";
        case AtomKind::uniform_int: return "uniform-int";
        case AtomKind::gaussian_grid: return "gaussian-discretized";
    }
    return "?";
}

mpq_class AtomDistribution::sample(const rng::Stream& s, std::uint64_t index) const {
    const std::uint64_t base = index * static_cast<std::uint64_t>(draw_stride());
    switch (kind_) {
        case AtomKind::rademacher:
            return (s.at(base) >> 63) ? mpq_class(1) : mpq_class(-1);
        case AtomKind::bernoulli01:
            return s.bernoulli_at(base, p_.get_d()) ? mpq_class(1) : mpq_class(0);
        case AtomKind::two_point:
            return s.bernoulli_at(base, p_.get_d()) ? a_ : b_;
        case AtomKind::uniform_int:
            return mpq_class(static_cast<long>(s.uniform_int_at(base, lo_, hi_)));
        case AtomKind::gaussian_grid: {
            const double z = s.gaussian_at(index);  // consumes two draws internally
            const double step = step_.get_d();
            long long k = static_cast<long long>(std::llround(z / step));
            const long long kmax = static_cast<long long>(std::floor(trunc_ / step));
            k = std::clamp(k, -kmax, kmax);
            return mpq_class(static_cast<long>(k)) * step_;
        }
    }
    throw std::logic_error("unreachable");
}

double AtomDistribution::sample_double(const rng::Stream& s, std::uint64_t index) const {
    return sample(s, index).get_d();
}

bool AtomDistribution::has_integer_support() const {
    switch (kind_) {
        case AtomKind::rademacher:
        case AtomKind::bernoulli01:
        case AtomKind::uniform_int:
            return true;
        case AtomKind::two_point:
            return a_.get_den() == 1 && b_.get_den() == 1;
        case AtomKind::gaussian_grid:
            return step_.get_den() == 1;
    }
    return false;
}

long long AtomDistribution::sample_int(const rng::Stream& s, std::uint64_t index) const {
    if (!has_integer_support())
        throw std::invalid_argument("atom '" + name() +
                                    "' has non-integer support; scale it to integers first");
    mpq_class v = sample(s, index);
    mpz_class num = v.get_num();
    if (!num.fits_slong_p()) throw std::runtime_error("atom sample exceeds machine range");
    return num.get_si();
}

std::vector<std::pair<mpq_class, mpq_class>> AtomDistribution::support() const {
    switch (kind_) {
        case AtomKind::rademacher:
            return {{mpq_class(-1), mpq_class(1, 2)}, {mpq_class(1), mpq_class(1, 2)}};
        case AtomKind::bernoulli01:
            if (p_ == 0) return {{mpq_class(0), mpq_class(1)}};
            if (p_ == 1) return {{mpq_class(1), mpq_class(1)}};
            return {{mpq_class(0), mpq_class(1) - p_}, {mpq_class(1), p_}};
        case AtomKind::two_point:
            if (p_ == 0 || a_ == b_) return {{b_, mpq_class(1)}};
            if (p_ == 1) return {{a_, mpq_class(1)}};
            {
                std::vector<std::pair<mpq_class, mpq_class>> sup = {{a_, p_}, {b_, mpq_class(1) - p_}};
                std::sort(sup.begin(), sup.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                return sup;
            }
        case AtomKind::uniform_int: {
            std::vector<std::pair<mpq_class, mpq_class>> sup;
            const long cnt = hi_ - lo_ + 1;
            for (long v = lo_; v <= hi_; ++v) sup.emplace_back(mpq_class(v), mpq_class(1, cnt));
            return sup;
        }
        case AtomKind::gaussian_grid:
            throw std::invalid_argument("gaussian-discretized support probabilities are not rational");
    }
    throw std::logic_error("unreachable");
}

bool AtomDistribution::is_degenerate() const {
    if (kind_ == AtomKind::gaussian_grid) return false;
    return support().size() == 1;
}

bool AtomDistribution::is_symmetric() const {
    if (kind_ == AtomKind::gaussian_grid) return true;
    auto sup = support();
    for (const auto& [v, p] : sup) {
        mpq_class neg = -v;
        bool found = false;
        for (const auto& [w, q] : sup)
            if (w == neg && q == p) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

std::pair<AtomDistribution, mpz_class> AtomDistribution::scaled_to_integer() const {
    mpz_class mult = 1;
    switch (kind_) {
        case AtomKind::rademacher:
        case AtomKind::bernoulli01:
        case AtomKind::uniform_int:
            return {*this, mult};
        case AtomKind::two_point: {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), a_.get_den().get_mpz_t(), b_.get_den().get_mpz_t());
            if (l == 1) return {*this, mpz_class(1)};
            return {two_point(a_ * mpq_class(l), b_ * mpq_class(l), p_), l};
        }
        case AtomKind::gaussian_grid: {
            mpz_class l = step_.get_den();
            if (l == 1) return {*this, mpz_class(1)};
            AtomDistribution d = *this;
            d.step_ = step_ * mpq_class(l);
            d.trunc_ = trunc_ * l.get_d();
            return {d, l};
        }
    }
    throw std::logic_error("unreachable");
}

double AtomDistribution::max_abs_value() const {
    if (kind_ == AtomKind::gaussian_grid) return trunc_;
    double m = 0;
    for (const auto& [v, p] : support()) m = std::max(m, std::abs(v.get_d()));
    return m;
}

bool cert_validates(const AtomDistribution& atom, const mpq_class& eps0, const mpq_class& p0,
                    const mpq_class& K0) {
    if (!(eps0 > 0 && p0 > 0 && p0 < 1 && K0 > 0)) return false;
    const auto sup = atom.support();
    mpq_class close = 0;  // P(|xi - xi'| <= eps0)
    for (const auto& [v, pv] : sup)
        for (const auto& [w, pw] : sup) {
            mpq_class d = v - w;
            if (d < 0) d = -d;
            if (d <= eps0) close += pv * pw;
        }
    if (close > mpq_class(1) - p0) return false;
    mpq_class tail = 0;  // P(|xi| > K0)
    for (const auto& [v, pv] : sup) {
        mpq_class a = v < 0 ? mpq_class(-v) : v;
        if (a > K0) tail += pv;
    }
    return tail <= p0 / 4;
}

NondegeneracyCert certify_nondegeneracy(const AtomDistribution& atom,
                                        std::uint64_t empirical_samples, std::uint64_t seed) {
    if (atom.has_finite_support()) {
        if (atom.is_degenerate())
            throw std::invalid_argument("no valid certificate: atom '" + atom.name() +
                                        "' is degenerate");
        const auto sup = atom.support();
        // minimum gap between distinct support points (support() is sorted)
        mpq_class min_gap = -1;
        for (std::size_t i = 0; i + 1 < sup.size(); ++i) {
            mpq_class g = sup[i + 1].first - sup[i].first;
            if (min_gap < 0 || g < min_gap) min_gap = g;
        }
        mpq_class collide = 0;  // P(xi = xi')
        for (const auto& [v, p] : sup) collide += p * p;
        NondegeneracyCert cert;
        cert.eps0 = min_gap / 4;
        cert.p0 = mpq_class(1) - collide;
        mpq_class k0 = 0;
        for (const auto& [v, p] : sup) {
            mpq_class a = v < 0 ? mpq_class(-v) : v;
            if (a > k0) k0 = a;
        }
        cert.K0 = k0 == 0 ? mpq_class(1) : k0;
        cert.method = CertMethod::analytic;
        if (!cert_validates(atom, cert.eps0, cert.p0, cert.K0))
            throw std::logic_error("analytic certificate failed self-validation");
        return cert;
    }

    // Empirical mode: estimate P(|xi - xi'| <= eps) on a grid of eps values and
    // keep the first one whose 99%-CI-adjusted bound leaves room for the tail.
    const rng::Stream s1 = rng::derive_stream(seed, "cert-a");
    const rng::Stream s2 = rng::derive_stream(seed, "cert-b");
    const std::uint64_t n = empirical_samples;
    std::vector<double> diffs(n), absvals(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = atom.sample_double(s1, i);
        const double y = atom.sample_double(s2, i);
        diffs[i] = std::abs(x - y);
        absvals[i] = std::abs(x);
    }
    std::sort(diffs.begin(), diffs.end());
    std::sort(absvals.begin(), absvals.end());
    const double z99 = 2.5758293035489004;
    const double half = 0.5 * z99 / std::sqrt(static_cast<double>(n));
    for (double eps : {0.5, 0.25, 0.125, 0.0625}) {
        const auto it = std::upper_bound(diffs.begin(), diffs.end(), eps);
        const double close = static_cast<double>(it - diffs.begin()) / static_cast<double>(n);
        const double p0 = 1.0 - close - half;
        if (p0 <= 0.01) continue;
        // smallest K0 with empirical tail + CI below p0/4
        const double target = p0 / 4 - half;
        if (target <= 0) continue;
        const std::uint64_t keep = static_cast<std::uint64_t>(std::ceil((1.0 - target) * n));
        const double K0 = absvals[std::min<std::uint64_t>(keep, n - 1)];
        NondegeneracyCert cert;
        cert.eps0 = mpq_class(eps * 16384) / 16384;
        cert.p0 = mpq_class(static_cast<long>(std::floor(p0 * 16384))) / 16384;
        cert.K0 = mpq_class(static_cast<long>(std::ceil(K0 * 16384)) + 1) / 16384;
        cert.method = CertMethod::empirical;
        cert.n_samples = n;
        return cert;
    }
    throw std::invalid_argument("no valid certificate: atom looks degenerate empirically");
}

}  // namespace ctrlgraph::matgen
