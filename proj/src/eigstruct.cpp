#include "ctrlgraph/eigstruct.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "ctrlgraph/rng.hpp"

namespace ctrlgraph::eigstruct {

void StructureConstants::validate() const {
    if (!(c0 > 0 && c0 < 1) || !(c1 > 0 && c1 < 1))
        throw std::invalid_argument("structure constants: c0, c1 must lie in (0,1)");
    if (L < 1) throw std::invalid_argument("structure constants: L >= 1 required");
    const double g = gamma_or_default();
    if (!(g > 0 && g < c2()))
        throw std::invalid_argument("structure constants: gamma must lie in (0, c2)");
}

StructureConstants default_constants(double p0) {
    StructureConstants c;
    c.c0 = 0.1;
    c.c1 = 0.1;
    c.gamma = 0;  // c2/2
    c.L = std::max(1.0 / std::sqrt(p0), 2.0);
    c.validate();
    return c;
}

double dist_to_lattice(double theta, std::span<const double> x) {
    double s = 0;
    for (double xi : x) {
        const double v = theta * xi;
        const double d = v - std::nearbyint(v);
        s += d * d;
    }
    return std::sqrt(s);
}

double default_theta_max(int n) { return 10.0 * n * n; }

namespace {
inline double lcd_rhs(double theta, double L) {
    const double r = theta / L;
    return r > 1 ? L * std::sqrt(std::log(r)) : 0.0;
}
inline double lcd_gap(double theta, std::span<const double> x, double L) {
    return dist_to_lattice(theta, x) - lcd_rhs(theta, L);
}
}  // namespace

LcdResult lcd(std::span<const double> x, double L, double theta_max) {
    const int n = static_cast<int>(x.size());
    if (n == 0) throw std::invalid_argument("lcd: empty vector");
    if (L < 1) throw std::invalid_argument("lcd: L >= 1 required");
    if (theta_max <= L) throw std::invalid_argument("lcd: theta_max must exceed L");
    double norm2 = 0, amax = 0;
    for (double xi : x) {
        norm2 += xi * xi;
        amax = std::max(amax, std::abs(xi));
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
        throw std::invalid_argument("lcd: x must be a unit vector");

    // No theta below max(L, 1/(2||x||_inf)) can qualify, so start there. A
    // theta_max below the start still certifies lower = start.
    const double start = std::max(L, 1.0 / (2.0 * amax));
    const double step = std::min(1e-3, 1.0 / (4.0 * amax * std::sqrt(static_cast<double>(n))));

    LcdResult res;
    if (start > theta_max) {
        res.lower = start;
        res.upper = std::numeric_limits<double>::infinity();
        res.resolved = false;
        return res;
    }
    double prev = start;
    for (double th = start; th <= theta_max; th += step) {
        if (lcd_gap(th, x, L) < 0) {
            double lo = prev, hi = th;
            while (hi - lo > 1e-9) {
                const double mid = 0.5 * (lo + hi);
                if (lcd_gap(mid, x, L) < 0)
                    hi = mid;
                else
                    lo = mid;
            }
            res.lower = std::max(lo, start);
            res.upper = hi;
            res.witness_theta = hi;
            res.resolved = true;
            return res;
        }
        prev = th;
    }
    res.lower = theta_max;
    res.upper = std::numeric_limits<double>::infinity();
    res.resolved = false;
    return res;
}

std::vector<int> spread_policy(std::span<const double> x, const StructureConstants& consts,
                               const std::vector<int>& exclude) {
    consts.validate();
    const int n = static_cast<int>(x.size());
    const int want = static_cast<int>(std::ceil(consts.c2() * n));
    const int max_excl = static_cast<int>(std::ceil(consts.delta() * n));
    if (static_cast<int>(exclude.size()) > max_excl)
        throw std::invalid_argument("spread_policy: exclusion set larger than ceil(delta n)");

    std::vector<char> excluded(n, 0);
    for (int k : exclude) {
        if (k < 0 || k >= n) throw std::invalid_argument("spread_policy: exclusion index out of range");
        excluded[k] = 1;
    }
    const double lo = consts.c1 / std::sqrt(2.0 * n);
    const double hi = 1.0 / std::sqrt(consts.c0 * n);
    std::vector<int> chosen;
    for (int k = 0; k < n && static_cast<int>(chosen.size()) < want; ++k) {
        if (excluded[k]) continue;
        const double a = std::abs(x[k]);
        if (a >= lo && a <= hi) chosen.push_back(k);
    }
    if (static_cast<int>(chosen.size()) < want)
        throw std::invalid_argument(
            "spread_policy: fewer magnitude-window coordinates than ceil(c2 n); "
            "vector was misclassified");
    return chosen;
}

CompressibilityReport classify(std::span<const double> x, const StructureConstants& consts,
                               const std::vector<int>& exclude) {
    consts.validate();
    const int n = static_cast<int>(x.size());
    if (n < static_cast<int>(std::ceil(2.0 / consts.c0)))
        throw std::invalid_argument("classify: constant regime violated, need n >= 2/c0");
    double norm2 = 0;
    for (double xi : x) norm2 += xi * xi;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-8)
        throw std::invalid_argument("classify: x must be a unit vector");

    // distance to the sparse set: drop the floor(c0 n) largest magnitudes
    const int keep = static_cast<int>(std::floor(consts.c0 * n));
    std::vector<double> mags(n);
    for (int i = 0; i < n; ++i) mags[i] = std::abs(x[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double tail2 = 0;
    for (int i = keep; i < n; ++i) tail2 += mags[i] * mags[i];

    CompressibilityReport rep;
    rep.sparse_distance = std::sqrt(tail2);
    rep.cls = rep.sparse_distance <= consts.c1 ? VectorClass::compressible
                                               : VectorClass::incompressible;
    if (rep.cls == VectorClass::incompressible) {
        rep.spread_set = spread_policy(x, consts, exclude);
        rep.spread_size = static_cast<int>(rep.spread_set.size());
    }
    return rep;
}

namespace {
double restricted_lcd_lower(std::span<const double> x, const std::vector<int>& subset, double L,
                            double theta_max) {
    std::vector<double> r(subset.size());
    double norm2 = 0;
    for (std::size_t t = 0; t < subset.size(); ++t) {
        r[t] = x[subset[t]];
        norm2 += r[t] * r[t];
    }
    const double norm = std::sqrt(norm2);
    for (auto& v : r) v /= norm;
    return lcd(r, L, theta_max).lower;
}

unsigned long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned long long r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
        if (r > (1ull << 40)) return r;  // large enough to reject exact mode
    }
    return r;
}
}  // namespace

RegularizedLcdResult regularized_lcd(std::span<const double> x, const StructureConstants& consts,
                                     RlcdMode mode, double theta_max) {
    const int n = static_cast<int>(x.size());
    if (theta_max <= 0) theta_max = default_theta_max(n);
    const CompressibilityReport rep = classify(x, consts);
    if (rep.cls != VectorClass::incompressible)
        throw std::invalid_argument("regularized_lcd: vector is compressible");

    const int m = static_cast<int>(std::ceil(consts.gamma_or_default() * n));
    const std::vector<int>& spread = rep.spread_set;
    const int s = static_cast<int>(spread.size());
    if (m > s) throw std::logic_error("regularized_lcd: subset size exceeds spread size");

    RegularizedLcdResult out;
    auto consider = [&](const std::vector<int>& subset) {
        const double v = restricted_lcd_lower(x, subset, consts.L, theta_max);
        if (v > out.value_lower ||
            (v == out.value_lower &&
             (out.maximizing_subset.empty() || subset < out.maximizing_subset))) {
            out.value_lower = v;
            out.maximizing_subset = subset;
        }
    };

    if (mode == RlcdMode::exact) {
        if (binom(s, m) > 100'000)
            throw std::invalid_argument("regularized_lcd: exact mode bounded by 1e5 subsets");
        std::vector<int> pick(m);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<int> subset(m);
            for (int t = 0; t < m; ++t) subset[t] = spread[pick[t]];
            consider(subset);
            int i = m - 1;
            while (i >= 0 && pick[i] == s - m + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
        }
        out.exact = true;
    } else {
        // deterministic pseudo-random subsets, then greedy single swaps
        const rng::Stream st = rng::derive_stream(0x51ec7, "rlcd-subsets", (std::uint64_t)n,
                                                  (std::uint64_t)s, (std::uint64_t)m);
        std::uint64_t ctr = 0;
        std::vector<int> idx(s);
        for (int rep_i = 0; rep_i < 200; ++rep_i) {
            std::iota(idx.begin(), idx.end(), 0);
            for (int t = 0; t < m; ++t) {
                const int j = t + static_cast<int>(st.uniform_int_at(ctr++, 0, s - 1 - t));
                std::swap(idx[t], idx[j]);
            }
            std::vector<int> subset(m);
            for (int t = 0; t < m; ++t) subset[t] = spread[idx[t]];
            std::sort(subset.begin(), subset.end());
            consider(subset);
        }
        // greedy ascent from the best subset found
        bool improved = true;
        while (improved) {
            improved = false;
            std::vector<int> base = out.maximizing_subset;
            std::vector<char> used(n, 0);
            for (int k : base) used[k] = 1;
            for (int pos = 0; pos < m && !improved; ++pos) {
                for (int cand : spread) {
                    if (used[cand]) continue;
                    std::vector<int> trial = base;
                    trial[pos] = cand;
                    std::sort(trial.begin(), trial.end());
                    const double v = restricted_lcd_lower(x, trial, consts.L, theta_max);
                    if (v > out.value_lower) {
                        out.value_lower = v;
                        out.maximizing_subset = trial;
                        improved = true;
                        break;
                    }
                }
            }
        }
        out.exact = false;
    }

    const double floor = kRlcdFloorC * std::sqrt(consts.gamma_or_default() * n);
    if (out.value_lower < floor - 1e-9)
        throw std::runtime_error("regularized_lcd: result below the calibrated floor");
    return out;
}

std::pair<bool, std::vector<int>> is_delocalized(const std::vector<mpq_class>& b, long K,
                                                 double delta) {
    if (K < 1) throw std::invalid_argument("is_delocalized: K >= 1 required");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("is_delocalized: delta in (0,1)");
    const int n = static_cast<int>(b.size());
    std::vector<int> bad;
    for (int k = 0; k < n; ++k) {
        mpq_class v = b[k];
        v.canonicalize();
        const mpz_class num = v.get_num(), den = v.get_den();
        const bool ok = num != 0 && abs(num) <= K && den <= K;  // den > 0 after canonicalize
        if (!ok) bad.push_back(k);
    }
    const bool verdict = static_cast<long>(bad.size()) <= static_cast<long>(std::floor(delta * n));
    return {verdict, bad};
}

namespace {
std::vector<double> sphere_point(const rng::Stream& s, std::uint64_t idx, int d) {
    std::vector<double> p(d);
    double norm2 = 0;
    std::uint64_t base = idx * static_cast<std::uint64_t>(2 * d);
    for (int i = 0; i < d; ++i) {
        const double u1 = (static_cast<double>(s.at(base + 2 * i)) + 1.0) * 0x1.0p-64;
        const double u2 = static_cast<double>(s.at(base + 2 * i + 1) >> 11) * 0x1.0p-53;
        p[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
        norm2 += p[i] * p[i];
    }
    if (norm2 == 0) { p[0] = 1; norm2 = 1; }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : p) v *= inv;
    return p;
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}
}  // namespace

std::vector<std::vector<double>> sphere_net(int d, double eps, std::uint64_t probes) {
    if (d < 1 || d > 4) throw std::invalid_argument("sphere_net: d in 1..4");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("sphere_net: eps in (0,1)");

    std::vector<std::vector<double>> net;
    if (d == 1) {
        net = {{1.0}, {-1.0}};
        return net;
    }

    const rng::Stream gen = rng::derive_stream(0x5fe7e, "net-stream", (std::uint64_t)d);
    const rng::Stream probe = rng::derive_stream(0x5fe7e, "net-probes", (std::uint64_t)d);
    const double eps2 = eps * eps;
    std::uint64_t stream_len = static_cast<std::uint64_t>(64.0 * std::pow(3.0 / eps, d));
    std::uint64_t cursor = 0;

    for (int round = 0; round < 4; ++round) {
        for (std::uint64_t t = 0; t < stream_len; ++t) {
            const auto p = sphere_point(gen, cursor++, d);
            bool separated = true;
            for (const auto& q : net)
                if (dist2(p, q) < eps2) { separated = false; break; }
            if (separated) net.push_back(p);
        }
        // verify the covering property on random probes; failing probes are
        // themselves eps-separated from the net so they can join it
        bool all_covered = true;
        for (std::uint64_t t = 0; t < probes; ++t) {
            const auto p = sphere_point(probe, (round + 1) * probes + t, d);
            bool covered = false;
            for (const auto& q : net)
                if (dist2(p, q) <= eps2) { covered = true; break; }
            if (!covered) {
                net.push_back(p);
                all_covered = false;
            }
        }
        if (all_covered) {
            const double bound = std::pow(1.0 + 2.0 / eps, d);
            if (static_cast<double>(net.size()) > bound)
                throw std::runtime_error("sphere_net: separated set exceeded the volume bound");
            return net;
        }
        stream_len *= 2;
    }
    throw std::runtime_error("sphere_net: failed to verify covering after densification");
}


std::string to_json_record(const LcdResult& r) {
    nlohmann::json j;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["resolved"] = r.resolved;
    if (r.witness_theta) j["witness_theta"] = *r.witness_theta;
    return j.dump();
}

std::string to_json_record(const CompressibilityReport& r) {
    nlohmann::json j;
    j["class"] = r.cls == VectorClass::compressible ? "compressible" : "incompressible";
    j["sparse_distance"] = r.sparse_distance;
    j["spread_set"] = r.spread_set;
    j["spread_size"] = r.spread_size;
    return j.dump();
}

std::string to_json_record(const RegularizedLcdResult& r) {
    nlohmann::json j;
    j["value_lower"] = r.value_lower;
    j["maximizing_subset"] = r.maximizing_subset;
    j["exact"] = r.exact;
    return j.dump();
}

std::vector<double> read_vector_text(std::istream& is, bool normalize) {
    std::vector<double> v;
    double x;
    while (is >> x) v.push_back(x);
    if (v.empty()) throw std::invalid_argument("vector text: no values");
    if (normalize) {
        double norm2 = 0;
        for (double y : v) norm2 += y * y;
        if (norm2 == 0) throw std::invalid_argument("vector text: zero vector");
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& y : v) y *= inv;
    }
    return v;
}

}  // namespace ctrlgraph::eigstruct

