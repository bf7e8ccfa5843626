#include "ctrlgraph/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace ctrlgraph::harness {

using nlohmann::json;

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::godsil_sweep: return "godsil-sweep";
        case Experiment::loops_sweep: return "loops-sweep";
        case Experiment::simple_spectrum: return "simple-spectrum";
        case Experiment::eig_structure: return "eig-structure";
        case Experiment::dot_profile: return "dot-profile";
        case Experiment::smallball_family: return "smallball-family";
        case Experiment::symmetrization: return "symmetrization";
    }
    return "?";
}

Experiment experiment_from_string(const std::string& s) {
    for (Experiment e : {Experiment::godsil_sweep, Experiment::loops_sweep,
                         Experiment::simple_spectrum, Experiment::eig_structure,
                         Experiment::dot_profile, Experiment::smallball_family,
                         Experiment::symmetrization})
        if (to_string(e) == s) return e;
    throw std::invalid_argument("unknown experiment '" + s + "'");
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials >= 1 required");
    if (n_list.empty()) throw std::invalid_argument("config: n_list must be nonempty");
    if (!std::is_sorted(n_list.begin(), n_list.end()))
        throw std::invalid_argument("config: n_list must be sorted ascending");
    for (int n : n_list)
        if (n < 1) throw std::invalid_argument("config: n >= 1 required");
    if (p < 0 || p > 1 || q < 0 || q > 1)
        throw std::invalid_argument("config: probabilities must lie in [0,1]");
    constants.validate();
    switch (experiment) {
        case Experiment::godsil_sweep:
            if (p != 0.5) throw std::invalid_argument("config: godsil-sweep requires p = 1/2");
            break;
        case Experiment::loops_sweep:
            if (p != 0.5) throw std::invalid_argument("config: loops-sweep requires p = 1/2");
            break;
        case Experiment::simple_spectrum:
        case Experiment::eig_structure:
            if (!atom_xi.has_integer_support() || !atom_zeta.has_integer_support())
                throw std::invalid_argument("config: Wigner atoms must have integer support");
            if (atom_xi.has_finite_support() && atom_xi.is_degenerate())
                throw std::invalid_argument("config: degenerate off-diagonal atom rejected");
            break;
        case Experiment::dot_profile:
            // degenerate atoms are allowed here: non-simple samples are
            // skipped and counted rather than rejected
            if (!atom_xi.has_integer_support() || !atom_zeta.has_integer_support())
                throw std::invalid_argument("config: Wigner atoms must have integer support");
            break;
        case Experiment::symmetrization:
            if (!atom_xi.has_integer_support() || !atom_zeta.has_integer_support())
                throw std::invalid_argument("config: Wigner atoms must have integer support");
            if (!atom_xi.is_symmetric())
                throw std::invalid_argument("config: symmetrization requires a symmetric atom");
            break;
        case Experiment::smallball_family:
            break;
    }
    if (experiment == Experiment::eig_structure) {
        const int nmin = static_cast<int>(std::ceil(2.0 / constants.c0));
        for (int n : n_list)
            if (n < nmin)
                throw std::invalid_argument("config: eig-structure needs n >= 2/c0");
    }
}

namespace {
mpq_class rational_from_json(const json& j) {
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) {
        // decimal floats land on the binary grid they were parsed to
        mpq_class q(j.get<double>());
        q.canonicalize();
        return q;
    }
    if (j.is_string()) {
        mpq_class q;
        if (q.set_str(j.get<std::string>(), 10) != 0)
            throw std::invalid_argument("config: bad rational literal '" + j.get<std::string>() + "'");
        q.canonicalize();
        return q;
    }
    throw std::invalid_argument("config: rational must be a number or 'p/q' string");
}

matgen::AtomDistribution atom_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rademacher") return matgen::AtomDistribution::rademacher();
    if (kind == "bernoulli01") return matgen::AtomDistribution::bernoulli01(rational_from_json(j.at("p")));
    if (kind == "two-point")
        return matgen::AtomDistribution::two_point(rational_from_json(j.at("a")),
                                                   rational_from_json(j.at("b")),
                                                   rational_from_json(j.at("p")));
    if (kind == "uniform-int")
        return matgen::AtomDistribution::uniform_int(j.at("lo").get<long>(), j.at("hi").get<long>());
    if (kind == "gaussian-discretized")
        return matgen::AtomDistribution::gaussian_grid(
            j.contains("step") ? rational_from_json(j.at("step")) : mpq_class(1, 1024),
            j.value("trunc", 2.8284271247461903));
    throw std::invalid_argument("config: unknown atom kind '" + kind + "'");
}
}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
        cfg.n_list = j.at("n_list").get<std::vector<int>>();
        cfg.trials = j.at("trials").get<int>();
        cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
        cfg.p = j.value("p", 0.5);
        cfg.q = j.value("q", 0.0);
        cfg.output_path = j.value("output_path", std::string{});
        if (j.contains("constants")) {
            const auto& c = j.at("constants");
            cfg.constants.c0 = c.value("c0", 0.1);
            cfg.constants.c1 = c.value("c1", 0.1);
            cfg.constants.gamma = c.value("gamma", 0.0);
            cfg.constants.L = c.value("L", 2.0);
        }
        cfg.threads = j.value("threads", 0);
        cfg.alpha = j.value("alpha", 0.5);
        if (j.contains("atom_xi")) cfg.atom_xi = atom_from_json(j.at("atom_xi"));
        if (j.contains("atom_zeta")) cfg.atom_zeta = atom_from_json(j.at("atom_zeta"));
        cfg.n_samples = j.value("n_samples", std::uint64_t{100'000});
        if (j.contains("t_list")) cfg.t_list = j.at("t_list").get<std::vector<double>>();
        cfg.family_index = j.value("family_index", 15);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double center = (phat + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::uint64_t count, int threads, const std::function<void(std::uint64_t)>& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        while (true) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

namespace {
std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}
}  // namespace

std::string SweepTable::csv() const {
    std::ostringstream os;
    os << "n,trials,controllable,fraction,ci_lo,ci_hi\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.trials << ',' << r.successes << ',' << fmt("%.6f", r.fraction) << ','
           << fmt("%.6f", r.ci_lo) << ',' << fmt("%.6f", r.ci_hi) << '\n';
    return os.str();
}

std::optional<PowerLawFit> fit_power_law(const std::vector<SweepRow>& rows) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows)
        if (r.fraction < 1.0) pts.emplace_back(std::log(r.n), std::log(1.0 - r.fraction));
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    PowerLawFit fit;
    fit.alpha_hat = -slope;
    fit.c_hat = std::exp(intercept);
    fit.points_used = static_cast<int>(pts.size());
    return fit;
}

namespace {
SweepTable run_controllability_sweep(const ExperimentConfig& cfg, double q) {
    cfg.validate();
    SweepTable table;
    for (int n : cfg.n_list) {
        const auto b = control::ones_vector(n);
        std::vector<char> ok(cfg.trials, 0);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t trial) {
            const matgen::SeedSpec seed{cfg.master_seed, n, trial};
            const auto a = matgen::sample_gnpq(n, cfg.p, q, seed);
            ok[trial] = control::is_controllable(a, b).controllable ? 1 : 0;
        });
        SweepRow row;
        row.n = n;
        row.trials = cfg.trials;
        for (char c : ok) row.successes += c;
        row.fraction = static_cast<double>(row.successes) / static_cast<double>(row.trials);
        std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.successes, row.trials);
        table.rows.push_back(row);
    }
    table.fit = fit_power_law(table.rows);
    return table;
}
}  // namespace

SweepTable run_loops_sweep(const ExperimentConfig& cfg) {
    return run_controllability_sweep(cfg, cfg.q);
}

SweepTable run_godsil_sweep(const ExperimentConfig& cfg) {
    return run_controllability_sweep(cfg, 0.0);
}

SweepTable run_simple_spectrum(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepTable table;
    for (int n : cfg.n_list) {
        std::vector<char> ok(cfg.trials, 0);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t trial) {
            const matgen::SeedSpec seed{cfg.master_seed, n, trial};
            const auto w = matgen::sample_wigner(n, cfg.atom_xi, cfg.atom_zeta, seed);
            ok[trial] = control::simple_spectrum(w) ? 1 : 0;
        });
        SweepRow row;
        row.n = n;
        row.trials = cfg.trials;
        for (char c : ok) row.successes += c;
        row.fraction = static_cast<double>(row.successes) / static_cast<double>(row.trials);
        std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.successes, row.trials);
        table.rows.push_back(row);
    }
    table.fit = fit_power_law(table.rows);
    return table;
}

std::string EigStructureTable::csv() const {
    std::ostringstream os;
    os << "n,trial,eig_index,incompressible,sparse_dist,rlcd_lower\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.trial << ',' << r.eig_index << ',' << (r.incompressible ? 1 : 0)
           << ',' << fmt("%.9g", r.sparse_dist) << ',';
        if (r.incompressible) os << fmt("%.9g", r.rlcd_lower);
        os << '\n';
    }
    return os.str();
}

EigStructureTable run_eig_structure(const ExperimentConfig& cfg) {
    cfg.validate();
    EigStructureTable table;
    for (int n : cfg.n_list) {
        std::vector<std::vector<EigStructureRow>> per_trial(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t trial) {
            const matgen::SeedSpec seed{cfg.master_seed, n, trial};
            const auto w = matgen::sample_wigner(n, cfg.atom_xi, cfg.atom_zeta, seed);
            const auto eig = control::eig_sym(w);
            auto& out = per_trial[trial];
            out.reserve(n);
            std::vector<double> x(n);
            for (int k = 0; k < n; ++k) {
                for (int i = 0; i < n; ++i) x[i] = eig.vec(i, k);
                EigStructureRow row;
                row.n = n;
                row.trial = static_cast<int>(trial);
                row.eig_index = k;
                const auto rep = eigstruct::classify(x, cfg.constants);
                row.sparse_dist = rep.sparse_distance;
                row.incompressible = rep.cls == eigstruct::VectorClass::incompressible;
                if (row.incompressible) {
                    const int m =
                        static_cast<int>(std::ceil(cfg.constants.gamma_or_default() * n));
                    const bool exact_ok = [&] {
                        // quick feasibility check for exhaustive enumeration
                        double c = 1;
                        for (int i = 1; i <= m; ++i)
                            c *= static_cast<double>(rep.spread_size - m + i) / i;
                        return c <= 100'000;
                    }();
                    const auto rl = eigstruct::regularized_lcd(
                        x, cfg.constants, exact_ok ? eigstruct::RlcdMode::exact
                                                   : eigstruct::RlcdMode::heuristic);
                    row.rlcd_lower = rl.value_lower;
                }
                out.push_back(row);
            }
        });
        std::vector<double> rlcds;
        std::uint64_t incomp = 0, total = 0, above = 0;
        const double n_alpha = std::pow(n, cfg.alpha);
        for (auto& v : per_trial)
            for (auto& r : v) {
                ++total;
                if (r.incompressible) {
                    ++incomp;
                    rlcds.push_back(r.rlcd_lower);
                    if (r.rlcd_lower >= n_alpha) ++above;
                }
                table.rows.push_back(r);
            }
        EigStructureSummary s;
        s.n = n;
        s.incompressible_fraction = total ? static_cast<double>(incomp) / total : 0;
        if (!rlcds.empty()) {
            std::sort(rlcds.begin(), rlcds.end());
            const std::size_t mid = rlcds.size() / 2;
            s.median_rlcd_lower = rlcds.size() % 2 ? rlcds[mid]
                                                   : 0.5 * (rlcds[mid - 1] + rlcds[mid]);
            s.fraction_above_n_alpha = static_cast<double>(above) / rlcds.size();
        }
        table.summaries.push_back(s);
    }
    return table;
}

std::string DotProfileTable::csv() const {
    std::ostringstream os;
    os << "n,trial,min_dot,skipped\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.trial << ',';
        if (!r.skipped) os << fmt("%.12e", r.min_dot);
        os << ',' << (r.skipped ? 1 : 0) << '\n';
    }
    return os.str();
}

std::uint64_t DotProfileTable::skipped_count(int n) const {
    std::uint64_t c = 0;
    for (const auto& r : rows)
        if (r.n == n && r.skipped) ++c;
    return c;
}

double DotProfileTable::fraction_below(int n, double threshold) const {
    std::uint64_t kept = 0, below = 0;
    for (const auto& r : rows)
        if (r.n == n && !r.skipped) {
            ++kept;
            if (r.min_dot < threshold) ++below;
        }
    return kept ? static_cast<double>(below) / kept : 0.0;
}

DotProfileTable run_dot_profile(const ExperimentConfig& cfg) {
    cfg.validate();
    DotProfileTable table;
    for (int n : cfg.n_list) {
        const auto b = control::ones_vector(n);
        std::vector<DotProfileRow> rows(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t trial) {
            const matgen::SeedSpec seed{cfg.master_seed, n, trial};
            const auto w = matgen::sample_wigner(n, cfg.atom_xi, cfg.atom_zeta, seed);
            DotProfileRow row;
            row.n = n;
            row.trial = static_cast<int>(trial);
            if (!control::simple_spectrum(w)) {
                row.skipped = true;
            } else {
                row.min_dot = control::eigvec_dot_profile(w, b).front();
            }
            rows[trial] = row;
        });
        for (auto& r : rows) table.rows.push_back(r);
    }
    return table;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

std::string SymmetrizationResult::csv() const {
    std::ostringstream os;
    os << "n,pair,min_dot_w,min_dot_wpp,max_eig_diff\n";
    for (std::size_t i = 0; i < pairs.size(); ++i)
        os << n << ',' << i << ',' << fmt("%.12e", pairs[i].min_dot_w) << ','
           << fmt("%.12e", pairs[i].min_dot_wpp) << ',' << fmt("%.3e", pairs[i].max_eig_diff)
           << '\n';
    return os.str();
}

SymmetrizationResult run_symmetrization(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.n_list.size() != 1)
        throw std::invalid_argument("symmetrization runs one n at a time");
    const int n = cfg.n_list.front();
    SymmetrizationResult res;
    res.n = n;
    res.pairs.resize(cfg.trials);
    const auto b = control::ones_vector(n);
    parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t trial) {
        const matgen::SeedSpec seed{cfg.master_seed, n, trial};
        const auto w = matgen::sample_wigner(n, cfg.atom_xi, cfg.atom_zeta, seed);
        const rng::Stream psi_stream = seed.aux("psi");
        std::vector<int> psi(n);
        for (int i = 0; i < n; ++i) psi[i] = (psi_stream.at(i) >> 63) ? 1 : -1;
        matgen::IntSymMatrix wpp(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) wpp.set(i, j, psi[i] * psi[j] * w(i, j));

        const auto ew = control::eig_sym(w);
        const auto ep = control::eig_sym(wpp);
        double max_diff = 0;
        for (int k = 0; k < n; ++k) max_diff = std::max(max_diff, std::abs(ew.values[k] - ep.values[k]));

        auto min_dot = [&](const control::EigenDecomposition& e) {
            double best = std::numeric_limits<double>::infinity();
            for (int k = 0; k < n; ++k) {
                double dot = 0;
                for (int i = 0; i < n; ++i) dot += e.vec(i, k);
                best = std::min(best, std::abs(dot));
            }
            return best;
        };
        res.pairs[trial] = {min_dot(ew), min_dot(ep), max_diff};
    });
    std::vector<double> a, bb;
    for (const auto& p : res.pairs) {
        a.push_back(p.min_dot_w);
        bb.push_back(p.min_dot_wpp);
        res.max_eig_diff = std::max(res.max_eig_diff, p.max_eig_diff);
    }
    res.ks_statistic = ks_statistic(a, bb);
    // 1% critical value for the two-sample statistic with equal sizes
    res.ks_critical_1pct = 1.6276 * std::sqrt(2.0 / cfg.trials);
    res.ks_pass = res.ks_statistic < res.ks_critical_1pct;
    return res;
}

std::vector<std::vector<double>> designed_family(std::uint64_t master_seed) {
    const int n = 16;
    std::vector<std::vector<double>> family;
    for (int k = 1; k <= n; ++k) {
        std::vector<double> v(n, 0.0);
        for (int i = 0; i < k; ++i) v[i] = 1.0 / std::sqrt(static_cast<double>(k));
        family.push_back(std::move(v));
    }
    const rng::Stream s = rng::derive_stream(master_seed, "family-random");
    for (int r = 0; r < 4; ++r) {
        std::vector<double> v(n);
        double norm2 = 0;
        for (int i = 0; i < n; ++i) {
            v[i] = s.gaussian_at(static_cast<std::uint64_t>(r) * n + i);
            norm2 += v[i] * v[i];
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& x : v) x *= inv;
        family.push_back(std::move(v));
    }
    return family;
}

std::string SmallballFamilyResult::csv() const {
    std::ostringstream os;
    os << "t,empirical,bound\n";
    for (const auto& t : triples)
        os << fmt("%.6g", t[0]) << ',' << fmt("%.6f", t[1]) << ',' << fmt("%.6f", t[2]) << '\n';
    return os.str();
}

SmallballFamilyResult run_smallball_family(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto family = designed_family(cfg.master_seed);
    const auto atom = matgen::AtomDistribution::rademacher();
    const double p0 = 0.5;
    const double L = cfg.constants.L;

    SmallballFamilyResult res;
    std::vector<double> inv_lcd, levy;
    res.family.resize(family.size());
    parallel_for(family.size(), cfg.threads, [&](std::uint64_t j) {
        const auto& x = family[j];
        FamilyVectorReport rep;
        rep.index = static_cast<int>(j);
        const auto d = eigstruct::lcd(x, L, eigstruct::default_theta_max(static_cast<int>(x.size())));
        rep.lcd_lower = d.lower;
        rep.lcd_resolved = d.resolved;
        const auto est = smallball::levy_estimate(
            smallball::weighted_sum_sampler(x, atom,
                                            rng::derive_stream(cfg.master_seed, "family-levy", j)),
            0.01, cfg.n_samples);
        rep.levy_001 = est.value;
        res.family[j] = rep;
    });
    for (const auto& rep : res.family) {
        inv_lcd.push_back(1.0 / rep.lcd_lower);
        levy.push_back(rep.levy_001);
    }
    res.spearman_inv_lcd_vs_levy = smallball::spearman(inv_lcd, levy);

    const int idx = cfg.family_index;
    if (idx < 0 || idx >= static_cast<int>(family.size()))
        throw std::invalid_argument("config: family_index out of range");
    const auto& x = family[idx];
    const double d_lower = std::max(res.family[idx].lcd_lower, L);
    for (double t : cfg.t_list) {
        const auto est = smallball::levy_estimate(
            smallball::weighted_sum_sampler(
                x, atom, rng::derive_stream(cfg.master_seed, "family-sweep", (std::uint64_t)idx)),
            t, cfg.n_samples);
        const auto bound = smallball::lcd_bound(t, L, d_lower, smallball::kLcdBoundC, p0);
        res.triples.push_back({t, est.value, bound.value});
    }
    return res;
}

namespace {
EnumerationResult enumerate_impl(int n, bool fast_path) {
    if (n < 1 || n > 5) throw std::invalid_argument("enumerate_small: n must be 1..5");
    const int pairs = n * (n - 1) / 2;
    EnumerationResult res;
    res.n = n;
    res.total = 1ull << pairs;
    const auto b = control::ones_vector(n);
    for (std::uint64_t mask = 0; mask < res.total; ++mask) {
        matgen::IntSymMatrix a(n);
        int bit = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++bit)
                if (mask >> bit & 1) a.set(i, j, 1);
        const auto k = exactlin::build_krylov(a, b);
        const int rank = fast_path
                             ? exactlin::rank_certified(k, exactlin::RankPolicy::fast).rank
                             : exactlin::rank_rational(k);
        if (rank == n) ++res.controllable;
    }
    return res;
}
}  // namespace

EnumerationResult enumerate_small(int n) { return enumerate_impl(n, false); }
EnumerationResult enumerate_small_fast(int n) { return enumerate_impl(n, true); }

}  // namespace ctrlgraph::harness
