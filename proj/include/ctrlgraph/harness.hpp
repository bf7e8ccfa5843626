#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctrlgraph/atom.hpp"
#include "ctrlgraph/control.hpp"
#include "ctrlgraph/eigstruct.hpp"
#include "ctrlgraph/matgen.hpp"
#include "ctrlgraph/smallball.hpp"

namespace ctrlgraph::harness {

enum class Experiment {
    godsil_sweep,
    loops_sweep,
    simple_spectrum,
    eig_structure,
    dot_profile,
    smallball_family,
    symmetrization,
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

struct ExperimentConfig {
    Experiment experiment = Experiment::godsil_sweep;
    std::vector<int> n_list;
    int trials = 1;
    double p = 0.5;
    double q = 0.0;
    eigstruct::StructureConstants constants;
    std::uint64_t master_seed = 0;
    std::string output_path;

    // optional knobs
    int threads = 0;  // 0 = hardware default
    double alpha = 0.5;
    matgen::AtomDistribution atom_xi = matgen::AtomDistribution::rademacher();
    matgen::AtomDistribution atom_zeta = matgen::AtomDistribution::rademacher();
    std::uint64_t n_samples = 100'000;
    std::vector<double> t_list = {0.0, 0.005, 0.01, 0.02, 0.05, 0.1};
    int family_index = 15;

    void validate() const;  // throws std::invalid_argument
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);

// Wilson 95% score interval
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct SweepRow {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double fraction = 0;
    double ci_lo = 0, ci_hi = 0;
};

struct PowerLawFit {
    double alpha_hat = 0;
    double c_hat = 0;
    int points_used = 0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::optional<PowerLawFit> fit;  // of 1 - fraction ~ C n^(-alpha), censored rows excluded
    std::string csv() const;         // header: n,trials,controllable,fraction,ci_lo,ci_hi
};

// least-squares fit of log(1-fraction) against log n over rows with fraction < 1
std::optional<PowerLawFit> fit_power_law(const std::vector<SweepRow>& rows);

// G(n, p, q) controllability sweep; the plain sweep is the q = 0 case and is
// bit-identical to it on matched seeds.
SweepTable run_loops_sweep(const ExperimentConfig& cfg);
SweepTable run_godsil_sweep(const ExperimentConfig& cfg);

// fraction of Wigner samples with square-free characteristic polynomial
SweepTable run_simple_spectrum(const ExperimentConfig& cfg);

struct EigStructureRow {
    int n = 0;
    int trial = 0;
    int eig_index = 0;
    bool incompressible = false;
    double sparse_dist = 0;
    double rlcd_lower = 0;  // meaningful only when incompressible
};

struct EigStructureSummary {
    int n = 0;
    double incompressible_fraction = 0;
    double median_rlcd_lower = 0;
    double fraction_above_n_alpha = 0;
};

struct EigStructureTable {
    std::vector<EigStructureRow> rows;
    std::vector<EigStructureSummary> summaries;
    std::string csv() const;  // header: n,trial,eig_index,incompressible,sparse_dist,rlcd_lower
};

EigStructureTable run_eig_structure(const ExperimentConfig& cfg);

struct DotProfileRow {
    int n = 0;
    int trial = 0;
    double min_dot = 0;
    bool skipped = false;  // non-simple spectrum
};

struct DotProfileTable {
    std::vector<DotProfileRow> rows;
    std::string csv() const;  // header: n,trial,min_dot,skipped
    std::uint64_t skipped_count(int n) const;
    double fraction_below(int n, double threshold) const;
};

DotProfileTable run_dot_profile(const ExperimentConfig& cfg);

struct SymmetrizationResult {
    struct Pair {
        double min_dot_w = 0;
        double min_dot_wpp = 0;
        double max_eig_diff = 0;
    };
    int n = 0;
    std::vector<Pair> pairs;
    double ks_statistic = 0;
    double ks_critical_1pct = 0;
    bool ks_pass = false;
    double max_eig_diff = 0;
    std::string csv() const;  // n,pair,min_dot_w,min_dot_wpp,max_eig_diff
};

// Samples (W, psi), forms W'' = (psi_i psi_j w_ij), and compares spectra and
// the min |v.1| distributions of the two ensembles.
SymmetrizationResult run_symmetrization(const ExperimentConfig& cfg);

// two-sample Kolmogorov-Smirnov statistic
double ks_statistic(std::vector<double> a, std::vector<double> b);

struct FamilyVectorReport {
    int index = 0;
    double lcd_lower = 0;
    bool lcd_resolved = false;
    double levy_001 = 0;  // empirical Levy concentration at t = 0.01
};

struct SmallballFamilyResult {
    std::vector<FamilyVectorReport> family;
    double spearman_inv_lcd_vs_levy = 0;
    // t-sweep for the designated family vector
    std::vector<std::array<double, 3>> triples;  // (t, empirical, bound)
    std::string csv() const;                     // header: t,empirical,bound
};

// The designed 20-vector family at n = 16: flat vectors supported on the
// first k coordinates (k = 1..16) plus four seeded random unit vectors.
std::vector<std::vector<double>> designed_family(std::uint64_t master_seed);

SmallballFamilyResult run_smallball_family(const ExperimentConfig& cfg);

struct EnumerationResult {
    int n = 0;
    std::uint64_t total = 0;
    std::uint64_t controllable = 0;
};

// Exact count of controllable (A, ones) over all labeled simple graphs,
// rational rank only. n <= 5.
EnumerationResult enumerate_small(int n);
// same count through the certified fast path (independent route cross-check)
EnumerationResult enumerate_small_fast(int n);

// deterministic parallel map: results are indexed by trial, so output is
// independent of the thread count
void parallel_for(std::uint64_t count, int threads, const std::function<void(std::uint64_t)>& fn);

int resolve_threads(int requested);

}  // namespace ctrlgraph::harness
