#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ctrlgraph/control.hpp"
#include "ctrlgraph/eigstruct.hpp"
#include "ctrlgraph/harness.hpp"
#include "ctrlgraph/matgen.hpp"

using namespace ctrlgraph;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonOverrides {
    std::string config_path;
    std::optional<int> n;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "JSON experiment config")->required();
    cmd->add_option("--n", ov.n, "override: run this single dimension");
    cmd->add_option("--trials", ov.trials, "override: trials per dimension");
    cmd->add_option("--seed", ov.seed, "override: master seed");
    cmd->add_option("--out", ov.out, "override: output CSV path");
    cmd->add_option("--threads", ov.threads, "override: worker threads");
}

harness::ExperimentConfig load_config(const CommonOverrides& ov) {
    harness::ExperimentConfig cfg = harness::config_from_json_file(ov.config_path);
    if (ov.n) cfg.n_list = {*ov.n};
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.seed) cfg.master_seed = *ov.seed;
    if (ov.out) cfg.output_path = *ov.out;
    if (ov.threads) cfg.threads = *ov.threads;
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed on '" + path + "'");
}

int run_gen(const std::string& model, int n, double p, double q, std::uint64_t seed,
            std::uint64_t trial, const std::string& out, const std::string& format) {
    const matgen::SeedSpec ss{seed, n, trial};
    matgen::IntSymMatrix a;
    if (model == "gnp")
        a = matgen::sample_gnp(n, p, ss);
    else if (model == "gnpq")
        a = matgen::sample_gnpq(n, p, q, ss);
    else if (model == "wigner")
        a = matgen::sample_wigner(n, matgen::AtomDistribution::rademacher(),
                                  matgen::AtomDistribution::rademacher(), ss);
    else
        throw std::invalid_argument("gen: model must be gnp, gnpq, or wigner");

    std::ostringstream os;
    if (format == "text")
        matgen::write_matrix_text(os, a);
    else if (format == "bits")
        os << matgen::to_adjacency_bitstring(a) << '\n';
    else
        throw std::invalid_argument("gen: format must be text or bits");
    emit(out, os.str());
    return 0;
}

int run_check(const std::string& matrix_path, const std::string& b_spec,
              const std::string& policy_name) {
    std::ifstream in(matrix_path);
    if (!in) throw std::invalid_argument("check: cannot open matrix file '" + matrix_path + "'");
    matgen::IntSymMatrix a;
    std::string first;
    in >> first;
    in.seekg(0);
    if (first.find(':') != std::string::npos) {
        std::string line;
        std::getline(in, line);
        a = matgen::from_adjacency_bitstring(line);
    } else {
        a = matgen::read_matrix_text(in);
    }

    control::RationalVector b;
    if (b_spec == "ones") {
        b = control::ones_vector(a.dim());
    } else {
        std::ifstream bin(b_spec);
        if (!bin) throw std::invalid_argument("check: cannot open vector file '" + b_spec + "'");
        std::string tok;
        while (bin >> tok) {
            mpq_class v;
            if (v.set_str(tok, 10) != 0)
                throw std::invalid_argument("check: bad rational '" + tok + "'");
            v.canonicalize();
            b.push_back(v);
        }
        if (static_cast<int>(b.size()) != a.dim())
            throw std::invalid_argument("check: vector length does not match matrix dimension");
    }

    const auto policy = policy_name == "exact" ? exactlin::RankPolicy::exact
                                               : exactlin::RankPolicy::fast;
    const auto v = control::is_controllable(a, b, policy);
    std::cout << "controllable: " << (v.controllable ? "yes" : "no") << "\n"
              << "rank: " << v.rank << " of " << a.dim() << "\n"
              << "certificate: "
              << (v.certificate == exactlin::RankCertificate::full_rank_proved
                      ? "full-rank-proved"
                  : v.certificate == exactlin::RankCertificate::deficiency_proved_modular
                      ? "deficiency-proved-modular"
                  : v.certificate == exactlin::RankCertificate::deficiency_proved_rational
                      ? "deficiency-proved-rational"
                      : "exact-rational")
              << "\n";
    return 0;
}

int run_experiment(const harness::ExperimentConfig& cfg) {
    using harness::Experiment;
    switch (cfg.experiment) {
        case Experiment::godsil_sweep: {
            const auto t = harness::run_godsil_sweep(cfg);
            emit(cfg.output_path, t.csv());
            if (t.fit)
                std::cerr << "power-law fit: alpha_hat=" << t.fit->alpha_hat
                          << " C_hat=" << t.fit->c_hat << " (" << t.fit->points_used
                          << " rows)\n";
            break;
        }
        case Experiment::loops_sweep: {
            const auto t = harness::run_loops_sweep(cfg);
            emit(cfg.output_path, t.csv());
            break;
        }
        case Experiment::simple_spectrum: {
            const auto t = harness::run_simple_spectrum(cfg);
            emit(cfg.output_path, t.csv());
            break;
        }
        case Experiment::eig_structure: {
            const auto t = harness::run_eig_structure(cfg);
            emit(cfg.output_path, t.csv());
            for (const auto& s : t.summaries)
                std::cerr << "n=" << s.n << " incompressible=" << s.incompressible_fraction
                          << " median_rlcd=" << s.median_rlcd_lower
                          << " frac_above_n_alpha=" << s.fraction_above_n_alpha << "\n";
            break;
        }
        case Experiment::dot_profile: {
            const auto t = harness::run_dot_profile(cfg);
            emit(cfg.output_path, t.csv());
            for (int n : cfg.n_list)
                std::cerr << "n=" << n << " skipped=" << t.skipped_count(n)
                          << " frac_below_1e-6*sqrt(n)="
                          << t.fraction_below(n, 1e-6 * std::sqrt(double(n))) << "\n";
            break;
        }
        case Experiment::smallball_family: {
            const auto t = harness::run_smallball_family(cfg);
            emit(cfg.output_path, t.csv());
            std::cerr << "{\"spearman_inv_lcd_vs_levy\":" << t.spearman_inv_lcd_vs_levy
                      << ",\"family_size\":" << t.family.size() << "}\n";
            break;
        }
        case Experiment::symmetrization: {
            const auto t = harness::run_symmetrization(cfg);
            emit(cfg.output_path, t.csv());
            std::cerr << "ks=" << t.ks_statistic << " critical(1%)=" << t.ks_critical_1pct
                      << " pass=" << (t.ks_pass ? "yes" : "no")
                      << " max_eig_diff=" << t.max_eig_diff << "\n";
            break;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact controllability experiments on random graphs and Wigner matrices"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "sample a matrix and print it");
    std::string gen_model = "gnp", gen_out, gen_format = "text";
    int gen_n = 10;
    double gen_p = 0.5, gen_q = 0.0;
    std::uint64_t gen_seed = 0, gen_trial = 0;
    gen->add_option("--model", gen_model, "gnp | gnpq | wigner");
    gen->add_option("--n", gen_n, "dimension")->required();
    gen->add_option("--p", gen_p, "edge probability");
    gen->add_option("--q", gen_q, "loop probability");
    gen->add_option("--seed", gen_seed, "master seed");
    gen->add_option("--trial", gen_trial, "trial index (substream)");
    gen->add_option("--out", gen_out, "output path (default stdout)");
    gen->add_option("--format", gen_format, "text | bits");

    // check
    auto* check = app.add_subcommand("check", "exact Kalman controllability test");
    std::string check_matrix, check_b = "ones", check_policy = "fast";
    check->add_option("--matrix", check_matrix, "matrix file (text or bitstring)")->required();
    check->add_option("--b", check_b, "input vector file, or 'ones'");
    check->add_option("--policy", check_policy, "fast | exact");

    // config-driven experiments
    CommonOverrides sweep_ov, eig_ov, small_ov;
    auto* sweep = app.add_subcommand("sweep", "controllability / simple-spectrum sweeps");
    add_common(sweep, sweep_ov);
    auto* eig = app.add_subcommand("eig", "eigenvector structure, dot profiles, symmetrization");
    std::string eig_vector;
    eig->add_option("--vector", eig_vector,
                    "classify a single unit vector from a text file (one value per line) "
                    "and print JSON structure records instead of running a config");
    add_common(eig, eig_ov);
    eig->get_option("--config")->required(false);
    auto* small = app.add_subcommand("smallball", "Levy concentration against LCD bounds");
    add_common(small, small_ov);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "exhaustive small-n controllable counts");
    int enum_n = 4;
    enumerate->add_option("--n", enum_n, "vertex count (1..5)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    try {
        if (gen->parsed())
            return run_gen(gen_model, gen_n, gen_p, gen_q, gen_seed, gen_trial, gen_out, gen_format);
        if (check->parsed()) return run_check(check_matrix, check_b, check_policy);
        if (sweep->parsed()) return run_experiment(load_config(sweep_ov));
        if (eig->parsed() && !eig_vector.empty()) {
            std::ifstream in(eig_vector);
            if (!in) throw std::invalid_argument("cannot open vector file '" + eig_vector + "'");
            const auto x = eigstruct::read_vector_text(in, true);
            const auto consts = eigstruct::default_constants();
            const auto lcd = eigstruct::lcd(x, consts.L,
                                            eigstruct::default_theta_max(static_cast<int>(x.size())));
            std::cout << "{\"lcd\":" << eigstruct::to_json_record(lcd);
            try {
                const auto rep = eigstruct::classify(x, consts);
                std::cout << ",\"classification\":" << eigstruct::to_json_record(rep);
                if (rep.cls == eigstruct::VectorClass::incompressible) {
                    const auto rl = eigstruct::regularized_lcd(x, consts,
                                                               eigstruct::RlcdMode::heuristic);
                    std::cout << ",\"regularized_lcd\":" << eigstruct::to_json_record(rl);
                }
            } catch (const std::invalid_argument& e) {
                std::cout << ",\"classification_error\":\"" << e.what() << "\"";
            }
            std::cout << "}\n";
            return 0;
        }
        if (eig->parsed()) {
            if (eig_ov.config_path.empty())
                throw std::invalid_argument("eig: provide --config or --vector");
            return run_experiment(load_config(eig_ov));
        }
        if (small->parsed()) return run_experiment(load_config(small_ov));
        if (enumerate->parsed()) {
            const auto r = harness::enumerate_small(enum_n);
            std::cout << "n,total,controllable\n"
                      << r.n << ',' << r.total << ',' << r.controllable << '\n';
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
