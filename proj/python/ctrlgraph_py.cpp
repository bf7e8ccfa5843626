#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctrlgraph/control.hpp"
#include "ctrlgraph/eigstruct.hpp"
#include "ctrlgraph/harness.hpp"
#include "ctrlgraph/matgen.hpp"

namespace py = pybind11;
using namespace ctrlgraph;

namespace {

std::vector<std::vector<long long>> to_rows(const matgen::IntSymMatrix& a) {
    std::vector<std::vector<long long>> rows(a.dim(), std::vector<long long>(a.dim()));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) rows[i][j] = a(i, j);
    return rows;
}

matgen::IntSymMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    const int n = static_cast<int>(rows.size());
    matgen::IntSymMatrix a(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("matrix must be square");
        for (int j = i; j < n; ++j) {
            if (rows[i][j] != rows[j][i]) throw std::invalid_argument("matrix must be symmetric");
            a.set(i, j, rows[i][j]);
        }
    }
    return a;
}

control::RationalVector vector_or_ones(const std::vector<long long>* b, int n) {
    if (!b) return control::ones_vector(n);
    if (static_cast<int>(b->size()) != n)
        throw std::invalid_argument("vector length must match the matrix dimension");
    control::RationalVector out;
    for (long long v : *b) out.emplace_back(static_cast<long>(v));
    return out;
}

}  // namespace

PYBIND11_MODULE(_ctrlgraph, m) {
    m.doc() = "exact controllability tests and eigenvector-structure diagnostics";

    m.def(
        "sample_gnp",
        [](int n, double p, std::uint64_t seed, std::uint64_t trial) {
            return to_rows(matgen::sample_gnp(n, p, matgen::SeedSpec{seed, n, trial}));
        },
        py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("trial") = 0);

    m.def(
        "sample_gnpq",
        [](int n, double p, double q, std::uint64_t seed, std::uint64_t trial) {
            return to_rows(matgen::sample_gnpq(n, p, q, matgen::SeedSpec{seed, n, trial}));
        },
        py::arg("n"), py::arg("p"), py::arg("q"), py::arg("seed") = 0, py::arg("trial") = 0);

    m.def(
        "sample_wigner_rademacher",
        [](int n, std::uint64_t seed, std::uint64_t trial) {
            return to_rows(matgen::sample_wigner(n, matgen::AtomDistribution::rademacher(),
                                                 matgen::AtomDistribution::rademacher(),
                                                 matgen::SeedSpec{seed, n, trial}));
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("trial") = 0);

    m.def(
        "is_controllable",
        [](const std::vector<std::vector<long long>>& rows,
           const std::optional<std::vector<long long>>& b, const std::string& policy) {
            const auto a = from_rows(rows);
            const auto bv = vector_or_ones(b ? &*b : nullptr, a.dim());
            const auto v = control::is_controllable(
                a, bv,
                policy == "exact" ? exactlin::RankPolicy::exact : exactlin::RankPolicy::fast);
            py::dict out;
            out["controllable"] = v.controllable;
            out["rank"] = v.rank;
            out["certificate"] =
                v.certificate == exactlin::RankCertificate::full_rank_proved
                    ? "full-rank-proved"
                : v.certificate == exactlin::RankCertificate::deficiency_proved_modular
                    ? "deficiency-proved-modular"
                : v.certificate == exactlin::RankCertificate::deficiency_proved_rational
                    ? "deficiency-proved-rational"
                    : "exact-rational";
            return out;
        },
        py::arg("matrix"), py::arg("b") = std::nullopt, py::arg("policy") = "fast");

    m.def("simple_spectrum", [](const std::vector<std::vector<long long>>& rows) {
        return control::simple_spectrum(from_rows(rows));
    });

    m.def(
        "eigvec_dot_profile",
        [](const std::vector<std::vector<long long>>& rows) {
            const auto a = from_rows(rows);
            return control::eigvec_dot_profile(a, control::ones_vector(a.dim()));
        },
        py::arg("matrix"));

    m.def(
        "lcd",
        [](const std::vector<double>& x, double L, double theta_max) {
            const auto r = eigstruct::lcd(
                x, L, theta_max > 0 ? theta_max
                                    : eigstruct::default_theta_max(static_cast<int>(x.size())));
            py::dict out;
            out["lower"] = r.lower;
            out["upper"] = r.upper;
            out["resolved"] = r.resolved;
            return out;
        },
        py::arg("x"), py::arg("L") = 2.0, py::arg("theta_max") = 0.0);

    m.def(
        "classify",
        [](const std::vector<double>& x, double c0, double c1) {
            eigstruct::StructureConstants c = eigstruct::default_constants();
            c.c0 = c0;
            c.c1 = c1;
            const auto rep = eigstruct::classify(x, c);
            py::dict out;
            out["incompressible"] = rep.cls == eigstruct::VectorClass::incompressible;
            out["sparse_distance"] = rep.sparse_distance;
            out["spread_set"] = rep.spread_set;
            return out;
        },
        py::arg("x"), py::arg("c0") = 0.1, py::arg("c1") = 0.1);

    m.def(
        "enumerate_small",
        [](int n) {
            const auto r = harness::enumerate_small(n);
            return py::make_tuple(r.total, r.controllable);
        },
        py::arg("n"));
}
