#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ctrlgraph::eigstruct {

// Structure constants c0, c1 with the derived c2 = c0*c1^2/4 and
// delta = c0*c1^2/8; gamma must sit in (0, c2) and L >= 1.
struct StructureConstants {
    double c0 = 0.1;
    double c1 = 0.1;
    double gamma = 0;  // 0 picks the default c2/2
    double L = 2.0;

    double c2() const { return 0.25 * c0 * c1 * c1; }
    double delta() const { return 0.125 * c0 * c1 * c1; }
    double gamma_or_default() const { return gamma > 0 ? gamma : 0.5 * c2(); }

    void validate() const;
};

StructureConstants default_constants(double p0 = 0.5);

// Certified bracket for the least common denominator
//   D_L(x) = inf{ theta > 0 : dist(theta x, Z^n) < L sqrt(log+(theta/L)) }.
// lower never exceeds the true value; when resolved, upper == witness is a
// qualifying theta and the bracket width is below 1e-9.
struct LcdResult {
    double lower = 0;
    double upper = 0;
    std::optional<double> witness_theta;
    bool resolved = false;
};

double dist_to_lattice(double theta, std::span<const double> x);

// Grid scan with step min(1e-3, 1/(4 ||x||_inf sqrt(n))) refined by bisection.
// The scan starts at max(L, 1/(2||x||_inf)): no smaller theta can qualify.
LcdResult lcd(std::span<const double> x, double L, double theta_max);
double default_theta_max(int n);  // 10 n^2

enum class VectorClass { compressible, incompressible };

struct CompressibilityReport {
    VectorClass cls = VectorClass::compressible;
    double sparse_distance = 0;     // l2 norm of all but the floor(c0 n) largest coords
    std::vector<int> spread_set;    // ceil(c2 n) indices, incompressible only
    int spread_size = 0;
};

// Exact sparse distance by coordinate sorting; incompressible vectors get a
// spread set from spread_policy (with the given exclusions).
CompressibilityReport classify(std::span<const double> x, const StructureConstants& consts,
                               const std::vector<int>& exclude = {});

// ceil(c2 n) coordinate indices outside `exclude` whose magnitudes lie in
// [c1/sqrt(2n), 1/sqrt(c0 n)], chosen in index order. Throws if fewer are
// available (the vector was misclassified) or |exclude| > ceil(delta n).
std::vector<int> spread_policy(std::span<const double> x, const StructureConstants& consts,
                               const std::vector<int>& exclude);

enum class RlcdMode { exact, heuristic };

struct RegularizedLcdResult {
    double value_lower = 0;            // certified lower bound on the max
    std::vector<int> maximizing_subset;
    bool exact = false;
};

// Regularized LCD: max of D_L over normalized restrictions x_I/||x_I|| with
// I inside the spread set, |I| = ceil(gamma n). Exact mode enumerates all
// subsets (allowed while C(spread, |I|) <= 1e5); the heuristic takes the best
// of 200 deterministic random subsets plus a greedy single-swap ascent and is
// always a lower bound. Ties break lexicographically.
RegularizedLcdResult regularized_lcd(std::span<const double> x, const StructureConstants& consts,
                                     RlcdMode mode, double theta_max = 0);

// Floor constant for the regularized LCD against c * sqrt(gamma n),
// calibrated on small-dimension sweeps and then asserted on every call.
inline constexpr double kRlcdFloorC = 0.9;

// (K, delta)-delocalization of a rational vector: a coordinate passes when it
// is a nonzero reduced fraction p/q with |p|, |q| <= K. Returns the verdict
// and the set Q_b of failing coordinates.
std::pair<bool, std::vector<int>> is_delocalized(const std::vector<mpq_class>& b, long K,
                                                 double delta);

// Greedy maximal eps-separated subset of S^{d-1} (d <= 4), verified to be an
// eps-net against random probes; |net| <= (1 + 2/eps)^d.
std::vector<std::vector<double>> sphere_net(int d, double eps, std::uint64_t probes = 1'000'000);

// JSON records for structure reports, and plain-text vector input
// (one float per line).
std::string to_json_record(const LcdResult& r);
std::string to_json_record(const CompressibilityReport& r);
std::string to_json_record(const RegularizedLcdResult& r);
std::vector<double> read_vector_text(std::istream& is, bool normalize = false);

}  // namespace ctrlgraph::eigstruct
