#pragma once

#include <optional>
#include <vector>

#include "ctrlgraph/eigsym.hpp"
#include "ctrlgraph/exactlin.hpp"
#include "ctrlgraph/int_matrix.hpp"

namespace ctrlgraph::control {

using exactlin::Rational;
using exactlin::RationalVector;

enum class DecisionMethod { kalman_modular, kalman_rational, pbh_float_screen };

struct ControllabilityVerdict {
    bool controllable = false;
    DecisionMethod method = DecisionMethod::kalman_modular;
    int rank = -1;  // exact Kalman rank for the Kalman methods, -1 otherwise
    exactlin::RankCertificate certificate = exactlin::RankCertificate::exact_rational;
    std::optional<int> witness;  // eigenvector index for screen-detected orthogonality
    bool resolved = true;        // false only for a failed float screen

    // float screens are advisory and never count as an exact verdict
    bool exact() const { return method != DecisionMethod::pbh_float_screen; }
};

RationalVector ones_vector(int n);

// Exact Kalman test: rank of [b, Ab, ..., A^{n-1}b].
ControllabilityVerdict is_controllable(const matgen::IntSymMatrix& a, const RationalVector& b,
                                       exactlin::RankPolicy policy = exactlin::RankPolicy::fast);

// Floating PBH screen: flags an eigenvector nearly orthogonal to b or a
// near-degenerate eigenvalue gap. Advisory only.
ControllabilityVerdict pbh_screen(const matgen::IntSymMatrix& a, const RationalVector& b,
                                  double tol = 1e-7);

// Exact: characteristic polynomial is square-free. For symmetric integer
// matrices (real spectrum) this is equivalent to a simple spectrum.
bool simple_spectrum(const matgen::IntSymMatrix& a);

// Checks the rank-one-shift equivalence: the verdicts for (A, b) and
// (A + gamma*b*b^T, b) must agree. The shifted pair is cleared to integers
// exactly, so both verdicts are exact.
bool shift_equivalence_check(const matgen::IntSymMatrix& a, const RationalVector& b,
                             const Rational& gamma,
                             exactlin::RankPolicy policy = exactlin::RankPolicy::fast);

// Sorted |v_i^T b| over all unit eigenvectors; requires a simple spectrum so
// the profile is well defined (eigenvectors unique up to sign).
std::vector<double> eigvec_dot_profile(const matgen::IntSymMatrix& w, const RationalVector& b);

}  // namespace ctrlgraph::control
