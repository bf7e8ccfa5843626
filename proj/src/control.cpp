#include "ctrlgraph/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctrlgraph::control {

RationalVector ones_vector(int n) { return RationalVector(n, Rational(1)); }

ControllabilityVerdict is_controllable(const matgen::IntSymMatrix& a, const RationalVector& b,
                                       exactlin::RankPolicy policy) {
    const exactlin::BigIntMatrix k = exactlin::build_krylov(a, b);
    const exactlin::RankResult r = exactlin::rank_certified(k, policy);
    ControllabilityVerdict v;
    v.rank = r.rank;
    v.controllable = (r.rank == a.dim());
    v.certificate = r.certificate;
    v.method = (r.certificate == exactlin::RankCertificate::full_rank_proved ||
                r.certificate == exactlin::RankCertificate::deficiency_proved_modular)
                   ? DecisionMethod::kalman_modular
                   : DecisionMethod::kalman_rational;
    return v;
}

ControllabilityVerdict pbh_screen(const matgen::IntSymMatrix& a, const RationalVector& b,
                                  double tol) {
    const int n = a.dim();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("pbh_screen: dimension mismatch");
    ControllabilityVerdict v;
    v.method = DecisionMethod::pbh_float_screen;

    EigenDecomposition eig;
    try {
        eig = eig_sym(a);
    } catch (const std::runtime_error&) {
        v.resolved = false;
        return v;
    }

    std::vector<double> bf(n);
    double bnorm = 0;
    for (int i = 0; i < n; ++i) {
        bf[i] = b[i].get_d();
        bnorm += bf[i] * bf[i];
    }
    bnorm = std::sqrt(bnorm);

    double min_dot = std::numeric_limits<double>::infinity();
    int argmin = -1;
    for (int k = 0; k < n; ++k) {
        double dot = 0;
        for (int i = 0; i < n; ++i) dot += eig.vec(i, k) * bf[i];
        if (std::abs(dot) < min_dot) {
            min_dot = std::abs(dot);
            argmin = k;
        }
    }
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < n; ++k) min_gap = std::min(min_gap, eig.values[k + 1] - eig.values[k]);

    const bool suspicious = min_dot < tol * bnorm || (n > 1 && min_gap < tol);
    v.controllable = !suspicious;
    if (suspicious) v.witness = argmin;
    return v;
}

bool simple_spectrum(const matgen::IntSymMatrix& a) {
    return exactlin::is_squarefree(exactlin::charpoly_int(a));
}

bool shift_equivalence_check(const matgen::IntSymMatrix& a, const RationalVector& b,
                             const Rational& gamma, exactlin::RankPolicy policy) {
    const int n = a.dim();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("shift_equivalence_check: dimension mismatch");

    const ControllabilityVerdict base = is_controllable(a, b, policy);

    // Clear (A + gamma b b^T, b) to integers: with gamma = r/s and beta = d*b
    // integral, rank equivalence allows scaling the matrix by s*d^2 and the
    // vector by d, giving (s d^2 A + r beta beta^T, beta).
    mpz_class d = 1;
    for (const auto& q : b) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<mpz_class> beta(n);
    for (int i = 0; i < n; ++i) beta[i] = mpq_class(b[i] * mpq_class(d)).get_num();

    const mpz_class r = gamma.get_num();
    const mpz_class s = gamma.get_den();
    const mpz_class scale = s * d * d;

    matgen::IntSymMatrix shifted(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            mpz_class v = scale * mpz_class(static_cast<long>(a(i, j))) + r * beta[i] * beta[j];
            if (!v.fits_slong_p())
                throw std::runtime_error("shift_equivalence_check: shifted entry overflows");
            shifted.set(i, j, v.get_si());
        }

    const ControllabilityVerdict after = is_controllable(shifted, b, policy);
    return base.controllable == after.controllable;
}

std::vector<double> eigvec_dot_profile(const matgen::IntSymMatrix& w, const RationalVector& b) {
    const int n = w.dim();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("eigvec_dot_profile: dimension mismatch");
    if (!simple_spectrum(w))
        throw std::invalid_argument("eigvec_dot_profile: spectrum is not simple, profile undefined");

    const EigenDecomposition eig = eig_sym(w);
    std::vector<double> bf(n);
    for (int i = 0; i < n; ++i) bf[i] = b[i].get_d();
    std::vector<double> dots(n);
    for (int k = 0; k < n; ++k) {
        double dot = 0;
        for (int i = 0; i < n; ++i) dot += eig.vec(i, k) * bf[i];
        dots[k] = std::abs(dot);
    }
    std::sort(dots.begin(), dots.end());
    return dots;
}

}  // namespace ctrlgraph::control
