#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctrlgraph/eigsym.hpp"
#include "ctrlgraph/exactlin.hpp"
#include "ctrlgraph/matgen.hpp"
#include "ctrlgraph/rng.hpp"

using namespace ctrlgraph;
using exactlin::BigInt;
using exactlin::BigIntMatrix;
using exactlin::IntPolynomial;
using matgen::IntSymMatrix;
using matgen::SeedSpec;

namespace {

// independent oracle: straightforward Gauss elimination over exact rationals
int rank_rational_gauss(const BigIntMatrix& m) {
    std::vector<std::vector<mpq_class>> w(m.rows, std::vector<mpq_class>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) w[i][j] = mpq_class(m.at(i, j));
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (w[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(w[r], w[piv]);
        const mpq_class inv = 1 / w[r][c];
        for (int j = c; j < m.cols; ++j) w[r][j] *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || w[i][c] == 0) continue;
            const mpq_class f = w[i][c];
            for (int j = c; j < m.cols; ++j) w[i][j] -= f * w[r][j];
        }
        ++r;
    }
    return r;
}

// independent oracle: Laplace cofactor expansion of det(xI - A) over Z[x]
std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> out(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<BigInt> charpoly_laplace(const std::vector<std::vector<std::vector<BigInt>>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::vector<BigInt> acc{BigInt(0)};
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<std::vector<BigInt>>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::vector<BigInt>> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        auto term = poly_mul(m[0][j], charpoly_laplace(minor));
        if (acc.size() < term.size()) acc.resize(term.size(), BigInt(0));
        const int sign = j % 2 == 0 ? 1 : -1;
        for (std::size_t k = 0; k < term.size(); ++k)
            acc[k] += sign > 0 ? term[k] : BigInt(-term[k]);
    }
    return acc;
}

IntPolynomial charpoly_oracle(const IntSymMatrix& a) {
    const int n = a.dim();
    std::vector<std::vector<std::vector<BigInt>>> m(
        n, std::vector<std::vector<BigInt>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const long e = static_cast<long>(a(i, j));
            if (i == j)
                m[i][j] = {BigInt(-e), BigInt(1)};  // x - a_ii
            else
                m[i][j] = {BigInt(-e)};
        }
    IntPolynomial p;
    p.c = charpoly_laplace(m);
    p.normalize();
    return p;
}

BigIntMatrix random_matrix(int rows, int cols, int lo, int hi, std::uint64_t tag) {
    const auto s = rng::derive_stream(0xfeed, "randmat", tag);
    BigIntMatrix m(rows, cols);
    std::uint64_t ctr = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = BigInt(static_cast<long>(s.uniform_int_at(ctr++, lo, hi)));
    return m;
}

IntSymMatrix random_graph(int n, std::uint64_t trial) {
    return matgen::sample_gnp(n, 0.5, SeedSpec{0xabc, n, trial});
}

IntSymMatrix complete_graph(int n) {
    IntSymMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a.set(i, j, 1);
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("exactlin");

TEST_CASE("krylov columns on tiny cases") {
    using control_b = exactlin::RationalVector;
    IntSymMatrix zero(3);
    const auto k0 = exactlin::build_krylov(zero, control_b(3, mpq_class(1)));
    for (int i = 0; i < 3; ++i) {
        CHECK(k0.at(i, 0) == 1);
        CHECK(k0.at(i, 1) == 0);
        CHECK(k0.at(i, 2) == 0);
    }
    CHECK(exactlin::rank_rational(k0) == 1);

    IntSymMatrix p2(2);
    p2.set(0, 1, 1);
    const auto k = exactlin::build_krylov(p2, control_b(2, mpq_class(1)));
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(0, 1) == 1);
    CHECK(k.at(1, 1) == 1);
    CHECK(exactlin::rank_rational(k) == 1);

    // identity matrix: every Krylov column is the ones vector
    IntSymMatrix id(3);
    for (int i = 0; i < 3; ++i) id.set(i, i, 1);
    const auto ki = exactlin::build_krylov(id, control_b(3, mpq_class(1)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(ki.at(i, j) == 1);
    CHECK(exactlin::rank_rational(ki) == 1);
}

TEST_CASE("krylov clears rational denominators") {
    IntSymMatrix a(2);
    a.set(0, 1, 1);
    exactlin::RationalVector b{mpq_class(1, 3), mpq_class(1, 5)};
    const auto k = exactlin::build_krylov(a, b);
    CHECK(k.at(0, 0) == 5);  // 15 * (1/3, 1/5)
    CHECK(k.at(1, 0) == 3);
    CHECK(k.at(0, 1) == 3);  // A * (5,3)
    CHECK(k.at(1, 1) == 5);
}

TEST_CASE("rank_rational basics") {
    BigIntMatrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = 1;
    CHECK(exactlin::rank_rational(id) == 4);

    BigIntMatrix ones(2, 2);
    ones.at(0, 0) = ones.at(0, 1) = ones.at(1, 0) = ones.at(1, 1) = 1;
    CHECK(exactlin::rank_rational(ones) == 1);
}

TEST_CASE("rank_rational agrees with the rational Gauss oracle on 500 random 8x8") {
    for (std::uint64_t t = 0; t < 500; ++t) {
        const auto m = random_matrix(8, 8, -4, 4, t);
        CHECK(exactlin::rank_rational(m) == rank_rational_gauss(m));
    }
}

TEST_CASE("rank is invariant under permutation and column scaling") {
    const auto s = rng::derive_stream(0xbead, "perm");
    std::uint64_t ctr = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto m = random_matrix(6, 6, -3, 3, 1000 + t);
        const int base = exactlin::rank_rational(m);
        // random row swap + column scale by a nonzero rational (here: integer 3)
        const int r1 = static_cast<int>(s.uniform_int_at(ctr++, 0, 5));
        const int r2 = static_cast<int>(s.uniform_int_at(ctr++, 0, 5));
        for (int j = 0; j < 6; ++j) std::swap(m.at(r1, j), m.at(r2, j));
        const int c = static_cast<int>(s.uniform_int_at(ctr++, 0, 5));
        for (int i = 0; i < 6; ++i) m.at(i, c) *= 3;
        CHECK(exactlin::rank_rational(m) == base);
    }
}

TEST_CASE("rank_mod_p basics and domination") {
    BigIntMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(exactlin::rank_mod_p(id, exactlin::nth_prime_31bit(0)) == 3);

    BigIntMatrix twos(2, 2);
    twos.at(0, 0) = twos.at(1, 1) = 2;
    CHECK(exactlin::rank_mod_p(twos, 2) == 0);

    for (std::uint64_t t = 0; t < 200; ++t) {
        const auto m = random_matrix(7, 7, -5, 5, 2000 + t);
        const auto p = exactlin::nth_prime_31bit(t);
        CHECK(exactlin::rank_mod_p(m, p) <= exactlin::rank_rational(m));
    }
}

TEST_CASE("rank_mod_p matches rational rank for nearly all random primes") {
    int agree = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const auto m = random_matrix(10, 10, -9, 9, 3000 + t);
        const auto p = exactlin::nth_prime_31bit(rng::mix64(t));
        agree += exactlin::rank_mod_p(m, p) == exactlin::rank_rational(m);
    }
    CHECK(agree >= 999);
}

TEST_CASE("rank_certified: fast path, deficiency fallback, modular certification") {
    // full-rank Krylov of a controllable pair: one prime is enough
    IntSymMatrix diag(3);
    diag.set(0, 0, 1);
    diag.set(1, 1, 2);
    diag.set(2, 2, 3);
    const auto k = exactlin::build_krylov(diag, exactlin::RationalVector(3, mpq_class(1)));
    const auto fast = exactlin::rank_certified(k, exactlin::RankPolicy::fast);
    CHECK(fast.rank == 3);
    CHECK(fast.certificate == exactlin::RankCertificate::full_rank_proved);
    CHECK(fast.primes_used == 1);

    // deficient case: P2 with ones
    IntSymMatrix p2(2);
    p2.set(0, 1, 1);
    const auto kd = exactlin::build_krylov(p2, exactlin::RationalVector(2, mpq_class(1)));
    const auto slow = exactlin::rank_certified(kd, exactlin::RankPolicy::fast);
    CHECK(slow.rank == 1);
    CHECK(slow.certificate == exactlin::RankCertificate::deficiency_proved_rational);

    // the 2x2 Hadamard bound fits inside one 31-bit prime
    const auto mod = exactlin::rank_certified(kd, exactlin::RankPolicy::fast, true);
    CHECK(mod.rank == 1);
    CHECK(mod.certificate == exactlin::RankCertificate::deficiency_proved_modular);
    CHECK(mod.primes_used == 1);

    // a 10-vertex graph with twin vertices: deficient Krylov with large
    // entries, so the certificate needs several primes
    IntSymMatrix twins(10);
    for (int i = 2; i < 10; ++i) {
        twins.set(0, i, 1);
        twins.set(1, i, 1);  // vertices 0 and 1 share every neighbor
    }
    for (int i = 2; i < 9; ++i) twins.set(i, i + 1, 1);
    const auto kt = exactlin::build_krylov(twins, exactlin::RationalVector(10, mpq_class(1)));
    REQUIRE(exactlin::rank_rational(kt) < 10);
    const auto multi = exactlin::rank_certified(kt, exactlin::RankPolicy::fast, true);
    CHECK(multi.rank == exactlin::rank_rational(kt));
    CHECK(multi.certificate == exactlin::RankCertificate::deficiency_proved_modular);
    CHECK(multi.primes_used >= 2);

    const auto exact = exactlin::rank_certified(kd, exactlin::RankPolicy::exact);
    CHECK(exact.rank == 1);
    CHECK(exact.certificate == exactlin::RankCertificate::exact_rational);
}

TEST_CASE("rank_certified(fast) equals rank_rational on all 64 graphs with n = 4") {
    const exactlin::RationalVector b(4, mpq_class(1));
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
        IntSymMatrix a(4);
        int bit = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j, ++bit)
                if (mask >> bit & 1) a.set(i, j, 1);
        const auto k = exactlin::build_krylov(a, b);
        CHECK(exactlin::rank_certified(k, exactlin::RankPolicy::fast).rank ==
              exactlin::rank_rational(k));
    }
}

TEST_CASE("charpoly on fixed matrices") {
    IntSymMatrix zero2(2);
    auto p = exactlin::charpoly_int(zero2);  // x^2
    REQUIRE(p.degree() == 2);
    CHECK(p.c[2] == 1);
    CHECK(p.c[1] == 0);
    CHECK(p.c[0] == 0);

    IntSymMatrix k2(2);
    k2.set(0, 1, 1);
    p = exactlin::charpoly_int(k2);  // x^2 - 1
    CHECK(p.c[2] == 1);
    CHECK(p.c[1] == 0);
    CHECK(p.c[0] == -1);

    p = exactlin::charpoly_int(complete_graph(3));  // x^3 - 3x - 2
    REQUIRE(p.degree() == 3);
    CHECK(p.c[3] == 1);
    CHECK(p.c[2] == 0);
    CHECK(p.c[1] == -3);
    CHECK(p.c[0] == -2);
    CHECK(p == charpoly_oracle(complete_graph(3)));
}

TEST_CASE("charpoly agrees with the Laplace oracle at n <= 5") {
    for (int n = 2; n <= 5; ++n)
        for (std::uint64_t t = 0; t < 10; ++t) {
            const auto a = random_graph(n, t);
            CHECK(exactlin::charpoly_int(a) == charpoly_oracle(a));
        }
}

TEST_CASE("charpoly evaluation equals the Bareiss determinant of xI - A") {
    for (int n : {4, 6, 8})
        for (std::uint64_t t = 0; t < 10; ++t) {
            IntSymMatrix a(n);
            const auto s = rng::derive_stream(0xcafe, "chk", (std::uint64_t)n, t);
            std::uint64_t ctr = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    a.set(i, j, s.uniform_int_at(ctr++, -3, 3));
            const auto p = exactlin::charpoly_int(a);
            for (long x : {0L, 1L, -1L, 2L, -2L}) {
                BigIntMatrix m(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        m.at(i, j) = (i == j ? BigInt(x) - BigInt(static_cast<long>(a(i, j)))
                                             : BigInt(static_cast<long>(-a(i, j))));
                CHECK(p.eval(BigInt(x)) == exactlin::det_bareiss(m));
            }
        }
}

TEST_CASE("square-free detection") {
    IntPolynomial x2m1;  // x^2 - 1
    x2m1.c = {BigInt(-1), BigInt(0), BigInt(1)};
    CHECK(exactlin::is_squarefree(x2m1));

    IntPolynomial x2;  // x^2
    x2.c = {BigInt(0), BigInt(0), BigInt(1)};
    CHECK_FALSE(exactlin::is_squarefree(x2));

    // (x-2)(x+1)^2 = x^3 - 3x - 2: verified by expanding the factorization
    IntPolynomial factor1, factor2;
    factor1.c = {BigInt(-2), BigInt(1)};
    factor2.c = {BigInt(1), BigInt(1)};
    auto prod = poly_mul(poly_mul(factor1.c, factor2.c), factor2.c);
    const auto k3 = exactlin::charpoly_int(complete_graph(3));
    REQUIRE(prod.size() == k3.c.size());
    for (std::size_t i = 0; i < prod.size(); ++i) CHECK(prod[i] == k3.c[i]);
    CHECK_FALSE(exactlin::is_squarefree(k3));

    IntPolynomial zero;
    CHECK_THROWS_AS(exactlin::is_squarefree(zero), std::invalid_argument);
}

TEST_CASE("square-free charpoly matches float eigenvalue gaps outside the ambiguous zone") {
    for (std::uint64_t t = 0; t < 60; ++t) {
        const int n = 6 + static_cast<int>(t % 7);  // 6..12
        const auto w = matgen::sample_wigner(n, matgen::AtomDistribution::rademacher(),
                                             matgen::AtomDistribution::rademacher(),
                                             SeedSpec{0x5a5a, n, t});
        const bool sf = exactlin::is_squarefree(exactlin::charpoly_int(w));
        const auto eig = control::eig_sym(w);
        double min_gap = 1e300;
        for (int i = 0; i + 1 < n; ++i) min_gap = std::min(min_gap, eig.values[i + 1] - eig.values[i]);
        if (min_gap > 1e-6) CHECK(sf);
        if (sf == false) CHECK(min_gap <= 1e-6);
    }
}

TEST_CASE("prime table entries are 31-bit primes") {
    for (std::uint64_t i = 0; i < 64; ++i) {
        const auto p = exactlin::nth_prime_31bit(i);
        CHECK(exactlin::is_prime_u64(p));
        CHECK(p < (1ull << 31));
        CHECK(p > (1ull << 30));
    }
    CHECK(exactlin::nth_prime_31bit(0) == (1ull << 31) - 1);  // 2^31 - 1 is prime
}

TEST_SUITE_END();
