#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "ctrlgraph/int_matrix.hpp"

namespace ctrlgraph::exactlin {

using BigInt = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

struct BigIntMatrix {
    int rows = 0, cols = 0;
    std::vector<BigInt> e;

    BigIntMatrix() = default;
    BigIntMatrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}

    BigInt& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
    const BigInt& at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }
};

// Matrix of residues mod a 31-bit prime.
struct PrimeFieldMatrix {
    std::uint64_t modulus = 0;
    int rows = 0, cols = 0;
    std::vector<std::uint64_t> e;

    PrimeFieldMatrix(int r, int c, std::uint64_t p)
        : modulus(p), rows(r), cols(c), e(static_cast<std::size_t>(r) * c, 0) {}
    std::uint64_t& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
    std::uint64_t at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }
};

PrimeFieldMatrix reduce_mod(const BigIntMatrix& m, std::uint64_t prime);

// Controllability (Krylov) matrix with columns b, Ab, ..., A^{n-1}b. A
// rational b is cleared to integers by the LCM of its denominators first;
// rank is invariant under that column scaling.
BigIntMatrix build_krylov(const matgen::IntSymMatrix& a, const RationalVector& b);

// Exact rank over the rationals: Bareiss fraction-free elimination with full
// pivoting (largest |entry| pivot).
int rank_rational(const BigIntMatrix& m);

// Rank of m mod prime by field Gaussian elimination (first nonzero pivot).
// Always <= rank_rational(m).
int rank_mod_p(const BigIntMatrix& m, std::uint64_t prime);

enum class RankCertificate {
    full_rank_proved,           // nonzero maximal minor mod p is nonzero over Z
    deficiency_proved_rational, // exact Bareiss fallback
    deficiency_proved_modular,  // enough primes to clear the Hadamard bound
    exact_rational,             // policy == exact
};

enum class RankPolicy { fast, exact };

struct RankResult {
    int rank = 0;
    RankCertificate certificate = RankCertificate::exact_rational;
    int primes_used = 0;
};

// fast: one deterministic prime; full rank mod p settles it, a deficient
// screen escalates (multi-prime Hadamard certification when enabled, exact
// rational elimination otherwise). exact: always rank_rational.
RankResult rank_certified(const BigIntMatrix& m, RankPolicy policy,
                          bool modular_deficiency_cert = false, std::uint64_t prime_seed = 1);

// ceil bound on |det| of any square submatrix (product of the largest column
// norms), as a bit length
double hadamard_bound_log2(const BigIntMatrix& m);

// deterministic table of 31-bit primes; index wraps
std::uint64_t nth_prime_31bit(std::uint64_t index);
bool is_prime_u64(std::uint64_t n);

// Integer polynomial, little-endian coefficients, leading coefficient nonzero
// unless the polynomial is zero.
struct IntPolynomial {
    std::vector<BigInt> c;

    bool operator==(const IntPolynomial& o) const { return c == o.c; }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

IntPolynomial derivative(const IntPolynomial& p);
BigInt content(const IntPolynomial& p);
IntPolynomial primitive_part(const IntPolynomial& p);

// gcd of integer polynomials (primitive Euclidean remainder sequence); the
// result is primitive with positive leading coefficient
IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b);

// Exact characteristic polynomial det(xI - A), monic of degree n, via the
// Faddeev-LeVerrier recurrence (all intermediates integral, divisions exact).
IntPolynomial charpoly_int(const matgen::IntSymMatrix& a);

// true iff gcd(pol, pol') is constant; for a symmetric integer matrix this is
// exactly "the spectrum is simple". Throws on the zero polynomial.
bool is_squarefree(const IntPolynomial& pol);

// determinant via Bareiss (used by tests as an evaluation oracle)
BigInt det_bareiss(BigIntMatrix m);

}  // namespace ctrlgraph::exactlin
