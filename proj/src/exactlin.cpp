#include "ctrlgraph/exactlin.hpp"

#include <algorithm>
#include <cmath>

#include "ctrlgraph/rng.hpp"

namespace ctrlgraph::exactlin {

namespace {
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}
}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin bases for n < 3.3e24
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t nth_prime_31bit(std::uint64_t index) {
    // fixed table: the first 64 primes below 2^31, counted downward
    static const std::vector<std::uint64_t> table = [] {
        std::vector<std::uint64_t> t;
        for (std::uint64_t c = (1ull << 31) - 1; t.size() < 64; --c)
            if (is_prime_u64(c)) t.push_back(c);
        return t;
    }();
    return table[index % table.size()];
}

PrimeFieldMatrix reduce_mod(const BigIntMatrix& m, std::uint64_t prime) {
    PrimeFieldMatrix out(m.rows, m.cols, prime);
    mpz_class p(static_cast<unsigned long>(prime));
    mpz_class r;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            mpz_mod(r.get_mpz_t(), m.at(i, j).get_mpz_t(), p.get_mpz_t());
            out.at(i, j) = r.get_ui();
        }
    return out;
}

BigIntMatrix build_krylov(const matgen::IntSymMatrix& a, const RationalVector& b) {
    const int n = a.dim();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("build_krylov: dimension mismatch");

    // clear denominators: rank is invariant under scaling the start vector
    mpz_class lcm = 1;
    for (const auto& q : b) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<BigInt> v(n);
    for (int i = 0; i < n; ++i) {
        mpq_class scaled = b[i] * mpq_class(lcm);
        v[i] = scaled.get_num();
    }

    BigIntMatrix k(n, n);
    std::vector<BigInt> next(n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) k.at(i, col) = v[i];
        if (col + 1 == n) break;
        for (int i = 0; i < n; ++i) {
            BigInt acc = 0;
            for (int j = 0; j < n; ++j) {
                const long long w = a(i, j);
                if (w == 0) continue;
                if (w > 0)
                    mpz_addmul_ui(acc.get_mpz_t(), v[j].get_mpz_t(), static_cast<unsigned long>(w));
                else
                    mpz_submul_ui(acc.get_mpz_t(), v[j].get_mpz_t(), static_cast<unsigned long>(-w));
            }
            next[i] = acc;
        }
        v.swap(next);
    }
    return k;
}

int rank_rational(const BigIntMatrix& m) {
    BigIntMatrix w = m;
    const int rows = w.rows, cols = w.cols;
    std::vector<int> rperm(rows), cperm(cols);
    for (int i = 0; i < rows; ++i) rperm[i] = i;
    for (int j = 0; j < cols; ++j) cperm[j] = j;

    BigInt prev = 1;
    int r = 0;
    const int steps = std::min(rows, cols);
    for (int k = 0; k < steps; ++k) {
        // full pivoting on largest absolute value (growth control)
        int pi = -1, pj = -1;
        BigInt best = 0;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                const BigInt& v = w.at(rperm[i], cperm[j]);
                if (v == 0) continue;
                BigInt av = abs(v);
                if (pi < 0 || av > best) { best = av; pi = i; pj = j; }
            }
        if (pi < 0) break;  // all-zero trailing block
        std::swap(rperm[k], rperm[pi]);
        std::swap(cperm[k], cperm[pj]);
        const BigInt pivot = w.at(rperm[k], cperm[k]);
        for (int i = k + 1; i < rows; ++i) {
            for (int j = k + 1; j < cols; ++j) {
                BigInt t = w.at(rperm[i], cperm[j]) * pivot -
                           w.at(rperm[i], cperm[k]) * w.at(rperm[k], cperm[j]);
                mpz_divexact(w.at(rperm[i], cperm[j]).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(rperm[i], cperm[k]) = 0;
        }
        prev = pivot;
        ++r;
    }
    return r;
}

int rank_mod_p(const BigIntMatrix& m, std::uint64_t prime) {
    if (!is_prime_u64(prime)) throw std::invalid_argument("rank_mod_p: modulus is not prime");
    PrimeFieldMatrix w = reduce_mod(m, prime);
    const std::uint64_t p = prime;
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int piv = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, c) != 0) { piv = i; break; }  // first nonzero pivot
        if (piv < 0) continue;
        for (int j = 0; j < w.cols; ++j) std::swap(w.at(r, j), w.at(piv, j));
        const std::uint64_t inv = powmod(w.at(r, c), p - 2, p);
        for (int j = c; j < w.cols; ++j) w.at(r, j) = mulmod(w.at(r, j), inv, p);
        for (int i = r + 1; i < w.rows; ++i) {
            const std::uint64_t f = w.at(i, c);
            if (f == 0) continue;
            for (int j = c; j < w.cols; ++j) {
                std::uint64_t sub = mulmod(f, w.at(r, j), p);
                w.at(i, j) = (w.at(i, j) + p - sub) % p;
            }
        }
        ++r;
    }
    return r;
}

double hadamard_bound_log2(const BigIntMatrix& m) {
    std::vector<double> col_log2(m.cols, 0.0);
    for (int j = 0; j < m.cols; ++j) {
        double s = 0;  // log2 of column norm, via norm^2 in doubles of bit sizes
        double max_bits = 0;
        for (int i = 0; i < m.rows; ++i)
            max_bits = std::max(max_bits, static_cast<double>(mpz_sizeinbase(m.at(i, j).get_mpz_t(), 2)));
        s = max_bits + 0.5 * std::log2(std::max(1, m.rows));
        col_log2[j] = s;
    }
    std::sort(col_log2.rbegin(), col_log2.rend());
    double total = 0;
    for (int j = 0; j < std::min(m.rows, m.cols); ++j) total += col_log2[j];
    return total;
}

RankResult rank_certified(const BigIntMatrix& m, RankPolicy policy, bool modular_deficiency_cert,
                          std::uint64_t prime_seed) {
    RankResult res;
    if (policy == RankPolicy::exact) {
        res.rank = rank_rational(m);
        res.certificate = RankCertificate::exact_rational;
        return res;
    }
    const std::uint64_t p0 = nth_prime_31bit(rng::mix64(prime_seed));
    const int full = std::min(m.rows, m.cols);
    const int r0 = rank_mod_p(m, p0);
    res.primes_used = 1;
    if (r0 == full) {
        res.rank = full;
        res.certificate = RankCertificate::full_rank_proved;
        return res;
    }
    if (modular_deficiency_cert) {
        // rank r mod p for primes with product beyond the Hadamard bound on
        // every maximal minor forces every such minor to vanish over Z
        const double need_bits = hadamard_bound_log2(m) + 1;
        double have_bits = std::log2(static_cast<double>(p0));
        int agree = r0;
        std::uint64_t idx = rng::mix64(prime_seed);
        bool consistent = true;
        while (have_bits < need_bits) {
            ++idx;
            const std::uint64_t p = nth_prime_31bit(idx);
            if (p == p0) continue;
            const int r = rank_mod_p(m, p);
            ++res.primes_used;
            if (r != agree) { consistent = false; break; }
            have_bits += std::log2(static_cast<double>(p));
        }
        if (consistent) {
            res.rank = agree;
            res.certificate = RankCertificate::deficiency_proved_modular;
            return res;
        }
    }
    res.rank = rank_rational(m);
    res.certificate = RankCertificate::deficiency_proved_rational;
    return res;
}

IntPolynomial derivative(const IntPolynomial& p) {
    IntPolynomial d;
    for (std::size_t i = 1; i < p.c.size(); ++i) d.c.push_back(p.c[i] * static_cast<long>(i));
    d.normalize();
    return d;
}

BigInt content(const IntPolynomial& p) {
    BigInt g = 0;
    for (const auto& c : p.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
    IntPolynomial q = p;
    q.normalize();
    if (q.is_zero()) return q;
    BigInt g = content(q);
    if (q.c.back() < 0) g = -g;
    for (auto& c : q.c) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return q;
}

namespace {
// pseudo-remainder of a by b: lc(b)^(da-db+1) * a mod b, exact in Z[x]
IntPolynomial pseudo_rem(IntPolynomial a, const IntPolynomial& b) {
    a.normalize();
    const int db = b.degree();
    const BigInt& lb = b.c.back();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        const BigInt la = a.c.back();
        for (auto& c : a.c) c *= lb;
        for (int i = 0; i <= db; ++i) a.c[i + shift] -= la * b.c[i];
        a.normalize();
    }
    return a;
}
}  // namespace

IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    a.normalize();
    b.normalize();
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = primitive_part(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

IntPolynomial charpoly_int(const matgen::IntSymMatrix& a) {
    const int n = a.dim();
    IntPolynomial p;
    p.c.assign(n + 1, 0);
    p.c[n] = 1;
    if (n == 0) return p;

    // Faddeev-LeVerrier: M_1 = A, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I.
    // Coefficient of x^(n-k) is c_k; every division is exact.
    std::vector<BigInt> m(static_cast<std::size_t>(n) * n), am(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = (i == j) ? 1 : 0;

    BigInt ck = 0;
    for (int k = 1; k <= n; ++k) {
        // am = A * m, exploiting small integer entries of A
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                BigInt acc = 0;
                for (int l = 0; l < n; ++l) {
                    const long long w = a(i, l);
                    if (w == 0) continue;
                    const auto& cell = m[static_cast<std::size_t>(l) * n + j];
                    if (w > 0)
                        mpz_addmul_ui(acc.get_mpz_t(), cell.get_mpz_t(), static_cast<unsigned long>(w));
                    else
                        mpz_submul_ui(acc.get_mpz_t(), cell.get_mpz_t(), static_cast<unsigned long>(-w));
                }
                am[static_cast<std::size_t>(i) * n + j] = acc;
            }
        BigInt tr = 0;
        for (int i = 0; i < n; ++i) tr += am[static_cast<std::size_t>(i) * n + i];
        BigInt num = -tr;
        mpz_divexact_ui(ck.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k));
        p.c[n - k] = ck;
        if (k < n) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    BigInt v = am[static_cast<std::size_t>(i) * n + j];
                    if (i == j) v += ck;
                    m[static_cast<std::size_t>(i) * n + j] = std::move(v);
                }
        }
    }
    return p;
}

namespace {
// degree of gcd(p, p') mod a prime; a constant gcd mod p certifies a
// constant gcd over Q because both inputs keep their degrees (p monic)
int gcd_degree_mod_p(const IntPolynomial& a, const IntPolynomial& b, std::uint64_t p) {
    auto reduce = [p](const IntPolynomial& q) {
        std::vector<std::uint64_t> r(q.c.size());
        mpz_class pm(static_cast<unsigned long>(p)), t;
        for (std::size_t i = 0; i < q.c.size(); ++i) {
            mpz_mod(t.get_mpz_t(), q.c[i].get_mpz_t(), pm.get_mpz_t());
            r[i] = t.get_ui();
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    };
    auto x = reduce(a), y = reduce(b);
    if (x.size() != a.c.size() || y.size() != b.c.size()) return -1;  // degree dropped, inconclusive
    while (!y.empty()) {
        // x mod y in F_p
        const std::uint64_t inv = powmod(y.back(), p - 2, p);
        while (x.size() >= y.size()) {
            const std::uint64_t f = mulmod(x.back(), inv, p);
            const std::size_t shift = x.size() - y.size();
            for (std::size_t i = 0; i < y.size(); ++i) {
                std::uint64_t sub = mulmod(f, y[i], p);
                x[i + shift] = (x[i + shift] + p - sub) % p;
            }
            while (!x.empty() && x.back() == 0) x.pop_back();
            if (x.empty()) break;
        }
        std::swap(x, y);
    }
    return static_cast<int>(x.size()) - 1;
}
}  // namespace

bool is_squarefree(const IntPolynomial& pol) {
    IntPolynomial p = pol;
    p.normalize();
    if (p.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
    if (p.degree() <= 1) return true;
    const IntPolynomial dp = derivative(p);
    // modular screen: a constant gcd mod p already proves square-freeness
    const int dm = gcd_degree_mod_p(p, dp, nth_prime_31bit(0));
    if (dm == 0) return true;
    return poly_gcd(p, dp).degree() == 0;
}

BigInt det_bareiss(BigIntMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: square matrix required");
    const int n = m.rows;
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : BigInt(-m.at(n - 1, n - 1));
}

}  // namespace ctrlgraph::exactlin
