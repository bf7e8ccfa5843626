#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctrlgraph::matgen {

// Exact integer symmetric matrix (adjacency matrix or Wigner realization).
// Symmetry is enforced structurally: only one triangle is stored.
class IntSymMatrix {
public:
    IntSymMatrix() = default;
    explicit IntSymMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * (n + 1) / 2, 0) {
        if (n < 0) throw std::invalid_argument("IntSymMatrix: negative dimension");
    }

    int dim() const { return n_; }

    long long operator()(int i, int j) const { return e_[idx(i, j)]; }
    void set(int i, int j, long long v) { e_[idx(i, j)] = v; }

    bool operator==(const IntSymMatrix&) const = default;

    bool is_zero_one() const {
        for (auto v : e_)
            if (v != 0 && v != 1) return false;
        return true;
    }
    bool has_zero_diagonal() const {
        for (int i = 0; i < n_; ++i)
            if ((*this)(i, i) != 0) return false;
        return true;
    }
    bool is_plus_minus_one_offdiag() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if ((*this)(i, j) != 1 && (*this)(i, j) != -1) return false;
        return true;
    }

    long long max_abs_entry() const {
        long long m = 0;
        for (auto v : e_) m = std::max(m, v < 0 ? -v : v);
        return m;
    }

private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("IntSymMatrix index");
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(j) * (j + 1) / 2 + i;
    }

    int n_ = 0;
    std::vector<long long> e_;
};

// Plain-text format: dimension on line 1, then n rows of space-separated integers.
void write_matrix_text(std::ostream& os, const IntSymMatrix& a);
IntSymMatrix read_matrix_text(std::istream& is);

// Compact form for 0/1 adjacency matrices: "n:" followed by the upper-triangle
// bits (row by row, excluding the diagonal) as a 0/1 string.
std::string to_adjacency_bitstring(const IntSymMatrix& a);
IntSymMatrix from_adjacency_bitstring(const std::string& s);

}  // namespace ctrlgraph::matgen
