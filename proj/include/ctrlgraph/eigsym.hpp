#pragma once

#include <vector>

#include "ctrlgraph/int_matrix.hpp"

namespace ctrlgraph::control {

// Floating eigendecomposition of a real symmetric matrix. Eigenvalues sorted
// ascending; eigenvectors are the columns of an orthonormal matrix, stored
// column-major.
struct EigenDecomposition {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;  // column-major, vectors[i + n*k] = v_k[i]
    double max_residual = 0;      // max_k ||A v_k - lambda_k v_k||
    double max_cross_dot = 0;     // max off-diagonal |v_i . v_j|

    double vec(int i, int k) const { return vectors[i + static_cast<std::size_t>(n) * k]; }
};

// Householder tridiagonalization followed by implicit-shift QL iteration.
// Intended for dimensions up to 512. Throws std::runtime_error if the QL
// sweep fails to converge or the residual check fails.
EigenDecomposition eig_sym(const std::vector<double>& a_dense, int n);
EigenDecomposition eig_sym(const matgen::IntSymMatrix& a);

}  // namespace ctrlgraph::control
