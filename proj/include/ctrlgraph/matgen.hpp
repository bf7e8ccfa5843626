#pragma once

#include <cstdint>

#include "ctrlgraph/atom.hpp"
#include "ctrlgraph/int_matrix.hpp"
#include "ctrlgraph/rng.hpp"

namespace ctrlgraph::matgen {

// Substream identity for one sampled matrix. Experiments that must agree on
// matched seeds (a loops sweep at q=0 against the plain sweep, or the
// dot-product profile against the simple-spectrum run) share these tags, so
// the same (master_seed, n, trial) always reproduces the same matrix.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    int n = 0;
    std::uint64_t trial = 0;

    rng::Stream edges() const { return rng::derive_stream(master_seed, "edges", (std::uint64_t)n, trial); }
    rng::Stream loops() const { return rng::derive_stream(master_seed, "loops", (std::uint64_t)n, trial); }
    rng::Stream wigner_upper() const { return rng::derive_stream(master_seed, "wigner-xi", (std::uint64_t)n, trial); }
    rng::Stream wigner_diag() const { return rng::derive_stream(master_seed, "wigner-zeta", (std::uint64_t)n, trial); }
    rng::Stream aux(const char* tag) const { return rng::derive_stream(master_seed, tag, (std::uint64_t)n, trial); }
};

// Erdos-Renyi G(n,p): simple-graph adjacency matrix, zero diagonal.
IntSymMatrix sample_gnp(int n, double p, const SeedSpec& seed);

// G(n,p,q): G(n,p) plus an independent Bernoulli(q) loop at each vertex.
// With equal seeds the off-diagonal bits coincide with sample_gnp's.
IntSymMatrix sample_gnpq(int n, double p, double q, const SeedSpec& seed);

// Wigner matrix: iid xi above the diagonal, iid zeta on it. Atoms must have
// integer support (scale rational atoms first).
IntSymMatrix sample_wigner(int n, const AtomDistribution& xi, const AtomDistribution& zeta,
                           const SeedSpec& seed);

enum class ShiftDirection { adjacency_to_wigner, wigner_to_adjacency };

// Exact rank-one-shift transform between a 0/1 adjacency matrix A and the
// +-1 symmetric matrix W = 2A - ones*ones^T (diagonal included). The two
// directions are exact inverses of each other.
IntSymMatrix adjacency_wigner_shift(const IntSymMatrix& a, ShiftDirection dir);

enum class NormStatus { resolved, unresolved };

// Spectral-norm event ||W|| <= M*sqrt(n).
struct SpectralNormEvent {
    double M = 1;
    bool holds = false;
    double norm_estimate = 0;
    NormStatus status = NormStatus::resolved;
    int iterations = 0;
};

// Largest |eigenvalue| by power iteration on the shifted matrices W + cI and
// -W + cI (c a Gershgorin bound), to 1e-8 relative tolerance, capped at
// 10000 iterations. A capped run is reported as unresolved, never as false.
SpectralNormEvent spectral_norm_event(const IntSymMatrix& w, double M);

}  // namespace ctrlgraph::matgen
