#pragma once

#include <span>
#include <vector>

#include "ufd/lattice.hpp"
#include "ufd/rng.hpp"

namespace ufd {

struct NoiseParams {
    double p_e = 0.0;  // erasure rate per edge
    double p_z = 0.0;  // Z rate per non-erased edge
};

/// One sampled error configuration. `syndrome` is always the set of vertices
/// with an odd number of incident pauli_z edges; on these closed lattices its
/// size is even. All three vectors are sorted ascending.
struct ErrorState {
    std::vector<EdgeId> erasure;
    std::vector<EdgeId> pauli_z;
    std::vector<VertexId> syndrome;
};

/// Samples the mixed channel: each edge enters the erasure with probability
/// p_e; erased edges carry Z with probability 1/2, non-erased edges with
/// probability p_z. One uniform draw per edge decides all three outcomes.
/// Time-like and space-like edges of a Torus3D graph use the same rates.
ErrorState sample(const SyndromeGraph& graph, const NoiseParams& params, RngStream& rng);

/// Vertices with an odd number of incident edges in pauli_z, ascending.
std::vector<VertexId> syndrome_of(const SyndromeGraph& graph, std::span<const EdgeId> pauli_z);

/// Deterministic error injection: wraps the given sets (copied, sorted,
/// deduplicated) and derives the syndrome.
ErrorState inject(const SyndromeGraph& graph,
                  std::span<const EdgeId> erasure,
                  std::span<const EdgeId> pauli_z);

}  // namespace ufd
