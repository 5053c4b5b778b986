#pragma once

#include <span>
#include <vector>

#include "ufd/lattice.hpp"

namespace ufd {

/// Correction produced by the erasure decoder: C is a subset of the erasure
/// it was peeled from, with syndrome_of(C) equal to the input syndrome.
struct Correction {
    std::vector<EdgeId> edges;
};

/// Linear-time erasure decoder with reusable buffers. A spanning forest of
/// the erased subgraph is built depth-first from the lowest-index vertex of
/// each component (edges in ascending id order), then peeled leaf-first:
/// a pendant syndrome vertex claims its leaf edge and hands its parity to
/// the other endpoint.
class Peeler {
public:
    explicit Peeler(const SyndromeGraph& graph);

    /// Requires every component of (V, erasure_prime) to contain an even
    /// number of syndrome vertices; throws std::logic_error naming the
    /// offending component root otherwise. Cost is linear in
    /// |erasure_prime|, independent of lattice size.
    Correction peel(std::span<const EdgeId> erasure_prime, std::span<const VertexId> syndrome);

private:
    struct TreeEdge {
        EdgeId edge;
        VertexId parent;
        VertexId child;
    };

    const SyndromeGraph& graph_;
    std::vector<std::uint8_t> in_erasure_, edge_used_, visited_, sigma_;
    std::vector<VertexId> touched_;
    std::vector<TreeEdge> tree_;
    std::vector<std::pair<VertexId, std::uint32_t>> dfs_stack_;
};

/// One-shot convenience wrapper around Peeler.
Correction peel(const SyndromeGraph& graph,
                std::span<const EdgeId> erasure_prime,
                std::span<const VertexId> syndrome);

}  // namespace ufd
