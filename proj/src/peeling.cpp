#include "ufd/peeling.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ufd {

Peeler::Peeler(const SyndromeGraph& graph)
    : graph_(graph),
      in_erasure_(graph.edge_count(), 0),
      edge_used_(graph.edge_count(), 0),
      visited_(graph.vertex_count(), 0),
      sigma_(graph.vertex_count(), 0) {}

Correction Peeler::peel(std::span<const EdgeId> erasure_prime, std::span<const VertexId> syndrome) {
    // All per-vertex/per-edge state is cleared sparsely on exit so each call
    // costs O(|erasure_prime| + |syndrome|), not O(lattice).
    touched_.clear();
    tree_.clear();
    for (EdgeId e : erasure_prime) in_erasure_[e] = 1;
    for (VertexId v : syndrome) sigma_[v] = 1;

    // Vertices of the erased subgraph, ascending, duplicates skipped via the
    // visited pass below.
    for (EdgeId e : erasure_prime) {
        touched_.push_back(graph_.endpoints(e)[0]);
        touched_.push_back(graph_.endpoints(e)[1]);
    }
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());

    auto cleanup = [&] {
        for (EdgeId e : erasure_prime) {
            in_erasure_[e] = 0;
            edge_used_[e] = 0;
        }
        for (VertexId v : touched_) {
            visited_[v] = 0;
            sigma_[v] = 0;
        }
        for (VertexId v : syndrome) sigma_[v] = 0;
    };

    try {
        // Spanning forest, one DFS per component rooted at its lowest vertex.
        // Incident lists are ordered by edge id, so neighbors are explored in
        // ascending EdgeId order. Non-tree (cycle) edges are simply skipped;
        // the syndrome is always resolvable inside the forest.
        for (VertexId root : touched_) {
            if (visited_[root]) continue;
            std::uint32_t component_parity = 0;
            dfs_stack_.clear();
            dfs_stack_.emplace_back(root, 0);
            visited_[root] = 1;
            component_parity ^= sigma_[root];
            while (!dfs_stack_.empty()) {
                auto& [v, idx] = dfs_stack_.back();
                const auto incident = graph_.incident(v);
                if (idx == incident.size()) {
                    dfs_stack_.pop_back();
                    continue;
                }
                const auto inc = incident[idx++];
                if (!in_erasure_[inc.edge] || edge_used_[inc.edge]) continue;
                if (visited_[inc.neighbor]) continue;
                edge_used_[inc.edge] = 1;
                visited_[inc.neighbor] = 1;
                component_parity ^= sigma_[inc.neighbor];
                tree_.push_back({inc.edge, v, inc.neighbor});
                dfs_stack_.emplace_back(inc.neighbor, 0);
            }
            if (component_parity) {
                throw std::logic_error("peel: odd syndrome in component rooted at vertex " +
                                       std::to_string(root));
            }
        }
        // A syndrome vertex not covered by the erasure is its own odd
        // component.
        for (VertexId v : syndrome) {
            if (!visited_[v]) {
                throw std::logic_error("peel: odd syndrome in component rooted at vertex " +
                                       std::to_string(v));
            }
        }
    } catch (...) {
        cleanup();
        throw;
    }

    // Peel leaf-first: reverse discovery order guarantees the child end of
    // each tree edge is pendant when its turn comes.
    Correction correction;
    for (auto it = tree_.rbegin(); it != tree_.rend(); ++it) {
        if (sigma_[it->child]) {
            correction.edges.push_back(it->edge);
            sigma_[it->child] = 0;
            sigma_[it->parent] ^= 1;
        }
    }
    cleanup();
    std::sort(correction.edges.begin(), correction.edges.end());
    return correction;
}

Correction peel(const SyndromeGraph& graph,
                std::span<const EdgeId> erasure_prime,
                std::span<const VertexId> syndrome) {
    Peeler peeler(graph);
    return peeler.peel(erasure_prime, syndrome);
}

}  // namespace ufd
