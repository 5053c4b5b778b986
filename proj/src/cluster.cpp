#include "ufd/cluster.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ufd {

ClusterForest::ClusterForest(const SyndromeGraph& graph)
    : graph_(graph),
      support_(graph.edge_count()),
      parent_(graph.vertex_count()),
      size_(graph.vertex_count()),
      parity_(graph.vertex_count()),
      on_list_(graph.vertex_count()),
      bnd_head_(graph.vertex_count()),
      bnd_tail_(graph.vertex_count()),
      bnd_next_(graph.vertex_count()),
      bnd_len_(graph.vertex_count()) {}

void ClusterForest::init(std::span<const EdgeId> erasure, std::span<const VertexId> syndrome) {
    const std::uint32_t n = graph_.vertex_count();
    support_.reset(erasure);
    std::fill(on_list_.begin(), on_list_.end(), std::uint8_t{0});
    std::fill(parity_.begin(), parity_.end(), std::uint8_t{0});
    std::fill(parent_.begin(), parent_.end(), kNoVertex);
    odd_roots_.clear();
    find_calls_ = 0;
    union_calls_ = 0;
    for (VertexId v : syndrome) parity_[v] = 1;

    // Explore connected components of the erased subgraph in ascending vertex
    // order; the first vertex reached is the smallest of its component and
    // becomes the root, giving depth <= 1 trees and ascending odd roots.
    for (VertexId v = 0; v < n; ++v) {
        if (parent_[v] != kNoVertex) continue;
        const VertexId root = v;
        parent_[root] = root;
        bnd_head_[root] = kNoVertex;
        bnd_tail_[root] = kNoVertex;
        bnd_len_[root] = 0;
        std::uint32_t members = 0;
        std::uint8_t parity = 0;
        bfs_stack_.clear();
        bfs_stack_.push_back(root);
        while (!bfs_stack_.empty()) {
            const VertexId u = bfs_stack_.back();
            bfs_stack_.pop_back();
            ++members;
            parity ^= parity_[u];
            bool boundary = false;
            for (const auto& inc : graph_.incident(u)) {
                if (!support_.grown(inc.edge)) {
                    boundary = true;
                    continue;
                }
                if (parent_[inc.neighbor] == kNoVertex) {
                    parent_[inc.neighbor] = root;
                    bfs_stack_.push_back(inc.neighbor);
                }
            }
            if (boundary) {
                bnd_next_[u] = kNoVertex;
                if (bnd_tail_[root] == kNoVertex) {
                    bnd_head_[root] = u;
                } else {
                    bnd_next_[bnd_tail_[root]] = u;
                }
                bnd_tail_[root] = u;
                ++bnd_len_[root];
            }
        }
        size_[root] = members;
        parity_[root] = parity;
        if (parity) {
            odd_roots_.push_back(root);
            on_list_[root] = 1;
        }
    }
}

VertexId ClusterForest::find(VertexId v) {
    ++find_calls_;
    VertexId root = v;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[v] != root) {
        const VertexId next = parent_[v];
        parent_[v] = root;
        v = next;
    }
    return root;
}

VertexId ClusterForest::unite(VertexId ru, VertexId rv) {
    if (ru == rv) {
        throw std::logic_error("unite: roots must be distinct");
    }
    ++union_calls_;
    VertexId winner = ru, loser = rv;
    if (size_[rv] > size_[ru] || (size_[rv] == size_[ru] && rv < ru)) {
        winner = rv;
        loser = ru;
    }
    parent_[loser] = winner;
    size_[winner] += size_[loser];
    parity_[winner] ^= parity_[loser];
    return winner;
}

GrowStats ClusterForest::grow_round(std::span<const VertexId> roots) {
    GrowStats stats;
    // Snapshot: callers usually pass odd_roots_, which steps (iv)/(vi) rewrite.
    grow_scratch_.assign(roots.begin(), roots.end());
    fusion_edges_.clear();
    merges_.clear();

    // (i) Growth: every boundary vertex of every listed cluster advances its
    // incident edges by one half step. Stale interior vertices advance
    // nothing because all their edges are already grown.
    for (VertexId r : grow_scratch_) {
        for (VertexId b = bnd_head_[r]; b != kNoVertex; b = bnd_next_[b]) {
            for (const auto& inc : graph_.incident(b)) {
                if (support_.advance(inc.edge, b)) {
                    fusion_edges_.push_back(inc.edge);
                }
            }
        }
    }
    stats.fusion_edges = static_cast<std::uint32_t>(fusion_edges_.size());

    // (ii) Fusion. Pre-fusion winner/loser pairs are recorded so (iii) can
    // append boundary lists by the sizes the clusters had when they merged.
    for (EdgeId e : fusion_edges_) {
        const auto& ep = graph_.endpoints(e);
        const VertexId ru = find(ep[0]);
        const VertexId rv = find(ep[1]);
        if (ru == rv) continue;
        const VertexId winner = unite(ru, rv);
        merges_.emplace_back(winner, winner == ru ? rv : ru);
        ++stats.fusions;
    }

    // (iii) Boundary list fusion: smaller (pre-fusion) list appended to the
    // larger one's tail, O(1) per merge.
    for (const auto& [winner, loser] : merges_) {
        if (bnd_len_[loser] == 0) continue;
        if (bnd_len_[winner] == 0) {
            bnd_head_[winner] = bnd_head_[loser];
        } else {
            bnd_next_[bnd_tail_[winner]] = bnd_head_[loser];
        }
        bnd_tail_[winner] = bnd_tail_[loser];
        bnd_len_[winner] += bnd_len_[loser];
        bnd_len_[loser] = 0;
        bnd_head_[loser] = kNoVertex;
        bnd_tail_[loser] = kNoVertex;
    }

    // (iv) Re-root the odd list without creating duplicates.
    for (VertexId u : odd_roots_) on_list_[u] = 0;
    roots_scratch_.clear();
    for (VertexId u : odd_roots_) {
        const VertexId r = find(u);
        if (!on_list_[r]) {
            on_list_[r] = 1;
            roots_scratch_.push_back(r);
        }
    }
    odd_roots_.swap(roots_scratch_);

    // (v) Prune boundary lists of the clusters this round touched: the grown
    // ones and everything they merged with. Lists of untouched odd clusters
    // are left alone (they did not change).
    for (VertexId r : grow_scratch_) {
        const VertexId root = find(r);
        if (on_list_[root] == 1) {
            prune_boundary(root);
            on_list_[root] = 2;  // pruned this round
        }
    }
    for (VertexId r : odd_roots_) {
        if (on_list_[r] == 2) on_list_[r] = 1;
    }

    // (vi) Drop even clusters from the odd list.
    roots_scratch_.clear();
    for (VertexId r : odd_roots_) {
        if (parity_[r]) {
            roots_scratch_.push_back(r);
        } else {
            on_list_[r] = 0;
        }
    }
    odd_roots_.swap(roots_scratch_);
    return stats;
}

VertexId ClusterForest::grow_one(VertexId root, std::uint32_t& removed_odd) {
    fusion_edges_.clear();
    merges_.clear();
    for (VertexId b = bnd_head_[root]; b != kNoVertex; b = bnd_next_[b]) {
        for (const auto& inc : graph_.incident(b)) {
            if (support_.advance(inc.edge, b)) {
                fusion_edges_.push_back(inc.edge);
            }
        }
    }
    removed_odd = 0;
    if (on_list_[root]) {
        on_list_[root] = 0;
        ++removed_odd;
    }
    for (EdgeId e : fusion_edges_) {
        const auto& ep = graph_.endpoints(e);
        const VertexId ru = find(ep[0]);
        const VertexId rv = find(ep[1]);
        if (ru == rv) continue;
        // Every fusion touches the growing cluster, so the merges chain into
        // a single blob rooted at find(root) afterwards.
        if (on_list_[ru]) {
            on_list_[ru] = 0;
            ++removed_odd;
        }
        if (on_list_[rv]) {
            on_list_[rv] = 0;
            ++removed_odd;
        }
        const VertexId winner = unite(ru, rv);
        merges_.emplace_back(winner, winner == ru ? rv : ru);
    }
    for (const auto& [winner, loser] : merges_) {
        if (bnd_len_[loser] == 0) continue;
        if (bnd_len_[winner] == 0) {
            bnd_head_[winner] = bnd_head_[loser];
        } else {
            bnd_next_[bnd_tail_[winner]] = bnd_head_[loser];
        }
        bnd_tail_[winner] = bnd_tail_[loser];
        bnd_len_[winner] += bnd_len_[loser];
        bnd_len_[loser] = 0;
        bnd_head_[loser] = kNoVertex;
        bnd_tail_[loser] = kNoVertex;
    }
    const VertexId blob = merges_.empty() ? root : find(root);
    prune_boundary(blob);
    return blob;
}

void ClusterForest::prune_boundary(VertexId root) {
    VertexId prev = kNoVertex;
    VertexId v = bnd_head_[root];
    while (v != kNoVertex) {
        bool boundary = false;
        for (const auto& inc : graph_.incident(v)) {
            if (!support_.grown(inc.edge)) {
                boundary = true;
                break;
            }
        }
        const VertexId next = bnd_next_[v];
        if (boundary) {
            prev = v;
        } else {
            if (prev == kNoVertex) {
                bnd_head_[root] = next;
            } else {
                bnd_next_[prev] = next;
            }
            if (next == kNoVertex) bnd_tail_[root] = prev;
            --bnd_len_[root];
        }
        v = next;
    }
}

std::vector<VertexId> ClusterForest::boundary_vertices(VertexId r) const {
    std::vector<VertexId> out;
    out.reserve(bnd_len_[r]);
    for (VertexId v = bnd_head_[r]; v != kNoVertex; v = bnd_next_[v]) {
        out.push_back(v);
    }
    return out;
}

namespace {

void check_even_syndrome(std::span<const VertexId> syndrome) {
    if (syndrome.size() % 2 != 0) {
        throw std::invalid_argument(
            "validate: odd syndrome weight has no erasure supporting it on a closed lattice");
    }
}

std::vector<EdgeId> collect_grown(const SupportTable& support) {
    std::vector<EdgeId> grown;
    for (EdgeId e = 0; e < support.edge_count(); ++e) {
        if (support.grown(e)) grown.push_back(e);
    }
    return grown;
}

/// Algorithm-1 style validation: flat cluster labels in a lookup table, the
/// smaller member list relabeled on every merge, boundaries rediscovered by
/// scanning the vertices each round. Quadratic, used as the UniformNaive
/// strategy.
ValidationResult validate_naive(const SyndromeGraph& graph,
                                std::span<const EdgeId> erasure,
                                std::span<const VertexId> syndrome) {
    const std::uint32_t n = graph.vertex_count();
    SupportTable support(graph.edge_count());
    support.reset(erasure);

    std::vector<VertexId> label(n);
    std::vector<std::vector<VertexId>> members(n);
    std::vector<std::uint8_t> parity(n, 0), is_syndrome(n, 0);
    for (VertexId v : syndrome) is_syndrome[v] = 1;

    ValidationResult result;

    // Initial clusters: components of the erased subgraph.
    std::vector<VertexId> stack;
    std::fill(label.begin(), label.end(), kNoVertex);
    for (VertexId v = 0; v < n; ++v) {
        if (label[v] != kNoVertex) continue;
        stack.push_back(v);
        label[v] = v;
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            members[v].push_back(u);
            parity[v] ^= is_syndrome[u];
            for (const auto& inc : graph.incident(u)) {
                if (support.grown(inc.edge) && label[inc.neighbor] == kNoVertex) {
                    label[inc.neighbor] = v;
                    stack.push_back(inc.neighbor);
                }
            }
        }
    }

    auto odd_clusters_remain = [&] {
        for (VertexId v = 0; v < n; ++v) {
            if (label[v] == v && parity[v]) return true;
        }
        return false;
    };

    std::vector<EdgeId> fusion_edges;
    while (odd_clusters_remain()) {
        ++result.growth_rounds;
        fusion_edges.clear();
        for (VertexId v = 0; v < n; ++v) {
            if (!parity[label[v]]) continue;
            bool boundary = false;
            for (const auto& inc : graph.incident(v)) {
                if (!support.grown(inc.edge)) {
                    boundary = true;
                    break;
                }
            }
            if (!boundary) continue;
            for (const auto& inc : graph.incident(v)) {
                if (support.advance(inc.edge, v)) fusion_edges.push_back(inc.edge);
            }
        }
        for (EdgeId e : fusion_edges) {
            const auto& ep = graph.endpoints(e);
            VertexId lu = label[ep[0]], lv = label[ep[1]];
            result.find_calls += 2;
            if (lu == lv) continue;
            if (members[lu].size() < members[lv].size()) std::swap(lu, lv);
            for (VertexId w : members[lv]) label[w] = lu;
            members[lu].insert(members[lu].end(), members[lv].begin(), members[lv].end());
            members[lv].clear();
            parity[lu] ^= parity[lv];
            ++result.union_calls;
        }
    }

    result.modified_erasure = collect_grown(support);
    return result;
}

}  // namespace

ValidationResult Validator::run(std::span<const EdgeId> erasure,
                                std::span<const VertexId> syndrome,
                                GrowthStrategy strategy) {
    check_even_syndrome(syndrome);
    if (strategy == GrowthStrategy::UniformNaive) {
        return validate_naive(forest_.graph_, erasure, syndrome);
    }

    ValidationResult result;
    forest_.init(erasure, syndrome);
    if (strategy == GrowthStrategy::UniformFast) {
        while (!forest_.odd_roots().empty()) {
            forest_.grow_round(forest_.odd_roots());
            ++result.growth_rounds;
        }
    } else {
        // Weighted growth: one iteration grows the odd cluster with the
        // smallest boundary list, ties resolved FIFO (stamp of the last
        // growth) and then by root index. Lengths may overcount entries that
        // went interior since the last prune; that only affects the growth
        // schedule, never validity. A lazy min-heap keyed by
        // (length, stamp, root) drives the selection; stale entries are
        // dropped when popped.
        using HeapEntry = std::tuple<std::uint32_t, std::uint64_t, VertexId>;
        heap_.clear();
        if (stamp_.size() < forest_.graph_.vertex_count()) {
            stamp_.resize(forest_.graph_.vertex_count());
        }
        std::uint32_t odd_count = 0;
        for (VertexId r : forest_.odd_roots()) {
            stamp_[r] = 0;
            heap_.push_back({forest_.boundary_length(r), 0, r});
            ++odd_count;
        }
        std::make_heap(heap_.begin(), heap_.end(), std::greater<HeapEntry>{});
        std::uint64_t iteration = 0;
        while (odd_count > 0) {
            std::pop_heap(heap_.begin(), heap_.end(), std::greater<HeapEntry>{});
            const auto [len, stamp, root] = heap_.back();
            heap_.pop_back();
            if (!forest_.on_list_[root] || forest_.bnd_len_[root] != len ||
                stamp_[root] != stamp) {
                continue;  // superseded by a merge, prune or regrowth
            }
            ++iteration;
            std::uint32_t removed_odd = 0;
            const VertexId blob = forest_.grow_one(root, removed_odd);
            odd_count -= removed_odd;
            if (forest_.parity_[blob]) {
                forest_.on_list_[blob] = 1;
                stamp_[blob] = iteration;
                heap_.push_back({forest_.bnd_len_[blob], iteration, blob});
                std::push_heap(heap_.begin(), heap_.end(), std::greater<HeapEntry>{});
                ++odd_count;
            }
            ++result.growth_rounds;
        }
        forest_.odd_roots_.clear();
    }
    result.modified_erasure = collect_grown(forest_.support());
    result.union_calls = forest_.union_calls();
    result.find_calls = forest_.find_calls();
    return result;
}

ValidationResult validate(const SyndromeGraph& graph,
                          std::span<const EdgeId> erasure,
                          std::span<const VertexId> syndrome,
                          GrowthStrategy strategy) {
    Validator validator(graph);
    return validator.run(erasure, syndrome, strategy);
}

std::vector<EdgeId> validate_equivalence_oracle(const SyndromeGraph& graph,
                                                std::span<const EdgeId> erasure,
                                                std::span<const VertexId> syndrome) {
    check_even_syndrome(syndrome);
    const std::uint32_t n = graph.vertex_count();
    std::vector<std::uint8_t> half(graph.edge_count(), 0);
    for (EdgeId e : erasure) half[e] = 2;
    std::vector<std::uint8_t> is_syndrome(n, 0);
    for (VertexId v : syndrome) is_syndrome[v] = 1;

    std::vector<VertexId> label(n);
    std::vector<std::uint8_t> odd(n);
    std::vector<VertexId> stack;

    for (;;) {
        // Label components of the grown subgraph from scratch.
        std::fill(label.begin(), label.end(), kNoVertex);
        std::fill(odd.begin(), odd.end(), std::uint8_t{0});
        bool any_odd = false;
        for (VertexId v = 0; v < n; ++v) {
            if (label[v] != kNoVertex) continue;
            std::uint8_t parity = 0;
            stack.push_back(v);
            label[v] = v;
            while (!stack.empty()) {
                const VertexId u = stack.back();
                stack.pop_back();
                parity ^= is_syndrome[u];
                for (const auto& inc : graph.incident(u)) {
                    if (half[inc.edge] == 2 && label[inc.neighbor] == kNoVertex) {
                        label[inc.neighbor] = v;
                        stack.push_back(inc.neighbor);
                    }
                }
            }
            odd[v] = parity;
            any_odd |= parity != 0;
        }
        if (!any_odd) break;

        // Advance every incident edge of every boundary vertex of every odd
        // cluster by one half step, capped at fully grown.
        for (VertexId v = 0; v < n; ++v) {
            if (!odd[label[v]]) continue;
            bool boundary = false;
            for (const auto& inc : graph.incident(v)) {
                if (half[inc.edge] != 2) {
                    boundary = true;
                    break;
                }
            }
            if (!boundary) continue;
            for (const auto& inc : graph.incident(v)) {
                if (half[inc.edge] < 2) ++half[inc.edge];
            }
        }
    }

    std::vector<EdgeId> grown;
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        if (half[e] == 2) grown.push_back(e);
    }
    return grown;
}

namespace {

constexpr std::uint64_t kSat = UINT64_MAX;

std::uint64_t twice_sat(std::uint64_t x) {
    return x > (kSat >> 1) ? kSat : 2 * x;
}

std::uint64_t pow2_sat(std::uint64_t k) {
    return k >= 64 ? kSat : (std::uint64_t{1} << k);
}

}  // namespace

std::uint64_t ackermann(std::uint64_t i, std::uint64_t j) {
    if (i == 0) return twice_sat(j);
    if (j == 0) return 0;
    if (j == 1) return 2;
    if (i == 1) return pow2_sat(j);       // A(1,j) = 2^j
    if (j >= 5) return kSat;              // A(2,5) = 2^65536 already saturates
    return ackermann(i - 1, ackermann(i, j - 1));
}

int inverse_ackermann(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("inverse_ackermann: n must be >= 1");
    }
    // A(i,4) >= log2(n)  <=>  2^A(i,4) >= n.
    int i = 0;
    while (pow2_sat(ackermann(i, 4)) < n) ++i;
    return i;
}

int inverse_ackermann_from_log2(std::uint64_t log2_n) {
    int i = 0;
    while (ackermann(i, 4) < log2_n) ++i;
    return i;
}

}  // namespace ufd
