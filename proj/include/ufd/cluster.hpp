#pragma once

#include <tuple>
#include <cstdint>
#include <span>
#include <vector>

#include "ufd/lattice.hpp"

namespace ufd {

enum class EdgeGrowth : std::uint8_t { Unoccupied = 0, HalfGrown = 1, Grown = 2 };

enum class GrowthStrategy {
    UniformNaive,  // all odd clusters per round, flat-label union-find
    UniformFast,   // all odd clusters per round, weighted union + path compression
    WeightedFast,  // one cluster per iteration: the one with the smallest boundary list
};

/// Per-edge growth state. Edges only ever move forward:
/// Unoccupied -> HalfGrown -> Grown, or straight to Grown for the initial
/// erasure. A half-grown edge remembers the vertex it was grown from.
class SupportTable {
public:
    explicit SupportTable(std::uint32_t edge_count)
        : state_(edge_count, 0), origin_(edge_count, kNoVertex) {}

    void reset(std::span<const EdgeId> erasure) {
        std::fill(state_.begin(), state_.end(), std::uint8_t{0});
        for (EdgeId e : erasure) state_[e] = 2;
    }

    EdgeGrowth state(EdgeId e) const { return static_cast<EdgeGrowth>(state_[e]); }
    bool grown(EdgeId e) const { return state_[e] == 2; }
    VertexId half_origin(EdgeId e) const { return origin_[e]; }

    /// Advances edge e by one half step, growing from vertex `from`.
    /// Returns true exactly when the edge just became fully grown.
    bool advance(EdgeId e, VertexId from) {
        const std::uint8_t s = state_[e];
        if (s == 0) {
            state_[e] = 1;
            origin_[e] = from;
            return false;
        }
        if (s == 1) {
            state_[e] = 2;
            return true;
        }
        return false;
    }

    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(state_.size()); }

private:
    std::vector<std::uint8_t> state_;
    std::vector<VertexId> origin_;
};

struct GrowStats {
    std::uint32_t fusion_edges = 0;  // newly grown edges entering the fusion list
    std::uint32_t fusions = 0;       // unions actually performed
};

struct ValidationResult {
    std::vector<EdgeId> modified_erasure;  // ascending
    std::uint32_t growth_rounds = 0;
    std::uint64_t union_calls = 0;
    std::uint64_t find_calls = 0;
};

/// Union-find forest over lattice vertices with per-root size, syndrome
/// parity and boundary list, plus the Support table of growing edges.
/// Buffers are sized once per graph and reused across init() calls; a forest
/// is a single-trial structure and must not be shared between threads.
class ClusterForest {
public:
    explicit ClusterForest(const SyndromeGraph& graph);

    /// One cluster per connected component of (V, erasure), singletons
    /// included, with depth <= 1 trees rooted at the smallest component
    /// vertex. Also seeds Support and the odd-root list (ascending).
    void init(std::span<const EdgeId> erasure, std::span<const VertexId> syndrome);

    /// Root of v's cluster, compressing the whole path behind it.
    VertexId find(VertexId v);

    /// Merges two distinct roots, the smaller tree under the larger
    /// (ties: lower vertex index wins). Sizes add, parities xor. Boundary
    /// lists are NOT touched here; grow_round handles them separately.
    /// Returns the surviving root. Throws std::logic_error if ru == rv.
    VertexId unite(VertexId ru, VertexId rv);

    /// One growth step for the given roots (all of them, in order):
    ///   (i) every boundary vertex advances its incident edges by one half
    ///       step; edges that become fully grown are fusion edges,
    ///  (ii) fusion edges whose endpoints lie in distinct clusters merge
    ///       them, the rest are dropped,
    /// (iii) each surviving fusion edge appends the pre-fusion smaller
    ///       cluster's boundary list to the larger one's,
    ///  (iv) the odd-root list is re-rooted without duplicates,
    ///   (v) boundary lists of surviving grown clusters are pruned of
    ///       vertices whose incident edges are all grown,
    ///  (vi) even roots leave the odd list.
    GrowStats grow_round(std::span<const VertexId> roots);

    const std::vector<VertexId>& odd_roots() const { return odd_roots_; }
    const SupportTable& support() const { return support_; }

    // Root-stored bookkeeping (valid when r is a root).
    std::uint32_t cluster_size(VertexId r) const { return size_[r]; }
    int cluster_parity(VertexId r) const { return parity_[r]; }
    std::uint32_t boundary_length(VertexId r) const { return bnd_len_[r]; }
    std::vector<VertexId> boundary_vertices(VertexId r) const;

    VertexId parent(VertexId v) const { return parent_[v]; }

    std::uint64_t find_calls() const { return find_calls_; }
    std::uint64_t union_calls() const { return union_calls_; }

private:
    friend class Validator;

    void prune_boundary(VertexId root);

    /// Steps (i)-(iii) for one odd root: grow its boundary by a half edge,
    /// fuse across the newly grown edges, splice boundary lists. Returns the
    /// surviving root of the grown cluster. Used by the weighted strategy,
    /// which updates the odd set incrementally instead of re-rooting the
    /// whole list like grow_round does.
    VertexId grow_one(VertexId root, std::uint32_t& removed_odd);

    const SyndromeGraph& graph_;
    SupportTable support_;
    std::vector<VertexId> parent_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint8_t> parity_;
    std::vector<std::uint8_t> on_list_;
    // Boundary lists as intrusive singly linked lists: every vertex sits in
    // at most one list for the whole run, so appending is O(1).
    std::vector<VertexId> bnd_head_, bnd_tail_, bnd_next_;
    std::vector<std::uint32_t> bnd_len_;
    std::vector<VertexId> odd_roots_;
    // Scratch, reused each round.
    std::vector<VertexId> grow_scratch_, roots_scratch_;
    std::vector<EdgeId> fusion_edges_;
    std::vector<std::pair<VertexId, VertexId>> merges_;  // (winner, loser)
    std::vector<VertexId> bfs_stack_;
    std::uint64_t find_calls_ = 0;
    std::uint64_t union_calls_ = 0;
};

/// Syndrome validation: grows odd clusters until every cluster holds an even
/// number of syndrome vertices, then reports every fully grown edge as the
/// modified erasure. All strategies produce a valid result; UniformNaive and
/// UniformFast produce identical modified erasures. WeightedFast grows one
/// cluster per iteration: the smallest boundary list, ties going first to
/// the least recently grown cluster and then to the lowest root index, so
/// equal-sized clusters advance in lockstep half edges.
/// Throws std::invalid_argument if |syndrome| is odd (no valid erasure
/// exists on a closed lattice).
ValidationResult validate(const SyndromeGraph& graph,
                          std::span<const EdgeId> erasure,
                          std::span<const VertexId> syndrome,
                          GrowthStrategy strategy);

/// Reusable-workspace form of validate() for hot loops.
class Validator {
public:
    explicit Validator(const SyndromeGraph& graph) : forest_(graph) {}

    ValidationResult run(std::span<const EdgeId> erasure,
                         std::span<const VertexId> syndrome,
                         GrowthStrategy strategy);

    ClusterForest& forest() { return forest_; }

private:
    ClusterForest forest_;
    // Weighted-growth scratch: per-root growth stamps plus the lazy min-heap.
    std::vector<std::uint64_t> stamp_;
    std::vector<std::tuple<std::uint32_t, std::uint64_t, VertexId>> heap_;
};

/// Round-by-round reference: relabels connected components of the grown
/// subgraph from scratch every round, no union-find, no boundary lists.
/// Grows the same half edges as the fast path, so the returned modified
/// erasure must match validate(..., UniformFast) exactly.
std::vector<EdgeId> validate_equivalence_oracle(const SyndromeGraph& graph,
                                                std::span<const EdgeId> erasure,
                                                std::span<const VertexId> syndrome);

/// Two-parameter Ackermann function, A(0,j) = 2j, A(i,0) = 0, A(i,1) = 2,
/// A(i,j) = A(i-1, A(i,j-1)). Saturates at UINT64_MAX.
std::uint64_t ackermann(std::uint64_t i, std::uint64_t j);

/// alpha(n) = min { i : A(i,4) >= log2 n }, evaluated exactly as
/// min { i : 2^A(i,4) >= n }. Requires n >= 1. At most 2 for any uint64.
int inverse_ackermann(std::uint64_t n);

/// Same function with log2(n) supplied directly, for arguments far beyond
/// 64-bit range: alpha = 3 begins at log2 n > 65536.
int inverse_ackermann_from_log2(std::uint64_t log2_n);

}  // namespace ufd
