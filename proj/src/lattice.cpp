#include "ufd/lattice.hpp"

#include <stdexcept>

namespace ufd {

namespace {

// Builds the CSR incidence structure once all endpoints are known. Edges are
// appended in id order, so every per-vertex incident list ends up sorted by
// EdgeId.
void build_incidence(SyndromeGraph::IncidentEntry* incident,
                     std::uint32_t* offsets,
                     std::uint32_t vertex_count,
                     const std::vector<std::array<VertexId, 2>>& endpoints) {
    std::vector<std::uint32_t> degree(vertex_count, 0);
    for (const auto& ep : endpoints) {
        ++degree[ep[0]];
        ++degree[ep[1]];
    }
    offsets[0] = 0;
    for (std::uint32_t v = 0; v < vertex_count; ++v) {
        offsets[v + 1] = offsets[v] + degree[v];
    }
    std::vector<std::uint32_t> cursor(offsets, offsets + vertex_count);
    for (EdgeId e = 0; e < endpoints.size(); ++e) {
        const auto [u, v] = endpoints[e];
        incident[cursor[u]++] = {e, v};
        incident[cursor[v]++] = {e, u};
    }
}

}  // namespace

SyndromeGraph build_torus_2d(std::uint32_t L) {
    if (L < 2) {
        throw std::invalid_argument("build_torus_2d: L must be >= 2");
    }
    SyndromeGraph g;
    g.dim_ = LatticeDim::Torus2D;
    g.size_ = L;
    g.distance_ = L;
    g.vertex_count_ = L * L;

    const std::uint32_t n_edges = 2 * L * L;
    g.endpoints_.reserve(n_edges);

    auto vid = [L](std::uint32_t r, std::uint32_t c) { return r * L + c; };

    // Horizontal edges: (r,c) -> (r, c+1 mod L), ids [0, L^2).
    for (std::uint32_t r = 0; r < L; ++r) {
        for (std::uint32_t c = 0; c < L; ++c) {
            g.endpoints_.push_back({vid(r, c), vid(r, (c + 1) % L)});
        }
    }
    // Vertical edges: (r,c) -> (r+1 mod L, c), ids [L^2, 2L^2).
    for (std::uint32_t r = 0; r < L; ++r) {
        for (std::uint32_t c = 0; c < L; ++c) {
            g.endpoints_.push_back({vid(r, c), vid((r + 1) % L, c)});
        }
    }

    g.incident_offset_.resize(g.vertex_count_ + 1);
    g.incident_.resize(2 * n_edges);
    build_incidence(g.incident_.data(), g.incident_offset_.data(), g.vertex_count_, g.endpoints_);

    g.cut_mask_.assign(n_edges, 0);
    g.timelike_.assign(n_edges, 0);
    // x-cut: horizontal wrap edges at c = L-1; y-cut: vertical wrap edges
    // at r = L-1.
    for (std::uint32_t r = 0; r < L; ++r) {
        const EdgeId e = r * L + (L - 1);
        g.cuts_[0].push_back(e);
        g.cut_mask_[e] |= 1u;
    }
    for (std::uint32_t c = 0; c < L; ++c) {
        const EdgeId e = L * L + (L - 1) * L + c;
        g.cuts_[1].push_back(e);
        g.cut_mask_[e] |= 2u;
    }
    return g;
}

SyndromeGraph build_torus_3d(std::uint32_t L) {
    if (L < 2) {
        throw std::invalid_argument("build_torus_3d: L must be >= 2");
    }
    SyndromeGraph g;
    g.dim_ = LatticeDim::Torus3D;
    g.size_ = L;
    g.distance_ = L;
    g.vertex_count_ = L * L * L;

    const std::uint32_t n = g.vertex_count_;
    const std::uint32_t n_edges = 3 * n;
    g.endpoints_.reserve(n_edges);

    auto vid = [L](std::uint32_t x, std::uint32_t y, std::uint32_t t) {
        return (t * L + y) * L + x;
    };

    // x-edges [0, n), y-edges [n, 2n), t-edges [2n, 3n), each in vertex order.
    for (std::uint32_t t = 0; t < L; ++t)
        for (std::uint32_t y = 0; y < L; ++y)
            for (std::uint32_t x = 0; x < L; ++x)
                g.endpoints_.push_back({vid(x, y, t), vid((x + 1) % L, y, t)});
    for (std::uint32_t t = 0; t < L; ++t)
        for (std::uint32_t y = 0; y < L; ++y)
            for (std::uint32_t x = 0; x < L; ++x)
                g.endpoints_.push_back({vid(x, y, t), vid(x, (y + 1) % L, t)});
    for (std::uint32_t t = 0; t < L; ++t)
        for (std::uint32_t y = 0; y < L; ++y)
            for (std::uint32_t x = 0; x < L; ++x)
                g.endpoints_.push_back({vid(x, y, t), vid(x, y, (t + 1) % L)});

    g.incident_offset_.resize(n + 1);
    g.incident_.resize(2 * n_edges);
    build_incidence(g.incident_.data(), g.incident_offset_.data(), n, g.endpoints_);

    g.cut_mask_.assign(n_edges, 0);
    g.timelike_.assign(n_edges, 0);
    for (EdgeId e = 2 * n; e < 3 * n; ++e) {
        g.timelike_[e] = 1;
    }
    // Spatial cuts only: x-edges wrapping at x = L-1 and y-edges wrapping at
    // y = L-1, L^2 edges each. Time-direction winding is not a logical
    // failure, so no time cut exists.
    for (std::uint32_t t = 0; t < L; ++t) {
        for (std::uint32_t y = 0; y < L; ++y) {
            const EdgeId e = vid(L - 1, y, t);
            g.cuts_[0].push_back(e);
            g.cut_mask_[e] |= 1u;
        }
    }
    for (std::uint32_t t = 0; t < L; ++t) {
        for (std::uint32_t x = 0; x < L; ++x) {
            const EdgeId e = n + vid(x, L - 1, t);
            g.cuts_[1].push_back(e);
            g.cut_mask_[e] |= 2u;
        }
    }
    return g;
}

int crossing_parity(const SyndromeGraph& graph, std::span<const EdgeId> edges, Cut cut) {
    int parity = 0;
    for (EdgeId e : edges) {
        parity ^= graph.in_cut(e, cut) ? 1 : 0;
    }
    return parity;
}

}  // namespace ufd
