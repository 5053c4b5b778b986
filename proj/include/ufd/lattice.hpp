#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ufd {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = UINT32_MAX;

enum class LatticeDim { Torus2D, Torus3D };

enum class Cut { X = 0, Y = 1 };

/// Immutable decoding graph for an L x L toric code or an L x L x L periodic
/// lattice of repeated syndrome measurements. Vertices are syndrome checks,
/// edges carry one qubit (2d) or one qubit / one measurement outcome (3d).
///
/// Numbering is a pure function of (dim, L):
///   2d: vertex (r,c) = r*L + c; horizontal edges [0, L^2) then vertical
///       edges [L^2, 2L^2), both row-major.
///   3d: vertex (x,y,t) = (t*L + y)*L + x; x-edges [0, L^3), y-edges
///       [L^3, 2L^3), t-edges [2L^3, 3L^3), each in vertex order.
class SyndromeGraph {
public:
    struct IncidentEntry {
        EdgeId edge;
        VertexId neighbor;
    };

    LatticeDim dim() const { return dim_; }
    std::uint32_t size() const { return size_; }
    std::uint32_t distance() const { return distance_; }
    std::uint32_t vertex_count() const { return vertex_count_; }
    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(endpoints_.size()); }

    const std::array<VertexId, 2>& endpoints(EdgeId e) const { return endpoints_[e]; }

    std::span<const IncidentEntry> incident(VertexId v) const {
        return {incident_.data() + incident_offset_[v],
                incident_.data() + incident_offset_[v + 1]};
    }
    std::uint32_t degree(VertexId v) const {
        return incident_offset_[v + 1] - incident_offset_[v];
    }

    /// Edges of the chosen logical cut, in ascending id order. Cuts are
    /// realized as the edges dual to the x=0 / y=0 coordinate hyperplane,
    /// i.e. the wrap-around edges in that direction. On Torus3D both cuts
    /// are spatial; the time direction carries no logical information.
    std::span<const EdgeId> cut_edges(Cut cut) const { return cuts_[static_cast<int>(cut)]; }

    bool in_cut(EdgeId e, Cut cut) const {
        return (cut_mask_[e] & (cut == Cut::X ? 1u : 2u)) != 0;
    }

    /// Torus3D only: true for edges along the time direction (measurement
    /// errors); false for space-like edges (qubit errors). Always false in 2d.
    bool is_timelike(EdgeId e) const { return timelike_[e] != 0; }

private:
    friend SyndromeGraph build_torus_2d(std::uint32_t L);
    friend SyndromeGraph build_torus_3d(std::uint32_t L);

    LatticeDim dim_ = LatticeDim::Torus2D;
    std::uint32_t size_ = 0;
    std::uint32_t distance_ = 0;
    std::uint32_t vertex_count_ = 0;
    std::vector<std::array<VertexId, 2>> endpoints_;
    std::vector<std::uint32_t> incident_offset_;
    std::vector<IncidentEntry> incident_;
    std::array<std::vector<EdgeId>, 2> cuts_;
    std::vector<std::uint8_t> cut_mask_;
    std::vector<std::uint8_t> timelike_;
};

/// L x L torus: L^2 vertices, 2L^2 edges, every vertex of degree 4, d = L.
/// Throws std::invalid_argument for L < 2.
SyndromeGraph build_torus_2d(std::uint32_t L);

/// L x L x L periodic cubic lattice: L^3 vertices, 3L^3 edges, degree 6,
/// d = L. Periodic in time as well as space. Throws for L < 2.
SyndromeGraph build_torus_3d(std::uint32_t L);

/// Parity of |edges ∩ cut|. Edges may contain duplicates; each occurrence
/// counts.
int crossing_parity(const SyndromeGraph& graph, std::span<const EdgeId> edges, Cut cut);

}  // namespace ufd
