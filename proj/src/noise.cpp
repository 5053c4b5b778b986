#include "ufd/noise.hpp"

#include <algorithm>
#include <stdexcept>

namespace ufd {

ErrorState sample(const SyndromeGraph& graph, const NoiseParams& params, RngStream& rng) {
    if (params.p_e < 0.0 || params.p_e > 1.0 || params.p_z < 0.0 || params.p_z > 1.0) {
        throw std::invalid_argument("sample: probabilities must lie in [0,1]");
    }
    ErrorState state;
    const std::uint32_t n_edges = graph.edge_count();
    // Partition of the unit interval: [0, p_e/2) erased with Z,
    // [p_e/2, p_e) erased without Z, [p_e, p_e + (1-p_e)p_z) Z only.
    const double pe_half = 0.5 * params.p_e;
    const double z_cut = params.p_e + (1.0 - params.p_e) * params.p_z;
    std::vector<std::uint8_t> parity(graph.vertex_count(), 0);
    for (EdgeId e = 0; e < n_edges; ++e) {
        const double u = rng.next_double();
        if (u >= z_cut) continue;
        const bool erased = u < params.p_e;
        const bool z = u < pe_half || !erased;
        if (erased) state.erasure.push_back(e);
        if (z) {
            state.pauli_z.push_back(e);
            parity[graph.endpoints(e)[0]] ^= 1;
            parity[graph.endpoints(e)[1]] ^= 1;
        }
    }
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        if (parity[v]) state.syndrome.push_back(v);
    }
    return state;
}

std::vector<VertexId> syndrome_of(const SyndromeGraph& graph, std::span<const EdgeId> pauli_z) {
    std::vector<std::uint8_t> parity(graph.vertex_count(), 0);
    for (EdgeId e : pauli_z) {
        parity[graph.endpoints(e)[0]] ^= 1;
        parity[graph.endpoints(e)[1]] ^= 1;
    }
    std::vector<VertexId> syndrome;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        if (parity[v]) syndrome.push_back(v);
    }
    return syndrome;
}

namespace {

std::vector<EdgeId> sorted_unique(std::span<const EdgeId> edges) {
    std::vector<EdgeId> out(edges.begin(), edges.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

ErrorState inject(const SyndromeGraph& graph,
                  std::span<const EdgeId> erasure,
                  std::span<const EdgeId> pauli_z) {
    ErrorState state;
    state.erasure = sorted_unique(erasure);
    state.pauli_z = sorted_unique(pauli_z);
    for (EdgeId e : state.erasure) {
        if (e >= graph.edge_count()) throw std::invalid_argument("inject: erasure edge out of range");
    }
    for (EdgeId e : state.pauli_z) {
        if (e >= graph.edge_count()) throw std::invalid_argument("inject: pauli_z edge out of range");
    }
    state.syndrome = syndrome_of(graph, state.pauli_z);
    return state;
}

}  // namespace ufd
