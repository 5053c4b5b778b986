#pragma once

#include <array>
#include <span>

#include "ufd/lattice.hpp"

namespace ufd {

/// Homology class of a residual error. The trial failed unless the residual
/// is a stabilizer, i.e. both crossing parities vanish.
struct Verdict {
    bool failed = false;
    std::array<std::uint8_t, 2> class_bits{0, 0};  // (x-cut parity, y-cut parity)
};

/// Classifies a residual cycle (typically E_Z xor C). The residual must have
/// an empty syndrome; a nonempty one means the decoder pipeline broke its
/// contract and raises std::logic_error. On Torus3D only the two spatial
/// cuts are consulted: pure time-direction winding is not a failure.
Verdict judge(const SyndromeGraph& graph, std::span<const EdgeId> residual);

}  // namespace ufd
