#include "ufd/homology.hpp"

#include <stdexcept>

#include "ufd/noise.hpp"

namespace ufd {

Verdict judge(const SyndromeGraph& graph, std::span<const EdgeId> residual) {
    if (!syndrome_of(graph, residual).empty()) {
        throw std::logic_error("judge: residual has nonempty syndrome, not a cycle");
    }
    Verdict verdict;
    verdict.class_bits[0] = static_cast<std::uint8_t>(crossing_parity(graph, residual, Cut::X));
    verdict.class_bits[1] = static_cast<std::uint8_t>(crossing_parity(graph, residual, Cut::Y));
    verdict.failed = verdict.class_bits[0] != 0 || verdict.class_bits[1] != 0;
    return verdict;
}

}  // namespace ufd
