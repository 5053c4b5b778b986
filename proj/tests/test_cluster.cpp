#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "ufd/cluster.hpp"
#include "ufd/lattice.hpp"
#include "ufd/noise.hpp"
#include "ufd/peeling.hpp"
#include "ufd/homology.hpp"
#include "ufd/rng.hpp"

using namespace ufd;

namespace {

// Brute-force component labeling of (V, edges): map vertex -> component id
// (smallest member). Test-side oracle, independent of the union-find path.
std::map<VertexId, VertexId> components_of(const SyndromeGraph& g,
                                           const std::vector<EdgeId>& edges) {
    std::map<VertexId, VertexId> label;
    std::set<EdgeId> eset(edges.begin(), edges.end());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (label.count(v)) continue;
        std::vector<VertexId> stack{v};
        label[v] = v;
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            for (const auto& inc : g.incident(u)) {
                if (!eset.count(inc.edge) || label.count(inc.neighbor)) continue;
                label[inc.neighbor] = v;
                stack.push_back(inc.neighbor);
            }
        }
    }
    return label;
}

bool components_all_even(const SyndromeGraph& g,
                         const std::vector<EdgeId>& edges,
                         const std::vector<VertexId>& syndrome) {
    const auto label = components_of(g, edges);
    std::map<VertexId, int> parity;
    for (VertexId v : syndrome) parity[label.at(v)] ^= 1;
    for (const auto& [root, par] : parity) {
        if (par) return false;
    }
    return true;
}

std::vector<EdgeId> random_edges(const SyndromeGraph& g, RngStream& rng, double p) {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (rng.bernoulli(p)) out.push_back(e);
    }
    return out;
}

}  // namespace

TEST_CASE("support table transitions") {
    SupportTable support(4);
    support.reset(std::vector<EdgeId>{2});
    CHECK(support.state(0) == EdgeGrowth::Unoccupied);
    CHECK(support.state(2) == EdgeGrowth::Grown);

    CHECK(!support.advance(0, 7));
    CHECK(support.state(0) == EdgeGrowth::HalfGrown);
    CHECK(support.half_origin(0) == 7);
    CHECK(support.advance(0, 9));  // second half completes the edge
    CHECK(support.state(0) == EdgeGrowth::Grown);
    CHECK(!support.advance(0, 7));  // grown edges never regress
    CHECK(support.state(0) == EdgeGrowth::Grown);
    CHECK(!support.advance(2, 1));
    CHECK(support.state(2) == EdgeGrowth::Grown);
}

TEST_CASE("find on singletons and after unions") {
    const auto g = build_torus_2d(4);
    ClusterForest forest(g);
    forest.init({}, {});
    CHECK(forest.find(5) == 5);

    const VertexId r = forest.unite(3, 7);
    CHECK(forest.find(3) == r);
    CHECK(forest.find(7) == r);
    CHECK(forest.cluster_size(r) == 2);
}

TEST_CASE("find compresses the whole path") {
    const auto g = build_torus_2d(4);
    ClusterForest forest(g);
    forest.init({}, {});
    // Build a chain by uniting growing clusters: sizes force specific roots.
    VertexId r = forest.unite(0, 1);   // size 2, root 0 (tie, lower index)
    r = forest.unite(r, 2);            // size 3
    r = forest.unite(r, 3);            // size 4
    CHECK(r == 0);
    // All members resolve to 0, and afterwards link straight to it.
    for (VertexId v : {1u, 2u, 3u}) {
        CHECK(forest.find(v) == 0);
        CHECK(forest.parent(v) == 0);
    }
}

TEST_CASE("unite follows weighted rule with index tie-break") {
    const auto g = build_torus_2d(4);

    // sizes (5,3): bigger cluster's root survives.
    {
        ClusterForest forest(g);
        forest.init({}, {});
        VertexId a = forest.unite(0, 1);
        a = forest.unite(a, 2);
        a = forest.unite(a, 3);
        a = forest.unite(a, 4);  // size 5, root 0
        VertexId b = forest.unite(8, 9);
        b = forest.unite(b, 10);  // size 3, root 8
        const VertexId r = forest.unite(a, b);
        CHECK(r == 0);
        CHECK(forest.cluster_size(r) == 8);
    }

    // parities (odd, odd) -> even.
    {
        ClusterForest forest(g);
        forest.init({}, std::vector<VertexId>{2, 9});
        CHECK(forest.cluster_parity(2) == 1);
        CHECK(forest.cluster_parity(9) == 1);
        const VertexId r = forest.unite(2, 9);
        CHECK(forest.cluster_parity(r) == 0);
    }

    // sizes (4,4), roots 7 and 2: root 2 survives.
    {
        ClusterForest forest(g);
        forest.init({}, {});
        VertexId a = forest.unite(7, 11);
        a = forest.unite(a, 12);
        a = forest.unite(a, 13);
        REQUIRE(a == 7);
        VertexId b = forest.unite(2, 3);
        b = forest.unite(b, 4);
        b = forest.unite(b, 5);
        REQUIRE(b == 2);
        CHECK(forest.unite(a, b) == 2);
    }

    // Same root twice is a contract violation.
    {
        ClusterForest forest(g);
        forest.init({}, {});
        CHECK_THROWS_AS(forest.unite(3, 3), std::logic_error);
    }
}

TEST_CASE("init_forest: no erasure") {
    const auto g = build_torus_2d(3);
    ClusterForest forest(g);

    forest.init({}, {});
    CHECK(forest.odd_roots().empty());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(forest.parent(v) == v);
        CHECK(forest.cluster_size(v) == 1);
        CHECK(forest.cluster_parity(v) == 0);
    }

    forest.init({}, std::vector<VertexId>{2, 7});
    CHECK(forest.odd_roots() == std::vector<VertexId>{2, 7});
}

TEST_CASE("init_forest: erased path holds one odd cluster") {
    const auto g = build_torus_2d(5);
    ClusterForest forest(g);
    // Path (0,0)-(0,1)-(0,2) via horizontal edges 0 and 1; syndrome at vertex 0.
    forest.init(std::vector<EdgeId>{0, 1}, std::vector<VertexId>{0});
    CHECK(forest.odd_roots() == std::vector<VertexId>{0});
    CHECK(forest.cluster_size(0) == 3);
    CHECK(forest.cluster_parity(0) == 1);
    auto boundary = forest.boundary_vertices(0);
    std::sort(boundary.begin(), boundary.end());
    CHECK(boundary == std::vector<VertexId>{0, 1, 2});
    // Depth <= 1 everywhere.
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(forest.parent(forest.parent(v)) == forest.parent(v));
    }
    CHECK(forest.support().grown(0));
    CHECK(forest.support().grown(1));
    CHECK(forest.support().state(2) == EdgeGrowth::Unoccupied);
}

TEST_CASE("grow_round: adjacent odd singletons fuse in one round") {
    const auto g = build_torus_2d(5);
    ClusterForest forest(g);
    forest.init({}, std::vector<VertexId>{0, 1});
    REQUIRE(forest.odd_roots() == std::vector<VertexId>{0, 1});

    const auto stats = forest.grow_round(forest.odd_roots());
    CHECK(stats.fusion_edges == 1);
    CHECK(stats.fusions == 1);
    CHECK(forest.odd_roots().empty());
    CHECK(forest.support().grown(0));  // the connecting edge
    // All other edges around vertices 0 and 1 are half grown.
    for (EdgeId e : {4u, 25u, 45u, 1u, 26u, 46u}) {
        CHECK(forest.support().state(e) == EdgeGrowth::HalfGrown);
    }
    CHECK(forest.find(1) == forest.find(0));
}

TEST_CASE("grow_round: lone odd cluster stays odd after one round") {
    const auto g = build_torus_2d(5);
    ClusterForest forest(g);
    forest.init({}, std::vector<VertexId>{12, 0});  // 0 far from 12
    const std::vector<VertexId> just12{12};
    const auto stats = forest.grow_round(just12);
    CHECK(stats.fusion_edges == 0);
    CHECK(stats.fusions == 0);
    // 12 is still odd; its four incident edges are half grown.
    int half = 0;
    for (const auto& inc : g.incident(12)) {
        if (forest.support().state(inc.edge) == EdgeGrowth::HalfGrown) ++half;
    }
    CHECK(half == 4);
    CHECK(forest.cluster_parity(forest.find(12)) == 1);
}

TEST_CASE("grow_round: odd singletons at distance two fuse within two rounds") {
    const auto g = build_torus_2d(5);
    ClusterForest forest(g);
    forest.init({}, std::vector<VertexId>{0, 2});

    forest.grow_round(forest.odd_roots());
    // Round 1: half edges from both sides, no fusion yet.
    CHECK(forest.odd_roots() == std::vector<VertexId>{0, 2});
    CHECK(forest.support().state(0) == EdgeGrowth::HalfGrown);
    CHECK(forest.support().state(1) == EdgeGrowth::HalfGrown);

    forest.grow_round(forest.odd_roots());
    // Round 2: both connecting edges complete, everything merges, parity even.
    CHECK(forest.odd_roots().empty());
    CHECK(forest.support().grown(0));
    CHECK(forest.support().grown(1));
    CHECK(forest.find(2) == forest.find(0));
}

TEST_CASE("validate: empty syndrome returns the erasure untouched") {
    const auto g = build_torus_2d(5);
    const std::vector<EdgeId> erasure{3, 4, 17};
    for (auto strategy :
         {GrowthStrategy::UniformNaive, GrowthStrategy::UniformFast, GrowthStrategy::WeightedFast}) {
        const auto result = validate(g, erasure, {}, strategy);
        CHECK(result.modified_erasure == erasure);
        CHECK(result.growth_rounds == 0);
    }
    CHECK(validate_equivalence_oracle(g, erasure, {}) == erasure);
}

TEST_CASE("validate: single Z error is recovered end to end") {
    const auto g = build_torus_2d(3);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const std::vector<EdgeId> error{e};
        const auto state = inject(g, {}, error);
        for (auto strategy : {GrowthStrategy::UniformFast, GrowthStrategy::WeightedFast}) {
            const auto result = validate(g, state.erasure, state.syndrome, strategy);
            CHECK(std::binary_search(result.modified_erasure.begin(),
                                     result.modified_erasure.end(), e));
            const auto correction = peel(g, result.modified_erasure, state.syndrome);
            std::vector<EdgeId> residual;
            std::set_symmetric_difference(error.begin(), error.end(), correction.edges.begin(),
                                          correction.edges.end(), std::back_inserter(residual));
            CHECK(!judge(g, residual).failed);
        }
    }
}

TEST_CASE("validate: every modified-erasure component has even syndrome") {
    const auto g = build_torus_2d(5);
    for (std::uint64_t t = 0; t < 400; ++t) {
        RngStream rng(31337, t);
        std::vector<EdgeId> erasure = random_edges(g, rng, 0.08);
        std::vector<EdgeId> z;
        for (EdgeId e : erasure) {
            if (rng.bernoulli(0.5)) z.push_back(e);
        }
        // Some Z errors outside the erasure as well.
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (rng.bernoulli(0.04)) z.push_back(e);
        }
        const auto state = inject(g, erasure, z);
        for (auto strategy : {GrowthStrategy::UniformNaive, GrowthStrategy::UniformFast,
                              GrowthStrategy::WeightedFast}) {
            const auto result = validate(g, state.erasure, state.syndrome, strategy);
            CHECK(components_all_even(g, result.modified_erasure, state.syndrome));
            // Erasure is contained in the result.
            CHECK(std::includes(result.modified_erasure.begin(), result.modified_erasure.end(),
                                state.erasure.begin(), state.erasure.end()));
        }
    }
}

TEST_CASE("validate rejects odd total syndrome") {
    const auto g = build_torus_2d(3);
    const std::vector<VertexId> bad{4};
    CHECK_THROWS_AS(validate(g, {}, bad, GrowthStrategy::UniformFast), std::invalid_argument);
}

TEST_CASE("oracle, naive and fast agree on modified erasures") {
    const auto g = build_torus_2d(5);
    std::uint64_t checked = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        RngStream rng(777, t);
        const auto erasure = random_edges(g, rng, 0.07);
        std::vector<EdgeId> z = random_edges(g, rng, 0.06);
        const auto state = inject(g, erasure, z);
        const auto fast = validate(g, state.erasure, state.syndrome, GrowthStrategy::UniformFast);
        const auto naive = validate(g, state.erasure, state.syndrome, GrowthStrategy::UniformNaive);
        const auto oracle = validate_equivalence_oracle(g, state.erasure, state.syndrome);
        CHECK(fast.modified_erasure == oracle);
        CHECK(naive.modified_erasure == oracle);
        ++checked;
    }
    CHECK(checked == 1000);

    // Also on a small 3d lattice.
    const auto g3 = build_torus_3d(3);
    for (std::uint64_t t = 0; t < 150; ++t) {
        RngStream rng(778, t);
        const auto erasure = random_edges(g3, rng, 0.05);
        const auto z = random_edges(g3, rng, 0.04);
        const auto state = inject(g3, erasure, z);
        const auto fast = validate(g3, state.erasure, state.syndrome, GrowthStrategy::UniformFast);
        const auto naive = validate(g3, state.erasure, state.syndrome, GrowthStrategy::UniformNaive);
        const auto oracle = validate_equivalence_oracle(g3, state.erasure, state.syndrome);
        CHECK(fast.modified_erasure == oracle);
        CHECK(naive.modified_erasure == oracle);
    }
}

TEST_CASE("root bookkeeping matches brute-force recount") {
    const auto g = build_torus_2d(5);
    for (std::uint64_t t = 0; t < 200; ++t) {
        RngStream rng(4242, t);
        const auto erasure = random_edges(g, rng, 0.1);
        const auto z = random_edges(g, rng, 0.08);
        const auto state = inject(g, erasure, z);

        Validator validator(g);
        const auto result = validator.run(state.erasure, state.syndrome,
                                          GrowthStrategy::UniformFast);
        auto& forest = validator.forest();

        // Recount component sizes and parities over the final grown subgraph.
        const auto label = components_of(g, result.modified_erasure);
        std::map<VertexId, std::uint32_t> counts;
        std::map<VertexId, int> parities;
        for (VertexId v = 0; v < g.vertex_count(); ++v) ++counts[label.at(v)];
        for (VertexId v : state.syndrome) parities[label.at(v)] ^= 1;

        std::uint64_t size_sum = 0;
        std::map<VertexId, VertexId> root_of_label;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const VertexId r = forest.find(v);
            if (r == v) size_sum += forest.cluster_size(r);
            // Vertices sharing a component share a root, and vice versa.
            const VertexId lbl = label.at(v);
            auto it = root_of_label.find(lbl);
            if (it == root_of_label.end()) {
                root_of_label[lbl] = r;
            } else {
                CHECK(it->second == r);
            }
        }
        CHECK(size_sum == g.vertex_count());
        for (const auto& [lbl, root] : root_of_label) {
            CHECK(forest.cluster_size(root) == counts.at(lbl));
            CHECK(forest.cluster_parity(root) == (parities.count(lbl) ? parities.at(lbl) : 0));
        }
    }
}

TEST_CASE("ackermann values from the recursion") {
    CHECK(ackermann(0, 3) == 6);
    CHECK(ackermann(1, 4) == 16);
    CHECK(ackermann(2, 2) == 4);
    CHECK(ackermann(2, 3) == 16);
    CHECK(ackermann(2, 4) == 65536);
    CHECK(ackermann(3, 2) == 4);
    CHECK(ackermann(3, 3) == 65536);
    CHECK(ackermann(3, 4) == UINT64_MAX);  // saturated: astronomically large
    CHECK(ackermann(5, 0) == 0);
    CHECK(ackermann(5, 1) == 2);
}

TEST_CASE("inverse ackermann bands") {
    CHECK(inverse_ackermann(1) == 0);
    CHECK(inverse_ackermann(256) == 0);    // log2 n = 8 = A(0,4)
    CHECK(inverse_ackermann(257) == 1);
    CHECK(inverse_ackermann(65536) == 1);  // log2 n = 16 = A(1,4)
    CHECK(inverse_ackermann(65537) == 2);
    CHECK(inverse_ackermann(UINT64_MAX) == 2);
    CHECK_THROWS_AS(inverse_ackermann(0), std::invalid_argument);

    CHECK(inverse_ackermann_from_log2(16) == 1);
    CHECK(inverse_ackermann_from_log2(17) == 2);
    CHECK(inverse_ackermann_from_log2(65536) == 2);   // n = 2^65536
    CHECK(inverse_ackermann_from_log2(65537) == 3);
    CHECK(inverse_ackermann_from_log2(UINT64_MAX) == 3);  // alpha <= 3 always
}
