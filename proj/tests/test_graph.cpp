#include <doctest.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmm/graph.hpp"

using mmm::MmmProgram;
using mmm::StructuralMetrics;

namespace {

MmmProgram chain(std::int64_t kernels, std::int64_t blocks_each) {
    MmmProgram p;
    std::int64_t prev = -1;
    for (std::int64_t i = 0; i < kernels; ++i) {
        std::int64_t id = p.add_kernel("step" + std::to_string(i), blocks_each);
        if (prev >= 0) p.add_edge(prev, id);
        prev = id;
    }
    return p;
}

// Maximum-weight antichain by exhaustive subset enumeration (n <= 20 or so),
// using transitive reachability for comparability.
std::int64_t brute_force_antichain(const MmmProgram& p) {
    std::int64_t n = p.kernel_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    std::vector<std::int64_t> order = p.topo_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::int64_t v = *it;
        for (std::int64_t w : p.successors()[v]) {
            reach[v][w] = true;
            for (std::int64_t k = 0; k < n; ++k)
                if (reach[w][k]) reach[v][k] = true;
        }
    }
    std::int64_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::int64_t weight = 0;
        bool anti = true;
        for (std::int64_t u = 0; u < n && anti; ++u) {
            if (!(mask >> u & 1)) continue;
            weight += p.blocks_of(u);
            for (std::int64_t w = u + 1; w < n && anti; ++w) {
                if (!(mask >> w & 1)) continue;
                if (reach[u][w] || reach[w][u]) anti = false;
            }
        }
        if (anti) best = std::max(best, weight);
    }
    return best;
}

}  // namespace

TEST_CASE("kernel chains: node, edge, and block bookkeeping") {
    MmmProgram p = chain(18, 4);
    CHECK(p.kernel_count() == 18);
    std::int64_t edges = 0;
    for (const auto& s : p.successors()) edges += static_cast<std::int64_t>(s.size());
    CHECK(edges == 17);
    CHECK(p.blocks_of(0) == 4);
    CHECK(p.name_of(17) == "step17");

    StructuralMetrics sm = p.structural();
    CHECK(sm.N == 72);
    CHECK(sm.L == 18);
    CHECK(sm.K == 4);
    CHECK(sm.pi == 18);
}

TEST_CASE("single kernel") {
    MmmProgram p;
    p.add_kernel("only", 10);
    StructuralMetrics sm = p.structural();
    CHECK(sm.N == 10);
    CHECK(sm.L == 1);
    CHECK(sm.K == 10);
    CHECK(sm.pi == 1);
}

TEST_CASE("empty program has no structural metrics") {
    MmmProgram p;
    CHECK_THROWS_AS(p.structural(), std::invalid_argument);
}

TEST_CASE("construction validation") {
    MmmProgram p;
    CHECK_THROWS_AS(p.add_kernel("none", 0), std::invalid_argument);
    std::int64_t a = p.add_kernel("a", 1);
    CHECK_THROWS_AS(p.add_edge(a, a), std::invalid_argument);  // self-loop
    CHECK_THROWS_AS(p.add_edge(a, 5), std::invalid_argument);  // missing endpoint
    CHECK_THROWS_AS(p.add_edge(-1, a), std::invalid_argument);
}

TEST_CASE("cycles are rejected") {
    MmmProgram p;
    std::int64_t a = p.add_kernel("a", 1);
    std::int64_t b = p.add_kernel("b", 1);
    std::int64_t c = p.add_kernel("c", 1);
    p.add_edge(a, b);
    p.add_edge(b, c);
    p.add_edge(c, a);
    CHECK_THROWS_AS(p.topo_order(), std::invalid_argument);
    CHECK_THROWS_AS(p.structural(), std::invalid_argument);
}

TEST_CASE("levels count vertices from 1") {
    MmmProgram p;
    std::int64_t a = p.add_kernel("a", 1);
    std::int64_t b = p.add_kernel("b", 2);
    std::int64_t c = p.add_kernel("c", 3);
    std::int64_t d = p.add_kernel("d", 1);
    p.add_edge(a, b);
    p.add_edge(a, c);
    p.add_edge(b, d);
    p.add_edge(c, d);
    CHECK(p.levels() == std::vector<std::int64_t>{1, 2, 2, 3});

    StructuralMetrics sm = p.structural();
    CHECK(sm.N == 7);
    CHECK(sm.L == 3);
    CHECK(sm.K == 5);  // the two middle kernels run side by side
    CHECK(sm.pi == 3);
    CHECK(brute_force_antichain(p) == 5);
}

TEST_CASE("antichain width is refused when levels do not decompose the order") {
    MmmProgram p;
    std::int64_t a = p.add_kernel("first", 1);
    std::int64_t b = p.add_kernel("second", 1);
    p.add_edge(a, b);
    p.add_kernel("floating", 1);  // incomparable with 'second', one level up
    CHECK_THROWS_AS(p.structural(), std::runtime_error);
    try {
        p.structural();
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("floating") != std::string::npos);
        CHECK(msg.find("second") != std::string::npos);
    }
}

TEST_CASE("parallel kernels with no edges are one wide level") {
    MmmProgram p;
    p.add_kernel("a", 3);
    p.add_kernel("b", 4);
    p.add_kernel("c", 5);
    StructuralMetrics sm = p.structural();
    CHECK(sm.N == 12);
    CHECK(sm.L == 1);
    CHECK(sm.K == 12);
    CHECK(sm.pi == 1);
    CHECK(brute_force_antichain(p) == 12);
}

TEST_CASE("exhaustive antichain agreement on random layered programs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        std::int64_t layers = 1 + static_cast<std::int64_t>(rng() % 4);
        MmmProgram p;
        std::vector<std::vector<std::int64_t>> by_layer(layers);
        std::int64_t total = 0;
        for (std::int64_t l = 0; l < layers && total < 12; ++l) {
            std::int64_t width = 1 + static_cast<std::int64_t>(rng() % 3);
            for (std::int64_t i = 0; i < width && total < 12; ++i, ++total) {
                std::int64_t blocks = 1 + static_cast<std::int64_t>(rng() % 5);
                by_layer[l].push_back(p.add_kernel("k" + std::to_string(total), blocks));
            }
        }
        // Join consecutive layers completely so levels decompose the order.
        for (std::size_t l = 0; l + 1 < by_layer.size(); ++l)
            for (std::int64_t u : by_layer[l])
                for (std::int64_t v : by_layer[l + 1]) p.add_edge(u, v);

        StructuralMetrics sm = p.structural();
        CHECK(sm.K == brute_force_antichain(p));
        CHECK(sm.pi == sm.L);
    }
}

TEST_CASE("total block count ignores edges") {
    MmmProgram p;
    std::int64_t ids[4];
    for (int i = 0; i < 4; ++i) ids[i] = p.add_kernel("k" + std::to_string(i), i + 1);
    CHECK(p.structural().N == 10);
    p.add_edge(ids[0], ids[1]);
    p.add_edge(ids[1], ids[2]);
    p.add_edge(ids[2], ids[3]);
    CHECK(p.structural().N == 10);
}

TEST_CASE("edge dump is deterministic and complete") {
    MmmProgram p;
    std::int64_t a = p.add_kernel("alpha", 2);
    std::int64_t b = p.add_kernel("beta", 3);
    p.add_edge(a, b);
    CHECK(p.dump_edges() ==
          "0: alpha [blocks=2]\n"
          "1: beta [blocks=3]\n"
          "0 -> 1\n");
}
