#include <doctest.h>

#include <cstdint>
#include <random>
#include <stdexcept>

#include "mmm/machine.hpp"
#include "mmm/multiplication.hpp"
#include "mmm/oracle.hpp"
#include "mmm/rational.hpp"

using mmm::Field;
using mmm::MachineParams;
using mmm::Poly;
using mmm::Rat;

namespace {

MachineParams params(Rat U = Rat(4), std::int64_t Z = 1024) {
    MachineParams mp;
    mp.U = U;
    mp.Z = Z;
    return mp;
}

}  // namespace

TEST_CASE("frozen products") {
    Field F(7);
    CHECK(mmm::run_multiplication(params(), F, Poly{1, 1}, Poly{1, 1}, 1, 4).f == Poly{1, 2, 1});
    // Scalar by polynomial.
    CHECK(mmm::run_multiplication(params(), F, Poly{3}, Poly{2, 5, 1}, 1, 4).f == Poly{6, 1, 3});
    CHECK(mmm::run_multiplication(params(), F, Poly{2, 5, 1}, Poly{1}, 1, 4).f == Poly{2, 5, 1});
}

TEST_CASE("input validation") {
    Field F(7);
    Poly a{1, 1};
    CHECK_THROWS_AS(mmm::run_multiplication(params(), F, Poly{}, a, 1, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(mmm::run_multiplication(params(), F, a, Poly{}, 1, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(mmm::run_multiplication(params(), F, a, a, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(mmm::run_multiplication(params(), F, a, a, 1, 0), std::invalid_argument);
    // 2sl + 2s - 1 must fit in local memory.
    CHECK_THROWS_AS(mmm::run_multiplication(params(Rat(4), 18), F, a, a, 2, 4),
                    std::invalid_argument);
    CHECK_NOTHROW(mmm::run_multiplication(params(Rat(4), 19), F, a, a, 2, 4));
}

TEST_CASE("matches the reference convolution on random instances") {
    std::mt19937_64 rng(1337);
    for (std::int64_t p : {7, 101}) {
        Field F(p);
        for (int t = 0; t < 15; ++t) {
            std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 40);
            std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 40);
            Poly a = mmm::random_poly(rng, n, F);
            Poly b = mmm::random_poly(rng, m, F);
            Poly expect = mmm::oracle_mul(a, b, F);
            // Blocking parameters need not divide anything: padded sizes are
            // simulated and trimmed away.
            for (std::int64_t s : {1, 2, 3, 4, 8}) {
                for (std::int64_t l : {1, 4, 16}) {
                    CHECK(mmm::run_multiplication(params(), F, a, b, s, l).f == expect);
                }
            }
        }
    }
}

TEST_CASE("measured metrics at the frozen size n=m=8 s=2 l=4 U=4") {
    std::mt19937_64 rng(11);
    Field F(101);
    Poly a = mmm::random_poly(rng, 8, F);
    Poly b = mmm::random_poly(rng, 8, F);
    auto res = mmm::run_multiplication(params(), F, a, b, 2, 4);
    CHECK(res.f == mmm::oracle_mul(a, b, F));

    const auto& pm = res.sim.metrics;
    // One product kernel, then log2(m/s) = 2 halving addition rounds.
    REQUIRE(res.sim.kernels.size() == 3);
    CHECK(pm.structure.L == 3);
    CHECK(pm.structure.pi == 3);

    // The product kernel runs (m/s) * ceil((n+s-1)/(s*l)) = 4*2 blocks; the
    // addition rounds halve the donor count: 4, then 2.
    CHECK(res.sim.kernels[0].blocks == 8);
    CHECK(res.sim.kernels[1].blocks == 4);
    CHECK(res.sim.kernels[2].blocks == 2);
    CHECK(pm.structure.N == 14);
    CHECK(pm.structure.K == 8);

    // The measured span hits the closed form S = 2s^2 + s*log2(m/s) - s
    // exactly: the interior convolution thread is the span thread.
    CHECK(pm.S == 10);
    CHECK(pm.W == 119);   // model W = 139.5 prices padded threads too
    CHECK(pm.O == Rat(236));
    CHECK(pm.C == Rat(26));
}

TEST_CASE("block-aligned size n=15 m=8 s=2 l=4: structural quantities are exact") {
    // delta = n + s - 1 = 16 is divisible by s*l = 8, so no padded blocks:
    // N and the per-round block counts equal the model exactly.
    std::mt19937_64 rng(12);
    Field F(101);
    Poly a = mmm::random_poly(rng, 15, F);
    Poly b = mmm::random_poly(rng, 8, F);
    auto res = mmm::run_multiplication(params(), F, a, b, 2, 4);
    CHECK(res.f == mmm::oracle_mul(a, b, F));

    const auto& pm = res.sim.metrics;
    // Model: N = delta(2m - s)/(s^2 l) = 16*14/16 = 14, L = log2(m/s)+1 = 3.
    CHECK(pm.structure.N == 14);
    CHECK(pm.structure.L == 3);
    CHECK(pm.S == 10);  // same span form as above: 2s^2 - s + s*log2(m/s)

    // Work and overhead stay within the model's envelope: |W - 248|/248 is
    // under 25%, and measured overhead never exceeds the model's 336.
    CHECK(pm.W == 224);
    CHECK(pm.O == Rat(304));
    Rat O_pred(336), W_pred(248);
    CHECK(pm.O <= O_pred);
    CHECK(pm.O >= O_pred / Rat(2));
    CHECK((W_pred - Rat(pm.W)) / W_pred <= Rat(1, 4));
}

TEST_CASE("addition-round count follows the padded row count") {
    std::mt19937_64 rng(13);
    Field F(101);
    struct Case {
        std::int64_t n, m, s, rounds;
    };
    // Rows before padding: ceil(m/s); rounds: log2 of the next power of two.
    const Case cases[] = {
        {8, 16, 2, 3},   // 8 rows
        {8, 16, 4, 2},   // 4 rows
        {8, 16, 16, 0},  // single row: no addition phase at all
        {8, 6, 2, 2},    // 3 rows padded to 4
        {8, 5, 1, 3},    // 5 rows padded to 8
    };
    for (const Case& c : cases) {
        Poly a = mmm::random_poly(rng, c.n, F);
        Poly b = mmm::random_poly(rng, c.m, F);
        auto res = mmm::run_multiplication(params(), F, a, b, c.s, 4);
        CHECK(res.f == mmm::oracle_mul(a, b, F));
        CHECK(static_cast<std::int64_t>(res.sim.kernels.size()) == 1 + c.rounds);
        CHECK(res.sim.metrics.structure.L == 1 + c.rounds);
    }
}

TEST_CASE("every launch uses l threads per block") {
    std::mt19937_64 rng(14);
    Field F(101);
    Poly a = mmm::random_poly(rng, 12, F);
    Poly b = mmm::random_poly(rng, 8, F);
    for (std::int64_t l : {2, 4, 8}) {
        auto res = mmm::run_multiplication(params(), F, a, b, 2, l);
        CHECK(res.f == mmm::oracle_mul(a, b, F));
        for (const auto& km : res.sim.kernels) CHECK(km.threads == l);
    }
}

TEST_CASE("parallel and serial simulation agree") {
    std::mt19937_64 rng(15);
    Field F(101);
    Poly a = mmm::random_poly(rng, 33, F);
    Poly b = mmm::random_poly(rng, 20, F);
    MachineParams ser = params();
    ser.parallel = false;
    auto rs = mmm::run_multiplication(ser, F, a, b, 4, 8);
    auto rp = mmm::run_multiplication(params(), F, a, b, 4, 8);
    CHECK(rs.f == rp.f);
    CHECK(rs.sim.metrics.W == rp.sim.metrics.W);
    CHECK(rs.sim.metrics.S == rp.sim.metrics.S);
    CHECK(rs.sim.metrics.O == rp.sim.metrics.O);
}
