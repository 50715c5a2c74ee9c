#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmm/field.hpp"
#include "mmm/machine.hpp"

using mmm::Field;
using mmm::GArr;
using mmm::KernelMetrics;
using mmm::KernelSpec;
using mmm::Machine;
using mmm::MachineParams;
using mmm::Rat;
using mmm::SimError;

namespace {

MachineParams params(std::int64_t Z = 1024, Rat U = Rat(4)) {
    MachineParams mp;
    mp.U = U;
    mp.Z = Z;
    return mp;
}

template <class E, class Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const E& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("machine parameter validation") {
    CHECK_NOTHROW(Machine(params(1024, Rat(4))));
    CHECK_NOTHROW(Machine(params(1, Rat(3, 2))));

    CHECK(thrown_message<std::invalid_argument>([] { Machine m(params(64, Rat(1))); }) ==
          "U must exceed 1");
    CHECK_THROWS_AS(Machine(params(64, Rat(1, 2))), std::invalid_argument);
    CHECK_THROWS_AS(Machine(params(0, Rat(2))), std::invalid_argument);
    CHECK_THROWS_AS(Machine(params(-5, Rat(2))), std::invalid_argument);
}

TEST_CASE("thread rank formula") {
    CHECK(mmm::thread_rank(3, 2, 8) == 26);
    CHECK(mmm::thread_rank(0, 0, 8) == 0);
    CHECK(mmm::thread_rank(1, 7, 8) == 15);
    CHECK_THROWS_AS(mmm::thread_rank(1, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(mmm::thread_rank(1, -1, 8), std::invalid_argument);
    CHECK_THROWS_AS(mmm::thread_rank(-1, 0, 8), std::invalid_argument);
}

TEST_CASE("global arrays and host access") {
    Machine m(params());
    GArr g = m.alloc("g", 5);
    CHECK(m.size(g) == 5);
    CHECK(m.name(g) == "g");
    CHECK(m.host_read(g, 0) == 0);  // zero-initialized
    m.host_write(g, 3, 42);
    CHECK(m.host_read(g, 3) == 42);
    CHECK_THROWS_AS(m.host_read(g, 5), SimError);
    CHECK_THROWS_AS(m.host_write(g, -1, 0), SimError);
    CHECK_THROWS_AS(m.alloc("bad", -1), std::invalid_argument);
}

TEST_CASE("launch validation") {
    Machine m(params(8));
    KernelSpec k;
    k.name = "probe";

    k.blocks = 0;
    CHECK_THROWS_AS(m.launch(k), std::invalid_argument);

    k.blocks = 1;
    k.threads = 0;
    CHECK_THROWS_AS(m.launch(k), std::invalid_argument);

    // A block never holds more threads than its local memory holds words.
    k.threads = 9;
    CHECK_THROWS_AS(m.launch(k), SimError);
    k.threads = 8;
    CHECK_NOTHROW(m.launch(k));  // null body: no-op kernel
}

TEST_CASE("per-thread counters feed per-block metrics") {
    Machine m(params(1024, Rat(4)));
    Field F(7);
    GArr in = m.alloc("in", 6);
    GArr out = m.alloc("out", 6);
    for (std::int64_t i = 0; i < 6; ++i) m.host_write(in, i, i % 7);

    KernelSpec k;
    k.name = "axpy";
    k.blocks = 2;
    k.threads = 3;
    k.body = [&](mmm::BlockCtx& ctx) {
        for (std::int64_t t = 0; t < ctx.threads(); ++t) {
            auto th = ctx.thread(t);
            std::int64_t j = mmm::thread_rank(ctx.bid(), t, ctx.threads());
            std::int64_t v = th.read(in, j);              // alpha = 1
            std::int64_t w = th.add(F, v, th.mul(F, v, v));  // sigma = 2
            th.write(out, j, w);                          // beta = 1
        }
    };
    KernelMetrics km = m.launch(k);

    CHECK(km.blocks == 2);
    CHECK(km.threads == 3);
    REQUIRE(km.per_block.size() == 2);
    for (const auto& b : km.per_block) {
        CHECK(b.W == 6);  // 3 threads x 2 field ops
        CHECK(b.S == 2);
        CHECK(b.alpha == 1);
        CHECK(b.beta == 1);
        CHECK(b.max_accesses == 2);
        CHECK(b.O == Rat(8));  // (1 + 1) * U
        CHECK(b.C() == Rat(10));
    }
    CHECK(km.W() == 12);
    CHECK(km.S() == 2);
    CHECK(km.O() == Rat(16));
    CHECK(km.max_accesses() == 2);

    for (std::int64_t j = 0; j < 6; ++j) {
        std::int64_t v = j % 7;
        CHECK(m.host_read(out, j) == F.add(v, F.mul(v, v)));
    }
}

TEST_CASE("inactive threads cost nothing") {
    Machine m(params());
    Field F(7);
    GArr g = m.alloc("g", 4);
    KernelSpec k;
    k.name = "half";
    k.threads = 4;
    k.body = [&](mmm::BlockCtx& ctx) {
        for (std::int64_t t = 0; t < 2; ++t) {  // threads 2 and 3 stay idle
            auto th = ctx.thread(t);
            th.write(g, t, th.add(F, 1, 2));
        }
    };
    KernelMetrics km = m.launch(k);
    CHECK(km.per_block[0].W == 2);   // only the two active threads count
    CHECK(km.per_block[0].S == 1);
    CHECK(km.per_block[0].beta == 1);
    CHECK(km.per_block[0].alpha == 0);
}

TEST_CASE("writes are buffered: reads observe the state at launch entry") {
    Machine m(params());
    GArr g = m.alloc("g", 3);
    for (std::int64_t i = 0; i < 3; ++i) m.host_write(g, i, 10 * (i + 1));

    // Each thread rotates one cell; with snapshot reads this is a clean
    // permutation no matter how threads interleave.
    KernelSpec k;
    k.name = "rotate";
    k.threads = 3;
    k.body = [&](mmm::BlockCtx& ctx) {
        for (std::int64_t t = 0; t < 3; ++t) {
            auto th = ctx.thread(t);
            th.write(g, t, th.read(g, (t + 1) % 3));
        }
    };
    m.launch(k);
    CHECK(m.host_read(g, 0) == 20);
    CHECK(m.host_read(g, 1) == 30);
    CHECK(m.host_read(g, 2) == 10);

    // A thread re-reading its own written cell still sees the entry value.
    GArr h = m.alloc("h", 1);
    m.host_write(h, 0, 7);
    std::int64_t seen = -1;
    KernelSpec k2;
    k2.name = "snapshot";
    k2.body = [&](mmm::BlockCtx& ctx) {
        auto th = ctx.thread(0);
        th.write(h, 0, 99);
        seen = th.read(h, 0);
    };
    m.launch(k2);
    CHECK(seen == 7);
    CHECK(m.host_read(h, 0) == 99);
}

TEST_CASE("one thread may rewrite its own cell") {
    Machine m(params());
    GArr g = m.alloc("g", 1);
    KernelSpec k;
    k.name = "rewrite";
    k.body = [&](mmm::BlockCtx& ctx) {
        auto th = ctx.thread(0);
        th.write(g, 0, 1);
        th.write(g, 0, 2);  // same owner: allowed, last write wins
    };
    CHECK_NOTHROW(m.launch(k));
    CHECK(m.host_read(g, 0) == 2);
}

TEST_CASE("concurrent writes to one cell are rejected naming the address") {
    Machine m(params());
    GArr g = m.alloc("shared", 4);

    KernelSpec k;
    k.name = "collide";
    k.threads = 2;
    k.body = [&](mmm::BlockCtx& ctx) {
        for (std::int64_t t = 0; t < 2; ++t) ctx.thread(t).write(g, 2, t);
    };
    std::string msg = thrown_message<SimError>([&] { m.launch(k); });
    CHECK(msg.find("shared[2]") != std::string::npos);
    CHECK(msg.find("exclusive-write violation") != std::string::npos);
    CHECK(msg.find("collide") != std::string::npos);

    // Also across blocks.
    KernelSpec k2;
    k2.name = "cross";
    k2.blocks = 2;
    k2.threads = 1;
    k2.body = [&](mmm::BlockCtx& ctx) { ctx.thread(0).write(g, 3, ctx.bid()); };
    std::string msg2 = thrown_message<SimError>([&] { m.launch(k2); });
    CHECK(msg2.find("cross") != std::string::npos);
    CHECK(msg2.find("shared[3]") != std::string::npos);
}

TEST_CASE("distinct cells from distinct threads are fine") {
    Machine m(params());
    GArr g = m.alloc("g", 8);
    KernelSpec k;
    k.name = "disjoint";
    k.blocks = 2;
    k.threads = 4;
    k.body = [&](mmm::BlockCtx& ctx) {
        for (std::int64_t t = 0; t < 4; ++t)
            ctx.thread(t).write(g, mmm::thread_rank(ctx.bid(), t, 4), t);
    };
    CHECK_NOTHROW(m.launch(k));
}

TEST_CASE("out-of-range kernel accesses are simulation faults") {
    Machine m(params());
    GArr g = m.alloc("g", 2);
    KernelSpec k;
    k.name = "oob";
    k.body = [&](mmm::BlockCtx& ctx) { ctx.thread(0).read(g, 2); };
    CHECK_THROWS_AS(m.launch(k), SimError);
    k.body = [&](mmm::BlockCtx& ctx) { ctx.thread(0).write(g, -1, 0); };
    CHECK_THROWS_AS(m.launch(k), SimError);
}

TEST_CASE("local memory is capped at Z words per block") {
    Machine m(params(16));
    KernelSpec k;
    k.name = "arena";

    k.body = [](mmm::BlockCtx& ctx) {
        auto a = ctx.local(16);  // exactly full: fine
        a[15] = 1;
    };
    CHECK_NOTHROW(m.launch(k));

    k.body = [](mmm::BlockCtx& ctx) { ctx.local(17); };
    std::string msg = thrown_message<SimError>([&] { m.launch(k); });
    CHECK(msg.find("local memory overflow") != std::string::npos);

    // The cap is cumulative across allocations of one block...
    k.body = [](mmm::BlockCtx& ctx) {
        ctx.local(10);
        ctx.local(7);
    };
    CHECK_THROWS_AS(m.launch(k), SimError);

    // ...but each block of the grid has its own arena.
    k.blocks = 4;
    k.body = [](mmm::BlockCtx& ctx) { ctx.local(16); };
    CHECK_NOTHROW(m.launch(k));

    CHECK_THROWS_AS(m.launch(KernelSpec{"neg", 1, 1,
                                        [](mmm::BlockCtx& ctx) { ctx.local(-1); },
                                        std::nullopt}),
                    std::invalid_argument);
}

TEST_CASE("local traffic is uncounted") {
    Machine m(params());
    Field F(7);
    GArr g = m.alloc("g", 1);
    KernelSpec k;
    k.name = "staging";
    k.body = [&](mmm::BlockCtx& ctx) {
        auto buf = ctx.local(8);
        auto th = ctx.thread(0);
        buf[0] = th.read(g, 0);
        for (int i = 1; i < 8; ++i) buf[i] = buf[i - 1];  // local shuffling: free
        th.write(g, 0, th.add(F, buf[7], 1));
    };
    KernelMetrics km = m.launch(k);
    CHECK(km.per_block[0].alpha == 1);
    CHECK(km.per_block[0].beta == 1);
    CHECK(km.per_block[0].W == 1);
}

TEST_CASE("epilogue runs after the merge and is charged to its thread") {
    Machine m(params(1024, Rat(2)));
    GArr g = m.alloc("g", 4);
    KernelSpec k;
    k.name = "finish";
    k.threads = 4;
    k.body = [&](mmm::BlockCtx& ctx) {
        for (std::int64_t t = 0; t < 3; ++t) ctx.thread(t).write(g, t, 10 + t);
    };
    k.epilogue = mmm::Epilogue{0, 3, [&](mmm::EpilogueCtx& e) {
                                   // Sees the merged result of this very launch.
                                   std::int64_t v = e.read(g, 2);
                                   e.write(g, 3, v + 100);
                               }};
    KernelMetrics km = m.launch(k);
    CHECK(m.host_read(g, 2) == 12);
    CHECK(m.host_read(g, 3) == 112);
    // Thread 3 carries the epilogue's accesses; the body threads one write each.
    CHECK(km.per_block[0].alpha == 1);
    CHECK(km.per_block[0].beta == 1);
    CHECK(km.per_block[0].max_accesses == 2);
}

TEST_CASE("epilogue writes still respect exclusive ownership") {
    Machine m(params());
    GArr g = m.alloc("owned", 2);

    KernelSpec k;
    k.name = "steal";
    k.threads = 2;
    k.body = [&](mmm::BlockCtx& ctx) { ctx.thread(0).write(g, 0, 1); };
    // A different thread trying to finalize the same cell is a conflict.
    k.epilogue = mmm::Epilogue{0, 1, [&](mmm::EpilogueCtx& e) { e.write(g, 0, 2); }};
    std::string msg = thrown_message<SimError>([&] { m.launch(k); });
    CHECK(msg.find("owned[0]") != std::string::npos);

    // The owning thread itself may finalize its cell.
    k.epilogue = mmm::Epilogue{0, 0, [&](mmm::EpilogueCtx& e) { e.write(g, 0, 2); }};
    CHECK_NOTHROW(m.launch(k));
    CHECK(m.host_read(g, 0) == 2);
}

TEST_CASE("parallel and serial block execution agree exactly") {
    Field F(101);
    auto run = [&](bool parallel) {
        MachineParams mp = params(256, Rat(7, 2));
        mp.parallel = parallel;
        Machine m(mp);
        GArr a = m.alloc("a", 128);
        GArr b = m.alloc("b", 128);
        for (std::int64_t i = 0; i < 128; ++i) m.host_write(a, i, (i * i + 3) % 101);
        KernelSpec k;
        k.name = "wave";
        k.blocks = 32;
        k.threads = 4;
        k.body = [&](mmm::BlockCtx& ctx) {
            auto loc = ctx.local(4);
            for (std::int64_t t = 0; t < 4; ++t) {
                auto th = ctx.thread(t);
                std::int64_t j = mmm::thread_rank(ctx.bid(), t, 4);
                loc[t] = th.read(a, j);
                std::int64_t acc = loc[t];
                for (std::int64_t r = 0; r < (j % 5); ++r) acc = th.mul(F, acc, loc[t]);
                th.write(b, j, acc);
            }
        };
        KernelMetrics km = m.launch(k);
        std::vector<std::int64_t> mem;
        for (std::int64_t i = 0; i < 128; ++i) mem.push_back(m.host_read(b, i));
        return std::pair(mem, km);
    };

    auto [mem_s, km_s] = run(false);
    auto [mem_p, km_p] = run(true);
    CHECK(mem_s == mem_p);
    REQUIRE(km_s.per_block.size() == km_p.per_block.size());
    for (std::size_t i = 0; i < km_s.per_block.size(); ++i) {
        CHECK(km_s.per_block[i].W == km_p.per_block[i].W);
        CHECK(km_s.per_block[i].S == km_p.per_block[i].S);
        CHECK(km_s.per_block[i].alpha == km_p.per_block[i].alpha);
        CHECK(km_s.per_block[i].beta == km_p.per_block[i].beta);
        CHECK(km_s.per_block[i].O == km_p.per_block[i].O);
    }
}
