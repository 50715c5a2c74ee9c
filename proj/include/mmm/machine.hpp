#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmm/field.hpp"
#include "mmm/metrics.hpp"
#include "mmm/rational.hpp"

namespace mmm {

/// Runtime simulation fault: concurrent-write conflict, out-of-range global
/// access, or capacity overflow.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MachineParams {
    Rat U;                 ///< word transfer cost; must exceed 1
    std::int64_t Z = 0;    ///< local memory words per SM; >= 1
    bool parallel = true;  ///< run blocks under OpenMP (results are identical)
};

/// Handle to a global-memory array.
struct GArr {
    std::size_t id = static_cast<std::size_t>(-1);
};

/// Global rank of thread t of block blockID when blocks have ell threads.
inline std::int64_t thread_rank(std::int64_t blockID, std::int64_t t, std::int64_t ell) {
    if (blockID < 0) throw std::invalid_argument("thread_rank: blockID must not be negative");
    if (t < 0 || t >= ell) throw std::invalid_argument("thread_rank: t must lie in [0, ell)");
    return t + blockID * ell;
}

class Machine;
class BlockCtx;

/// Charging handle for one simulated thread. Every counted global access and
/// every field operation of that thread goes through this object.
class ThreadOps {
public:
    std::int64_t read(GArr a, std::int64_t idx);
    void write(GArr a, std::int64_t idx, std::int64_t val);

    std::int64_t add(const Field& F, std::int64_t a, std::int64_t b) { op(); return F.add(a, b); }
    std::int64_t sub(const Field& F, std::int64_t a, std::int64_t b) { op(); return F.sub(a, b); }
    std::int64_t mul(const Field& F, std::int64_t a, std::int64_t b) { op(); return F.mul(a, b); }
    std::int64_t neg(const Field& F, std::int64_t a) { op(); return F.neg(a); }
    std::int64_t inv(const Field& F, std::int64_t a) { op(); return F.inv(a); }
    /// Fused a * b^{-1}, charged as a single operation.
    std::int64_t divide(const Field& F, std::int64_t a, std::int64_t b) { op(); return F.divide(a, b); }

private:
    friend class BlockCtx;
    ThreadOps(BlockCtx* b, std::int64_t tid) : b_(b), tid_(tid) {}
    void op();
    BlockCtx* b_;
    std::int64_t tid_;
};

/// Execution context of one block during a launch. Reads observe the global
/// state as of launch entry; writes are buffered and merged at launch end
/// under the exclusive-write rule.
class BlockCtx {
public:
    std::int64_t bid() const { return bid_; }
    std::int64_t threads() const;

    /// Allocate zero-initialized local memory. Cumulative block usage beyond
    /// Z words raises SimError. Access to local words is uncounted.
    std::span<std::int64_t> local(std::int64_t words);

    /// Charging handle for thread tid (0 <= tid < threads()).
    ThreadOps thread(std::int64_t tid);

private:
    friend class Machine;
    friend class ThreadOps;
    struct WriteRec {
        std::uint32_t arr;
        std::int64_t idx;
        std::int64_t val;
        std::int64_t tid;
    };
    const Machine* m_ = nullptr;
    const struct KernelSpec* spec_ = nullptr;
    std::int64_t bid_ = 0;
    ThreadCounters* counters_ = nullptr;  // row of length threads()
    std::vector<WriteRec> log_;
    std::deque<std::vector<std::int64_t>> arenas_;
    std::int64_t arena_used_ = 0;
};

/// Post-merge phase run by one designated thread; its reads observe the merged
/// launch result and its accesses are charged to that thread.
class EpilogueCtx {
public:
    std::int64_t read(GArr a, std::int64_t idx);
    void write(GArr a, std::int64_t idx, std::int64_t val);

private:
    friend class Machine;
    Machine* m_ = nullptr;
    const struct KernelSpec* spec_ = nullptr;
    std::int64_t bid_ = 0, tid_ = 0;
    ThreadCounters* counters_ = nullptr;
    void* writers_ = nullptr;  // conflict map shared with the merge phase
};

struct Epilogue {
    std::int64_t bid = 0;
    std::int64_t tid = 0;
    std::function<void(EpilogueCtx&)> fn;
};

/// One kernel launch: a grid of `blocks` blocks of `threads` threads running
/// `body`. The body receives a BlockCtx and drives per-thread charging.
struct KernelSpec {
    std::string name = "kernel";
    std::int64_t blocks = 1;
    std::int64_t threads = 1;
    std::function<void(BlockCtx&)> body;  // null = no-op kernel
    std::optional<Epilogue> epilogue;
};

/// The abstract many-core machine: unbounded identical SMs with Z words of
/// local memory each, a shared global memory, and word transfer cost U > 1.
class Machine {
public:
    explicit Machine(const MachineParams& params);

    const Rat& U() const { return params_.U; }
    std::int64_t Z() const { return params_.Z; }
    bool parallel() const { return params_.parallel; }
    void set_parallel(bool on) { params_.parallel = on; }

    /// Allocate a zero-initialized global array.
    GArr alloc(std::string name, std::int64_t size);
    std::int64_t size(GArr a) const;
    const std::string& name(GArr a) const;

    /// Uncounted host access (argument preparation, result extraction).
    std::int64_t host_read(GArr a, std::int64_t idx) const;
    void host_write(GArr a, std::int64_t idx, std::int64_t val);

    /// Execute one launch and return its measured metrics.
    KernelMetrics launch(const KernelSpec& spec);

private:
    friend class BlockCtx;
    friend class ThreadOps;
    friend class EpilogueCtx;
    struct Store {
        std::string name;
        std::vector<std::int64_t> data;
    };
    void check_bounds(const KernelSpec& spec, GArr a, std::int64_t idx, const char* what) const;
    std::vector<Store> arrays_;
    MachineParams params_;
};

}  // namespace mmm
