#include "mmm/machine.hpp"

#include <algorithm>
#include <unordered_map>

namespace mmm {

namespace {

struct Writer {
    std::int64_t bid, tid, val;
};

using WriterMap = std::unordered_map<std::uint64_t, Writer>;

std::uint64_t cell_key(std::uint32_t arr, std::int64_t idx) {
    return (static_cast<std::uint64_t>(arr) << 40) | static_cast<std::uint64_t>(idx);
}

}  // namespace

Machine::Machine(const MachineParams& params) : params_(params) {
    if (!(params_.U > Rat(1))) throw std::invalid_argument("U must exceed 1");
    if (params_.Z < 1) throw std::invalid_argument("Z must be at least 1");
}

GArr Machine::alloc(std::string name, std::int64_t size) {
    if (size < 0) throw std::invalid_argument("alloc: negative array size");
    if (size >= (std::int64_t(1) << 40))
        throw std::invalid_argument("alloc: array too large for the simulator");
    arrays_.push_back(Store{std::move(name), std::vector<std::int64_t>(size, 0)});
    return GArr{arrays_.size() - 1};
}

std::int64_t Machine::size(GArr a) const { return static_cast<std::int64_t>(arrays_.at(a.id).data.size()); }

const std::string& Machine::name(GArr a) const { return arrays_.at(a.id).name; }

std::int64_t Machine::host_read(GArr a, std::int64_t idx) const {
    const Store& s = arrays_.at(a.id);
    if (idx < 0 || idx >= static_cast<std::int64_t>(s.data.size()))
        throw SimError("host read out of range: " + s.name + "[" + std::to_string(idx) + "]");
    return s.data[idx];
}

void Machine::host_write(GArr a, std::int64_t idx, std::int64_t val) {
    Store& s = arrays_.at(a.id);
    if (idx < 0 || idx >= static_cast<std::int64_t>(s.data.size()))
        throw SimError("host write out of range: " + s.name + "[" + std::to_string(idx) + "]");
    s.data[idx] = val;
}

void Machine::check_bounds(const KernelSpec& spec, GArr a, std::int64_t idx, const char* what) const {
    const Store& s = arrays_.at(a.id);
    if (idx < 0 || idx >= static_cast<std::int64_t>(s.data.size()))
        throw SimError("kernel '" + spec.name + "': " + what + " out of range: " + s.name + "[" +
                       std::to_string(idx) + "] (size " + std::to_string(s.data.size()) + ")");
}

std::int64_t BlockCtx::threads() const { return spec_->threads; }

std::span<std::int64_t> BlockCtx::local(std::int64_t words) {
    if (words < 0) throw std::invalid_argument("local: negative allocation");
    arena_used_ += words;
    if (arena_used_ > m_->params_.Z)
        throw SimError("kernel '" + spec_->name + "' block " + std::to_string(bid_) +
                       ": local memory overflow (" + std::to_string(arena_used_) + " of " +
                       std::to_string(m_->params_.Z) + " words)");
    arenas_.emplace_back(static_cast<std::size_t>(words), 0);
    return std::span<std::int64_t>(arenas_.back());
}

ThreadOps BlockCtx::thread(std::int64_t tid) {
    if (tid < 0 || tid >= spec_->threads)
        throw std::invalid_argument("thread id " + std::to_string(tid) + " out of range in kernel '" +
                                    spec_->name + "'");
    return ThreadOps(this, tid);
}

void ThreadOps::op() { ++b_->counters_[tid_].sigma; }

std::int64_t ThreadOps::read(GArr a, std::int64_t idx) {
    b_->m_->check_bounds(*b_->spec_, a, idx, "read");
    ++b_->counters_[tid_].alpha;
    return b_->m_->arrays_[a.id].data[idx];
}

void ThreadOps::write(GArr a, std::int64_t idx, std::int64_t val) {
    b_->m_->check_bounds(*b_->spec_, a, idx, "write");
    ++b_->counters_[tid_].beta;
    b_->log_.push_back(BlockCtx::WriteRec{static_cast<std::uint32_t>(a.id), idx, val, tid_});
}

std::int64_t EpilogueCtx::read(GArr a, std::int64_t idx) {
    m_->check_bounds(*spec_, a, idx, "epilogue read");
    ++counters_->alpha;
    return m_->arrays_[a.id].data[idx];
}

void EpilogueCtx::write(GArr a, std::int64_t idx, std::int64_t val) {
    m_->check_bounds(*spec_, a, idx, "epilogue write");
    ++counters_->beta;
    auto& writers = *static_cast<WriterMap*>(writers_);
    std::uint64_t key = cell_key(static_cast<std::uint32_t>(a.id), idx);
    auto [it, fresh] = writers.try_emplace(key, Writer{bid_, tid_, val});
    if (!fresh && (it->second.bid != bid_ || it->second.tid != tid_))
        throw SimError("kernel '" + spec_->name + "': write-write conflict on " +
                       m_->arrays_[a.id].name + "[" + std::to_string(idx) + "] between block " +
                       std::to_string(it->second.bid) + " thread " + std::to_string(it->second.tid) +
                       " and epilogue block " + std::to_string(bid_) + " thread " +
                       std::to_string(tid_) + " (exclusive-write violation)");
    m_->arrays_[a.id].data[idx] = val;
}

KernelMetrics Machine::launch(const KernelSpec& spec) {
    if (spec.blocks < 1) throw std::invalid_argument("launch: kernel needs at least one block");
    if (spec.threads < 1) throw std::invalid_argument("launch: kernel needs at least one thread per block");
    if (spec.threads > params_.Z)
        throw SimError("kernel '" + spec.name + "': " + std::to_string(spec.threads) +
                       " threads per block exceed the local capacity Z = " + std::to_string(params_.Z));

    const std::int64_t blocks = spec.blocks;
    const std::int64_t threads = spec.threads;
    std::vector<ThreadCounters> counters(static_cast<std::size_t>(blocks * threads));
    std::vector<BlockCtx> ctxs(static_cast<std::size_t>(blocks));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));

    if (spec.body) {
#ifdef MMM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (params_.parallel && blocks > 1)
#endif
        for (std::int64_t b = 0; b < blocks; ++b) {
            BlockCtx& ctx = ctxs[b];
            ctx.m_ = this;
            ctx.spec_ = &spec;
            ctx.bid_ = b;
            ctx.counters_ = &counters[static_cast<std::size_t>(b * threads)];
            try {
                spec.body(ctx);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        }
        for (std::int64_t b = 0; b < blocks; ++b)
            if (errors[b]) std::rethrow_exception(errors[b]);
    }

    // Merge buffered writes in block order under the exclusive-write rule:
    // one (block, thread) owner per cell; an owner may rewrite its own cell.
    WriterMap writers;
    std::size_t total = 0;
    for (const auto& c : ctxs) total += c.log_.size();
    writers.reserve(total * 2);
    for (std::int64_t b = 0; b < blocks; ++b) {
        for (const auto& rec : ctxs[b].log_) {
            std::uint64_t key = cell_key(rec.arr, rec.idx);
            auto [it, fresh] = writers.try_emplace(key, Writer{b, rec.tid, rec.val});
            if (!fresh) {
                if (it->second.bid != b || it->second.tid != rec.tid)
                    throw SimError("kernel '" + spec.name + "': write-write conflict on " +
                                   arrays_[rec.arr].name + "[" + std::to_string(rec.idx) +
                                   "] between block " + std::to_string(it->second.bid) + " thread " +
                                   std::to_string(it->second.tid) + " and block " + std::to_string(b) +
                                   " thread " + std::to_string(rec.tid) +
                                   " (exclusive-write violation)");
                it->second.val = rec.val;
            }
        }
    }
    for (const auto& [key, w] : writers) {
        std::uint32_t arr = static_cast<std::uint32_t>(key >> 40);
        std::int64_t idx = static_cast<std::int64_t>(key & ((std::uint64_t(1) << 40) - 1));
        arrays_[arr].data[static_cast<std::size_t>(idx)] = w.val;
    }

    if (spec.epilogue) {
        const Epilogue& e = *spec.epilogue;
        if (e.bid < 0 || e.bid >= blocks || e.tid < 0 || e.tid >= threads)
            throw std::invalid_argument("launch: epilogue thread out of range in kernel '" +
                                        spec.name + "'");
        EpilogueCtx ectx;
        ectx.m_ = this;
        ectx.spec_ = &spec;
        ectx.bid_ = e.bid;
        ectx.tid_ = e.tid;
        ectx.counters_ = &counters[static_cast<std::size_t>(e.bid * threads + e.tid)];
        ectx.writers_ = &writers;
        if (e.fn) e.fn(ectx);
    }

    KernelMetrics km;
    km.name = spec.name;
    km.blocks = blocks;
    km.threads = threads;
    km.per_block.resize(static_cast<std::size_t>(blocks));
    for (std::int64_t b = 0; b < blocks; ++b) {
        std::span<const ThreadCounters> row(&counters[static_cast<std::size_t>(b * threads)],
                                            static_cast<std::size_t>(threads));
        km.per_block[static_cast<std::size_t>(b)] = make_block_metrics(row, params_.U);
    }
    return km;
}

}  // namespace mmm
