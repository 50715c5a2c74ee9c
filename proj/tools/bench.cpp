// Compares wall-clock time of the block interpreter with OpenMP-parallel
// block execution against the serial reference path, on a few mid-size
// instances of each algorithm. Both paths must produce identical outputs and
// identical metrics; the program exits nonzero if they ever disagree.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>

#include "mmm/division.hpp"
#include "mmm/gcd.hpp"
#include "mmm/multiplication.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_of(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Case {
    std::string name;
    // Returns the program work counter so the two paths can be compared.
    std::function<std::int64_t(const mmm::MachineParams&)> run;
};

}  // namespace

int main() {
    const mmm::Field F(101);
    std::mt19937_64 rng(2024);
    const std::int64_t n = 2048, m = 1024;
    const mmm::Poly a = mmm::random_poly(rng, n, F);
    const mmm::Poly b = mmm::random_poly(rng, m, F);

    const std::vector<Case> cases = {
        {"division naive l=128",
         [&](const mmm::MachineParams& mp) {
             return mmm::run_division(mmm::Variant::naive, mp, F, a, b, 128).sim.metrics.W;
         }},
        {"division optimized s=64",
         [&](const mmm::MachineParams& mp) {
             return mmm::run_division(mmm::Variant::optimized, mp, F, a, b, 64).sim.metrics.W;
         }},
        {"multiplication s=4 l=64",
         [&](const mmm::MachineParams& mp) {
             return mmm::run_multiplication(mp, F, a, b, 4, 64).sim.metrics.W;
         }},
        {"gcd naive l=128",
         [&](const mmm::MachineParams& mp) {
             return mmm::run_gcd(mmm::Variant::naive, mp, F, a, b, 128).sim.metrics.W;
         }},
        {"gcd optimized s=64",
         [&](const mmm::MachineParams& mp) {
             return mmm::run_gcd(mmm::Variant::optimized, mp, F, a, b, 64).sim.metrics.W;
         }},
    };

#ifdef MMM_HAVE_OPENMP
    std::cout << "block execution: OpenMP enabled\n";
#else
    std::cout << "block execution: OpenMP not available (parallel path runs serially)\n";
#endif
    std::cout << std::left << std::setw(28) << "case" << std::right << std::setw(12)
              << "serial[s]" << std::setw(12) << "parallel[s]" << std::setw(10)
              << "speedup" << "\n";

    bool all_equal = true;
    for (const Case& c : cases) {
        mmm::MachineParams serial{mmm::Rat(4), 1 << 20, false};
        mmm::MachineParams parallel{mmm::Rat(4), 1 << 20, true};
        std::int64_t w_serial = 0, w_parallel = 0;
        const double ts = seconds_of([&] { w_serial = c.run(serial); });
        const double tp = seconds_of([&] { w_parallel = c.run(parallel); });
        all_equal = all_equal && w_serial == w_parallel;
        std::cout << std::left << std::setw(28) << c.name << std::right << std::fixed
                  << std::setprecision(3) << std::setw(12) << ts << std::setw(12) << tp
                  << std::setprecision(2) << std::setw(10) << (tp > 0 ? ts / tp : 0.0)
                  << (w_serial == w_parallel ? "" : "  MISMATCH") << "\n";
    }
    if (!all_equal) {
        std::cerr << "serial and parallel work counters diverged\n";
        return 1;
    }
    return 0;
}
