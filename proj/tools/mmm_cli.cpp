// Experiment runner: simulates the blocked polynomial-arithmetic kernels on
// the abstract machine, sweeps the closed-form cost formulas, evaluates the
// running-time-estimate ratios, and cross-checks simulated results against
// the serial reference implementations.
//
// Exit codes: 0 success, 1 usage or invalid input, 2 verification failure,
// 3 simulation error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "mmm/costmodel.hpp"
#include "mmm/division.hpp"
#include "mmm/gcd.hpp"
#include "mmm/multiplication.hpp"
#include "mmm/oracle.hpp"
#include "mmm/report.hpp"
#include "mmm/testhooks.hpp"

namespace {

using mmm::CostInputs;
using mmm::CostTuple;
using mmm::Field;
using mmm::Poly;
using mmm::Rat;
using mmm::ReportRow;
using mmm::Variant;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
}

Rat parse_u(const std::string& text) {
    Rat u;
    try {
        u = Rat::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad --U value: ") + e.what());
    }
    need(u > Rat(1), "U must exceed 1");
    return u;
}

/// Inclusive integer progression "v", "lo:hi:+k" (arithmetic) or "lo:hi:*k"
/// (geometric), e.g. "1:64:*2" -> 1,2,4,...,64.
struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    char op = '+';
    std::int64_t step = 1;

    std::vector<std::int64_t> values() const {
        std::vector<std::int64_t> out;
        for (std::int64_t v = lo; v <= hi;) {
            out.push_back(v);
            if (op == '*') {
                if (v > hi / step) break;  // next would overflow past hi
                v *= step;
            } else {
                v += step;
            }
        }
        return out;
    }
};

Range parse_range(const std::string& text, const std::string& flag) {
    const auto bad = [&] { throw UsageError("bad " + flag + " range '" + text + "'"); };
    Range r;
    const auto c1 = text.find(':');
    try {
        if (c1 == std::string::npos) {
            std::size_t pos = 0;
            r.lo = r.hi = std::stoll(text, &pos);
            if (pos != text.size()) bad();
            return r;
        }
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos) bad();
        std::size_t pos = 0;
        const std::string lo_s = text.substr(0, c1);
        const std::string hi_s = text.substr(c1 + 1, c2 - c1 - 1);
        std::string step_s = text.substr(c2 + 1);
        r.lo = std::stoll(lo_s, &pos);
        if (pos != lo_s.size()) bad();
        r.hi = std::stoll(hi_s, &pos);
        if (pos != hi_s.size()) bad();
        if (step_s.empty()) bad();
        if (step_s[0] == '*' || step_s[0] == '+') {
            r.op = step_s[0];
            step_s.erase(0, 1);
        }
        r.step = std::stoll(step_s, &pos);
        if (pos != step_s.size()) bad();
    } catch (const std::logic_error&) {  // stoll failures
        bad();
    }
    if (r.lo > r.hi || r.step < 1 || (r.op == '*' && (r.step < 2 || r.lo < 1))) bad();
    return r;
}

Variant parse_variant(const std::string& text) {
    if (text == "naive") return Variant::naive;
    if (text == "optimized") return Variant::optimized;
    throw UsageError("bad --variant '" + text + "' (naive|optimized)");
}

void emit(const std::vector<ReportRow>& rows, const std::string& format) {
    if (format == "json")
        std::cout << mmm::to_json(rows);
    else
        std::cout << mmm::to_csv(rows);
}

// ---------------------------------------------------------------- run ----

struct RunOpts {
    std::string app;
    std::string variant = "naive";
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t l = 0;
    std::int64_t s = 0;
    std::int64_t p = 101;
    std::string U = "2";
    std::int64_t Z = 1024;
    std::int64_t P = 0;  // 0 = use the antichain width K
    std::uint64_t seed = 42;
    std::string format = "csv";
    bool serial = false;
};

void set_measured(ReportRow& row, const mmm::SimReport& sim) {
    const mmm::ProgramMetrics& pm = sim.metrics;
    row.W_meas = Rat(pm.W);
    row.S_meas = Rat(pm.S);
    row.O_meas = pm.O;
    row.N_meas = Rat(pm.structure.N);
    row.L_meas = Rat(pm.structure.L);
    row.C_meas = pm.C;
    row.K = pm.structure.K;
}

void set_predicted(ReportRow& row, const CostTuple& t) {
    row.W_pred = t.W;
    row.S_pred = t.S;
    row.O_pred = t.O;
    row.N_pred = t.N;
    row.L_pred = t.L;
    row.C_pred = t.C;
}

int do_run(const RunOpts& o) {
    const Rat u = parse_u(o.U);
    need(o.n >= 1 && o.m >= 1, "run requires --n >= 1 and --m >= 1");
    need(o.Z >= 1, "run requires --Z >= 1");
    const Variant variant = parse_variant(o.variant);

    const Field F(o.p);  // validates primality
    std::mt19937_64 rng(o.seed);
    const Poly a = mmm::random_poly(rng, o.n, F);
    const Poly b = mmm::random_poly(rng, o.m, F);
    const mmm::MachineParams mp{u, o.Z, !o.serial};

    ReportRow row;
    row.app = o.app;
    row.n = o.n;
    row.m = o.m;
    row.U = u;
    row.Z = o.Z;

    CostInputs ci;
    ci.n = o.n;
    ci.m = o.m;
    ci.U = u;
    ci.Z = o.Z;

    const mmm::SimReport* sim = nullptr;
    mmm::DivisionResult div;
    mmm::MulResult mul;
    mmm::GcdResult gcd;

    if (o.app == "division") {
        need(o.n >= o.m, "division requires n >= m");
        row.variant = o.variant;
        if (variant == Variant::naive) {
            need(o.l >= 1, "naive division requires --l >= 1");
            need(2 * o.l <= o.Z, "naive division requires 2*l <= Z");
            row.l = o.l;
            ci.l = o.l;
        } else {
            need(o.s >= 1, "optimized division requires --s >= 1");
            need(7 * o.s <= o.Z, "optimized division requires 7*s <= Z");
            row.s = o.s;
            ci.s = o.s;
        }
        div = mmm::run_division(variant, mp, F, a, b,
                                variant == Variant::naive ? o.l : o.s);
        sim = &div.sim;
        set_predicted(row, mmm::division_cost(variant, ci));
    } else if (o.app == "multiplication") {
        need(o.l >= 1, "multiplication requires --l >= 1");
        need(o.s >= 1, "multiplication requires --s >= 1");
        need(2 * o.s * o.l + 2 * o.s - 1 <= o.Z,
             "multiplication requires 2*s*l + 2*s - 1 <= Z");
        row.variant = o.s == 1 ? "naive" : "optimized";
        row.l = o.l;
        row.s = o.s;
        ci.l = o.l;
        ci.s = o.s;
        mul = mmm::run_multiplication(mp, F, a, b, o.s, o.l);
        sim = &mul.sim;
        try {
            set_predicted(row, mmm::multiplication_cost(ci));
        } catch (const std::exception&) {
            // The closed-form model needs s | m with m/s a power of two;
            // other sizes simulate fine and report measured columns only.
        }
    } else {  // gcd
        need(o.n >= o.m, "gcd requires n >= m");
        row.variant = o.variant;
        if (variant == Variant::naive) {
            need(o.l >= 1, "naive gcd requires --l >= 1");
            need(2 * o.l <= o.Z, "naive gcd requires 2*l <= Z");
            row.l = o.l;
            ci.l = o.l;
        } else {
            need(o.s >= 2, "optimized gcd requires --s >= 2");
            need(6 * o.s <= o.Z, "optimized gcd requires 6*s <= Z");
            row.s = o.s;
            ci.s = o.s;
        }
        gcd = mmm::run_gcd(variant, mp, F, a, b, variant == Variant::naive ? o.l : o.s);
        sim = &gcd.sim;
        set_predicted(row, mmm::gcd_cost(variant, ci));
    }

    set_measured(row, *sim);
    need(o.P >= 0, "--P must not be negative");
    const std::int64_t P = o.P > 0 ? o.P : std::max<std::int64_t>(1, sim->metrics.structure.K);
    row.T_bound = mmm::graham_brent_bound(sim->metrics, P);
    emit({row}, o.format);
    return 0;
}

// -------------------------------------------------------------- sweep ----

struct SweepOpts {
    std::string app;      // empty when --formula is used
    std::string formula;  // empty when an app tuple is swept
    std::string variant;  // empty = infer
    std::string n = "1024", m = "512", l = "64", s = "1", c = "32", Z = "1024";
    std::string U = "2";
    std::string format = "csv";
};

struct SweptFormula {
    std::string app;             // value for the app column
    bool fixed_variant = false;  // variant text comes from the name itself
    std::string variant;
    std::string params;                               // CostInputs fields read
    std::vector<const mmm::FormulaEntry*> entries;    // one, or six for a tuple
};

SweptFormula resolve_sweep_target(const SweepOpts& o) {
    SweptFormula out;
    if (!o.formula.empty()) {
        need(o.app.empty(), "pass either an app or --formula, not both");
        const mmm::FormulaEntry* e = mmm::find_formula(o.formula);
        if (e == nullptr) {
            std::string names;
            for (const auto& f : mmm::formula_registry()) names += "\n  " + f.name;
            throw UsageError("unknown formula '" + o.formula + "'; known:" + names);
        }
        out.entries.push_back(e);
        out.params = e->params;
        // Derive the app/variant columns from the dotted name.
        std::vector<std::string> parts;
        std::string rest = e->name;
        while (!rest.empty()) {
            const auto dot = rest.find('.');
            parts.push_back(rest.substr(0, dot));
            if (dot == std::string::npos) break;
            rest.erase(0, dot + 1);
        }
        out.fixed_variant = true;
        if (parts[0] == "ratio") {
            out.app = parts[1];
        } else {
            out.app = parts[0];
            if (parts.size() == 3) out.variant = parts[1];  // division.naive.W
            else out.fixed_variant = false;                 // multiplication.W etc.
        }
        return out;
    }
    need(!o.app.empty(), "sweep needs an app or --formula");
    out.app = o.app;
    std::string prefix = o.app;
    if (o.app == "division" || o.app == "gcd") {
        // Default to the variant the swept parameter suggests: an --s range
        // targets the blocked form, otherwise the naive one.
        out.variant = !o.variant.empty()       ? o.variant
                      : o.s.find(':') != std::string::npos ? "optimized"
                                                           : "naive";
        parse_variant(out.variant);  // validates the spelling
        out.fixed_variant = true;
        prefix += "." + out.variant;
    } else {
        need(o.variant.empty(), "--variant only applies to division and gcd");
    }
    for (const char* q : {".W", ".S", ".O", ".N", ".L", ".C"}) {
        const mmm::FormulaEntry* e = mmm::find_formula(prefix + q);
        need(e != nullptr, "no cost model named '" + prefix + "'");
        out.entries.push_back(e);
    }
    out.params = out.entries.front()->params;
    return out;
}

bool reads(const SweptFormula& f, const char* field) {
    const std::string& p = f.params;
    const std::string want(field);
    std::size_t pos = 0;
    while ((pos = p.find(want, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || p[pos - 1] == ' ';
        const std::size_t end = pos + want.size();
        const bool right_ok = end == p.size() || p[end] == ' ';
        if (left_ok && right_ok) return true;
        pos = end;
    }
    return false;
}

void store_value(ReportRow& row, const std::string& name, const Rat& v) {
    const auto suffix = name.rfind('.');
    const std::string q = name.substr(suffix + 1);
    if (name.rfind("ratio.", 0) == 0) row.ratio = v;
    else if (q == "W") row.W_pred = v;
    else if (q == "S") row.S_pred = v;
    else if (q == "O") row.O_pred = v;
    else if (q == "N") row.N_pred = v;
    else if (q == "L") row.L_pred = v;
    else row.C_pred = v;
}

int do_sweep(const SweepOpts& o) {
    const Rat u = parse_u(o.U);
    const SweptFormula target = resolve_sweep_target(o);
    const std::vector<std::int64_t> ns = parse_range(o.n, "--n").values();
    const std::vector<std::int64_t> ms = parse_range(o.m, "--m").values();
    const std::vector<std::int64_t> ls = parse_range(o.l, "--l").values();
    const std::vector<std::int64_t> ss = parse_range(o.s, "--s").values();
    const std::vector<std::int64_t> cs = parse_range(o.c, "--c").values();
    const std::vector<std::int64_t> zs = parse_range(o.Z, "--Z").values();

    // Sweep the grid in odometer order, slowest field first.
    std::vector<ReportRow> rows;
    for (std::int64_t n : (reads(target, "n") ? ns : std::vector<std::int64_t>{0}))
    for (std::int64_t m : (reads(target, "m") ? ms : std::vector<std::int64_t>{0}))
    for (std::int64_t l : (reads(target, "l") ? ls : std::vector<std::int64_t>{0}))
    for (std::int64_t s : (reads(target, "s") ? ss : std::vector<std::int64_t>{0}))
    for (std::int64_t c : (reads(target, "c") ? cs : std::vector<std::int64_t>{0}))
    for (std::int64_t z : (reads(target, "Z") ? zs : std::vector<std::int64_t>{0})) {
        CostInputs ci;
        ReportRow row;
        row.app = target.app;
        if (reads(target, "n")) { ci.n = n; row.n = n; }
        if (reads(target, "m")) { ci.m = m; row.m = m; }
        if (reads(target, "l")) { ci.l = l; row.l = l; }
        if (reads(target, "s")) { ci.s = s; row.s = s; }
        if (reads(target, "c")) ci.c = c;  // no report column for the bit size
        if (reads(target, "Z")) { ci.Z = z; row.Z = z; }
        if (reads(target, "U")) { ci.U = u; row.U = u; }
        row.variant = target.fixed_variant ? target.variant
                      : reads(target, "s") ? (s == 1 ? "naive" : "optimized")
                                           : "";
        try {
            for (const mmm::FormulaEntry* e : target.entries)
                store_value(row, e->name, e->eval(ci));
        } catch (const std::exception& e) {
            std::string at;
            for (const auto& [k, v] : {std::pair<const char*, std::int64_t>{"n", n},
                                       {"m", m}, {"l", l}, {"s", s}, {"c", c}, {"Z", z}})
                if (reads(target, k)) at += std::string(" ") + k + "=" + std::to_string(v);
            throw UsageError("sweep failed at" + at + ": " + e.what());
        }
        rows.push_back(std::move(row));
    }
    emit(rows, o.format);
    return 0;
}

// ----------------------------------------------------------- estimate ----

struct EstimateOpts {
    std::string app;
    std::string U = "2";
    std::int64_t Z = 0;
    std::int64_t n = 0;
    std::int64_t s = 0;
    std::int64_t l = 0;
};

int do_estimate(const EstimateOpts& o) {
    const Rat u = parse_u(o.U);
    Rat ratio;
    if (o.app == "division") {
        need(o.Z >= 1, "estimate division requires --Z >= 1");
        ratio = mmm::division_time_ratio(u, Rat(o.Z));
    } else if (o.app == "gcd") {
        need(o.Z >= 1, "estimate gcd requires --Z >= 1");
        ratio = o.n > 0 ? mmm::gcd_time_ratio(Rat(o.n), u, Rat(o.Z))
                        : mmm::gcd_time_ratio_limit(u, Rat(o.Z));
    } else if (o.app == "multiplication") {
        need(o.n >= 1 && o.s >= 1, "estimate multiplication requires --n and --s");
        ratio = mmm::multiplication_time_ratio(o.n, o.s, u);
    } else {  // radix
        need(o.l >= 2, "estimate radix requires --l >= 2");
        ratio = o.s > 0 ? mmm::radix_time_ratio(o.l, o.s, u)
                        : mmm::radix_leading_ratio(o.l, u);
    }
    const bool wins = ratio > Rat(1);
    std::cout << o.app << ": ratio=" << ratio.to_string()
              << " winner=" << (wins ? "optimized" : "naive") << "\n";
    return 0;
}

// ------------------------------------------------------------- verify ----

struct VerifyOpts {
    std::string app = "all";
    std::int64_t trials = 200;
    std::uint64_t seed = 42;
    std::int64_t p = 101;
    std::string U = "2";
    std::int64_t Z = 1024;
    std::int64_t max_n = 64;
    bool inject_fault = false;
};

/// Draw from [lo, hi] deterministically.
std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

int do_verify(const VerifyOpts& o) {
    const Rat u = parse_u(o.U);
    need(o.trials >= 1, "verify requires --trials >= 1");
    need(o.max_n >= 1, "verify requires --max-n >= 1");
    need(o.Z >= 15, "verify requires --Z >= 15 (room for the smallest blocks)");
    const bool run_div = o.app == "all" || o.app == "division";
    const bool run_mul = o.app == "all" || o.app == "multiplication";
    const bool run_gcd = o.app == "all" || o.app == "gcd";

    const Field F(o.p);
    const mmm::MachineParams mp{u, o.Z, true};
    std::mt19937_64 rng(o.seed);
    mmm::testhooks::corrupt_division_output = o.inject_fault;

    std::int64_t div_ok = 0, mul_ok = 0, gcd_ok = 0;
    std::int64_t fails = 0;
    const auto report_fail = [&fails](const std::string& what, std::int64_t t,
                                      std::int64_t n, std::int64_t m) {
        std::cerr << "verify: " << what << " mismatch at trial " << t << " (n=" << n
                  << ", m=" << m << ")\n";
        ++fails;
    };

    for (std::int64_t t = 0; t < o.trials; ++t) {
        const std::int64_t m = pick(rng, 1, o.max_n);
        const std::int64_t n = pick(rng, m, o.max_n);
        const std::int64_t nm = pick(rng, 1, o.max_n);  // independent size for products
        const std::int64_t l = pick(rng, 1, std::min<std::int64_t>(8, o.Z / 2));
        const std::int64_t s_div = pick(rng, 1, std::min<std::int64_t>(8, o.Z / 7));
        const std::int64_t s_gcd = pick(rng, 2, std::min<std::int64_t>(8, o.Z / 6));

        Poly a = mmm::random_poly(rng, n, F);
        Poly b = mmm::random_poly(rng, m, F);
        Poly am = mmm::random_poly(rng, nm, F);

        if (run_div) {
            const auto naive = mmm::run_division(Variant::naive, mp, F, a, b, l);
            const auto opt = mmm::run_division(Variant::optimized, mp, F, a, b, s_div);
            const auto [q_ref, r_ref] = mmm::oracle_divmod(a, b, F);
            const Poly recomposed =
                mmm::oracle_add(mmm::oracle_mul(naive.q, b, F), naive.r, F);
            if (naive.q == opt.q && naive.r == opt.r && naive.q == q_ref &&
                naive.r == r_ref && recomposed == a && naive.r.degree() < b.degree())
                ++div_ok;
            else
                report_fail("division", t, n, m);
        }
        if (run_mul) {
            bool all_match = true;
            const Poly f_ref = mmm::oracle_mul(am, b, F);
            for (std::int64_t s : {std::int64_t{1}, std::int64_t{2}, std::int64_t{4}}) {
                const std::int64_t lw =
                    std::min<std::int64_t>(l, (o.Z - 2 * s + 1) / (2 * s));
                const auto res = mmm::run_multiplication(mp, F, am, b, s, std::max<std::int64_t>(1, lw));
                all_match = all_match && res.f == f_ref;
            }
            if (all_match) ++mul_ok;
            else report_fail("multiplication", t, nm, m);
        }
        if (run_gcd) {
            const Poly g_ref = mmm::oracle_gcd(a, b, F);
            const auto naive = mmm::run_gcd(Variant::naive, mp, F, a, b, l);
            const auto opt = mmm::run_gcd(Variant::optimized, mp, F, a, b, s_gcd);
            if (naive.g == g_ref && opt.g == g_ref) ++gcd_ok;
            else report_fail("gcd", t, n, m);
        }
    }

    if (run_div) std::cout << "division: " << div_ok << "/" << o.trials << " ok\n";
    if (run_mul) std::cout << "multiplication: " << mul_ok << "/" << o.trials << " ok\n";
    if (run_gcd) std::cout << "gcd: " << gcd_ok << "/" << o.trials << " ok\n";
    return fails == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and cost-model toolkit for blocked polynomial arithmetic"};
    app.require_subcommand(1);

    RunOpts run;
    CLI::App* c_run = app.add_subcommand(
        "run", "Simulate one instance; report measured vs predicted metrics");
    c_run->add_option("app", run.app, "division|multiplication|gcd")
        ->required()
        ->check(CLI::IsMember({"division", "multiplication", "gcd"}));
    c_run->add_option("--variant", run.variant, "naive|optimized (division, gcd)");
    c_run->add_option("--n", run.n, "terms of the first operand")->required();
    c_run->add_option("--m", run.m, "terms of the second operand")->required();
    c_run->add_option("--l", run.l, "threads per block (naive variants, multiplication)");
    c_run->add_option("--s", run.s, "blocking parameter (optimized variants, multiplication)");
    c_run->add_option("--p", run.p, "field characteristic (prime), default 101");
    c_run->add_option("--U", run.U, "word-transfer cost (rational > 1), default 2");
    c_run->add_option("--Z", run.Z, "local memory words per processor, default 1024");
    c_run->add_option("--P", run.P, "processors for the time bound; default: antichain width");
    c_run->add_option("--seed", run.seed, "random-generator seed, default 42");
    c_run->add_option("--format", run.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    c_run->add_flag("--serial", run.serial, "run block simulation single-threaded");

    SweepOpts sweep;
    CLI::App* c_sweep = app.add_subcommand(
        "sweep", "Evaluate cost formulas over parameter ranges (lo:hi:+k or lo:hi:*k)");
    c_sweep->add_option("app", sweep.app, "division|multiplication|gcd|radix");
    c_sweep->add_option("--formula", sweep.formula, "single formula by registry name");
    c_sweep->add_option("--variant", sweep.variant, "naive|optimized (division, gcd)");
    c_sweep->add_option("--n", sweep.n, "terms of the first operand; sorting key count");
    c_sweep->add_option("--m", sweep.m, "terms of the second operand");
    c_sweep->add_option("--l", sweep.l, "threads per block");
    c_sweep->add_option("--s", sweep.s, "blocking parameter");
    c_sweep->add_option("--c", sweep.c, "key bit size (radix only)");
    c_sweep->add_option("--Z", sweep.Z, "local memory words per processor");
    c_sweep->add_option("--U", sweep.U, "word-transfer cost (rational > 1), default 2");
    c_sweep->add_option("--format", sweep.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    EstimateOpts est;
    CLI::App* c_est = app.add_subcommand(
        "estimate", "Evaluate the naive/optimized running-time ratio; name the winner");
    c_est->add_option("app", est.app, "division|multiplication|gcd|radix")
        ->required()
        ->check(CLI::IsMember({"division", "multiplication", "gcd", "radix"}));
    c_est->add_option("--U", est.U, "word-transfer cost (rational > 1), default 2");
    c_est->add_option("--Z", est.Z, "local memory words per processor");
    c_est->add_option("--n", est.n, "operand terms (gcd finite form, multiplication)");
    c_est->add_option("--s", est.s, "blocking parameter (multiplication, radix)");
    c_est->add_option("--l", est.l, "threads per block (radix)");

    VerifyOpts verify;
    CLI::App* c_verify = app.add_subcommand(
        "verify", "Cross-check simulated algorithms against serial references");
    c_verify->add_option("app", verify.app, "all|division|multiplication|gcd")
        ->check(CLI::IsMember({"all", "division", "multiplication", "gcd"}));
    c_verify->add_option("--trials", verify.trials, "instances per algorithm, default 200");
    c_verify->add_option("--seed", verify.seed, "random-generator seed, default 42");
    c_verify->add_option("--p", verify.p, "field characteristic (prime), default 101");
    c_verify->add_option("--U", verify.U, "word-transfer cost (rational > 1), default 2");
    c_verify->add_option("--Z", verify.Z, "local memory words per processor, default 1024");
    c_verify->add_option("--max-n", verify.max_n, "size cap for random operands, default 64");
    c_verify->add_flag("--inject-fault", verify.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_run->parsed()) return do_run(run);
        if (c_sweep->parsed()) return do_sweep(sweep);
        if (c_est->parsed()) return do_estimate(est);
        return do_verify(verify);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mmm::SimError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
