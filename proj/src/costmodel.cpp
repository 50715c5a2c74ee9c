#include "mmm/costmodel.hpp"

#include <stdexcept>
#include <utility>

namespace mmm {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

/// 2^e as an exact rational, without any int64 overflow concern.
Rat pow2_rat(std::int64_t e) {
    Rat::Big b = Rat::Big(1) << static_cast<unsigned>(e);
    return Rat(Rat::BigRat(b));
}

void require_positive(const Rat& v, const char* msg) {
    require(v > Rat(0), msg);
}

}  // namespace

CostTuple division_cost(Variant v, const CostInputs& in) {
    require(in.m >= 1 && in.n >= in.m, "division cost model requires n >= m >= 1");
    require_positive(in.U, "division cost model requires U > 0");
    const Rat U = in.U;
    const Rat mu = Rat(in.n - in.m + 1);
    const Rat m = Rat(in.m);
    CostTuple t;
    if (v == Variant::naive) {
        require(in.l >= 1, "division cost model requires l >= 1");
        const Rat l = Rat(in.l);
        t.W = mu * m * (2 * l + 1) / l;
        t.S = 3 * mu;
        t.O = 5 * mu * m * U / l;
        t.N = mu * m / l;
        t.L = mu;
        t.C = 3 + 5 * U;
    } else {
        require(in.s >= 1, "division cost model requires s >= 1");
        const Rat s = Rat(in.s);
        t.W = mu * m * (9 * s + 1) / (4 * s);
        t.S = 3 * mu;
        t.O = 9 * mu * m * U / (2 * s * s);
        t.N = mu * m / (2 * s * s);
        t.L = mu / s;
        t.C = 3 * s + 9 * U;
    }
    return t;
}

CostTuple multiplication_cost(const CostInputs& in) {
    require(in.n >= 1 && in.m >= 1, "multiplication cost model requires n, m >= 1");
    require(in.l >= 1, "multiplication cost model requires l >= 1");
    require(in.s >= 1 && in.s <= in.m && in.m % in.s == 0,
            "multiplication cost model requires s | m");
    require_positive(in.U, "multiplication cost model requires U > 0");
    // Throws std::domain_error unless m/s is a power of two: the addition
    // phase halves the number of partial-sum rows in each of its rounds.
    const int k = ilog2_exact(in.m / in.s);
    const Rat U = in.U;
    const Rat n(in.n);
    const Rat m(in.m);
    const Rat l(in.l);
    const Rat s(in.s);
    const Rat delta = n + s - 1;
    CostTuple t;
    t.W = (2 * m - Rat(1, 2)) * delta;
    t.S = 2 * s * s + s * k - s;
    t.O = delta * (5 * m * s + 2 * m - 3 * s * s) * U / (s * s * l);
    t.N = delta * (2 * m - s) / (s * s * l);
    t.L = Rat(k + 1);
    t.C = s * (2 * s - 1) + 2 * U * (s + 1);
    return t;
}

CostTuple gcd_cost(Variant v, const CostInputs& in) {
    require(in.m >= 1 && in.n >= in.m, "gcd cost model requires n >= m >= 1");
    require_positive(in.U, "gcd cost model requires U > 0");
    const Rat U = in.U;
    const Rat n(in.n);
    const Rat m(in.m);
    CostTuple t;
    if (v == Variant::naive) {
        require(in.l >= 1, "gcd cost model requires l >= 1");
        const Rat l = Rat(in.l);
        t.W = m * (2 * n * l + n + l - 1) / l;
        t.S = 3 * (m + n - 2);
        t.O = 5 * m * U * (n + l + 1) / l;
        t.N = m * (n + l + 1) / l;
        t.L = m + n - 2;
        t.C = 3 + 5 * U;
    } else {
        require(in.s >= 1, "gcd cost model requires s >= 1");
        const Rat s = Rat(in.s);
        t.W = (Rat(9, 4) + 6 / s) * m * m +
              (9 * n / 2 + n / (2 * s) + Rat(87, 8) * s + Rat(23, 2)) * m -
              Rat(345, 16) * s * s - Rat(77, 4) * s;
        t.S = 3 * n + 3 * m;
        t.O = 8 * m * U * (n + s) / (s * s);
        t.N = m * n / (s * s) + m / s;
        t.L = n / s + m / s;
        t.C = 3 * s + 8 * U;
    }
    return t;
}

CostTuple radix_cost(const CostInputs& in) {
    require(in.c >= 1, "sorting cost model requires key bit size c >= 1");
    require(in.n >= 1, "sorting cost model requires n >= 1");
    require(in.l >= 1, "sorting cost model requires l >= 1");
    require(in.s >= 1 && in.s <= 62, "sorting cost model requires 1 <= s <= 62");
    require_positive(in.U, "sorting cost model requires U > 0");
    // Throws std::domain_error unless l is a power of two.
    const int k = ilog2_exact(in.l);
    const Rat two_s = pow2_rat(in.s);
    // Each block holds 4l input elements, 4l sorted elements and a 2^s-entry
    // digit histogram in local memory.
    require(8 * Rat(in.l) + two_s <= Rat(in.Z),
            "sorting cost model requires 8*l + 2^s <= Z");
    const Rat U = in.U;
    const Rat n(in.n);
    const Rat l(in.l);
    const Rat s(in.s);
    const Rat c(in.c);
    CostTuple t;
    t.W = c * ((22 * s * l + s + 12) / (4 * s * l) +
               (two_s + 20 * two_s * l) / (16 * s * l * l) + 1) * n +
          c * (16 + 192 * l) / (16 * s);
    t.S = c * (8 * k + 16 * k / s + 41 + 54 / s);
    t.O = c * U * (9 * n / (2 * s * l) + 17 * two_s * n / (16 * s * l * l) - 1 / s);
    t.N = c / s * (1 / (2 * l) + two_s / (8 * l * l)) * n;
    t.L = 5 * c / s;
    t.C = s * (41 + 8 * k) + 12 + 9 * U;
    return t;
}

Rat division_time_ratio(const Rat& U, const Rat& Z) {
    require_positive(U, "division time ratio requires U > 0");
    require_positive(Z, "division time ratio requires Z > 0");
    return (3 + 5 * U) * Z / (3 * (Z + 21 * U));
}

Rat division_work_ratio(const Rat& Z) {
    require_positive(Z, "division work ratio requires Z > 0");
    return 8 * (Z + 1) / (9 * Z + 7);
}

Rat division_overhead_ratio(const Rat& Z) {
    require_positive(Z, "division overhead ratio requires Z > 0");
    return Rat(20, 441) * Z;
}

Rat gcd_time_ratio(const Rat& n, const Rat& U, const Rat& Z) {
    require_positive(n, "gcd time ratio requires n > 0");
    require_positive(U, "gcd time ratio requires U > 0");
    require_positive(Z, "gcd time ratio requires Z > 0");
    return (6 * n - 2 + Z) * (3 + 5 * U) * Z / ((18 * n + Z) * (Z + 16 * U));
}

Rat gcd_time_ratio_limit(const Rat& U, const Rat& Z) {
    require_positive(U, "gcd time ratio requires U > 0");
    require_positive(Z, "gcd time ratio requires Z > 0");
    return (3 + 5 * U) * Z / (3 * (Z + 16 * U));
}

Rat gcd_overhead_ratio(const Rat& n, const Rat& Z) {
    require_positive(n, "gcd overhead ratio requires n > 0");
    require_positive(Z, "gcd overhead ratio requires Z > 0");
    return Rat(5, 48) * Z * (2 * n + 2 + Z) / (6 * n + Z);
}

Rat multiplication_time_ratio(std::int64_t n, std::int64_t s, const Rat& U) {
    require(s >= 1 && n >= s && n % s == 0, "multiplication time ratio requires s | n");
    require_positive(U, "multiplication time ratio requires U > 0");
    const int lg_n = ilog2_exact(n);
    const int lg_ns = ilog2_exact(n / s);
    const Rat N(n);
    const Rat S(s);
    return (N * lg_n + 3 * N - 1) * (1 + 4 * U) /
           ((N * lg_ns + 3 * N - S) * (2 * U * S + 2 * U + 2 * S * S - S));
}

Rat multiplication_essential_ratio(std::int64_t n, std::int64_t s) {
    require(s >= 1 && n > s && n % s == 0,
            "multiplication essential ratio requires s | n, s < n");
    const int lg_n = ilog2_exact(n);
    const int lg_ns = ilog2_exact(n / s);
    return Rat(2 * lg_n) / (Rat(s) * lg_ns);
}

Rat multiplication_overhead_ratio(std::int64_t n, std::int64_t s) {
    require(n >= 1 && s >= 1, "multiplication overhead ratio requires n, s >= 1");
    const Rat N(n);
    const Rat S(s);
    return N * S * S * (7 * N - 3) / ((N + S - 1) * (5 * N * S + 2 * N - 3 * S * S));
}

Rat radix_leading_ratio(std::int64_t l, const Rat& U) {
    require_positive(U, "sorting leading ratio requires U > 0");
    const int k = ilog2_exact(l);
    require(k >= 1, "sorting leading ratio requires l >= 2");
    return Rat(7) * (8 * k + 9 * U) / (60 * k);
}

Rat radix_time_ratio(std::int64_t l, std::int64_t s, const Rat& U) {
    require(s >= 1 && s <= 62, "sorting time ratio requires 1 <= s <= 62");
    require_positive(U, "sorting time ratio requires U > 0");
    const int k = ilog2_exact(l);
    const Rat two_s = pow2_rat(s);
    const Rat L(l);
    const Rat S(s);
    return (14 * L + 2) * (53 + 8 * k + 9 * U) * S /
           ((14 * L + two_s) * (41 * S + 8 * S * k + 12 + 9 * U));
}

ThresholdResult threshold_check_division(const Rat& U, const Rat& Z) {
    ThresholdResult r;
    r.ratio = division_time_ratio(U, Z);
    r.optimized_wins = r.ratio > Rat(1);
    return r;
}

ThresholdResult threshold_check_gcd(const Rat& U, const Rat& Z) {
    ThresholdResult r;
    r.ratio = gcd_time_ratio_limit(U, Z);
    r.optimized_wins = r.ratio > Rat(1);
    return r;
}

ThresholdResult threshold_check_radix(std::int64_t l, const Rat& U) {
    ThresholdResult r;
    r.ratio = radix_leading_ratio(l, U);
    r.optimized_wins = r.ratio > Rat(1);
    return r;
}

ThresholdResult threshold_check_multiplication(std::int64_t n, std::int64_t s, const Rat& U) {
    ThresholdResult r;
    r.ratio = multiplication_time_ratio(n, s, U);
    r.optimized_wins = r.ratio > Rat(1);
    return r;
}

const std::vector<FormulaEntry>& formula_registry() {
    static const std::vector<FormulaEntry> reg = [] {
        std::vector<FormulaEntry> v;
        auto add_tuple = [&v](const std::string& prefix, const std::string& params,
                              std::function<CostTuple(const CostInputs&)> f) {
            auto pick = [f](Rat CostTuple::* field) {
                return [f, field](const CostInputs& in) { return f(in).*field; };
            };
            v.push_back({prefix + ".W", params, pick(&CostTuple::W)});
            v.push_back({prefix + ".S", params, pick(&CostTuple::S)});
            v.push_back({prefix + ".O", params, pick(&CostTuple::O)});
            v.push_back({prefix + ".N", params, pick(&CostTuple::N)});
            v.push_back({prefix + ".L", params, pick(&CostTuple::L)});
            v.push_back({prefix + ".C", params, pick(&CostTuple::C)});
        };
        add_tuple("division.naive", "n m l U",
                  [](const CostInputs& in) { return division_cost(Variant::naive, in); });
        add_tuple("division.optimized", "n m s U",
                  [](const CostInputs& in) { return division_cost(Variant::optimized, in); });
        add_tuple("multiplication", "n m l s U",
                  [](const CostInputs& in) { return multiplication_cost(in); });
        add_tuple("gcd.naive", "n m l U",
                  [](const CostInputs& in) { return gcd_cost(Variant::naive, in); });
        add_tuple("gcd.optimized", "n m s U",
                  [](const CostInputs& in) { return gcd_cost(Variant::optimized, in); });
        add_tuple("radix", "n c l s U Z",
                  [](const CostInputs& in) { return radix_cost(in); });
        v.push_back({"ratio.division.time", "U Z",
                     [](const CostInputs& in) { return division_time_ratio(in.U, Rat(in.Z)); }});
        v.push_back({"ratio.division.work", "Z",
                     [](const CostInputs& in) { return division_work_ratio(Rat(in.Z)); }});
        v.push_back({"ratio.division.overhead", "Z",
                     [](const CostInputs& in) { return division_overhead_ratio(Rat(in.Z)); }});
        v.push_back({"ratio.gcd.time", "n U Z",
                     [](const CostInputs& in) { return gcd_time_ratio(Rat(in.n), in.U, Rat(in.Z)); }});
        v.push_back({"ratio.gcd.limit", "U Z",
                     [](const CostInputs& in) { return gcd_time_ratio_limit(in.U, Rat(in.Z)); }});
        v.push_back({"ratio.gcd.overhead", "n Z",
                     [](const CostInputs& in) { return gcd_overhead_ratio(Rat(in.n), Rat(in.Z)); }});
        v.push_back({"ratio.multiplication.time", "n s U",
                     [](const CostInputs& in) { return multiplication_time_ratio(in.n, in.s, in.U); }});
        v.push_back({"ratio.multiplication.essential", "n s",
                     [](const CostInputs& in) { return multiplication_essential_ratio(in.n, in.s); }});
        v.push_back({"ratio.multiplication.overhead", "n s",
                     [](const CostInputs& in) { return multiplication_overhead_ratio(in.n, in.s); }});
        v.push_back({"ratio.radix.time", "l s U",
                     [](const CostInputs& in) { return radix_time_ratio(in.l, in.s, in.U); }});
        v.push_back({"ratio.radix.leading", "l U",
                     [](const CostInputs& in) { return radix_leading_ratio(in.l, in.U); }});
        return v;
    }();
    return reg;
}

const FormulaEntry* find_formula(const std::string& name) {
    for (const FormulaEntry& e : formula_registry()) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

}  // namespace mmm
