#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmm/rational.hpp"

namespace mmm {

/// One experiment result: inputs, measured quantities (from simulation),
/// predicted quantities (from the closed-form models), and derived bounds.
/// Absent fields stay disengaged and serialize as empty (CSV) or null (JSON)
/// — never as zero, which is a legitimate value.
struct ReportRow {
    std::string app;      ///< division | multiplication | gcd | radix
    std::string variant;  ///< naive | optimized | empty when not applicable

    std::optional<std::int64_t> n;
    std::optional<std::int64_t> m;
    std::optional<std::int64_t> l;
    std::optional<std::int64_t> s;
    std::optional<Rat> U;
    std::optional<std::int64_t> Z;

    std::optional<Rat> W_meas, W_pred;
    std::optional<Rat> S_meas, S_pred;
    std::optional<Rat> O_meas, O_pred;
    std::optional<Rat> N_meas, N_pred;
    std::optional<Rat> L_meas, L_pred;
    std::optional<Rat> C_meas, C_pred;

    std::optional<std::int64_t> K;   ///< maximum antichain weight of the block DAG
    std::optional<Rat> T_bound;      ///< (N/P + L) * C running-time estimate
    std::optional<Rat> ratio;        ///< time-estimate ratio or swept formula value

    friend bool operator==(const ReportRow& a, const ReportRow& b);
};

/// Column names in the exact serialization order.
const std::vector<std::string>& report_columns();

/// CSV: header line plus one line per row. Values use the canonical rational
/// rendering (decimal when terminating, "num/den" otherwise); absent -> empty
/// field. No value ever contains a comma, so no quoting is needed.
std::string to_csv(const std::vector<ReportRow>& rows);

/// JSON array of objects, one key per column in the same order; absent ->
/// null, all present values rendered as the same canonical strings as CSV.
std::string to_json(const std::vector<ReportRow>& rows);

/// Inverse of to_json; used to check round-tripping. Throws
/// std::invalid_argument on malformed input.
std::vector<ReportRow> rows_from_json(const std::string& text);

}  // namespace mmm
