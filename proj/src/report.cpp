#include "mmm/report.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace mmm {

namespace {

using Json = nlohmann::ordered_json;

/// Field accessors paired with the column names, so CSV and JSON can never
/// disagree about order or content.
struct Column {
    const char* name;
    // Renders the field as its canonical string, or nullopt when absent.
    std::optional<std::string> (*get)(const ReportRow&);
    // Parses the canonical string back into the field.
    void (*set)(ReportRow&, const std::string&);
};

std::optional<std::string> opt_int(const std::optional<std::int64_t>& v) {
    if (!v) return std::nullopt;
    return std::to_string(*v);
}

std::optional<std::string> opt_rat(const std::optional<Rat>& v) {
    if (!v) return std::nullopt;
    return v->to_string();
}

std::int64_t parse_int(const std::string& s) {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("report: malformed integer '" + s + "'");
    return v;
}

const Column kColumns[] = {
    {"app", [](const ReportRow& r) -> std::optional<std::string> {
         if (r.app.empty()) return std::nullopt;
         return r.app;
     },
     [](ReportRow& r, const std::string& v) { r.app = v; }},
    {"variant", [](const ReportRow& r) -> std::optional<std::string> {
         if (r.variant.empty()) return std::nullopt;
         return r.variant;
     },
     [](ReportRow& r, const std::string& v) { r.variant = v; }},
#define MMM_INT_COL(field) \
    {#field, [](const ReportRow& r) { return opt_int(r.field); }, \
     [](ReportRow& r, const std::string& v) { r.field = parse_int(v); }}
#define MMM_RAT_COL(field) \
    {#field, [](const ReportRow& r) { return opt_rat(r.field); }, \
     [](ReportRow& r, const std::string& v) { r.field = Rat::parse(v); }}
    MMM_INT_COL(n),
    MMM_INT_COL(m),
    MMM_INT_COL(l),
    MMM_INT_COL(s),
    MMM_RAT_COL(U),
    MMM_INT_COL(Z),
    MMM_RAT_COL(W_meas),
    MMM_RAT_COL(W_pred),
    MMM_RAT_COL(S_meas),
    MMM_RAT_COL(S_pred),
    MMM_RAT_COL(O_meas),
    MMM_RAT_COL(O_pred),
    MMM_RAT_COL(N_meas),
    MMM_RAT_COL(N_pred),
    MMM_RAT_COL(L_meas),
    MMM_RAT_COL(L_pred),
    MMM_RAT_COL(C_meas),
    MMM_RAT_COL(C_pred),
    MMM_INT_COL(K),
    MMM_RAT_COL(T_bound),
    MMM_RAT_COL(ratio),
#undef MMM_INT_COL
#undef MMM_RAT_COL
};

}  // namespace

bool operator==(const ReportRow& a, const ReportRow& b) {
    for (const Column& col : kColumns)
        if (col.get(a) != col.get(b)) return false;
    return true;
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const Column& col : kColumns) v.emplace_back(col.name);
        return v;
    }();
    return names;
}

std::string to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    bool first = true;
    for (const Column& col : kColumns) {
        if (!first) out << ',';
        out << col.name;
        first = false;
    }
    out << '\n';
    for (const ReportRow& row : rows) {
        first = true;
        for (const Column& col : kColumns) {
            if (!first) out << ',';
            if (auto v = col.get(row)) out << *v;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<ReportRow>& rows) {
    Json arr = Json::array();
    for (const ReportRow& row : rows) {
        Json obj = Json::object();
        for (const Column& col : kColumns) {
            if (auto v = col.get(row))
                obj[col.name] = *v;
            else
                obj[col.name] = nullptr;
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::vector<ReportRow> rows_from_json(const std::string& text) {
    Json arr;
    try {
        arr = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("report: bad json: ") + e.what());
    }
    if (!arr.is_array()) throw std::invalid_argument("report: expected a json array");
    std::vector<ReportRow> rows;
    rows.reserve(arr.size());
    for (const Json& obj : arr) {
        if (!obj.is_object()) throw std::invalid_argument("report: expected row objects");
        ReportRow row;
        for (const Column& col : kColumns) {
            auto it = obj.find(col.name);
            if (it == obj.end() || it->is_null()) continue;
            if (!it->is_string())
                throw std::invalid_argument(std::string("report: field ") + col.name +
                                            " must be a string");
            col.set(row, it->get<std::string>());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mmm
