#include "tomoec/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace tomoec {

namespace {

const BigInt kSafeMax = (BigInt(1) << 53) - 1;  // largest exactly-representable double

void require(bool cond, const std::string& message) {
    if (!cond) throw ParseError(message);
}

std::int64_t small_int_from_json(const Json& j, const std::string& context) {
    BigInt v = int_from_json(j, context);
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max())
        throw ParseError(context + ": value out of range");
    return v.convert_to<std::int64_t>();
}

Json rational_to_json(const Rational& r) { return Json(r.str()); }

Json line_correction_to_json(const Correction& c) {
    return Json{{"dir", c.original_index},
                {"direction", {c.direction.a, c.direction.b}},
                {"t", c.t},
                {"measured", json_int(c.measured)},
                {"corrected", json_int(c.corrected)}};
}

}  // namespace

Json json_int(const BigInt& v) {
    if (v <= kSafeMax && v >= -kSafeMax) return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

BigInt int_from_json(const Json& j, const std::string& context) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
        return BigInt(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t pos = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        require(pos < s.size(), context + ": empty integer string");
        for (std::size_t i = pos; i < s.size(); ++i)
            require(s[i] >= '0' && s[i] <= '9', context + ": malformed integer '" + s + "'");
        return BigInt(s);
    }
    if (j.is_number_float())
        throw ParseError(context +
                         ": non-integral or oversized numeric literal; write big integers as "
                         "decimal strings");
    throw ParseError(context + ": expected an integer");
}

Json to_json(const Grid& grid) {
    Json rows = Json::array();
    for (int j = 0; j < grid.n; ++j) {
        Json row = Json::array();
        for (int i = 0; i < grid.m; ++i) row.push_back(json_int(grid.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"m", grid.m}, {"n", grid.n}, {"values", std::move(rows)}};
}

Grid grid_from_json(const Json& j) {
    require(j.is_object() && j.contains("m") && j.contains("n") && j.contains("values"),
            "grid: expected an object with m, n and values");
    const std::int64_t m = small_int_from_json(j.at("m"), "grid.m");
    const std::int64_t n = small_int_from_json(j.at("n"), "grid.n");
    require(m >= 1 && n >= 1 && m <= (1 << 20) && n <= (1 << 20), "grid: invalid dimensions");
    const Json& rows = j.at("values");
    require(rows.is_array() && rows.size() == static_cast<std::size_t>(n),
            "grid.values: expected " + std::to_string(n) + " rows");
    Grid grid(static_cast<int>(m), static_cast<int>(n));
    for (std::int64_t jj = 0; jj < n; ++jj) {
        const Json& row = rows[static_cast<std::size_t>(jj)];
        require(row.is_array() && row.size() == static_cast<std::size_t>(m),
                "grid.values: row " + std::to_string(jj) + " must hold " + std::to_string(m) +
                    " integers");
        for (std::int64_t ii = 0; ii < m; ++ii) {
            grid.at(static_cast<int>(ii), static_cast<int>(jj)) =
                int_from_json(row[static_cast<std::size_t>(ii)], "grid value");
        }
    }
    return grid;
}

Json directions_to_json(const DirectionSet& dirs) {
    Json out = Json::array();
    for (const Direction& d : dirs.dirs()) out.push_back(Json::array({d.a, d.b}));
    return out;
}

DirectionSet directions_from_json(const Json& j) {
    require(j.is_array() && !j.empty(), "directions: expected a nonempty array of [a,b] pairs");
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    raw.reserve(j.size());
    for (const Json& e : j) {
        require(e.is_array() && e.size() == 2, "directions: each entry must be [a,b]");
        raw.emplace_back(small_int_from_json(e[0], "direction.a"),
                         small_int_from_json(e[1], "direction.b"));
    }
    try {
        return make_directions(raw);
    } catch (const InvalidDirection& e) {
        throw ParseError(std::string("directions: ") + e.what());
    }
}

Json to_json(const LineSumTable& table) {
    Json sums = Json::array();
    for (std::size_t h = 0; h < table.direction_count(); ++h) {
        Json values = Json::array();
        for (std::int64_t t = table.t_min(h); t <= table.t_max(h); ++t) {
            values.push_back(json_int(table.line_exists(h, t) ? table.sum(h, t) : BigInt(0)));
        }
        sums.push_back(Json{{"t_min", table.t_min(h)}, {"values", std::move(values)}});
    }
    return Json{{"m", table.m()},
                {"n", table.n()},
                {"directions", directions_to_json(table.directions())},
                {"sums", std::move(sums)}};
}

LineSumTable table_from_json(const Json& j) {
    require(j.is_object() && j.contains("m") && j.contains("n") && j.contains("directions") &&
                j.contains("sums"),
            "line sums: expected an object with m, n, directions and sums");
    const std::int64_t m = small_int_from_json(j.at("m"), "line sums m");
    const std::int64_t n = small_int_from_json(j.at("n"), "line sums n");
    require(m >= 1 && n >= 1 && m <= (1 << 20) && n <= (1 << 20), "line sums: invalid dimensions");

    const Json& dirs_json = j.at("directions");
    DirectionSet dirs = directions_from_json(dirs_json);
    for (std::size_t h = 0; h < dirs.size(); ++h) {
        const Json& e = dirs_json[h];
        require(small_int_from_json(e[0], "direction.a") == dirs.at(h).a &&
                    small_int_from_json(e[1], "direction.b") == dirs.at(h).b,
                "line sums: direction " + dirs.at(h).str() +
                    " must be stored in normalized form (a >= 0, coprime, b = 1 when a = 0)");
    }

    LineSumTable table(static_cast<int>(m), static_cast<int>(n), std::move(dirs));
    const Json& sums = j.at("sums");
    require(sums.is_array() && sums.size() == table.direction_count(),
            "line sums: expected one sums entry per direction");
    for (std::size_t h = 0; h < table.direction_count(); ++h) {
        const Json& entry = sums[h];
        require(entry.is_object() && entry.contains("t_min") && entry.contains("values"),
                "line sums: each entry needs t_min and values");
        const std::int64_t tmin = small_int_from_json(entry.at("t_min"), "sums.t_min");
        require(tmin == table.t_min(h),
                "line sums: direction " + table.directions().at(h).str() + " must start at t_min=" +
                    std::to_string(table.t_min(h)));
        const Json& values = entry.at("values");
        const std::size_t expected =
            static_cast<std::size_t>(table.t_max(h) - table.t_min(h) + 1);
        require(values.is_array() && values.size() == expected,
                "line sums: direction " + table.directions().at(h).str() + " must store " +
                    std::to_string(expected) + " values");
        for (std::size_t idx = 0; idx < expected; ++idx) {
            const std::int64_t t = table.t_min(h) + static_cast<std::int64_t>(idx);
            BigInt v = int_from_json(values[idx], "line sum");
            if (table.line_exists(h, t)) {
                table.set_sum(h, t, std::move(v));
            } else {
                require(v == 0, "line sums: direction " + table.directions().at(h).str() +
                                    " has a nonzero sum at t=" + std::to_string(t) +
                                    " but that line does not meet the grid");
            }
        }
    }
    return table;
}

Json to_json(const ErrorSpec& spec) {
    Json entries = Json::array();
    for (const ErrorEntry& e : spec.entries) {
        entries.push_back(Json{{"dir", e.dir}, {"t", e.t}, {"delta", json_int(e.delta)}});
    }
    return Json{{"errors", std::move(entries)}};
}

ErrorSpec error_spec_from_json(const Json& j) {
    require(j.is_object() && j.contains("errors") && j.at("errors").is_array(),
            "error spec: expected an object with an errors array");
    ErrorSpec spec;
    for (const Json& e : j.at("errors")) {
        require(e.is_object() && e.contains("dir") && e.contains("t") && e.contains("delta"),
                "error spec: each entry needs dir, t and delta");
        ErrorEntry entry;
        entry.dir = static_cast<int>(small_int_from_json(e.at("dir"), "error.dir"));
        entry.t = small_int_from_json(e.at("t"), "error.t");
        entry.delta = int_from_json(e.at("delta"), "error.delta");
        spec.entries.push_back(std::move(entry));
    }
    return spec;
}

Json report_to_json(const CorrectionReport& report) {
    Json flagged = Json::array();
    for (const FlaggedDirection& f : report.flagged) {
        flagged.push_back(Json{{"dir", f.original_index},
                               {"direction", {f.direction.a, f.direction.b}},
                               {"level", f.level}});
    }
    Json corrections = Json::array();
    for (const Correction& c : report.corrections) corrections.push_back(line_correction_to_json(c));
    Json out{{"status", to_string(report.status)},
             {"flagged", std::move(flagged)},
             {"corrections", std::move(corrections)},
             {"total_errors_found", report.total_errors_found},
             {"budgets_unverified", report.budgets_unverified}};
    if (!report.reason.empty()) out["reason"] = report.reason;
    return out;
}

Json report_to_json(const CorrectOutcome& outcome, bool include_trace) {
    Json out = report_to_json(outcome.report);
    out["budgets"] =
        Json{{"max_errors", outcome.effective_max_errors}, {"max_dirs", outcome.effective_max_dirs}};
    if (!include_trace) return out;

    Json screen{{"totals", Json::array()},
                {"median", json_int(outcome.detection.screen.median)},
                {"flagged", outcome.detection.screen.flagged_originals}};
    for (const BigInt& t : outcome.detection.screen.totals_by_original)
        screen["totals"].push_back(json_int(t));

    Json attempts = Json::array();
    for (const WindowAttempt& a : outcome.detection.attempts) {
        Json cs = Json::array();
        for (const auto& [orig, c] : a.c_values)
            cs.push_back(Json{{"dir", orig}, {"c", json_int(c)}});
        attempts.push_back(Json{{"k", a.k},
                                {"window", a.window_originals},
                                {"c_values", std::move(cs)},
                                {"accepted", a.accepted}});
    }

    Json corrections = Json::array();
    for (const DirectionCorrectionTrace& tr : outcome.correction_traces) {
        Json cvals = Json::array();
        for (const Rational& v : tr.coefficients.values) cvals.push_back(rational_to_json(v));
        Json recurrence = Json::array();
        for (const Rational& b : tr.solution.recurrence) recurrence.push_back(rational_to_json(b));
        Json w = Json::array();
        for (std::size_t r = 0; r < tr.solution.vandermonde_inv.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < tr.solution.vandermonde_inv.cols(); ++c)
                row.push_back(rational_to_json(tr.solution.vandermonde_inv(r, c)));
            w.push_back(std::move(row));
        }
        Json nodes = Json::array();
        for (std::int64_t t : tr.solution.nodes) nodes.push_back(t);
        Json magnitudes = Json::array();
        for (const BigInt& x : tr.solution.magnitudes) magnitudes.push_back(json_int(x));
        corrections.push_back(Json{{"dir", tr.original_index},
                                   {"direction", {tr.direction.a, tr.direction.b}},
                                   {"error_bound", tr.s_bound},
                                   {"coefficients", std::move(cvals)},
                                   {"errors_found", tr.solution.s},
                                   {"recurrence", std::move(recurrence)},
                                   {"wrong_lines", std::move(nodes)},
                                   {"error_values", std::move(magnitudes)},
                                   {"vandermonde_inverse", std::move(w)}});
    }

    out["trace"] = Json{{"screen", std::move(screen)},
                        {"detection", std::move(attempts)},
                        {"final_level", outcome.detection.final_k},
                        {"corrections", std::move(corrections)}};
    return out;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << contents;
    if (!out) throw Error("failed writing file: " + path);
}

Json parse_json_file(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace tomoec
