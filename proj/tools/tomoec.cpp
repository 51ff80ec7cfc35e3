// tomoec: compute, corrupt, verify and exactly repair line sums of an
// integer grid in several lattice directions.

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tomoec/io.hpp"
#include "tomoec/prony.hpp"
#include "tomoec/relations.hpp"
#include "tomoec/simulate.hpp"

namespace {

using namespace tomoec;

constexpr int kExitOk = 0;
constexpr int kExitAssumption = 1;
constexpr int kExitInput = 2;

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload << "\n";
    } else {
        write_file(out_path, payload + "\n");
    }
}

bool trace_env_enabled() {
    const char* v = std::getenv("TOMOEC_TRACE");
    return v != nullptr && std::strcmp(v, "") != 0 && std::strcmp(v, "0") != 0;
}

void validate_budgets(int f, int g, int d, bool unsafe) {
    if (g > f || f < 0 || g < 0)
        throw InvalidParameters("budgets must satisfy 0 <= --max-dirs <= --max-errors");
    if (2 * f >= d && !unsafe)
        throw InvalidParameters("--max-errors " + std::to_string(f) +
                                " is not below d/2 for d=" + std::to_string(d) +
                                " directions; pass --unsafe to proceed without guarantees");
}

struct BudgetFlags {
    std::optional<int> f;
    std::optional<int> g;
    bool unsafe = false;

    std::pair<int, int> resolve(int d) const {
        const int def = (d - 1) / 2;
        int fe = f.value_or(def);
        int ge = g.value_or(std::min(fe, def));
        validate_budgets(fe, ge, d, unsafe);
        return {fe, ge};
    }
};

int run_project(const std::string& grid_path, const std::string& dirs_path,
                const std::string& out_path) {
    Grid grid = grid_from_json(parse_json_file(grid_path));
    DirectionSet dirs = directions_from_json(parse_json_file(dirs_path));
    LineSumTable table = project(grid, dirs);
    emit(canonical_dump(to_json(table)), out_path);
    return kExitOk;
}

int run_corrupt(const std::string& sums_path, const std::string& spec_path,
                std::optional<std::uint64_t> seed, const BudgetFlags& budgets,
                const std::string& out_path) {
    LineSumTable table = table_from_json(parse_json_file(sums_path));
    auto [f, g] = budgets.resolve(static_cast<int>(table.direction_count()));

    ErrorSpec spec;
    if (!spec_path.empty()) {
        spec = error_spec_from_json(parse_json_file(spec_path));
    } else if (seed) {
        std::mt19937_64 rng(*seed);
        spec = random_error_spec(table, f, g, rng);
    } else {
        throw InvalidParameters("corrupt needs either --spec or --seed");
    }
    if (static_cast<long long>(spec.entries.size()) > f)
        throw InvalidErrorSpec("spec has " + std::to_string(spec.entries.size()) +
                               " errors but --max-errors is " + std::to_string(f));
    if (static_cast<long long>(spec.direction_count()) > g)
        throw InvalidErrorSpec("spec touches " + std::to_string(spec.direction_count()) +
                               " directions but --max-dirs is " + std::to_string(g));
    LineSumTable corrupted = inject(table, spec);
    emit(canonical_dump(to_json(corrupted)), out_path);
    return kExitOk;
}

int run_correct(const std::string& sums_path, const BudgetFlags& budgets, bool trace,
                const std::string& out_path, const std::string& report_path) {
    LineSumTable table = table_from_json(parse_json_file(sums_path));
    auto [f, g] = budgets.resolve(static_cast<int>(table.direction_count()));

    CorrectOptions opt;
    opt.max_errors = f;
    opt.max_dirs = g;
    opt.allow_wide_budgets = budgets.unsafe;
    CorrectOutcome outcome = correct_line_sums(table, opt);

    std::cerr << "status: " << to_string(outcome.report.status) << "\n";
    if (!outcome.report.reason.empty()) std::cerr << "reason: " << outcome.report.reason << "\n";
    std::cerr << "flagged directions: " << outcome.report.flagged.size() << "\n";
    for (const FlaggedDirection& fd : outcome.report.flagged) {
        std::cerr << "  dir " << fd.original_index << " " << fd.direction.str() << "  level "
                  << fd.level << "\n";
    }
    std::cerr << "corrections: " << outcome.report.corrections.size() << "\n";
    for (const Correction& c : outcome.report.corrections) {
        std::cerr << "  dir " << c.original_index << " " << c.direction.str() << " t=" << c.t
                  << ": " << c.measured.str() << " -> " << c.corrected.str() << "\n";
    }

    if (!report_path.empty())
        write_file(report_path, canonical_dump(report_to_json(outcome, trace)) + "\n");
    if (outcome.report.status == Status::AssumptionViolated) return kExitAssumption;
    emit(canonical_dump(to_json(outcome.corrected)), out_path);
    return kExitOk;
}

int run_verify(const std::string& sums_path, std::optional<int> kmax_flag) {
    LineSumTable table = table_from_json(parse_json_file(sums_path));
    const int d = static_cast<int>(table.direction_count());
    if (d < 2) {
        std::cerr << "only one direction; nothing to cross-check\n";
        return kExitOk;
    }
    int kmax = kmax_flag.value_or(std::min(d, 6));
    if (kmax < 2 || kmax > d)
        throw InvalidParameters("--kmax must be between 2 and d=" + std::to_string(d));
    auto violations = check_relations(table, kmax);
    if (violations.empty()) {
        std::cerr << "consistent: all line sum relations up to k=" << kmax << " hold\n";
        return kExitOk;
    }
    std::cerr << "inconsistent: " << violations.size() << " violated relation(s)\n";
    for (const RelationViolation& v : violations) {
        std::cerr << "  window [";
        for (std::size_t i = 0; i < v.window.size(); ++i) {
            const Direction& dir = table.directions().at(static_cast<std::size_t>(v.window[i]));
            std::cerr << (i ? " " : "") << dir.str();
        }
        std::cerr << "]  residual " << v.residual.str() << "\n";
    }
    return kExitAssumption;
}

int run_roundtrip(std::uint64_t seed, int count, int m, int n, int d, const BudgetFlags& budgets,
                  std::int64_t vmax) {
    const int def = (d - 1) / 2;
    const int f = budgets.f.value_or(def);
    const int g = budgets.g.value_or(std::min(f, def));
    validate_budgets(f, g, d, budgets.unsafe);

    int failures = 0;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        RandomInstance inst = random_instance(s, m, n, d, f, g, -vmax, vmax);
        LineSumTable exact = project(inst.grid, inst.directions);
        LineSumTable corrupted = inject(exact, inst.errors);
        CorrectOptions opt;
        opt.max_errors = f;
        opt.max_dirs = g;
        CorrectOutcome outcome = correct_line_sums(corrupted, opt);
        const bool ok =
            outcome.report.status != Status::AssumptionViolated && outcome.corrected == exact;
        std::cerr << "seed " << s << ": " << (ok ? "recovered" : "FAILED") << " ("
                  << inst.errors.entries.size() << " errors in " << inst.errors.direction_count()
                  << " directions)\n";
        if (!ok) ++failures;
    }
    std::cerr << (count - failures) << "/" << count << " instances recovered exactly\n";
    return failures == 0 ? kExitOk : kExitAssumption;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact line-sum error correction for discrete tomography"};
    app.require_subcommand(1);

    std::string grid_path, dirs_path, sums_path, spec_path, out_path, report_path;
    BudgetFlags budgets;
    std::optional<std::uint64_t> seed;
    std::optional<int> kmax;
    bool trace = false;
    int count = 1, m = 8, n = 8, d = 7;
    std::int64_t vmax = 9;

    auto add_budget_flags = [&](CLI::App* cmd) {
        cmd->add_option("--max-errors", budgets.f, "upper bound F on wrong line sums");
        cmd->add_option("--max-dirs", budgets.g, "upper bound G on directions with wrong sums");
        cmd->add_flag("--unsafe", budgets.unsafe,
                      "allow budgets at or beyond d/2 (results are not guaranteed)");
    };

    CLI::App* project_cmd = app.add_subcommand("project", "compute line sums of a grid");
    project_cmd->add_option("grid", grid_path, "grid JSON file")->required();
    project_cmd->add_option("--dirs", dirs_path, "JSON file with [a,b] direction pairs")
        ->required();
    project_cmd->add_option("-o,--output", out_path, "output path (stdout when omitted)");

    CLI::App* corrupt_cmd = app.add_subcommand("corrupt", "apply wrong line sums to a table");
    corrupt_cmd->add_option("sums", sums_path, "line-sum JSON file")->required();
    corrupt_cmd->add_option("--spec", spec_path, "error spec JSON file");
    corrupt_cmd->add_option("--seed", seed, "generate a random in-budget spec");
    corrupt_cmd->add_option("-o,--output", out_path, "output path (stdout when omitted)");
    add_budget_flags(corrupt_cmd);

    CLI::App* correct_cmd = app.add_subcommand("correct", "detect and repair wrong line sums");
    correct_cmd->add_option("sums", sums_path, "line-sum JSON file")->required();
    correct_cmd->add_option("-o,--output", out_path, "corrected table path (stdout when omitted)");
    correct_cmd->add_option("--report", report_path, "write the JSON report here");
    correct_cmd->add_flag("--trace", trace, "include the detection/correction trace in the report");
    add_budget_flags(correct_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "check line sum consistency relations");
    verify_cmd->add_option("sums", sums_path, "line-sum JSON file")->required();
    verify_cmd->add_option("--kmax", kmax, "largest relation size to check (default min(d,6))");

    CLI::App* roundtrip_cmd =
        app.add_subcommand("roundtrip", "self-test: project, corrupt and repair random grids");
    roundtrip_cmd->add_option("--seed", seed, "base seed")->required();
    roundtrip_cmd->add_option("--count", count, "number of instances");
    roundtrip_cmd->add_option("--m", m, "grid columns");
    roundtrip_cmd->add_option("--n", n, "grid rows");
    roundtrip_cmd->add_option("--d", d, "number of directions");
    roundtrip_cmd->add_option("--values", vmax, "grid values drawn from [-values, values]");
    add_budget_flags(roundtrip_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    trace = trace || trace_env_enabled();

    try {
        if (project_cmd->parsed()) return run_project(grid_path, dirs_path, out_path);
        if (corrupt_cmd->parsed()) return run_corrupt(sums_path, spec_path, seed, budgets, out_path);
        if (correct_cmd->parsed())
            return run_correct(sums_path, budgets, trace, out_path, report_path);
        if (verify_cmd->parsed()) return run_verify(sums_path, kmax);
        if (roundtrip_cmd->parsed())
            return run_roundtrip(seed.value(), count, m, n, d, budgets, vmax);
    } catch (const AssumptionViolated& e) {
        std::cerr << "assumption violated: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const InternalContradiction& e) {
        std::cerr << "inconsistent data: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const RootDeficit& e) {
        std::cerr << "inconsistent data: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
