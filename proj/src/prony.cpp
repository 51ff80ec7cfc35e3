#include "tomoec/prony.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace tomoec {

namespace {

Rational weighted_power_sum(const std::vector<std::int64_t>& nodes,
                            const std::vector<BigInt>& magnitudes, unsigned exponent) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        BigInt p = 1;
        for (unsigned e = 0; e < exponent; ++e) p *= nodes[i];
        acc += p * magnitudes[i];
    }
    return Rational(acc);
}

/// Applies corrections (and mirrors them into the power sums); used both to
/// commit a solution and to roll it back when certification fails.
void apply_deltas(LineSumTable& table, PowerSumTable& ps, int h_pos,
                  const std::vector<std::pair<std::int64_t, BigInt>>& deltas) {
    for (const auto& [t, delta] : deltas) {
        table.add_to_sum(static_cast<std::size_t>(h_pos), t, delta);
        ps.apply_delta(static_cast<std::size_t>(h_pos), t, delta);
    }
}

std::string direction_label(const LineSumTable& table, int h_pos) {
    return table.directions().at(static_cast<std::size_t>(h_pos)).str();
}

/// Re-evaluates c_1..c_count on the current table; throws AssumptionViolated
/// (after rolling back `applied`) unless all are zero.
void certify_or_rollback(LineSumTable& table, PowerSumTable& ps, int h_pos,
                         std::span<const int> clean, std::size_t count,
                         const std::vector<std::pair<std::int64_t, BigInt>>& applied) {
    for (unsigned j = 1; j <= count; ++j) {
        if (!correction_c(table, ps, clean, h_pos, j).is_zero()) {
            std::vector<std::pair<std::int64_t, BigInt>> undo;
            undo.reserve(applied.size());
            for (const auto& [t, delta] : applied) undo.emplace_back(t, BigInt(-delta));
            apply_deltas(table, ps, h_pos, undo);
            throw AssumptionViolated("corrections for direction " + direction_label(table, h_pos) +
                                     " do not certify; the data exceeds the error model");
        }
    }
}

}  // namespace

std::size_t error_count(const CoefficientVector& c, std::size_t s_bound) {
    if (s_bound == 0) return 0;
    if (c.values.size() < 2 * s_bound - 1)
        throw InvalidParameters("error_count needs at least 2S-1 coefficients");
    RatMatrix hankel(s_bound, s_bound);
    for (std::size_t i = 0; i < s_bound; ++i)
        for (std::size_t j = 0; j < s_bound; ++j) hankel(i, j) = c.values[i + j];
    return rank(hankel);
}

std::vector<Rational> solve_recurrence(const CoefficientVector& c, std::size_t s) {
    if (s == 0) return {};
    if (c.values.size() < 2 * s)
        throw InvalidParameters("solve_recurrence needs at least 2s coefficients");
    RatMatrix m(s, s);
    std::vector<Rational> rhs(s);
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t u = 0; u < s; ++u) {
            Rational v = c.values[s + j - u - 1];
            m(j, u) = (u % 2 == 1) ? -v : v;
        }
        rhs[j] = c.values[s + j];
    }
    try {
        return solve_linear(m, rhs);
    } catch (const SingularSystem&) {
        throw InternalContradiction(
            "recurrence system is singular although the rank test reported " + std::to_string(s) +
            " errors");
    }
}

PronySolution locate_and_size(const CoefficientVector& c, const std::vector<Rational>& recurrence,
                              std::int64_t t_min, std::int64_t t_max) {
    PronySolution sol;
    sol.s = recurrence.size();
    sol.recurrence = recurrence;
    if (sol.s == 0) return sol;
    if (c.values.size() < 2 * sol.s)
        throw InvalidParameters("locate_and_size needs at least 2s coefficients");

    // Companion polynomial z^s - B_1 z^(s-1) + ... + (-1)^s B_s.
    std::vector<Rational> coeffs(sol.s + 1);
    coeffs[0] = Rational(1);
    for (std::size_t u = 1; u <= sol.s; ++u) {
        coeffs[u] = (u % 2 == 1) ? -recurrence[u - 1] : recurrence[u - 1];
    }
    sol.nodes = integer_roots(coeffs, t_min, t_max);
    if (sol.nodes.size() != sol.s)
        throw InternalContradiction("degree-" + std::to_string(sol.s) + " polynomial produced " +
                                    std::to_string(sol.nodes.size()) + " integer roots");

    sol.vandermonde_inv = vandermonde_inverse(sol.nodes);
    sol.magnitudes.reserve(sol.s);
    for (std::size_t i = 0; i < sol.s; ++i) {
        Rational x;
        for (std::size_t j = 0; j < sol.s; ++j) x += sol.vandermonde_inv(i, j) * c.values[j];
        if (!x.is_integer())
            throw InternalContradiction("non-integral error magnitude " + x.str() +
                                        " for line t=" + std::to_string(sol.nodes[i]));
        if (x.is_zero())
            throw InternalContradiction("zero error magnitude contradicts the rank test");
        sol.magnitudes.push_back(x.as_integer());
    }

    const std::size_t check = std::min(c.values.size(), 2 * sol.s);
    for (unsigned j = 1; j <= check; ++j) {
        if (weighted_power_sum(sol.nodes, sol.magnitudes, j - 1) != c.values[j - 1])
            throw InternalContradiction("recovered errors do not reproduce coefficient c_" +
                                        std::to_string(j));
    }
    return sol;
}

DirectionCorrectionResult correct_direction(LineSumTable& table, PowerSumTable& ps, int h_pos,
                                            std::span<const int> clean, long long s_bound) {
    if (s_bound < 0) s_bound = 0;
    const std::size_t count = static_cast<std::size_t>(2 * s_bound);
    if (clean.size() < count)
        throw InvalidParameters("correct_direction needs 2S presumed-correct directions");

    DirectionCorrectionResult result;
    result.coefficients = build_correction_coefficients(table, ps, clean, h_pos, count);
    if (s_bound == 0) return result;

    const std::size_t s = error_count(result.coefficients, static_cast<std::size_t>(s_bound));
    if (s == 0) {
        // A direction with no remaining errors must have every coefficient
        // zero; anything else is inconsistent data.
        for (const Rational& v : result.coefficients.values) {
            if (!v.is_zero())
                throw AssumptionViolated("direction " + direction_label(table, h_pos) +
                                         " has inconsistent relation residues with zero rank");
        }
        return result;
    }

    try {
        std::vector<Rational> recurrence = solve_recurrence(result.coefficients, s);
        result.solution =
            locate_and_size(result.coefficients, recurrence,
                            table.t_min(static_cast<std::size_t>(h_pos)),
                            table.t_max(static_cast<std::size_t>(h_pos)));
    } catch (const RootDeficit& e) {
        throw AssumptionViolated("correction failed for direction " +
                                 direction_label(table, h_pos) + ": " + e.what());
    } catch (const InternalContradiction& e) {
        throw AssumptionViolated("correction failed for direction " +
                                 direction_label(table, h_pos) + ": " + e.what());
    }

    std::vector<std::pair<std::int64_t, BigInt>> deltas;
    deltas.reserve(result.solution.s);
    for (std::size_t i = 0; i < result.solution.s; ++i) {
        const std::int64_t t = result.solution.nodes[i];
        if (!table.line_exists(static_cast<std::size_t>(h_pos), t))
            throw AssumptionViolated("correction for direction " + direction_label(table, h_pos) +
                                     " targets line t=" + std::to_string(t) +
                                     " which does not meet the grid");
        deltas.emplace_back(t, BigInt(-result.solution.magnitudes[i]));
    }
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const std::int64_t t = deltas[i].first;
        LineCorrection lc;
        lc.t = t;
        lc.measured = table.sum(static_cast<std::size_t>(h_pos), t);
        lc.corrected = lc.measured + deltas[i].second;
        result.corrections.push_back(std::move(lc));
    }
    apply_deltas(table, ps, h_pos, deltas);
    certify_or_rollback(table, ps, h_pos, clean, count, deltas);
    return result;
}

DirectionCorrectionResult correct_direction(LineSumTable& table, int h_pos,
                                            std::span<const int> clean, long long s_bound) {
    const unsigned jmax = s_bound > 0 ? static_cast<unsigned>(2 * s_bound - 1) : 0u;
    PowerSumTable ps(table, jmax);
    return correct_direction(table, ps, h_pos, clean, s_bound);
}

DirectionCorrectionResult correct_one_direction_known_k(
    LineSumTable& table, int h_pos, std::span<const int> clean,
    const std::optional<std::vector<std::int64_t>>& known_positions) {
    const std::size_t k = clean.size();
    if (k == 0) throw InvalidParameters("at least one known-correct direction is required");
    PowerSumTable ps(table, static_cast<unsigned>(k - 1));

    DirectionCorrectionResult result;
    std::vector<std::pair<std::int64_t, BigInt>> deltas;

    if (known_positions) {
        std::vector<std::int64_t> nodes = *known_positions;
        std::sort(nodes.begin(), nodes.end());
        if (nodes.size() > k)
            throw InvalidParameters("more known wrong lines than known-correct directions");
        if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
            throw InvalidParameters("known wrong lines must be distinct");
        for (std::int64_t t : nodes) {
            if (!table.line_exists(static_cast<std::size_t>(h_pos), t))
                throw InvalidParameters("known wrong line t=" + std::to_string(t) +
                                        " does not meet the grid");
        }
        const std::size_t r = nodes.size();
        if (r > 0) {
            result.coefficients = build_correction_coefficients(table, ps, clean, h_pos, r);
            RatMatrix w = vandermonde_inverse(nodes);
            for (std::size_t i = 0; i < r; ++i) {
                Rational x;
                for (std::size_t j = 0; j < r; ++j) x += w(i, j) * result.coefficients.values[j];
                if (!x.is_integer())
                    throw InternalContradiction("non-integral error magnitude " + x.str() +
                                                " at known line t=" + std::to_string(nodes[i]));
                if (x.is_zero()) continue;  // that line was in fact correct
                result.solution.nodes.push_back(nodes[i]);
                result.solution.magnitudes.push_back(x.as_integer());
                deltas.emplace_back(nodes[i], BigInt(-x.as_integer()));
            }
            result.solution.s = result.solution.nodes.size();
            result.solution.vandermonde_inv = std::move(w);
        }
    } else {
        // Unknown positions: solvable when fewer than k/2 lines are wrong.
        const std::size_t i_bound = (k - 1) / 2;
        result.coefficients = build_correction_coefficients(table, ps, clean, h_pos, 2 * i_bound);
        const std::size_t s = i_bound == 0 ? 0 : error_count(result.coefficients, i_bound);
        if (s > 0) {
            try {
                std::vector<Rational> recurrence = solve_recurrence(result.coefficients, s);
                result.solution =
                    locate_and_size(result.coefficients, recurrence,
                                    table.t_min(static_cast<std::size_t>(h_pos)),
                                    table.t_max(static_cast<std::size_t>(h_pos)));
            } catch (const RootDeficit& e) {
                throw AssumptionViolated("correction failed for direction " +
                                         direction_label(table, h_pos) + ": " + e.what());
            } catch (const InternalContradiction& e) {
                throw AssumptionViolated("correction failed for direction " +
                                         direction_label(table, h_pos) + ": " + e.what());
            }
            for (std::size_t i = 0; i < result.solution.s; ++i) {
                const std::int64_t t = result.solution.nodes[i];
                if (!table.line_exists(static_cast<std::size_t>(h_pos), t))
                    throw AssumptionViolated("correction targets line t=" + std::to_string(t) +
                                             " which does not meet the grid");
                deltas.emplace_back(t, BigInt(-result.solution.magnitudes[i]));
            }
        }
    }

    for (const auto& [t, delta] : deltas) {
        LineCorrection lc;
        lc.t = t;
        lc.measured = table.sum(static_cast<std::size_t>(h_pos), t);
        lc.corrected = lc.measured + delta;
        result.corrections.push_back(std::move(lc));
    }
    apply_deltas(table, ps, h_pos, deltas);
    // Certify against every clean direction, not only those used to solve.
    certify_or_rollback(table, ps, h_pos, clean, k, deltas);
    return result;
}

CorrectOutcome correct_line_sums(const LineSumTable& measured, const CorrectOptions& opt) {
    const int d = static_cast<int>(measured.direction_count());
    const int default_budget = (d - 1) / 2;
    const int f_budget = opt.max_errors.value_or(default_budget);
    const int g_budget = opt.max_dirs.value_or(std::min(f_budget, default_budget));

    DetectionState st(measured, f_budget, g_budget, opt.allow_wide_budgets);
    CorrectOutcome out{.corrected = measured,
                       .report = {},
                       .detection = {},
                       .correction_traces = {},
                       .effective_max_errors = f_budget,
                       .effective_max_dirs = g_budget};
    out.report.budgets_unverified = st.budgets_unverified;

    bool ok = true;
    try {
        screen_sums(st);
        while (st.k <= st.F - st.rho && st.g <= st.G) detect_level_k(st);

        for (int h_pos = 0; h_pos < st.g; ++h_pos) {
            long long s_bound = st.F - st.rho + st.rho_per[static_cast<std::size_t>(h_pos)];
            if (s_bound < 0) s_bound = 0;
            if (st.g + 2 * s_bound > d)
                throw AssumptionViolated(
                    "not enough presumed-correct directions to correct direction " +
                    direction_label(st.table, h_pos));
            std::vector<int> clean(static_cast<std::size_t>(2 * s_bound));
            std::iota(clean.begin(), clean.end(), st.g);

            DirectionCorrectionResult res =
                correct_direction(st.table, st.power_sums, h_pos, clean, s_bound);
            st.rho += static_cast<long long>(res.solution.s) -
                      st.rho_per[static_cast<std::size_t>(h_pos)];
            st.rho_per[static_cast<std::size_t>(h_pos)] =
                static_cast<long long>(res.solution.s);
            if (st.rho > st.F)
                throw AssumptionViolated(
                    "corrections revealed more wrong line sums than budget F allows");

            const int orig = st.table.directions().original_index(static_cast<std::size_t>(h_pos));
            const Direction dir = st.table.directions().at(static_cast<std::size_t>(h_pos));
            for (const LineCorrection& lc : res.corrections) {
                out.report.corrections.push_back(
                    Correction{orig, dir, lc.t, lc.measured, lc.corrected});
            }
            out.correction_traces.push_back(DirectionCorrectionTrace{
                orig, dir, s_bound, res.coefficients, res.solution, res.corrections});
        }
    } catch (const AssumptionViolated& e) {
        ok = false;
        out.report.status = Status::AssumptionViolated;
        out.report.reason = e.what();
    }

    st.trace.final_k = st.k;
    out.detection = st.trace;
    for (int pos = 0; pos < st.g; ++pos) {
        out.report.flagged.push_back(FlaggedDirection{
            st.table.directions().original_index(static_cast<std::size_t>(pos)),
            st.table.directions().at(static_cast<std::size_t>(pos)),
            st.flag_level[static_cast<std::size_t>(pos)]});
    }
    out.report.total_errors_found = out.report.corrections.size();
    out.corrected = st.table.restored_original_order();

    if (ok && d >= 2) {
        if (!check_relations(out.corrected, std::min(d, 6)).empty()) {
            ok = false;
            out.report.status = Status::AssumptionViolated;
            out.report.reason = "corrected line sums still violate the consistency relations";
        }
    }
    if (ok) {
        out.report.status = (st.g == 0 && out.report.corrections.empty()) ? Status::NoErrors
                                                                          : Status::Success;
    }
    return out;
}

}  // namespace tomoec
