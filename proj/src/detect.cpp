#include "tomoec/detect.hpp"

#include <algorithm>
#include <string>

namespace tomoec {

namespace {

unsigned power_bound(int f) { return f > 0 ? static_cast<unsigned>(2 * f - 1) : 0u; }

void flag_position(DetectionState& st, int pos, int level, long long contribution) {
    st.table.swap_directions(static_cast<std::size_t>(st.g), static_cast<std::size_t>(pos));
    st.power_sums.swap_positions(static_cast<std::size_t>(st.g), static_cast<std::size_t>(pos));
    st.rho_per.push_back(contribution);
    st.flag_level.push_back(level);
    st.g += 1;
    st.rho += contribution;
}

}  // namespace

DetectionState::DetectionState(LineSumTable t, int f, int g_budget, bool allow_wide_budgets)
    : table(std::move(t)), power_sums(table, power_bound(f)), F(f), G(g_budget) {
    const int d = static_cast<int>(table.direction_count());
    if (F < 0 || G < 0 || G > F)
        throw InvalidParameters("error budgets must satisfy 0 <= G <= F");
    if (2 * F >= d) {
        if (!allow_wide_budgets)
            throw InvalidParameters("budget F = " + std::to_string(F) +
                                    " does not satisfy F < d/2 for d = " + std::to_string(d));
        budgets_unverified = true;
    }
}

void screen_sums(DetectionState& st) {
    if (st.g != 0 || st.k > 1)
        throw InvalidParameters("screen_sums requires a fresh detection state");
    const int d = static_cast<int>(st.table.direction_count());

    std::vector<BigInt> totals(static_cast<std::size_t>(d));
    st.trace.screen.totals_by_original.assign(static_cast<std::size_t>(d), BigInt(0));
    for (int pos = 0; pos < d; ++pos) {
        totals[static_cast<std::size_t>(pos)] = st.power_sums.get(static_cast<std::size_t>(pos), 0);
        int orig = st.table.directions().original_index(static_cast<std::size_t>(pos));
        st.trace.screen.totals_by_original[static_cast<std::size_t>(orig)] =
            totals[static_cast<std::size_t>(pos)];
    }
    // Lower median; any median works since the true grand total holds a
    // strict majority under the budget assumptions.
    std::vector<BigInt> sorted = totals;
    std::nth_element(sorted.begin(), sorted.begin() + (d - 1) / 2, sorted.end());
    const BigInt median = sorted[static_cast<std::size_t>((d - 1) / 2)];
    st.trace.screen.median = median;

    for (int h = 0; h < d; ++h) {
        if (totals[static_cast<std::size_t>(h)] == median) continue;
        if (st.g + 1 > st.G || st.rho + 1 > st.F)
            throw AssumptionViolated(
                "screening flagged more directions with deviant totals than the budgets allow");
        std::swap(totals[static_cast<std::size_t>(st.g)], totals[static_cast<std::size_t>(h)]);
        flag_position(st, h, 1, 1);
        st.trace.screen.flagged_originals.push_back(
            st.table.directions().original_index(static_cast<std::size_t>(st.g - 1)));
    }
    st.k = 2;
}

void detect_level_k(DetectionState& st) {
    const int d = static_cast<int>(st.table.direction_count());
    const int k = st.k;
    if (k < 2) throw InvalidParameters("detect_level_k requires k >= 2");

    const long long max_directions =
        std::min<long long>(st.G - st.g, (st.F - st.rho) / k);

    // Disjoint candidate windows starting right after the flagged block. A
    // window is rejected as soon as more candidates react than errors could
    // explain, because then the window itself must contain a faulty
    // direction.
    std::vector<std::pair<int, BigInt>> cs;
    for (int w = st.g;; w += k) {
        if (w + k - 1 >= d)
            throw AssumptionViolated("no window of presumed-correct test directions found at level " +
                                     std::to_string(k) +
                                     "; the data exceeds the error budgets");
        std::vector<int> window(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) window[static_cast<std::size_t>(i)] = w + i;

        WindowAttempt attempt;
        attempt.k = k;
        for (int pos : window)
            attempt.window_originals.push_back(
                st.table.directions().original_index(static_cast<std::size_t>(pos)));

        cs.clear();
        long long count = 0;
        bool rejected = false;
        for (int h_pos = st.g; h_pos < d; ++h_pos) {
            if (h_pos >= w && h_pos < w + k) continue;
            BigInt c = detection_c(st.table, st.power_sums, window, h_pos);
            attempt.c_values.emplace_back(
                st.table.directions().original_index(static_cast<std::size_t>(h_pos)), c);
            cs.emplace_back(h_pos, std::move(c));
            if (cs.back().second != 0) {
                ++count;
                if (count > max_directions) {
                    rejected = true;
                    break;
                }
            }
        }
        attempt.accepted = !rejected;
        st.trace.attempts.push_back(std::move(attempt));
        if (!rejected) break;
    }

    // The accepted window certifies its own directions; every reacting
    // candidate carries at least k wrong line sums.
    for (const auto& [h_pos, c] : cs) {
        if (c == 0) continue;
        flag_position(st, h_pos, k, k);
    }
    st.k = k + 1;
}

DetectionState detect_all(const LineSumTable& table, int f, int g_budget,
                          bool allow_wide_budgets) {
    DetectionState st(table, f, g_budget, allow_wide_budgets);
    screen_sums(st);
    while (st.k <= st.F - st.rho && st.g <= st.G) detect_level_k(st);
    st.trace.final_k = st.k;
    return st;
}

}  // namespace tomoec
