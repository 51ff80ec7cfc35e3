#ifndef TOMOEC_DETECT_HPP
#define TOMOEC_DETECT_HPP

#include <utility>
#include <vector>

#include "tomoec/core.hpp"
#include "tomoec/relations.hpp"

namespace tomoec {

struct ScreenTrace {
    std::vector<BigInt> totals_by_original;
    BigInt median;
    std::vector<int> flagged_originals;
};

/// One window of test directions tried at some level k, with the c value
/// computed for each candidate direction, in visit order (truncated when the
/// nonzero count exceeded the budget and the window was abandoned).
struct WindowAttempt {
    int k = 0;
    std::vector<int> window_originals;
    std::vector<std::pair<int, BigInt>> c_values;  // (original index of H, c)
    bool accepted = false;
};

struct DetectionTrace {
    ScreenTrace screen;
    std::vector<WindowAttempt> attempts;
    int final_k = 0;
};

/// Working state of error detection. Directions at positions [0, g) of the
/// permuted table are the flagged ones; `rho` counts the wrong line sums
/// accounted for so far and `rho_per[pos]` the contribution of each flagged
/// direction.
struct DetectionState {
    LineSumTable table;
    PowerSumTable power_sums;
    int F = 0;
    int G = 0;
    int g = 0;
    long long rho = 0;
    std::vector<long long> rho_per;
    std::vector<int> flag_level;
    int k = 1;
    bool budgets_unverified = false;
    DetectionTrace trace;

    /// Budgets must satisfy 0 <= G <= F, and F < d/2 unless
    /// allow_wide_budgets is set (in which case results are unverified).
    DetectionState(LineSumTable t, int f, int g_budget, bool allow_wide_budgets = false);
};

/// Flags every direction whose total of line sums differs from the median of
/// all totals. More than half the totals equal the true grand sum, so the
/// median is that sum. Requires a fresh state.
void screen_sums(DetectionState& st);

/// Runs one detection level: slides a window of k presumed-correct test
/// directions until at most min(G-g, (F-rho)/k) candidates react, then flags
/// every reacting candidate and advances k.
void detect_level_k(DetectionState& st);

/// Full detection pass: screening followed by levels k = 2, 3, ... until
/// k > F - rho or g > G. On return positions [0, g) hold exactly the
/// directions containing wrong line sums, provided the data obeys the
/// budgets.
DetectionState detect_all(const LineSumTable& table, int f, int g_budget,
                          bool allow_wide_budgets = false);

}  // namespace tomoec

#endif
