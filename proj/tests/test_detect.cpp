#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tomoec/detect.hpp"
#include "tomoec/simulate.hpp"

using namespace tomoec;
using tomoec::testing::golden_instance;

namespace {

std::set<int> flagged_originals(const DetectionState& st) {
    std::set<int> out;
    for (int pos = 0; pos < st.g; ++pos)
        out.insert(st.table.directions().original_index(static_cast<std::size_t>(pos)));
    return out;
}

std::set<int> spec_directions(const ErrorSpec& spec) {
    std::set<int> out;
    for (const ErrorEntry& e : spec.entries) out.insert(e.dir);
    return out;
}

}  // namespace

TEST_CASE("budget validation at construction") {
    auto inst = golden_instance();
    CHECK_THROWS_AS(DetectionState(inst.corrupted, 8, 9), InvalidParameters);
    CHECK_THROWS_AS(DetectionState(inst.corrupted, -1, -1), InvalidParameters);
    CHECK_THROWS_AS(DetectionState(inst.corrupted, 8, 4), InvalidParameters);  // 8 >= d/2
    DetectionState wide(inst.corrupted, 8, 4, true);
    CHECK(wide.budgets_unverified);
    DetectionState ok(inst.corrupted, 7, 4);
    CHECK_FALSE(ok.budgets_unverified);
}

TEST_CASE("screening flags exactly the deviant totals") {
    auto inst = golden_instance();

    SUBCASE("error-free table flags nothing") {
        DetectionState st(inst.exact, 7, 4);
        screen_sums(st);
        CHECK(st.g == 0);
        CHECK(st.rho == 0);
    }

    SUBCASE("golden instance moves (2,-1) to the front") {
        DetectionState st(inst.corrupted, 7, 4);
        screen_sums(st);
        CHECK(st.g == 1);
        CHECK(st.rho == 1);
        CHECK(st.rho_per == std::vector<long long>{1});
        CHECK(st.table.directions().at(0) == Direction{2, -1});
        CHECK(st.table.directions().original_index(0) == 5);
        CHECK(st.table.directions().at(5) == Direction{1, 0});
        CHECK(st.trace.screen.median == 0);
        CHECK(st.trace.screen.totals_by_original[5] == -1);
        CHECK(st.trace.screen.flagged_originals == std::vector<int>{5});
    }

    SUBCASE("one deviant total among five") {
        Grid g(3, 3);
        g.at(0, 0) = 5;
        DirectionSet dirs = make_directions({{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}});
        LineSumTable t = project(g, dirs);
        ErrorSpec spec;
        spec.entries = {{3, 0, BigInt(2)}};  // totals become (5, 5, 5, 7, 5)
        DetectionState st(inject(t, spec), 2, 1);
        screen_sums(st);
        CHECK(st.g == 1);
        CHECK(st.table.directions().original_index(0) == 3);
    }
}

TEST_CASE("golden detection levels follow the trace") {
    auto inst = golden_instance();
    DetectionState st(inst.corrupted, 7, 4);
    screen_sums(st);

    detect_level_k(st);  // k = 2: first window rejected, second accepted
    CHECK(st.g == 2);
    CHECK(st.rho == 3);
    CHECK(st.rho_per == std::vector<long long>{1, 2});
    CHECK(st.table.directions().at(1) == Direction{1, 1});
    REQUIRE(st.trace.attempts.size() == 2);

    const WindowAttempt& first = st.trace.attempts[0];
    CHECK_FALSE(first.accepted);
    REQUIRE(first.c_values.size() == 4);
    CHECK(first.c_values[0].second == 12);
    CHECK(first.c_values[1].second == 24);
    CHECK(first.c_values[2].second == 12);
    CHECK(first.c_values[3].second == 12);

    const WindowAttempt& second = st.trace.attempts[1];
    CHECK(second.accepted);
    int nonzero = 0;
    for (const auto& [orig, c] : second.c_values) {
        if (c != 0) {
            ++nonzero;
            CHECK(orig == 2);  // direction (1,1)
            CHECK(c == 36);
        }
    }
    CHECK(nonzero == 1);

    // The undetected direction (1,-2) survives level 2 only because it hides
    // at least k+1 = 3 wrong sums with vanishing low moments.
    {
        auto inst2 = golden_instance();
        int hidden = 0;
        for (const ErrorEntry& e : inst2.errors.entries)
            if (e.dir == 7) ++hidden;
        CHECK(hidden >= st.k);
        CHECK(tomoec::testing::delta_power_sum(inst2.errors, 7, 0) == 0);
        CHECK(tomoec::testing::delta_power_sum(inst2.errors, 7, 1) == 0);
    }

    detect_level_k(st);  // k = 3 flags (1,-2)
    CHECK(st.g == 3);
    CHECK(st.rho == 6);
    CHECK(st.rho_per == std::vector<long long>{1, 2, 3});
    CHECK(st.table.directions().at(2) == Direction{1, -2});
    REQUIRE(st.trace.attempts.size() == 3);
    const WindowAttempt& third = st.trace.attempts[2];
    CHECK(third.accepted);
    for (const auto& [orig, c] : third.c_values) {
        if (orig == 7) {
            CHECK(c == -96);
        } else {
            CHECK(c == 0);
        }
    }

    CHECK(st.k == 4);
    CHECK(st.k > st.F - st.rho);  // the level loop stops here
}

TEST_CASE("detect_all on the golden instance flags directions 5, 2, 7") {
    auto inst = golden_instance();
    DetectionState st = detect_all(inst.corrupted, 7, 4);
    CHECK(st.g == 3);
    CHECK(st.rho == 6);
    CHECK(st.trace.final_k == 4);
    CHECK(flagged_originals(st) == std::set<int>{2, 5, 7});
    CHECK(st.table.directions().at(0) == Direction{2, -1});
    CHECK(st.table.directions().at(1) == Direction{1, 1});
    CHECK(st.table.directions().at(2) == Direction{1, -2});
}

TEST_CASE("detect_all edge behavior") {
    auto inst = golden_instance();

    SUBCASE("error-free table") {
        DetectionState st = detect_all(inst.exact, 7, 4);
        CHECK(st.g == 0);
        CHECK(st.rho == 0);
    }

    SUBCASE("a single error is caught by the screen alone") {
        ErrorSpec spec;
        spec.entries = {{4, 1, BigInt(5)}};
        DetectionState st = detect_all(inject(inst.exact, spec), 1, 1);
        CHECK(st.g == 1);
        CHECK(st.rho == 1);
        CHECK(st.table.directions().original_index(0) == 4);
        // No level ran: k = 2 > F - rho = 0.
        CHECK(st.trace.attempts.empty());
    }

    SUBCASE("screen beyond budget raises") {
        ErrorSpec spec;
        spec.entries = {{0, 0, BigInt(1)}, {1, 0, BigInt(2)}, {2, 0, BigInt(3)}};
        CHECK_THROWS_AS(detect_all(inject(inst.exact, spec), 2, 2), AssumptionViolated);
    }
}

TEST_CASE("no accepting window raises AssumptionViolated") {
    // d = 5, two directions corrupted with cancelling pairs (invisible to the
    // screen); every full window at k = 2 contains a corrupted direction.
    Grid g(6, 6);
    DirectionSet dirs = make_directions({{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}});
    LineSumTable exact = project(g, dirs);
    ErrorSpec spec;
    spec.entries = {{1, 0, BigInt(1)},
                    {1, 1, BigInt(-1)},
                    {3, 0, BigInt(1)},
                    {3, -1, BigInt(-1)}};
    LineSumTable corrupted = inject(exact, spec);
    CHECK_THROWS_AS(detect_all(corrupted, 2, 2), AssumptionViolated);
}

TEST_CASE("randomized detection flags exactly the corrupted directions") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 120; ++trial) {
        const int d = static_cast<int>(rand_int(rng, 3, 9));
        const int m = static_cast<int>(rand_int(rng, 4, 10));
        const int n = static_cast<int>(rand_int(rng, 4, 10));
        const int f = static_cast<int>(rand_int(rng, 1, std::max(1, (d - 1) / 2)));
        const int g_budget = static_cast<int>(rand_int(rng, 1, f));
        RandomInstance inst = random_instance(static_cast<std::uint64_t>(rand_int(rng, 0, 1 << 30)),
                                              m, n, d, f, g_budget, -9, 9);
        LineSumTable exact = project(inst.grid, inst.directions);
        LineSumTable corrupted = inject(exact, inst.errors);
        DetectionState st = detect_all(corrupted, f, g_budget);
        CHECK(flagged_originals(st) == spec_directions(inst.errors));
        CHECK(st.rho <= st.F);
        CHECK(st.g <= st.G);

        // Hypothesis check: unflagged directions have vanishing moments up to
        // the last completed level.
        for (std::size_t pos = static_cast<std::size_t>(st.g);
             pos < st.table.direction_count(); ++pos) {
            const int orig = st.table.directions().original_index(pos);
            for (unsigned j = 0; j + 2 <= static_cast<unsigned>(st.trace.final_k); ++j) {
                CHECK(tomoec::testing::delta_power_sum(inst.errors, orig, j) == 0);
            }
        }
    }
}
