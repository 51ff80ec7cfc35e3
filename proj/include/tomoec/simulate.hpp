#ifndef TOMOEC_SIMULATE_HPP
#define TOMOEC_SIMULATE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "tomoec/core.hpp"

namespace tomoec {

struct ErrorEntry {
    int dir = 0;  // position in the table's direction list
    std::int64_t t = 0;
    BigInt delta;  // nonzero
    friend bool operator==(const ErrorEntry&, const ErrorEntry&) = default;
};

/// Set of wrong line sums to impose on a table: deltas added to exact sums.
struct ErrorSpec {
    std::vector<ErrorEntry> entries;

    std::size_t direction_count() const;
    friend bool operator==(const ErrorSpec&, const ErrorSpec&) = default;
};

/// Exact line sums of a grid in every given direction.
LineSumTable project(const Grid& grid, const DirectionSet& dirs);

/// Copy of `table` with every spec delta applied. Rejects deltas on lines
/// that do not meet the grid, duplicate (direction, t) pairs and zero deltas.
LineSumTable inject(const LineSumTable& table, const ErrorSpec& spec);

struct RandomInstance {
    Grid grid;
    DirectionSet directions;
    ErrorSpec errors;
};

/// Deterministic random instance: a grid with values in [vmin, vmax], d
/// distinct directions always containing (1,0) and (0,1), and an error spec
/// within the budgets (at most `max_errors` wrong sums in at most `max_dirs`
/// directions). Some generated specs have vanishing low-order moments so
/// that detection must reach deeper levels.
RandomInstance random_instance(std::uint64_t seed, int m, int n, int d, int max_errors,
                               int max_dirs, std::int64_t vmin, std::int64_t vmax);

/// Random in-budget error spec for the given table shape.
ErrorSpec random_error_spec(const LineSumTable& shape, int max_errors, int max_dirs,
                            std::mt19937_64& rng);

/// Uniform integer in [lo, hi]; used instead of std::uniform_int_distribution
/// so that seeded runs reproduce across standard library implementations.
std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

}  // namespace tomoec

#endif
