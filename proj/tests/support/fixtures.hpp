#ifndef TOMOEC_TESTS_FIXTURES_HPP
#define TOMOEC_TESTS_FIXTURES_HPP

#include <vector>

#include "tomoec/core.hpp"
#include "tomoec/simulate.hpp"

namespace tomoec::testing {

// The 16-direction instance used across the golden tests: an all-zero 16x16
// grid with seven wrong line sums in three directions. Direction (1,1) has a
// cancelling pair, (2,-1) a pair surviving the total screen, and (1,-2) a
// triple whose zeroth and first moments both vanish.
inline DirectionSet golden_directions() {
    return make_directions({{1, 0},
                            {0, 1},
                            {1, 1},
                            {1, -1},
                            {2, 1},
                            {2, -1},
                            {1, 2},
                            {1, -2},
                            {3, 1},
                            {3, -1},
                            {1, 3},
                            {1, -3},
                            {3, 2},
                            {3, -2},
                            {2, 3},
                            {2, -3}});
}

inline ErrorSpec golden_errors() {
    ErrorSpec spec;
    spec.entries = {
        {2, 0, BigInt(-3)}, {2, 4, BigInt(3)},                        // direction (1,1)
        {5, -6, BigInt(-2)}, {5, -1, BigInt(1)},                      // direction (2,-1)
        {7, -3, BigInt(2)}, {7, -5, BigInt(-4)}, {7, -7, BigInt(2)},  // direction (1,-2)
    };
    return spec;
}

struct GoldenInstance {
    Grid grid;
    DirectionSet directions;
    ErrorSpec errors;
    LineSumTable exact;
    LineSumTable corrupted;
};

inline GoldenInstance golden_instance() {
    Grid grid(16, 16);
    DirectionSet dirs = golden_directions();
    ErrorSpec errors = golden_errors();
    LineSumTable exact = project(grid, dirs);
    LineSumTable corrupted = inject(exact, errors);
    return GoldenInstance{std::move(grid), std::move(dirs), std::move(errors), std::move(exact),
                          std::move(corrupted)};
}

// 4x4 grid whose center value can be changed to 3 while moving the two wrong
// line sums from the diagonal pair to the axis pair: with four directions and
// two errors (= d/2) the completion is ambiguous.
inline Grid ambiguous_grid() {
    Grid g(4, 4);
    const int rows[4][4] = {{2, 6, 5, 4}, {3, 2, 2, 0}, {5, 1, 4, 2}, {6, 3, 1, 4}};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) g.at(i, j) = rows[j][i];
    return g;
}

inline DirectionSet ambiguous_directions() {
    return make_directions({{1, 0}, {0, 1}, {1, 1}, {1, -1}});
}

}  // namespace tomoec::testing

#endif
