#include "tomoec/simulate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace tomoec {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

template <typename T>
void shuffle_deterministic(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rand_int(rng, 0, static_cast<std::int64_t>(i) - 1));
        std::swap(v[i - 1], v[j]);
    }
}

BigInt nonzero_delta(std::mt19937_64& rng) {
    std::int64_t mag = rand_int(rng, 1, 9);
    return rand_int(rng, 0, 1) == 0 ? BigInt(mag) : BigInt(-mag);
}

std::vector<std::int64_t> valid_lines(const LineSumTable& t, std::size_t h) {
    std::vector<std::int64_t> out;
    out.reserve(t.line_count(h));
    t.for_each_line(h, [&](std::int64_t tt, const BigInt&) { out.push_back(tt); });
    return out;
}

}  // namespace

std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InvalidParameters("rand_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

std::size_t ErrorSpec::direction_count() const {
    std::set<int> dirs;
    for (const ErrorEntry& e : entries) dirs.insert(e.dir);
    return dirs.size();
}

LineSumTable project(const Grid& grid, const DirectionSet& dirs) {
    LineSumTable table(grid.m, grid.n, dirs);
    for (std::size_t h = 0; h < dirs.size(); ++h) {
        const Direction& d = dirs.at(h);
        for (std::int64_t j = 0; j < grid.n; ++j) {
            for (std::int64_t i = 0; i < grid.m; ++i) {
                const BigInt& v = grid.at(static_cast<int>(i), static_cast<int>(j));
                if (v == 0) continue;
                table.add_to_sum(h, d.b * i - d.a * j, v);
            }
        }
    }
    return table;
}

LineSumTable inject(const LineSumTable& table, const ErrorSpec& spec) {
    LineSumTable out = table;
    std::set<std::pair<int, std::int64_t>> seen;
    for (const ErrorEntry& e : spec.entries) {
        if (e.dir < 0 || static_cast<std::size_t>(e.dir) >= table.direction_count())
            throw InvalidErrorSpec("error entry references direction index " +
                                   std::to_string(e.dir));
        if (!table.line_exists(static_cast<std::size_t>(e.dir), e.t))
            throw InvalidErrorSpec("error entry targets line t=" + std::to_string(e.t) +
                                   " of direction " +
                                   table.directions().at(static_cast<std::size_t>(e.dir)).str() +
                                   " which does not meet the grid");
        if (e.delta == 0) throw InvalidErrorSpec("zero delta is not a wrong line sum");
        if (!seen.insert({e.dir, e.t}).second)
            throw InvalidErrorSpec("duplicate error entry for direction " +
                                   std::to_string(e.dir) + ", t=" + std::to_string(e.t));
        out.add_to_sum(static_cast<std::size_t>(e.dir), e.t, e.delta);
    }
    return out;
}

ErrorSpec random_error_spec(const LineSumTable& shape, int max_errors, int max_dirs,
                            std::mt19937_64& rng) {
    ErrorSpec spec;
    const int d = static_cast<int>(shape.direction_count());
    if (max_errors <= 0 || max_dirs <= 0) return spec;

    const int n_dirs = static_cast<int>(rand_int(rng, 1, std::min(max_dirs, d)));
    std::vector<int> all(static_cast<std::size_t>(d));
    std::iota(all.begin(), all.end(), 0);
    shuffle_deterministic(all, rng);

    int remaining = max_errors;
    for (int idx = 0; idx < n_dirs && remaining > 0; ++idx) {
        const int dir = all[static_cast<std::size_t>(idx)];
        const int others = n_dirs - idx - 1;
        int count = static_cast<int>(rand_int(rng, 1, std::max(1, remaining - others)));
        std::vector<std::int64_t> lines = valid_lines(shape, static_cast<std::size_t>(dir));
        count = std::min<int>(count, static_cast<int>(lines.size()));
        if (count == 0) continue;
        shuffle_deterministic(lines, rng);
        std::vector<std::int64_t> ts(lines.begin(), lines.begin() + count);
        std::sort(ts.begin(), ts.end());

        const bool adversarial = rand_int(rng, 0, 99) < 35;
        if (adversarial && count >= 3) {
            // Deltas proportional to (t3-t2, t1-t3, t2-t1): both the sum and
            // the first moment vanish, so the direction survives the first
            // two detection stages.
            BigInt lambda(rand_int(rng, 1, 3));
            if (rand_int(rng, 0, 1) == 1) lambda = -lambda;
            spec.entries.push_back({dir, ts[0], lambda * (ts[2] - ts[1])});
            spec.entries.push_back({dir, ts[1], lambda * (ts[0] - ts[2])});
            spec.entries.push_back({dir, ts[2], lambda * (ts[1] - ts[0])});
            for (int e = 3; e < count; ++e)
                spec.entries.push_back({dir, ts[static_cast<std::size_t>(e)], nonzero_delta(rng)});
        } else if (adversarial && count == 2) {
            // Opposite deltas: the direction total stays correct.
            BigInt delta = nonzero_delta(rng);
            spec.entries.push_back({dir, ts[0], delta});
            spec.entries.push_back({dir, ts[1], BigInt(-delta)});
        } else {
            for (int e = 0; e < count; ++e)
                spec.entries.push_back({dir, ts[static_cast<std::size_t>(e)], nonzero_delta(rng)});
        }
        remaining -= count;
    }
    return spec;
}

RandomInstance random_instance(std::uint64_t seed, int m, int n, int d, int max_errors,
                               int max_dirs, std::int64_t vmin, std::int64_t vmax) {
    if (m < 1 || n < 1) throw InvalidParameters("grid dimensions must be positive");
    if (d < 1) throw InvalidParameters("need at least one direction");
    if (vmin > vmax) throw InvalidParameters("empty value range");
    if (max_dirs > max_errors || max_errors < 0 || max_dirs < 0)
        throw InvalidParameters("budgets must satisfy 0 <= G <= F");
    if (2 * max_errors >= d)
        throw InvalidParameters("budget F must satisfy F < d/2");

    std::mt19937_64 rng(seed);

    // Direction pool: primitive vectors with entries bounded by the grid size.
    const std::int64_t bound = std::max(m, n);
    std::vector<Direction> pool;
    for (std::int64_t a = 1; a <= bound; ++a) {
        for (std::int64_t b = -bound; b <= bound; ++b) {
            if (gcd64(a, b) != 1) continue;
            Direction dir{a, b};
            if (dir == Direction{1, 0} || dir == Direction{0, 1}) continue;
            pool.push_back(dir);
        }
    }
    if (static_cast<std::size_t>(d) > pool.size() + 2)
        throw InvalidParameters("direction pool too small for d=" + std::to_string(d));
    shuffle_deterministic(pool, rng);

    std::vector<Direction> chosen;
    chosen.push_back(Direction{1, 0});
    if (d >= 2) chosen.push_back(Direction{0, 1});
    for (int i = 2; i < d; ++i) chosen.push_back(pool[static_cast<std::size_t>(i - 2)]);

    Grid grid(m, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) grid.at(i, j) = rand_int(rng, vmin, vmax);

    DirectionSet dirs(std::move(chosen));
    LineSumTable shape(m, n, dirs);
    ErrorSpec spec = random_error_spec(shape, max_errors, max_dirs, rng);
    return RandomInstance{std::move(grid), std::move(dirs), std::move(spec)};
}

}  // namespace tomoec
