#include "tomoec/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

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

}  // namespace

Direction normalize_direction(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) throw InvalidDirection("direction (0,0) is not a direction");
    std::int64_t g = gcd64(a, b);
    a /= g;
    b /= g;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
    }
    return Direction{a, b};
}

bool is_normalized(const Direction& d) {
    if (d.a == 0 && d.b == 0) return false;
    if (d.a < 0) return false;
    if (d.a == 0 && d.b != 1) return false;
    return gcd64(d.a, d.b) == 1;
}

std::pair<std::int64_t, std::int64_t> line_index_range(const Direction& dir, int m, int n) {
    if (m < 1 || n < 1) throw InvalidParameters("grid dimensions must be positive");
    // t = b*i - a*j is linear, so its extremes over the rectangle are at corners.
    std::int64_t lo = 0, hi = 0;
    for (std::int64_t i : {std::int64_t{0}, std::int64_t{m - 1}}) {
        for (std::int64_t j : {std::int64_t{0}, std::int64_t{n - 1}}) {
            std::int64_t t = dir.b * i - dir.a * j;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    return {lo, hi};
}

DirectionSet::DirectionSet(std::vector<Direction> dirs) : dirs_(std::move(dirs)) {
    if (dirs_.empty()) throw InvalidDirection("direction set must not be empty");
    std::set<Direction> seen;
    for (const Direction& d : dirs_) {
        if (!is_normalized(d)) throw InvalidDirection("direction " + d.str() + " is not normalized");
        if (!seen.insert(d).second) throw InvalidDirection("duplicate direction " + d.str());
    }
    perm_.resize(dirs_.size());
    std::iota(perm_.begin(), perm_.end(), 0);
}

void DirectionSet::swap(std::size_t p, std::size_t q) {
    std::swap(dirs_[p], dirs_[q]);
    std::swap(perm_[p], perm_[q]);
}

DirectionSet make_directions(const std::vector<std::pair<std::int64_t, std::int64_t>>& raw) {
    std::vector<Direction> dirs;
    dirs.reserve(raw.size());
    for (const auto& [a, b] : raw) dirs.push_back(normalize_direction(a, b));
    return DirectionSet(std::move(dirs));
}

Grid::Grid(int m_, int n_) : m(m_), n(n_) {
    if (m < 1 || n < 1) throw InvalidParameters("grid dimensions must be positive");
    values.assign(static_cast<std::size_t>(m) * n, BigInt(0));
}

BigInt Grid::total() const {
    BigInt s = 0;
    for (const BigInt& v : values) s += v;
    return s;
}

LineSumTable::LineSumTable(int m, int n, DirectionSet dirs)
    : m_(m), n_(n), dirs_(std::move(dirs)) {
    if (m_ < 1 || n_ < 1) throw InvalidParameters("grid dimensions must be positive");
    sums_.resize(dirs_.size());
    for (std::size_t h = 0; h < dirs_.size(); ++h) {
        const Direction& d = dirs_.at(h);
        auto [lo, hi] = line_index_range(d, m_, n_);
        DirectionSums& s = sums_[h];
        s.tmin = lo;
        s.tmax = hi;
        s.values.assign(static_cast<std::size_t>(hi - lo + 1), BigInt(0));
        s.exists.assign(s.values.size(), 0);
        for (std::int64_t i = 0; i < m_; ++i) {
            for (std::int64_t j = 0; j < n_; ++j) {
                s.exists[static_cast<std::size_t>(d.b * i - d.a * j - lo)] = 1;
            }
        }
        s.count = static_cast<std::size_t>(std::count(s.exists.begin(), s.exists.end(), 1));
    }
}

bool LineSumTable::line_exists(std::size_t h, std::int64_t t) const {
    const DirectionSums& s = sums_[h];
    if (t < s.tmin || t > s.tmax) return false;
    return s.exists[static_cast<std::size_t>(t - s.tmin)] != 0;
}

std::size_t LineSumTable::index_of(std::size_t h, std::int64_t t, const char* op) const {
    if (!line_exists(h, t)) {
        throw InvalidParameters(std::string(op) + ": line t=" + std::to_string(t) +
                                " of direction " + dirs_.at(h).str() + " does not meet the grid");
    }
    return static_cast<std::size_t>(t - sums_[h].tmin);
}

const BigInt& LineSumTable::sum(std::size_t h, std::int64_t t) const {
    return sums_[h].values[index_of(h, t, "sum")];
}

void LineSumTable::set_sum(std::size_t h, std::int64_t t, BigInt v) {
    sums_[h].values[index_of(h, t, "set_sum")] = std::move(v);
}

void LineSumTable::add_to_sum(std::size_t h, std::int64_t t, const BigInt& delta) {
    sums_[h].values[index_of(h, t, "add_to_sum")] += delta;
}

BigInt LineSumTable::direction_total(std::size_t h) const {
    BigInt s = 0;
    for (const BigInt& v : sums_[h].values) s += v;
    return s;
}

void LineSumTable::swap_directions(std::size_t p, std::size_t q) {
    if (p == q) return;
    dirs_.swap(p, q);
    std::swap(sums_[p], sums_[q]);
}

LineSumTable LineSumTable::restored_original_order() const {
    std::vector<Direction> original(dirs_.size());
    for (std::size_t pos = 0; pos < dirs_.size(); ++pos) {
        original[static_cast<std::size_t>(dirs_.original_index(pos))] = dirs_.at(pos);
    }
    LineSumTable out(m_, n_, DirectionSet(std::move(original)));
    for (std::size_t pos = 0; pos < dirs_.size(); ++pos) {
        out.sums_[static_cast<std::size_t>(dirs_.original_index(pos))] = sums_[pos];
    }
    return out;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Success: return "success";
        case Status::NoErrors: return "no_errors";
        case Status::AssumptionViolated: return "assumption_violated";
    }
    return "unknown";
}

}  // namespace tomoec
