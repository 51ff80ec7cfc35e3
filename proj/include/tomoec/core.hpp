#ifndef TOMOEC_CORE_HPP
#define TOMOEC_CORE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tomoec/errors.hpp"
#include "tomoec/rational.hpp"

namespace tomoec {

/// Primitive lattice direction. Invariant: gcd(|a|,|b|) = 1, a >= 0, and
/// b = 1 whenever a = 0, so (a,b) and (-a,-b) share one representative.
struct Direction {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend bool operator==(const Direction&, const Direction&) = default;
    friend auto operator<=>(const Direction&, const Direction&) = default;

    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

/// Unique normalized representative of {(a,b), (-a,-b)}.
Direction normalize_direction(std::int64_t a, std::int64_t b);

bool is_normalized(const Direction& d);

/// Range of line indices t = b*i - a*j over the m x n grid corners.
/// Every line of the grid has its t in this range; for directions with large
/// steps not every t in the range carries a line.
std::pair<std::int64_t, std::int64_t> line_index_range(const Direction& dir, int m, int n);

/// Ordered set of pairwise distinct normalized directions. Tracks the
/// permutation back to the original input positions across swaps.
class DirectionSet {
public:
    explicit DirectionSet(std::vector<Direction> dirs);

    std::size_t size() const { return dirs_.size(); }
    const Direction& at(std::size_t pos) const { return dirs_[pos]; }
    const std::vector<Direction>& dirs() const { return dirs_; }

    /// Original input position of the direction currently at `pos`.
    int original_index(std::size_t pos) const { return perm_[pos]; }
    const std::vector<int>& permutation() const { return perm_; }

    void swap(std::size_t p, std::size_t q);

    friend bool operator==(const DirectionSet&, const DirectionSet&) = default;

private:
    std::vector<Direction> dirs_;
    std::vector<int> perm_;
};

/// Normalize raw (a,b) pairs and build a DirectionSet.
DirectionSet make_directions(const std::vector<std::pair<std::int64_t, std::int64_t>>& raw);

/// Integer-valued function on the m x n lattice rectangle
/// A = {(i,j) : 0 <= i < m, 0 <= j < n}. Row-major storage by j.
struct Grid {
    int m = 0;
    int n = 0;
    std::vector<BigInt> values;

    Grid() = default;
    Grid(int m_, int n_);

    BigInt& at(int i, int j) { return values[static_cast<std::size_t>(j) * m + i]; }
    const BigInt& at(int i, int j) const { return values[static_cast<std::size_t>(j) * m + i]; }

    BigInt total() const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Complete table of line sums: one entry per direction and per line meeting
/// the grid, zero-valued sums stored explicitly. Lines are indexed by
/// t = b*i - a*j; per direction the table records which t in
/// [t_min, t_max] actually carry a line.
class LineSumTable {
public:
    LineSumTable(int m, int n, DirectionSet dirs);

    int m() const { return m_; }
    int n() const { return n_; }
    std::size_t direction_count() const { return dirs_.size(); }
    const DirectionSet& directions() const { return dirs_; }

    std::int64_t t_min(std::size_t h) const { return sums_[h].tmin; }
    std::int64_t t_max(std::size_t h) const { return sums_[h].tmax; }

    /// True iff the line b*i - a*j = t meets the grid.
    bool line_exists(std::size_t h, std::int64_t t) const;
    /// Number of lines of direction h meeting the grid.
    std::size_t line_count(std::size_t h) const { return sums_[h].count; }

    const BigInt& sum(std::size_t h, std::int64_t t) const;
    void set_sum(std::size_t h, std::int64_t t, BigInt v);
    void add_to_sum(std::size_t h, std::int64_t t, const BigInt& delta);

    BigInt direction_total(std::size_t h) const;

    /// Calls f(t, value) for every line of direction h, in increasing t.
    template <typename F>
    void for_each_line(std::size_t h, F&& f) const {
        const DirectionSums& s = sums_[h];
        for (std::size_t idx = 0; idx < s.values.size(); ++idx) {
            if (s.exists[idx]) f(s.tmin + static_cast<std::int64_t>(idx), s.values[idx]);
        }
    }

    /// Swaps two directions together with their sums and permutation entries.
    void swap_directions(std::size_t p, std::size_t q);

    /// Copy of this table with directions put back in original input order.
    LineSumTable restored_original_order() const;

    friend bool operator==(const LineSumTable&, const LineSumTable&) = default;

private:
    struct DirectionSums {
        std::int64_t tmin = 0;
        std::int64_t tmax = 0;
        std::vector<BigInt> values;
        std::vector<std::uint8_t> exists;
        std::size_t count = 0;

        friend bool operator==(const DirectionSums&, const DirectionSums&) = default;
    };

    std::size_t index_of(std::size_t h, std::int64_t t, const char* op) const;

    int m_ = 0;
    int n_ = 0;
    DirectionSet dirs_;
    std::vector<DirectionSums> sums_;
};

enum class Status { Success, NoErrors, AssumptionViolated };

std::string to_string(Status s);

struct FlaggedDirection {
    int original_index = -1;
    Direction direction;
    int level = 0;  // 1 = total screening, k >= 2 = detection level
    friend bool operator==(const FlaggedDirection&, const FlaggedDirection&) = default;
};

struct Correction {
    int original_index = -1;
    Direction direction;
    std::int64_t t = 0;
    BigInt measured;
    BigInt corrected;
    friend bool operator==(const Correction&, const Correction&) = default;
};

/// Outcome of a full detect-and-correct run, reported against the original
/// direction order of the input.
struct CorrectionReport {
    Status status = Status::NoErrors;
    std::string reason;  // nonempty iff status == AssumptionViolated
    std::vector<FlaggedDirection> flagged;
    std::vector<Correction> corrections;
    std::size_t total_errors_found = 0;
    bool budgets_unverified = false;  // budgets beyond the d/2 guarantee were allowed
};

}  // namespace tomoec

#endif
