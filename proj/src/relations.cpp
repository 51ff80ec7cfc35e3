#include "tomoec/relations.hpp"

#include <algorithm>
#include <string>

namespace tomoec {

namespace {

BigInt cross(const Direction& u, const Direction& v) {
    return BigInt(u.a) * v.b - BigInt(v.a) * u.b;
}

std::vector<Direction> collect_members(const LineSumTable& table, std::span<const int> test,
                                       std::size_t take, int h_pos) {
    std::vector<Direction> members;
    members.reserve(take + 1);
    for (std::size_t i = 0; i < take; ++i) {
        if (test[i] == h_pos)
            throw InvalidParameters("target direction occurs among the test directions");
        members.push_back(table.directions().at(static_cast<std::size_t>(test[i])));
    }
    members.push_back(table.directions().at(static_cast<std::size_t>(h_pos)));
    return members;
}

}  // namespace

BigInt e_coefficient(const std::vector<Direction>& members, std::size_t excluded) {
    if (excluded >= members.size()) throw InvalidParameters("e_coefficient: excluded out of range");
    BigInt prod = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i == excluded) continue;
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (j == excluded) continue;
            prod *= cross(members[i], members[j]);
        }
    }
    if (excluded % 2 == 1) prod = -prod;
    return prod;
}

BigInt power_sum(const LineSumTable& table, std::size_t h, unsigned j) {
    BigInt acc = 0;
    table.for_each_line(h, [&](std::int64_t t, const BigInt& v) {
        if (v == 0) return;
        BigInt p = 1;
        for (unsigned e = 0; e < j; ++e) p *= t;
        acc += p * v;
    });
    return acc;
}

PowerSumTable::PowerSumTable(const LineSumTable& table, unsigned jmax) : jmax_(jmax) {
    ps_.resize(table.direction_count());
    for (std::size_t h = 0; h < table.direction_count(); ++h) {
        ps_[h].assign(jmax_ + 1, BigInt(0));
        table.for_each_line(h, [&](std::int64_t t, const BigInt& v) {
            if (v == 0) return;
            BigInt p = 1;
            for (unsigned j = 0; j <= jmax_; ++j) {
                ps_[h][j] += v * p;
                p *= t;
            }
        });
    }
}

const BigInt& PowerSumTable::get(std::size_t pos, unsigned j) const {
    if (j > jmax_) throw InvalidParameters("power sum exponent exceeds precomputed bound");
    return ps_[pos][j];
}

void PowerSumTable::swap_positions(std::size_t p, std::size_t q) {
    ps_[p].swap(ps_[q]);
}

void PowerSumTable::apply_delta(std::size_t pos, std::int64_t t, const BigInt& delta) {
    BigInt p = 1;
    for (unsigned j = 0; j <= jmax_; ++j) {
        ps_[pos][j] += delta * p;
        p *= t;
    }
}

BigInt detection_c(const LineSumTable& table, const PowerSumTable& ps,
                   std::span<const int> window, int h_pos) {
    const std::size_t k = window.size();
    if (k == 0) throw InvalidParameters("detection window must not be empty");
    std::vector<Direction> members = collect_members(table, window, k, h_pos);
    const unsigned exponent = static_cast<unsigned>(k - 1);
    BigInt acc = e_coefficient(members, k) * ps.get(static_cast<std::size_t>(h_pos), exponent);
    for (std::size_t h = 0; h < k; ++h) {
        acc += e_coefficient(members, h) * ps.get(static_cast<std::size_t>(window[h]), exponent);
    }
    return acc;
}

Rational correction_c(const LineSumTable& table, const PowerSumTable& ps,
                      std::span<const int> clean, int h_pos, unsigned j) {
    if (j == 0 || clean.size() < j)
        throw InvalidParameters("correction_c needs j >= 1 test directions");
    std::vector<Direction> members = collect_members(table, clean, j, h_pos);
    BigInt e_target = e_coefficient(members, j);
    if (e_target == 0)
        throw DegenerateDirections("vanishing coefficient for the target direction");
    const unsigned exponent = j - 1;
    Rational acc{ps.get(static_cast<std::size_t>(h_pos), exponent)};
    for (std::size_t h = 0; h < j; ++h) {
        acc += Rational(e_coefficient(members, h) *
                            ps.get(static_cast<std::size_t>(clean[h]), exponent),
                        e_target);
    }
    return acc;
}

CoefficientVector build_correction_coefficients(const LineSumTable& table,
                                                const PowerSumTable& ps,
                                                std::span<const int> clean, int h_pos,
                                                std::size_t count) {
    if (clean.size() < count)
        throw InvalidParameters("not enough test directions for the requested coefficients");
    CoefficientVector cv;
    cv.target = h_pos;
    cv.test_positions.assign(clean.begin(), clean.begin() + static_cast<std::ptrdiff_t>(count));
    cv.values.reserve(count);
    for (unsigned j = 1; j <= count; ++j) {
        cv.values.push_back(correction_c(table, ps, clean, h_pos, j));
    }
    return cv;
}

std::vector<RelationViolation> check_relations(const LineSumTable& table, int k_max) {
    const int d = static_cast<int>(table.direction_count());
    if (k_max < 2 || k_max > d)
        throw InvalidParameters("check_relations requires 2 <= k_max <= d");
    PowerSumTable ps(table, static_cast<unsigned>(k_max - 2));

    std::vector<RelationViolation> out;
    for (int k = 2; k <= k_max; ++k) {
        std::vector<int> base(static_cast<std::size_t>(k - 1));
        for (int i = 0; i < k - 1; ++i) base[static_cast<std::size_t>(i)] = i;
        for (int h_pos = k - 1; h_pos < d; ++h_pos) {
            std::vector<Direction> members = collect_members(table, base, base.size(), h_pos);
            const unsigned exponent = static_cast<unsigned>(k - 2);
            BigInt residual =
                e_coefficient(members, base.size()) * ps.get(static_cast<std::size_t>(h_pos), exponent);
            for (std::size_t h = 0; h < base.size(); ++h) {
                residual += e_coefficient(members, h) *
                            ps.get(static_cast<std::size_t>(base[h]), exponent);
            }
            if (residual != 0) {
                RelationViolation v;
                v.window = base;
                v.window.push_back(h_pos);
                v.residual = std::move(residual);
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

}  // namespace tomoec
