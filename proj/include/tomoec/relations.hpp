#ifndef TOMOEC_RELATIONS_HPP
#define TOMOEC_RELATIONS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tomoec/core.hpp"
#include "tomoec/exact.hpp"

namespace tomoec {

/// Signed product of cross-determinants a_i*b_j - a_j*b_i over all ordered
/// pairs of `members` (in list order) that avoid the member at `excluded`
/// (0-based). The sign is (-1)^excluded.
BigInt e_coefficient(const std::vector<Direction>& members, std::size_t excluded);

/// Sum_t t^j * sum(h, t) over all lines of direction h.
BigInt power_sum(const LineSumTable& table, std::size_t h, unsigned j);

/// Weighted power sums of every direction for exponents 0..jmax, computed
/// once and kept in step with table swaps and corrections.
class PowerSumTable {
public:
    PowerSumTable(const LineSumTable& table, unsigned jmax);

    unsigned jmax() const { return jmax_; }
    const BigInt& get(std::size_t pos, unsigned j) const;

    void swap_positions(std::size_t p, std::size_t q);
    /// Accounts for sum(pos, t) changing by delta.
    void apply_delta(std::size_t pos, std::int64_t t, const BigInt& delta);

private:
    unsigned jmax_;
    std::vector<std::vector<BigInt>> ps_;
};

/// c_1..c_L together with the generating subset, as consumed by the
/// Prony-style solver. values[j-1] holds c_j, which weights t^(j-1).
struct CoefficientVector {
    std::vector<Rational> values;
    std::vector<int> test_positions;
    int target = -1;
};

/// Detection-phase c value for exponent |window|-1: the line sum relation of
/// the window directions followed by H, evaluated on measured sums. Zero for
/// exact data whenever the window and H are error-free.
BigInt detection_c(const LineSumTable& table, const PowerSumTable& ps,
                   std::span<const int> window, int h_pos);

/// Correction-phase c_j (1-based), already normalized by the coefficient of
/// the target direction: uses the first j entries of `clean` plus H.
Rational correction_c(const LineSumTable& table, const PowerSumTable& ps,
                      std::span<const int> clean, int h_pos, unsigned j);

CoefficientVector build_correction_coefficients(const LineSumTable& table,
                                                const PowerSumTable& ps,
                                                std::span<const int> clean, int h_pos,
                                                std::size_t count);

struct RelationViolation {
    std::vector<int> window;  // positions; the varying direction is last
    BigInt residual;
};

/// Evaluates the line sum relation for K = {first k-1 directions, H} for
/// every H and k = 2..k_max. Empty result iff all checked relations hold.
std::vector<RelationViolation> check_relations(const LineSumTable& table, int k_max);

}  // namespace tomoec

#endif
