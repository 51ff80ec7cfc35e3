#ifndef TOMOEC_PRONY_HPP
#define TOMOEC_PRONY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tomoec/core.hpp"
#include "tomoec/detect.hpp"
#include "tomoec/exact.hpp"
#include "tomoec/relations.hpp"

namespace tomoec {

/// Solution of the weighted power-sum system sum_i nodes[i]^(j-1) *
/// magnitudes[i] = c_j: the wrong lines of one direction and their errors.
struct PronySolution {
    std::size_t s = 0;
    std::vector<std::int64_t> nodes;   // strictly increasing line indices
    std::vector<BigInt> magnitudes;    // all nonzero
    std::vector<Rational> recurrence;  // B_1..B_s of the companion polynomial
    RatMatrix vandermonde_inv;         // inverse used to recover magnitudes
};

/// Number of wrong line sums: rank of the S x S Hankel matrix of c_1..c_{2S-1}.
std::size_t error_count(const CoefficientVector& c, std::size_t s_bound);

/// Recurrence coefficients B_1..B_s from the alternating-sign shifted system.
/// The system is nonsingular whenever `s` came from error_count on data
/// within the model; a singular system signals an internal contradiction.
std::vector<Rational> solve_recurrence(const CoefficientVector& c, std::size_t s);

/// Wrong-line locations as integer roots of the companion polynomial inside
/// [t_min, t_max], and their magnitudes via the Vandermonde inverse. The
/// returned solution reproduces c_j exactly for every j <= 2s.
PronySolution locate_and_size(const CoefficientVector& c, const std::vector<Rational>& recurrence,
                              std::int64_t t_min, std::int64_t t_max);

struct LineCorrection {
    std::int64_t t = 0;
    BigInt measured;
    BigInt corrected;
    friend bool operator==(const LineCorrection&, const LineCorrection&) = default;
};

struct DirectionCorrectionResult {
    std::vector<LineCorrection> corrections;
    CoefficientVector coefficients;
    PronySolution solution;
};

/// Corrects the wrong line sums of the direction at position h_pos in place,
/// using up to 2*s_bound of the given presumed-correct directions, and
/// certifies the result by re-evaluating every coefficient. The power sum
/// table is kept in step with the applied corrections.
DirectionCorrectionResult correct_direction(LineSumTable& table, PowerSumTable& ps, int h_pos,
                                            std::span<const int> clean, long long s_bound);
DirectionCorrectionResult correct_direction(LineSumTable& table, int h_pos,
                                            std::span<const int> clean, long long s_bound);

/// Corrects one direction given k directions known to be correct. With
/// known_positions, up to k wrong lines are solved directly from the
/// Vandermonde system; without, fewer than k/2 wrong lines are recovered by
/// the Prony pipeline. Certified against all k clean directions.
DirectionCorrectionResult correct_one_direction_known_k(
    LineSumTable& table, int h_pos, std::span<const int> clean,
    const std::optional<std::vector<std::int64_t>>& known_positions = std::nullopt);

struct CorrectOptions {
    std::optional<int> max_errors;      // F; default floor((d-1)/2)
    std::optional<int> max_dirs;        // G; default min(F, floor((d-1)/2))
    bool allow_wide_budgets = false;    // permit F >= d/2 (results unverified)
};

struct DirectionCorrectionTrace {
    int original_index = -1;
    Direction direction;
    long long s_bound = 0;
    CoefficientVector coefficients;
    PronySolution solution;
    std::vector<LineCorrection> corrections;
};

struct CorrectOutcome {
    LineSumTable corrected;  // in original direction order; partial on failure
    CorrectionReport report;
    DetectionTrace detection;
    std::vector<DirectionCorrectionTrace> correction_traces;
    int effective_max_errors = 0;
    int effective_max_dirs = 0;
};

/// Full pipeline: detect the directions with wrong line sums, correct each,
/// and verify the result. Never throws AssumptionViolated; that outcome is
/// reported in the result. Invalid budgets or parameters still throw.
CorrectOutcome correct_line_sums(const LineSumTable& measured, const CorrectOptions& opt = {});

}  // namespace tomoec

#endif
