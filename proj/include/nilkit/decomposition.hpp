#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilkit/commutator.hpp"
#include "nilkit/word.hpp"

namespace nilkit {

struct DecompositionFactor {
    FormalCommutator commutator;
    std::int64_t exponent = 1;
};

struct DecompositionResult {
    // Factors over the caller's letters, in multiplication order.
    std::vector<DecompositionFactor> factors;
    // For product decompositions: the same factors over position symbols
    // (position p = p-th letter across all factor lists, slot by slot).
    std::vector<FormalCommutator> symbolic;
    std::vector<int> symbol_letter;  // symbol p -> letter, index p-1
    std::vector<int> symbol_slot;    // symbol p -> slot (1-based)
    // For power decompositions: alpha(x_1..x_r) and its exponent l_1...l_r.
    std::optional<FormalCommutator> leading;
    std::int64_t leading_exponent = 1;
};

/* alpha(prod x^(1), ..., prod x^(r)) as an ordered product of commutators in
 * the x^(j)_i, modulo weight > step. factor_lists[j] holds the letters of
 * slot j+1 in order; letters of different slots must differ.
 */
DecompositionResult decompose_product_commutator(const CommutatorForm& form,
                                                 const std::vector<std::vector<int>>& factor_lists, int step);

/* alpha(x_1^{l_1}, ..., x_r^{l_r}) = alpha(x)^{l_1...l_r} zeta_1^{m_1} ... zeta_t^{m_t}
 * over letters x_1..x_r (r = form weight). factors[0] is the leading term when
 * its weight is within the step; the rest are the corrections, in order.
 */
DecompositionResult decompose_power_commutator(const CommutatorForm& form, const std::vector<std::int64_t>& exponents,
                                               int step);

struct BallFactor {
    int letter = 1;
    std::int64_t power = 0;

    friend bool operator==(const BallFactor&, const BallFactor&) = default;
};

// A product of elements x_i^l with |l| <= L_i.
struct BallWord {
    std::vector<BallFactor> factors;

    std::size_t factor_count() const noexcept { return factors.size(); }
    Word to_word(int rank, int step) const;
    std::string to_string() const;  // "x1^-2 x2^-2 x1^2 x2^2"
};

/* alpha(x_1, ..., x_r)^m written as a product of elements of the ball
 * B(x; L), valid in every group of step <= `step`. Letters are the slots of
 * the form. Requires |m| <= L_1...L_r.
 */
BallWord power_in_ball(const CommutatorForm& form, const std::vector<std::int64_t>& lengths, std::int64_t m, int step);

// A bound on factor_count() of power_in_ball that holds for every m and L.
std::uint64_t power_in_ball_bound(const CommutatorForm& form, int step);

// Writes 0 <= m <= prod L as a sum of at most r products l_1...l_r with
// 1 <= l_i <= L_i (greedy mixed radix).
std::vector<std::vector<std::int64_t>> mixed_radix_terms(std::int64_t m, const std::vector<std::int64_t>& lengths);

}  // namespace nilkit
