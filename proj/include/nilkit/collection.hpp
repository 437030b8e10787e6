#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilkit/commutator.hpp"
#include "nilkit/word.hpp"

namespace nilkit {

// One transformation of the collecting process. `position` is the 1-based
// index j of the moved copy of beta in the word before the step; alpha sits
// at j-1. `created` lists the new commutators (with signs) in the order they
// were inserted, after any weight > step truncation.
struct TransformStep {
    int type = 0;
    std::size_t position = 0;
    FormalCommutator alpha;
    FormalCommutator beta;
    std::vector<Occurrence> created;

    std::string to_string() const;
};

struct TransformTrace {
    std::vector<TransformStep> steps;
};

struct CollectedTerm {
    FormalCommutator commutator;
    std::int64_t exponent = 0;
};

/* c_1^{l_1} ... c_t^{l_t} over the basic commutators of the word's (rank,
 * step). Input words may contain non-basic commutators, which collection
 * treats as opaque symbols; `terms` lists every nonzero power in order,
 * including those.
 */
class CollectedForm {
public:
    CollectedForm(std::shared_ptr<const BasicCommutatorTable> table, std::vector<CollectedTerm> terms);

    const BasicCommutatorTable& table() const noexcept { return *table_; }
    std::shared_ptr<const BasicCommutatorTable> table_ptr() const noexcept { return table_; }
    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
    const std::vector<CollectedTerm>& terms() const noexcept { return terms_; }
    bool has_non_basic_terms() const noexcept { return non_basic_; }

    // Exponent of c in the form (0 when absent).
    std::int64_t exponent_of(const FormalCommutator& c) const;

    // The collected word with each power spelled out as repeated occurrences.
    Word to_word() const;

private:
    std::shared_ptr<const BasicCommutatorTable> table_;
    std::vector<std::int64_t> exponents_;
    std::vector<CollectedTerm> terms_;
    bool non_basic_ = false;
};

struct CollectOptions {
    std::size_t max_steps = 5'000'000;
    std::size_t max_length = 1'000'000;
    bool keep_trace = false;
};

struct CollectResult {
    CollectedForm form;
    Word final_word;
    TransformTrace trace;  // empty unless keep_trace
    std::size_t steps = 0;
};

// Whether a_1 <= a_2 <= ... <= a_n in the commutator order.
bool is_collected(const Word& w);

// Length m of the collected part a_1..a_m.
std::size_t collected_prefix(const Word& w);

// One application of the collecting operator; nullopt step means w was
// already collected and is returned unchanged.
std::pair<Word, std::optional<TransformStep>> collect_step(const Word& w);

CollectResult collect(const Word& w, const CollectOptions& options = {});

// Replays `trace` from `initial` and tallies, per basic commutator of the
// word's (rank, step) table, the copies of c_i and c_i^{-1} left at the end.
// Throws InconsistentTrace when the trace does not match the word or stops
// before the word is collected.
std::vector<std::int64_t> copy_counts(const TransformTrace& trace, const Word& initial);

}  // namespace nilkit
