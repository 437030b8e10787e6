#include "nilkit/collection.hpp"

#include <algorithm>
#include <cstdlib>

#include "nilkit/errors.hpp"

namespace nilkit {

std::string TransformStep::to_string() const {
    std::string out = "type=" + std::to_string(type) + " pos=" + std::to_string(position) +
                      " alpha=" + alpha.to_string() + " beta=" + beta.to_string() + " created=";
    if (created.empty()) return out + "-";
    for (std::size_t i = 0; i < created.size(); ++i) {
        if (i) out += ',';
        out += created[i].to_string();
    }
    return out;
}

CollectedForm::CollectedForm(std::shared_ptr<const BasicCommutatorTable> table, std::vector<CollectedTerm> terms)
    : table_(std::move(table)), exponents_(table_->size(), 0), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        auto i = table_->index_of(t.commutator);
        if (i < 0) {
            non_basic_ = true;
        } else {
            exponents_[static_cast<std::size_t>(i)] += t.exponent;
        }
    }
}

std::int64_t CollectedForm::exponent_of(const FormalCommutator& c) const {
    std::int64_t out = 0;
    for (const auto& t : terms_) {
        if (t.commutator == c) out += t.exponent;
    }
    return out;
}

Word CollectedForm::to_word() const {
    Word w(table_->rank(), table_->step());
    for (const auto& t : terms_) {
        const int sign = t.exponent < 0 ? -1 : 1;
        for (std::int64_t k = 0; k < std::abs(t.exponent); ++k) w.push_back({t.commutator, sign});
    }
    return w;
}

namespace {

using Seq = std::vector<Occurrence>;

bool before(const FormalCommutator& a, const FormalCommutator& b) { return compare_commutators(a, b) < 0; }

// Index of the first element that is not <= everything after it, or n when
// the sequence is collected.
std::size_t collected_prefix_of(const Seq& a) {
    const std::size_t n = a.size();
    if (n < 2) return n;
    // suffix_min[i] = index of a minimal element among a[i..n).
    std::vector<std::size_t> suffix_min(n);
    suffix_min[n - 1] = n - 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        const std::size_t k = suffix_min[i + 1];
        suffix_min[i] = before(a[i].commutator, a[k].commutator) ? i : k;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (before(a[suffix_min[i + 1]].commutator, a[i].commutator)) return i;
    }
    return n;
}

// Applies the transformation at 0-based index j (beta) and j-1 (alpha),
// writing the replacement into `out` and the new commutators into `created`.
int transform(const Occurrence& a, const Occurrence& b, int step, Seq& out, Seq& created) {
    const FormalCommutator& alpha = a.commutator;
    const FormalCommutator& beta = b.commutator;
    auto keep = [&](const FormalCommutator& c) { return c.weight() <= step; };

    if (b.sign > 0) {
        const FormalCommutator c = FormalCommutator::bracket(alpha, beta);
        if (a.sign > 0) {
            // alpha beta = beta alpha [alpha, beta]
            out = {b, a};
            if (keep(c)) out.push_back({c, 1});
        } else {
            // alpha^-1 beta = beta [alpha, beta]^-1 alpha^-1
            out = {b};
            if (keep(c)) out.push_back({c, -1});
            out.push_back(a);
        }
        if (keep(c)) created.push_back({c, a.sign});
        return a.sign > 0 ? 1 : 2;
    }

    // alpha_1 = [alpha, beta], alpha_{i+1} = [alpha_i, beta], truncated at the step.
    std::vector<FormalCommutator> chain;
    for (FormalCommutator c = FormalCommutator::bracket(alpha, beta); keep(c);
         c = FormalCommutator::bracket(c, beta)) {
        chain.push_back(c);
    }
    out = {b};
    const std::size_t k = chain.size();
    if (a.sign > 0) {
        // alpha beta^-1 = beta^-1 alpha alpha_2 alpha_4 ... alpha_5^-1 alpha_3^-1 alpha_1^-1
        out.push_back(a);
        for (std::size_t i = 2; i <= k; i += 2) out.push_back({chain[i - 1], 1});
        for (std::size_t i = (k % 2 == 1 ? k : k - 1); i >= 1 && i <= k; i -= 2) out.push_back({chain[i - 1], -1});
    } else {
        // alpha^-1 beta^-1 = beta^-1 alpha_1 alpha_3 ... alpha_4^-1 alpha_2^-1 alpha^-1
        for (std::size_t i = 1; i <= k; i += 2) out.push_back({chain[i - 1], 1});
        for (std::size_t i = (k % 2 == 0 ? k : k - 1); i >= 2; i -= 2) out.push_back({chain[i - 1], -1});
        out.push_back(a);
    }
    if (a.sign > 0) {
        created.assign(out.begin() + 2, out.end());
    } else {
        created.assign(out.begin() + 1, out.end() - 1);
    }
    return a.sign > 0 ? 3 : 4;
}

// Locates the transformation site: returns 0-based index of beta's copy, or
// npos when collected.
std::size_t find_site(const Seq& a) {
    const std::size_t m = collected_prefix_of(a);
    if (m >= a.size()) return std::string::npos;
    std::size_t best = m + 1;
    for (std::size_t i = m + 2; i < a.size(); ++i) {
        if (before(a[i].commutator, a[best].commutator)) best = i;
    }
    return best;
}

TransformStep apply_at(Seq& a, std::size_t j, int step) {
    Seq replacement, created;
    const int type = transform(a[j - 1], a[j], step, replacement, created);
    TransformStep ts{type, j + 1, a[j - 1].commutator, a[j].commutator, std::move(created)};
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(j - 1), a.begin() + static_cast<std::ptrdiff_t>(j + 1));
    a.insert(a.begin() + static_cast<std::ptrdiff_t>(j - 1), replacement.begin(), replacement.end());
    return ts;
}

}  // namespace

bool is_collected(const Word& w) { return collected_prefix_of(w.occurrences()) >= w.size(); }

std::size_t collected_prefix(const Word& w) {
    const std::size_t m = collected_prefix_of(w.occurrences());
    return std::min(m, w.size());
}

std::pair<Word, std::optional<TransformStep>> collect_step(const Word& w) {
    Seq a = w.occurrences();
    const std::size_t j = find_site(a);
    if (j == std::string::npos) return {w, std::nullopt};
    auto ts = apply_at(a, j, w.step());
    return {Word(w.rank(), w.step(), std::move(a)), std::move(ts)};
}

namespace {

std::vector<CollectedTerm> group_terms(const Seq& a) {
    std::vector<CollectedTerm> terms;
    for (const auto& o : a) {
        if (!terms.empty() && terms.back().commutator == o.commutator) {
            terms.back().exponent += o.sign;
        } else {
            terms.push_back({o.commutator, o.sign});
        }
    }
    std::erase_if(terms, [](const CollectedTerm& t) { return t.exponent == 0; });
    return terms;
}

}  // namespace

CollectResult collect(const Word& w, const CollectOptions& options) {
    Seq a = w.occurrences();
    TransformTrace trace;
    std::size_t steps = 0;
    for (std::size_t j = find_site(a); j != std::string::npos; j = find_site(a)) {
        if (steps >= options.max_steps) {
            throw ResourceLimit("collection exceeded " + std::to_string(options.max_steps) + " steps");
        }
        auto ts = apply_at(a, j, w.step());
        if (a.size() > options.max_length) {
            throw ResourceLimit("collected word exceeded " + std::to_string(options.max_length) + " occurrences");
        }
        if (options.keep_trace) trace.steps.push_back(std::move(ts));
        ++steps;
    }
    auto table = basic_table(w.rank(), w.step());
    CollectedForm form(table, group_terms(a));
    return {std::move(form), Word(w.rank(), w.step(), std::move(a)), std::move(trace), steps};
}

std::vector<std::int64_t> copy_counts(const TransformTrace& trace, const Word& initial) {
    Seq a = initial.occurrences();
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& ts = trace.steps[k];
        const std::size_t j = ts.position - 1;
        const auto where = " at trace step " + std::to_string(k + 1);
        if (ts.position < 2 || ts.position > a.size()) throw InconsistentTrace("position out of range" + where);
        if (!(a[j - 1].commutator == ts.alpha) || !(a[j].commutator == ts.beta)) {
            throw InconsistentTrace("alpha/beta do not match the word" + where);
        }
        if (find_site(a) != j) throw InconsistentTrace("step is not the one the collecting operator dictates" + where);
        auto replayed = apply_at(a, j, initial.step());
        if (replayed.type != ts.type || !(replayed.created == ts.created)) {
            throw InconsistentTrace("transformation differs from the recorded one" + where);
        }
    }
    if (find_site(a) != std::string::npos) throw InconsistentTrace("trace ends before the word is collected");

    auto table = basic_table(initial.rank(), initial.step());
    std::vector<std::int64_t> counts(table->size(), 0);
    for (const auto& o : a) {
        auto i = table->index_of(o.commutator);
        if (i >= 0) ++counts[static_cast<std::size_t>(i)];
    }
    return counts;
}

}  // namespace nilkit
