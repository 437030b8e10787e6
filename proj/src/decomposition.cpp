#include "nilkit/decomposition.hpp"

#include <algorithm>
#include <set>

#include "nilkit/collection.hpp"
#include "nilkit/errors.hpp"

namespace nilkit {

namespace {

using Items = std::vector<FormalCommutator>;

int min_weight(const Items& items) {
    int w = items.front().weight();
    for (const auto& c : items) w = std::min(w, c.weight());
    return w;
}

void append(Items& out, Items more) { out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end())); }

// [prod X, prod Y] as a product of commutators, dropping weight > step.
Items split_bracket(const Items& x, const Items& y, int step) {
    if (x.empty() || y.empty()) return {};
    if (min_weight(x) + min_weight(y) > step) return {};
    Items out;
    if (y.size() >= 2) {
        // [x, y_1 w] = [x, w] [x, y_1] [[x, y_1], w]
        const Items rest(y.begin() + 1, y.end());
        append(out, split_bracket(x, rest, step));
        Items xi = split_bracket(x, {y.front()}, step);
        out.insert(out.end(), xi.begin(), xi.end());
        append(out, split_bracket(xi, rest, step));
        return out;
    }
    const FormalCommutator& w = y.front();
    if (x.size() == 1) {
        auto c = FormalCommutator::bracket(x.front(), w);
        if (c.weight() <= step) out.push_back(std::move(c));
        return out;
    }
    // [u v, w] = [v, [w, u]] [u, w] [v, w]
    const FormalCommutator& u = x.front();
    const Items v(x.begin() + 1, x.end());
    append(out, split_bracket(v, {FormalCommutator::bracket(w, u)}, step));
    if (u.weight() + w.weight() <= step) out.push_back(FormalCommutator::bracket(u, w));
    append(out, split_bracket(v, {w}, step));
    return out;
}

Items split_form(const FormalCommutator& shape, const std::vector<Items>& slots, int step) {
    if (shape.is_letter()) return slots[static_cast<std::size_t>(shape.letter_index() - 1)];
    return split_bracket(split_form(shape.left(), slots, step), split_form(shape.right(), slots, step), step);
}

}  // namespace

DecompositionResult decompose_product_commutator(const CommutatorForm& form,
                                                 const std::vector<std::vector<int>>& factor_lists, int step) {
    if (step < 1) throw InvalidParameter("step must be >= 1");
    if (static_cast<int>(factor_lists.size()) != form.weight()) {
        throw InvalidInput("form of weight " + std::to_string(form.weight()) + " needs that many factor lists, got " +
                           std::to_string(factor_lists.size()));
    }
    DecompositionResult result;
    std::vector<Items> slots(factor_lists.size());
    std::vector<std::set<int>> alphabets(factor_lists.size());
    for (std::size_t j = 0; j < factor_lists.size(); ++j) {
        if (factor_lists[j].empty()) throw InvalidInput("factor list " + std::to_string(j + 1) + " is empty");
        for (int letter : factor_lists[j]) {
            if (letter < 1) throw InvalidInput("letters are numbered from 1");
            for (std::size_t k = 0; k < j; ++k) {
                if (alphabets[k].count(letter)) {
                    throw InvalidInput("letter x" + std::to_string(letter) + " appears in slots " + std::to_string(k + 1) +
                                       " and " + std::to_string(j + 1));
                }
            }
            alphabets[j].insert(letter);
            result.symbol_letter.push_back(letter);
            result.symbol_slot.push_back(static_cast<int>(j) + 1);
            slots[j].push_back(FormalCommutator::letter(static_cast<int>(result.symbol_letter.size())));
        }
    }
    result.symbolic = split_form(form.shape(), slots, step);
    for (const auto& c : result.symbolic) {
        auto mapped = c.substitute(
            [&](int p) { return FormalCommutator::letter(result.symbol_letter[static_cast<std::size_t>(p - 1)]); });
        result.factors.push_back({std::move(mapped), 1});
    }
    return result;
}

DecompositionResult decompose_power_commutator(const CommutatorForm& form, const std::vector<std::int64_t>& exponents,
                                               int step) {
    if (step < 1) throw InvalidParameter("step must be >= 1");
    const int r = form.weight();
    if (static_cast<int>(exponents.size()) != r) {
        throw InvalidInput("form of weight " + std::to_string(r) + " needs " + std::to_string(r) + " exponents");
    }
    std::int64_t total = 1;
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
        const auto l = exponents[static_cast<std::size_t>(j)];
        if (l < 1) throw InvalidInput("exponents must be positive, got " + std::to_string(l));
        if (__builtin_mul_overflow(total, l, &total)) throw ResourceLimit("exponent product overflows");
        lists[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(l), j + 1);
    }

    DecompositionResult result;
    result.leading = form.shape();
    result.leading_exponent = total;
    if (r > step) return result;

    auto expanded = decompose_product_commutator(form, lists, step);
    Word w(r, step);
    for (const auto& f : expanded.factors) w.push_back({f.commutator, 1});
    auto collected = collect(w).form;

    const auto lead = collected.exponent_of(form.shape());
    if (lead != total) {
        throw Error("internal: leading exponent " + std::to_string(lead) + " differs from " + std::to_string(total));
    }
    result.factors.push_back({form.shape(), total});
    for (const auto& t : collected.terms()) {
        if (t.commutator == form.shape()) continue;
        result.factors.push_back({t.commutator, t.exponent});
    }
    return result;
}

Word BallWord::to_word(int rank, int step) const {
    Word w(rank, step);
    for (const auto& f : factors) {
        const int sign = f.power < 0 ? -1 : 1;
        for (std::int64_t k = 0; k < std::abs(f.power); ++k) w.push_back({FormalCommutator::letter(f.letter), sign});
    }
    return w;
}

std::string BallWord::to_string() const {
    std::string out;
    for (const auto& f : factors) {
        if (!out.empty()) out += ' ';
        out += "x" + std::to_string(f.letter);
        if (f.power != 1) out += "^" + std::to_string(f.power);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> mixed_radix_terms(std::int64_t m, const std::vector<std::int64_t>& lengths) {
    if (lengths.empty()) throw InvalidInput("mixed radix needs at least one length");
    if (m < 0) throw InvalidInput("mixed radix needs m >= 0");
    const std::size_t r = lengths.size();
    std::int64_t volume = 1;
    for (auto l : lengths) {
        if (__builtin_mul_overflow(volume, l, &volume)) throw ResourceLimit("side length product overflows");
    }
    if (m > volume) throw OutOfRange("m exceeds the product of side lengths");
    if (m == 0) return {};
    if (r == 1) return {{m}};
    const std::int64_t last = lengths.back();
    const std::int64_t q = m / last;
    const std::int64_t b = m % last;
    std::vector<std::vector<std::int64_t>> out;
    for (auto t : mixed_radix_terms(q, std::vector<std::int64_t>(lengths.begin(), lengths.end() - 1))) {
        t.push_back(last);
        out.push_back(std::move(t));
    }
    if (b > 0) {
        std::vector<std::int64_t> t(r, 1);
        t.back() = b;
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

void expand_commutator(const FormalCommutator& shape, const std::vector<int>& letters,
                       const std::vector<std::int64_t>& powers, std::vector<BallFactor>& out, bool inverted) {
    if (shape.is_letter()) {
        const auto k = static_cast<std::size_t>(shape.letter_index() - 1);
        out.push_back({letters[k], inverted ? -powers[k] : powers[k]});
        return;
    }
    // [A, B] = A^-1 B^-1 A B; its inverse is B^-1 A^-1 B A.
    const auto& a = inverted ? shape.right() : shape.left();
    const auto& b = inverted ? shape.left() : shape.right();
    expand_commutator(a, letters, powers, out, true);
    expand_commutator(b, letters, powers, out, true);
    expand_commutator(a, letters, powers, out, false);
    expand_commutator(b, letters, powers, out, false);
}

std::vector<BallFactor> invert(std::vector<BallFactor> w) {
    std::reverse(w.begin(), w.end());
    for (auto& f : w) f.power = -f.power;
    return w;
}

std::vector<BallFactor> ball_power(const CommutatorForm& form, const std::vector<int>& letters,
                                   const std::vector<std::int64_t>& lengths, std::int64_t m, int step) {
    const int w = form.weight();
    if (m == 0 || w > step) return {};
    if (m < 0) return invert(ball_power(form, letters, lengths, -m, step));

    std::vector<BallFactor> out;
    for (const auto& l : mixed_radix_terms(m, lengths)) {
        // alpha(x)^{prod l} = alpha(x^l) zeta_t^{-m_t} ... zeta_1^{-m_1}
        expand_commutator(form.shape(), letters, l, out, false);
        auto dec = decompose_power_commutator(form, l, step);
        for (std::size_t k = dec.factors.size(); k-- > 1;) {
            const auto& zeta = dec.factors[k];
            auto [sub_form, slots] = CommutatorForm::from_commutator(zeta.commutator);
            std::vector<int> sub_letters;
            std::vector<std::int64_t> sub_lengths;
            for (int slot : slots) {
                sub_letters.push_back(letters[static_cast<std::size_t>(slot - 1)]);
                sub_lengths.push_back(lengths[static_cast<std::size_t>(slot - 1)]);
            }
            auto part = ball_power(sub_form, sub_letters, sub_lengths, -zeta.exponent, step);
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    return out;
}

}  // namespace

BallWord power_in_ball(const CommutatorForm& form, const std::vector<std::int64_t>& lengths, std::int64_t m, int step) {
    if (step < 1) throw InvalidParameter("step must be >= 1");
    const int r = form.weight();
    if (static_cast<int>(lengths.size()) != r) {
        throw InvalidInput("form of weight " + std::to_string(r) + " needs " + std::to_string(r) + " side lengths");
    }
    std::int64_t total = 1;
    for (auto l : lengths) {
        if (l < 1) throw InvalidInput("side lengths must be positive");
        if (__builtin_mul_overflow(total, l, &total)) throw ResourceLimit("side length product overflows");
    }
    if (m > total || m < -total) {
        throw OutOfRange("|m| = " + std::to_string(m < 0 ? -m : m) + " exceeds L_1...L_r = " + std::to_string(total));
    }
    std::vector<int> letters(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) letters[static_cast<std::size_t>(i)] = i + 1;
    return {ball_power(form, letters, lengths, m, step)};
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t c;
    return __builtin_add_overflow(a, b, &c) ? UINT64_MAX : c;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t c;
    return __builtin_mul_overflow(a, b, &c) ? UINT64_MAX : c;
}

std::uint64_t expansion_length(const FormalCommutator& shape) {
    if (shape.is_letter()) return 1;
    return sat_mul(2, sat_add(expansion_length(shape.left()), expansion_length(shape.right())));
}

std::uint64_t max_expansion(int n) {
    if (n == 1) return 1;
    std::uint64_t best = 0;
    for (int a = 1; a < n; ++a) best = std::max(best, sat_mul(2, sat_add(max_expansion(a), max_expansion(n - a))));
    return best;
}

std::uint64_t catalan(int n) {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (static_cast<std::uint64_t>(i) + 2);
    return c;
}

// Number of distinct commutator trees with k leaves over n letters.
std::uint64_t tree_count(int k, int n) {
    std::uint64_t out = catalan(k - 1);
    for (int i = 0; i < k; ++i) out = sat_mul(out, static_cast<std::uint64_t>(n));
    return out;
}

std::uint64_t corrections_bound(int w, int step, const std::vector<std::uint64_t>& per_weight) {
    std::uint64_t total = 0;
    for (int k = w + 1; k <= step; ++k) {
        total = sat_add(total, sat_mul(tree_count(k, w), per_weight[static_cast<std::size_t>(k)]));
    }
    return total;
}

}  // namespace

std::uint64_t power_in_ball_bound(const CommutatorForm& form, int step) {
    const int w = form.weight();
    if (w > step) return 0;
    // per_weight[k]: bound for any form of weight k.
    std::vector<std::uint64_t> per_weight(static_cast<std::size_t>(step) + 1, 0);
    for (int k = step; k > w; --k) {
        per_weight[static_cast<std::size_t>(k)] =
            sat_mul(static_cast<std::uint64_t>(k), sat_add(max_expansion(k), corrections_bound(k, step, per_weight)));
    }
    return sat_mul(static_cast<std::uint64_t>(w), sat_add(expansion_length(form.shape()), corrections_bound(w, step, per_weight)));
}

}  // namespace nilkit
