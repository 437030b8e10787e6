#include "nilkit/commutator.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_set>

#include "nilkit/errors.hpp"

namespace nilkit {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

FormalCommutator FormalCommutator::letter(int index) {
    if (index < 1) {
        throw MalformedCommutator("letter index must be at least 1, got " + std::to_string(index));
    }
    auto node = std::make_shared<Node>();
    node->letter = index;
    node->weight = 1;
    node->max_letter = index;
    node->counts.assign(static_cast<std::size_t>(index), 0);
    node->counts.back() = 1;
    node->hash = mix(0x51ed27, static_cast<std::size_t>(index));
    return FormalCommutator(std::move(node));
}

FormalCommutator FormalCommutator::bracket(const FormalCommutator& left, const FormalCommutator& right) {
    auto node = std::make_shared<Node>();
    node->weight = left.weight() + right.weight();
    node->max_letter = std::max(left.max_letter(), right.max_letter());
    node->counts.assign(static_cast<std::size_t>(node->max_letter), 0);
    for (std::size_t i = 0; i < left.letter_counts().size(); ++i) node->counts[i] += left.letter_counts()[i];
    for (std::size_t i = 0; i < right.letter_counts().size(); ++i) node->counts[i] += right.letter_counts()[i];
    node->hash = mix(mix(0xb4ac3e, left.hash()), right.hash());
    node->left = std::make_shared<const FormalCommutator>(left);
    node->right = std::make_shared<const FormalCommutator>(right);
    return FormalCommutator(std::move(node));
}

const FormalCommutator& FormalCommutator::left() const {
    if (is_letter()) throw MalformedCommutator("a letter has no left component");
    return *node_->left;
}

const FormalCommutator& FormalCommutator::right() const {
    if (is_letter()) throw MalformedCommutator("a letter has no right component");
    return *node_->right;
}

FormalCommutator FormalCommutator::substitute(const std::function<FormalCommutator(int)>& image) const {
    if (is_letter()) return image(letter_index());
    return bracket(left().substitute(image), right().substitute(image));
}

std::vector<int> FormalCommutator::leaves() const {
    std::vector<int> out;
    std::vector<const FormalCommutator*> stack{this};
    while (!stack.empty()) {
        const FormalCommutator* c = stack.back();
        stack.pop_back();
        if (c->is_letter()) {
            out.push_back(c->letter_index());
        } else {
            stack.push_back(&c->right());
            stack.push_back(&c->left());
        }
    }
    return out;
}

std::string FormalCommutator::to_string() const {
    if (is_letter()) return "x" + std::to_string(letter_index());
    return "[" + left().to_string() + "," + right().to_string() + "]";
}

bool operator==(const FormalCommutator& a, const FormalCommutator& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.weight() != b.weight()) return false;
    if (a.is_letter() || b.is_letter()) return a.letter_index() == b.letter_index();
    return *a.node_->left == *b.node_->left && *a.node_->right == *b.node_->right;
}

WeightVector weight_vector(const FormalCommutator& c, int rank) {
    if (c.max_letter() > rank) {
        throw MalformedCommutator(c.to_string() + " uses letter x" + std::to_string(c.max_letter()) +
                                  " beyond rank " + std::to_string(rank));
    }
    WeightVector chi;
    chi.counts.assign(static_cast<std::size_t>(rank), 0);
    std::copy(c.letter_counts().begin(), c.letter_counts().end(), chi.counts.begin());
    chi.total = c.weight();
    return chi;
}

std::int64_t power_of_weight(std::span<const std::int64_t> lengths, const WeightVector& chi) {
    if (lengths.size() < chi.counts.size()) {
        throw InvalidInput("side-length vector shorter than weight vector");
    }
    std::int64_t out = 1;
    for (std::size_t i = 0; i < chi.counts.size(); ++i) {
        for (int k = 0; k < chi.counts[i]; ++k) {
            if (__builtin_mul_overflow(out, lengths[i], &out)) throw ResourceLimit("L^chi overflows 64 bits");
        }
    }
    return out;
}

std::strong_ordering compare_commutators(const FormalCommutator& a, const FormalCommutator& b) {
    if (a.weight() != b.weight()) return a.weight() <=> b.weight();
    const auto& ca = a.letter_counts();
    const auto& cb = b.letter_counts();
    const std::size_t n = std::max(ca.size(), cb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int va = i < ca.size() ? ca[i] : 0;
        const int vb = i < cb.size() ? cb[i] : 0;
        // More occurrences of an earlier letter sorts first.
        if (va != vb) return vb <=> va;
    }
    if (a.is_letter() && b.is_letter()) return std::strong_ordering::equal;
    if (auto c = compare_commutators(a.left(), b.left()); c != 0) return c;
    return compare_commutators(a.right(), b.right());
}

CommutatorOrder::CommutatorOrder(int rank, int step) : rank_(rank), step_(step) {
    if (rank < 1 || step < 1) throw InvalidParameter("commutator order needs rank >= 1 and step >= 1");
}

std::strong_ordering CommutatorOrder::compare(const FormalCommutator& a, const FormalCommutator& b) const {
    for (const auto* c : {&a, &b}) {
        if (c->max_letter() > rank_) {
            throw MalformedCommutator(c->to_string() + " is not a commutator on " + std::to_string(rank_) +
                                      " letters");
        }
    }
    return compare_commutators(a, b);
}

BasicCommutatorTable::BasicCommutatorTable(int rank, int step, std::vector<FormalCommutator> entries)
    : rank_(rank), step_(step), entries_(std::move(entries)) {
    weights_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        weights_.push_back(weight_vector(entries_[i], rank_));
        index_.emplace(entries_[i], i);
    }
}

std::ptrdiff_t BasicCommutatorTable::index_of(const FormalCommutator& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

BasicCommutatorTable enumerate_basic(int rank, int step) {
    if (rank < 1 || step < 1) {
        throw InvalidParameter("enumerate_basic needs rank >= 1 and step >= 1");
    }
    std::vector<std::vector<FormalCommutator>> by_weight(static_cast<std::size_t>(step) + 1);
    for (int i = 1; i <= rank; ++i) by_weight[1].push_back(FormalCommutator::letter(i));

    for (int n = 2; n <= step; ++n) {
        for (int wj = 1; wj < n; ++wj) {
            for (const auto& cj : by_weight[static_cast<std::size_t>(wj)]) {
                for (const auto& ci : by_weight[static_cast<std::size_t>(n - wj)]) {
                    if (compare_commutators(cj, ci) <= 0) continue;
                    if (!cj.is_letter() && compare_commutators(ci, cj.right()) < 0) continue;
                    by_weight[static_cast<std::size_t>(n)].push_back(FormalCommutator::bracket(cj, ci));
                }
            }
        }
    }

    std::vector<FormalCommutator> all;
    for (auto& level : by_weight) all.insert(all.end(), level.begin(), level.end());
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return compare_commutators(a, b) < 0; });
    return BasicCommutatorTable(rank, step, std::move(all));
}

std::shared_ptr<const BasicCommutatorTable> basic_table(int rank, int step) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const BasicCommutatorTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{rank, step}];
    if (!slot) slot = std::make_shared<const BasicCommutatorTable>(enumerate_basic(rank, step));
    return slot;
}

std::int64_t witt_count(int rank, int weight) {
    if (rank < 1 || weight < 1) throw InvalidParameter("witt_count needs rank >= 1 and weight >= 1");
    auto mobius = [](int n) {
        int result = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                result = -result;
            }
        }
        if (n > 1) result = -result;
        return result;
    };
    auto ipow = [](std::int64_t base, int e) {
        std::int64_t out = 1;
        for (int k = 0; k < e; ++k) {
            if (__builtin_mul_overflow(out, base, &out)) throw ResourceLimit("witt_count overflow");
        }
        return out;
    };
    std::int64_t sum = 0;
    for (int d = 1; d <= weight; ++d) {
        if (weight % d == 0) sum += mobius(d) * ipow(rank, weight / d);
    }
    return sum / weight;
}

std::vector<FormalCommutator> components(const FormalCommutator& c) {
    std::vector<FormalCommutator> out;
    std::unordered_set<FormalCommutator, FormalCommutatorHash> seen;
    std::function<void(const FormalCommutator&)> visit = [&](const FormalCommutator& node) {
        if (!seen.insert(node).second) return;
        out.push_back(node);
        if (!node.is_letter()) {
            visit(node.left());
            visit(node.right());
        }
    };
    visit(c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return compare_commutators(a, b) < 0; });
    return out;
}

CommutatorForm::CommutatorForm(FormalCommutator shape) : shape_(std::move(shape)) {
    const auto slots = shape_.leaves();
    std::vector<int> sorted = slots;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != static_cast<int>(i) + 1) {
            throw MalformedCommutator("commutator form " + shape_.to_string() +
                                      " must use each slot 1.." + std::to_string(slots.size()) + " exactly once");
        }
    }
}

CommutatorForm CommutatorForm::identity() { return CommutatorForm(FormalCommutator::letter(1)); }

std::pair<CommutatorForm, std::vector<int>> CommutatorForm::from_commutator(const FormalCommutator& c) {
    std::vector<int> letters;
    std::function<FormalCommutator(const FormalCommutator&)> relabel = [&](const FormalCommutator& node) {
        if (node.is_letter()) {
            letters.push_back(node.letter_index());
            return FormalCommutator::letter(static_cast<int>(letters.size()));
        }
        auto l = relabel(node.left());
        auto r = relabel(node.right());
        return FormalCommutator::bracket(l, r);
    };
    auto shape = relabel(c);
    return {CommutatorForm(std::move(shape)), std::move(letters)};
}

FormalCommutator CommutatorForm::apply(std::span<const FormalCommutator> arguments) const {
    if (static_cast<int>(arguments.size()) != weight()) {
        throw InvalidInput("commutator form of weight " + std::to_string(weight()) + " applied to " +
                           std::to_string(arguments.size()) + " arguments");
    }
    return shape_.substitute([&](int slot) { return arguments[static_cast<std::size_t>(slot - 1)]; });
}

}  // namespace nilkit
