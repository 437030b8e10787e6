#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace nilkit {

/* A formal commutator in the letters x_1, ..., x_r: either a letter or a
 * bracket [left, right] of two formal commutators. Values are immutable and
 * share structure, so copies are cheap. Inversion is not part of the tree;
 * words carry it as a sign on each occurrence.
 */
class FormalCommutator {
public:
    static FormalCommutator letter(int index);
    static FormalCommutator bracket(const FormalCommutator& left, const FormalCommutator& right);

    bool is_letter() const noexcept { return node_->letter != 0; }
    int letter_index() const noexcept { return node_->letter; }
    const FormalCommutator& left() const;
    const FormalCommutator& right() const;

    // Number of leaves.
    int weight() const noexcept { return node_->weight; }
    int max_letter() const noexcept { return node_->max_letter; }
    // Per-letter leaf counts, indexed from 0, sized max_letter().
    const std::vector<int>& letter_counts() const noexcept { return node_->counts; }
    std::size_t hash() const noexcept { return node_->hash; }

    // Replace each letter i by image(i).
    FormalCommutator substitute(const std::function<FormalCommutator(int)>& image) const;

    // Letters in left-to-right leaf order.
    std::vector<int> leaves() const;

    std::string to_string() const;

    friend bool operator==(const FormalCommutator& a, const FormalCommutator& b) noexcept;

private:
    struct Node {
        int letter = 0;
        int weight = 1;
        int max_letter = 0;
        std::size_t hash = 0;
        std::vector<int> counts;
        std::shared_ptr<const FormalCommutator> left;
        std::shared_ptr<const FormalCommutator> right;
    };

    explicit FormalCommutator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct FormalCommutatorHash {
    std::size_t operator()(const FormalCommutator& c) const noexcept { return c.hash(); }
};

struct WeightVector {
    std::vector<int> counts;
    int total = 0;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

// chi(c) for rank r. Throws MalformedCommutator when a leaf exceeds r.
WeightVector weight_vector(const FormalCommutator& c, int rank);

// L^chi = prod L_i^{chi_i}.
std::int64_t power_of_weight(std::span<const std::int64_t> lengths, const WeightVector& chi);

/* The total order on commutators used throughout the library:
 *   1. lower total weight first;
 *   2. equal total weight: weight vectors in descending lexicographic order,
 *      so x_1 < x_2 < ... < x_r and equal weight vectors stay consecutive;
 *   3. equal weight vector: recursive comparison of (left, right).
 */
class CommutatorOrder {
public:
    CommutatorOrder(int rank, int step);

    int rank() const noexcept { return rank_; }
    int step() const noexcept { return step_; }

    // Throws MalformedCommutator if either tree uses a letter above rank().
    std::strong_ordering compare(const FormalCommutator& a, const FormalCommutator& b) const;
    bool less(const FormalCommutator& a, const FormalCommutator& b) const {
        return compare(a, b) == std::strong_ordering::less;
    }

private:
    int rank_;
    int step_;
};

// Unchecked form of CommutatorOrder::compare; valid for any pair of trees.
std::strong_ordering compare_commutators(const FormalCommutator& a, const FormalCommutator& b);

class BasicCommutatorTable {
public:
    BasicCommutatorTable(int rank, int step, std::vector<FormalCommutator> entries);

    int rank() const noexcept { return rank_; }
    int step() const noexcept { return step_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<FormalCommutator>& entries() const noexcept { return entries_; }
    const FormalCommutator& operator[](std::size_t i) const { return entries_.at(i); }
    const WeightVector& weight(std::size_t i) const { return weights_.at(i); }

    // Position of c in the table, or -1.
    std::ptrdiff_t index_of(const FormalCommutator& c) const;

private:
    int rank_;
    int step_;
    std::vector<FormalCommutator> entries_;
    std::vector<WeightVector> weights_;
    std::unordered_map<FormalCommutator, std::size_t, FormalCommutatorHash> index_;
};

/* Basic commutators of weight <= step on `rank` letters, by Hall's rule:
 * the letters, then every [c_j, c_i] with c_j > c_i such that, when
 * c_j = [c_a, c_b], also c_i >= c_b. Sorted by CommutatorOrder.
 */
BasicCommutatorTable enumerate_basic(int rank, int step);

// Shared, memoised table for (rank, step).
std::shared_ptr<const BasicCommutatorTable> basic_table(int rank, int step);

// Witt's necklace count of basic commutators of exactly the given weight.
std::int64_t witt_count(int rank, int weight);

// C(c): the subtrees of c, deduplicated, in CommutatorOrder.
std::vector<FormalCommutator> components(const FormalCommutator& c);

/* A commutator form of weight n: a tree whose leaves are the argument slots
 * 1..n, each used exactly once. The leaf labels encode the permutation that
 * assigns arguments to positions in the bracket shape.
 */
class CommutatorForm {
public:
    // Throws MalformedCommutator unless every slot 1..weight appears exactly once.
    explicit CommutatorForm(FormalCommutator shape);

    static CommutatorForm identity();
    // Relabel the leaves of c as slots 1..w in left-to-right order; the
    // returned letters are the original leaf letters in slot order.
    static std::pair<CommutatorForm, std::vector<int>> from_commutator(const FormalCommutator& c);

    int weight() const noexcept { return shape_.weight(); }
    const FormalCommutator& shape() const noexcept { return shape_; }

    FormalCommutator apply(std::span<const FormalCommutator> arguments) const;

    std::string to_string() const { return shape_.to_string(); }

private:
    FormalCommutator shape_;
};

}  // namespace nilkit
