#pragma once

#include <string>
#include <vector>

#include "nilkit/commutator.hpp"

namespace nilkit {

struct Occurrence {
    FormalCommutator commutator;
    int sign = 1;  // +1 or -1

    Occurrence inverse() const { return {commutator, -sign}; }
    std::string to_string() const;

    friend bool operator==(const Occurrence& a, const Occurrence& b) {
        return a.sign == b.sign && a.commutator == b.commutator;
    }
};

/* A string of commutators and their inverses over x_1..x_rank, read modulo
 * commutators of weight above step. Occurrences of weight > step are dropped
 * on construction.
 */
class Word {
public:
    Word(int rank, int step);
    Word(int rank, int step, std::vector<Occurrence> occurrences);

    int rank() const noexcept { return rank_; }
    int step() const noexcept { return step_; }
    const std::vector<Occurrence>& occurrences() const noexcept { return occurrences_; }
    std::size_t size() const noexcept { return occurrences_.size(); }
    bool empty() const noexcept { return occurrences_.empty(); }
    const Occurrence& operator[](std::size_t i) const { return occurrences_.at(i); }

    void push_back(const Occurrence& occurrence);
    void append(const Word& other);

    // Reversed sequence with every sign flipped.
    Word inverse() const;

    // Occurrences separated by single spaces; "" for the empty word.
    std::string to_string() const;

    friend bool operator==(const Word& a, const Word& b) {
        return a.rank_ == b.rank_ && a.step_ == b.step_ && a.occurrences_ == b.occurrences_;
    }

private:
    void check(const Occurrence& occurrence) const;

    int rank_;
    int step_;
    std::vector<Occurrence> occurrences_;
};

// Word of plain letters x_i^{±1}, taken from a signed list (i or -i).
Word letter_word(int rank, int step, const std::vector<int>& signed_letters);

}  // namespace nilkit
