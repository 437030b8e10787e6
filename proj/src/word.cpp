#include "nilkit/word.hpp"

#include <algorithm>
#include <cstdlib>

#include "nilkit/errors.hpp"

namespace nilkit {

std::string Occurrence::to_string() const {
    return sign < 0 ? commutator.to_string() + "^-1" : commutator.to_string();
}

Word::Word(int rank, int step) : rank_(rank), step_(step) {
    if (rank < 1 || step < 1) throw InvalidParameter("a word needs rank >= 1 and step >= 1");
}

Word::Word(int rank, int step, std::vector<Occurrence> occurrences) : Word(rank, step) {
    occurrences_.reserve(occurrences.size());
    for (auto& o : occurrences) push_back(o);
}

void Word::check(const Occurrence& occurrence) const {
    if (occurrence.sign != 1 && occurrence.sign != -1) {
        throw InvalidInput("occurrence sign must be +1 or -1");
    }
    if (occurrence.commutator.max_letter() > rank_) {
        throw MalformedCommutator(occurrence.commutator.to_string() + " uses a letter beyond rank " +
                                  std::to_string(rank_));
    }
}

void Word::push_back(const Occurrence& occurrence) {
    check(occurrence);
    if (occurrence.commutator.weight() <= step_) occurrences_.push_back(occurrence);
}

void Word::append(const Word& other) {
    for (const auto& o : other.occurrences_) push_back(o);
}

Word Word::inverse() const {
    Word out(rank_, step_);
    out.occurrences_.reserve(occurrences_.size());
    for (auto it = occurrences_.rbegin(); it != occurrences_.rend(); ++it) out.occurrences_.push_back(it->inverse());
    return out;
}

std::string Word::to_string() const {
    std::string out;
    for (const auto& o : occurrences_) {
        if (!out.empty()) out += ' ';
        out += o.to_string();
    }
    return out;
}

Word letter_word(int rank, int step, const std::vector<int>& signed_letters) {
    Word w(rank, step);
    for (int s : signed_letters) {
        if (s == 0) throw InvalidInput("letter 0 does not exist");
        w.push_back({FormalCommutator::letter(std::abs(s)), s < 0 ? -1 : 1});
    }
    return w;
}

}  // namespace nilkit
