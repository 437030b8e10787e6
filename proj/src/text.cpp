#include "nilkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nilkit/errors.hpp"

namespace nilkit {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    bool skip_space() {
        bool any = false;
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            advance();
            any = true;
        }
        return any;
    }

    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, line_, column_); }

    void expect(char c, const std::string& message) {
        skip_space();
        if (peek() != c) fail(message);
        advance();
    }

    FormalCommutator commutator() {
        skip_space();
        if (peek() == '[') {
            advance();
            auto left = commutator();
            expect(',', at_end() ? "unbalanced bracket: expected ','" : "expected ','");
            auto right = commutator();
            expect(']', at_end() ? "unbalanced bracket: expected ']'" : "expected ']'");
            return FormalCommutator::bracket(left, right);
        }
        if (peek() == 'x') {
            advance();
            std::size_t start = pos_;
            std::size_t line = line_, column = column_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
            if (start == pos_) fail("expected a letter index after 'x'");
            int index = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, index);
            if (ec != std::errc() || index < 1) throw SyntaxError("letter index must be a positive integer", line, column);
            return FormalCommutator::letter(index);
        }
        if (at_end()) fail("unexpected end of input: expected 'x' or '['");
        if (peek() == ']') fail("unbalanced bracket: unexpected ']'");
        fail(std::string("unexpected character '") + peek() + "'");
    }

    Occurrence occurrence() {
        Occurrence occ{commutator(), 1};
        if (peek() == '^') {
            for (char c : std::string_view("^-1")) {
                if (peek() != c) fail("expected '^-1'");
                advance();
            }
            occ.sign = -1;
        }
        return occ;
    }

    std::vector<Occurrence> occurrences() {
        std::vector<Occurrence> out;
        skip_space();
        while (!at_end()) {
            out.push_back(occurrence());
            const bool spaced = skip_space();
            if (!at_end() && !spaced) fail("expected whitespace between occurrences");
        }
        return out;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

}  // namespace

FormalCommutator parse_commutator(std::string_view text) {
    Parser p(text);
    auto c = p.commutator();
    p.skip_space();
    if (!p.at_end()) p.fail("trailing input after commutator");
    return c;
}

std::vector<Occurrence> parse_occurrences(std::string_view text) {
    return Parser(text).occurrences();
}

Word parse_word(std::string_view text, int rank, int step) {
    auto occ = parse_occurrences(text);
    if (occ.empty()) throw InvalidInput("empty word");
    int max_letter = 0, max_weight = 0;
    for (const auto& o : occ) {
        max_letter = std::max(max_letter, o.commutator.max_letter());
        max_weight = std::max(max_weight, o.commutator.weight());
    }
    return Word(rank > 0 ? rank : max_letter, step > 0 ? step : max_weight, std::move(occ));
}

std::string trim(std::string_view text) {
    auto b = text.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view text, char separator) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(separator, start);
        out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text, char separator) {
    std::vector<std::int64_t> out;
    for (const auto& item : split(text, separator)) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw InvalidInput("not an integer: '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace nilkit
