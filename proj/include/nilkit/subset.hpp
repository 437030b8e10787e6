#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nilkit/backend.hpp"

namespace nilkit {

// A finite set of elements of one backend, kept sorted in canonical order.
class Subset {
public:
    Subset() = default;
    Subset(BackendPtr backend, std::vector<Element> elements);
    Subset(BackendPtr backend, const ElementSet& elements);
    static Subset identity_only(BackendPtr backend);
    static Subset whole(BackendPtr backend);

    const BackendPtr& backend() const noexcept { return backend_; }
    const GroupBackend& group() const noexcept { return *backend_; }
    const std::vector<Element>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }
    const Element& operator[](std::size_t i) const { return elements_.at(i); }

    bool contains(const Element& e) const { return index_.count(e) != 0; }
    bool is_symmetric() const noexcept { return symmetric_; }
    bool contains_identity() const noexcept { return has_identity_; }
    bool subset_of(const Subset& other) const;
    bool is_trivial() const { return elements_.size() == 1 && has_identity_; }

    Subset inverse() const;
    Subset symmetrized() const;  // A u A^-1 u {1}
    Subset intersect(const Subset& other) const;
    Subset unite(const Subset& other) const;
    Subset filter(const std::function<bool(const Element&)>& keep) const;
    // g A and A g
    Subset left_translate(const Element& g) const;
    Subset right_translate(const Element& g) const;

    std::string to_string() const;  // one element per line

    friend bool operator==(const Subset& a, const Subset& b) { return a.elements_ == b.elements_; }

private:
    BackendPtr backend_;
    std::vector<Element> elements_;
    ElementSet index_;
    bool symmetric_ = false;
    bool has_identity_ = false;
};

inline constexpr std::size_t kDefaultSetCap = 2'000'000;

// AB = {ab}. ResourceLimit once the product exceeds `cap` elements.
Subset product_set(const Subset& a, const Subset& b, std::size_t cap = kDefaultSetCap);
// A^n, n >= 1.
Subset power_set(const Subset& a, int n, std::size_t cap = kDefaultSetCap);

// <S> by breadth-first closure under right multiplication by S u S^-1.
Subset generated_subgroup(BackendPtr backend, const std::vector<Element>& generators,
                          std::size_t cap = kDefaultSetCap);

// Closed under multiplication and contains 1 (sufficient for finite sets).
bool is_subgroup(const Subset& s);

// Set file: one element per line in the backend text format; '#' comments
// and blank lines ignored.
Subset read_set_file(BackendPtr backend, const std::string& path);
Subset parse_set_text(BackendPtr backend, const std::string& text);

}  // namespace nilkit
