#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilkit {

using Int = boost::multiprecision::cpp_int;

// Group elements are integer vectors whose meaning is fixed by the backend.
// Backends keep them in a canonical representation, so vector equality is
// group equality.
using Element = std::vector<Int>;

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept;
};

using ElementSet = std::unordered_set<Element, ElementHash>;

// Fixed total order used wherever the library must pick "the first" element:
// entries compared left to right by 0 < 1 < -1 < 2 < -2 < ...
bool canonical_less(const Element& a, const Element& b);

struct CanonicalLess {
    bool operator()(const Element& a, const Element& b) const { return canonical_less(a, b); }
};

std::string join_entries(const Element& e, const std::string& separator = " ");

// Non-negative residue of v modulo m (m > 0).
Int floor_mod(const Int& v, const Int& m);

}  // namespace nilkit
