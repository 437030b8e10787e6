#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilkit/backend.hpp"
#include "nilkit/collection.hpp"
#include "nilkit/subset.hpp"
#include "nilkit/word.hpp"

namespace nilkit {

// a^-1 b^-1 a b
Element commutator(const GroupBackend& g, const Element& a, const Element& b);
Element power(const GroupBackend& g, const Element& a, const Int& exponent);

// Interpretation of a formal commutator with x_i -> assignment[i-1].
Element evaluate_commutator(const GroupBackend& g, const std::vector<Element>& assignment, const FormalCommutator& c);
Element evaluate_word(const GroupBackend& g, const std::vector<Element>& assignment, const Word& w);
Element evaluate_collected(const GroupBackend& g, const std::vector<Element>& assignment, const CollectedForm& f);

// [g_1, ..., g_k] = [[g_1, ..., g_{k-1}], g_k], k >= 2.
Element simple_commutator(const GroupBackend& g, const std::vector<Element>& elements);

// {[x_1, ..., x_k] : x_i in X_i}
Subset commutator_set(const std::vector<Subset>& sets);

struct SeriesChain {
    std::vector<Subset> terms;  // Gamma_1 = G, Gamma_2, ..., up to the first repeat
    std::optional<int> step;    // set when the chain reaches {1}
};

SeriesChain lower_central_series(BackendPtr backend);

// Least s with [X, ..., X] (s+1 copies) = {1}, searched up to `cap`.
std::optional<int> nilpotency_step(const Subset& generators, int cap = 10);

struct SylowFactor {
    std::int64_t prime;
    Subset subgroup;
};

// Requires a finite nilpotent backend; verifies the internal direct product.
std::vector<SylowFactor> sylow_decomposition(BackendPtr backend);

std::int64_t element_order(const GroupBackend& g, const Element& a, std::int64_t cap = 1'000'000);
std::vector<std::int64_t> prime_factors(std::int64_t n);

bool is_abelian(const GroupBackend& g);
// g N g^-1 = N for every generator g of the backend.
bool is_normal(const Subset& n);

}  // namespace nilkit
