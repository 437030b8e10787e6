#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilkit/backend.hpp"
#include "nilkit/commutator.hpp"
#include "nilkit/subset.hpp"

namespace nilkit {

// Generators x_1..x_r and side lengths L_1..L_r. A side length of 0 is
// allowed and simply removes that generator.
struct ProgressionSpec {
    BackendPtr backend;
    std::vector<Element> generators;
    std::vector<std::int64_t> lengths;

    int rank() const noexcept { return static_cast<int>(generators.size()); }
    void validate() const;
};

enum class ProgressionKind { Ordered, Nilprogression, Nilpotent, Ball, CosetProgression, Power };

std::string to_string(ProgressionKind kind);

struct EnumeratedSet {
    Subset set;
    ProgressionKind kind;
};

// {x_1^{l_1} ... x_r^{l_r} : |l_i| <= L_i}
EnumeratedSet enumerate_ordered(const ProgressionSpec& spec, std::size_t cap = kDefaultSetCap);

struct NilprogressionOptions {
    std::int64_t max_total_letters = 12;  // bound on sum L_i
    std::size_t cap = kDefaultSetCap;
};

// Every product in which x_i and x_i^-1 occur at most L_i times between them.
EnumeratedSet enumerate_nilprogression(const ProgressionSpec& spec, const NilprogressionOptions& options = {});

// {c_1^{l_1} ... c_t^{l_t} : |l_i| <= L^{chi(c_i)}} over the given table.
EnumeratedSet enumerate_nilpotent_progression(const ProgressionSpec& spec, const BasicCommutatorTable& table,
                                              std::size_t cap = kDefaultSetCap);
// Uses the table for the backend's declared step (or the measured step of
// the generators on finite backends).
EnumeratedSet enumerate_nilpotent_progression(const ProgressionSpec& spec, std::size_t cap = kDefaultSetCap);

// Union of the segments {x_i^l : |l| <= L_i}.
EnumeratedSet enumerate_ball(const ProgressionSpec& spec);

// H + P for a subgroup H of a finite abelian backend.
EnumeratedSet enumerate_coset_progression(const Subset& h, const ProgressionSpec& spec);

EnumeratedSet power_set(const EnumeratedSet& set, int n, std::size_t cap = kDefaultSetCap);

struct ChainReport {
    bool ordered_in_star = false;
    bool star_in_nilpotent = false;
    std::size_t ordered_size = 0;
    std::size_t star_size = 0;
    std::size_t nilpotent_size = 0;
    std::optional<int> minimal_m;  // least m with P in P_ord^m, if <= m_cap
    int m_cap = 8;
    int step = 1;
};

ChainReport check_chain(const ProgressionSpec& spec, int m_cap = 8, const NilprogressionOptions& options = {});

// Step used for the nilpotent progression of a spec.
int progression_step(const ProgressionSpec& spec);

}  // namespace nilkit
