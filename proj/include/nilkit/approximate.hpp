#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "nilkit/homomorphism.hpp"
#include "nilkit/subset.hpp"

namespace nilkit {

using Ratio = boost::rational<std::int64_t>;

std::string to_string(const Ratio& r);
Ratio parse_ratio(const std::string& text);

// |A^2| / |A|
Ratio doubling_constant(const Subset& a);

struct ApproximateGroupWitness {
    Subset a;
    std::int64_t k = 0;
    Subset x;
    bool optimal = false;          // |X| proven minimal among symmetric candidates
    std::int64_t lower_bound = 0;  // proven lower bound on the minimum
};

// X symmetric, |X| <= K, A^2 contained in XA.
bool verify_witness(const ApproximateGroupWitness& w);

struct WitnessOptions {
    std::size_t exact_limit = 24;  // exact search when |A^3| is at most this
    std::size_t node_limit = 5'000'000;
};

// Smallest symmetric X inside A^3 with A^2 in XA; lexicographically least
// (canonical order) among the optimal ones when the search is exact.
ApproximateGroupWitness minimal_witness(const Subset& a, const WitnessOptions& options = {});

// |A^n| <= K^{n-1} |A|
bool verify_growth(const ApproximateGroupWitness& w, int n);

struct CoveringResult {
    std::vector<Subset> sets;  // S_1..S_t
    int t = 0;
    bool containment = false;  // A in S_{t-1}^-1 ... S_1^-1 B^-1 B S_1 ... S_t
    double log_bound = 0;      // log2 M' + M log2 max(K, 2)
    double proof_bound = 0;    // 1 + log2 M' + (M - 1) log2 max(K, 2)
};

CoveringResult chang_cover(const Subset& a, const ApproximateGroupWitness& w, const Subset& b, int m, std::int64_t m_prime);

using Membership = std::function<bool(const Element&)>;

struct IntersectionCover {
    Subset intersection;             // A^m n H
    Subset a2h;                      // A^2 n H
    std::vector<Element> translates; // nu(y), one per kept translate
    ApproximateGroupWitness witness; // for A^m n H
    bool cover_ok = false;
    bool witness_ok = false;
    Int translate_bound;             // K^{m-1}
    Int witness_bound;               // 2 K^{2m-1}
};

IntersectionCover intersection_cover(const Subset& a, const ApproximateGroupWitness& w, const Membership& in_h, int m);

/* A right inverse phi of pi on pi(A^{r_max}) with phi(pi(A^r)) in A^r,
 * phi(1) = 1, picking the canonical-minimal representative from the
 * smallest power of A that reaches each coset.
 */
class SplittingMap {
public:
    SplittingMap(GroupHomomorphism pi, std::vector<Subset> powers,
                 std::unordered_map<Element, Element, ElementHash> table);

    const GroupHomomorphism& pi() const noexcept { return pi_; }
    int r_max() const noexcept { return static_cast<int>(powers_.size()); }
    const Subset& power(int r) const { return powers_.at(static_cast<std::size_t>(r - 1)); }
    const std::unordered_map<Element, Element, ElementHash>& table() const noexcept { return table_; }
    Subset domain() const;
    bool defined_at(const Element& c) const { return table_.count(c) != 0; }
    const Element& operator()(const Element& c) const;
    // Elements of ker(pi) in the given set.
    bool in_kernel(const Element& g) const { return pi_(g) == pi_.target()->identity(); }

private:
    GroupHomomorphism pi_;
    std::vector<Subset> powers_;
    std::unordered_map<Element, Element, ElementHash> table_;
};

// A must be symmetric and contain the identity.
SplittingMap build_splitting(const GroupHomomorphism& pi, const Subset& a, int r_max);
// Finite G with normal subgroup N.
SplittingMap build_splitting(BackendPtr g, const Subset& n, const Subset& a, int r_max);

struct SplittingCheck {
    bool right_inverse = false;     // pi(phi(c)) = c
    bool identity = false;          // phi(1) = 1
    bool powers = false;            // phi(pi(A^r)) in A^r
    bool products = false;          // sampled tuples with x_1...x_n = 1
    bool cover = false;             // A in phi(pi(A)) (A^2 n H)
    bool size_lemma = false;        // |phi(C) B| = |C| |B|
    bool size_corollary = false;    // |pi(A)| |A^2 n H| >= |A|
    std::size_t tuples_checked = 0;

    bool all() const { return right_inverse && identity && powers && products && cover && size_lemma && size_corollary; }
};

SplittingCheck verify_splitting(const SplittingMap& phi, const Subset& a, int max_n = 4, std::size_t samples = 200,
                                std::uint64_t seed = 1);

struct ConverseReport {
    bool well_formed = false;  // nested, symmetric, contain 1, inside H, phi defined on C^3
    std::array<bool, 5> hypotheses{};
    bool conclusion = false;
    std::size_t union_size = 0;
    std::size_t cube_size = 0;

    bool hypotheses_hold() const {
        return well_formed && hypotheses[0] && hypotheses[1] && hypotheses[2] && hypotheses[3] && hypotheses[4];
    }
};

using PhiFunction = std::function<std::optional<Element>(const Element&)>;

ConverseReport verify_splitting_converse(const Subset& c, const std::array<Subset, 4>& b, const PhiFunction& phi,
                                         const Membership& in_h, Ratio k1, Ratio k2, Ratio k3);
ConverseReport verify_splitting_converse(const Subset& c, const std::array<Subset, 4>& b, const SplittingMap& phi,
                                         Ratio k1, Ratio k2, Ratio k3);

struct PullbackResult {
    Subset preimage;
    ApproximateGroupWitness witness;
    bool verified = false;
};

// rho^-1(A) with X~ = {omega(x)} u {omega(x)^-1}, omega(x) the canonical-minimal preimage.
PullbackResult pullback_witness(const GroupHomomorphism& rho, const ApproximateGroupWitness& w);

struct TriplingReport {
    bool precondition = false;  // A symmetric, 1 in A, |A^3| <= K |A|
    std::size_t a_size = 0;
    std::size_t cube_size = 0;
    std::optional<ApproximateGroupWitness> witness;  // minimal witness of A^3
};

TriplingReport verify_tripling(const Subset& a, Ratio k, const WitnessOptions& options = {});

struct CosetSearchOptions {
    int rank_cap = 2;
    std::size_t group_cap = 10'000;
    std::size_t candidate_cap = 2'000'000;
};

struct CosetSearchResult {
    bool found = false;
    bool exhaustive = true;
    Subset h;
    std::vector<Element> generators;
    std::vector<std::int64_t> lengths;
    Subset coset_progression;
    Ratio ratio;
    std::size_t explored = 0;
};

// Searches subgroups (by index) and progressions over generators from 4A for
// H + P containing A with the least |H + P| / |A|.
CosetSearchResult brute_coset_progression(const Subset& a, const CosetSearchOptions& options = {});

std::vector<Subset> all_subgroups(BackendPtr g);

struct NilprogressionSearchOptions {
    int rank_cap = 2;
    std::int64_t max_length = 2;
    int c_cap = 6;
};

struct NilprogressionSearchResult {
    bool found = false;
    std::vector<Element> generators;
    std::vector<std::int64_t> lengths;
    Subset nilprogression;
    int c = 0;  // least c with P* in A^c
    std::size_t explored = 0;
};

// Looks for a nilprogression P* with A in P* in A^c, generators from A,
// minimising c and then |P*|.
NilprogressionSearchResult nilprogression_cover_search(const Subset& a, const NilprogressionSearchOptions& options = {});

}  // namespace nilkit
