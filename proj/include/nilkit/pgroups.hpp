#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilkit/backend.hpp"
#include "nilkit/homomorphism.hpp"
#include "nilkit/subset.hpp"

namespace nilkit {

// The prime p when |G| = p^k (k >= 1), nullopt otherwise.
std::optional<std::int64_t> prime_of_p_group(const GroupBackend& g);

// Invariant factors d_1 | d_2 | ... of a finite abelian group, each > 1.
std::vector<std::int64_t> invariant_factors(const GroupBackend& g);
// Invariant factors of a finite abelian subgroup.
std::vector<std::int64_t> invariant_factors(const Subset& h);

// Minimum size of a generating set of a finite abelian backend.
int abelian_rank(const GroupBackend& g);
int abelian_rank(const Subset& h);

// rank(H) <= rank(G) for a subgroup H of an abelian p-group.
bool verify_subgroup_rank(const Subset& h);

// Phi(G) = G^p [G, G]
Subset frattini(BackendPtr g);

// Scans S in canonical order, keeping an element iff it enlarges the span
// modulo Phi(G).
std::vector<Element> burnside_basis(BackendPtr g, const std::vector<Element>& s);

// <S> = G exactly when the image of S spans G/Phi(G).
bool burnside_property_holds(BackendPtr g, const Subset& phi, const std::vector<Element>& s);

struct SpanReport {
    Subset span;   // <X>
    Subset power;  // X^r
    int r = 0;
    bool contained = false;
};

// For X a union of subgroups of an abelian p-group of rank r: <X> in X^r.
// Uses the measured rank when r is not given.
SpanReport union_subgroups_span(const Subset& x, std::optional<int> r = std::nullopt);
// Same computation without the precondition checks.
SpanReport union_subgroups_span_unchecked(const Subset& x, int r);

// A map Gamma_1 x ... x Gamma_k -> target, meant to be a homomorphism in each
// variable, into an abelian target.
class MultiHom {
public:
    using Rule = std::function<Element(const std::vector<Element>&)>;

    MultiHom(std::vector<BackendPtr> sources, BackendPtr target, Rule rule);

    static MultiHom from_table(std::vector<BackendPtr> sources, BackendPtr target,
                               std::map<std::vector<Element>, Element> table);

    std::size_t arity() const noexcept { return sources_.size(); }
    const std::vector<BackendPtr>& sources() const noexcept { return sources_; }
    const BackendPtr& target() const noexcept { return target_; }
    Element operator()(const std::vector<Element>& args) const;

    // phi(Gamma_1, ..., Gamma_k), or phi(V_1, ..., V_k) for given sets.
    Subset image() const;
    Subset image(const std::vector<Subset>& sets) const;

    // Exhaustive when |Gamma_1| ... |Gamma_k| * max |Gamma_i| <= exhaustive_cap,
    // otherwise `samples` random checks.
    bool verify_multilinear(std::size_t exhaustive_cap = 2'000'000, std::size_t samples = 20'000,
                            std::uint64_t seed = 1) const;

    // Calls f on every tuple of source elements.
    void for_each_tuple(const std::function<void(const std::vector<Element>&)>& f) const;

private:
    std::vector<BackendPtr> sources_;
    BackendPtr target_;
    Rule rule_;
};

// (x, y) -> [x, y] on UT(3, Z/p), read off in the corner entry (target Z/p).
MultiHom heisenberg_commutator_map(std::int64_t p);
// Same map on the abelianization (Z/p)^2 x (Z/p)^2, lifting along the superdiagonal.
MultiHom heisenberg_abelianized_commutator_map(std::int64_t p);

struct ImageSpanReport {
    Subset image;
    Subset span;
    Subset power;
    int r = 0;
    bool contained = false;
};

// <phi(Gamma_1..Gamma_k)> in phi(Gamma_1..Gamma_k)^r with r the measured
// rank of the target unless a larger one is given.
ImageSpanReport multihom_image_span(const MultiHom& phi, std::optional<int> r = std::nullopt);

// u(p): the p-primary component of u in a finite nilpotent group.
Element primary_component(const GroupBackend& g, const Element& u, std::int64_t p);

struct FactoringReport {
    bool factoring = false;      // phi(u_1..u_k) = prod_p phi(u_1(p)..u_k(p))
    bool p_components = false;   // phi(u_1(p)..u_k(p)) has p-power order
    std::size_t tuples = 0;
    std::vector<std::int64_t> primes;
};

FactoringReport verify_primary_factoring(const MultiHom& phi);

struct InducedMultiHom {
    MultiHom psi;
    std::vector<Quotient> quotients;
    bool well_defined = false;
    std::size_t table_size = 0;
};

// psi(x_1 N_1, ..., x_k N_k) = phi(x_1, ..., x_k); PreconditionViolation
// when phi is not trivial on some N_i.
InducedMultiHom induced_multihom(const MultiHom& phi, const std::vector<Subset>& normals);

// phi(V_1..V_k) = psi(rho_1(V_1)..rho_k(V_k))
bool verify_induced_image(const MultiHom& phi, const InducedMultiHom& induced, const std::vector<Subset>& v);

// Small p-groups as table groups.
std::shared_ptr<TableGroup> dihedral_group(std::size_t n);    // order 2n
std::shared_ptr<TableGroup> quaternion_group(std::size_t n);  // generalised quaternion, order 4n

struct NamedGroup {
    std::string name;
    BackendPtr group;
};

// Every p-group of order <= 32 in the built-in corpus.
std::vector<NamedGroup> small_p_groups();

}  // namespace nilkit
