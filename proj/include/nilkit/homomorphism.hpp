#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilkit/backend.hpp"
#include "nilkit/subset.hpp"

namespace nilkit {

/* A homomorphism rho: source -> target given by a rule. When the kernel is
 * finite it is stored explicitly; `lift` picks some preimage of an element of
 * the image (nullopt when there is none), which together with the kernel
 * makes preimages enumerable.
 */
class GroupHomomorphism {
public:
    using Rule = std::function<Element(const Element&)>;
    using Lift = std::function<std::optional<Element>(const Element&)>;

    GroupHomomorphism(BackendPtr source, BackendPtr target, Rule rule, std::optional<Subset> kernel = std::nullopt,
                      Lift lift = nullptr);

    const BackendPtr& source() const noexcept { return source_; }
    const BackendPtr& target() const noexcept { return target_; }
    const std::optional<Subset>& kernel() const noexcept { return kernel_; }
    bool has_finite_kernel() const noexcept { return kernel_.has_value(); }

    Element operator()(const Element& e) const { return target_->normalize(rule_(e)); }
    Subset image(const Subset& a) const;
    std::optional<Element> lift(const Element& y) const;

    // rho^-1(A); UnsupportedBackend when the kernel is infinite and the source
    // cannot be enumerated.
    Subset preimage(const Subset& a) const;

    // rho(ab) = rho(a) rho(b) for all pairs drawn from `sample` (or from the
    // whole source when finite and sample is empty).
    bool verify_multiplicative(const std::vector<Element>& sample = {}) const;

private:
    BackendPtr source_;
    BackendPtr target_;
    Rule rule_;
    std::optional<Subset> kernel_;
    Lift lift_;
};

// G -> G/N as a table group whose element k is the k-th coset in canonical
// order of minimal representatives. PreconditionViolation unless N is a
// normal subgroup.
struct Quotient {
    std::shared_ptr<TableGroup> group;
    std::vector<Element> representatives;  // canonical-minimal element of each coset
    GroupHomomorphism map;
};
Quotient quotient_by(BackendPtr g, const Subset& n);

// Z^k or Z/n -> Z/m coordinatewise reduction (each source modulus 0 or a
// multiple of m).
GroupHomomorphism reduction_map(std::shared_ptr<const CyclicProduct> source, std::int64_t modulus);

// UT(n, R) -> R^{n-1}, reading the superdiagonal.
GroupHomomorphism abelianization_map(std::shared_ptr<const UnitriangularBackend> source);

}  // namespace nilkit
