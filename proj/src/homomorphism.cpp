#include "nilkit/homomorphism.hpp"

#include <algorithm>
#include <unordered_map>

#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"

namespace nilkit {

GroupHomomorphism::GroupHomomorphism(BackendPtr source, BackendPtr target, Rule rule, std::optional<Subset> kernel,
                                     Lift lift)
    : source_(std::move(source)), target_(std::move(target)), rule_(std::move(rule)), kernel_(std::move(kernel)),
      lift_(std::move(lift)) {}

Subset GroupHomomorphism::image(const Subset& a) const {
    std::vector<Element> out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back((*this)(x));
    return Subset(target_, std::move(out));
}

std::optional<Element> GroupHomomorphism::lift(const Element& y) const {
    if (lift_) {
        auto x = lift_(y);
        if (x && (*this)(*x) != y) throw Error("internal: lift does not map back");
        return x;
    }
    if (!source_->is_finite()) throw UnsupportedBackend("no lift available for an infinite source");
    for (const auto& x : source_->elements()) {
        if ((*this)(x) == y) return x;
    }
    return std::nullopt;
}

Subset GroupHomomorphism::preimage(const Subset& a) const {
    if (source_->is_finite() && !lift_) {
        return Subset::whole(source_).filter([&](const Element& x) { return a.contains((*this)(x)); });
    }
    if (!kernel_) throw UnsupportedBackend("preimage needs a finite kernel or an enumerable source");
    std::vector<Element> out;
    for (const auto& y : a) {
        auto x = lift(y);
        if (!x) continue;
        for (const auto& k : *kernel_) out.push_back(source_->multiply(*x, k));
    }
    return Subset(source_, std::move(out));
}

bool GroupHomomorphism::verify_multiplicative(const std::vector<Element>& sample) const {
    const std::vector<Element> pool = sample.empty() ? source_->elements() : sample;
    for (const auto& a : pool)
        for (const auto& b : pool)
            if ((*this)(source_->multiply(a, b)) != target_->multiply((*this)(a), (*this)(b))) return false;
    return true;
}

Quotient quotient_by(BackendPtr g, const Subset& n) {
    if (!is_subgroup(n)) throw PreconditionViolation("quotient needs a subgroup");
    if (!is_normal(n)) throw PreconditionViolation("quotient needs a normal subgroup");
    const auto elems = g->elements();
    std::unordered_map<Element, std::size_t, ElementHash> coset_of;
    std::vector<Element> reps;
    // elems is in canonical order, so the first unseen element of each coset
    // is its canonical-minimal representative.
    for (const auto& x : elems) {
        if (coset_of.count(x)) continue;
        const std::size_t k = reps.size();
        reps.push_back(x);
        for (const auto& h : n) coset_of.emplace(g->multiply(x, h), k);
    }
    std::vector<std::vector<std::size_t>> table(reps.size(), std::vector<std::size_t>(reps.size()));
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = 0; b < reps.size(); ++b) table[a][b] = coset_of.at(g->multiply(reps[a], reps[b]));
    auto q = std::make_shared<TableGroup>(std::move(table), "table:<" + g->spec() + " quotient>");
    auto rule = [coset_of](const Element& x) { return TableGroup::of(coset_of.at(x)); };
    auto lift = [reps](const Element& y) -> std::optional<Element> { return reps.at(TableGroup::index_of(y)); };
    GroupHomomorphism map(g, q, rule, n, lift);
    return {q, reps, std::move(map)};
}

GroupHomomorphism reduction_map(std::shared_ptr<const CyclicProduct> source, std::int64_t modulus) {
    if (modulus < 1) throw InvalidParameter("reduction modulus must be positive");
    for (auto m : source->moduli()) {
        if (m != 0 && m % modulus != 0) {
            throw PreconditionViolation("Z/" + std::to_string(m) + " does not map onto Z/" + std::to_string(modulus));
        }
    }
    const std::size_t k = source->moduli().size();
    auto target = std::make_shared<CyclicProduct>(std::vector<std::int64_t>(k, modulus));
    auto rule = [target](const Element& x) { return target->normalize(x); };
    auto lift = [source](const Element& y) -> std::optional<Element> { return source->normalize(y); };
    std::optional<Subset> kernel;
    if (source->is_finite()) {
        kernel = Subset::whole(source).filter([&](const Element& x) { return target->normalize(x) == target->identity(); });
    }
    return GroupHomomorphism(source, target, rule, kernel, lift);
}

GroupHomomorphism abelianization_map(std::shared_ptr<const UnitriangularBackend> source) {
    const int n = source->dimension();
    std::vector<std::int64_t> moduli(static_cast<std::size_t>(n - 1), source->modulus().value_or(0));
    auto target = std::make_shared<CyclicProduct>(moduli);
    auto rule = [source, n](const Element& x) {
        Element y;
        for (int i = 0; i + 1 < n; ++i) y.push_back(source->entry(x, i, i + 1));
        return y;
    };
    auto lift = [source, n](const Element& y) -> std::optional<Element> {
        Element x = source->identity();
        for (int i = 0; i + 1 < n; ++i) x[source->index(i, i + 1)] = y[static_cast<std::size_t>(i)];
        return source->normalize(x);
    };
    std::optional<Subset> kernel;
    if (source->is_finite()) {
        kernel = Subset::whole(source).filter([&](const Element& x) { return rule(x) == target->identity(); });
    }
    return GroupHomomorphism(source, target, rule, kernel, lift);
}

}  // namespace nilkit
