#include "nilkit/groups.hpp"

#include <algorithm>
#include <unordered_map>

#include "nilkit/errors.hpp"

namespace nilkit {

Element commutator(const GroupBackend& g, const Element& a, const Element& b) {
    return g.multiply(g.multiply(g.invert(a), g.invert(b)), g.multiply(a, b));
}

Element power(const GroupBackend& g, const Element& a, const Int& exponent) {
    Element base = exponent < 0 ? g.invert(a) : a;
    Int e = exponent < 0 ? Int(-exponent) : exponent;
    Element result = g.identity();
    while (e > 0) {
        if ((e & 1) != 0) result = g.multiply(result, base);
        e >>= 1;
        if (e > 0) base = g.multiply(base, base);
    }
    return result;
}

namespace {

class Evaluator {
public:
    Evaluator(const GroupBackend& g, const std::vector<Element>& assignment) : g_(g), assignment_(assignment) {}

    const Element& value(const FormalCommutator& c) {
        auto it = cache_.find(c);
        if (it != cache_.end()) return it->second;
        Element v;
        if (c.is_letter()) {
            const auto i = static_cast<std::size_t>(c.letter_index());
            if (i > assignment_.size()) throw MissingAssignment("letter x" + std::to_string(i) + " has no assigned element");
            v = assignment_[i - 1];
        } else {
            Element l = value(c.left());
            v = commutator(g_, l, value(c.right()));
        }
        return cache_.emplace(c, std::move(v)).first->second;
    }

private:
    const GroupBackend& g_;
    const std::vector<Element>& assignment_;
    std::unordered_map<FormalCommutator, Element, FormalCommutatorHash> cache_;
};

}  // namespace

Element evaluate_commutator(const GroupBackend& g, const std::vector<Element>& assignment, const FormalCommutator& c) {
    return Evaluator(g, assignment).value(c);
}

Element evaluate_word(const GroupBackend& g, const std::vector<Element>& assignment, const Word& w) {
    Evaluator ev(g, assignment);
    Element out = g.identity();
    for (const auto& o : w.occurrences()) {
        const Element& v = ev.value(o.commutator);
        out = g.multiply(out, o.sign > 0 ? v : g.invert(v));
    }
    return out;
}

Element evaluate_collected(const GroupBackend& g, const std::vector<Element>& assignment, const CollectedForm& f) {
    Evaluator ev(g, assignment);
    Element out = g.identity();
    for (const auto& t : f.terms()) out = g.multiply(out, power(g, ev.value(t.commutator), t.exponent));
    return out;
}

Element simple_commutator(const GroupBackend& g, const std::vector<Element>& elements) {
    if (elements.size() < 2) throw InvalidParameter("a simple commutator needs at least 2 arguments");
    Element out = elements[0];
    for (std::size_t i = 1; i < elements.size(); ++i) out = commutator(g, out, elements[i]);
    return out;
}

Subset commutator_set(const std::vector<Subset>& sets) {
    if (sets.size() < 2) throw InvalidParameter("a commutator set needs at least 2 sets");
    for (const auto& s : sets) {
        if (s.empty()) throw InvalidInput("commutator_set needs nonempty sets");
    }
    const auto& g = sets[0].group();
    Subset current = sets[0];
    for (std::size_t i = 1; i < sets.size(); ++i) {
        ElementSet next;
        for (const auto& a : current)
            for (const auto& b : sets[i]) next.insert(commutator(g, a, b));
        current = Subset(sets[0].backend(), next);
    }
    return current;
}

SeriesChain lower_central_series(BackendPtr backend) {
    if (!backend->is_finite()) throw UnsupportedBackend("lower central series needs an enumerable backend");
    SeriesChain chain;
    chain.terms.push_back(Subset::whole(backend));
    const Subset g = chain.terms[0];
    while (true) {
        const Subset& last = chain.terms.back();
        ElementSet gens;
        for (const auto& a : last)
            for (const auto& b : g) gens.insert(commutator(*backend, a, b));
        Subset next = generated_subgroup(backend, std::vector<Element>(gens.begin(), gens.end()));
        if (next == last) break;
        chain.terms.push_back(std::move(next));
    }
    if (chain.terms.back().is_trivial()) {
        chain.step = static_cast<int>(chain.terms.size()) - 1;
    }
    return chain;
}

std::optional<int> nilpotency_step(const Subset& generators, int cap) {
    if (generators.empty()) throw InvalidInput("nilpotency_step needs a nonempty set");
    Subset current = generators;
    for (int s = 1; s <= cap; ++s) {
        Subset next = commutator_set({current, generators});
        if (next.is_trivial()) return s;
        if (next == current) return std::nullopt;
        current = std::move(next);
    }
    return std::nullopt;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t element_order(const GroupBackend& g, const Element& a, std::int64_t cap) {
    const Element e = g.identity();
    Element x = a;
    for (std::int64_t k = 1; k <= cap; ++k) {
        if (x == e) return k;
        x = g.multiply(x, a);
    }
    throw ResourceLimit("element order exceeds " + std::to_string(cap));
}

std::vector<SylowFactor> sylow_decomposition(BackendPtr backend) {
    auto chain = lower_central_series(backend);
    if (!chain.step) throw PreconditionViolation(backend->spec() + " is not nilpotent");
    const auto& whole = chain.terms[0];
    const auto n = static_cast<std::int64_t>(whole.size());

    std::vector<SylowFactor> out;
    for (auto p : prime_factors(n)) {
        Subset part = whole.filter([&](const Element& x) {
            auto ord = element_order(*backend, x);
            while (ord % p == 0) ord /= p;
            return ord == 1;
        });
        if (!is_subgroup(part)) throw PreconditionViolation("elements of " + std::to_string(p) + "-power order do not form a subgroup");
        out.push_back({p, std::move(part)});
    }
    // Internal direct product: the factors commute elementwise and their
    // orders multiply to |G|.
    std::int64_t total = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        total *= static_cast<std::int64_t>(out[i].subgroup.size());
        for (std::size_t j = i + 1; j < out.size(); ++j)
            for (const auto& a : out[i].subgroup)
                for (const auto& b : out[j].subgroup)
                    if (backend->multiply(a, b) != backend->multiply(b, a)) {
                        throw PreconditionViolation("Sylow subgroups do not commute");
                    }
    }
    if (total != n) throw PreconditionViolation("Sylow subgroups do not multiply to the group");
    return out;
}

bool is_abelian(const GroupBackend& g) {
    const auto gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (g.multiply(gens[i], gens[j]) != g.multiply(gens[j], gens[i])) return false;
    return true;
}

bool is_normal(const Subset& n) {
    const auto& g = n.group();
    for (const auto& x : g.generators()) {
        const Element xi = g.invert(x);
        for (const auto& h : n) {
            if (!n.contains(g.multiply(g.multiply(x, h), xi))) return false;
            if (!n.contains(g.multiply(g.multiply(xi, h), x))) return false;
        }
    }
    return true;
}

}  // namespace nilkit
