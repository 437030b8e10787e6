#include "nilkit/progressions.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"

namespace nilkit {

void ProgressionSpec::validate() const {
    if (!backend) throw InvalidInput("progression has no backend");
    if (generators.empty()) throw InvalidInput("progression needs at least one generator");
    if (generators.size() != lengths.size()) {
        throw InvalidInput(std::to_string(generators.size()) + " generators but " + std::to_string(lengths.size()) +
                           " side lengths");
    }
    for (auto l : lengths) {
        if (l < 0) throw InvalidInput("side lengths must be non-negative");
    }
}

std::string to_string(ProgressionKind kind) {
    switch (kind) {
        case ProgressionKind::Ordered: return "ordered";
        case ProgressionKind::Nilprogression: return "nilprogression";
        case ProgressionKind::Nilpotent: return "nilpotent";
        case ProgressionKind::Ball: return "ball";
        case ProgressionKind::CosetProgression: return "coset-progression";
        case ProgressionKind::Power: return "power";
    }
    return "unknown";
}

namespace {

// {g^l : |l| <= bound}
Subset segment(const BackendPtr& b, const Element& g, std::int64_t bound) {
    std::vector<Element> out{b->identity()};
    Element up = b->identity();
    Element down = b->identity();
    const Element gi = b->invert(g);
    for (std::int64_t l = 1; l <= bound; ++l) {
        up = b->multiply(up, g);
        down = b->multiply(down, gi);
        out.push_back(up);
        out.push_back(down);
        if (up == b->identity()) break;  // finite order: the segment is the whole cyclic group
    }
    return Subset(b, std::move(out));
}

}  // namespace

EnumeratedSet enumerate_ordered(const ProgressionSpec& spec, std::size_t cap) {
    spec.validate();
    Subset out = Subset::identity_only(spec.backend);
    for (int i = 0; i < spec.rank(); ++i) {
        out = product_set(out, segment(spec.backend, spec.generators[static_cast<std::size_t>(i)],
                                       spec.lengths[static_cast<std::size_t>(i)]),
                          cap);
    }
    return {std::move(out), ProgressionKind::Ordered};
}

EnumeratedSet enumerate_nilprogression(const ProgressionSpec& spec, const NilprogressionOptions& options) {
    spec.validate();
    std::int64_t total = 0;
    for (auto l : spec.lengths) total += l;
    if (total > options.max_total_letters) {
        throw ResourceLimit("nilprogression budget " + std::to_string(total) + " exceeds " +
                            std::to_string(options.max_total_letters) + " letters");
    }
    const auto& g = *spec.backend;
    const std::size_t r = spec.generators.size();
    std::vector<Element> steps;
    for (const auto& x : spec.generators) {
        steps.push_back(g.normalize(x));
        steps.push_back(g.invert(steps.back()));
    }

    using Budget = std::vector<std::int64_t>;
    auto dominates = [](const Budget& a, const Budget& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] < b[i]) return false;
        return true;
    };
    // element -> antichain of remaining budgets already explored
    std::unordered_map<Element, std::vector<Budget>, ElementHash> seen;
    std::deque<std::pair<Element, Budget>> queue;
    seen[g.identity()].push_back(spec.lengths);
    queue.emplace_back(g.identity(), spec.lengths);
    while (!queue.empty()) {
        auto [x, budget] = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i < r; ++i) {
            if (budget[i] == 0) continue;
            Budget next = budget;
            --next[i];
            for (int sign = 0; sign < 2; ++sign) {
                Element y = g.multiply(x, steps[2 * i + static_cast<std::size_t>(sign)]);
                auto& antichain = seen[y];
                if (std::any_of(antichain.begin(), antichain.end(), [&](const Budget& b) { return dominates(b, next); })) {
                    continue;
                }
                std::erase_if(antichain, [&](const Budget& b) { return dominates(next, b); });
                antichain.push_back(next);
                if (seen.size() > options.cap) throw ResourceLimit("nilprogression exceeded " + std::to_string(options.cap) + " elements");
                queue.emplace_back(std::move(y), next);
            }
        }
    }
    std::vector<Element> out;
    out.reserve(seen.size());
    for (auto& [e, _] : seen) out.push_back(e);
    return {Subset(spec.backend, std::move(out)), ProgressionKind::Nilprogression};
}

int progression_step(const ProgressionSpec& spec) {
    if (auto s = spec.backend->declared_step()) return std::max(*s, 1);
    if (spec.backend->is_finite()) {
        auto s = nilpotency_step(Subset(spec.backend, spec.generators));
        if (s) return *s;
    }
    throw UnsupportedBackend("cannot determine the nilpotency step of " + spec.backend->spec());
}

EnumeratedSet enumerate_nilpotent_progression(const ProgressionSpec& spec, const BasicCommutatorTable& table,
                                              std::size_t cap) {
    spec.validate();
    if (table.rank() != spec.rank()) {
        throw InvalidInput("basic commutator table has rank " + std::to_string(table.rank()) + " but the spec has " +
                           std::to_string(spec.rank()) + " generators");
    }
    if (auto s = spec.backend->declared_step(); s && table.step() < *s) {
        throw InvalidInput("basic commutator table step " + std::to_string(table.step()) + " is below the group step " +
                           std::to_string(*s));
    }
    Subset out = Subset::identity_only(spec.backend);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto bound = power_of_weight(spec.lengths, table.weight(i));
        const Element c = evaluate_commutator(*spec.backend, spec.generators, table[i]);
        out = product_set(out, segment(spec.backend, c, bound), cap);
    }
    return {std::move(out), ProgressionKind::Nilpotent};
}

EnumeratedSet enumerate_nilpotent_progression(const ProgressionSpec& spec, std::size_t cap) {
    spec.validate();
    return enumerate_nilpotent_progression(spec, *basic_table(spec.rank(), progression_step(spec)), cap);
}

EnumeratedSet enumerate_ball(const ProgressionSpec& spec) {
    spec.validate();
    std::vector<Element> out;
    for (int i = 0; i < spec.rank(); ++i) {
        auto s = segment(spec.backend, spec.generators[static_cast<std::size_t>(i)], spec.lengths[static_cast<std::size_t>(i)]);
        out.insert(out.end(), s.begin(), s.end());
    }
    return {Subset(spec.backend, std::move(out)), ProgressionKind::Ball};
}

EnumeratedSet enumerate_coset_progression(const Subset& h, const ProgressionSpec& spec) {
    spec.validate();
    if (!is_abelian(*spec.backend)) throw PreconditionViolation("coset progressions need an abelian backend");
    if (!is_subgroup(h)) throw PreconditionViolation("H is not a subgroup");
    auto p = enumerate_ordered(spec);
    return {product_set(h, p.set), ProgressionKind::CosetProgression};
}

EnumeratedSet power_set(const EnumeratedSet& set, int n, std::size_t cap) {
    return {power_set(set.set, n, cap), ProgressionKind::Power};
}

ChainReport check_chain(const ProgressionSpec& spec, int m_cap, const NilprogressionOptions& options) {
    ChainReport report;
    report.m_cap = m_cap;
    report.step = progression_step(spec);
    const auto ordered = enumerate_ordered(spec, options.cap).set;
    const auto star = enumerate_nilprogression(spec, options).set;
    const auto nilpotent = enumerate_nilpotent_progression(spec, *basic_table(spec.rank(), report.step), options.cap).set;
    report.ordered_size = ordered.size();
    report.star_size = star.size();
    report.nilpotent_size = nilpotent.size();
    report.ordered_in_star = ordered.subset_of(star);
    report.star_in_nilpotent = star.subset_of(nilpotent);
    Subset power = ordered;
    for (int m = 1; m <= m_cap; ++m) {
        if (m > 1) power = product_set(power, ordered, options.cap);
        if (nilpotent.subset_of(power)) {
            report.minimal_m = m;
            break;
        }
    }
    return report;
}

}  // namespace nilkit
