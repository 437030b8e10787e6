#include "nilkit/pgroups.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"

namespace nilkit {

std::optional<std::int64_t> prime_of_p_group(const GroupBackend& g) {
    if (!g.is_finite()) return std::nullopt;
    const auto n = static_cast<std::int64_t>(*g.order());
    const auto primes = prime_factors(n);
    if (primes.size() != 1) return std::nullopt;
    return primes.front();
}

namespace {

std::int64_t require_p_group(const GroupBackend& g) {
    if (!g.is_finite()) throw PreconditionViolation(g.spec() + " is not finite");
    auto p = prime_of_p_group(g);
    if (!p) throw PreconditionViolation(g.spec() + " is not a p-group (order " + std::to_string(*g.order()) + ")");
    return *p;
}

bool elements_commute(const Subset& h) {
    const auto& g = h.group();
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
            if (g.multiply(h[i], h[j]) != g.multiply(h[j], h[i])) return false;
    return true;
}

int log_base(std::size_t value, std::int64_t p) {
    int k = 0;
    while (value > 1) {
        if (value % static_cast<std::size_t>(p) != 0) throw Error("internal: size is not a power of " + std::to_string(p));
        value /= static_cast<std::size_t>(p);
        ++k;
    }
    return k;
}

Subset powers_of(const Subset& h, const Int& e) {
    std::vector<Element> out;
    out.reserve(h.size());
    for (const auto& x : h) out.push_back(power(h.group(), x, e));
    return Subset(h.backend(), std::move(out));
}

std::int64_t ipow(std::int64_t p, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= p;
    return r;
}

}  // namespace

std::vector<std::int64_t> invariant_factors(const Subset& h) {
    if (!is_subgroup(h)) throw PreconditionViolation("invariant factors need a subgroup");
    if (!elements_commute(h)) throw PreconditionViolation("group is not abelian");
    std::vector<std::vector<int>> exponents;  // per prime, descending
    std::vector<std::int64_t> primes;
    for (auto p : prime_factors(static_cast<std::int64_t>(h.size()))) {
        const Subset part = h.filter([&](const Element& x) {
            auto ord = element_order(h.group(), x);
            while (ord % p == 0) ord /= p;
            return ord == 1;
        });
        // n_k = number of cyclic factors of order >= p^{k+1}
        std::vector<int> n;
        Subset current = part;
        while (current.size() > 1) {
            Subset next = powers_of(current, p);
            n.push_back(log_base(current.size() / next.size(), p));
            current = std::move(next);
        }
        std::vector<int> exps;
        for (std::size_t k = 0; k < n.size(); ++k) {
            const int exact = n[k] - (k + 1 < n.size() ? n[k + 1] : 0);
            for (int i = 0; i < exact; ++i) exps.push_back(static_cast<int>(k + 1));
        }
        std::sort(exps.rbegin(), exps.rend());
        primes.push_back(p);
        exponents.push_back(std::move(exps));
    }
    std::size_t r = 0;
    for (const auto& e : exponents) r = std::max(r, e.size());
    std::vector<std::int64_t> out(r, 1);
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = 0; j < exponents[i].size(); ++j) out[j] *= ipow(primes[i], exponents[i][j]);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> invariant_factors(const GroupBackend& g) {
    if (!g.is_finite()) throw UnsupportedBackend("invariant factors need a finite group");
    if (!is_abelian(g)) throw PreconditionViolation(g.spec() + " is not abelian");
    auto self = std::shared_ptr<const GroupBackend>(&g, [](const GroupBackend*) {});
    return invariant_factors(Subset::whole(self));
}

int abelian_rank(const GroupBackend& g) { return static_cast<int>(invariant_factors(g).size()); }
int abelian_rank(const Subset& h) { return static_cast<int>(invariant_factors(h).size()); }

bool verify_subgroup_rank(const Subset& h) {
    const auto& g = h.group();
    require_p_group(g);
    if (!is_abelian(g)) throw PreconditionViolation(g.spec() + " is not abelian");
    if (!is_subgroup(h)) throw PreconditionViolation("H is not a subgroup");
    return abelian_rank(h) <= abelian_rank(g);
}

Subset frattini(BackendPtr g) {
    const auto p = require_p_group(*g);
    const auto whole = Subset::whole(g);
    std::vector<Element> gens;
    for (const auto& x : whole) gens.push_back(power(*g, x, p));
    for (const auto& x : whole)
        for (const auto& y : whole) gens.push_back(commutator(*g, x, y));
    gens = Subset(g, std::move(gens)).elements();
    return generated_subgroup(g, gens);
}

std::vector<Element> burnside_basis(BackendPtr g, const std::vector<Element>& s) {
    const auto p = require_p_group(*g);
    const auto n = *g->order();
    std::vector<Element> norm;
    for (const auto& x : s) norm.push_back(g->normalize(x));
    if (generated_subgroup(g, norm).size() != n) throw PreconditionViolation("S does not generate the group");
    const auto phi = frattini(g);
    std::vector<Element> chosen;
    Subset span = phi;
    for (const auto& x : Subset(g, norm)) {
        if (span.contains(x)) continue;
        chosen.push_back(x);
        auto gens = phi.elements();
        gens.insert(gens.end(), chosen.begin(), chosen.end());
        span = generated_subgroup(g, gens);
    }
    if (generated_subgroup(g, chosen).size() != n) throw Error("internal: Burnside basis does not generate");
    if (static_cast<int>(chosen.size()) != log_base(n / phi.size(), p)) {
        throw Error("internal: Burnside basis has the wrong size");
    }
    return chosen;
}

bool burnside_property_holds(BackendPtr g, const Subset& phi, const std::vector<Element>& s) {
    const auto n = *g->order();
    const bool generates = !s.empty() && generated_subgroup(g, s).size() == n;
    auto with_phi = phi.elements();
    with_phi.insert(with_phi.end(), s.begin(), s.end());
    const bool spans = generated_subgroup(g, with_phi).size() == n;
    return generates == spans;
}

SpanReport union_subgroups_span_unchecked(const Subset& x, int r) {
    if (x.empty()) throw InvalidInput("X is empty");
    if (r < 1) throw InvalidParameter("r must be at least 1");
    SpanReport out{generated_subgroup(x.backend(), x.elements()), power_set(x, r), r, false};
    out.contained = out.span.subset_of(out.power);
    return out;
}

SpanReport union_subgroups_span(const Subset& x, std::optional<int> r) {
    const auto& g = x.group();
    require_p_group(g);
    if (!is_abelian(g)) throw PreconditionViolation(g.spec() + " is not abelian");
    if (x.empty()) throw InvalidInput("X is empty");
    for (const auto& e : x) {
        if (!generated_subgroup(x.backend(), {e}).subset_of(x)) {
            throw PreconditionViolation("X is not a union of subgroups: <" + g.format(e) + "> is not contained in X");
        }
    }
    const int measured = abelian_rank(g);
    if (r && *r < measured) throw PreconditionViolation("r is below the rank " + std::to_string(measured));
    return union_subgroups_span_unchecked(x, std::max(r.value_or(measured), 1));
}

MultiHom::MultiHom(std::vector<BackendPtr> sources, BackendPtr target, Rule rule)
    : sources_(std::move(sources)), target_(std::move(target)), rule_(std::move(rule)) {
    if (sources_.empty()) throw InvalidInput("a multi-homomorphism needs at least one source");
    for (const auto& s : sources_)
        if (!s->is_finite()) throw UnsupportedBackend("multi-homomorphism sources must be finite");
}

MultiHom MultiHom::from_table(std::vector<BackendPtr> sources, BackendPtr target,
                              std::map<std::vector<Element>, Element> table) {
    auto rule = [table = std::move(table)](const std::vector<Element>& args) {
        auto it = table.find(args);
        if (it == table.end()) throw OutOfRange("multi-homomorphism table has no entry for this tuple");
        return it->second;
    };
    return MultiHom(std::move(sources), std::move(target), rule);
}

Element MultiHom::operator()(const std::vector<Element>& args) const {
    if (args.size() != sources_.size()) {
        throw InvalidInput("expected " + std::to_string(sources_.size()) + " arguments");
    }
    return target_->normalize(rule_(args));
}

namespace {

void for_each_in(const std::vector<std::vector<Element>>& pools,
                 const std::function<void(const std::vector<Element>&)>& f) {
    for (const auto& p : pools)
        if (p.empty()) return;
    std::vector<std::size_t> idx(pools.size(), 0);
    std::vector<Element> args;
    for (const auto& p : pools) args.push_back(p[0]);
    while (true) {
        f(args);
        std::size_t k = 0;
        while (k < pools.size()) {
            if (++idx[k] < pools[k].size()) {
                args[k] = pools[k][idx[k]];
                break;
            }
            idx[k] = 0;
            args[k] = pools[k][0];
            ++k;
        }
        if (k == pools.size()) return;
    }
}

}  // namespace

void MultiHom::for_each_tuple(const std::function<void(const std::vector<Element>&)>& f) const {
    std::vector<std::vector<Element>> pools;
    for (const auto& s : sources_) pools.push_back(s->elements());
    for_each_in(pools, f);
}

Subset MultiHom::image() const {
    ElementSet out;
    for_each_tuple([&](const std::vector<Element>& args) { out.insert((*this)(args)); });
    return Subset(target_, out);
}

Subset MultiHom::image(const std::vector<Subset>& sets) const {
    if (sets.size() != sources_.size()) throw InvalidInput("expected one set per source");
    std::vector<std::vector<Element>> pools;
    for (const auto& s : sets) pools.push_back(s.elements());
    ElementSet out;
    for_each_in(pools, [&](const std::vector<Element>& args) { out.insert((*this)(args)); });
    return Subset(target_, out);
}

bool MultiHom::verify_multilinear(std::size_t exhaustive_cap, std::size_t samples, std::uint64_t seed) const {
    std::vector<std::vector<Element>> pools;
    Int work = 1;
    std::size_t widest = 0;
    for (const auto& s : sources_) {
        pools.push_back(s->elements());
        work *= pools.back().size();
        widest = std::max(widest, pools.back().size());
    }
    const auto& t = *target_;
    auto check = [&](std::vector<Element> args, std::size_t slot, const Element& b) {
        const auto& g = *sources_[slot];
        const Element fa = (*this)(args);
        const Element a = args[slot];
        args[slot] = b;
        const Element fb = (*this)(args);
        args[slot] = g.multiply(a, b);
        return (*this)(args) == t.multiply(fa, fb);
    };
    if (work * widest * sources_.size() <= exhaustive_cap) {
        bool ok = true;
        for_each_in(pools, [&](const std::vector<Element>& args) {
            if (!ok) return;
            for (std::size_t slot = 0; slot < sources_.size() && ok; ++slot)
                for (const auto& b : pools[slot])
                    if (!check(args, slot, b)) {
                        ok = false;
                        break;
                    }
        });
        return ok;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Element> args;
        for (const auto& p : pools) args.push_back(p[rng() % p.size()]);
        const std::size_t slot = rng() % sources_.size();
        const auto& b = pools[slot][rng() % pools[slot].size()];
        if (!check(args, slot, b)) return false;
    }
    return true;
}

MultiHom heisenberg_commutator_map(std::int64_t p) {
    auto g = std::make_shared<UnitriangularBackend>(3, p);
    auto target = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{p});
    auto rule = [g](const std::vector<Element>& args) {
        const auto c = commutator(*g, args[0], args[1]);
        return Element{g->entry(c, 0, 2)};
    };
    return MultiHom({g, g}, target, rule);
}

MultiHom heisenberg_abelianized_commutator_map(std::int64_t p) {
    auto g = std::make_shared<UnitriangularBackend>(3, p);
    auto ab = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{p, p});
    auto target = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{p});
    auto lift = [g](const Element& v) {
        Element x = g->identity();
        x[g->index(0, 1)] = v[0];
        x[g->index(1, 2)] = v[1];
        return g->normalize(x);
    };
    auto rule = [g, lift](const std::vector<Element>& args) {
        const auto c = commutator(*g, lift(args[0]), lift(args[1]));
        return Element{g->entry(c, 0, 2)};
    };
    return MultiHom({ab, ab}, target, rule);
}

ImageSpanReport multihom_image_span(const MultiHom& phi, std::optional<int> r) {
    for (const auto& s : phi.sources()) {
        if (!lower_central_series(s).step) throw PreconditionViolation(s->spec() + " is not nilpotent");
    }
    const auto& target = phi.target();
    if (!target->is_finite()) throw UnsupportedBackend("multi-homomorphism target must be finite");
    if (!is_abelian(*target)) throw PreconditionViolation("multi-homomorphism target is not abelian");
    const int measured = abelian_rank(*target);
    if (r && *r < measured) throw PreconditionViolation("r is below the target rank " + std::to_string(measured));
    ImageSpanReport out{phi.image(), Subset(), Subset(), std::max(r.value_or(measured), 1), false};
    out.span = generated_subgroup(target, out.image.elements());
    out.power = power_set(out.image, out.r);
    out.contained = out.span.subset_of(out.power);
    return out;
}

Element primary_component(const GroupBackend& g, const Element& u, std::int64_t p) {
    const auto n = element_order(g, u);
    std::int64_t pa = 1;
    std::int64_t m = n;
    while (m % p == 0) {
        m /= p;
        pa *= p;
    }
    if (pa == 1) return g.identity();
    // e = 1 mod p^a, e = 0 mod m
    std::int64_t inv = 1;
    for (std::int64_t k = 1; k < pa; ++k) {
        if ((m % pa) * k % pa == 1) {
            inv = k;
            break;
        }
    }
    return power(g, u, Int(m * inv));
}

FactoringReport verify_primary_factoring(const MultiHom& phi) {
    std::set<std::int64_t> primes;
    for (const auto& s : phi.sources())
        for (auto p : prime_factors(static_cast<std::int64_t>(*s->order()))) primes.insert(p);
    for (const auto& s : phi.sources()) {
        if (!lower_central_series(s).step) throw PreconditionViolation(s->spec() + " is not nilpotent");
    }
    const auto& t = *phi.target();
    FactoringReport report{true, true, 0, {primes.begin(), primes.end()}};
    phi.for_each_tuple([&](const std::vector<Element>& args) {
        ++report.tuples;
        Element product = t.identity();
        for (auto p : report.primes) {
            std::vector<Element> parts;
            for (std::size_t i = 0; i < args.size(); ++i) parts.push_back(primary_component(*phi.sources()[i], args[i], p));
            const auto value = phi(parts);
            auto ord = element_order(t, value);
            while (ord % p == 0) ord /= p;
            if (ord != 1) report.p_components = false;
            product = t.multiply(product, value);
        }
        if (product != phi(args)) report.factoring = false;
    });
    return report;
}

InducedMultiHom induced_multihom(const MultiHom& phi, const std::vector<Subset>& normals) {
    if (normals.size() != phi.arity()) throw InvalidInput("expected one normal subgroup per slot");
    const auto& t = *phi.target();
    std::vector<Quotient> quotients;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        std::vector<std::vector<Element>> pools;
        for (std::size_t j = 0; j < phi.arity(); ++j) {
            pools.push_back(j == i ? normals[i].elements() : phi.sources()[j]->elements());
        }
        for_each_in(pools, [&](const std::vector<Element>& args) {
            if (phi(args) != t.identity()) {
                throw PreconditionViolation("phi is not trivial on slot " + std::to_string(i + 1) + " at element " +
                                            phi.sources()[i]->format(args[i]));
            }
        });
        quotients.push_back(quotient_by(phi.sources()[i], normals[i]));
    }
    std::vector<BackendPtr> qs;
    std::vector<std::vector<Element>> reps;
    for (const auto& q : quotients) {
        qs.push_back(q.group);
        reps.push_back(q.group->elements());
    }
    std::map<std::vector<Element>, Element> table;
    for_each_in(reps, [&](const std::vector<Element>& cosets) {
        std::vector<Element> args;
        for (std::size_t i = 0; i < cosets.size(); ++i)
            args.push_back(quotients[i].representatives.at(TableGroup::index_of(cosets[i])));
        table.emplace(cosets, phi(args));
    });
    InducedMultiHom out{MultiHom::from_table(qs, phi.target(), table), std::move(quotients), true, table.size()};
    phi.for_each_tuple([&](const std::vector<Element>& args) {
        std::vector<Element> cosets;
        for (std::size_t i = 0; i < args.size(); ++i) cosets.push_back(out.quotients[i].map(args[i]));
        if (out.psi(cosets) != phi(args)) out.well_defined = false;
    });
    return out;
}

bool verify_induced_image(const MultiHom& phi, const InducedMultiHom& induced, const std::vector<Subset>& v) {
    std::vector<Subset> h;
    for (std::size_t i = 0; i < v.size(); ++i) h.push_back(induced.quotients.at(i).map.image(v[i]));
    return phi.image(v) == induced.psi.image(h);
}

std::shared_ptr<TableGroup> dihedral_group(std::size_t n) {
    if (n < 1) throw InvalidParameter("dihedral group needs n >= 1");
    const std::size_t size = 2 * n;
    std::vector<std::vector<std::size_t>> table(size, std::vector<std::size_t>(size));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            const std::size_t i = x % n, a = x / n, k = y % n, b = y / n;
            const std::size_t rot = a == 0 ? (i + k) % n : (i + n - k) % n;
            table[x][y] = rot + n * ((a + b) % 2);
        }
    }
    return std::make_shared<TableGroup>(std::move(table), "dihedral:" + std::to_string(size));
}

std::shared_ptr<TableGroup> quaternion_group(std::size_t n) {
    if (n < 2) throw InvalidParameter("quaternion group needs n >= 2");
    const std::size_t m = 2 * n;  // order of a
    const std::size_t size = 2 * m;
    std::vector<std::vector<std::size_t>> table(size, std::vector<std::size_t>(size));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
            const std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
            std::size_t rot = j == 0 ? (i + k) % m : (i + m - k) % m;
            std::size_t b = j + l;
            if (b == 2) {
                rot = (rot + n) % m;
                b = 0;
            }
            table[x][y] = rot + m * b;
        }
    }
    return std::make_shared<TableGroup>(std::move(table), "quaternion:" + std::to_string(size));
}

std::vector<NamedGroup> small_p_groups() {
    std::vector<NamedGroup> out;
    auto add = [&](const std::string& name, const BackendPtr& g) { out.push_back({name, TableGroup::from_backend(*g)}); };
    auto cyclic = [](std::vector<std::int64_t> m) { return std::make_shared<CyclicProduct>(std::move(m)); };
    const std::vector<std::vector<std::int64_t>> abelian{
        {2},          {4},          {8},          {16},      {32},      {3},       {9},          {27},
        {5},          {25},         {7},          {11},      {13},      {17},      {19},         {23},
        {29},         {31},         {2, 2},       {2, 4},    {2, 8},    {2, 16},   {4, 4},       {4, 8},
        {2, 2, 2},    {2, 2, 4},    {2, 2, 8},    {2, 4, 4}, {3, 3},    {3, 9},    {5, 5},       {2, 2, 2, 2},
        {2, 2, 2, 4}, {2, 2, 2, 2, 2}, {3, 3, 3},
    };
    for (const auto& m : abelian) {
        std::string name = "Z";
        for (std::size_t i = 0; i < m.size(); ++i) name += (i ? "xZ" : "") + std::string("/") + std::to_string(m[i]);
        add(name, cyclic(m));
    }
    add("D8", dihedral_group(4));
    add("D16", dihedral_group(8));
    add("D32", dihedral_group(16));
    add("Q8", quaternion_group(2));
    add("Q16", quaternion_group(4));
    add("Q32", quaternion_group(8));
    add("UT(3,Z/2)", std::make_shared<UnitriangularBackend>(3, 2));
    add("UT(3,Z/3)", std::make_shared<UnitriangularBackend>(3, 3));
    add("D8xZ/2", std::make_shared<ProductBackend>(dihedral_group(4), cyclic({2})));
    add("D8xZ/4", std::make_shared<ProductBackend>(dihedral_group(4), cyclic({4})));
    add("Q8xZ/2", std::make_shared<ProductBackend>(quaternion_group(2), cyclic({2})));
    add("Q8xZ/4", std::make_shared<ProductBackend>(quaternion_group(2), cyclic({4})));
    add("D16xZ/2", std::make_shared<ProductBackend>(dihedral_group(8), cyclic({2})));
    add("D8xZ/2xZ/2", std::make_shared<ProductBackend>(dihedral_group(4), cyclic({2, 2})));
    return out;
}

}  // namespace nilkit
