#include "nilkit/approximate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"
#include "nilkit/progressions.hpp"

namespace nilkit {

std::string to_string(const Ratio& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Ratio parse_ratio(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const auto n = std::stoll(text, &used);
            if (used != text.size()) throw InvalidInput("");
            return Ratio(n);
        }
        const auto num = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw InvalidInput("");
        const auto den_text = text.substr(slash + 1);
        const auto den = std::stoll(den_text, &used);
        if (used != den_text.size() || den == 0) throw InvalidInput("");
        return Ratio(num, den);
    } catch (const std::exception&) {
        throw InvalidInput("'" + text + "' is not a rational number");
    }
}

Ratio doubling_constant(const Subset& a) {
    if (a.empty()) throw InvalidInput("doubling constant of the empty set");
    const auto a2 = product_set(a, a);
    return Ratio(static_cast<std::int64_t>(a2.size()), static_cast<std::int64_t>(a.size()));
}

bool verify_witness(const ApproximateGroupWitness& w) {
    if (!w.x.is_symmetric()) return false;
    if (static_cast<std::int64_t>(w.x.size()) > w.k) return false;
    return product_set(w.a, w.a).subset_of(product_set(w.x, w.a));
}

namespace {

void require_approximate_shape(const Subset& a) {
    if (a.empty()) throw InvalidInput("approximate group must be nonempty");
    if (!a.is_symmetric()) throw PreconditionViolation("A is not symmetric");
    if (!a.contains_identity()) throw PreconditionViolation("A does not contain the identity");
}

struct Mask {
    std::vector<std::uint64_t> words;

    explicit Mask(std::size_t bits = 0) : words((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    Mask& operator|=(const Mask& o) {
        for (std::size_t i = 0; i < words.size(); ++i) words[i] |= o.words[i];
        return *this;
    }
    std::size_t count_new(const Mask& covered) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words.size(); ++i) c += static_cast<std::size_t>(std::popcount(words[i] & ~covered.words[i]));
        return c;
    }
};

struct Orbit {
    std::vector<Element> members;  // {x} or {x, x^-1}, canonical order
    Mask cover;
};

bool lex_less(const std::vector<Element>& a, const std::vector<Element>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), canonical_less);
}

class CoverSearch {
public:
    CoverSearch(const std::vector<Orbit>& orbits, std::size_t targets, std::size_t per_element, std::size_t node_limit)
        : orbits_(orbits), targets_(targets), per_element_(std::max<std::size_t>(per_element, 1)),
          node_limit_(node_limit) {
        covering_.resize(targets);
        for (std::size_t o = 0; o < orbits.size(); ++o)
            for (std::size_t p = 0; p < targets; ++p)
                if (orbits[o].cover.test(p)) covering_[p].push_back(o);
    }

    void run() {
        std::vector<std::size_t> chosen;
        recurse(Mask(targets_), chosen, 0);
    }

    bool complete() const { return nodes_ <= node_limit_; }
    const std::optional<std::vector<Element>>& best() const { return best_; }

private:
    void recurse(const Mask& covered, std::vector<std::size_t>& chosen, std::size_t weight) {
        if (++nodes_ > node_limit_) return;
        const std::size_t remaining = targets_ - covered.count();
        if (remaining == 0) {
            std::vector<Element> xs;
            for (auto o : chosen) xs.insert(xs.end(), orbits_[o].members.begin(), orbits_[o].members.end());
            std::sort(xs.begin(), xs.end(), canonical_less);
            if (!best_ || xs.size() < best_->size() || (xs.size() == best_->size() && lex_less(xs, *best_))) best_ = xs;
            return;
        }
        const std::size_t bound = weight + (remaining + per_element_ - 1) / per_element_;
        if (best_ && bound > best_->size()) return;
        std::size_t pick = targets_;
        std::size_t fewest = SIZE_MAX;
        for (std::size_t p = 0; p < targets_; ++p) {
            if (covered.test(p)) continue;
            if (covering_[p].size() < fewest) {
                fewest = covering_[p].size();
                pick = p;
            }
        }
        for (auto o : covering_[pick]) {
            Mask next = covered;
            next |= orbits_[o].cover;
            chosen.push_back(o);
            recurse(next, chosen, weight + orbits_[o].members.size());
            chosen.pop_back();
        }
    }

    const std::vector<Orbit>& orbits_;
    std::size_t targets_;
    std::size_t per_element_;
    std::size_t node_limit_;
    std::vector<std::vector<std::size_t>> covering_;
    std::size_t nodes_ = 0;
    std::optional<std::vector<Element>> best_;
};

}  // namespace

ApproximateGroupWitness minimal_witness(const Subset& a, const WitnessOptions& options) {
    require_approximate_shape(a);
    const auto& g = a.group();
    const auto a2 = product_set(a, a);
    const auto a3 = product_set(a2, a);
    std::unordered_map<Element, std::size_t, ElementHash> target_index;
    for (std::size_t i = 0; i < a2.size(); ++i) target_index.emplace(a2[i], i);

    std::vector<Orbit> orbits;
    std::size_t per_element = 0;
    ElementSet placed;
    for (const auto& x : a3) {
        if (placed.count(x)) continue;
        const Element xi = g.invert(x);
        Orbit orbit{{x}, Mask(a2.size())};
        if (xi != x) orbit.members.push_back(xi);
        for (const auto& m : orbit.members) {
            placed.insert(m);
            std::size_t own = 0;
            for (const auto& y : a) {
                auto it = target_index.find(g.multiply(m, y));
                if (it != target_index.end()) {
                    orbit.cover.set(it->second);
                    ++own;
                }
            }
            per_element = std::max(per_element, own);
        }
        std::sort(orbit.members.begin(), orbit.members.end(), canonical_less);
        if (orbit.cover.count() > 0) orbits.push_back(std::move(orbit));
    }
    const std::int64_t trivial_bound =
        static_cast<std::int64_t>((a2.size() + std::max<std::size_t>(per_element, 1) - 1) / std::max<std::size_t>(per_element, 1));

    ApproximateGroupWitness w{a, 0, Subset::identity_only(a.backend()), false, trivial_bound};
    if (a3.size() <= options.exact_limit) {
        CoverSearch search(orbits, a2.size(), per_element, options.node_limit);
        search.run();
        if (search.best()) {
            w.x = Subset(a.backend(), *search.best());
            w.k = static_cast<std::int64_t>(w.x.size());
            if (search.complete()) {
                w.optimal = true;
                w.lower_bound = w.k;
            }
            return w;
        }
    }

    // Greedy cover by orbits, best new coverage per element, then prune.
    Mask covered(a2.size());
    std::vector<std::size_t> chosen;
    while (covered.count() < a2.size()) {
        std::size_t best = orbits.size();
        std::size_t best_new = 0;
        for (std::size_t o = 0; o < orbits.size(); ++o) {
            const std::size_t fresh = orbits[o].cover.count_new(covered);
            if (fresh == 0) continue;
            if (best == orbits.size() ||
                fresh * orbits[best].members.size() > best_new * orbits[o].members.size()) {
                best = o;
                best_new = fresh;
            }
        }
        if (best == orbits.size()) throw Error("internal: A^2 is not covered by A^3 A");
        covered |= orbits[best].cover;
        chosen.push_back(best);
    }
    for (std::size_t i = chosen.size(); i-- > 0;) {
        Mask rest(a2.size());
        for (std::size_t j = 0; j < chosen.size(); ++j)
            if (j != i) rest |= orbits[chosen[j]].cover;
        if (rest.count() == a2.size()) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
    }
    std::vector<Element> xs;
    for (auto o : chosen) xs.insert(xs.end(), orbits[o].members.begin(), orbits[o].members.end());
    w.x = Subset(a.backend(), std::move(xs));
    w.k = static_cast<std::int64_t>(w.x.size());
    w.optimal = w.k == w.lower_bound;
    return w;
}

bool verify_growth(const ApproximateGroupWitness& w, int n) {
    if (n < 1) throw InvalidParameter("growth exponent must be at least 1");
    const auto an = power_set(w.a, n);
    const Int bound = boost::multiprecision::pow(Int(w.k), static_cast<unsigned>(n - 1)) * w.a.size();
    return Int(an.size()) <= bound;
}

CoveringResult chang_cover(const Subset& a, const ApproximateGroupWitness& w, const Subset& b, int m,
                           std::int64_t m_prime) {
    if (m < 1) throw InvalidParameter("M must be at least 1");
    if (m_prime < 1) throw InvalidParameter("M' must be at least 1");
    if (w.k < 1) throw InvalidParameter("K must be at least 1");
    if (b.empty()) throw PreconditionViolation("B is empty");
    if (!b.subset_of(power_set(a, m))) throw PreconditionViolation("B is not contained in A^M");
    if (Int(b.size()) * m_prime < Int(a.size())) throw PreconditionViolation("|B| < |A|/M'");

    const auto two_k = static_cast<std::size_t>(2 * w.k);
    CoveringResult result;
    Subset current = b;
    for (int round = 0;; ++round) {
        if (round >= 64) throw ResourceLimit("covering did not stop after 64 rounds");
        std::vector<Element> r;
        ElementSet occupied;
        for (const auto& x : a) {
            const auto translate = current.right_translate(x);
            if (std::any_of(translate.begin(), translate.end(), [&](const Element& e) { return occupied.count(e) != 0; }))
                continue;
            occupied.insert(translate.begin(), translate.end());
            r.push_back(x);
        }
        if (r.size() > two_k) {
            r.resize(two_k);
            Subset s(a.backend(), r);
            current = product_set(current, s);
            result.sets.push_back(std::move(s));
            continue;
        }
        result.sets.emplace_back(a.backend(), r);
        break;
    }
    result.t = static_cast<int>(result.sets.size());

    Subset cover = product_set(b.inverse(), b);
    for (const auto& s : result.sets) cover = product_set(cover, s);
    for (int i = 0; i + 1 < result.t; ++i) cover = product_set(result.sets[static_cast<std::size_t>(i)].inverse(), cover);
    result.containment = a.subset_of(cover);

    const double log_k = std::log2(static_cast<double>(std::max<std::int64_t>(w.k, 2)));
    const double log_mp = std::log2(static_cast<double>(m_prime));
    result.log_bound = log_mp + m * log_k;
    result.proof_bound = 1 + log_mp + (m - 1) * log_k;
    return result;
}

namespace {

// Elements nu(y) whose translates nu(y)(A^2 n H) cover A^m n H, chosen
// greedily from a minimal Y inside X^{m-1} with A^m n H in Y A.
std::vector<Element> intersection_translates(const Subset& a, const Subset& x, const Membership& in_h, int m,
                                             const Subset& target, const Subset& a2h) {
    const auto& g = a.group();
    const Subset y0 = m == 1 ? Subset::identity_only(a.backend()) : power_set(x, m - 1);
    std::unordered_map<Element, std::size_t, ElementHash> count;
    auto hits = [&](const Element& y) {
        std::vector<Element> out;
        for (const auto& e : a.left_translate(y))
            if (target.contains(e)) out.push_back(e);
        return out;
    };
    for (const auto& y : y0)
        for (const auto& e : hits(y)) ++count[e];
    for (const auto& e : target)
        if (!count.count(e)) throw PreconditionViolation("witness does not cover A^m n H");
    std::vector<Element> ys;
    for (const auto& y : y0) {
        const auto h = hits(y);
        if (std::all_of(h.begin(), h.end(), [&](const Element& e) { return count[e] >= 2; })) {
            for (const auto& e : h) --count[e];
            continue;
        }
        ys.push_back(y);
    }
    std::set<Element, CanonicalLess> nus;
    for (const auto& y : ys) {
        const auto ya = a.left_translate(y);
        auto it = std::find_if(ya.begin(), ya.end(), in_h);
        if (it == ya.end()) throw Error("internal: kept translate misses H");
        nus.insert(*it);
    }
    std::vector<Element> chosen;
    ElementSet covered;
    while (covered.size() < target.size()) {
        const Element* best = nullptr;
        std::size_t best_new = 0;
        for (const auto& nu : nus) {
            std::size_t fresh = 0;
            for (const auto& h : a2h) {
                const auto e = g.multiply(nu, h);
                if (target.contains(e) && !covered.count(e)) ++fresh;
            }
            if (fresh > best_new) {
                best = &nu;
                best_new = fresh;
            }
        }
        if (!best) break;
        for (const auto& h : a2h) {
            const auto e = g.multiply(*best, h);
            if (target.contains(e)) covered.insert(e);
        }
        chosen.push_back(*best);
    }
    return chosen;
}

}  // namespace

IntersectionCover intersection_cover(const Subset& a, const ApproximateGroupWitness& w, const Membership& in_h, int m) {
    if (m < 2) throw InvalidParameter("m must be at least 2");
    require_approximate_shape(a);
    const auto& g = a.group();
    const auto a2h = power_set(a, 2).filter(in_h);
    const auto amh = power_set(a, m).filter(in_h);
    const auto a2mh = power_set(a, 2 * m).filter(in_h);

    IntersectionCover out{amh, a2h, {}, {amh, 0, Subset::identity_only(a.backend())}, false, false, 0, 0};
    out.translate_bound = boost::multiprecision::pow(Int(w.k), static_cast<unsigned>(m - 1));
    out.witness_bound = 2 * boost::multiprecision::pow(Int(w.k), static_cast<unsigned>(2 * m - 1));

    out.translates = intersection_translates(a, w.x, in_h, m, amh, a2h);
    std::vector<Element> union_elems;
    for (const auto& nu : out.translates)
        for (const auto& h : a2h) union_elems.push_back(g.multiply(nu, h));
    out.cover_ok = amh.subset_of(Subset(a.backend(), std::move(union_elems))) &&
                   Int(out.translates.size()) <= out.translate_bound;

    auto z = intersection_translates(a, w.x, in_h, 2 * m, a2mh, a2h);
    std::vector<Element> xs;
    for (const auto& e : z) {
        xs.push_back(e);
        xs.push_back(g.invert(e));
    }
    out.witness.x = Subset(a.backend(), std::move(xs));
    out.witness.k = static_cast<std::int64_t>(out.witness.x.size());
    out.witness_ok = verify_witness(out.witness) && Int(out.witness.k) <= out.witness_bound;
    return out;
}

SplittingMap::SplittingMap(GroupHomomorphism pi, std::vector<Subset> powers,
                           std::unordered_map<Element, Element, ElementHash> table)
    : pi_(std::move(pi)), powers_(std::move(powers)), table_(std::move(table)) {}

Subset SplittingMap::domain() const {
    std::vector<Element> out;
    for (const auto& [c, _] : table_) out.push_back(c);
    return Subset(pi_.target(), std::move(out));
}

const Element& SplittingMap::operator()(const Element& c) const {
    auto it = table_.find(c);
    if (it == table_.end()) throw OutOfRange("splitting map is not defined at this element");
    return it->second;
}

SplittingMap build_splitting(const GroupHomomorphism& pi, const Subset& a, int r_max) {
    if (r_max < 1) throw InvalidParameter("r must be at least 1");
    require_approximate_shape(a);
    std::vector<Subset> powers{a};
    for (int r = 2; r <= r_max; ++r) powers.push_back(product_set(powers.back(), a));
    std::unordered_map<Element, Element, ElementHash> table;
    table.emplace(pi.target()->identity(), a.group().identity());
    for (const auto& p : powers)
        for (const auto& x : p) table.try_emplace(pi(x), x);
    return SplittingMap(pi, std::move(powers), std::move(table));
}

SplittingMap build_splitting(BackendPtr g, const Subset& n, const Subset& a, int r_max) {
    auto q = quotient_by(std::move(g), n);
    return build_splitting(q.map, a, r_max);
}

SplittingCheck verify_splitting(const SplittingMap& phi, const Subset& a, int max_n, std::size_t samples,
                                std::uint64_t seed) {
    if (max_n < 1) throw InvalidParameter("tuple length must be at least 1");
    const auto& pi = phi.pi();
    const auto& g = a.group();
    const auto& q = *pi.target();
    SplittingCheck check;

    check.right_inverse = std::all_of(phi.table().begin(), phi.table().end(),
                                      [&](const auto& kv) { return pi(kv.second) == kv.first; });
    check.identity = phi(q.identity()) == g.identity();

    std::vector<Subset> images;
    check.powers = true;
    for (int r = 1; r <= phi.r_max(); ++r) {
        images.push_back(pi.image(phi.power(r)));
        for (const auto& c : images.back())
            if (!phi.power(r).contains(phi(c))) check.powers = false;
    }

    const auto c = images.front();
    const auto b = power_set(a, 2).filter([&](const Element& x) { return phi.in_kernel(x); });
    std::vector<Element> phic;
    for (const auto& x : c) phic.push_back(phi(x));
    const auto cover = product_set(Subset(a.backend(), phic), b);
    check.cover = a.subset_of(cover);
    check.size_lemma = cover.size() == c.size() * b.size();
    check.size_corollary = c.size() * b.size() >= a.size();

    std::map<int, Subset> big_powers;
    auto power_of_a = [&](int k) -> const Subset& {
        auto it = big_powers.find(k);
        if (it == big_powers.end()) it = big_powers.emplace(k, power_set(a, k)).first;
        return it->second;
    };
    std::mt19937_64 rng(seed);
    check.products = true;
    for (int r = 1; r <= phi.r_max(); ++r) {
        const auto& pool = images[static_cast<std::size_t>(r - 1)];
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int n = 1; n <= max_n; ++n) {
            for (std::size_t s = 0; s < samples; ++s) {
                std::vector<Element> xs;
                Element prod = q.identity();
                for (int i = 0; i + 1 < n; ++i) {
                    xs.push_back(pool[pick(rng)]);
                    prod = q.multiply(prod, xs.back());
                }
                xs.push_back(q.invert(prod));
                if (!pool.contains(xs.back())) continue;
                Element value = g.identity();
                for (const auto& x : xs) {
                    if (rng() & 1U) {
                        value = g.multiply(value, g.invert(phi(q.invert(x))));
                    } else {
                        value = g.multiply(value, phi(x));
                    }
                }
                ++check.tuples_checked;
                if (!phi.in_kernel(value) || !power_of_a(r * n).contains(value)) check.products = false;
            }
        }
    }
    return check;
}

ConverseReport verify_splitting_converse(const Subset& c, const std::array<Subset, 4>& b, const PhiFunction& phi,
                                         const Membership& in_h, Ratio k1, Ratio k2, Ratio k3) {
    ConverseReport report;
    const auto& g = b[0].group();
    const auto& q = c.group();
    const auto c3 = power_set(c, 3);

    std::unordered_map<Element, Element, ElementHash> values;
    bool defined = true;
    for (const auto& x : c3) {
        auto v = phi(x);
        if (!v) {
            defined = false;
            break;
        }
        values.emplace(x, *v);
    }
    bool shapes = c.is_symmetric() && c.contains_identity();
    for (std::size_t i = 0; i < 4; ++i) {
        shapes = shapes && b[i].is_symmetric() && b[i].contains_identity() &&
                 std::all_of(b[i].begin(), b[i].end(), in_h);
        if (i > 0) shapes = shapes && b[i - 1].subset_of(b[i]);
    }
    report.well_formed = defined && shapes;
    if (!defined) return report;

    auto size = [](const Subset& s) { return static_cast<std::int64_t>(s.size()); };
    report.hypotheses[0] = Ratio(size(c3)) <= k1 * size(c);
    report.hypotheses[1] = Ratio(size(b[3])) <= k2 * size(b[0]);
    report.hypotheses[2] = Ratio(size(power_set(b[3], 4))) <= k3 * size(b[3]);

    report.hypotheses[3] = true;
    for (const auto& x : c) {
        const auto& f = values.at(x);
        const auto fi = g.invert(f);
        for (std::size_t i = 0; i < 3 && report.hypotheses[3]; ++i) {
            for (const auto& y : b[i]) {
                if (!b[i + 1].contains(g.multiply(g.multiply(f, y), fi)) ||
                    !b[i + 1].contains(g.multiply(g.multiply(fi, y), f))) {
                    report.hypotheses[3] = false;
                    break;
                }
            }
        }
    }

    report.hypotheses[4] = true;
    for (const auto& x1 : c3) {
        for (const auto& x2 : c3) {
            for (const auto& x3 : c3) {
                const auto x4 = q.invert(q.multiply(q.multiply(x1, x2), x3));
                if (!c3.contains(x4)) continue;
                const std::array<const Element*, 4> xs{&x1, &x2, &x3, &x4};
                for (unsigned signs = 0; signs < 16; ++signs) {
                    Element value = g.identity();
                    for (unsigned i = 0; i < 4; ++i) {
                        if ((signs >> i) & 1U) {
                            value = g.multiply(value, g.invert(values.at(q.invert(*xs[i]))));
                        } else {
                            value = g.multiply(value, values.at(*xs[i]));
                        }
                    }
                    if (!b[3].contains(value)) {
                        report.hypotheses[4] = false;
                        goto done;
                    }
                }
            }
        }
    }
done:
    std::vector<Element> phic;
    for (const auto& x : c) phic.push_back(values.at(x));
    const Subset fc(b[0].backend(), phic);
    const auto y = product_set(fc, b[0]).unite(product_set(b[0], fc.inverse()));
    const auto y3 = power_set(y, 3);
    report.union_size = y.size();
    report.cube_size = y3.size();
    report.conclusion = Ratio(size(y3)) <= k1 * k2 * k3 * size(y);
    return report;
}

ConverseReport verify_splitting_converse(const Subset& c, const std::array<Subset, 4>& b, const SplittingMap& phi,
                                         Ratio k1, Ratio k2, Ratio k3) {
    auto f = [&phi](const Element& x) -> std::optional<Element> {
        if (!phi.defined_at(x)) return std::nullopt;
        return phi(x);
    };
    auto in_h = [&phi](const Element& x) { return phi.in_kernel(x); };
    return verify_splitting_converse(c, b, f, in_h, k1, k2, k3);
}

PullbackResult pullback_witness(const GroupHomomorphism& rho, const ApproximateGroupWitness& w) {
    if (!rho.has_finite_kernel() && !rho.source()->is_finite()) {
        throw UnsupportedBackend("pullback needs a finite kernel");
    }
    const auto pre = rho.preimage(w.a);
    const auto& g = *rho.source();
    std::vector<Element> xs;
    for (const auto& x : w.x) {
        const auto fibre = rho.preimage(Subset(rho.target(), std::vector<Element>{x}));
        if (fibre.empty()) continue;
        xs.push_back(fibre[0]);
        xs.push_back(g.invert(fibre[0]));
    }
    PullbackResult out{pre, {pre, 0, Subset(rho.source(), std::move(xs))}, false};
    out.witness.k = static_cast<std::int64_t>(out.witness.x.size());
    out.verified = verify_witness(out.witness) && out.witness.k <= 2 * w.k;
    return out;
}

TriplingReport verify_tripling(const Subset& a, Ratio k, const WitnessOptions& options) {
    TriplingReport report;
    report.a_size = a.size();
    if (a.empty()) throw InvalidInput("tripling of the empty set");
    const auto a3 = power_set(a, 3);
    report.cube_size = a3.size();
    report.precondition = a.is_symmetric() && a.contains_identity() &&
                          Ratio(static_cast<std::int64_t>(a3.size())) <= k * static_cast<std::int64_t>(a.size());
    if (report.precondition) report.witness = minimal_witness(a3, options);
    return report;
}

namespace {

struct SubsetKeyLess {
    bool operator()(const std::vector<Element>& a, const std::vector<Element>& b) const { return lex_less(a, b); }
};

Subset cyclic_segment(const BackendPtr& b, const Element& x, std::int64_t bound) {
    std::vector<Element> out{b->identity()};
    Element up = b->identity();
    Element down = b->identity();
    const Element xi = b->invert(x);
    for (std::int64_t l = 1; l <= bound; ++l) {
        up = b->multiply(up, x);
        down = b->multiply(down, xi);
        out.push_back(up);
        out.push_back(down);
    }
    return Subset(b, std::move(out));
}

}  // namespace

std::vector<Subset> all_subgroups(BackendPtr g) {
    if (!g->is_finite()) throw UnsupportedBackend("subgroup enumeration needs a finite group");
    const auto elems = g->elements();
    std::set<std::vector<Element>, SubsetKeyLess> seen;
    std::vector<Subset> cyclic;
    for (const auto& x : elems) {
        auto s = generated_subgroup(g, {x});
        if (seen.insert(s.elements()).second) cyclic.push_back(std::move(s));
    }
    std::vector<Subset> all = cyclic;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (const auto& c : cyclic) {
            if (c.subset_of(all[i])) continue;
            std::vector<Element> gens = all[i].elements();
            gens.insert(gens.end(), c.begin(), c.end());
            auto s = generated_subgroup(g, gens);
            if (seen.insert(s.elements()).second) all.push_back(std::move(s));
        }
    }
    std::sort(all.begin(), all.end(), [](const Subset& a, const Subset& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return lex_less(a.elements(), b.elements());
    });
    return all;
}

CosetSearchResult brute_coset_progression(const Subset& a, const CosetSearchOptions& options) {
    const auto& backend = a.backend();
    if (!backend->is_finite()) throw UnsupportedBackend("coset progression search needs a finite group");
    if (backend->order().value_or(SIZE_MAX) > options.group_cap) {
        throw ResourceLimit("group is larger than " + std::to_string(options.group_cap) + " elements");
    }
    if (!is_abelian(*backend)) throw PreconditionViolation("coset progression search needs an abelian group");
    if (a.empty()) throw InvalidInput("A is empty");
    if (options.rank_cap < 0) throw InvalidParameter("rank cap must be non-negative");

    const auto& g = *backend;
    const auto four_a = power_set(a, 4);
    CosetSearchResult result;
    std::size_t best_size = SIZE_MAX;

    for (const auto& h : all_subgroups(backend)) {
        if (!h.subset_of(four_a)) continue;
        if (h.size() >= best_size) continue;

        std::set<Element, CanonicalLess> reps;
        for (const auto& x : four_a) {
            if (h.contains(x)) continue;
            const auto xi = g.invert(x);
            reps.insert(canonical_less(x, xi) ? x : xi);
        }
        const std::vector<Element> gens(reps.begin(), reps.end());
        std::vector<std::int64_t> max_len;
        for (const auto& x : gens) max_len.push_back(std::max<std::int64_t>(1, element_order(g, x) / 2));

        struct Candidate {
            std::vector<std::size_t> idx;
            std::vector<std::int64_t> lengths;
            Int volume;
        };
        std::vector<Candidate> candidates{{{}, {}, Int(1)}};
        std::vector<std::vector<std::size_t>> tuples{{}};
        for (int r = 1; r <= options.rank_cap; ++r) {
            std::vector<std::vector<std::size_t>> next;
            for (const auto& t : tuples) {
                if (static_cast<int>(t.size()) != r - 1) continue;
                for (std::size_t i = t.empty() ? 0 : t.back() + 1; i < gens.size(); ++i) {
                    auto u = t;
                    u.push_back(i);
                    next.push_back(std::move(u));
                }
            }
            for (const auto& t : next) {
                std::vector<std::int64_t> ls(t.size(), 1);
                while (true) {
                    Int volume = 1;
                    for (auto l : ls) volume *= 2 * l + 1;
                    candidates.push_back({t, ls, volume});
                    if (candidates.size() > options.candidate_cap) break;
                    std::size_t k = 0;
                    while (k < ls.size() && ls[k] == max_len[t[k]]) ls[k++] = 1;
                    if (k == ls.size()) break;
                    ++ls[k];
                }
            }
            tuples.insert(tuples.end(), next.begin(), next.end());
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& x, const Candidate& y) { return x.volume < y.volume; });

        for (const auto& cand : candidates) {
            if (++result.explored > options.candidate_cap) {
                result.exhaustive = false;
                return result;
            }
            Subset p = Subset::identity_only(backend);
            for (std::size_t i = 0; i < cand.idx.size(); ++i) p = product_set(p, cyclic_segment(backend, gens[cand.idx[i]], cand.lengths[i]));
            auto hp = product_set(h, p);
            if (hp.size() >= best_size || !a.subset_of(hp)) continue;
            best_size = hp.size();
            result.found = true;
            result.h = h;
            result.generators.clear();
            for (auto i : cand.idx) result.generators.push_back(gens[i]);
            result.lengths = cand.lengths;
            result.coset_progression = std::move(hp);
            result.ratio = Ratio(static_cast<std::int64_t>(best_size), static_cast<std::int64_t>(a.size()));
        }
    }
    return result;
}

NilprogressionSearchResult nilprogression_cover_search(const Subset& a, const NilprogressionSearchOptions& options) {
    if (a.empty()) throw InvalidInput("A is empty");
    if (options.rank_cap < 1 || options.max_length < 1 || options.c_cap < 1) {
        throw InvalidParameter("search caps must be positive");
    }
    const auto& g = a.group();
    std::set<Element, CanonicalLess> reps;
    for (const auto& x : a) {
        if (x == g.identity()) continue;
        const auto xi = g.invert(x);
        reps.insert(canonical_less(x, xi) ? x : xi);
    }
    const std::vector<Element> gens(reps.begin(), reps.end());
    std::vector<Subset> powers{a};
    NilprogressionSearchResult result;

    std::vector<std::vector<std::size_t>> tuples{{}};
    for (int r = 1; r <= options.rank_cap; ++r) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != r - 1) continue;
            for (std::size_t i = t.empty() ? 0 : t.back() + 1; i < gens.size(); ++i) {
                auto u = t;
                u.push_back(i);
                next.push_back(std::move(u));
            }
        }
        for (const auto& t : next) {
            std::vector<std::int64_t> ls(t.size(), 1);
            while (true) {
                ProgressionSpec spec{a.backend(), {}, ls};
                for (auto i : t) spec.generators.push_back(gens[i]);
                ++result.explored;
                auto star = enumerate_nilprogression(spec).set;
                if (a.subset_of(star)) {
                    const int limit = result.found ? std::min(result.c, options.c_cap) : options.c_cap;
                    for (int c = 1; c <= limit; ++c) {
                        while (static_cast<int>(powers.size()) < c) powers.push_back(product_set(powers.back(), a));
                        if (!star.subset_of(powers[static_cast<std::size_t>(c - 1)])) continue;
                        if (!result.found || c < result.c || star.size() < result.nilprogression.size()) {
                            result.found = true;
                            result.generators = spec.generators;
                            result.lengths = ls;
                            result.nilprogression = star;
                            result.c = c;
                        }
                        break;
                    }
                }
                std::size_t k = 0;
                while (k < ls.size() && ls[k] == options.max_length) ls[k++] = 1;
                if (k == ls.size()) break;
                ++ls[k];
            }
        }
        tuples.insert(tuples.end(), next.begin(), next.end());
    }
    return result;
}

}  // namespace nilkit
