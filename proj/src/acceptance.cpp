#include "nilkit/acceptance.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "nilkit/approximate.hpp"
#include "nilkit/collection.hpp"
#include "nilkit/decomposition.hpp"
#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"
#include "nilkit/pgroups.hpp"
#include "nilkit/progressions.hpp"

namespace nilkit {

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
};

// Fails the criterion with a message when `cond` is false.
#define EXPECT_OR_FAIL(out, cond, msg)                 \
    do {                                               \
        if (!(cond)) {                                 \
            (out).pass = false;                        \
            (out).detail << msg;                       \
            return;                                    \
        }                                              \
    } while (0)

Element random_unitriangular(const UnitriangularBackend& g, std::mt19937_64& rng, int spread = 3) {
    std::uniform_int_distribution<int> d(-spread, spread);
    Element raw(g.entry_count());
    for (auto& v : raw) v = d(rng);
    return g.normalize(raw);
}

std::vector<std::vector<int>> all_letter_words(int max_length) {
    std::vector<std::vector<int>> out{{}};
    std::vector<std::vector<int>> layer{{}};
    const int letters[] = {1, -1, 2, -2};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int l : letters) {
                auto u = w;
                u.push_back(l);
                next.push_back(std::move(u));
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

void criterion_collection_soundness(Outcome& out) {
    auto g = std::make_shared<UnitriangularBackend>(4);
    std::mt19937_64 rng(11);
    const std::vector<std::vector<Element>> assignments{
        {g->elementary(0, 1), g->elementary(1, 2)},
        {random_unitriangular(*g, rng), random_unitriangular(*g, rng)},
        {random_unitriangular(*g, rng), random_unitriangular(*g, rng)},
    };
    std::size_t count = 0;
    for (const auto& letters : all_letter_words(6)) {
        const Word w = letter_word(2, 3, letters);
        const auto result = collect(w);
        for (const auto& x : assignments) {
            EXPECT_OR_FAIL(out, evaluate_word(*g, x, w) == evaluate_collected(*g, x, result.form),
                           "value mismatch for '" << w.to_string() << "'");
        }
        ++count;
    }
    out.detail << count << " words, " << assignments.size() << " assignments each";
}

void criterion_collection_bounds(Outcome& out) {
    const auto table = basic_table(2, 3);
    std::size_t count = 0;
    for (const auto& letters : all_letter_words(6)) {
        std::vector<std::int64_t> budget(2, 0), pos(2, 0), neg(2, 0);
        for (int l : letters) {
            const auto i = static_cast<std::size_t>(std::abs(l) - 1);
            ++budget[i];
            ++(l > 0 ? pos : neg)[i];
        }
        if (budget[0] > 3 || budget[1] > 3) continue;
        const Word w = letter_word(2, 3, letters);
        CollectOptions options;
        options.keep_trace = true;
        const auto result = collect(w, options);
        const auto copies = copy_counts(result.trace, w);
        for (std::size_t i = 0; i < table->size(); ++i) {
            const auto bound = power_of_weight(std::vector<std::int64_t>{3, 3}, table->weight(i));
            const auto tight = power_of_weight(budget, table->weight(i));
            EXPECT_OR_FAIL(out, copies[i] <= tight && tight <= bound,
                           "copy bound fails for " << (*table)[i].to_string() << " in '" << w.to_string() << "'");
        }
        for (std::size_t i = 0; i < 2; ++i) {
            EXPECT_OR_FAIL(out, result.form.exponents()[i] == pos[i] - neg[i],
                           "letter exponent mismatch in '" << w.to_string() << "'");
        }
        ++count;
    }
    out.detail << count << " words within L=(3,3)";
}

void criterion_basic_counts(Outcome& out) {
    std::size_t checked = 0;
    for (int r = 1; r <= 4; ++r) {
        for (int s = 1; s <= 5; ++s) {
            std::int64_t witt = 0;
            for (int w = 1; w <= s; ++w) witt += witt_count(r, w);
            const auto t = enumerate_basic(r, s).size();
            EXPECT_OR_FAIL(out, static_cast<std::int64_t>(t) == witt,
                           "r=" << r << " s=" << s << ": " << t << " basic vs Witt " << witt);
            ++checked;
        }
    }
    out.detail << checked << " (r,s) pairs, t(2,3)=" << enumerate_basic(2, 3).size();
}

void criterion_progression_chain(Outcome& out) {
    auto heis = std::make_shared<UnitriangularBackend>(3);
    ProgressionSpec spec{heis, {heis->elementary(0, 1), heis->elementary(1, 2)}, {1, 1}};
    const auto report = check_chain(spec, 8);
    EXPECT_OR_FAIL(out, report.ordered_size == 9 && report.star_size == 13 && report.nilpotent_size == 27,
                   "Heisenberg sizes (" << report.ordered_size << "," << report.star_size << ","
                                        << report.nilpotent_size << ")");
    EXPECT_OR_FAIL(out, report.ordered_in_star && report.star_in_nilpotent, "Heisenberg containment fails");
    EXPECT_OR_FAIL(out, report.minimal_m.has_value(), "no m <= 8 with P in P_ord^m");
    out.detail << "Heisenberg (9,13,27) m=" << *report.minimal_m;

    std::size_t specs = 0;
    for (int s = 1; s <= 3; ++s) {
        auto g = std::make_shared<UnitriangularBackend>(s + 1, 3);
        std::vector<Element> pool = g->generators();
        const auto base = pool;
        for (std::size_t i = 0; i + 1 < base.size(); ++i) pool.push_back(g->multiply(base[i], base[i + 1]));
        for (const auto& x : base) pool.push_back(g->multiply(x, x));
        for (int r = 1; r <= 3; ++r) {
            std::vector<Element> gens;
            for (int i = 0; i < r; ++i) gens.push_back(pool[static_cast<std::size_t>(i) % pool.size()]);
            for (int code = 0; code < (1 << r); ++code) {
                std::vector<std::int64_t> lengths;
                for (int i = 0; i < r; ++i) lengths.push_back(1 + ((code >> i) & 1));
                const auto rep = check_chain({g, gens, lengths}, 8);
                EXPECT_OR_FAIL(out, rep.ordered_in_star && rep.star_in_nilpotent,
                               "containment fails over UT(" << s + 1 << ",Z/3) r=" << r);
                ++specs;
            }
        }
    }
    out.detail << ", " << specs << " UT(s+1,Z/3) specs";
}

std::vector<CommutatorForm> forms_up_to_weight_three() {
    using FC = FormalCommutator;
    std::vector<CommutatorForm> out{CommutatorForm::identity()};
    out.emplace_back(FC::bracket(FC::letter(1), FC::letter(2)));
    out.emplace_back(FC::bracket(FC::letter(2), FC::letter(1)));
    std::vector<int> p{1, 2, 3};
    do {
        const auto a = FC::letter(p[0]), b = FC::letter(p[1]), c = FC::letter(p[2]);
        out.emplace_back(FC::bracket(FC::bracket(a, b), c));
        out.emplace_back(FC::bracket(a, FC::bracket(b, c)));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Element evaluate_factors(const GroupBackend& g, const std::vector<Element>& letters,
                         const std::vector<DecompositionFactor>& factors) {
    Element value = g.identity();
    for (const auto& f : factors) {
        value = g.multiply(value, power(g, evaluate_commutator(g, letters, f.commutator), f.exponent));
    }
    return value;
}

void criterion_decomposition(Outcome& out) {
    const int step = 3;
    auto g = std::make_shared<UnitriangularBackend>(step + 1);
    std::mt19937_64 rng(5);
    std::vector<Element> letters;
    for (int i = 0; i < 9; ++i) letters.push_back(random_unitriangular(*g, rng, 2));
    const auto forms = forms_up_to_weight_three();

    std::size_t product_cases = 0;
    for (const auto& form : forms) {
        const int w = form.weight();
        std::vector<int> sizes(static_cast<std::size_t>(w), 1);
        while (true) {
            std::vector<std::vector<int>> lists;
            std::vector<Element> args;
            int next = 1;
            for (int size : sizes) {
                lists.emplace_back();
                Element prod = g->identity();
                for (int k = 0; k < size; ++k) {
                    lists.back().push_back(next);
                    prod = g->multiply(prod, letters[static_cast<std::size_t>(next - 1)]);
                    ++next;
                }
                args.push_back(prod);
            }
            const auto result = decompose_product_commutator(form, lists, step);
            EXPECT_OR_FAIL(out, evaluate_factors(*g, letters, result.factors) == evaluate_commutator(*g, args, form.shape()),
                           "product decomposition mismatch for " << form.to_string());
            ++product_cases;
            std::size_t k = 0;
            while (k < sizes.size() && sizes[k] == 3) sizes[k++] = 1;
            if (k == sizes.size()) break;
            ++sizes[k];
        }
    }

    std::size_t power_cases = 0;
    for (const auto& form : forms) {
        const int w = form.weight();
        std::vector<std::int64_t> l(static_cast<std::size_t>(w), 1);
        const std::vector<Element> xs(letters.begin(), letters.begin() + w);
        while (true) {
            const auto result = decompose_power_commutator(form, l, step);
            std::vector<Element> powered;
            for (int i = 0; i < w; ++i) powered.push_back(power(*g, xs[static_cast<std::size_t>(i)], l[static_cast<std::size_t>(i)]));
            EXPECT_OR_FAIL(out, evaluate_factors(*g, xs, result.factors) == evaluate_commutator(*g, powered, form.shape()),
                           "power decomposition mismatch for " << form.to_string());
            for (std::size_t i = 1; i < result.factors.size(); ++i) {
                const auto& f = result.factors[i];
                const auto bound = power_of_weight(l, weight_vector(f.commutator, w));
                EXPECT_OR_FAIL(out, std::abs(f.exponent) <= bound,
                               "exponent bound fails for " << f.commutator.to_string() << " in " << form.to_string());
            }
            ++power_cases;
            std::size_t k = 0;
            while (k < l.size() && l[k] == 3) l[k++] = 1;
            if (k == l.size()) break;
            ++l[k];
        }
    }

    std::size_t ball_cases = 0;
    for (const auto& form : forms) {
        const int w = form.weight();
        const std::vector<Element> xs(letters.begin(), letters.begin() + w);
        const Element alpha = evaluate_commutator(*g, xs, form.shape());
        const auto bound = power_in_ball_bound(form, step);
        for (int code = 0; code < (1 << w); ++code) {
            std::vector<std::int64_t> lengths;
            std::int64_t volume = 1;
            for (int i = 0; i < w; ++i) {
                lengths.push_back(1 + ((code >> i) & 1));
                volume *= lengths.back();
            }
            for (std::int64_t m = -volume; m <= volume; ++m) {
                const auto ball = power_in_ball(form, lengths, m, step);
                Element value = g->identity();
                for (const auto& f : ball.factors) {
                    EXPECT_OR_FAIL(out, std::abs(f.power) <= lengths[static_cast<std::size_t>(f.letter - 1)],
                                   "ball factor outside B(x;L)");
                    value = g->multiply(value, power(*g, xs[static_cast<std::size_t>(f.letter - 1)], f.power));
                }
                EXPECT_OR_FAIL(out, value == power(*g, alpha, m), "ball word mismatch for " << form.to_string());
                EXPECT_OR_FAIL(out, ball.factor_count() <= bound, "ball word longer than its bound");
                ++ball_cases;
            }
        }
    }
    out.detail << product_cases << " product, " << power_cases << " power, " << ball_cases << " ball cases";
}

// Random symmetric subsets containing the identity.
std::vector<Subset> approximate_corpus() {
    std::vector<Subset> out;
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 40; ++i) {
        const std::int64_t n = 5 + static_cast<std::int64_t>(rng() % 56);
        auto g = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{n});
        std::vector<Element> elems{{Int(0)}};
        const std::size_t k = 1 + rng() % 4;
        for (std::size_t j = 0; j < k; ++j) elems.push_back({Int(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)))});
        out.push_back(Subset(g, elems).symmetrized());
    }
    auto heis = std::make_shared<UnitriangularBackend>(3, 3);
    const auto all = heis->elements();
    for (int i = 0; i < 10; ++i) {
        std::vector<Element> elems;
        const std::size_t k = 1 + rng() % 3;
        for (std::size_t j = 0; j < k; ++j) elems.push_back(all[rng() % all.size()]);
        out.push_back(Subset(heis, elems).symmetrized());
    }
    return out;
}

void criterion_approximate(Outcome& out) {
    const auto corpus = approximate_corpus();
    std::size_t optimal = 0;
    std::size_t chang_runs = 0;
    double worst_ratio = 0;
    for (const auto& a : corpus) {
        const auto w = minimal_witness(a);
        EXPECT_OR_FAIL(out, verify_witness(w), "invalid witness for a set of size " << a.size());
        if (w.optimal) ++optimal;
        for (int n = 1; n <= 4; ++n) EXPECT_OR_FAIL(out, verify_growth(w, n), "growth fails at n=" << n);

        std::vector<std::pair<Subset, std::pair<int, std::int64_t>>> covers;
        covers.push_back({a, {1, 1}});
        const auto half = static_cast<std::ptrdiff_t>((a.size() + 1) / 2);
        covers.push_back({Subset(a.backend(), std::vector<Element>(a.begin(), a.begin() + half)), {1, 2}});
        const auto a2 = product_set(a, a);
        covers.push_back({Subset(a.backend(), std::vector<Element>(a2.begin(), a2.begin() + std::min<std::ptrdiff_t>(
                                                                                        half, static_cast<std::ptrdiff_t>(a2.size())))),
                          {2, 2}});
        for (const auto& [b, mm] : covers) {
            const auto res = chang_cover(a, w, b, mm.first, mm.second);
            EXPECT_OR_FAIL(out, res.containment, "covering misses part of A");
            EXPECT_OR_FAIL(out, res.t <= res.log_bound + 1e-9,
                           "t=" << res.t << " exceeds log2 M' + M log2 K = " << res.log_bound);
            worst_ratio = std::max(worst_ratio, res.t / std::max(res.log_bound, 1e-9));
            ++chang_runs;
        }
    }

    std::size_t covers_checked = 0;
    auto z = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{0});
    auto heis = std::make_shared<UnitriangularBackend>(3, 3);
    std::vector<std::pair<Subset, Membership>> instances;
    for (int k = 1; k <= 3; ++k) {
        std::vector<Element> elems;
        for (int v = -k; v <= k; ++v) elems.push_back({Int(v)});
        instances.push_back({Subset(z, elems), [](const Element& e) { return e[0] % 2 == 0; }});
    }
    instances.push_back({Subset(heis, heis->generators()).symmetrized(),
                         [heis](const Element& e) { return e[heis->index(0, 1)] == 0 && e[heis->index(1, 2)] == 0; }});
    for (const auto& a : corpus) {
        auto cyclic = std::dynamic_pointer_cast<const CyclicProduct>(a.backend());
        if (!cyclic) continue;
        const auto n = cyclic->moduli()[0];
        if (n % 2 == 0 && instances.size() < 12) instances.push_back({a, [](const Element& e) { return e[0] % 2 == 0; }});
    }
    for (const auto& [a, in_h] : instances) {
        const auto w = minimal_witness(a);
        for (int m = 2; m <= 3; ++m) {
            const auto cover = intersection_cover(a, w, in_h, m);
            EXPECT_OR_FAIL(out, cover.cover_ok, "intersection cover fails (m=" << m << ")");
            EXPECT_OR_FAIL(out, cover.witness_ok, "intersection witness fails (m=" << m << ")");
            ++covers_checked;
        }
    }
    out.detail << corpus.size() << " sets (" << optimal << " proven optimal), " << chang_runs
               << " coverings with C=1 (max t/bound " << worst_ratio << "), " << covers_checked << " intersection covers";
}

struct SplittingInstance {
    std::string name;
    SplittingMap phi;
    Subset a;
};

std::vector<SplittingInstance> splitting_corpus() {
    std::vector<SplittingInstance> out;
    auto z = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{0});
    const auto to_two = reduction_map(z, 2);
    for (int k = 1; k <= 4; ++k) {
        std::vector<Element> elems;
        for (int v = -k; v <= k; ++v) elems.push_back({Int(v)});
        Subset a(z, elems);
        out.push_back({"Z/2Z A=[-" + std::to_string(k) + "," + std::to_string(k) + "]", build_splitting(to_two, a, 3), a});
    }
    auto heis = std::make_shared<UnitriangularBackend>(3, 3);
    const auto ab = abelianization_map(heis);
    const auto gens = heis->generators();
    const std::vector<std::vector<Element>> seeds{
        gens,
        {gens[0], gens[1], heis->multiply(gens[0], gens[1])},
        {heis->multiply(gens[0], gens[1])},
        {gens[0], heis->elementary(0, 2)},
    };
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto a = Subset(heis, seeds[i]).symmetrized();
        out.push_back({"Heisenberg mod 3 seed " + std::to_string(i + 1), build_splitting(ab, a, 3), a});
    }
    auto c12 = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{12});
    const auto to_four = reduction_map(c12, 4);
    for (int k = 1; k <= 2; ++k) {
        std::vector<Element> elems;
        for (int v = -k; v <= k; ++v) elems.push_back({Int(v)});
        Subset a = Subset(c12, elems);
        out.push_back({"Z/12 -> Z/4 A=[-" + std::to_string(k) + "," + std::to_string(k) + "]", build_splitting(to_four, a, 3), a});
    }
    return out;
}

void criterion_splitting(Outcome& out, bool sizes_only) {
    const auto corpus = splitting_corpus();
    for (const auto& inst : corpus) {
        const auto check = verify_splitting(inst.phi, inst.a);
        if (sizes_only) {
            EXPECT_OR_FAIL(out, check.size_lemma && check.size_corollary, "size identities fail on " << inst.name);
        } else {
            EXPECT_OR_FAIL(out, check.right_inverse && check.identity && check.powers,
                           "conditions (i)/(ii) fail on " << inst.name);
            EXPECT_OR_FAIL(out, check.products, "condition (iii) fails on " << inst.name);
            EXPECT_OR_FAIL(out, check.cover, "condition (iv) fails on " << inst.name);
        }
    }
    if (sizes_only) {
        out.detail << ", size identities on " << corpus.size() << " splittings";
        return;
    }

    std::size_t instances = 0;
    std::size_t with_hypotheses = 0;
    for (const auto& inst : corpus) {
        const auto& pi = inst.phi.pi();
        const auto c = pi.image(inst.a);
        std::array<Subset, 4> b;
        for (int i = 1; i <= 4; ++i) {
            b[static_cast<std::size_t>(i - 1)] =
                power_set(inst.a, 2 * i).filter([&](const Element& x) { return inst.phi.in_kernel(x); });
        }
        auto ratio = [](std::size_t num, std::size_t den) {
            return Ratio(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
        };
        const Ratio k1 = ratio(power_set(c, 3).size(), c.size());
        const Ratio k2 = ratio(b[3].size(), b[0].size());
        const Ratio k3 = ratio(power_set(b[3], 4).size(), b[3].size());
        for (int variant = 0; variant < 2; ++variant) {
            const Ratio shrink = variant == 0 ? Ratio(1) : Ratio(1, 2);
            const auto report = verify_splitting_converse(c, b, inst.phi, k1, k2, k3 * shrink);
            ++instances;
            if (report.hypotheses_hold()) {
                ++with_hypotheses;
                EXPECT_OR_FAIL(out, report.conclusion, "converse conclusion fails on " << inst.name);
            }
        }
    }
    out.detail << corpus.size() << " splittings satisfy (i)-(iv); converse: " << instances << " instances, "
               << with_hypotheses << " with all hypotheses, conclusion held on each";
}

void criterion_pgroups(Outcome& out) {
    std::mt19937_64 rng(8);
    std::size_t subsets = 0;
    const auto groups = small_p_groups();
    for (const auto& [name, g] : groups) {
        const auto phi = frattini(g);
        const auto elems = g->elements();
        auto basis = burnside_basis(g, elems);
        std::vector<Element> s = basis;
        while (s.size() < basis.size() + 4 && s.size() + 1 < elems.size()) {
            const auto& x = elems[rng() % elems.size()];
            if (std::find(s.begin(), s.end(), x) == s.end() && x != g->identity()) s.push_back(x);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
            std::vector<Element> sub;
            for (std::size_t i = 0; i < s.size(); ++i)
                if ((mask >> i) & 1U) sub.push_back(s[i]);
            EXPECT_OR_FAIL(out, burnside_property_holds(g, phi, sub), "Burnside property fails in " << name);
            ++subsets;
        }
        if (elems.size() <= 8) {
            for (std::size_t mask = 0; mask < (std::size_t{1} << elems.size()); ++mask) {
                std::vector<Element> sub;
                for (std::size_t i = 0; i < elems.size(); ++i)
                    if ((mask >> i) & 1U) sub.push_back(elems[i]);
                EXPECT_OR_FAIL(out, burnside_property_holds(g, phi, sub), "Burnside property fails in " << name);
                ++subsets;
            }
        }
    }
    out.detail << groups.size() << " groups, " << subsets << " subsets";

    std::size_t spans = 0;
    for (const auto& [name, g] : groups) {
        if (spans >= 30) break;
        if (!is_abelian(*g) || g->order().value() < 4) continue;
        const auto elems = g->elements();
        for (int trial = 0; trial < 2 && spans < 30; ++trial) {
            std::vector<Element> pieces;
            const std::size_t k = 1 + rng() % 3;
            for (std::size_t j = 0; j < k; ++j) {
                const auto cyc = generated_subgroup(g, {elems[rng() % elems.size()]});
                pieces.insert(pieces.end(), cyc.begin(), cyc.end());
            }
            const auto report = union_subgroups_span(Subset(g, pieces));
            EXPECT_OR_FAIL(out, report.contained, "<X> not in X^r in " << name);
            ++spans;
        }
    }
    EXPECT_OR_FAIL(out, spans == 30, "only " << spans << " union-of-subgroups instances");
    auto z6 = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{6});
    const Subset x6(z6, std::vector<Element>{{Int(0)}, {Int(2)}, {Int(4)}, {Int(3)}});
    bool rejected = false;
    try {
        union_subgroups_span(x6);
    } catch (const PreconditionViolation&) {
        rejected = true;
    }
    EXPECT_OR_FAIL(out, rejected, "Z/6 counterexample was not rejected");
    EXPECT_OR_FAIL(out, !union_subgroups_span_unchecked(x6, 1).contained, "Z/6 counterexample does not fail");
    out.detail << ", " << spans << " unions, Z/6 rejected";

    for (std::int64_t p : {2, 3, 5}) {
        const auto phi = heisenberg_commutator_map(p);
        EXPECT_OR_FAIL(out, phi.verify_multilinear(), "commutator map on UT(3,Z/" << p << ") is not bilinear");
        const auto span = multihom_image_span(phi);
        EXPECT_OR_FAIL(out, span.contained && span.image.size() == static_cast<std::size_t>(p),
                       "image span fails for p=" << p);
        const auto factoring = verify_primary_factoring(phi);
        EXPECT_OR_FAIL(out, factoring.factoring && factoring.p_components, "factoring fails for p=" << p);
    }
    auto z2z3 = std::make_shared<ProductBackend>(std::make_shared<CyclicProduct>(std::vector<std::int64_t>{2}),
                                                 std::make_shared<CyclicProduct>(std::vector<std::int64_t>{3}));
    auto z6t = std::make_shared<CyclicProduct>(std::vector<std::int64_t>{6});
    const MultiHom mixed({z2z3, z2z3}, z6t, [](const std::vector<Element>& v) {
        return Element{3 * v[0][0] * v[1][0] + 2 * v[0][1] * v[1][1]};
    });
    EXPECT_OR_FAIL(out, mixed.verify_multilinear(), "Z/2 x Z/3 map is not bilinear");
    const auto factoring = verify_primary_factoring(mixed);
    EXPECT_OR_FAIL(out, factoring.factoring && factoring.p_components, "factoring fails on Z/2 x Z/3");
    out.detail << ", bilinear maps for p=2,3,5 and Z/2xZ/3";
}

void criterion_freiman(Outcome& out) {
    auto heis = std::make_shared<UnitriangularBackend>(3);
    ProgressionSpec spec{heis, {heis->elementary(0, 1), heis->elementary(1, 2)}, {1, 1}};
    const auto a = enumerate_ordered(spec).set;
    const auto result = nilprogression_cover_search(a);
    EXPECT_OR_FAIL(out, result.found, "no nilprogression P* with A in P* in A^c (c <= 6)");
    out.detail << "measured c=" << result.c << ", |P*|=" << result.nilprogression.size() << ", rank "
               << result.generators.size() << ", " << result.explored << " candidates";
}

struct Criterion {
    int id;
    std::string name;
    std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "collection soundness", criterion_collection_soundness},
        {2, "collection copy bounds", criterion_collection_bounds},
        {3, "basic commutator counts", criterion_basic_counts},
        {4, "progression chain", criterion_progression_chain},
        {5, "decomposition calculus", criterion_decomposition},
        {6, "approximate groups",
         [](Outcome& o) {
             criterion_approximate(o);
             if (o.pass) criterion_splitting(o, true);
         }},
        {7, "splitting round trip", [](Outcome& o) { criterion_splitting(o, false); }},
        {8, "p-groups", criterion_pgroups},
        {9, "nilprogression search", criterion_freiman},
    };
    return all;
}

const std::map<std::string, std::vector<int>>& suites() {
    static const std::map<std::string, std::vector<int>> s{
        {"collection", {1, 2}},   {"basics", {3}},    {"progressions", {4}}, {"decomposition", {5}},
        {"approximate", {6}},     {"splitting", {7}}, {"pgroups", {8}},      {"freiman", {9}},
        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9}},
    };
    return s;
}

CriterionResult run_one(const Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        c.run(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << "error: " << e.what();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return {c.id, c.name, o.pass, o.detail.str(), elapsed.count()};
}

const std::vector<int>& suite_ids(const std::string& suite) {
    auto it = suites().find(suite);
    if (it == suites().end()) throw InvalidParameter("unknown acceptance suite '" + suite + "'");
    return it->second;
}

}  // namespace

std::vector<std::string> acceptance_suites() {
    std::vector<std::string> out;
    for (const auto& [name, _] : suites()) out.push_back(name);
    return out;
}

std::vector<CriterionResult> run_acceptance(const std::string& suite) {
    std::vector<CriterionResult> out;
    for (int id : suite_ids(suite)) out.push_back(run_one(criteria()[static_cast<std::size_t>(id - 1)]));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << r.detail << ") ["
      << r.seconds << "s]";
    return s.str();
}

int run_acceptance(const std::string& suite, std::ostream& out) {
    bool ok = true;
    for (int id : suite_ids(suite)) {
        const auto r = run_one(criteria()[static_cast<std::size_t>(id - 1)]);
        out << format_result(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

}  // namespace nilkit
