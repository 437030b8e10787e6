#include <gtest/gtest.h>

#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"
#include "nilkit/pgroups.hpp"
#include "support.hpp"

using namespace nilkit;
using namespace testing_support;

namespace {

Element pair(std::int64_t a, std::int64_t b) { return {Int(a), Int(b)}; }

// Smallest k such that some k elements generate the group.
int brute_rank(const BackendPtr& g) {
    const auto elems = g->elements();
    const auto n = elems.size();
    if (n == 1) return 0;
    for (int k = 1; k <= 6; ++k) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        while (true) {
            std::vector<Element> gens;
            for (auto i : idx) gens.push_back(elems[i]);
            if (generated_subgroup(g, gens).size() == n) return k;
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == n) idx[pos++] = 0;
            if (pos == idx.size()) break;
        }
    }
    return -1;
}

}  // namespace

TEST(Rank, Examples) {
    EXPECT_EQ(abelian_rank(*cyclic({4, 2})), 2);
    EXPECT_EQ(abelian_rank(*cyclic({9})), 1);
    EXPECT_EQ(abelian_rank(*cyclic({3, 3, 3})), 3);
    EXPECT_EQ(invariant_factors(*cyclic({4, 2})), (std::vector<std::int64_t>{2, 4}));
    EXPECT_EQ(invariant_factors(*cyclic({2, 3})), (std::vector<std::int64_t>{6}));
}

TEST(Rank, MatchesExhaustiveSearch) {
    for (const auto& moduli : std::vector<std::vector<std::int64_t>>{
             {2}, {4, 2}, {2, 2, 2}, {8, 4}, {3, 9}, {6, 4}, {12}, {2, 6}, {5, 5}}) {
        const auto g = cyclic(moduli);
        EXPECT_EQ(abelian_rank(*g), brute_rank(g)) << g->spec();
    }
}

TEST(Rank, RejectsNonAbelian) { EXPECT_THROW(abelian_rank(*ut(3, 2)), PreconditionViolation); }

TEST(SubgroupRank, Examples) {
    const auto g = cyclic({4, 2});
    const auto h = set_of(g, {pair(0, 0), pair(2, 0), pair(0, 1), pair(2, 1)});
    EXPECT_EQ(abelian_rank(h), 2);
    EXPECT_TRUE(verify_subgroup_rank(h));
    EXPECT_EQ(abelian_rank(Subset::identity_only(g)), 0);
    EXPECT_TRUE(verify_subgroup_rank(Subset::identity_only(g)));
    EXPECT_TRUE(verify_subgroup_rank(Subset::whole(g)));
}

TEST(SubgroupRank, AllSubgroupsOfSmallGroups) {
    for (const auto& moduli : std::vector<std::vector<std::int64_t>>{{4, 2}, {2, 2, 2}, {8, 2}, {9, 3}}) {
        const auto g = cyclic(moduli);
        const auto r = abelian_rank(*g);
        for (const auto& e : g->elements())
            for (const auto& f : g->elements()) {
                const auto h = generated_subgroup(g, {e, f});
                EXPECT_LE(abelian_rank(h), r);
                EXPECT_TRUE(verify_subgroup_rank(h));
            }
    }
}

TEST(Frattini, Examples) {
    const auto a = cyclic({4, 2});
    EXPECT_EQ(frattini(a), set_of(a, {pair(0, 0), pair(2, 0)}));
    EXPECT_TRUE(frattini(cyclic({3, 3})).is_trivial());
    const auto h = ut(3, 2);
    EXPECT_EQ(frattini(h), set_of(h, {h->identity(), h->elementary(0, 2)}));
    EXPECT_THROW(frattini(cyclic({6})), PreconditionViolation);
}

TEST(Frattini, MatchesClosureOracle) {
    for (const auto& named : small_p_groups()) {
        const auto& g = named.group;
        const auto p = *prime_of_p_group(*g);
        std::vector<Element> gens;
        for (const auto& x : g->elements()) {
            gens.push_back(power(*g, x, p));
            for (const auto& y : g->elements()) gens.push_back(commutator(*g, x, y));
        }
        const auto phi = frattini(g);
        EXPECT_EQ(phi, generated_subgroup(g, gens)) << named.name;
        EXPECT_TRUE(is_normal(phi));
    }
}

TEST(Burnside, BasisExample) {
    const auto g = cyclic({4, 2});
    const auto s = burnside_basis(g, {pair(1, 0), pair(1, 1), pair(0, 1)});
    EXPECT_EQ(s, (std::vector<Element>{pair(0, 1), pair(1, 0)}));
    EXPECT_EQ(generated_subgroup(g, s).size(), 8U);
}

TEST(Burnside, AlreadyMinimal) {
    const auto g = cyclic({4, 2});
    const std::vector<Element> s{pair(0, 1), pair(1, 0)};
    EXPECT_EQ(burnside_basis(g, s), s);
}

TEST(Burnside, NotAPGroup) {
    const auto g = cyclic({6});
    EXPECT_THROW(burnside_basis(g, {{Int(2)}, {Int(3)}}), PreconditionViolation);
}

TEST(Burnside, NotGenerating) {
    const auto g = cyclic({4, 2});
    EXPECT_THROW(burnside_basis(g, {pair(2, 0)}), PreconditionViolation);
}

TEST(Burnside, BasisSizeIsFrattiniDimension) {
    for (const auto& named : small_p_groups()) {
        const auto& g = named.group;
        const auto all = g->elements();
        const auto basis = burnside_basis(g, all);
        EXPECT_EQ(generated_subgroup(g, basis).size(), all.size()) << named.name;
        const auto p = *prime_of_p_group(*g);
        const auto phi = frattini(g);
        std::size_t quotient = all.size() / phi.size(), expected = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) expected *= static_cast<std::size_t>(p);
        EXPECT_EQ(quotient, expected) << named.name;
    }
}

TEST(Burnside, PropertyAgainstGenerationOracle) {
    for (const auto& g : std::vector<BackendPtr>{cyclic({4, 2}), ut(3, 2), dihedral_group(4), quaternion_group(2)}) {
        const auto phi = frattini(g);
        const auto elems = g->elements();
        for (std::uint32_t mask = 0; mask < (1U << elems.size()); ++mask) {
            std::vector<Element> s;
            for (std::size_t i = 0; i < elems.size(); ++i)
                if ((mask >> i) & 1U) s.push_back(elems[i]);
            const bool generates = generated_subgroup(g, s).size() == elems.size();
            std::vector<Element> with_phi = s;
            with_phi.insert(with_phi.end(), phi.begin(), phi.end());
            const bool spans = generated_subgroup(g, with_phi).size() == elems.size();
            EXPECT_EQ(generates, spans);
            EXPECT_TRUE(burnside_property_holds(g, phi, s));
        }
    }
}

TEST(SmallGroups, CorpusIsPGroups) {
    const auto corpus = small_p_groups();
    EXPECT_GE(corpus.size(), 40U);
    for (const auto& named : corpus) {
        ASSERT_TRUE(named.group->order().has_value());
        EXPECT_LE(*named.group->order(), 32U);
        EXPECT_TRUE(prime_of_p_group(*named.group).has_value()) << named.name;
    }
    EXPECT_EQ(dihedral_group(4)->size(), 8U);
    EXPECT_EQ(quaternion_group(2)->size(), 8U);
    EXPECT_FALSE(is_abelian(*quaternion_group(2)));
}

TEST(UnionSpan, Axes) {
    const auto g = cyclic({3, 3});
    const auto x = set_of(g, {pair(0, 0), pair(1, 0), pair(2, 0), pair(0, 1), pair(0, 2)});
    const auto r = union_subgroups_span(x);
    EXPECT_EQ(r.r, 2);
    EXPECT_EQ(r.span, Subset::whole(g));
    EXPECT_EQ(r.power, Subset::whole(g));
    EXPECT_TRUE(r.contained);
}

TEST(UnionSpan, SingleSubgroup) {
    const auto g = cyclic({8});
    const auto h = ints(g, {0, 2, 4, 6});
    for (int r = 1; r <= 3; ++r) {
        const auto rep = union_subgroups_span(h, r);
        EXPECT_EQ(rep.span, h);
        EXPECT_TRUE(rep.contained);
    }
}

TEST(UnionSpan, CyclicSixCounterexample) {
    const auto g = cyclic({6});
    const auto x = ints(g, {0, 2, 4, 3});
    EXPECT_THROW(union_subgroups_span(x), PreconditionViolation);
    const auto rep = union_subgroups_span_unchecked(x, 1);
    EXPECT_FALSE(rep.power.contains({Int(1)}));
    EXPECT_EQ(rep.span, Subset::whole(g));
    EXPECT_FALSE(rep.contained);
}

TEST(UnionSpan, RejectsNonUnion) {
    const auto g = cyclic({9});
    EXPECT_THROW(union_subgroups_span(ints(g, {0, 1})), PreconditionViolation);
}

TEST(UnionSpan, RandomUnionsOfCyclicSubgroups) {
    std::mt19937_64 rng(12);
    for (const auto& moduli : std::vector<std::vector<std::int64_t>>{{4, 2}, {2, 2, 2}, {9, 3}, {8, 4}}) {
        const auto g = cyclic(moduli);
        const auto elems = g->elements();
        for (int trial = 0; trial < 8; ++trial) {
            Subset x = Subset::identity_only(g);
            for (int k = 0; k < 3; ++k) x = x.unite(generated_subgroup(g, {elems[rng() % elems.size()]}));
            const auto rep = union_subgroups_span(x);
            EXPECT_TRUE(rep.contained) << g->spec();
        }
    }
}

TEST(MultiHom, HeisenbergCommutatorImageIsCentre) {
    const auto phi = heisenberg_abelianized_commutator_map(3);
    EXPECT_TRUE(phi.verify_multilinear());
    const auto rep = multihom_image_span(phi);
    EXPECT_EQ(rep.image.size(), 3U);
    EXPECT_EQ(rep.span, rep.image);
    EXPECT_TRUE(rep.contained);
    EXPECT_EQ(rep.r, 1);
}

TEST(MultiHom, CommutatorMapsAreBilinear) {
    for (std::int64_t p : {2, 3, 5}) {
        const auto phi = heisenberg_commutator_map(p);
        EXPECT_TRUE(phi.verify_multilinear()) << p;
        EXPECT_TRUE(multihom_image_span(phi).contained) << p;
    }
}

TEST(MultiHom, TrivialImage) {
    const auto s = cyclic({4});
    const auto t = cyclic({2});
    const MultiHom phi({s, s}, t, [t](const std::vector<Element>&) { return t->identity(); });
    EXPECT_TRUE(phi.verify_multilinear());
    const auto rep = multihom_image_span(phi);
    EXPECT_TRUE(rep.image.is_trivial());
    EXPECT_TRUE(rep.contained);
}

TEST(MultiHom, NonBilinearDetected) {
    const auto s = cyclic({3});
    const MultiHom phi({s, s}, s, [](const std::vector<Element>& v) { return Element{v[0][0] + v[1][0]}; });
    EXPECT_FALSE(phi.verify_multilinear());
}

TEST(MultiHom, FromTable) {
    const auto s = cyclic({2});
    std::map<std::vector<Element>, Element> table;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) table[{{Int(a)}, {Int(b)}}] = {Int(a * b)};
    const auto phi = MultiHom::from_table({s, s}, s, table);
    EXPECT_TRUE(phi.verify_multilinear());
    EXPECT_EQ(phi({{Int(1)}, {Int(1)}}), (Element{Int(1)}));
}

TEST(Factoring, MixedPrimeBilinearMap) {
    const auto src = cyclic({2, 3});
    const auto tgt = cyclic({6});
    const MultiHom phi({src, src}, tgt, [](const std::vector<Element>& v) {
        return Element{3 * v[0][0] * v[1][0] + 2 * v[0][1] * v[1][1]};
    });
    EXPECT_TRUE(phi.verify_multilinear());
    const auto rep = verify_primary_factoring(phi);
    EXPECT_TRUE(rep.factoring);
    EXPECT_TRUE(rep.p_components);
    EXPECT_EQ(rep.tuples, 36U);
    EXPECT_EQ(rep.primes, (std::vector<std::int64_t>{2, 3}));
}

TEST(Factoring, PrimaryComponentsMultiplyBack) {
    const auto g = cyclic({12});
    for (const auto& u : g->elements()) {
        const auto u2 = primary_component(*g, u, 2);
        const auto u3 = primary_component(*g, u, 3);
        EXPECT_EQ(g->multiply(u2, u3), u);
        EXPECT_EQ(12 % element_order(*g, u2) == 0 && element_order(*g, u2) % 3 != 0, true);
        EXPECT_EQ(element_order(*g, u3) % 2 != 0, true);
    }
}

TEST(Induced, HeisenbergModThree) {
    const auto phi = heisenberg_commutator_map(3);
    const auto g = phi.sources()[0];
    const auto gamma2 = lower_central_series(g).terms[1];
    const auto induced = induced_multihom(phi, {gamma2, gamma2});
    EXPECT_TRUE(induced.well_defined);
    EXPECT_EQ(induced.table_size, 81U);
    EXPECT_EQ(induced.quotients[0].group->size(), 9U);
    EXPECT_TRUE(induced.psi.verify_multilinear());
    // Exhaustive representative check against the original map.
    for (const auto& x : g->elements())
        for (const auto& y : g->elements())
            EXPECT_EQ(induced.psi({induced.quotients[0].map(x), induced.quotients[1].map(y)}), phi({x, y}));
    EXPECT_TRUE(verify_induced_image(phi, induced, {Subset::whole(g), Subset::whole(g)}));
}

TEST(Induced, ConstantMapGivesZero) {
    const auto s = cyclic({4});
    const auto t = cyclic({2});
    const MultiHom phi({s, s}, t, [t](const std::vector<Element>&) { return t->identity(); });
    const auto induced = induced_multihom(phi, {Subset::whole(s), Subset::whole(s)});
    EXPECT_TRUE(induced.well_defined);
    EXPECT_TRUE(induced.psi.image().is_trivial());
}

TEST(Induced, RejectsNontrivialOnSlot) {
    const auto phi = heisenberg_commutator_map(3);
    const auto g = phi.sources()[0];
    EXPECT_THROW(induced_multihom(phi, {Subset::whole(g), Subset::identity_only(g)}), PreconditionViolation);
}
