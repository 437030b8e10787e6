#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"
#include "nilkit/homomorphism.hpp"
#include "nilkit/text.hpp"
#include "support.hpp"

using namespace nilkit;
using testing_support::cyclic;
using testing_support::set_of;
using testing_support::ints;
using testing_support::ut;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    auto path = std::filesystem::temp_directory_path() / ("nilkit_test_" + name);
    std::ofstream(path) << contents;
    return path;
}

// Brute-force closure of a set under multiplication.
ElementSet closure(const GroupBackend& g, ElementSet s) {
    s.insert(g.identity());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Element> cur(s.begin(), s.end());
        for (const auto& a : cur)
            for (const auto& b : cur) grew |= s.insert(g.multiply(a, b)).second;
    }
    return s;
}

void check_group_laws(const GroupBackend& g) {
    const auto elems = g.elements();
    const auto e = g.identity();
    for (const auto& a : elems) {
        EXPECT_EQ(g.multiply(a, e), a);
        EXPECT_EQ(g.multiply(e, a), a);
        EXPECT_EQ(g.multiply(a, g.invert(a)), e);
        for (const auto& b : elems)
            for (const auto& c : elems) EXPECT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
    }
}

}  // namespace

TEST(Backend, UnitriangularLaws) {
    check_group_laws(*ut(3, 2));
    check_group_laws(*ut(3, 3));
    EXPECT_EQ(ut(3, 3)->order(), 27U);
    EXPECT_EQ(ut(4, 2)->elements().size(), 64U);
}

TEST(Backend, IntegerMatricesSampledLaws) {
    const auto g = ut(4);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto a = testing_support::random_unitriangular(*g, rng);
        const auto b = testing_support::random_unitriangular(*g, rng);
        const auto c = testing_support::random_unitriangular(*g, rng);
        EXPECT_EQ(g->multiply(g->multiply(a, b), c), g->multiply(a, g->multiply(b, c)));
        EXPECT_EQ(g->multiply(a, g->invert(a)), g->identity());
    }
    EXPECT_FALSE(g->is_finite());
    EXPECT_THROW(g->elements(), UnsupportedBackend);
}

TEST(Backend, HeisenbergMatchesTripleOracle) {
    using namespace testing_support;
    const auto g = ut(3);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        auto r = [&] { return static_cast<std::int64_t>(rng() % 11) - 5; };
        Triple x{r(), r(), r()}, y{r(), r(), r()};
        EXPECT_EQ(g->multiply(triple_element(*g, x), triple_element(*g, y)), triple_element(*g, tmul(x, y)));
        EXPECT_EQ(g->invert(triple_element(*g, x)), triple_element(*g, tinv(x)));
    }
}

TEST(Backend, CyclicAndProductLaws) {
    check_group_laws(*cyclic({6}));
    check_group_laws(*cyclic({2, 3}));
    const auto p = std::make_shared<ProductBackend>(ut(3, 2), cyclic({3}));
    EXPECT_EQ(p->order(), 24U);
    EXPECT_EQ(p->elements().size(), 24U);
    const auto z = cyclic({0});
    EXPECT_FALSE(z->is_finite());
    EXPECT_EQ(z->multiply({Int(3)}, {Int(-5)}), (Element{Int(-2)}));
}

TEST(Backend, TableGroupValidation) {
    check_group_laws(*testing_support::symmetric_group_3());
    EXPECT_THROW(TableGroup({{0, 1}, {0, 1}}), InvalidInput);
    EXPECT_THROW(TableGroup({{0, 1}, {1}}), InvalidInput);
    EXPECT_THROW(TableGroup({{0, 5}, {5, 0}}), InvalidInput);
    EXPECT_THROW(TableGroup({}), InvalidInput);
}

TEST(Backend, TableFromBackendIsIsomorphic) {
    const auto g = ut(3, 2);
    const auto t = TableGroup::from_backend(*g);
    const auto elems = g->elements();
    ASSERT_EQ(t->size(), elems.size());
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b)
            EXPECT_EQ(elems[t->product_index(a, b)], g->multiply(elems[a], elems[b]));
}

TEST(Backend, MatrixTextRoundTrip) {
    const auto g = ut(3, 5);
    const auto e = g->parse("1 2 3\n0 1 4\n0 0 1");
    EXPECT_EQ(g->format(e), "1 2 3 0 1 4 0 0 1");
    EXPECT_EQ(g->parse(g->format(e)), e);
    EXPECT_THROW(g->parse("1 2 3 0 1 4 0 1 1"), InvalidInput);
    EXPECT_THROW(g->parse("1 2"), InvalidInput);
    EXPECT_EQ(g->parse("1 7 3 0 1 4 0 0 1"), g->parse("1 2 3 0 1 4 0 0 1"));
}

TEST(GroupSpec, Parses) {
    EXPECT_EQ(parse_group_spec("ut:3")->spec(), "ut:3");
    EXPECT_EQ(parse_group_spec("ut:3:mod=5")->order(), 125U);
    EXPECT_EQ(parse_group_spec("cyclic:12")->order(), 12U);
    EXPECT_FALSE(parse_group_spec("cyclic:0")->is_finite());
    EXPECT_EQ(parse_group_spec("product:ut:3:mod=2,cyclic:3")->order(), 24U);
    EXPECT_EQ(parse_group_spec("product:cyclic:2,product:cyclic:3,cyclic:5")->order(), 30U);
}

TEST(GroupSpec, Rejects) {
    EXPECT_THROW(parse_group_spec("ut:0"), InvalidParameter);
    EXPECT_THROW(parse_group_spec("ut:3:mod=1"), InvalidParameter);
    EXPECT_THROW(parse_group_spec("ut:3:p=2"), InvalidInput);
    EXPECT_THROW(parse_group_spec("cyclic:x"), InvalidInput);
    EXPECT_THROW(parse_group_spec("product:cyclic:2"), InvalidInput);
    EXPECT_THROW(parse_group_spec("free:2"), InvalidInput);
    EXPECT_THROW(parse_group_spec("table:/nonexistent/file"), InvalidInput);
}

TEST(GroupSpec, TableFile) {
    const auto path = temp_file("c3.table", "# cyclic of order 3\n3\n0 1 2\n1 2 0\n2 0 1\n");
    const auto g = parse_group_spec("table:" + path.string());
    EXPECT_EQ(g->order(), 3U);
    EXPECT_EQ(g->generators().size(), 2U);
    std::filesystem::remove(path);
    EXPECT_THROW(parse_table_text("2\n0 1 1"), InvalidInput);
}

TEST(SetFile, ReadsMatricesAndComments) {
    const auto g = ut(3);
    const auto path = temp_file("set.txt", "# two elements\n1 1 0 0 1 0 0 0 1\n\n1 0 0 0 1 1 0 0 1  # y\n");
    const auto s = read_set_file(g, path.string());
    EXPECT_EQ(s.size(), 2U);
    EXPECT_TRUE(s.contains(g->elementary(0, 1)));
    EXPECT_TRUE(s.contains(g->elementary(1, 2)));
    std::filesystem::remove(path);
    EXPECT_THROW(parse_set_text(g, "1 2 3"), InvalidInput);
}

TEST(Evaluate, HeisenbergCommutator) {
    const auto g = ut(3);
    const std::vector<Element> a{g->elementary(0, 1), g->elementary(1, 2)};
    EXPECT_EQ(evaluate_word(*g, a, parse_word("[x1,x2]")), g->elementary(0, 2));
    EXPECT_EQ(evaluate_word(*g, a, Word(2, 2)), g->identity());
    EXPECT_EQ(evaluate_word(*g, a, parse_word("x1 x1^-1")), g->identity());
    EXPECT_THROW(evaluate_word(*g, {a[0]}, parse_word("x1 x2")), MissingAssignment);
}

TEST(SimpleCommutator, Examples) {
    const auto g = ut(3);
    const auto x = g->elementary(0, 1), y = g->elementary(1, 2);
    EXPECT_EQ(simple_commutator(*g, {x, y}), g->elementary(0, 2));
    EXPECT_EQ(simple_commutator(*g, {x, y, y}), g->identity());
    EXPECT_EQ(simple_commutator(*g, {x, g->identity()}), g->identity());
    EXPECT_THROW(simple_commutator(*g, {x}), InvalidParameter);
}

TEST(CommutatorSet, Examples) {
    const auto g = ut(3, 3);
    const auto x = g->elementary(0, 1), y = g->elementary(1, 2);
    const auto s = commutator_set({set_of(g, {x, g->multiply(x, x)}), set_of(g, {y})});
    EXPECT_EQ(s, set_of(g, {g->elementary(0, 2, 1), g->elementary(0, 2, 2)}));
    EXPECT_TRUE(commutator_set({set_of(g, {x, y}), Subset::identity_only(g)}).is_trivial());
    const auto h = ut(3, 2);
    EXPECT_EQ(commutator_set({Subset::whole(h), Subset::whole(h)}), set_of(h, {h->identity(), h->elementary(0, 2)}));
    EXPECT_THROW(commutator_set({Subset::whole(h)}), InvalidParameter);
}

TEST(LowerCentralSeries, UT3Mod2) {
    const auto g = ut(3, 2);
    const auto chain = lower_central_series(g);
    ASSERT_TRUE(chain.step.has_value());
    EXPECT_EQ(*chain.step, 2);
    ASSERT_GE(chain.terms.size(), 3U);
    EXPECT_EQ(chain.terms[0].size(), 8U);
    EXPECT_EQ(chain.terms[1], set_of(g, {g->identity(), g->elementary(0, 2)}));
    EXPECT_TRUE(chain.terms[2].is_trivial());
}

TEST(LowerCentralSeries, AbelianAndUT4) {
    const auto c = lower_central_series(cyclic({6}));
    EXPECT_EQ(c.step, 1);
    EXPECT_TRUE(c.terms[1].is_trivial());
    const auto u = lower_central_series(ut(4, 2));
    EXPECT_EQ(u.step, 3);
    EXPECT_THROW(lower_central_series(ut(3)), UnsupportedBackend);
}

TEST(LowerCentralSeries, TermsAreNormalAndContainCommutators) {
    for (const auto& g : std::vector<BackendPtr>{ut(3, 3), ut(4, 2), testing_support::symmetric_group_3()}) {
        const auto chain = lower_central_series(g);
        for (const auto& t : chain.terms) {
            EXPECT_TRUE(is_subgroup(t));
            EXPECT_TRUE(is_normal(t));
        }
        // Brute-force oracle for Gamma_2 = <[a,b]>.
        ElementSet comms;
        const auto elems = g->elements();
        for (const auto& a : elems)
            for (const auto& b : elems) comms.insert(commutator(*g, a, b));
        EXPECT_EQ(Subset(g, closure(*g, comms)), chain.terms[1]);
    }
}

TEST(LowerCentralSeries, WeightNCommutatorsLieInGammaN) {
    const auto g = ut(4, 2);
    const auto chain = lower_central_series(g);
    std::mt19937_64 rng(4);
    const auto elems = g->elements();
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto c = testing_support::random_commutator(rng, 3, n);
            std::vector<Element> a;
            for (int i = 0; i < 3; ++i) a.push_back(elems[rng() % elems.size()]);
            const auto v = evaluate_commutator(*g, a, c);
            const auto& gamma = chain.terms[std::min<std::size_t>(static_cast<std::size_t>(n - 1), chain.terms.size() - 1)];
            EXPECT_TRUE(gamma.contains(v));
        }
    }
}

TEST(LowerCentralSeries, SymmetricGroupIsNotNilpotent) {
    const auto chain = lower_central_series(testing_support::symmetric_group_3());
    EXPECT_FALSE(chain.step.has_value());
    EXPECT_EQ(chain.terms.back().size(), 3U);
}

TEST(NilpotencyStep, Examples) {
    const auto g = ut(3);
    const auto x = set_of(g, {g->elementary(0, 1), g->elementary(1, 2)});
    EXPECT_EQ(nilpotency_step(x), 2);
    EXPECT_EQ(nilpotency_step(set_of(g, {g->elementary(0, 1)})), 1);
    const auto s3 = testing_support::symmetric_group_3();
    EXPECT_FALSE(nilpotency_step(Subset::whole(s3)).has_value());
    EXPECT_EQ(nilpotency_step(Subset::whole(ut(4, 3))), 3);
}

TEST(Sylow, CyclicSix) {
    const auto g = cyclic({6});
    const auto parts = sylow_decomposition(g);
    ASSERT_EQ(parts.size(), 2U);
    EXPECT_EQ(parts[0].prime, 2);
    EXPECT_EQ(parts[0].subgroup, ints(g, {0, 3}));
    EXPECT_EQ(parts[1].prime, 3);
    EXPECT_EQ(parts[1].subgroup, ints(g, {0, 2, 4}));
}

TEST(Sylow, ProductCases) {
    const auto a = cyclic({4, 3});
    const auto parts = sylow_decomposition(a);
    ASSERT_EQ(parts.size(), 2U);
    EXPECT_EQ(parts[0].subgroup.size(), 4U);
    for (const auto& e : parts[0].subgroup) EXPECT_EQ(e[1], 0);
    EXPECT_EQ(parts[1].subgroup.size(), 3U);
    for (const auto& e : parts[1].subgroup) EXPECT_EQ(e[0], 0);

    const auto p = std::make_shared<ProductBackend>(ut(3, 2), cyclic({3}));
    const auto q = sylow_decomposition(p);
    ASSERT_EQ(q.size(), 2U);
    EXPECT_EQ(q[0].subgroup.size(), 8U);
    EXPECT_EQ(q[1].subgroup.size(), 3U);
    // Element-order oracle.
    std::map<std::int64_t, std::size_t> by_order;
    for (const auto& e : p->elements()) ++by_order[element_order(*p, e)];
    EXPECT_EQ(by_order[1] + by_order[2] + by_order[4], 8U);
    EXPECT_EQ(by_order[3], 2U);
}

TEST(Sylow, RejectsNonNilpotent) {
    EXPECT_THROW(sylow_decomposition(testing_support::symmetric_group_3()), PreconditionViolation);
}

TEST(Subgroups, GenerationAndPowers) {
    const auto g = cyclic({12});
    EXPECT_EQ(generated_subgroup(g, {{Int(8)}}), ints(g, {0, 4, 8}));
    const auto a = ints(g, {-1, 0, 1});
    EXPECT_EQ(power_set(a, 2), ints(g, {-2, -1, 0, 1, 2}));
    EXPECT_EQ(product_set(ints(g, {0, 1}), ints(g, {0, 3})), ints(g, {0, 1, 3, 4}));
    EXPECT_THROW(product_set(Subset::whole(g), Subset::whole(g), 5), ResourceLimit);
    EXPECT_TRUE(is_subgroup(ints(g, {0, 6})));
    EXPECT_FALSE(is_subgroup(ints(g, {0, 5})));
}

TEST(SubsetFlags, Consistent) {
    const auto g = cyclic({7});
    const auto a = ints(g, {0, 1, 6});
    EXPECT_TRUE(a.is_symmetric());
    EXPECT_TRUE(a.contains_identity());
    const auto b = ints(g, {1, 2});
    EXPECT_FALSE(b.is_symmetric());
    EXPECT_FALSE(b.contains_identity());
    EXPECT_EQ(b.symmetrized(), ints(g, {0, 1, 2, 5, 6}));
}

TEST(Quotient, CyclicByCyclic) {
    const auto g = cyclic({12});
    const auto q = quotient_by(g, ints(g, {0, 4, 8}));
    EXPECT_EQ(q.group->size(), 4U);
    for (const auto& a : g->elements())
        for (const auto& b : g->elements()) EXPECT_EQ(q.map(g->multiply(a, b)), q.group->multiply(q.map(a), q.map(b)));
    EXPECT_THROW(quotient_by(g, ints(g, {0, 5})), PreconditionViolation);
}

TEST(Quotient, RejectsNonNormal) {
    const auto s3 = testing_support::symmetric_group_3();
    const auto elems = s3->elements();
    // An element of order two generates a non-normal subgroup.
    for (const auto& e : elems) {
        if (e != s3->identity() && s3->multiply(e, e) == s3->identity()) {
            EXPECT_THROW(quotient_by(s3, generated_subgroup(s3, {e})), PreconditionViolation);
            break;
        }
    }
}

TEST(Homomorphism, ReductionAndAbelianization) {
    const auto z = cyclic({0});
    const auto rho = reduction_map(z, 3);
    EXPECT_EQ(rho({Int(-4)}), (Element{Int(2)}));
    EXPECT_THROW(rho.preimage(set_of(rho.target(), {Element{Int(1)}})), UnsupportedBackend);
    const auto finite = reduction_map(cyclic({12}), 4);
    EXPECT_EQ(finite.preimage(set_of(finite.target(), {Element{Int(1)}})), ints(finite.source(), {1, 5, 9}));
    const auto h = ut(3, 3);
    const auto ab = abelianization_map(h);
    EXPECT_TRUE(ab.verify_multiplicative());
    EXPECT_EQ(ab.image(Subset::whole(h)).size(), 9U);
    EXPECT_THROW(reduction_map(cyclic({6}), 4), PreconditionViolation);
}
