#include <gtest/gtest.h>

#include <set>

#include "nilkit/collection.hpp"
#include "nilkit/errors.hpp"
#include "nilkit/groups.hpp"
#include "nilkit/progressions.hpp"
#include "support.hpp"

using namespace nilkit;
using namespace testing_support;

namespace {

const Triple kX{1, 0, 0};
const Triple kY{0, 1, 0};

Triple tpow(Triple x, std::int64_t n) {
    Triple out;
    if (n < 0) {
        x = tinv(x);
        n = -n;
    }
    for (std::int64_t i = 0; i < n; ++i) out = tmul(out, x);
    return out;
}

ProgressionSpec heisenberg_spec(std::int64_t lx, std::int64_t ly) {
    auto g = ut(3);
    return {g, {g->elementary(0, 1), g->elementary(1, 2)}, {lx, ly}};
}

Subset as_subset(const std::set<Triple>& ts) {
    auto g = ut(3);
    std::vector<Element> out;
    for (const auto& t : ts) out.push_back(triple_element(*g, t));
    return Subset(g, out);
}

std::set<Triple> ordered_oracle(std::int64_t lx, std::int64_t ly) {
    std::set<Triple> out;
    for (auto a = -lx; a <= lx; ++a)
        for (auto b = -ly; b <= ly; ++b) out.insert(tmul(tpow(kX, a), tpow(kY, b)));
    return out;
}

// Values of all words in x^{+-1}, y^{+-1} using x at most lx times and y at most ly times.
void words_oracle(const Triple& value, std::int64_t lx, std::int64_t ly, std::set<Triple>& out) {
    out.insert(value);
    if (lx > 0) {
        words_oracle(tmul(value, kX), lx - 1, ly, out);
        words_oracle(tmul(value, tinv(kX)), lx - 1, ly, out);
    }
    if (ly > 0) {
        words_oracle(tmul(value, kY), lx, ly - 1, out);
        words_oracle(tmul(value, tinv(kY)), lx, ly - 1, out);
    }
}

std::set<Triple> nilpotent_oracle(std::int64_t lx, std::int64_t ly) {
    const Triple c = tmul(tmul(tinv(kY), tinv(kX)), tmul(kY, kX));  // [y,x]
    std::set<Triple> out;
    for (auto a = -lx; a <= lx; ++a)
        for (auto b = -ly; b <= ly; ++b)
            for (auto k = -lx * ly; k <= lx * ly; ++k) out.insert(tmul(tmul(tpow(kX, a), tpow(kY, b)), tpow(c, k)));
    return out;
}

std::set<Triple> product_oracle(const std::set<Triple>& a, const std::set<Triple>& b) {
    std::set<Triple> out;
    for (const auto& x : a)
        for (const auto& y : b) out.insert(tmul(x, y));
    return out;
}

}  // namespace

TEST(Ordered, HeisenbergNine) {
    const auto p = enumerate_ordered(heisenberg_spec(1, 1));
    EXPECT_EQ(p.set.size(), 9U);
    EXPECT_EQ(p.set, as_subset(ordered_oracle(1, 1)));
    EXPECT_EQ(p.kind, ProgressionKind::Ordered);
}

TEST(Ordered, IntegersAndWraparound) {
    const auto z = cyclic({0});
    EXPECT_EQ(enumerate_ordered({z, {{Int(1)}}, {2}}).set, interval(z, -2, 2));
    const auto c3 = cyclic({3});
    EXPECT_EQ(enumerate_ordered({c3, {{Int(1)}}, {5}}).set.size(), 3U);
}

TEST(Ordered, SizeBound) {
    std::mt19937_64 rng(1);
    const auto g = ut(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ProgressionSpec spec{g, {random_unitriangular(*g, rng), random_unitriangular(*g, rng)},
                                   {static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(rng() % 3)}};
        EXPECT_LE(enumerate_ordered(spec).set.size(),
                  static_cast<std::size_t>((2 * spec.lengths[0] + 1) * (2 * spec.lengths[1] + 1)));
    }
}

TEST(Nilprogression, HeisenbergThirteen) {
    const auto p = enumerate_nilprogression(heisenberg_spec(1, 1));
    std::set<Triple> oracle;
    words_oracle({}, 1, 1, oracle);
    EXPECT_EQ(oracle.size(), 13U);
    EXPECT_EQ(p.set, as_subset(oracle));
}

TEST(Nilprogression, MatchesWordOracleForLargerLengths) {
    for (auto [lx, ly] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
        std::set<Triple> oracle;
        words_oracle({}, lx, ly, oracle);
        EXPECT_EQ(enumerate_nilprogression(heisenberg_spec(lx, ly)).set, as_subset(oracle)) << lx << "," << ly;
    }
}

TEST(Nilprogression, ZeroLengthsGiveIdentity) {
    EXPECT_TRUE(enumerate_nilprogression(heisenberg_spec(0, 0)).set.is_trivial());
}

TEST(Nilprogression, AbelianEqualsOrdered) {
    const auto g = cyclic({0, 0});
    const ProgressionSpec spec{g, {{Int(1), Int(0)}, {Int(2), Int(3)}}, {2, 3}};
    EXPECT_EQ(enumerate_nilprogression(spec).set, enumerate_ordered(spec).set);
}

TEST(Nilprogression, BudgetEnforced) {
    NilprogressionOptions opts;
    opts.max_total_letters = 3;
    EXPECT_THROW(enumerate_nilprogression(heisenberg_spec(2, 2), opts), ResourceLimit);
}

TEST(Nilpotent, HeisenbergSizes) {
    EXPECT_EQ(enumerate_nilpotent_progression(heisenberg_spec(1, 1)).set, as_subset(nilpotent_oracle(1, 1)));
    EXPECT_EQ(enumerate_nilpotent_progression(heisenberg_spec(1, 1)).set.size(), 27U);
    EXPECT_EQ(enumerate_nilpotent_progression(heisenberg_spec(2, 1)).set.size(), 75U);
    EXPECT_EQ(enumerate_nilpotent_progression(heisenberg_spec(2, 1)).set, as_subset(nilpotent_oracle(2, 1)));
}

TEST(Nilpotent, RankOneEqualsOrdered) {
    const auto g = ut(3);
    const ProgressionSpec spec{g, {g->elementary(0, 1)}, {3}};
    EXPECT_EQ(enumerate_nilpotent_progression(spec).set, enumerate_ordered(spec).set);
}

TEST(Nilpotent, TableMismatchRejected) {
    EXPECT_THROW(enumerate_nilpotent_progression(heisenberg_spec(1, 1), enumerate_basic(3, 2)), InvalidInput);
    EXPECT_THROW(enumerate_nilpotent_progression(heisenberg_spec(1, 1), enumerate_basic(2, 1)), InvalidInput);
}

TEST(Nilpotent, ElementsHaveBoundedCollectedForms) {
    // Every element of P* is a collected product with |l_i| <= L^chi(c_i),
    // since P* sits inside P.
    const auto spec = heisenberg_spec(2, 1);
    const auto star = enumerate_nilprogression(spec).set;
    const auto p = enumerate_nilpotent_progression(spec).set;
    EXPECT_TRUE(star.subset_of(p));
}

TEST(Ball, HeisenbergFive) {
    const auto b = enumerate_ball(heisenberg_spec(1, 1));
    EXPECT_EQ(b.set.size(), 5U);
    EXPECT_TRUE(b.set.is_symmetric());
    EXPECT_TRUE(b.set.contains_identity());
}

TEST(Ball, RankOneEqualsOrdered) {
    const auto g = cyclic({0});
    const ProgressionSpec spec{g, {{Int(2)}}, {3}};
    EXPECT_EQ(enumerate_ball(spec).set, enumerate_ordered(spec).set);
}

TEST(Ball, InsideOrderedForRandomSpecs) {
    std::mt19937_64 rng(2);
    const auto g = ut(4);
    for (int trial = 0; trial < 20; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 3);
        ProgressionSpec spec{g, {}, {}};
        for (int i = 0; i < r; ++i) {
            spec.generators.push_back(random_unitriangular(*g, rng));
            spec.lengths.push_back(1 + static_cast<std::int64_t>(rng() % 2));
        }
        EXPECT_TRUE(enumerate_ball(spec).set.subset_of(enumerate_ordered(spec).set));
    }
}

TEST(CosetProgression, Examples) {
    const auto g = cyclic({6});
    const ProgressionSpec spec{g, {{Int(2)}}, {1}};
    EXPECT_EQ(enumerate_coset_progression(ints(g, {0, 3}), spec).set, Subset::whole(g));
    EXPECT_EQ(enumerate_coset_progression(Subset::identity_only(g), spec).set, enumerate_ordered(spec).set);
    EXPECT_EQ(enumerate_coset_progression(Subset::whole(g), spec).set, Subset::whole(g));
    EXPECT_THROW(enumerate_coset_progression(ints(g, {0, 1}), spec), PreconditionViolation);
    const auto h = ut(3, 2);
    const ProgressionSpec nonabelian{h, {h->elementary(0, 1)}, {1}};
    EXPECT_THROW(enumerate_coset_progression(Subset::identity_only(h), nonabelian), PreconditionViolation);
}

TEST(PowerSet, Examples) {
    const auto z = cyclic({0});
    EXPECT_EQ(power_set(EnumeratedSet{interval(z, -1, 1), ProgressionKind::Ordered}, 3).set, interval(z, -3, 3));
    const auto g = cyclic({12});
    const auto h = ints(g, {0, 4, 8});
    EXPECT_EQ(power_set(EnumeratedSet{h, ProgressionKind::Ordered}, 5).set, h);
    const auto ord = enumerate_ordered(heisenberg_spec(1, 1));
    const auto sq = power_set(ord, 2);
    EXPECT_EQ(sq.set.size(), 55U);
    EXPECT_EQ(sq.set, as_subset(product_oracle(ordered_oracle(1, 1), ordered_oracle(1, 1))));
    EXPECT_EQ(sq.kind, ProgressionKind::Power);
}

TEST(Chain, HeisenbergUnitLengths) {
    const auto report = check_chain(heisenberg_spec(1, 1));
    EXPECT_TRUE(report.ordered_in_star);
    EXPECT_TRUE(report.star_in_nilpotent);
    EXPECT_EQ(report.ordered_size, 9U);
    EXPECT_EQ(report.star_size, 13U);
    EXPECT_EQ(report.nilpotent_size, 27U);
    EXPECT_EQ(report.step, 2);
    // Oracle: least m with P inside P_ord^m by iterated products of triples.
    const auto target = nilpotent_oracle(1, 1);
    const auto base = ordered_oracle(1, 1);
    auto power = base;
    int m = 1;
    while (!std::includes(power.begin(), power.end(), target.begin(), target.end())) {
        power = product_oracle(power, base);
        ++m;
    }
    ASSERT_TRUE(report.minimal_m.has_value());
    EXPECT_EQ(*report.minimal_m, m);
}

TEST(Chain, RankOneAndAbelian) {
    const auto g = ut(3);
    const auto one = check_chain({g, {g->elementary(0, 1)}, {2}});
    EXPECT_EQ(one.ordered_size, one.star_size);
    EXPECT_EQ(one.star_size, one.nilpotent_size);
    EXPECT_EQ(one.minimal_m, 1);
    const auto z = cyclic({0, 0});
    const auto ab = check_chain({z, {{Int(1), Int(0)}, {Int(0), Int(1)}}, {2, 1}});
    EXPECT_EQ(ab.minimal_m, 1);
    EXPECT_TRUE(ab.ordered_in_star && ab.star_in_nilpotent);
}

TEST(Chain, ContainmentsOnRandomSpecs) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
        const bool step_three = trial % 2;
        const auto g = ut(step_three ? 4 : 3);
        const int r = step_three ? 2 : 1 + static_cast<int>(rng() % 3);
        ProgressionSpec spec{g, {}, {}};
        for (int i = 0; i < r; ++i) {
            spec.generators.push_back(random_unitriangular(*g, rng, 1));
            const bool longer = (step_three ? i == 0 : r < 3) && rng() % 2;
            spec.lengths.push_back(longer ? 2 : 1);
        }
        const auto report = check_chain(spec, 3);
        EXPECT_TRUE(report.ordered_in_star) << "trial " << trial;
        EXPECT_TRUE(report.star_in_nilpotent) << "trial " << trial;
        EXPECT_LE(report.ordered_size, report.star_size);
        EXPECT_LE(report.star_size, report.nilpotent_size);
    }
}

TEST(Monotonicity, LargerLengthsNeverShrink) {
    for (std::int64_t lx = 0; lx <= 2; ++lx)
        for (std::int64_t ly = 0; ly <= 1; ++ly) {
            const auto small = heisenberg_spec(lx, ly);
            const auto big = heisenberg_spec(lx + 1, ly);
            EXPECT_TRUE(enumerate_ordered(small).set.subset_of(enumerate_ordered(big).set));
            EXPECT_TRUE(enumerate_nilprogression(small).set.subset_of(enumerate_nilprogression(big).set));
            EXPECT_TRUE(enumerate_nilpotent_progression(small).set.subset_of(enumerate_nilpotent_progression(big).set));
        }
}

// Ordered products are not closed under inversion in a non-abelian group:
// (xy)^-1 = y^-1 x^-1 lies outside {x^a y^b}, and likewise for the
// nilpotent progression.
TEST(Symmetry, OrderedKindsAreNotSymmetricInHeisenberg) {
    for (const auto& p : {enumerate_ordered(heisenberg_spec(1, 1)).set,
                          enumerate_nilpotent_progression(heisenberg_spec(1, 1)).set}) {
        EXPECT_TRUE(p.contains_identity());
        EXPECT_FALSE(p.is_symmetric());
    }
}

TEST(Symmetry, OtherKindsSymmetricWithIdentity) {
    const auto spec = heisenberg_spec(2, 1);
    for (const auto& s : {enumerate_nilprogression(spec).set, enumerate_ball(spec).set}) {
        EXPECT_TRUE(s.is_symmetric());
        EXPECT_TRUE(s.contains_identity());
    }
}

TEST(Spec, Validation) {
    const auto g = ut(3);
    EXPECT_THROW(enumerate_ordered({g, {}, {}}), InvalidInput);
    EXPECT_THROW(enumerate_ordered({g, {g->identity()}, {1, 2}}), InvalidInput);
    EXPECT_THROW(enumerate_ordered({g, {g->identity()}, {-1}}), InvalidInput);
}
