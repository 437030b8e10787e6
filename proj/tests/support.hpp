#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "nilkit/backend.hpp"
#include "nilkit/commutator.hpp"
#include "nilkit/subset.hpp"
#include "nilkit/word.hpp"

namespace testing_support {

using nilkit::Element;
using nilkit::FormalCommutator;
using nilkit::Int;

inline std::shared_ptr<nilkit::UnitriangularBackend> ut(int n, std::optional<std::int64_t> mod = std::nullopt) {
    return std::make_shared<nilkit::UnitriangularBackend>(n, mod);
}

inline std::shared_ptr<nilkit::CyclicProduct> cyclic(std::vector<std::int64_t> moduli) {
    return std::make_shared<nilkit::CyclicProduct>(std::move(moduli));
}

inline Element scalar(std::int64_t v) { return {Int(v)}; }

inline nilkit::Subset ints(const nilkit::BackendPtr& g, std::vector<std::int64_t> values) {
    std::vector<Element> out;
    for (auto v : values) out.push_back(g->normalize({Int(v)}));
    return nilkit::Subset(g, std::move(out));
}

inline nilkit::Subset set_of(const nilkit::BackendPtr& g, std::vector<Element> elements) {
    return nilkit::Subset(g, std::move(elements));
}

inline nilkit::Subset interval(const nilkit::BackendPtr& g, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> v;
    for (auto x = lo; x <= hi; ++x) v.push_back(x);
    return ints(g, v);
}

inline Element random_unitriangular(const nilkit::UnitriangularBackend& g, std::mt19937_64& rng, int spread = 3) {
    std::uniform_int_distribution<int> d(-spread, spread);
    Element raw(g.entry_count());
    for (auto& v : raw) v = d(rng);
    return g.normalize(raw);
}

inline std::vector<int> random_letters(std::mt19937_64& rng, int rank, std::size_t length) {
    std::vector<int> out;
    for (std::size_t i = 0; i < length; ++i) {
        int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rank));
        out.push_back(rng() % 2 ? l : -l);
    }
    return out;
}

// Random formal commutator of the given weight over letters 1..rank.
inline FormalCommutator random_commutator(std::mt19937_64& rng, int rank, int weight) {
    if (weight == 1) return FormalCommutator::letter(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rank)));
    const int left = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(weight - 1));
    return FormalCommutator::bracket(random_commutator(rng, rank, left), random_commutator(rng, rank, weight - left));
}

// Heisenberg group as integer triples with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
struct Triple {
    std::int64_t a = 0, b = 0, c = 0;
    friend bool operator<(const Triple& x, const Triple& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    }
    friend bool operator==(const Triple&, const Triple&) = default;
};

inline Triple tmul(const Triple& x, const Triple& y) { return {x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b}; }
inline Triple tinv(const Triple& x) { return {-x.a, -x.b, -x.c + x.a * x.b}; }

// The matrix element of UT(3, Z) for a triple.
inline Element triple_element(const nilkit::UnitriangularBackend& g, const Triple& t) {
    Element e = g.identity();
    e[g.index(0, 1)] = t.a;
    e[g.index(1, 2)] = t.b;
    e[g.index(0, 2)] = t.c;
    return e;
}

// Independent Moebius function and Witt count.
inline int moebius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

inline std::int64_t witt(int r, int n) {
    std::int64_t total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        std::int64_t power = 1;
        for (int i = 0; i < n / d; ++i) power *= r;
        total += moebius(d) * power;
    }
    return total / n;
}

// Symmetric group S_3 as a multiplication table (permutations composed left to right).
inline std::shared_ptr<nilkit::TableGroup> symmetric_group_3() {
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            std::vector<int> q(3);
            for (int k = 0; k < 3; ++k) q[static_cast<std::size_t>(k)] = perms[j][static_cast<std::size_t>(perms[i][static_cast<std::size_t>(k)])];
            table[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), q) - perms.begin());
        }
    return std::make_shared<nilkit::TableGroup>(table, "S3");
}

}  // namespace testing_support
