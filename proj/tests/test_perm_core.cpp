#include <doctest.h>

#include <algorithm>
#include <cstdint>

#include "test_util.hpp"
#include "wilf/permutation.hpp"

using namespace wilf;
using testutil::P;

TEST_CASE("containment worked examples") {
    CHECK(contains(P("123"), P("31524")));
    CHECK(contains(P("213"), P("31524")));
    CHECK_FALSE(contains(P("321"), P("31524")));
    CHECK(contains(Permutation{}, P("31524")));
    CHECK(contains(Permutation{}, Permutation{}));
    CHECK(contains(P("2143"), P("2143")));
    CHECK_FALSE(contains(P("2143"), P("2134")));
}

TEST_CASE("containment agrees with the exhaustive oracle") {
    auto patterns = testutil::all_permutations_up_to(4);
    auto texts = testutil::all_permutations_up_to(6);
    for (const auto& p : patterns)
        for (const auto& t : texts)
            CHECK(contains(p, t) == testutil::contains_exhaustive(p, t));
}

TEST_CASE("containment is a partial order on sizes <= 6") {
    auto perms = testutil::all_permutations_up_to(6);
    const size_t n = perms.size();
    const size_t stride = (n + 63) / 64;
    std::vector<std::uint64_t> rows(n * stride, 0);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (contains(perms[a], perms[b])) {
                rows[a * stride + b / 64] |= std::uint64_t{1} << (b % 64);
                // size comparison: strict unless equal
                CHECK(perms[a].size() <= perms[b].size());
                if (perms[a].size() == perms[b].size()) CHECK(perms[a] == perms[b]);
            }
    // reflexive
    for (size_t a = 0; a < n; ++a) {
        bool refl = (rows[a * stride + a / 64] >> (a % 64)) & 1;
        CHECK(refl);
    }
    // transitive: b in row(a) implies row(b) subset of row(a)
    bool transitive = true;
    for (size_t a = 0; a < n && transitive; ++a)
        for (size_t b = 0; b < n && transitive; ++b) {
            if (!((rows[a * stride + b / 64] >> (b % 64)) & 1)) continue;
            for (size_t w = 0; w < stride; ++w)
                if (rows[b * stride + w] & ~rows[a * stride + w]) {
                    transitive = false;
                    break;
                }
        }
    CHECK(transitive);
}

TEST_CASE("sums and skew sums") {
    CHECK(sum(P("231"), P("2413")) == P("2315746"));
    CHECK(sum(P("1"), P("1")) == P("12"));
    CHECK(skew_sum(P("1"), P("1")) == P("21"));
    CHECK(sum(Permutation{}, P("21")) == P("21"));
    CHECK(sum(P("21"), Permutation{}) == P("21"));
    // associativity spot check
    CHECK(sum(sum(P("21"), P("1")), P("12")) == sum(P("21"), sum(P("1"), P("12"))));
}

TEST_CASE("sum decomposition") {
    auto parts = sum_decompose(P("2315746"));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == P("231"));
    CHECK(parts[1] == P("2413"));

    parts = sum_decompose(P("123"));
    REQUIRE(parts.size() == 3);
    for (const auto& q : parts) CHECK(q == P("1"));

    parts = sum_decompose(P("2143"));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == P("21"));
    CHECK(parts[1] == P("21"));
    for (const auto& q : parts) CHECK(is_sum_indecomposable(q));

    CHECK(sum_decompose(Permutation{}).empty());
}

TEST_CASE("sum decomposition inverts sums and components are indecomposable") {
    auto perms = testutil::all_permutations_up_to(5);
    for (const auto& a : perms)
        for (const auto& b : perms) {
            auto whole = sum_decompose(sum(a, b));
            auto left = sum_decompose(a);
            auto right = sum_decompose(b);
            left.insert(left.end(), right.begin(), right.end());
            CHECK(whole == left);
            Permutation back;
            for (const auto& q : whole) {
                CHECK(is_sum_indecomposable(q));
                back = sum(back, q);
            }
            CHECK(back == sum(a, b));
        }
}

TEST_CASE("indecomposability") {
    CHECK(is_sum_indecomposable(P("21")));
    CHECK_FALSE(is_sum_indecomposable(P("12")));
    CHECK(is_sum_indecomposable(P("2413")));
    CHECK(is_sum_indecomposable(P("1")));
    CHECK_THROWS_AS(is_sum_indecomposable(Permutation{}), std::invalid_argument);
}

TEST_CASE("symmetries") {
    CHECK(Symmetry::reverse(P("231")) == P("132"));
    CHECK(Symmetry::complement.then(Symmetry::reverse)(P("2143")) == P("2143"));
    CHECK(Symmetry::inverse(P("312")) == P("231"));
    CHECK(Symmetry::inverse(P("2143")) == P("2143"));

    auto group = dihedral_group();
    REQUIRE(group.size() == 8);
    CHECK(group[0] == Symmetry::identity);
    // each element is an involution or has its inverse in the group
    for (const auto& g : group) {
        bool has_inverse = false;
        for (const auto& h : group)
            if (g.then(h) == Symmetry::identity) has_inverse = true;
        CHECK(has_inverse);
    }
}

TEST_CASE("symmetries are containment isomorphisms on sizes <= 5") {
    auto perms = testutil::all_permutations_up_to(5);
    for (const auto& g : dihedral_group())
        for (const auto& a : perms)
            for (const auto& b : perms)
                CHECK(contains(a, b) == contains(g(a), g(b)));
}

TEST_CASE("deletions") {
    CHECK(deletions(P("21")) == std::set<Permutation>{P("1")});
    CHECK(deletions(P("123")) == std::set<Permutation>{P("12")});
    CHECK(deletions(P("2413")) ==
          std::set<Permutation>{P("231"), P("312"), P("213"), P("132")});
    CHECK_THROWS_AS(deletions(Permutation{}), std::invalid_argument);
}

TEST_CASE("every indecomposable of size 2..7 has an indecomposable deletion") {
    for (int n = 2; n <= 7; ++n)
        for (const auto& p : testutil::all_permutations(n)) {
            if (!is_sum_indecomposable(p)) continue;
            bool found = false;
            for (const auto& q : deletions(p))
                if (is_sum_indecomposable(q)) found = true;
            CHECK(found);
        }
}

TEST_CASE("parsing and printing") {
    CHECK(P("2315746").str() == "2315746");
    CHECK(Permutation::parse("10 3 2 1 4 5 6 7 8 9").size() == 10);
    CHECK(Permutation::parse("10 3 2 1 4 5 6 7 8 9").str() == "10 3 2 1 4 5 6 7 8 9");
    CHECK(Permutation::parse("").empty());
    CHECK_THROWS_AS(Permutation::parse("122"), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::parse("13"), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::parse("1 2 x"), std::invalid_argument);
}
