#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rrc/identities.hpp"
#include "rrc/partitions.hpp"

using namespace rrc;

namespace {

// Strict partitions of size <= max_size from subsets of {1..max_size}.
std::vector<std::vector<int>> brute_strict(int max_size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> go = [&](int next, int room) {
        out.push_back(cur);
        for (int p = std::min(next, room); p >= 1; --p) {
            cur.push_back(p);
            go(p - 1, room - p);
            cur.pop_back();
        }
    };
    go(max_size, max_size);
    return out;
}

int sum(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
}

// All k-tuples of strict partitions of total size <= max_size, filtered by
// the defining inequality l(lambda^i) >= (lambda^{i+1})_1.
std::vector<std::vector<std::vector<int>>> brute_Sk(int k, int max_size) {
    const auto strict = brute_strict(max_size);
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> go = [&](int room) {
        if (static_cast<int>(cur.size()) == k) {
            for (std::size_t a = 0; a + 1 < cur.size(); ++a) {
                const int first = cur[a + 1].empty() ? 0 : cur[a + 1][0];
                if (static_cast<int>(cur[a].size()) < first) return;
            }
            out.push_back(cur);
            return;
        }
        for (const auto& p : strict) {
            if (sum(p) > room) continue;
            cur.push_back(p);
            go(room - sum(p));
            cur.pop_back();
        }
    };
    go(max_size);
    return out;
}

std::vector<std::vector<int>> as_lists(const MultiPartition& b) {
    std::vector<std::vector<int>> out;
    for (const auto& c : b.components) out.push_back(c.parts());
    return out;
}

}  // namespace

TEST_CASE("partition validation") {
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
    CHECK_NOTHROW(Partition({2, 2, 1}));
    CHECK_THROWS_AS(StrictPartition({2, 2}), std::invalid_argument);
    CHECK(Partition({3, 1}).size() == 4);
    CHECK(Partition().first() == 0);
    CHECK(Partition().length() == 0);
}

TEST_CASE("partitions in a box") {
    const auto box = partitions_in_box(2, 2);
    std::set<std::vector<int>> got;
    for (const auto& p : box) got.insert(p.parts());
    CHECK(got == std::set<std::vector<int>>{{}, {1}, {2}, {1, 1}, {2, 1}, {2, 2}});
    CHECK(box.size() == 6);
    CHECK(partitions_in_box(0, 5).size() == 1);
    CHECK(partitions_in_box(5, 0).size() == 1);
    // Count is C(a+b, a).
    CHECK(partitions_in_box(3, 4).size() == 35);
}

TEST_CASE("strict partitions") {
    int six = 0;
    for (const auto& p : strict_partitions({6})) six += p.size() == 6;
    CHECK(six == 4);
    const auto empty = strict_partitions({10, 0});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].length() == 0);
    std::set<std::vector<int>> got;
    for (const auto& p : strict_partitions({100, 2, 3})) got.insert(p.parts());
    CHECK(got == std::set<std::vector<int>>{{2, 1}, {3, 1}, {3, 2}});

    std::set<std::vector<int>> all;
    for (const auto& p : strict_partitions({18})) all.insert(p.parts());
    const auto oracle = brute_strict(18);
    CHECK(all == std::set<std::vector<int>>(oracle.begin(), oracle.end()));
}

TEST_CASE("staircase and the Kleshchev condition") {
    CHECK(staircase(0).length() == 0);
    CHECK(staircase(3).parts() == std::vector<int>{3, 2, 1});
    CHECK(staircase(3).size() == 6);
    CHECK(is_kleshchev({{StrictPartition({1}), StrictPartition()}}));
    CHECK_FALSE(is_kleshchev({{StrictPartition(), StrictPartition({1})}}));
    CHECK(is_kleshchev({{StrictPartition({2, 1}), StrictPartition({2})}}));
}

TEST_CASE("S_k enumeration against the brute-force filter") {
    for (int k = 1; k <= 3; ++k) {
        const int max_size = k == 1 ? 16 : 11;
        std::set<std::vector<std::vector<int>>> got;
        for (const auto& b : kleshchev_multipartitions(k, max_size)) got.insert(as_lists(b));
        const auto oracle = brute_Sk(k, max_size);
        CHECK(got == std::set<std::vector<std::vector<int>>>(oracle.begin(), oracle.end()));
    }
    std::map<int, int> by_size;
    for (const auto& b : kleshchev_multipartitions(2, 2)) ++by_size[b.size()];
    CHECK(by_size[1] == 1);
    CHECK(by_size[2] == 2);
    CHECK_THROWS_AS(kleshchev_multipartitions(0, 3), std::invalid_argument);
}

TEST_CASE("multipartition text round trip") {
    const MultiPartition b{{StrictPartition({3, 1}), StrictPartition({2}), StrictPartition()}};
    CHECK(to_string(b) == "[[3,1],[2],[]]");
    CHECK(parse_multipartition(to_string(b)) == b);
    std::ostringstream os;
    write_lines(os, {b, b});
    CHECK(os.str() == "[[3,1],[2],[]]\n[[3,1],[2],[]]\n");
    CHECK_THROWS(parse_multipartition("[[1,2]]"));
}

TEST_CASE("both sides of the generating-function theorem") {
    const auto lhs = lhs_theorem(2, 20);
    const auto rhs = rhs_theorem(2, 20);
    CHECK(coefficient(lhs, 1, 1) == 1);
    CHECK(coefficient(lhs, 2, 2) == 1);
    CHECK(coefficient(rhs, 1, 1) == 1);
    CHECK(coefficient(rhs, 2, 2) == 1);
    CHECK(coefficient(rhs_theorem(4, 10), 0, 0) == 1);
    CHECK(theorem_exponent({1, 0}) == 1);
    CHECK(theorem_exponent({0, 1}) == 2);

    // Counts by (length, size) against the filter.
    std::map<std::pair<int, int>, long> counts;
    for (const auto& b : brute_Sk(2, 12)) {
        int len = 0, size = 0;
        for (const auto& c : b) {
            len += static_cast<int>(c.size());
            size += sum(c);
        }
        ++counts[{len, size}];
    }
    const auto l13 = lhs_theorem(2, 13);
    for (int m = 0; m <= l13.x_cap(); ++m) {
        for (int d = 0; d <= 12; ++d) {
            const auto it = counts.find({m, d});
            CHECK(coefficient(l13, m, d) == (it == counts.end() ? 0 : it->second));
        }
    }

    CHECK(verify_theorem2(1, 30).passed);
    CHECK(verify_theorem2(2, 0).passed);
    const auto r3 = verify_theorem2(3, 30);
    CHECK(r3.passed);
    const int cap = x_cap_for_order(ValuationBound::balanced_staircase(3), 30);
    CHECK(specialize_x1(lhs_theorem(3, 30)) == specialize_x1(F_series(30, cap)));
}

TEST_CASE("box and staircase counts") {
    CHECK(verify_LEC(4, 2, 20).passed);
    CHECK(verify_LEC(5, 0, 20).passed);
    CHECK(verify_LEC(6, 3, 12).passed);
    CHECK(verify_LEA(3, 0, 20).passed);
    CHECK(verify_LEA(2, 2, 12).passed);
    CHECK(verify_LEA(0, 4, 20).passed);
    // Only the staircase has length j and parts <= j.
    std::vector<Integer> c(20);
    for (const auto& p : strict_partitions({19, 4, 4})) c[static_cast<std::size_t>(p.size())] += 1;
    CHECK(QLaurent::from_dense(c, 0, 20) == QLaurent::monomial(1, 10, 20));
}

TEST_CASE("length-graded pieces") {
    CHECK(suffix_lengths({2, 1, 3}) == std::vector<int>{6, 4, 3});
    for (const auto& j : std::vector<std::vector<int>>{{0, 0, 0}, {0}}) {
        const auto V = V_set(j, 10);
        const auto W = W_set(j, 10);
        REQUIRE(V.size() == 1);
        REQUIRE(W.size() == 1);
        CHECK(V[0].size() == 0);
        CHECK(W[0].size() == 0);
    }
    CHECK(verify_propLEB({2}, 20).passed);
    CHECK(verify_propLEB({1, 1}, 20).passed);
    CHECK(verify_propLEB({1, 1, 1}, 20).passed);
    CHECK(verify_propLEB({2, 0, 1}, 25).passed);

    // V against the filter: S_2 elements with lengths (2, 1).
    long oracle = 0;
    for (const auto& b : brute_Sk(2, 14)) oracle += b[0].size() == 2 && b[1].size() == 1;
    CHECK(static_cast<long>(V_set({1, 1}, 14).size()) == oracle);

    // W elements have the prescribed staircase tails.
    for (const auto& b : W_set({1, 2}, 20)) {
        const auto& first = b.components[0].parts();
        REQUIRE(first.size() == 3);
        CHECK(first[1] == 2);
        CHECK(first[2] == 1);
        CHECK(b.components[1].length() == 2);
    }

    const auto pairs = canonical_bijection({1, 1}, 15);
    CHECK(pairs.size() == V_set({1, 1}, 15).size());
    for (const auto& [v, w] : pairs) CHECK(v.size() == w.size());
}

TEST_CASE("exponent telescoping") {
    CHECK(verify_exponent_telescoping({0, 0, 0}).passed);
    CHECK(verify_exponent_telescoping({2, 1, 3}).passed);
    // Direct evaluation for j = (2,1,3): L = (6,4,3).
    CHECK(triangular(6) + triangular(4) + triangular(3) ==
          1 * triangular(2) + 2 * triangular(1) + 3 * triangular(3) + (1 * 2 * 1 + 1 * 2 * 3 + 2 * 1 * 3));
}
