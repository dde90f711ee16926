#include <set>

#include "doctest.h"
#include "rrc/crystal.hpp"

using namespace rrc;

namespace {

const CrystalModel kModel{Convention::parse("bottom-up/right-first"), 0};

// Deletes adjacent "-+" pairs until none remain, tracking original slots.
Signature naive_reduce(const std::string& word) {
    std::vector<std::size_t> idx;
    for (std::size_t n = 0; n < word.size(); ++n) idx.push_back(n);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a + 1 < idx.size(); ++a) {
            if (word[idx[a]] == '-' && word[idx[a + 1]] == '+') {
                idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(a),
                          idx.begin() + static_cast<std::ptrdiff_t>(a + 2));
                changed = true;
                break;
            }
        }
    }
    Signature s;
    for (std::size_t n : idx) {
        if (word[n] == '+') {
            ++s.phi;
            s.f_slot = n;
        } else {
            ++s.eps;
            if (!s.e_slot) s.e_slot = n;
        }
    }
    return s;
}

Signature reduce(const std::string& w) { return signature_reduce(std::span<const char>(w.data(), w.size())); }

std::vector<Partition> all_partitions(int max_size) {
    std::vector<Partition> out;
    for (int n = 0; n <= max_size; ++n) {
        for (const auto& p : partitions_in_box(n, n)) {
            if (p.size() == n) out.push_back(p);
        }
    }
    return out;
}

CrystalElt elt(std::vector<std::vector<int>> parts) {
    CrystalElt b;
    for (auto& p : parts) b.push_back(Partition(std::move(p)));
    return b;
}

}  // namespace

TEST_CASE("convention names") {
    for (const auto& c : Convention::candidates()) CHECK(Convention::parse(c.name()) == c);
    CHECK_THROWS_AS(Convention::parse("sideways"), std::invalid_argument);
    CHECK(Convention::candidates().front().name() == "top-down/left-first");
}

TEST_CASE("addable and removable nodes") {
    const Partition empty;
    CHECK(addable_nodes(empty, 0, kModel) == std::vector<NodePos>{{1, 1}});
    CHECK(addable_nodes(empty, 1, kModel).empty());
    // (1) has two addable 1-nodes in the Fock space model; bottom-up order
    // lists row 2 first.
    CHECK(addable_nodes(Partition({1}), 1, kModel) == std::vector<NodePos>{{2, 1}, {1, 2}});
    CHECK(removable_nodes(Partition({2}), 1, kModel) == std::vector<NodePos>{{1, 2}});
    CHECK(removable_nodes(Partition({2}), 0, kModel).empty());
    CHECK_THROWS_AS(addable_nodes(empty, 2, kModel), std::invalid_argument);
}

TEST_CASE("signature rule") {
    auto s = reduce("+");
    CHECK(s.phi == 1);
    CHECK(s.eps == 0);
    s = reduce("-+");
    CHECK(s.phi == 0);
    CHECK(s.eps == 0);
    s = reduce("++-");
    CHECK(s.phi == 2);
    CHECK(s.eps == 1);
    CHECK(s.f_slot == 1u);
    CHECK(s.e_slot == 2u);
    CHECK_THROWS_AS(reduce("+x"), std::invalid_argument);

    // Every word of length <= 8 against the pairwise-deletion oracle.
    for (int len = 0; len <= 8; ++len) {
        for (int mask = 0; mask < (1 << len); ++mask) {
            std::string w;
            for (int b = 0; b < len; ++b) w += (mask >> b & 1) ? '+' : '-';
            const auto got = reduce(w);
            const auto want = naive_reduce(w);
            CHECK(got.phi == want.phi);
            CHECK(got.eps == want.eps);
            CHECK(got.f_slot == want.f_slot);
            CHECK(got.e_slot == want.e_slot);
        }
    }
}

TEST_CASE("operators on a single partition") {
    const Partition empty;
    CHECK(f_op(empty, 0, kModel) == Partition({1}));
    CHECK_FALSE(f_op(empty, 1, kModel).has_value());
    CHECK(phi(Partition({1}), 1, kModel) == 2);
    CHECK(eps(Partition({1}), 0, kModel) == 1);
    CHECK(f_op(Partition({1}), 1, kModel) == Partition({2}));

    for (const auto& p : all_partitions(10)) {
        for (int i = 0; i < 2; ++i) {
            if (auto f = f_op(p, i, kModel)) {
                CHECK(e_op(*f, i, kModel) == p);
                CHECK(phi(*f, i, kModel) == phi(p, i, kModel) - 1);
                CHECK(eps(*f, i, kModel) == eps(p, i, kModel) + 1);
            }
            if (auto e = e_op(p, i, kModel)) CHECK(f_op(*e, i, kModel) == p);
        }
    }
}

TEST_CASE("tensor products") {
    const CrystalElt hw(2);
    CHECK(tensor_phi(hw, 0, kModel) == 2);
    CHECK(tensor_phi(hw, 1, kModel) == 0);
    CHECK_FALSE(tensor_e(hw, 0, kModel).has_value());
    CHECK_FALSE(tensor_e(hw, 1, kModel).has_value());
    // Right-first reading: the word for f_0 is (right factor, left factor),
    // so f_0 acts on the left factor.
    CHECK(tensor_f(hw, 0, kModel) == elt({{1}, {}}));
    CHECK(to_string(elt({{2, 1}, {}})) == "[[2,1],[]]");
}

TEST_CASE("components") {
    const auto c2 = generate_component(2, 2, kModel);
    const std::set<CrystalElt> want = {elt({{}, {}}), elt({{1}, {}}), elt({{2}, {}}),
                                       elt({{1}, {1}})};
    CHECK(c2.elements == want);
    for (int k = 1; k <= 3; ++k) {
        CHECK(generate_component(k, 0, kModel).elements == std::set<CrystalElt>{CrystalElt(k)});
    }
    CHECK_THROWS_AS(generate_component(0, 3, kModel), std::invalid_argument);

    // k = 1 is the set of strict partitions.
    std::set<CrystalElt> strict;
    for (const auto& p : strict_partitions({12})) strict.insert({p.as_partition()});
    CHECK(generate_component(1, 12, kModel).elements == strict);

    const auto dot = component_dot(c2);
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("\"[[],[]]\" -> \"[[1],[]]\" [label=\"f0\"]") != std::string::npos);
}

TEST_CASE("calibration") {
    CHECK(qualifying_conventions(0).size() == 4);
    const auto cal = calibrate_convention(12);
    REQUIRE_FALSE(cal.qualifiers.empty());
    CHECK(cal.chosen == cal.qualifiers.front());
    CHECK(cal.chosen.name() == "bottom-up/right-first");
    CHECK(qualifying_conventions(12, 1).empty());
    CHECK_THROWS_AS(calibrate_convention(12, 1), CalibrationError);
}

TEST_CASE("crystal theorem at small sizes") {
    CHECK(verify_crystal_theorem(1, 12, kModel).passed);
    const auto r = verify_crystal_theorem(2, 10, kModel);
    CHECK(r.passed);
    CHECK(r.convention == "bottom-up/right-first");

    const CrystalModel wrong{Convention::parse("top-down/left-first"), 0};
    const auto bad = verify_crystal_theorem(2, 8, wrong);
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->lhs != bad.witness->rhs);

    // Swapped residues give the same element sets but the wrong weight.
    const CrystalModel shifted{kModel.convention, 1};
    CHECK(generate_component(1, 10, shifted).elements == generate_component(1, 10, kModel).elements);
    CHECK_FALSE(verify_crystal_theorem(1, 10, shifted).passed);
}
