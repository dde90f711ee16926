#include <functional>

#include "doctest.h"
#include "rrc/identities.hpp"

using namespace rrc;

namespace {

long count_partitions(int n, const std::function<bool(int)>& allowed) {
    std::function<long(int, int)> go = [&](int rest, int max_part) -> long {
        if (rest == 0) return 1;
        long total = 0;
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            if (allowed(p)) total += go(rest - p, p);
        }
        return total;
    };
    return go(n, n);
}

QLaurent geometric_tail(std::int64_t N) {
    // q/(1-q)
    std::vector<Integer> c(static_cast<std::size_t>(N), 1);
    if (N > 0) c[0] = 0;
    return QLaurent::from_dense(c, 0, N);
}

}  // namespace

TEST_CASE("F and G") {
    const auto G = G_series(30, 12);
    CHECK(G.at(0) == QLaurent::one(30));
    CHECK(coefficient(G, 2, 2) == 1);
    CHECK(G.at(1).is_zero());
    const auto G1 = specialize_x1(G_series(30, x_cap_for_order(G.bound(), 30)));
    // Partitions into parts congruent to 2 or 3 mod 5.
    for (int n = 0; n < 30; ++n) {
        CHECK(G1.coefficient(n) == count_partitions(n, [](int p) { return p % 5 == 2 || p % 5 == 3; }));
    }
    CHECK(G1.coefficient(6) == 2);

    const auto F = F_series(30, 12);
    CHECK(F.at(0) == QLaurent::one(30));
    const auto F1 = specialize_x1(F_series(30, x_cap_for_order(ValuationBound::balanced_staircase(3), 30)));
    CHECK(F1.coefficient(1) == 1);
    CHECK(F_exponent(1, 0, 0) == 1);
    CHECK(F_exponent(0, 0, 0) == 0);
    CHECK(F_exponent(1, 1, 1) == 1 + 2 + 3 + 1 + 1 + 2);
}

TEST_CASE("the term f(n,t,u)") {
    CHECK(f_term(0, 0, 0, 20) == QLaurent::one(20));
    CHECK(f_term(1, 0, 0, 20) == geometric_tail(20));
    CHECK(f_term(1, 1, 0, 20).is_zero());
    CHECK(f_term(3, -1, 0, 20).is_zero());
    CHECK(f_n_series(0, 20) == QLaurent::one(20));
    CHECK(f_n_series(1, 20) == geometric_tail(20));
    CHECK(f_n_series(-2, 20).is_zero());
    for (int n = 0; n <= 20; ++n) {
        const auto v = f_n_series(n, 60).valuation();
        if (v) CHECK(*v >= n);
    }
    auto table = f_term_table(15);
    CHECK(table->get(2, 1, 0) == f_term(2, 1, 0, 15));
    CHECK(table->cached() == 1);
}

TEST_CASE("shift operators") {
    TermTable ones([](std::int64_t, std::int64_t, std::int64_t) { return QLaurent::one(10); });
    CHECK(apply_operator(ShiftOperator::identity(), ones, 3, 1, 2) == QLaurent::one(10));
    CHECK(apply_operator(ShiftOperator::term(1, {}, {0, 1, 0}), ones, 0, 0, 0) == QLaurent::one(10));

    auto f = f_term_table(20);
    const auto qnN = ShiftOperator::term(1, {0, 1, 0, 0}, {1, 0, 0});
    CHECK(apply_operator(qnN, *f, 1, 0, 0) == QLaurent::monomial(1, 1, 20));

    // after() evaluates the coefficient at the shifted point.
    const auto qt = ShiftOperator::term(1, {0, 0, 1, 0});
    CHECK(apply_operator(qt.after({0, 1, 0}), ones, 0, 3, 0) == QLaurent::monomial(1, 2, 10));
}

TEST_CASE("certificate") {
    const auto origin = certificate_check(0, 0, 0, 30);
    CHECK(origin.passed);
    CHECK(certificate_check(6, 4, 4, 60).passed);
    const auto mutations = certificate_mutations();
    CHECK(mutations.size() >= 3);
    for (const auto& m : mutations) {
        const auto r = certificate_check(6, 4, 4, 60, m);
        CHECK_FALSE(r.passed);
        CHECK(r.witness.has_value());
    }
}

TEST_CASE("recurrences") {
    CHECK(fn_recurrence_check(0, 12, 60).passed);
    CHECK(g_recurrence_check(-4, 24, 80).passed);
    // M odd, M = 0 and negative M involve only zero terms or cancel trivially.
    for (std::int64_t M : {-9, -3, -1, 0, 1, 7}) {
        TermTable g([](std::int64_t m, std::int64_t, std::int64_t) { return g_M_series(m, 30); });
        CHECK(apply_operator(g_recurrence_operator(), g, M, 0, 0).is_zero());
    }
    CHECK(g_M_series(-2, 10).is_zero());
    CHECK(g_M_series(3, 10).is_zero());
}

TEST_CASE("q-difference equations") {
    CHECK(verify_gdiff(40, 20).passed);
    CHECK(verify_gdiff(0, 0).passed);
    const auto bad = verify_gdiff(40, 20, 6);
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->x_deg == 4);

    CHECK(verify_fdiff(40, 20).passed);
    CHECK(verify_fdiff(20, 0).passed);
    // G does not solve the F equation; its residual is what the
    // recurrence operator gives on its coefficients.
    CHECK_FALSE(fdiff_residual(G_series(30, 10)).at(1).is_zero());
    CHECK_FALSE(gdiff_residual(F_series(30, 10)).at(1).is_zero());
}

TEST_CASE("F as (-xq;q) G and its single-sum form") {
    CHECK(verify_fincor(40, 20).passed);
    CHECK(warnaar_fn(0, 20) == QLaurent::one(20));
    CHECK(warnaar_fn(1, 20) == geometric_tail(20));
    CHECK(warnaar_fn_check(0, 14, 60).passed);
}

TEST_CASE("Chu-Vandermonde at c = 0") {
    CHECK(chu_vandermonde_sum(-4, 0, 20) == QLaurent::one(20));
    CHECK(chu_vandermonde_sum(0, 5, 20) == QLaurent::one(20));
    CHECK(chu_vandermonde_sum(-3, 2, 20) == QLaurent::monomial(1, -6, 20));
    CHECK(chu_vandermonde_check(-7, 6, 30).passed);
    CHECK_THROWS_AS(chu_vandermonde_sum(1, 2, 10), std::invalid_argument);
}

TEST_CASE("closing identities") {
    CHECK(euler_checks(60, 20).passed);
    CHECK(rr_checks(0).passed);
    CHECK(rr_checks(80).passed);
    CHECK(rr_product(2, 10).coefficient(6) == 2);
    CHECK(rr_sum(1, 10).coefficient(6) == 2);
    CHECK(rr_product(1, 10).coefficient(5) == 2);
    CHECK(rr_sum(0, 10).coefficient(5) == 2);
    for (int n = 0; n < 40; ++n) {
        CHECK(rr_product(1, 40).coefficient(n) ==
              count_partitions(n, [](int p) { return p % 5 == 1 || p % 5 == 4; }));
    }
    const auto chain = character_chain_check(30);
    CHECK(chain.passed);
    CHECK(chain.notes.size() == 6);
}
