#include "rrc/shift_operator.hpp"

#include <algorithm>
#include <limits>

namespace rrc {

QLaurent TermTable::get(std::int64_t n, std::int64_t t, std::int64_t u) {
    const auto key = std::make_tuple(n, t, u);
    {
        std::lock_guard lock(mu_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    QLaurent v = gen_(n, t, u);
    std::lock_guard lock(mu_);
    return memo_.try_emplace(key, std::move(v)).first->second;
}

std::size_t TermTable::cached() const {
    std::lock_guard lock(mu_);
    return memo_.size();
}

ShiftOperator ShiftOperator::identity() { return term(1, {}); }

ShiftOperator ShiftOperator::term(const Integer& scalar, LinearForm form, Shift shift) {
    return ShiftOperator({OperatorTerm{scalar, form, shift}});
}

ShiftOperator operator+(const ShiftOperator& a, const ShiftOperator& b) {
    auto terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return ShiftOperator(std::move(terms));
}

ShiftOperator ShiftOperator::operator-() const {
    auto terms = terms_;
    for (auto& t : terms) t.scalar = -t.scalar;
    return ShiftOperator(std::move(terms));
}

ShiftOperator operator-(const ShiftOperator& a, const ShiftOperator& b) { return a + (-b); }

ShiftOperator ShiftOperator::after(Shift s) const {
    auto terms = terms_;
    for (auto& t : terms) {
        t.exponent.c0 -= t.exponent.cn * s.n + t.exponent.ct * s.t + t.exponent.cu * s.u;
        t.shift.n += s.n;
        t.shift.t += s.t;
        t.shift.u += s.u;
    }
    return ShiftOperator(std::move(terms));
}

QLaurent apply_operator(const ShiftOperator& op, TermTable& g, std::int64_t n, std::int64_t t,
                        std::int64_t u) {
    std::vector<QLaurent> parts;
    parts.reserve(op.terms().size());
    std::int64_t trunc = std::numeric_limits<std::int64_t>::max();
    for (const auto& term : op.terms()) {
        const QLaurent v = g.get(n - term.shift.n, t - term.shift.t, u - term.shift.u);
        parts.push_back(v.shifted(term.exponent.eval(n, t, u), term.scalar));
        trunc = std::min(trunc, parts.back().trunc_order());
    }
    QLaurent acc(trunc);
    for (const auto& p : parts) acc += p;
    return acc;
}

ShiftOperator Certificate::combined() const {
    return A + B - B.after({0, 1, 0}) + C - C.after({0, 0, 1});
}

namespace {

using S = ShiftOperator;

// q^(c0 + cn n + ct t + cu u)
LinearForm q(std::int64_t c0, std::int64_t cn = 0, std::int64_t ct = 0, std::int64_t cu = 0) {
    return {c0, cn, ct, cu};
}

Shift N(int a, int c = 0) { return {a, 0, c}; }

ShiftOperator build_A(std::int64_t a4_c0 = -1) {
    // (1-q^n) - q^n N - q^n(1+q)(N^2+N^3) + q^(2n-1) N^4 + q^(2n-2)((1+q)N^5 + N^6)
    return S::term(1, q(0)) - S::term(1, q(0, 1))
         - S::term(1, q(0, 1), N(1))
         - S::term(1, q(0, 1), N(2)) - S::term(1, q(1, 1), N(2))
         - S::term(1, q(0, 1), N(3)) - S::term(1, q(1, 1), N(3))
         + S::term(1, q(a4_c0, 2), N(4))
         + S::term(1, q(-2, 2), N(5)) + S::term(1, q(-1, 2), N(5))
         + S::term(1, q(-2, 2), N(6));
}

ShiftOperator build_B(std::int64_t const_c0 = 0) {
    // (q^n - q^(2t+u)) + q^n(-1 + q^t + q^u) N + q^(n+u)(1 + q^(1+t)) N^2 + q^(n+2t+u) U N^3
    return S::term(1, q(0, 1)) - S::term(1, q(const_c0, 0, 2, 1))
         - S::term(1, q(0, 1), N(1)) + S::term(1, q(0, 1, 1), N(1)) + S::term(1, q(0, 1, 0, 1), N(1))
         + S::term(1, q(0, 1, 0, 1), N(2)) + S::term(1, q(1, 1, 1, 1), N(2))
         + S::term(1, q(0, 1, 2, 1), N(3, 1));
}

ShiftOperator build_C(std::int64_t n3_c0 = 1) {
    // q^n(1-q^t) N + q^(1+n+u)(1-q^t) N^2 + q^n(1+q^(1+u)) N^3
    //   - q^(2n-1) N^4 - q^(2n-2)((1+q)N^5 + N^6)
    return S::term(1, q(0, 1), N(1)) - S::term(1, q(0, 1, 1), N(1))
         + S::term(1, q(1, 1, 0, 1), N(2)) - S::term(1, q(1, 1, 1, 1), N(2))
         + S::term(1, q(0, 1), N(3)) + S::term(1, q(n3_c0, 1, 0, 1), N(3))
         - S::term(1, q(-1, 2), N(4))
         - S::term(1, q(-2, 2), N(5)) - S::term(1, q(-1, 2), N(5))
         - S::term(1, q(-2, 2), N(6));
}

}  // namespace

Certificate telescoping_certificate() { return {"certificate", build_A(), build_B(), build_C()}; }

std::vector<Certificate> certificate_mutations() {
    return {
        {"B constant q^(2t+u+1)", build_A(), build_B(1), build_C()},
        {"A coefficient q^(2n) N^4", build_A(0), build_B(), build_C()},
        {"C coefficient q^(n+u) N^3", build_A(), build_B(), build_C(0)},
        {"A missing q^n N", build_A() + S::term(1, q(0, 1), N(1)), build_B(), build_C()},
    };
}

ShiftOperator g_recurrence_operator() {
    return S::term(1, q(0)) - S::term(1, q(0, 1))
         - S::term(1, q(0, 1), N(2)) - S::term(1, q(1, 1), N(2))
         + S::term(1, q(-1, 2), N(4));
}

}  // namespace rrc
