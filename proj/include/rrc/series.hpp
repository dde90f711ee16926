#pragma once

// Exact truncated q-series.
//
// QLaurent is a Laurent series in q with arbitrary-precision integer
// coefficients, known exactly for exponents below its truncation order.
// XQSeries is a polynomial in x (capped at x_cap) whose coefficients are
// QLaurent values sharing one truncation order.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rrc {

using Integer = mpz_class;

class QLaurent {
public:
    struct Term {
        std::int64_t exponent;
        Integer coeff;
        bool operator==(const Term&) const = default;
    };

    // The zero series, known below `trunc_order`.
    explicit QLaurent(std::int64_t trunc_order = 0) : trunc_(trunc_order) {}

    static QLaurent monomial(const Integer& c, std::int64_t d, std::int64_t trunc_order);
    static QLaurent one(std::int64_t trunc_order) { return monomial(1, 0, trunc_order); }

    // Coefficients of q^lowest, q^(lowest+1), ...; entries at or above the
    // truncation order are dropped.
    static QLaurent from_dense(std::span<const Integer> coeffs, std::int64_t lowest,
                               std::int64_t trunc_order);
    static QLaurent from_terms(std::vector<Term> terms, std::int64_t trunc_order);

    std::int64_t trunc_order() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<std::int64_t> valuation() const;
    std::optional<std::int64_t> degree() const;

    // Coefficient of q^d. Throws std::out_of_range when d >= trunc_order.
    Integer coefficient(std::int64_t d) const;
    const std::vector<Term>& terms() const { return terms_; }

    // Drops every exponent >= n; never raises the truncation order.
    QLaurent truncated(std::int64_t n) const;
    // Multiplies by the exact monomial c*q^e. A negative e lowers the
    // truncation order by |e|; a positive e keeps it.
    QLaurent shifted(std::int64_t e, const Integer& c = 1) const;

    QLaurent operator-() const;
    friend QLaurent operator+(const QLaurent& a, const QLaurent& b);
    friend QLaurent operator-(const QLaurent& a, const QLaurent& b);
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
    QLaurent& operator+=(const QLaurent& b) { return *this = *this + b; }
    QLaurent& operator-=(const QLaurent& b) { return *this = *this - b; }
    QLaurent& operator*=(const QLaurent& b) { return *this = *this * b; }

    // Same truncation order and same coefficients.
    bool operator==(const QLaurent& other) const = default;

    // "c*q^d" terms in ascending d followed by the O(q^N) marker.
    std::string to_string() const;

private:
    std::int64_t trunc_;
    std::vector<Term> terms_;  // ascending exponents, nonzero coefficients, all < trunc_
};

// Inverse of a series whose lowest term is +-q^0. Throws std::domain_error
// otherwise, except at truncation order <= 0 where the empty series is
// returned unchanged.
QLaurent invert_unit(const QLaurent& a);

// prod_{0 <= j < n} (1 - sign*q^(v + j*step)), truncated at N.
// Valid for any integer v; Laurent factors lower the truncation order.
QLaurent qpochhammer(int sign, std::int64_t v, std::int64_t step, std::int64_t n, std::int64_t N);
// The same product over all j >= 0. Requires v >= 1 and step >= 1 so that
// only the factors with v + j*step < N matter.
QLaurent qpochhammer_inf(int sign, std::int64_t v, std::int64_t step, std::int64_t N);

// (q^v; q)_n and (q^v; q)_inf.
inline QLaurent poch_q(std::int64_t v, std::int64_t n, std::int64_t N) {
    return qpochhammer(1, v, 1, n, N);
}
inline QLaurent poch_q_inf(std::int64_t v, std::int64_t N) { return qpochhammer_inf(1, v, 1, N); }

// 1/(q;q)_n truncated at N.
QLaurent inv_poch_q(std::int64_t n, std::int64_t N);

// Exact polynomial quotient num/den. den must have constant term +-1 and
// both arguments nonnegative exponents. Throws std::domain_error when the
// division leaves a remainder.
QLaurent exact_divide(const QLaurent& num, const QLaurent& den);

// Gaussian binomial [n choose m]_q truncated at N. Throws
// std::invalid_argument unless 0 <= m <= n.
QLaurent q_binomial(std::int64_t n, std::int64_t m, std::int64_t N);

inline std::int64_t triangular(std::int64_t n) { return n * (n + 1) / 2; }

// Lower bound on the q-valuation of the x^m coefficient of an XQSeries.
// Bounds are nondecreasing in m; kNoTerms means the coefficient (and every
// higher one) is identically zero.
class ValuationBound {
public:
    static constexpr std::int64_t kNoTerms = std::int64_t{1} << 50;

    static ValuationBound unknown() { return ValuationBound{}; }
    static ValuationBound polynomial(int degree);
    static ValuationBound from(std::function<std::int64_t(int)> f) {
        return ValuationBound{std::move(f)};
    }
    // min over sum_{a=1}^{k} L_a(L_a+1)/2 with sum L_a = m: the smallest
    // size of k strict partitions of total length m.
    static ValuationBound balanced_staircase(int k);

    bool known() const { return static_cast<bool>(f_); }
    std::optional<std::int64_t> at(int m) const;

    friend ValuationBound min(const ValuationBound& a, const ValuationBound& b);
    // Bound for a product: min_j a(j) + b(m-j).
    friend ValuationBound convolve(const ValuationBound& a, const ValuationBound& b);
    // Bound after x -> x*q^r and multiplication by q^e.
    ValuationBound substituted(std::int64_t r, std::int64_t e = 0) const;

private:
    ValuationBound() = default;
    explicit ValuationBound(std::function<std::int64_t(int)> f) : f_(std::move(f)) {}
    std::function<std::int64_t(int)> f_;
};

class XQSeries {
public:
    // Zero series.
    XQSeries(int x_cap, std::int64_t trunc_order);
    // Coefficients of x^0 .. x^(size-1); x_cap = size - 1. All entries are
    // brought to the minimum truncation order.
    XQSeries(std::vector<QLaurent> per_x, ValuationBound bound);

    struct Entry {
        int x_deg;
        std::int64_t q_deg;
        Integer coeff;
        bool operator==(const Entry&) const = default;
    };
    // Exact polynomial in x and q given as (m, d, c) entries.
    static XQSeries polynomial(const std::vector<Entry>& entries, int x_cap, std::int64_t N);

    int x_cap() const { return static_cast<int>(per_x_.size()) - 1; }
    std::int64_t trunc_order() const { return trunc_; }
    const QLaurent& at(int m) const { return per_x_.at(static_cast<std::size_t>(m)); }
    const std::vector<QLaurent>& per_x() const { return per_x_; }
    const ValuationBound& bound() const { return bound_; }
    XQSeries with_bound(ValuationBound b) const;

    Integer coefficient(int m, std::int64_t d) const;

    // x -> x*q^r.
    XQSeries x_shift(std::int64_t r) const;
    // Restrict to x-degrees <= cap and q-exponents < N.
    XQSeries truncated(int cap, std::int64_t N) const;

    friend XQSeries operator+(const XQSeries& a, const XQSeries& b);
    friend XQSeries operator-(const XQSeries& a, const XQSeries& b);
    friend XQSeries operator*(const XQSeries& a, const XQSeries& b);
    XQSeries operator-() const;

    // [[m, d, c], ...] in ascending (m, d).
    std::vector<Entry> entries() const;

private:
    std::int64_t trunc_;
    std::vector<QLaurent> per_x_;
    ValuationBound bound_;
};

// Sum over all x-degrees. Throws std::domain_error when the recorded
// valuation bound does not guarantee that x-degrees above x_cap vanish
// below the truncation order.
QLaurent specialize_x1(const XQSeries& a);
Integer coefficient(const XQSeries& a, int m, std::int64_t d);

// Smallest x_cap at which specialize_x1 is sound for order N under `bound`.
int x_cap_for_order(const ValuationBound& bound, std::int64_t N);

struct Mismatch {
    int x_deg;
    std::int64_t q_deg;
    Integer lhs;
    Integer rhs;
};

// Coefficientwise comparison for x-degrees <= x_cap and q-exponents < N;
// the first mismatch in ascending (x_deg, q_deg) order is returned. Callers
// must supply bounds within both truncations (std::invalid_argument
// otherwise).
std::optional<Mismatch> eq_up_to(const XQSeries& a, const XQSeries& b, std::int64_t N, int x_cap);
std::optional<Mismatch> eq_up_to(const QLaurent& a, const QLaurent& b, std::int64_t N);

// (-xq; q)_inf as an XQSeries.
XQSeries poch_neg_xq(std::int64_t N, int x_cap);

}  // namespace rrc
