#pragma once

// Linear operators in the shifts N, T, U acting on functions Z^3 -> q-series,
// with coefficients of the form scalar * q^(c0 + cn*n + ct*t + cu*u)
// standing to the left of the shifts.

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "rrc/series.hpp"

namespace rrc {

struct LinearForm {
    std::int64_t c0 = 0, cn = 0, ct = 0, cu = 0;

    std::int64_t eval(std::int64_t n, std::int64_t t, std::int64_t u) const {
        return c0 + cn * n + ct * t + cu * u;
    }
    bool operator==(const LinearForm&) const = default;
};

// N^n T^t U^u: (N g)(n,t,u) = g(n-1,t,u) and likewise for T, U.
struct Shift {
    int n = 0, t = 0, u = 0;
    bool operator==(const Shift&) const = default;
};

struct OperatorTerm {
    Integer scalar;
    LinearForm exponent;
    Shift shift;
};

// Memoized g(n,t,u). Lookup-or-compute is safe under concurrent callers;
// a value is computed at most once per key.
class TermTable {
public:
    using Generator = std::function<QLaurent(std::int64_t, std::int64_t, std::int64_t)>;

    explicit TermTable(Generator g) : gen_(std::move(g)) {}
    TermTable(const TermTable&) = delete;
    TermTable& operator=(const TermTable&) = delete;

    QLaurent get(std::int64_t n, std::int64_t t, std::int64_t u);
    std::size_t cached() const;

private:
    Generator gen_;
    mutable std::mutex mu_;
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, QLaurent> memo_;
};

class ShiftOperator {
public:
    ShiftOperator() = default;
    explicit ShiftOperator(std::vector<OperatorTerm> terms) : terms_(std::move(terms)) {}

    static ShiftOperator identity();
    // scalar * q^form * shift
    static ShiftOperator term(const Integer& scalar, LinearForm form, Shift shift = {});

    const std::vector<OperatorTerm>& terms() const { return terms_; }

    friend ShiftOperator operator+(const ShiftOperator& a, const ShiftOperator& b);
    friend ShiftOperator operator-(const ShiftOperator& a, const ShiftOperator& b);
    ShiftOperator operator-() const;

    // The shift applied after this operator: (S (P g))(p) = (P g)(p - s),
    // so coefficient forms are evaluated at the shifted point.
    ShiftOperator after(Shift s) const;

private:
    std::vector<OperatorTerm> terms_;
};

// sum over terms of scalar * q^form(n,t,u) * g(n-a, t-b, u-c).
QLaurent apply_operator(const ShiftOperator& op, TermTable& g, std::int64_t n, std::int64_t t,
                        std::int64_t u);

// The certificate (A, B, C) with (A + (1-T)B + (1-U)C) f = 0.
struct Certificate {
    std::string name;
    ShiftOperator A, B, C;

    // A + B - T.B + C - U.C as a single operator.
    ShiftOperator combined() const;
};

Certificate telescoping_certificate();
// One-symbol perturbations of the certificate, each of which must break it.
std::vector<Certificate> certificate_mutations();

// (1 - q^M) - q^M (1+q) N^2 + q^(2M-1) N^4, acting on the first index.
ShiftOperator g_recurrence_operator();

}  // namespace rrc
