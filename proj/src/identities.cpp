#include "rrc/identities.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rrc/partitions.hpp"

namespace rrc {

namespace {

// Memoized 1/(q;q)_n at a fixed order.
class InversePochhammers {
public:
    explicit InversePochhammers(std::int64_t N) : N_(N) {}
    const QLaurent& operator()(std::int64_t n) {
        while (static_cast<std::int64_t>(cache_.size()) <= n) {
            cache_.push_back(inv_poch_q(static_cast<std::int64_t>(cache_.size()), N_));
        }
        return cache_[static_cast<std::size_t>(n)];
    }

private:
    std::int64_t N_;
    std::vector<QLaurent> cache_;
};

XQSeries xpoly(const std::vector<XQSeries::Entry>& entries, int cap, std::int64_t N) {
    return XQSeries::polynomial(entries, cap, N);
}

// Coefficient sequence of H as a table over the first index.
std::unique_ptr<TermTable> sequence_table(const XQSeries& H) {
    return std::make_unique<TermTable>([H](std::int64_t n, std::int64_t, std::int64_t) {
        if (n < 0) return QLaurent(H.trunc_order());
        return H.at(static_cast<int>(n));
    });
}

// Compares two series below the smaller of their truncation orders.
std::optional<Mismatch> eq_common(const QLaurent& a, const QLaurent& b) {
    return eq_up_to(a, b, std::min(a.trunc_order(), b.trunc_order()));
}

nlohmann::ordered_json order_params(std::int64_t N, int x_cap) {
    return {{"N", N}, {"x_cap", x_cap}};
}

void require_order(std::int64_t N) {
    if (N < 0) throw std::invalid_argument("truncation order must be >= 0");
}

}  // namespace

// --- F and G ----------------------------------------------------------------

XQSeries G_series(std::int64_t N, int x_cap) {
    require_order(N);
    std::vector<QLaurent> per_x(static_cast<std::size_t>(x_cap + 1), QLaurent(N));
    for (std::int64_t s = 0; s * (s + 1) < N && 2 * s <= x_cap; ++s) {
        per_x[static_cast<std::size_t>(2 * s)] =
            QLaurent::monomial(1, s * (s + 1), N) * inv_poch_q(s, N);
    }
    // Next nonzero coefficient at or above x^m is x^{2c}, c = ceil(m/2).
    auto bound = ValuationBound::from([](int m) -> std::int64_t {
        const std::int64_t c = (m + 1) / 2;
        return c * (c + 1);
    });
    return XQSeries(std::move(per_x), std::move(bound));
}

std::int64_t F_exponent(std::int64_t s, std::int64_t t, std::int64_t u) {
    return triangular(s) + 2 * triangular(t) + 3 * triangular(u) + s * t + s * u + 2 * t * u;
}

XQSeries F_series(std::int64_t N, int x_cap) {
    require_order(N);
    std::vector<QLaurent> per_x(static_cast<std::size_t>(x_cap + 1), QLaurent(N));
    InversePochhammers inv(N);
    // The exponent is strictly increasing in each of s, t, u with the others
    // fixed (all summands are nonnegative), so each loop stops at the first
    // index whose exponent reaches N, and F_exponent(0,0,u) or F_exponent(0,t,u)
    // bounds every inner completion from below.
    for (std::int64_t u = 0; F_exponent(0, 0, u) < N; ++u) {
        for (std::int64_t t = 0; F_exponent(0, t, u) < N; ++t) {
            for (std::int64_t s = 0;; ++s) {
                const std::int64_t e = F_exponent(s, t, u);
                if (s > 0 && e <= F_exponent(s - 1, t, u)) {
                    throw std::logic_error("F_series: exponent not monotone in s");
                }
                if (e >= N) break;
                const std::int64_t deg = s + 2 * t + 3 * u;
                if (deg > x_cap) break;
                QLaurent term = QLaurent::monomial(1, e, N);
                for (std::int64_t idx : {s, t, u}) {
                    if (idx > 0) term *= inv(idx);
                }
                per_x[static_cast<std::size_t>(deg)] += term;
            }
        }
    }
    return XQSeries(std::move(per_x), ValuationBound::balanced_staircase(3));
}

// --- the term f(n,t,u) ------------------------------------------------------

QLaurent f_term(std::int64_t n, std::int64_t t, std::int64_t u, std::int64_t N) {
    const std::int64_t s = n - 2 * t - 3 * u;
    if (t < 0 || u < 0 || s < 0) return QLaurent(N);
    return QLaurent::monomial(1, F_exponent(s, t, u), N) * inv_poch_q(s, N) * inv_poch_q(t, N) *
           inv_poch_q(u, N);
}

std::unique_ptr<TermTable> f_term_table(std::int64_t N) {
    return std::make_unique<TermTable>(
        [N](std::int64_t n, std::int64_t t, std::int64_t u) { return f_term(n, t, u, N); });
}

QLaurent f_n_series(std::int64_t n, std::int64_t N) {
    QLaurent acc(N);
    for (std::int64_t u = 0; 3 * u <= n; ++u) {
        for (std::int64_t t = 0; 2 * t + 3 * u <= n; ++t) acc += f_term(n, t, u, N);
    }
    return acc;
}

QLaurent g_M_series(std::int64_t M, std::int64_t N) {
    if (M < 0 || M % 2 != 0) return QLaurent(N);
    const std::int64_t s = M / 2;
    return QLaurent::monomial(1, s * (s + 1), N) * inv_poch_q(s, N);
}

// --- q-difference equations -------------------------------------------------

XQSeries gdiff_residual(const XQSeries& H, std::int64_t x4_exponent) {
    const int cap = H.x_cap();
    const std::int64_t N = H.trunc_order();
    const auto p1 = xpoly({{0, 0, 1}, {2, 2, 1}, {2, 3, 1}}, cap, N);
    const auto p2 = xpoly({{4, x4_exponent, 1}}, cap, N);
    return H - (p1 * H.x_shift(1) - p2 * H.x_shift(2));
}

XQSeries fdiff_residual(const XQSeries& H) {
    const int cap = H.x_cap();
    const std::int64_t N = H.trunc_order();
    // (1+xq)(1+x^2q^2+x^2q^3) and x^4q^7(1+xq)(1+xq^2), expanded.
    const auto p1 =
        xpoly({{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {2, 3, 1}, {3, 3, 1}, {3, 4, 1}}, cap, N);
    const auto p2 = xpoly({{4, 7, 1}, {5, 8, 1}, {5, 9, 1}, {6, 10, 1}}, cap, N);
    return H - (p1 * H.x_shift(1) - p2 * H.x_shift(2));
}

VerificationReport verify_gdiff(std::int64_t N, int x_cap, std::int64_t x4_exponent) {
    return run_check("gdiff", [&](VerificationReport& r) {
        r.params = order_params(N, x_cap);
        if (x4_exponent != 7) r.params["x4_exponent"] = x4_exponent;
        const XQSeries G = G_series(N, x_cap);
        const auto p1 = xpoly({{0, 0, 1}, {2, 2, 1}, {2, 3, 1}}, x_cap, N);
        const auto p2 = xpoly({{4, x4_exponent, 1}}, x_cap, N);
        const XQSeries rhs = p1 * G.x_shift(1) - p2 * G.x_shift(2);
        if (auto m = eq_up_to(G, rhs, N, x_cap)) r.fail(Witness::from(*m));
    });
}

VerificationReport g_recurrence_check(std::int64_t lo, std::int64_t hi, std::int64_t N) {
    return run_check("g-recurrence", [&](VerificationReport& r) {
        r.params = {{"M_lo", lo}, {"M_hi", hi}, {"N", N}};
        TermTable g([N](std::int64_t M, std::int64_t, std::int64_t) { return g_M_series(M, N); });
        const ShiftOperator op = g_recurrence_operator();
        for (std::int64_t M = lo; M <= hi; ++M) {
            const QLaurent v = apply_operator(op, g, M, 0, 0);
            if (auto w = eq_up_to(v, QLaurent(v.trunc_order()), v.trunc_order())) {
                r.fail(Witness::from(*w), "nonzero at M=" + std::to_string(M));
                return;
            }
        }
    });
}

VerificationReport certificate_check(int n_max, int t_max, int u_max, std::int64_t N,
                                     const Certificate& cert) {
    return run_check(cert.name, [&](VerificationReport& r) {
        r.params = {{"n_max", n_max}, {"t_max", t_max}, {"u_max", u_max}, {"N", N}};
        auto f = f_term_table(N);
        const ShiftOperator op = cert.combined();
        std::int64_t points = 0;
        std::int64_t failures = 0;
        std::int64_t effective = std::numeric_limits<std::int64_t>::max();
        for (int n = 0; n <= n_max; ++n) {
            for (int t = -1; t <= t_max; ++t) {
                for (int u = -1; u <= u_max; ++u) {
                    ++points;
                    const QLaurent v = apply_operator(op, *f, n, t, u);
                    effective = std::min(effective, v.trunc_order());
                    // Every comparison is against zero, so any retained
                    // nonzero coefficient below the result's own truncation
                    // is a genuine failure.
                    if (!v.is_zero()) {
                        if (failures++ == 0) {
                            const auto& lead = v.terms().front();
                            r.fail({n, lead.exponent, lead.coeff.get_str(), "0"},
                                   "nonzero at (n,t,u)=(" + std::to_string(n) + "," +
                                       std::to_string(t) + "," + std::to_string(u) + ")");
                        }
                    }
                }
            }
        }
        r.params["points"] = points;
        r.params["effective_order"] = points ? effective : N;
        if (failures) r.notes.push_back(std::to_string(failures) + " failing lattice points");
    });
}

VerificationReport fn_recurrence_check(std::int64_t lo, std::int64_t hi, std::int64_t N) {
    return run_check("fn-recurrence", [&](VerificationReport& r) {
        r.params = {{"n_lo", lo}, {"n_hi", hi}, {"N", N}};
        TermTable fn([N](std::int64_t n, std::int64_t, std::int64_t) { return f_n_series(n, N); });
        // The t,u-free part A of the certificate is the recurrence for f_n.
        const ShiftOperator A = telescoping_certificate().A;
        for (std::int64_t n = lo; n <= hi; ++n) {
            const QLaurent v = apply_operator(A, fn, n, 0, 0);
            if (!v.is_zero()) {
                const auto& lead = v.terms().front();
                r.fail({static_cast<int>(n), lead.exponent, lead.coeff.get_str(), "0"},
                       "nonzero at n=" + std::to_string(n));
                return;
            }
        }
    });
}

VerificationReport verify_fdiff(std::int64_t N, int x_cap) {
    return run_check("fdiff", [&](VerificationReport& r) {
        r.params = order_params(N, x_cap);
        const XQSeries F = F_series(N, x_cap);
        const auto p1 =
            xpoly({{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {2, 3, 1}, {3, 3, 1}, {3, 4, 1}}, x_cap, N);
        const auto p2 = xpoly({{4, 7, 1}, {5, 8, 1}, {5, 9, 1}, {6, 10, 1}}, x_cap, N);
        const XQSeries rhs = p1 * F.x_shift(1) - p2 * F.x_shift(2);
        if (auto m = eq_up_to(F, rhs, N, x_cap)) r.fail(Witness::from(*m));

        // The x^n coefficient of H - RHS(H) is the recurrence operator
        // applied to the coefficient sequence of H. Checked on F and on G,
        // whose residuals are nonzero.
        const ShiftOperator A = telescoping_certificate().A;
        const int n_top = std::min(15, x_cap);
        for (const auto& [name, H] : {std::pair{"F", F}, std::pair{"G", G_series(N, x_cap)}}) {
            const XQSeries residual = fdiff_residual(H);
            auto table = sequence_table(H);
            for (int n = 0; n <= n_top; ++n) {
                const QLaurent rec = apply_operator(A, *table, n, 0, 0);
                if (auto m = eq_common(residual.at(n), rec)) {
                    r.fail(Witness::from(*m), std::string("recurrence and q-difference equation "
                                                          "disagree on ") +
                                                  name + " at x^" + std::to_string(n));
                    return;
                }
            }
        }
        r.params["equivalence_n_max"] = n_top;
    });
}

VerificationReport verify_fincor(std::int64_t N, int x_cap) {
    return run_check("fincor", [&](VerificationReport& r) {
        r.params = order_params(N, x_cap);
        const XQSeries F = F_series(N, x_cap);
        const XQSeries G = G_series(N, x_cap);
        const XQSeries P = poch_neg_xq(N, x_cap) * G;
        if (auto m = eq_up_to(F, P, N, x_cap)) r.fail(Witness::from(*m), "F vs (-xq;q)G");

        // Both sides start with 1 at x^0 and solve the F equation.
        const QLaurent one = QLaurent::one(N);
        if (auto m = eq_up_to(F.at(0), one, N)) r.fail(Witness::from(*m), "x^0 of F");
        if (auto m = eq_up_to(P.at(0), one, N)) r.fail(Witness::from(*m), "x^0 of (-xq;q)G");
        if (auto m = eq_up_to(fdiff_residual(P), XQSeries(x_cap, N), N, x_cap)) {
            r.fail(Witness::from(*m), "(-xq;q)G does not solve the F equation");
        }

        // x = 1.
        const auto capF = x_cap_for_order(ValuationBound::balanced_staircase(3), N);
        const auto capG = x_cap_for_order(G.bound(), N);
        const auto capP = x_cap_for_order(ValuationBound::balanced_staircase(1), N);
        const QLaurent F1 = specialize_x1(F_series(N, capF));
        const QLaurent G1 = specialize_x1(G_series(N, capG));
        const QLaurent P1 = specialize_x1(poch_neg_xq(N, capP));
        if (auto m = eq_up_to(F1, P1 * G1, N)) r.fail(Witness::from(*m), "x=1 specialization");
    });
}

QLaurent warnaar_fn(std::int64_t n, std::int64_t N) {
    QLaurent acc(N);
    for (std::int64_t t = 0; 2 * t <= n; ++t) {
        acc += QLaurent::monomial(1, triangular(n - 2 * t) + t * (t + 1), N) *
               inv_poch_q(n - 2 * t, N) * inv_poch_q(t, N);
    }
    return acc;
}

VerificationReport warnaar_fn_check(std::int64_t lo, std::int64_t hi, std::int64_t N) {
    return run_check("warnaar", [&](VerificationReport& r) {
        r.params = {{"n_lo", lo}, {"n_hi", hi}, {"N", N}};
        for (std::int64_t n = lo; n <= hi; ++n) {
            if (auto m = eq_up_to(f_n_series(n, N), warnaar_fn(n, N), N)) {
                m->x_deg = static_cast<int>(n);
                r.fail(Witness::from(*m), "mismatch at n=" + std::to_string(n));
                return;
            }
        }
    });
}

QLaurent chu_vandermonde_sum(std::int64_t e, std::int64_t m, std::int64_t N) {
    if (e > 0 || m < 0) throw std::invalid_argument("chu_vandermonde: needs e <= 0 and m >= 0");
    // Each Laurent factor can lower the valuation by at most T(|e|) resp. T(m).
    const std::int64_t work = N + triangular(-e) + triangular(m) + 1;
    QLaurent acc(work);
    for (std::int64_t u = 0; u <= m; ++u) {
        acc += qpochhammer(1, e, 1, u, work) * qpochhammer(1, -m, 1, u, work) *
               QLaurent::monomial(1, u, work) * inv_poch_q(u, work);
    }
    if (acc.trunc_order() < N) throw std::logic_error("chu_vandermonde: working order too low");
    return acc.truncated(N);
}

VerificationReport chu_vandermonde_check(std::int64_t e, std::int64_t m, std::int64_t N) {
    return run_check("chu", [&](VerificationReport& r) {
        r.params = {{"e", e}, {"m", m}, {"N", N}};
        const QLaurent lhs = chu_vandermonde_sum(e, m, N);
        if (auto w = eq_up_to(lhs, QLaurent::monomial(1, e * m, N), N)) r.fail(Witness::from(*w));
    });
}

VerificationReport euler_checks(std::int64_t N, int x_cap) {
    return run_check("euler", [&](VerificationReport& r) {
        r.params = order_params(N, x_cap);
        const QLaurent odd = qpochhammer_inf(1, 1, 2, N);
        const QLaurent neg = qpochhammer_inf(-1, 1, 1, N);
        r.absorb(compare_report("euler-product", odd * neg, QLaurent::one(N), N));

        std::vector<QLaurent> per_x;
        for (int m = 0; m <= x_cap; ++m) {
            per_x.push_back(QLaurent::monomial(1, triangular(m), N) * inv_poch_q(m, N));
        }
        const XQSeries sum(std::move(per_x), ValuationBound::balanced_staircase(1));
        r.absorb(compare_report("euler-x-expansion", poch_neg_xq(N, x_cap), sum, N, x_cap));
    });
}

QLaurent rr_sum(int a, std::int64_t N) {
    QLaurent acc(N);
    for (std::int64_t n = 0; n * n + a * n < N; ++n) {
        acc += QLaurent::monomial(1, n * n + a * n, N) * inv_poch_q(n, N);
    }
    return acc;
}

QLaurent rr_product(int r, std::int64_t N) {
    return invert_unit(qpochhammer_inf(1, r, 5, N) * qpochhammer_inf(1, 5 - r, 5, N));
}

QLaurent character_product(std::int64_t N) {
    return invert_unit(qpochhammer_inf(1, 1, 2, N)) * rr_product(2, N);
}

VerificationReport rr_checks(std::int64_t N) {
    return run_check("rr", [&](VerificationReport& r) {
        r.params = {{"N", N}};
        r.absorb(compare_report("rr1", rr_sum(0, N), rr_product(1, N), N));
        r.absorb(compare_report("rr2", rr_sum(1, N), rr_product(2, N), N));
        const XQSeries G = G_series(N, 0);
        const QLaurent G1 = specialize_x1(G_series(N, x_cap_for_order(G.bound(), N)));
        r.absorb(compare_report("rr2-G(1,q)", G1, rr_product(2, N), N));
    });
}

VerificationReport character_chain_check(std::int64_t N) {
    return run_check("characters", [&](VerificationReport& r) {
        r.params = {{"N", N}};
        const QLaurent S3 = specialize_x1(lhs_theorem(3, N));
        const QLaurent F1 =
            specialize_x1(F_series(N, x_cap_for_order(ValuationBound::balanced_staircase(3), N)));
        const XQSeries G0 = G_series(N, 0);
        const QLaurent G1 = specialize_x1(G_series(N, x_cap_for_order(G0.bound(), N)));
        const QLaurent neg = qpochhammer_inf(-1, 1, 1, N);
        const QLaurent odd = qpochhammer_inf(1, 1, 2, N);

        const auto link = [&](const char* name, const QLaurent& a, const QLaurent& b) {
            auto sub = compare_report(name, a, b, N);
            r.notes.push_back(std::string(sub.passed ? "pass " : "FAIL ") + name);
            r.absorb(sub);
        };
        link("(i) S_3 generating function at x=1 = F(1,q)", S3, F1);
        link("(ii) F(1,q) = (-q;q)_inf G(1,q)", F1, neg * G1);
        link("(iii) F(1,q) = character product [consistency check of the character input]", F1,
             character_product(N));
        link("(iv) euler (q;q^2)_inf (-q;q)_inf = 1", odd * neg, QLaurent::one(N));
        link("(iv) (q;q^2)_inf F(1,q) = 1/(q^2,q^3;q^5)_inf", odd * F1, rr_product(2, N));
        link("(iv) G(1,q) = 1/(q^2,q^3;q^5)_inf", G1, rr_product(2, N));
    });
}

}  // namespace rrc
