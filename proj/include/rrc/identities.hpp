#pragma once

// The q-series side: F, G, the hypergeometric term f(n,t,u) with its
// certificate, the q-difference equations and the closing identities.

#include <memory>

#include "rrc/report.hpp"
#include "rrc/series.hpp"
#include "rrc/shift_operator.hpp"

namespace rrc {

// G(x,q) = sum_s q^{s(s+1)} x^{2s} / (q;q)_s.
XQSeries G_series(std::int64_t N, int x_cap);
// F(x,q) = sum_{s,t,u} q^{E(s,t,u)} x^{s+2t+3u} / ((q;q)_s (q;q)_t (q;q)_u),
// E = C(s+1,2) + 2C(t+1,2) + 3C(u+1,2) + st + su + 2tu.
XQSeries F_series(std::int64_t N, int x_cap);
std::int64_t F_exponent(std::int64_t s, std::int64_t t, std::int64_t u);

// f(n,t,u); zero when t, u or n-2t-3u is negative.
QLaurent f_term(std::int64_t n, std::int64_t t, std::int64_t u, std::int64_t N);
// Memoized f(., ., .) at order N.
std::unique_ptr<TermTable> f_term_table(std::int64_t N);

// f_n = sum_{2t+3u <= n} f(n,t,u); zero for n < 0.
QLaurent f_n_series(std::int64_t n, std::int64_t N);
// g_M = q^{s(s+1)}/(q;q)_s for M = 2s >= 0, zero otherwise.
QLaurent g_M_series(std::int64_t M, std::int64_t N);

// G(x) = (1 + x^2 q^2 + x^2 q^3) G(xq) - x^4 q^{x4_exponent} G(xq^2).
VerificationReport verify_gdiff(std::int64_t N, int x_cap, std::int64_t x4_exponent = 7);
// (1-q^M) g_M - q^M (1+q) g_{M-2} + q^{2M-1} g_{M-4} = 0 for M in [lo, hi].
VerificationReport g_recurrence_check(std::int64_t lo, std::int64_t hi, std::int64_t N);

// (A + (1-T)B + (1-U)C) f = 0 on 0<=n<=n_max, -1<=t<=t_max, -1<=u<=u_max.
VerificationReport certificate_check(int n_max, int t_max, int u_max, std::int64_t N,
                                     const Certificate& cert = telescoping_certificate());
// A applied to n -> f_n vanishes for n in [lo, hi].
VerificationReport fn_recurrence_check(std::int64_t lo, std::int64_t hi, std::int64_t N);

// F(x) = (1+xq)(1+x^2q^2+x^2q^3) F(xq) - x^4 q^7 (1+xq)(1+xq^2) F(xq^2),
// plus the coefficientwise match between this equation and the recurrence
// for n <= min(15, x_cap).
VerificationReport verify_fdiff(std::int64_t N, int x_cap);

// The x^n coefficients of H(x) - RHS(H) for the F equation, computed
// through x-shifts of H.
XQSeries fdiff_residual(const XQSeries& H);
XQSeries gdiff_residual(const XQSeries& H, std::int64_t x4_exponent = 7);

// F = (-xq;q)_inf G.
VerificationReport verify_fincor(std::int64_t N, int x_cap);
// f_n against the single sum over t of q^{C(n-2t+1,2)+t(t+1)} / ((q;q)_{n-2t}(q;q)_t).
VerificationReport warnaar_fn_check(std::int64_t lo, std::int64_t hi, std::int64_t N);
QLaurent warnaar_fn(std::int64_t n, std::int64_t N);
// sum_{u=0}^{m} (q^e;q)_u (q^-m;q)_u q^u / (q;q)_u == q^{e m}.
VerificationReport chu_vandermonde_check(std::int64_t e, std::int64_t m, std::int64_t N);
QLaurent chu_vandermonde_sum(std::int64_t e, std::int64_t m, std::int64_t N);
// (q;q^2)_inf (-q;q)_inf = 1 and the x-expansion of (-xq;q)_inf.
VerificationReport euler_checks(std::int64_t N, int x_cap);
// Both Rogers-Ramanujan identities; G(1,q) both from G_series and as a
// direct sum.
VerificationReport rr_checks(std::int64_t N);
// Theorem at k=3 -> F(1,q); F(1,q) = (-q;q)_inf G(1,q); F(1,q) against the
// character product; G(1,q) = 1/(q^2,q^3;q^5)_inf.
VerificationReport character_chain_check(std::int64_t N);

// sum_n q^{n^2 + a n}/(q;q)_n for a = 0 (first identity) or a = 1.
QLaurent rr_sum(int a, std::int64_t N);
// 1/(q^r, q^{5-r}; q^5)_inf.
QLaurent rr_product(int r, std::int64_t N);
// 1/(q;q^2)_inf * 1/(q^2,q^3;q^5)_inf.
QLaurent character_product(std::int64_t N);

}  // namespace rrc
