#include "rrc/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rrc {

namespace {

constexpr std::int64_t kNoTerms = ValuationBound::kNoTerms;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= kNoTerms || b >= kNoTerms) return kNoTerms;
    return std::min(a + b, kNoTerms);
}

// Dense coefficient block starting at `lowest`.
struct Dense {
    std::int64_t lowest = 0;
    std::vector<Integer> c;
};

Dense to_dense(const QLaurent& a, std::int64_t below) {
    Dense d;
    if (a.is_zero()) return d;
    d.lowest = *a.valuation();
    const std::int64_t top = std::min(*a.degree() + 1, below);
    if (top <= d.lowest) return d;
    d.c.resize(static_cast<std::size_t>(top - d.lowest));
    for (const auto& t : a.terms()) {
        if (t.exponent >= top) break;
        d.c[static_cast<std::size_t>(t.exponent - d.lowest)] = t.coeff;
    }
    return d;
}

}  // namespace

QLaurent QLaurent::monomial(const Integer& c, std::int64_t d, std::int64_t trunc_order) {
    QLaurent r(trunc_order);
    if (c != 0 && d < trunc_order) r.terms_.push_back({d, c});
    return r;
}

QLaurent QLaurent::from_dense(std::span<const Integer> coeffs, std::int64_t lowest,
                              std::int64_t trunc_order) {
    QLaurent r(trunc_order);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const std::int64_t e = lowest + static_cast<std::int64_t>(i);
        if (e >= trunc_order) break;
        if (coeffs[i] != 0) r.terms_.push_back({e, coeffs[i]});
    }
    return r;
}

QLaurent QLaurent::from_terms(std::vector<Term> terms, std::int64_t trunc_order) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    QLaurent r(trunc_order);
    for (auto& t : terms) {
        if (t.exponent >= trunc_order) break;
        if (!r.terms_.empty() && r.terms_.back().exponent == t.exponent) {
            r.terms_.back().coeff += t.coeff;
            if (r.terms_.back().coeff == 0) r.terms_.pop_back();
        } else if (t.coeff != 0) {
            r.terms_.push_back(std::move(t));
        }
    }
    return r;
}

std::optional<std::int64_t> QLaurent::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().exponent;
}

std::optional<std::int64_t> QLaurent::degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().exponent;
}

Integer QLaurent::coefficient(std::int64_t d) const {
    if (d >= trunc_) {
        throw std::out_of_range("coefficient of q^" + std::to_string(d) +
                                " requested at truncation order " + std::to_string(trunc_));
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), d,
                               [](const Term& t, std::int64_t e) { return t.exponent < e; });
    if (it != terms_.end() && it->exponent == d) return it->coeff;
    return 0;
}

QLaurent QLaurent::truncated(std::int64_t n) const {
    QLaurent r(std::min(n, trunc_));
    for (const auto& t : terms_) {
        if (t.exponent >= r.trunc_) break;
        r.terms_.push_back(t);
    }
    return r;
}

QLaurent QLaurent::shifted(std::int64_t e, const Integer& c) const {
    QLaurent r(std::min(trunc_, trunc_ + e));
    if (c == 0) return r;
    for (const auto& t : terms_) {
        if (t.exponent + e >= r.trunc_) break;
        r.terms_.push_back({t.exponent + e, t.coeff * c});
    }
    return r;
}

QLaurent QLaurent::operator-() const {
    QLaurent r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

QLaurent operator+(const QLaurent& a, const QLaurent& b) {
    QLaurent r(std::min(a.trunc_, b.trunc_));
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != a.terms_.end() && i->exponent < j->exponent)) {
            if (i->exponent >= r.trunc_) break;
            r.terms_.push_back(*i++);
        } else if (i == a.terms_.end() || j->exponent < i->exponent) {
            if (j->exponent >= r.trunc_) break;
            r.terms_.push_back(*j++);
        } else {
            if (i->exponent >= r.trunc_) break;
            Integer s = i->coeff + j->coeff;
            if (s != 0) r.terms_.push_back({i->exponent, std::move(s)});
            ++i;
            ++j;
        }
    }
    return r;
}

QLaurent operator-(const QLaurent& a, const QLaurent& b) { return a + (-b); }

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    // Coefficient D of the product is determined by the known data iff
    // D < a.trunc + val(b) and D < b.trunc + val(a); the result never claims
    // more than min(a.trunc, b.trunc).
    std::int64_t trunc = std::min(a.trunc_, b.trunc_);
    if (!b.is_zero()) trunc = std::min(trunc, a.trunc_ + *b.valuation());
    if (!a.is_zero()) trunc = std::min(trunc, b.trunc_ + *a.valuation());
    QLaurent r(trunc);
    if (a.is_zero() || b.is_zero()) return r;

    const std::int64_t va = *a.valuation();
    const std::int64_t vb = *b.valuation();
    const std::int64_t lowest = va + vb;
    if (lowest >= trunc) return r;
    const Dense da = to_dense(a, trunc - vb);
    const Dense db = to_dense(b, trunc - va);
    const std::size_t len = static_cast<std::size_t>(trunc - lowest);
    std::vector<Integer> out(std::min(len, da.c.size() + db.c.size() - 1));
    for (std::size_t i = 0; i < da.c.size(); ++i) {
        if (da.c[i] == 0) continue;
        const std::size_t jmax = std::min(db.c.size(), out.size() - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), da.c[i].get_mpz_t(), db.c[j].get_mpz_t());
        }
    }
    return QLaurent::from_dense(out, lowest, trunc);
}

std::string QLaurent::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (first) {
            os << t.coeff.get_str();
        } else if (t.coeff < 0) {
            os << " - " << Integer(-t.coeff).get_str();
        } else {
            os << " + " << t.coeff.get_str();
        }
        os << "*q^" << t.exponent;
        first = false;
    }
    os << (first ? "" : " + ") << "O(q^" << trunc_ << ")";
    return os.str();
}

QLaurent invert_unit(const QLaurent& a) {
    // Nothing is known below q^0, so there is nothing to invert either.
    if (a.trunc_order() <= 0 && a.is_zero()) return QLaurent(a.trunc_order());
    if (a.is_zero() || *a.valuation() != 0 || abs(a.terms().front().coeff) != 1) {
        throw std::domain_error("invert_unit: lowest term must be +-q^0, got " + a.to_string());
    }
    const std::int64_t n = a.trunc_order();
    if (n <= 0) return QLaurent(n);
    const Dense da = to_dense(a, n);
    const Integer& c0 = da.c[0];
    std::vector<Integer> b(static_cast<std::size_t>(n));
    b[0] = c0;  // 1/c0 == c0 for c0 = +-1
    Integer acc;
    for (std::size_t k = 1; k < b.size(); ++k) {
        acc = 0;
        const std::size_t jmax = std::min(k, da.c.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) {
            mpz_addmul(acc.get_mpz_t(), da.c[j].get_mpz_t(), b[k - j].get_mpz_t());
        }
        b[k] = -c0 * acc;
    }
    return QLaurent::from_dense(b, 0, n);
}

QLaurent qpochhammer(int sign, std::int64_t v, std::int64_t step, std::int64_t n, std::int64_t N) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("qpochhammer: sign must be +-1");
    if (n < 0) throw std::invalid_argument("qpochhammer: negative length");
    if (n > 1 && step < 1) throw std::invalid_argument("qpochhammer: step must be >= 1");

    if (v >= 0) {
        // Nonnegative exponents: factors at or above N act as 1 below N.
        if (N <= 0) return QLaurent(N);
        std::vector<Integer> c(static_cast<std::size_t>(N));
        c[0] = 1;
        for (std::int64_t j = 0; j < n; ++j) {
            const std::int64_t e = v + j * step;
            if (e >= N) break;
            for (std::int64_t d = N - 1; d >= e; --d) {
                if (sign == 1)
                    c[d] -= c[d - e];
                else
                    c[d] += c[d - e];
            }
        }
        return QLaurent::from_dense(c, 0, N);
    }

    // Laurent factors: expand the finite product exactly, then truncate.
    std::int64_t lowest = 0;
    std::int64_t highest = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t e = v + j * step;
        lowest += std::min<std::int64_t>(e, 0);
        highest += std::max<std::int64_t>(e, 0);
    }
    std::vector<Integer> c(static_cast<std::size_t>(highest - lowest + 1));
    std::int64_t cur_low = 0;  // exponent of c[0] relative to the running product
    std::vector<Integer> next(c.size());
    c[0] = 1;
    std::size_t used = 1;
    for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t e = v + j * step;
        const std::int64_t new_low = cur_low + std::min<std::int64_t>(e, 0);
        const std::size_t new_used = used + static_cast<std::size_t>(std::abs(e));
        std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(new_used), 0);
        for (std::size_t i = 0; i < used; ++i) {
            if (c[i] == 0) continue;
            const std::int64_t exp1 = cur_low + static_cast<std::int64_t>(i);
            next[static_cast<std::size_t>(exp1 - new_low)] += c[i];
            if (sign == 1)
                next[static_cast<std::size_t>(exp1 + e - new_low)] -= c[i];
            else
                next[static_cast<std::size_t>(exp1 + e - new_low)] += c[i];
        }
        std::swap(c, next);
        cur_low = new_low;
        used = new_used;
    }
    c.resize(used);
    return QLaurent::from_dense(c, cur_low, N);
}

QLaurent qpochhammer_inf(int sign, std::int64_t v, std::int64_t step, std::int64_t N) {
    if (v < 1 || step < 1) {
        throw std::invalid_argument("qpochhammer_inf: needs v >= 1 and step >= 1");
    }
    const std::int64_t factors = N > v ? (N - v + step - 1) / step : 0;
    return qpochhammer(sign, v, step, factors, N);
}

QLaurent inv_poch_q(std::int64_t n, std::int64_t N) {
    if (n < 0) throw std::invalid_argument("inv_poch_q: negative length");
    if (N <= 0) return QLaurent(N);
    // Partitions into parts from {1..n}.
    std::vector<Integer> c(static_cast<std::size_t>(N));
    c[0] = 1;
    for (std::int64_t j = 1; j <= n && j < N; ++j) {
        for (std::int64_t d = j; d < N; ++d) c[d] += c[d - j];
    }
    return QLaurent::from_dense(c, 0, N);
}

QLaurent exact_divide(const QLaurent& num, const QLaurent& den) {
    if (den.is_zero() || *den.valuation() != 0 || abs(den.terms().front().coeff) != 1) {
        throw std::domain_error("exact_divide: denominator must have constant term +-1");
    }
    if (num.is_zero()) return QLaurent(num.trunc_order());
    if (*num.valuation() < 0) throw std::domain_error("exact_divide: Laurent numerator");
    const std::int64_t qdeg = *num.degree() - *den.degree();
    if (qdeg < 0) throw std::domain_error("exact_divide: remainder is nonzero");
    const std::int64_t T = *num.degree() + 1;
    const QLaurent quot = (num.truncated(qdeg + 1) * invert_unit(den.truncated(qdeg + 1)))
                              .truncated(qdeg + 1);
    const QLaurent quot_t = QLaurent::from_terms(quot.terms(), T);
    const QLaurent back = QLaurent::from_terms(den.terms(), T) * quot_t;
    if (back != QLaurent::from_terms(num.terms(), T)) {
        throw std::domain_error("exact_divide: remainder is nonzero");
    }
    return QLaurent::from_terms(quot_t.terms(), num.trunc_order());
}

QLaurent q_binomial(std::int64_t n, std::int64_t m, std::int64_t N) {
    if (m < 0 || m > n) {
        throw std::invalid_argument("q_binomial: need 0 <= m <= n, got n=" + std::to_string(n) +
                                    " m=" + std::to_string(m));
    }
    const std::int64_t T = triangular(n) + 1;
    const QLaurent quot = exact_divide(poch_q(1, n, T), poch_q(1, m, T) * poch_q(1, n - m, T));
    return QLaurent::from_terms(quot.terms(), N);
}

// --- ValuationBound ---------------------------------------------------------

ValuationBound ValuationBound::polynomial(int degree) {
    return from([degree](int m) -> std::int64_t { return m <= degree ? 0 : kNoTerms; });
}

ValuationBound ValuationBound::balanced_staircase(int k) {
    return from([k](int m) -> std::int64_t {
        const std::int64_t l = m / k;
        const std::int64_t rem = m % k;
        return rem * triangular(l + 1) + (k - rem) * triangular(l);
    });
}

std::optional<std::int64_t> ValuationBound::at(int m) const {
    if (!f_) return std::nullopt;
    return f_(m);
}

ValuationBound min(const ValuationBound& a, const ValuationBound& b) {
    if (!a.known() || !b.known()) return ValuationBound::unknown();
    return ValuationBound::from([fa = a.f_, fb = b.f_](int m) { return std::min(fa(m), fb(m)); });
}

ValuationBound convolve(const ValuationBound& a, const ValuationBound& b) {
    if (!a.known() || !b.known()) return ValuationBound::unknown();
    return ValuationBound::from([fa = a.f_, fb = b.f_](int m) {
        std::int64_t best = kNoTerms;
        for (int j = 0; j <= m; ++j) best = std::min(best, sat_add(fa(j), fb(m - j)));
        return best;
    });
}

ValuationBound ValuationBound::substituted(std::int64_t r, std::int64_t e) const {
    if (!known()) return unknown();
    return from([f = f_, r, e](int m) { return sat_add(f(m), r * m + e); });
}

// --- XQSeries ---------------------------------------------------------------

XQSeries::XQSeries(int x_cap, std::int64_t trunc_order)
    : trunc_(trunc_order),
      per_x_(static_cast<std::size_t>(std::max(x_cap, 0) + 1), QLaurent(trunc_order)),
      bound_(ValuationBound::polynomial(-1)) {
    if (x_cap < 0) throw std::invalid_argument("XQSeries: negative x_cap");
}

XQSeries::XQSeries(std::vector<QLaurent> per_x, ValuationBound bound)
    : trunc_(0), per_x_(std::move(per_x)), bound_(std::move(bound)) {
    if (per_x_.empty()) throw std::invalid_argument("XQSeries: needs at least x^0");
    trunc_ = per_x_.front().trunc_order();
    for (const auto& s : per_x_) trunc_ = std::min(trunc_, s.trunc_order());
    for (auto& s : per_x_) s = s.truncated(trunc_);
}

XQSeries XQSeries::polynomial(const std::vector<Entry>& entries, int x_cap, std::int64_t N) {
    std::vector<std::vector<QLaurent::Term>> by_x(static_cast<std::size_t>(x_cap + 1));
    int top = -1;
    for (const auto& e : entries) {
        if (e.x_deg < 0) throw std::invalid_argument("XQSeries::polynomial: negative x-degree");
        top = std::max(top, e.x_deg);
        if (e.x_deg <= x_cap) by_x[static_cast<std::size_t>(e.x_deg)].push_back({e.q_deg, e.coeff});
    }
    std::int64_t lowest = 0;
    for (const auto& e : entries) lowest = std::min(lowest, e.q_deg);
    std::vector<QLaurent> per_x;
    per_x.reserve(by_x.size());
    for (auto& terms : by_x) per_x.push_back(QLaurent::from_terms(std::move(terms), N));
    auto bound = ValuationBound::polynomial(top).substituted(0, lowest);
    return XQSeries(std::move(per_x), std::move(bound));
}

XQSeries XQSeries::with_bound(ValuationBound b) const {
    XQSeries r = *this;
    r.bound_ = std::move(b);
    return r;
}

Integer XQSeries::coefficient(int m, std::int64_t d) const {
    if (m < 0) return 0;
    if (m > x_cap()) {
        throw std::out_of_range("coefficient of x^" + std::to_string(m) + " above x_cap " +
                                std::to_string(x_cap()));
    }
    return per_x_[static_cast<std::size_t>(m)].coefficient(d);
}

XQSeries XQSeries::x_shift(std::int64_t r) const {
    if (r < 0) throw std::invalid_argument("x_shift: r must be >= 0");
    std::vector<QLaurent> out;
    out.reserve(per_x_.size());
    for (std::size_t m = 0; m < per_x_.size(); ++m) {
        out.push_back(per_x_[m].shifted(r * static_cast<std::int64_t>(m)));
    }
    return XQSeries(std::move(out), bound_.substituted(r));
}

XQSeries XQSeries::truncated(int cap, std::int64_t N) const {
    const int c = std::min(cap, x_cap());
    std::vector<QLaurent> out;
    for (int m = 0; m <= c; ++m) out.push_back(per_x_[static_cast<std::size_t>(m)].truncated(N));
    return XQSeries(std::move(out), bound_);
}

XQSeries operator+(const XQSeries& a, const XQSeries& b) {
    const int cap = std::min(a.x_cap(), b.x_cap());
    std::vector<QLaurent> out;
    for (int m = 0; m <= cap; ++m) out.push_back(a.at(m) + b.at(m));
    return XQSeries(std::move(out), min(a.bound_, b.bound_));
}

XQSeries XQSeries::operator-() const {
    std::vector<QLaurent> out;
    for (const auto& s : per_x_) out.push_back(-s);
    return XQSeries(std::move(out), bound_);
}

XQSeries operator-(const XQSeries& a, const XQSeries& b) { return a + (-b); }

XQSeries operator*(const XQSeries& a, const XQSeries& b) {
    const int cap = std::min(a.x_cap(), b.x_cap());
    std::vector<QLaurent> out;
    const std::int64_t N = std::min(a.trunc_order(), b.trunc_order());
    for (int m = 0; m <= cap; ++m) {
        QLaurent acc(N);
        for (int j = 0; j <= m; ++j) {
            if (a.at(j).is_zero() && b.at(m - j).is_zero()) continue;
            acc += a.at(j) * b.at(m - j);
        }
        out.push_back(std::move(acc));
    }
    return XQSeries(std::move(out), convolve(a.bound_, b.bound_));
}

std::vector<XQSeries::Entry> XQSeries::entries() const {
    std::vector<Entry> out;
    for (std::size_t m = 0; m < per_x_.size(); ++m) {
        for (const auto& t : per_x_[m].terms()) {
            out.push_back({static_cast<int>(m), t.exponent, t.coeff});
        }
    }
    return out;
}

QLaurent specialize_x1(const XQSeries& a) {
    const auto v = a.bound().at(a.x_cap() + 1);
    if (!v || *v < a.trunc_order()) {
        throw std::domain_error(
            "specialize_x1: x_cap " + std::to_string(a.x_cap()) +
            " does not guarantee that higher x-degrees vanish below q^" +
            std::to_string(a.trunc_order()));
    }
    QLaurent acc(a.trunc_order());
    for (const auto& s : a.per_x()) acc += s;
    return acc;
}

Integer coefficient(const XQSeries& a, int m, std::int64_t d) { return a.coefficient(m, d); }

int x_cap_for_order(const ValuationBound& bound, std::int64_t N) {
    if (!bound.known()) throw std::domain_error("x_cap_for_order: unknown valuation bound");
    int cap = 0;
    while (*bound.at(cap + 1) < N) {
        ++cap;
        if (cap > 1'000'000) throw std::domain_error("x_cap_for_order: bound does not grow");
    }
    return cap;
}

namespace {

std::optional<Mismatch> compare_one(const QLaurent& a, const QLaurent& b, std::int64_t N, int m) {
    auto i = a.terms().begin();
    auto j = b.terms().begin();
    auto end_i = a.terms().end();
    auto end_j = b.terms().end();
    while (true) {
        const std::int64_t ei = i == end_i ? std::numeric_limits<std::int64_t>::max() : i->exponent;
        const std::int64_t ej = j == end_j ? std::numeric_limits<std::int64_t>::max() : j->exponent;
        const std::int64_t e = std::min(ei, ej);
        if (e >= N) return std::nullopt;
        if (ei == ej) {
            if (i->coeff != j->coeff) return Mismatch{m, e, i->coeff, j->coeff};
            ++i;
            ++j;
        } else if (ei < ej) {
            return Mismatch{m, e, i->coeff, 0};
        } else {
            return Mismatch{m, e, 0, j->coeff};
        }
    }
}

}  // namespace

std::optional<Mismatch> eq_up_to(const QLaurent& a, const QLaurent& b, std::int64_t N) {
    if (N > a.trunc_order() || N > b.trunc_order()) {
        throw std::invalid_argument("eq_up_to: order " + std::to_string(N) +
                                    " exceeds truncation (" + std::to_string(a.trunc_order()) +
                                    ", " + std::to_string(b.trunc_order()) + ")");
    }
    return compare_one(a, b, N, 0);
}

std::optional<Mismatch> eq_up_to(const XQSeries& a, const XQSeries& b, std::int64_t N, int x_cap) {
    if (N > a.trunc_order() || N > b.trunc_order()) {
        throw std::invalid_argument("eq_up_to: order " + std::to_string(N) +
                                    " exceeds truncation (" + std::to_string(a.trunc_order()) +
                                    ", " + std::to_string(b.trunc_order()) + ")");
    }
    if (x_cap > a.x_cap() || x_cap > b.x_cap()) {
        throw std::invalid_argument("eq_up_to: x_cap " + std::to_string(x_cap) +
                                    " exceeds series caps");
    }
    for (int m = 0; m <= x_cap; ++m) {
        if (auto w = compare_one(a.at(m), b.at(m), N, m)) return w;
    }
    return std::nullopt;
}

XQSeries poch_neg_xq(std::int64_t N, int x_cap) {
    if (x_cap < 0) throw std::invalid_argument("poch_neg_xq: negative x_cap");
    const std::size_t len = static_cast<std::size_t>(std::max<std::int64_t>(N, 0));
    std::vector<std::vector<Integer>> p(static_cast<std::size_t>(x_cap + 1),
                                        std::vector<Integer>(len));
    if (len > 0) p[0][0] = 1;
    // Multiply by (1 + x q^j) for j = 1 .. N-1.
    for (std::int64_t j = 1; j < N; ++j) {
        for (int m = x_cap; m >= 1; --m) {
            auto& dst = p[static_cast<std::size_t>(m)];
            const auto& src = p[static_cast<std::size_t>(m - 1)];
            for (std::int64_t d = N - 1; d >= j; --d) dst[d] += src[d - j];
        }
    }
    std::vector<QLaurent> per_x;
    for (const auto& row : p) per_x.push_back(QLaurent::from_dense(row, 0, N));
    return XQSeries(std::move(per_x), ValuationBound::balanced_staircase(1));
}

}  // namespace rrc
