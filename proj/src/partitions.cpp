#include "rrc/partitions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace rrc {

namespace {

std::string join_parts(const std::vector<int>& parts) {
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s + "]";
}

nlohmann::ordered_json to_json(const std::vector<int>& j) { return nlohmann::ordered_json(j); }

// Recursive strict-partition generator. `len_left` < 0 means no length
// constraint. Parts are appended to `buf` in decreasing order.
class StrictWalker {
public:
    StrictWalker(std::vector<int>& buf, const std::function<void()>& leaf)
        : buf_(buf), leaf_(leaf) {}

    void run(int budget, int max_part, int len_left) {
        if (len_left == 0) {
            leaf_();
            return;
        }
        if (len_left < 0) leaf_();
        const int need = len_left > 0 ? len_left : 1;
        // With r parts still to place the smallest is at least r.
        for (int p = std::min(budget, max_part); p >= need; --p) {
            if (len_left > 0) {
                // Remaining r-1 parts below p need at least (r-1)r/2 boxes.
                const std::int64_t rest = triangular(len_left - 1);
                if (p + rest > budget) continue;
            }
            buf_.push_back(p);
            run(budget - p, p - 1, len_left > 0 ? len_left - 1 : -1);
            buf_.pop_back();
        }
    }

private:
    std::vector<int>& buf_;
    const std::function<void()>& leaf_;
};

void check_j(const std::vector<int>& j) {
    if (j.empty()) throw std::invalid_argument("j-tuple must have k >= 1 entries");
    for (int x : j) {
        if (x < 0) throw std::invalid_argument("j-tuple entries must be >= 0");
    }
}

QLaurent size_gf(const std::vector<MultiPartition>& items, std::int64_t N) {
    std::vector<Integer> c(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)));
    for (const auto& b : items) {
        if (b.size() < N) c[static_cast<std::size_t>(b.size())] += 1;
    }
    return QLaurent::from_dense(c, 0, N);
}

}  // namespace

// --- types ------------------------------------------------------------------

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1 || (i && parts_[i] > parts_[i - 1])) {
            throw std::invalid_argument("not a partition: " + join_parts(parts_));
        }
    }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Partition::is_strict() const {
    return std::adjacent_find(parts_.begin(), parts_.end(), std::less_equal<>{}) == parts_.end();
}

StrictPartition::StrictPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1 || (i && parts_[i] >= parts_[i - 1])) {
            throw std::invalid_argument("not a strict partition: " + join_parts(parts_));
        }
    }
}

int StrictPartition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int MultiPartition::size() const {
    int s = 0;
    for (const auto& c : components) s += c.size();
    return s;
}

int MultiPartition::length() const {
    int s = 0;
    for (const auto& c : components) s += c.length();
    return s;
}

std::string to_string(const Partition& p) { return join_parts(p.parts()); }

std::string to_string(const MultiPartition& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.components.size(); ++i) {
        if (i) s += ',';
        s += join_parts(b.components[i].parts());
    }
    return s + "]";
}

MultiPartition parse_multipartition(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("multipartition must be a non-empty list of lists");
    }
    MultiPartition b;
    for (const auto& comp : j) b.components.emplace_back(comp.get<std::vector<int>>());
    return b;
}

void write_lines(std::ostream& os, const std::vector<MultiPartition>& items) {
    for (const auto& b : items) os << to_string(b) << '\n';
}

// --- enumeration ------------------------------------------------------------

void for_each_partition_in_box(int max_len, int max_part,
                               const std::function<void(const Partition&)>& visit) {
    if (max_len < 0 || max_part < 0) throw std::invalid_argument("box bounds must be >= 0");
    std::vector<int> buf;
    std::function<void(int, int)> rec = [&](int len_left, int cap) {
        visit(Partition::unchecked(buf));
        if (len_left == 0) return;
        for (int p = cap; p >= 1; --p) {
            buf.push_back(p);
            rec(len_left - 1, p);
            buf.pop_back();
        }
    };
    rec(max_len, max_part);
}

std::vector<Partition> partitions_in_box(int max_len, int max_part) {
    std::vector<Partition> out;
    for_each_partition_in_box(max_len, max_part, [&](const Partition& p) { out.push_back(p); });
    return out;
}

void for_each_strict(const StrictConstraints& c,
                     const std::function<void(const StrictPartition&)>& visit) {
    if (c.max_size < 0 || c.exact_len.value_or(0) < 0 || c.max_part.value_or(0) < 0) {
        throw std::invalid_argument("strict partition bounds must be >= 0");
    }
    std::vector<int> buf;
    const std::function<void()> leaf = [&] { visit(StrictPartition::unchecked(buf)); };
    StrictWalker(buf, leaf).run(c.max_size, c.max_part.value_or(c.max_size),
                                c.exact_len.value_or(-1));
}

std::vector<StrictPartition> strict_partitions(const StrictConstraints& c) {
    std::vector<StrictPartition> out;
    for_each_strict(c, [&](const StrictPartition& p) { out.push_back(p); });
    return out;
}

StrictPartition staircase(int j) {
    if (j < 0) throw std::invalid_argument("staircase: j must be >= 0");
    std::vector<int> parts(static_cast<std::size_t>(j));
    std::iota(parts.rbegin(), parts.rend(), 1);
    return StrictPartition::unchecked(std::move(parts));
}

bool is_kleshchev(const MultiPartition& b) {
    for (std::size_t i = 0; i + 1 < b.components.size(); ++i) {
        if (b.components[i].length() < b.components[i + 1].first()) return false;
    }
    return true;
}

void for_each_kleshchev(int k, int max_size,
                        const std::function<void(const MultiPartition&)>& visit) {
    if (k < 1) throw std::invalid_argument("S_k needs k >= 1");
    if (max_size < 0) return;
    MultiPartition cur;
    cur.components.resize(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> bufs(static_cast<std::size_t>(k));
    // Component i+1 has parts bounded by the length of component i.
    std::function<void(int, int, int)> component = [&](int i, int budget, int max_part) {
        auto& buf = bufs[static_cast<std::size_t>(i)];
        const std::function<void()> leaf = [&, i, budget] {
            cur.components[static_cast<std::size_t>(i)] = StrictPartition::unchecked(buf);
            if (i + 1 == k) {
                visit(cur);
                return;
            }
            int used = 0;
            for (int p : buf) used += p;
            component(i + 1, budget - used, static_cast<int>(buf.size()));
        };
        StrictWalker(buf, leaf).run(budget, max_part, -1);
    };
    component(0, max_size, max_size);
}

std::vector<MultiPartition> kleshchev_multipartitions(int k, int max_size) {
    std::vector<MultiPartition> out;
    for_each_kleshchev(k, max_size, [&](const MultiPartition& b) { out.push_back(b); });
    return out;
}

// --- generating functions ---------------------------------------------------

int theorem_x_cap(int k, std::int64_t N) {
    int l = 0;
    while (triangular(l + 1) < N) ++l;
    return k * l;
}

XQSeries lhs_theorem(int k, std::int64_t N) {
    if (k < 1) throw std::invalid_argument("lhs_theorem: k must be >= 1");
    if (N < 0) throw std::invalid_argument("lhs_theorem: N must be >= 0");
    const int cap = theorem_x_cap(k, N);
    // Counts fit comfortably in 64 bits at any order this enumeration can reach.
    std::vector<std::vector<std::uint64_t>> counts(
        static_cast<std::size_t>(cap + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(N)));
    for_each_kleshchev(k, static_cast<int>(N) - 1, [&](const MultiPartition& b) {
        ++counts[static_cast<std::size_t>(b.length())][static_cast<std::size_t>(b.size())];
    });
    std::vector<QLaurent> per_x;
    for (const auto& row : counts) {
        std::vector<QLaurent::Term> terms;
        for (std::size_t d = 0; d < row.size(); ++d) {
            if (row[d]) terms.push_back({static_cast<std::int64_t>(d), Integer(row[d])});
        }
        per_x.push_back(QLaurent::from_terms(std::move(terms), N));
    }
    return XQSeries(std::move(per_x), ValuationBound::balanced_staircase(k));
}

std::int64_t theorem_exponent(const std::vector<int>& i) {
    std::int64_t e = 0;
    for (std::size_t a = 0; a < i.size(); ++a) {
        e += static_cast<std::int64_t>(a + 1) * triangular(i[a]);
        for (std::size_t b = a + 1; b < i.size(); ++b) {
            e += static_cast<std::int64_t>(a + 1) * i[a] * i[b];
        }
    }
    return e;
}

XQSeries rhs_theorem(int k, std::int64_t N) {
    if (k < 1) throw std::invalid_argument("rhs_theorem: k must be >= 1");
    if (N < 0) throw std::invalid_argument("rhs_theorem: N must be >= 0");
    const int cap = theorem_x_cap(k, N);
    std::vector<QLaurent> per_x(static_cast<std::size_t>(cap + 1), QLaurent(N));
    std::vector<QLaurent> inv;  // inv[n] = 1/(q;q)_n
    auto inv_at = [&](int n) -> const QLaurent& {
        while (static_cast<int>(inv.size()) <= n) {
            inv.push_back(inv_poch_q(static_cast<std::int64_t>(inv.size()), N));
        }
        return inv[static_cast<std::size_t>(n)];
    };

    // Every summand of the exponent is nonnegative and a*C(1+i_a,2) is
    // strictly increasing in i_a, so the exponent of any completion of a
    // prefix (i_1..i_a) is at least the exponent of (i_1..i_a,0,..,0). Once
    // that prefix exponent reaches N every completion contributes only at
    // q^N and above, and the same holds for all larger values of i_a.
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    std::function<void(int)> rec = [&](int a) {
        if (a == k) {
            const std::int64_t e = theorem_exponent(idx);
            int deg = 0;
            for (int b = 0; b < k; ++b) deg += (b + 1) * idx[static_cast<std::size_t>(b)];
            if (deg > cap) return;
            QLaurent term = QLaurent::monomial(1, e, N);
            for (int n : idx) {
                if (n > 0) term *= inv_at(n);
            }
            per_x[static_cast<std::size_t>(deg)] += term;
            return;
        }
        std::int64_t prev = -1;
        for (int v = 0;; ++v) {
            idx[static_cast<std::size_t>(a)] = v;
            std::vector<int> prefix(idx.begin(), idx.begin() + a + 1);
            const std::int64_t e = theorem_exponent(prefix);
            if (e <= prev) throw std::logic_error("rhs_theorem: exponent not monotone");
            prev = e;
            if (e >= N) break;
            rec(a + 1);
        }
        idx[static_cast<std::size_t>(a)] = 0;
    };
    rec(0);
    return XQSeries(std::move(per_x), ValuationBound::balanced_staircase(k));
}

VerificationReport verify_theorem2(int k, std::int64_t N) {
    return run_check("theorem2", [&](VerificationReport& r) {
        const XQSeries lhs = lhs_theorem(k, N);
        const XQSeries rhs = rhs_theorem(k, N);
        r.params = {{"k", k}, {"N", N}, {"x_cap", lhs.x_cap()}};
        if (auto m = eq_up_to(lhs, rhs, N, lhs.x_cap())) r.fail(Witness::from(*m));
    });
}

VerificationReport verify_LEC(int n, int m, std::int64_t N) {
    return run_check("lec", [&](VerificationReport& r) {
        r.params = {{"n", n}, {"m", m}, {"N", N}};
        const QLaurent lhs = q_binomial(n, m, N);
        std::vector<Integer> c(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)));
        for_each_partition_in_box(m, n - m, [&](const Partition& p) {
            if (p.size() < N) c[static_cast<std::size_t>(p.size())] += 1;
        });
        const QLaurent rhs = QLaurent::from_dense(c, 0, N);
        if (auto w = eq_up_to(lhs, rhs, N)) r.fail(Witness::from(*w));
    });
}

VerificationReport verify_LEA(int i, int j, std::int64_t N) {
    return run_check("lea", [&](VerificationReport& r) {
        r.params = {{"i", i}, {"j", j}, {"N", N}};
        if (i < 0 || j < 0) throw std::invalid_argument("verify_LEA: i, j must be >= 0");
        std::vector<Integer> lhs_c(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)));
        for_each_strict({static_cast<int>(std::max<std::int64_t>(N - 1, 0)), j, i + j},
                        [&](const StrictPartition& mu) {
                            if (mu.size() < N) lhs_c[static_cast<std::size_t>(mu.size())] += 1;
                        });
        const QLaurent lhs = QLaurent::from_dense(lhs_c, 0, N);
        std::vector<Integer> box(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)));
        for_each_partition_in_box(j, i, [&](const Partition& p) {
            if (p.size() < N) box[static_cast<std::size_t>(p.size())] += 1;
        });
        const QLaurent rhs = QLaurent::from_dense(box, 0, N).shifted(triangular(j));
        if (auto w = eq_up_to(lhs, rhs, N)) r.fail(Witness::from(*w));
    });
}

// --- V and W ----------------------------------------------------------------

std::vector<int> suffix_lengths(const std::vector<int>& j) {
    std::vector<int> L(j.size() + 1, 0);
    for (std::size_t a = j.size(); a-- > 0;) L[a] = L[a + 1] + j[a];
    L.pop_back();
    return L;
}

void for_each_V(const std::vector<int>& j, int max_size,
                const std::function<void(const MultiPartition&)>& visit) {
    check_j(j);
    const int k = static_cast<int>(j.size());
    const auto L = suffix_lengths(j);
    MultiPartition cur;
    cur.components.resize(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> bufs(static_cast<std::size_t>(k));
    std::function<void(int, int, int)> component = [&](int i, int budget, int max_part) {
        auto& buf = bufs[static_cast<std::size_t>(i)];
        const std::function<void()> leaf = [&, i, budget] {
            cur.components[static_cast<std::size_t>(i)] = StrictPartition::unchecked(buf);
            if (i + 1 == k) {
                visit(cur);
                return;
            }
            int used = 0;
            for (int p : buf) used += p;
            component(i + 1, budget - used, L[static_cast<std::size_t>(i)]);
        };
        StrictWalker(buf, leaf).run(budget, max_part, L[static_cast<std::size_t>(i)]);
    };
    if (max_size >= 0) component(0, max_size, max_size);
}

void for_each_W(const std::vector<int>& j, int max_size,
                const std::function<void(const MultiPartition&)>& visit) {
    check_j(j);
    const int k = static_cast<int>(j.size());
    const auto L = suffix_lengths(j);
    MultiPartition cur;
    cur.components.resize(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> heads(static_cast<std::size_t>(k));

    std::function<void(int, int)> component = [&](int i, int budget) {
        const std::size_t si = static_cast<std::size_t>(i);
        const int tail = i + 1 < k ? L[si + 1] : 0;
        // Head rows are nu_r + tail for a strict nu with exactly j_i parts;
        // the tail is the staircase of length `tail`.
        const int fixed = static_cast<int>(triangular(tail)) + j[si] * tail;
        if (fixed > budget) return;
        auto& head = heads[si];
        const std::function<void()> leaf = [&, i, si, tail, budget, fixed] {
            std::vector<int> parts;
            parts.reserve(static_cast<std::size_t>(L[si]));
            for (int p : head) parts.push_back(p + tail);
            for (int t = tail; t >= 1; --t) parts.push_back(t);

            // Removing the staircase tail leaves a strict partition of
            // length j_i after subtracting `tail` from each head row.
            for (std::size_t r = 0; r < head.size(); ++r) {
                if (parts[r] - tail < 1 || (r && parts[r] >= parts[r - 1])) {
                    throw std::logic_error("for_each_W: malformed head rows");
                }
            }
            const auto stair = staircase(tail).parts();
            if (static_cast<int>(head.size()) != j[si] ||
                !std::equal(parts.begin() + j[si], parts.end(), stair.begin(), stair.end())) {
                throw std::logic_error("for_each_W: tail is not a staircase");
            }
            cur.components[si] = StrictPartition::unchecked(std::move(parts));
            int used = fixed;
            for (int p : head) used += p;
            if (i + 1 == k) {
                visit(cur);
                return;
            }
            component(i + 1, budget - used);
        };
        StrictWalker(head, leaf).run(budget - fixed, budget - fixed, j[si]);
    };
    if (max_size >= 0) component(0, max_size);
}

std::vector<MultiPartition> V_set(const std::vector<int>& j, int max_size) {
    std::vector<MultiPartition> out;
    for_each_V(j, max_size, [&](const MultiPartition& b) { out.push_back(b); });
    return out;
}

std::vector<MultiPartition> W_set(const std::vector<int>& j, int max_size) {
    std::vector<MultiPartition> out;
    for_each_W(j, max_size, [&](const MultiPartition& b) { out.push_back(b); });
    return out;
}

QLaurent W_closed_form(const std::vector<int>& j, std::int64_t N) {
    check_j(j);
    const auto L = suffix_lengths(j);
    std::int64_t e = 0;
    for (int l : L) e += triangular(l);
    QLaurent r = QLaurent::monomial(1, e, N);
    for (int x : j) r *= inv_poch_q(x, N);
    return r;
}

VerificationReport verify_propLEB(const std::vector<int>& j, int max_size) {
    return run_check("bijection", [&](VerificationReport& r) {
        r.params = {{"j", to_json(j)}, {"max_size", max_size}};
        const std::int64_t N = max_size + 1;
        const auto V = V_set(j, max_size);
        const auto W = W_set(j, max_size);
        for (const auto& b : V) {
            if (!is_kleshchev(b)) r.fail_note("V element outside S_k: " + to_string(b));
        }
        const QLaurent gv = size_gf(V, N);
        const QLaurent gw = size_gf(W, N);
        if (auto w = eq_up_to(gv, gw, N)) r.fail(Witness::from(*w), "V vs W size counts");
        if (auto w = eq_up_to(gw, W_closed_form(j, N), N)) {
            r.fail(Witness::from(*w), "W vs product formula");
        }
        if (j.size() == 2) {
            // V_{i,j}: any strict lambda of length i+j, and a strict mu of length
            // j with mu_1 <= i+j.
            const int a = j[0];
            const int b = j[1];
            std::vector<Integer> mu(static_cast<std::size_t>(N));
            for_each_strict({max_size, b, a + b}, [&](const StrictPartition& p) {
                mu[static_cast<std::size_t>(p.size())] += 1;
            });
            const QLaurent v2 = QLaurent::from_dense(mu, 0, N) *
                                QLaurent::monomial(1, triangular(a + b), N) * inv_poch_q(a + b, N);
            const QLaurent w2 = QLaurent::monomial(1, triangular(a + b) + triangular(b), N) *
                                inv_poch_q(a, N) * inv_poch_q(b, N);
            if (auto w = eq_up_to(gv, v2, N)) r.fail(Witness::from(*w), "V vs two-component sum");
            if (auto w = eq_up_to(gw, w2, N)) r.fail(Witness::from(*w), "W vs two-component sum");
        }
    });
}

std::vector<std::pair<MultiPartition, MultiPartition>> canonical_bijection(
    const std::vector<int>& j, int max_size) {
    std::map<int, std::vector<MultiPartition>> v_by, w_by;
    for (auto& b : V_set(j, max_size)) v_by[b.size()].push_back(std::move(b));
    for (auto& b : W_set(j, max_size)) w_by[b.size()].push_back(std::move(b));
    std::vector<std::pair<MultiPartition, MultiPartition>> out;
    for (auto& [s, vs] : v_by) {
        auto& ws = w_by[s];
        if (ws.size() != vs.size()) {
            throw std::logic_error("canonical_bijection: size class " + std::to_string(s) +
                                   " differs in count");
        }
        std::sort(vs.begin(), vs.end());
        std::sort(ws.begin(), ws.end());
        for (std::size_t i = 0; i < vs.size(); ++i) out.emplace_back(vs[i], ws[i]);
    }
    for (const auto& [s, ws] : w_by) {
        if (!v_by.count(s) && !ws.empty()) {
            throw std::logic_error("canonical_bijection: size class " + std::to_string(s) +
                                   " differs in count");
        }
    }
    return out;
}

VerificationReport verify_exponent_telescoping(const std::vector<int>& j) {
    return run_check("telescoping", [&](VerificationReport& r) {
        r.params = {{"j", to_json(j)}};
        std::int64_t lhs = 0;
        for (int l : suffix_lengths(j)) lhs += triangular(l);
        std::int64_t rhs = 0;
        for (std::size_t b = 0; b < j.size(); ++b) {
            rhs += static_cast<std::int64_t>(b + 1) * triangular(j[b]);
            for (std::size_t c = b + 1; c < j.size(); ++c) {
                rhs += static_cast<std::int64_t>(b + 1) * j[b] * j[c];
            }
        }
        if (lhs != rhs) r.fail({0, 0, std::to_string(lhs), std::to_string(rhs)});
    });
}

}  // namespace rrc
