#pragma once

// Partitions, strict partitions and Kleshchev multipartitions, together
// with the generating-function checks built on them.

#include <compare>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rrc/report.hpp"
#include "rrc/series.hpp"

namespace rrc {

// Weakly decreasing sequence of positive integers.
class Partition {
public:
    Partition() = default;
    // Throws std::invalid_argument unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);
    static Partition unchecked(std::vector<int> parts) {
        Partition p;
        p.parts_ = std::move(parts);
        return p;
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const;
    // Largest part; 0 for the empty partition.
    int first() const { return parts_.empty() ? 0 : parts_.front(); }
    bool is_strict() const;

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

// Strictly decreasing sequence of positive integers.
class StrictPartition {
public:
    StrictPartition() = default;
    // Throws std::invalid_argument unless parts are positive and strictly decreasing.
    explicit StrictPartition(std::vector<int> parts);
    explicit StrictPartition(const Partition& p) : StrictPartition(p.parts()) {}
    static StrictPartition unchecked(std::vector<int> parts) {
        StrictPartition p;
        p.parts_ = std::move(parts);
        return p;
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const;
    int first() const { return parts_.empty() ? 0 : parts_.front(); }
    Partition as_partition() const { return Partition::unchecked(parts_); }

    auto operator<=>(const StrictPartition&) const = default;

private:
    std::vector<int> parts_;
};

// k-tuple of strict partitions.
struct MultiPartition {
    std::vector<StrictPartition> components;

    int k() const { return static_cast<int>(components.size()); }
    int size() const;
    int length() const;

    auto operator<=>(const MultiPartition&) const = default;
};

// Nested integer lists, e.g. [[3,1],[2]].
std::string to_string(const MultiPartition& b);
std::string to_string(const Partition& p);
MultiPartition parse_multipartition(const std::string& text);
// One multipartition per line.
void write_lines(std::ostream& os, const std::vector<MultiPartition>& items);

// --- enumeration ------------------------------------------------------------

// Partitions with at most max_len parts, each at most max_part.
void for_each_partition_in_box(int max_len, int max_part,
                               const std::function<void(const Partition&)>& visit);
std::vector<Partition> partitions_in_box(int max_len, int max_part);

struct StrictConstraints {
    int max_size = 0;
    std::optional<int> exact_len;
    std::optional<int> max_part;
};
// Strict partitions of size <= max_size meeting the optional constraints.
void for_each_strict(const StrictConstraints& c,
                     const std::function<void(const StrictPartition&)>& visit);
std::vector<StrictPartition> strict_partitions(const StrictConstraints& c);

// (j, j-1, ..., 1).
StrictPartition staircase(int j);

// l(lambda^(i)) >= (lambda^(i+1))_1 for all consecutive pairs.
bool is_kleshchev(const MultiPartition& b);

// Elements of S_k with total size <= max_size. Throws for k < 1.
void for_each_kleshchev(int k, int max_size,
                        const std::function<void(const MultiPartition&)>& visit);
std::vector<MultiPartition> kleshchev_multipartitions(int k, int max_size);

// --- the bivariate generating function ---------------------------------------

// k * max{l : l(l+1)/2 < N}: the largest total length of k strict
// partitions with total size below N.
int theorem_x_cap(int k, std::int64_t N);

// sum over S_k of x^length q^size, truncated at q^N.
XQSeries lhs_theorem(int k, std::int64_t N);
// The k-fold sum over (i_1..i_k) of
//   q^{sum_a a*C(1+i_a,2) + sum_{a<b} a*i_a*i_b} x^{sum_a a*i_a} / prod (q;q)_{i_a}.
XQSeries rhs_theorem(int k, std::int64_t N);
// The q-exponent above for one tuple.
std::int64_t theorem_exponent(const std::vector<int>& i);

VerificationReport verify_theorem2(int k, std::int64_t N);

// Gaussian binomial against its box-partition generating function.
VerificationReport verify_LEC(int n, int m, std::int64_t N);
// Strict partitions with length j and parts <= i+j against q^{|staircase j|}
// times partitions in a j x i box.
VerificationReport verify_LEA(int i, int j, std::int64_t N);

// --- length-graded pieces of S_k ---------------------------------------------

// For j = (j_1..j_k), L_i = j_i + ... + j_k is the prescribed length of
// component i.
std::vector<int> suffix_lengths(const std::vector<int>& j);

// S_k elements with l(lambda^(i)) = L_i.
void for_each_V(const std::vector<int>& j, int max_size,
                const std::function<void(const MultiPartition&)>& visit);
// Tuples with l(lambda^(i)) = L_i whose rows below j_i in component i form
// the staircase of length L_{i+1}. Built directly from the free head rows.
void for_each_W(const std::vector<int>& j, int max_size,
                const std::function<void(const MultiPartition&)>& visit);
std::vector<MultiPartition> V_set(const std::vector<int>& j, int max_size);
std::vector<MultiPartition> W_set(const std::vector<int>& j, int max_size);

// prod_a q^{|staircase L_a|} / (q;q)_{j_a}.
QLaurent W_closed_form(const std::vector<int>& j, std::int64_t N);

// Size-generating functions of V and W agree below q^(max_size+1), W
// matches its closed form, and for k = 2 both match the explicit
// two-component sums.
VerificationReport verify_propLEB(const std::vector<int>& j, int max_size);

// Size-preserving pairing of V and W obtained by matching the sorted
// elements of each size. Carries no combinatorial meaning; throws
// std::logic_error if the size classes differ in count.
std::vector<std::pair<MultiPartition, MultiPartition>> canonical_bijection(
    const std::vector<int>& j, int max_size);

// sum_a |staircase L_a| == sum_a a|staircase j_a| + sum_{b<b'} b j_b j_b'.
VerificationReport verify_exponent_telescoping(const std::vector<int>& j);

}  // namespace rrc
