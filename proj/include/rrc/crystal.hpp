#pragma once

// Level-one A_1^(1) crystal on partitions (Misra-Miwa Fock space model,
// residue (col - row) mod 2) and its tensor powers. The component of the
// empty partition consists of the strict partitions; the component of the
// empty k-tuple is compared against the Kleshchev multipartitions S_k.

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrc/partitions.hpp"
#include "rrc/report.hpp"

namespace rrc {

enum class NodeOrder { TopDown, BottomUp };
enum class TensorOrder { LeftFirst, RightFirst };

// Reading order of i-nodes within a partition and of factors within a
// tensor word.
struct Convention {
    NodeOrder node_order = NodeOrder::TopDown;
    TensorOrder tensor_order = TensorOrder::LeftFirst;

    // "top-down/left-first" etc.
    std::string name() const;
    static Convention parse(const std::string& name);
    // All four candidates, most preferred first.
    static std::vector<Convention> candidates();

    bool operator==(const Convention&) const = default;
};

struct CrystalModel {
    Convention convention;
    // Residue of box (r, c) is (c - r + residue_shift) mod 2. Only 0 is the
    // Misra-Miwa model; other shifts exist for mutation testing.
    int residue_shift = 0;

    int residue(int row, int col) const;
};

struct NodePos {
    int row = 0;  // 1-based
    int col = 0;  // 1-based
    bool operator==(const NodePos&) const = default;
};

// Addable / removable i-nodes, in the model's node order.
std::vector<NodePos> addable_nodes(const Partition& p, int i, const CrystalModel& model);
std::vector<NodePos> removable_nodes(const Partition& p, int i, const CrystalModel& model);

struct Signature {
    int phi = 0;  // uncancelled '+'
    int eps = 0;  // uncancelled '-'
    std::optional<std::size_t> f_slot;  // last uncancelled '+'
    std::optional<std::size_t> e_slot;  // first uncancelled '-'
};

// Cancels adjacent "-+" pairs until the word reads +...+-...-.
Signature signature_reduce(std::span<const char> word);

// Empty optional is the zero element.
std::optional<Partition> f_op(const Partition& p, int i, const CrystalModel& model);
std::optional<Partition> e_op(const Partition& p, int i, const CrystalModel& model);
int phi(const Partition& p, int i, const CrystalModel& model);
int eps(const Partition& p, int i, const CrystalModel& model);

// A tensor word b_1 (x) ... (x) b_k.
using CrystalElt = std::vector<Partition>;

std::optional<CrystalElt> tensor_f(const CrystalElt& b, int i, const CrystalModel& model);
std::optional<CrystalElt> tensor_e(const CrystalElt& b, int i, const CrystalModel& model);
int tensor_phi(const CrystalElt& b, int i, const CrystalModel& model);
int tensor_eps(const CrystalElt& b, int i, const CrystalModel& model);

CrystalElt to_crystal(const MultiPartition& b);
std::string to_string(const CrystalElt& b);

struct ComponentEdge {
    CrystalElt from;
    CrystalElt to;
    int color;
};

struct Component {
    std::set<CrystalElt> elements;
    std::vector<ComponentEdge> edges;
};

// Closure of the empty k-tuple under f_0, f_1, keeping elements with total
// size <= max_size. f adds one box, so every element of size s is reached
// through elements of size < s and the pruning loses nothing.
Component generate_component(int k, int max_size, const CrystalModel& model);

// Graphviz rendering: nodes are multipartitions, edges are labelled f0/f1.
std::string component_dot(const Component& c);

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Calibration {
    Convention chosen;
    std::vector<Convention> qualifiers;
    int max_size = 0;
};

// Conventions whose k = 1 component is the set of strict partitions and
// whose k = 2 component is S_2, both up to max_size, with the empty tuple
// of weight k*Lambda_0 in both cases.
std::vector<Convention> qualifying_conventions(int max_size, int residue_shift = 0);
// First qualifier in preference order. Throws CalibrationError if none.
Calibration calibrate_convention(int max_size, int residue_shift = 0);

// generate_component(k) == S_k up to max_size, and the empty k-tuple has
// weight k*Lambda_0.
VerificationReport verify_crystal_theorem(int k, int max_size, const CrystalModel& model);

}  // namespace rrc
