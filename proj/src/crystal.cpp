#include "rrc/crystal.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace rrc {

std::string Convention::name() const {
    std::string s = node_order == NodeOrder::TopDown ? "top-down" : "bottom-up";
    s += tensor_order == TensorOrder::LeftFirst ? "/left-first" : "/right-first";
    return s;
}

Convention Convention::parse(const std::string& name) {
    for (const auto& c : candidates()) {
        if (c.name() == name) return c;
    }
    throw std::invalid_argument("unknown crystal convention: " + name);
}

std::vector<Convention> Convention::candidates() {
    return {{NodeOrder::TopDown, TensorOrder::LeftFirst},
            {NodeOrder::TopDown, TensorOrder::RightFirst},
            {NodeOrder::BottomUp, TensorOrder::LeftFirst},
            {NodeOrder::BottomUp, TensorOrder::RightFirst}};
}

int CrystalModel::residue(int row, int col) const {
    return ((col - row + residue_shift) % 2 + 2) % 2;
}

namespace {

void check_color(int i) {
    if (i != 0 && i != 1) throw std::invalid_argument("residue must be 0 or 1");
}

struct SignedNode {
    NodePos pos;
    char sign;  // '+' addable, '-' removable
};

// At most one i-node per row (the addable and removable cells of a row have
// different residues), so sorting by row is a total order.
std::vector<SignedNode> signed_nodes(const Partition& p, int i, const CrystalModel& model) {
    check_color(i);
    const auto& parts = p.parts();
    const int len = p.length();
    std::vector<SignedNode> out;
    for (int r = 1; r <= len + 1; ++r) {
        const int cur = r <= len ? parts[static_cast<std::size_t>(r - 1)] : 0;
        const int above = r >= 2 ? parts[static_cast<std::size_t>(r - 2)] : -1;
        const int below = r < len ? parts[static_cast<std::size_t>(r)] : 0;
        if ((r == 1 || above > cur) && model.residue(r, cur + 1) == i) {
            out.push_back({{r, cur + 1}, '+'});
        }
        if (r <= len && cur > below && model.residue(r, cur) == i) {
            out.push_back({{r, cur}, '-'});
        }
    }
    if (model.convention.node_order == NodeOrder::BottomUp) std::reverse(out.begin(), out.end());
    return out;
}

std::vector<NodePos> filter(const std::vector<SignedNode>& nodes, char sign) {
    std::vector<NodePos> out;
    for (const auto& n : nodes) {
        if (n.sign == sign) out.push_back(n.pos);
    }
    return out;
}

Partition add_box(const Partition& p, NodePos at) {
    auto parts = p.parts();
    if (at.row > static_cast<int>(parts.size())) {
        parts.push_back(1);
    } else {
        ++parts[static_cast<std::size_t>(at.row - 1)];
    }
    return Partition::unchecked(std::move(parts));
}

Partition remove_box(const Partition& p, NodePos at) {
    auto parts = p.parts();
    auto& v = parts[static_cast<std::size_t>(at.row - 1)];
    if (--v == 0) parts.pop_back();
    return Partition::unchecked(std::move(parts));
}

struct TensorWord {
    std::vector<char> word;
    std::vector<std::pair<std::size_t, NodePos>> owner;  // (factor, node) per letter
};

TensorWord tensor_word(const CrystalElt& b, int i, const CrystalModel& model) {
    TensorWord tw;
    const std::size_t k = b.size();
    for (std::size_t n = 0; n < k; ++n) {
        const std::size_t factor =
            model.convention.tensor_order == TensorOrder::LeftFirst ? n : k - 1 - n;
        for (const auto& node : signed_nodes(b[factor], i, model)) {
            tw.word.push_back(node.sign);
            tw.owner.emplace_back(factor, node.pos);
        }
    }
    return tw;
}

}  // namespace

std::vector<NodePos> addable_nodes(const Partition& p, int i, const CrystalModel& model) {
    return filter(signed_nodes(p, i, model), '+');
}

std::vector<NodePos> removable_nodes(const Partition& p, int i, const CrystalModel& model) {
    return filter(signed_nodes(p, i, model), '-');
}

Signature signature_reduce(std::span<const char> word) {
    // A '+' cancels the nearest preceding uncancelled '-'.
    std::vector<std::size_t> open_minus;
    std::vector<std::size_t> plus;
    for (std::size_t n = 0; n < word.size(); ++n) {
        if (word[n] == '-') {
            open_minus.push_back(n);
        } else if (word[n] == '+') {
            if (open_minus.empty()) {
                plus.push_back(n);
            } else {
                open_minus.pop_back();
            }
        } else {
            throw std::invalid_argument("signature words use only '+' and '-'");
        }
    }
    Signature s;
    s.phi = static_cast<int>(plus.size());
    s.eps = static_cast<int>(open_minus.size());
    if (!plus.empty()) s.f_slot = plus.back();
    if (!open_minus.empty()) s.e_slot = open_minus.front();
    return s;
}

std::optional<Partition> f_op(const Partition& p, int i, const CrystalModel& model) {
    const auto nodes = signed_nodes(p, i, model);
    std::vector<char> word;
    for (const auto& n : nodes) word.push_back(n.sign);
    const auto s = signature_reduce(word);
    if (!s.f_slot) return std::nullopt;
    return add_box(p, nodes[*s.f_slot].pos);
}

std::optional<Partition> e_op(const Partition& p, int i, const CrystalModel& model) {
    const auto nodes = signed_nodes(p, i, model);
    std::vector<char> word;
    for (const auto& n : nodes) word.push_back(n.sign);
    const auto s = signature_reduce(word);
    if (!s.e_slot) return std::nullopt;
    return remove_box(p, nodes[*s.e_slot].pos);
}

int phi(const Partition& p, int i, const CrystalModel& model) {
    std::vector<char> word;
    for (const auto& n : signed_nodes(p, i, model)) word.push_back(n.sign);
    return signature_reduce(word).phi;
}

int eps(const Partition& p, int i, const CrystalModel& model) {
    std::vector<char> word;
    for (const auto& n : signed_nodes(p, i, model)) word.push_back(n.sign);
    return signature_reduce(word).eps;
}

std::optional<CrystalElt> tensor_f(const CrystalElt& b, int i, const CrystalModel& model) {
    const auto tw = tensor_word(b, i, model);
    const auto s = signature_reduce(tw.word);
    if (!s.f_slot) return std::nullopt;
    const auto& [factor, pos] = tw.owner[*s.f_slot];
    CrystalElt out = b;
    out[factor] = add_box(b[factor], pos);
    return out;
}

std::optional<CrystalElt> tensor_e(const CrystalElt& b, int i, const CrystalModel& model) {
    const auto tw = tensor_word(b, i, model);
    const auto s = signature_reduce(tw.word);
    if (!s.e_slot) return std::nullopt;
    const auto& [factor, pos] = tw.owner[*s.e_slot];
    CrystalElt out = b;
    out[factor] = remove_box(b[factor], pos);
    return out;
}

int tensor_phi(const CrystalElt& b, int i, const CrystalModel& model) {
    return signature_reduce(tensor_word(b, i, model).word).phi;
}

int tensor_eps(const CrystalElt& b, int i, const CrystalModel& model) {
    return signature_reduce(tensor_word(b, i, model).word).eps;
}

CrystalElt to_crystal(const MultiPartition& b) {
    CrystalElt out;
    for (const auto& c : b.components) out.push_back(c.as_partition());
    return out;
}

std::string to_string(const CrystalElt& b) {
    std::string s = "[";
    for (std::size_t n = 0; n < b.size(); ++n) {
        if (n) s += ',';
        s += to_string(b[n]);
    }
    return s + "]";
}

Component generate_component(int k, int max_size, const CrystalModel& model) {
    if (k < 1) throw std::invalid_argument("generate_component: k must be >= 1");
    Component c;
    if (max_size < 0) return c;
    const CrystalElt start(static_cast<std::size_t>(k));
    c.elements.insert(start);
    std::deque<std::pair<CrystalElt, int>> frontier{{start, 0}};
    while (!frontier.empty()) {
        auto [b, size] = std::move(frontier.front());
        frontier.pop_front();
        if (size == max_size) continue;
        for (int i = 0; i < 2; ++i) {
            auto next = tensor_f(b, i, model);
            if (!next) continue;
            c.edges.push_back({b, *next, i});
            if (c.elements.insert(*next).second) frontier.emplace_back(std::move(*next), size + 1);
        }
    }
    return c;
}

std::string component_dot(const Component& c) {
    std::ostringstream os;
    os << "digraph component {\n";
    for (const auto& b : c.elements) os << "  \"" << to_string(b) << "\";\n";
    for (const auto& e : c.edges) {
        os << "  \"" << to_string(e.from) << "\" -> \"" << to_string(e.to) << "\" [label=\"f"
           << e.color << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

std::set<CrystalElt> kleshchev_set(int k, int max_size) {
    std::set<CrystalElt> out;
    for_each_kleshchev(k, max_size, [&](const MultiPartition& b) { out.insert(to_crystal(b)); });
    return out;
}

// First element of the symmetric difference, with the side it lies on.
std::optional<std::pair<CrystalElt, bool>> first_difference(const std::set<CrystalElt>& component,
                                                            const std::set<CrystalElt>& target) {
    auto i = component.begin();
    auto j = target.begin();
    while (i != component.end() || j != target.end()) {
        if (j == target.end() || (i != component.end() && *i < *j)) return {{*i, true}};
        if (i == component.end() || *j < *i) return {{*j, false}};
        ++i;
        ++j;
    }
    return std::nullopt;
}

// The empty k-tuple is highest weight of weight k*Lambda_0.
bool has_weight_k_lambda0(int k, const CrystalModel& model) {
    const CrystalElt hw(static_cast<std::size_t>(k));
    return tensor_phi(hw, 0, model) == k && tensor_phi(hw, 1, model) == 0 &&
           tensor_eps(hw, 0, model) == 0 && tensor_eps(hw, 1, model) == 0;
}

}  // namespace

std::vector<Convention> qualifying_conventions(int max_size, int residue_shift) {
    const auto strict = kleshchev_set(1, max_size);
    const auto s2 = kleshchev_set(2, max_size);
    std::vector<Convention> out;
    for (const auto& conv : Convention::candidates()) {
        const CrystalModel model{conv, residue_shift};
        // Element sets alone cannot tell the two residue labellings apart.
        if (!has_weight_k_lambda0(1, model) || !has_weight_k_lambda0(2, model)) continue;
        if (generate_component(1, max_size, model).elements != strict) continue;
        if (generate_component(2, max_size, model).elements != s2) continue;
        out.push_back(conv);
    }
    return out;
}

Calibration calibrate_convention(int max_size, int residue_shift) {
    Calibration cal;
    cal.max_size = max_size;
    cal.qualifiers = qualifying_conventions(max_size, residue_shift);
    if (cal.qualifiers.empty()) {
        throw CalibrationError("no crystal convention reproduces the strict partitions and S_2 up to size " +
                               std::to_string(max_size));
    }
    cal.chosen = cal.qualifiers.front();
    return cal;
}

VerificationReport verify_crystal_theorem(int k, int max_size, const CrystalModel& model) {
    return run_check("crystal", [&](VerificationReport& r) {
        r.params = {{"k", k}, {"max_size", max_size}};
        r.convention = model.convention.name();
        const auto component = generate_component(k, max_size, model);
        const auto target = kleshchev_set(k, max_size);
        r.params["elements"] = component.elements.size();
        if (!has_weight_k_lambda0(k, model)) {
            r.fail_note("the empty tuple does not have weight k*Lambda_0");
        }
        if (auto d = first_difference(component.elements, target)) {
            const auto& [elt, in_component] = *d;
            int size = 0;
            for (const auto& p : elt) size += p.size();
            const std::string s = to_string(elt);
            r.fail({0, size, in_component ? s : "absent", in_component ? "absent" : s},
                   in_component ? "element of the component outside S_k"
                                : "element of S_k missing from the component");
        }
    });
}

}  // namespace rrc
