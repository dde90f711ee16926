#include "rrc/report.hpp"

#include <cstdio>
#include <sstream>

namespace rrc {

void VerificationReport::fail(Witness w, std::string note) {
    if (passed || !witness) witness = std::move(w);
    passed = false;
    if (!note.empty()) notes.push_back(std::move(note));
}

void VerificationReport::fail_note(std::string note) {
    passed = false;
    notes.push_back(std::move(note));
}

void VerificationReport::absorb(const VerificationReport& sub) {
    if (sub.passed) return;
    if (!witness && sub.witness) witness = sub.witness;
    passed = false;
    notes.push_back(sub.check + " failed");
    for (const auto& n : sub.notes) notes.push_back(sub.check + ": " + n);
}

nlohmann::ordered_json VerificationReport::to_json(bool stable) const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["params"] = params;
    j["status"] = passed ? "pass" : "fail";
    if (witness) {
        j["witness"] = {{"x_deg", witness->x_deg},
                        {"q_deg", witness->q_deg},
                        {"lhs", witness->lhs},
                        {"rhs", witness->rhs}};
    } else {
        j["witness"] = nullptr;
    }
    if (convention) j["convention"] = *convention;
    if (!notes.empty()) j["notes"] = notes;
    if (!stable) j["elapsed_ms"] = elapsed_ms;
    return j;
}

std::string VerificationReport::to_text(bool stable) const {
    std::ostringstream os;
    os << (passed ? "PASS " : "FAIL ") << check << ' ' << params.dump();
    if (convention) os << " convention=" << *convention;
    if (!stable) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " (%.1f ms)", elapsed_ms);
        os << buf;
    }
    if (witness) {
        os << "\n    witness: x^" << witness->x_deg << " q^" << witness->q_deg
           << " lhs=" << witness->lhs << " rhs=" << witness->rhs;
    }
    for (const auto& n : notes) os << "\n    " << n;
    return os.str();
}

VerificationReport compare_report(std::string check, const XQSeries& lhs, const XQSeries& rhs,
                                  std::int64_t N, int x_cap) {
    VerificationReport r;
    r.check = std::move(check);
    if (auto m = eq_up_to(lhs, rhs, N, x_cap)) r.fail(Witness::from(*m));
    return r;
}

VerificationReport compare_report(std::string check, const QLaurent& lhs, const QLaurent& rhs,
                                  std::int64_t N) {
    VerificationReport r;
    r.check = std::move(check);
    if (auto m = eq_up_to(lhs, rhs, N)) r.fail(Witness::from(*m));
    return r;
}

}  // namespace rrc
