#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rrc/series.hpp"

namespace rrc {

struct Witness {
    int x_deg = 0;
    std::int64_t q_deg = 0;
    std::string lhs;
    std::string rhs;

    static Witness from(const Mismatch& m) {
        return {m.x_deg, m.q_deg, m.lhs.get_str(), m.rhs.get_str()};
    }
};

// Outcome of one named check. Failures carry the first mismatch found.
struct VerificationReport {
    std::string check;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    bool passed = true;
    std::optional<Witness> witness;
    std::optional<std::string> convention;
    std::vector<std::string> notes;
    double elapsed_ms = 0.0;

    void fail(Witness w, std::string note = {});
    void fail_note(std::string note);
    // Folds a sub-check in: a failing sub-check fails this report and its
    // witness is kept when none is recorded yet.
    void absorb(const VerificationReport& sub);

    // {check, params, status, witness, convention?, notes?, elapsed_ms?}
    nlohmann::ordered_json to_json(bool stable) const;
    // One line: "PASS check {params}" plus the witness on failure.
    std::string to_text(bool stable) const;
};

// Runs `body` on a fresh report named `check` and records its wall time.
template <class Body>
VerificationReport run_check(std::string check, Body&& body) {
    VerificationReport r;
    r.check = std::move(check);
    const auto start = std::chrono::steady_clock::now();
    body(r);
    const auto dt = std::chrono::steady_clock::now() - start;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(dt).count();
    return r;
}

// Series comparison packaged as a report.
VerificationReport compare_report(std::string check, const XQSeries& lhs, const XQSeries& rhs,
                                  std::int64_t N, int x_cap);
VerificationReport compare_report(std::string check, const QLaurent& lhs, const QLaurent& rhs,
                                  std::int64_t N);

}  // namespace rrc
