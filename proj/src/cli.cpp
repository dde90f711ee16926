#include "rrc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "rrc/crystal.hpp"
#include "rrc/identities.hpp"
#include "rrc/partitions.hpp"

namespace rrc {

namespace {

constexpr int kCalibrationSize = 12;

const std::vector<std::string> kSeriesNames = {
    "F",        "G",           "Sk-lhs",       "Sk-rhs",      "rr1-sum",
    "rr1-product", "rr2-sum",  "rr2-product",  "poch-neg-xq", "character-product"};

const CLI::Validator kNonNegative(
    [](std::string& s) -> std::string {
        try {
            if (std::stoll(s) < 0) return "must be >= 0, got " + s;
        } catch (const std::exception&) {
            return "not an integer: " + s;
        }
        return {};
    },
    "NONNEGATIVE");

struct Options {
    std::string command;
    std::int64_t order = 60;
    int k = 3;
    int x_cap = 25;
    std::optional<int> n_max;
    std::optional<int> t_max;
    std::optional<int> u_max;
    std::optional<int> max_size;
    std::optional<int> j_max;
    std::optional<std::string> json_path;
    bool stable = false;
    bool recalibrate = false;
    std::string convention_file = "rrc-convention.json";
    std::string series_name;
    bool at_x1 = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Reports = std::vector<VerificationReport>;

// Runs `each` over a family of cases and folds the results into one report.
VerificationReport aggregate(std::string name, nlohmann::ordered_json params,
                             const std::function<void(const std::function<void(
                                 const VerificationReport&)>&)>& each) {
    return run_check(std::move(name), [&](VerificationReport& r) {
        r.params = std::move(params);
        std::int64_t cases = 0;
        each([&](const VerificationReport& sub) {
            ++cases;
            if (!sub.passed) {
                r.absorb(sub);
                r.notes.push_back("failing case " + sub.params.dump());
            }
        });
        r.params["cases"] = cases;
    });
}

// Every tuple of length 1..max_len with entries in [0, max_entry].
void for_each_tuple(int max_len, int max_entry, const std::function<void(const std::vector<int>&)>& visit) {
    for (int len = 1; len <= max_len; ++len) {
        std::vector<int> j(static_cast<std::size_t>(len), 0);
        while (true) {
            visit(j);
            int pos = len - 1;
            while (pos >= 0 && j[static_cast<std::size_t>(pos)] == max_entry) {
                j[static_cast<std::size_t>(pos--)] = 0;
            }
            if (pos < 0) break;
            ++j[static_cast<std::size_t>(pos)];
        }
    }
}

// Loads the pinned convention or calibrates and pins it.
Calibration pinned_calibration(const Options& o) {
    if (!o.recalibrate) {
        std::ifstream in(o.convention_file);
        if (in) {
            try {
                const auto j = nlohmann::json::parse(in);
                Calibration cal;
                cal.chosen = Convention::parse(j.at("convention").get<std::string>());
                for (const auto& q : j.at("qualifiers")) {
                    cal.qualifiers.push_back(Convention::parse(q.get<std::string>()));
                }
                cal.max_size = j.at("max_size").get<int>();
                return cal;
            } catch (const std::exception&) {
                // Unreadable pin: fall through and recalibrate.
            }
        }
    }
    Calibration cal = calibrate_convention(kCalibrationSize);
    nlohmann::ordered_json j;
    j["convention"] = cal.chosen.name();
    j["qualifiers"] = nlohmann::json::array();
    for (const auto& q : cal.qualifiers) j["qualifiers"].push_back(q.name());
    j["max_size"] = cal.max_size;
    std::ofstream out(o.convention_file);
    if (out) out << j.dump(2) << '\n';
    return cal;
}

Reports cmd_theorem2(const Options& o) { return {verify_theorem2(o.k, o.order)}; }

Reports cmd_crystal(const Options& o) {
    const Calibration cal = pinned_calibration(o);
    auto r = verify_crystal_theorem(o.k, o.max_size.value_or(12), CrystalModel{cal.chosen, 0});
    std::string q = "qualifying conventions at size " + std::to_string(cal.max_size) + ":";
    for (const auto& c : cal.qualifiers) q += " " + c.name();
    r.notes.insert(r.notes.begin(), q);
    return {r};
}

Reports cmd_lec(const Options& o) {
    const int n_max = o.n_max.value_or(12);
    return {aggregate("lec", {{"n_max", n_max}, {"N", o.order}}, [&](const auto& emit) {
        for (int n = 0; n <= n_max; ++n) {
            for (int m = 0; m <= n; ++m) emit(verify_LEC(n, m, o.order));
        }
    })};
}

Reports cmd_lea(const Options& o) {
    const int j_max = o.j_max.value_or(8);
    return {aggregate("lea", {{"i_max", j_max}, {"j_max", j_max}, {"N", o.order}},
                      [&](const auto& emit) {
                          for (int i = 0; i <= j_max; ++i) {
                              for (int j = 0; j <= j_max; ++j) emit(verify_LEA(i, j, o.order));
                          }
                      })};
}

Reports cmd_bijection(const Options& o) {
    const int max_size = o.max_size.value_or(25);
    const int entries = o.j_max.value_or(3);
    const int k = std::min(o.k, 3);
    Reports out;
    out.push_back(aggregate("bijection",
                            {{"k_max", k}, {"entry_max", entries}, {"max_size", max_size}},
                            [&](const auto& emit) {
                                for_each_tuple(k, entries, [&](const std::vector<int>& j) {
                                    emit(verify_propLEB(j, max_size));
                                });
                            }));
    out.push_back(aggregate("telescoping", {{"k_max", 4}, {"entry_max", 5}}, [&](const auto& emit) {
        for_each_tuple(4, 5, [&](const std::vector<int>& j) {
            emit(verify_exponent_telescoping(j));
        });
    }));
    return out;
}

Reports cmd_gdiff(const Options& o) { return {verify_gdiff(o.order, o.x_cap)}; }
Reports cmd_fdiff(const Options& o) { return {verify_fdiff(o.order, o.x_cap)}; }
Reports cmd_fincor(const Options& o) { return {verify_fincor(o.order, o.x_cap)}; }

Reports cmd_certificate(const Options& o) {
    const int n_max = o.n_max.value_or(12);
    const int t_max = o.t_max.value_or(8);
    const int u_max = o.u_max.value_or(8);
    Reports out{certificate_check(n_max, t_max, u_max, o.order)};
    // Each perturbed certificate must be caught.
    for (const auto& cert : certificate_mutations()) {
        out.push_back(run_check("certificate-mutation", [&](VerificationReport& r) {
            r.params = {{"mutation", cert.name}, {"n_max", n_max}, {"N", o.order}};
            const auto broken = certificate_check(n_max, t_max, u_max, o.order, cert);
            if (broken.passed) {
                r.fail_note("mutated certificate was not rejected at this order");
            } else if (broken.witness) {
                const auto& w = *broken.witness;
                r.notes.push_back("rejected: x^" + std::to_string(w.x_deg) + " q^" +
                                  std::to_string(w.q_deg) + " coefficient " + w.lhs);
            }
        }));
    }
    return out;
}

Reports cmd_g_recurrence(const Options& o) {
    return {g_recurrence_check(-4, o.n_max.value_or(24), o.order)};
}
Reports cmd_fn_recurrence(const Options& o) {
    return {fn_recurrence_check(0, o.n_max.value_or(20), o.order)};
}
Reports cmd_warnaar(const Options& o) {
    return {warnaar_fn_check(0, o.n_max.value_or(20), o.order)};
}

Reports cmd_chu(const Options& o) {
    const int n_max = o.n_max.value_or(10);
    return {aggregate("chu", {{"e_min", -n_max}, {"m_max", n_max}, {"N", o.order}},
                      [&](const auto& emit) {
                          for (int e = -n_max; e <= 0; ++e) {
                              for (int m = 0; m <= n_max; ++m) {
                                  emit(chu_vandermonde_check(e, m, o.order));
                              }
                          }
                      })};
}

Reports cmd_euler(const Options& o) { return {euler_checks(o.order, o.x_cap)}; }
Reports cmd_rr(const Options& o) { return {rr_checks(o.order)}; }
Reports cmd_characters(const Options& o) { return {character_chain_check(o.order)}; }

const std::vector<std::pair<std::string, std::function<Reports(const Options&)>>>& command_table() {
    static const std::vector<std::pair<std::string, std::function<Reports(const Options&)>>> t = {
        {"theorem2", cmd_theorem2},
        {"crystal", cmd_crystal},
        {"lec", cmd_lec},
        {"lea", cmd_lea},
        {"bijection", cmd_bijection},
        {"gdiff", cmd_gdiff},
        {"fdiff", cmd_fdiff},
        {"certificate", cmd_certificate},
        {"g-recurrence", cmd_g_recurrence},
        {"fn-recurrence", cmd_fn_recurrence},
        {"fincor", cmd_fincor},
        {"warnaar", cmd_warnaar},
        {"chu", cmd_chu},
        {"euler", cmd_euler},
        {"rr", cmd_rr},
        {"characters", cmd_characters},
    };
    return t;
}

// --- series-dump -----------------------------------------------------------

struct Dumped {
    std::optional<XQSeries> bivariate;
    std::optional<QLaurent> univariate;
};

Dumped dump_series(const Options& o) {
    const std::int64_t N = o.order;
    const std::string& name = o.series_name;
    const auto bivariate = [&](auto make, const ValuationBound& bound) -> Dumped {
        if (o.at_x1) return {std::nullopt, specialize_x1(make(x_cap_for_order(bound, N)))};
        return {make(o.x_cap), std::nullopt};
    };
    if (name == "F") {
        return bivariate([&](int cap) { return F_series(N, cap); },
                         ValuationBound::balanced_staircase(3));
    }
    if (name == "G") {
        return bivariate([&](int cap) { return G_series(N, cap); }, G_series(N, 0).bound());
    }
    if (name == "Sk-lhs" || name == "Sk-rhs") {
        const bool lhs = name == "Sk-lhs";
        if (o.at_x1) {
            return {std::nullopt, specialize_x1(lhs ? lhs_theorem(o.k, N) : rhs_theorem(o.k, N))};
        }
        const XQSeries s = lhs ? lhs_theorem(o.k, N) : rhs_theorem(o.k, N);
        return {s.truncated(std::min(o.x_cap, s.x_cap()), N), std::nullopt};
    }
    if (name == "poch-neg-xq") {
        return bivariate([&](int cap) { return poch_neg_xq(N, cap); },
                         ValuationBound::balanced_staircase(1));
    }
    if (name == "rr1-sum") return {std::nullopt, rr_sum(0, N)};
    if (name == "rr2-sum") return {std::nullopt, rr_sum(1, N)};
    if (name == "rr1-product") return {std::nullopt, rr_product(1, N)};
    if (name == "rr2-product") return {std::nullopt, rr_product(2, N)};
    if (name == "character-product") return {std::nullopt, character_product(N)};
    throw UsageError("--name: unknown series '" + name + "'");
}

int run_series_dump(const Options& o, std::ostream& out) {
    const Dumped d = dump_series(o);
    nlohmann::json triples = nlohmann::json::array();
    std::ostringstream text;
    if (d.univariate) {
        // Dense listing, zeros included, q^0 .. q^(N-1).
        for (std::int64_t e = 0; e < o.order; ++e) {
            const Integer c = d.univariate->coefficient(e);
            text << "q^" << e << ": " << c.get_str() << '\n';
            if (c != 0) triples.push_back({0, e, c.get_str()});
        }
    } else {
        for (const auto& e : d.bivariate->entries()) {
            text << "x^" << e.x_deg << " q^" << e.q_deg << ": " << e.coeff.get_str() << '\n';
            triples.push_back({e.x_deg, e.q_deg, e.coeff.get_str()});
        }
    }
    if (o.json_path) {
        nlohmann::ordered_json j;
        j["series"] = o.series_name;
        j["N"] = o.order;
        j["at_x1"] = o.at_x1 || d.univariate.has_value();
        j["coefficients"] = triples;
        if (*o.json_path == "-") {
            out << j.dump(2) << '\n';
            return 0;
        }
        std::ofstream f(*o.json_path);
        if (!f) throw UsageError("--json: cannot write " + *o.json_path);
        f << j.dump(2) << '\n';
    }
    out << text.str();
    return 0;
}

// --- driver -----------------------------------------------------------------

Reports run_command(const Options& o) {
    if (o.command == "all") {
        Reports all;
        for (const auto& [name, fn] : command_table()) {
            Options sub = o;
            sub.command = name;
            for (auto& r : fn(sub)) all.push_back(std::move(r));
        }
        return all;
    }
    for (const auto& [name, fn] : command_table()) {
        if (name == o.command) return fn(o);
    }
    throw UsageError("unknown command '" + o.command + "'");
}

int emit_reports(const Options& o, const Reports& reports, std::ostream& out) {
    bool ok = true;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        ok = ok && r.passed;
        arr.push_back(r.to_json(o.stable));
    }
    const auto failed = std::count_if(reports.begin(), reports.end(),
                                      [](const auto& r) { return !r.passed; });
    nlohmann::ordered_json doc;
    doc["command"] = o.command;
    doc["status"] = ok ? "pass" : "fail";
    doc["reports"] = arr;
    if (o.json_path && *o.json_path == "-") {
        out << doc.dump(2) << '\n';
    } else {
        if (o.json_path) {
            std::ofstream f(*o.json_path);
            if (!f) throw UsageError("--json: cannot write " + *o.json_path);
            f << doc.dump(2) << '\n';
        }
        for (const auto& r : reports) out << r.to_text(o.stable) << '\n';
        out << reports.size() << " checks, " << failed << " failed\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& cli_commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v{"all"};
        for (const auto& [name, fn] : command_table()) v.push_back(name);
        v.push_back("series-dump");
        return v;
    }();
    return names;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact coefficient checks of the Rogers-Ramanujan crystal proof", "verify"};
    app.add_option("command", o.command, "Check to run")
        ->required()
        ->check(CLI::IsMember(cli_commands()));
    app.add_option("-N,--order", o.order, "Truncation order in q")
        ->check(kNonNegative);
    app.add_option("--k", o.k, "Number of components")->check(CLI::Range(1, 12));
    app.add_option("--x-cap", o.x_cap, "Largest x-degree kept")->check(kNonNegative);
    app.add_option("--n-max", o.n_max, "Upper end of the n (or M) range")
        ->check(kNonNegative);
    app.add_option("--t-max", o.t_max, "Upper end of the t range")->check(kNonNegative);
    app.add_option("--u-max", o.u_max, "Upper end of the u range")->check(kNonNegative);
    app.add_option("--max-size", o.max_size, "Largest total size enumerated")
        ->check(kNonNegative);
    app.add_option("--j-max", o.j_max, "Largest tuple entry (lea, bijection)")
        ->check(kNonNegative);
    app.add_option("--json", o.json_path, "Write JSON to this path ('-' for stdout)");
    app.add_flag("--stable", o.stable, "Omit timings so output is byte-reproducible");
    app.add_flag("--recalibrate", o.recalibrate, "Ignore the pinned crystal convention");
    app.add_option("--convention-file", o.convention_file, "Where the crystal convention is pinned");
    app.add_option("--name", o.series_name, "Series for series-dump");
    app.add_flag("--at-x1", o.at_x1, "series-dump: specialize x = 1");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (o.command == "series-dump") {
            if (o.series_name.empty()) throw UsageError("--name is required for series-dump");
            if (std::find(kSeriesNames.begin(), kSeriesNames.end(), o.series_name) ==
                kSeriesNames.end()) {
                throw UsageError("--name: unknown series '" + o.series_name + "'");
            }
            return run_series_dump(o, out);
        }
        return emit_reports(o, run_command(o), out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rrc
