// Command-line front end: analytics sweeps, figure datasets, lift
// construction and verification suites.
//
// Exit codes: 0 success, 1 verification/assertion failure, 2 usage error.

#include "regen/analytics.hpp"
#include "regen/codes.hpp"
#include "regen/harness.hpp"
#include "regen/lift.hpp"
#include "regen/model.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace regen;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& s, const char* flag) {
    try {
        return Rational::parse(s);
    } catch (const std::exception&) {
        throw UsageError(std::string("invalid rational for ") + flag + ": " + s);
    }
}

// Output files are written in one shot after all computation succeeded, so a
// bad invocation never leaves a partial file behind.
void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out.good()) throw std::runtime_error("failed writing output file: " + path);
}

std::shared_ptr<const Code> parse_base_code(const std::string& spec) {
    if (spec == "toy") return make_toy_code();
    auto parse_pair = [&](std::size_t prefix_len) {
        std::string rest = spec.substr(prefix_len);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw UsageError("base spec needs N,K after the colon: " + spec);
        int n = std::stoi(rest.substr(0, comma));
        int k = std::stoi(rest.substr(comma + 1));
        return std::pair<int, int>{n, k};
    };
    try {
        if (spec.rfind("msr:", 0) == 0) {
            auto [n, k] = parse_pair(4);
            return std::make_shared<MdsMsrCode>(n, k);
        }
        if (spec.rfind("mbr:", 0) == 0) {
            auto [n, k] = parse_pair(4);
            return std::make_shared<RbtMbrCode>(n, k);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad base spec '") + spec + "': " + e.what());
    }
    throw UsageError("unknown base spec (want toy | msr:N,K | mbr:N,K): " + spec);
}

int run(int argc, char** argv) {
    CLI::App app{"exact-repair regenerating code workbench"};
    app.require_subcommand(1);
    std::uint64_t seed = 42;
    app.add_option("--seed", seed, "seed for all randomness")->capture_default_str();

    // capacity
    auto* cap_cmd = app.add_subcommand("capacity", "functional-repair capacity C_{k,d}");
    std::int64_t cap_k = 0, cap_d = 0;
    std::string cap_alpha = "1", cap_gamma = "1";
    cap_cmd->add_option("--k", cap_k, "reconstruction threshold")->required();
    cap_cmd->add_option("--d", cap_d, "repair degree")->required();
    cap_cmd->add_option("--alpha", cap_alpha, "node size (rational)")->required();
    cap_cmd->add_option("--gamma", cap_gamma, "repair bandwidth (rational)")->required();

    // points
    auto* points_cmd = app.add_subcommand("points", "MSR and MBR tradeoff points");
    std::int64_t pts_k = 0, pts_d = 0;
    std::string pts_b;
    points_cmd->add_option("--k", pts_k)->required();
    points_cmd->add_option("--d", pts_d)->required();
    points_cmd->add_option("--B", pts_b, "file size (rational)")->required();

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "exact-repair lower bound point");
    std::int64_t bd_n = 0, bd_k = 0, bd_d = 0, bd_i = 0;
    std::string bd_alpha = "1";
    bound_cmd->add_option("--n", bd_n)->required();
    bound_cmd->add_option("--k", bd_k)->required();
    bound_cmd->add_option("--d", bd_d)->required();
    bound_cmd->add_option("--alpha", bd_alpha)->required();
    bound_cmd->add_option("--i", bd_i, "bound index, 1..k")->required();

    // fig2
    auto* fig2_cmd = app.add_subcommand("fig2", "capacity/bound/interpolation CSV sweep");
    std::int64_t fig2_n = 51;
    std::string fig2_out;
    fig2_cmd->add_option("--n", fig2_n)->capture_default_str();
    fig2_cmd->add_option("--out", fig2_out, "output CSV path")->required();

    // asymptotic
    auto* asym_cmd = app.add_subcommand("asymptotic", "ratio diagnostics for growing M");
    std::int64_t as_n = 0, as_k = 0, as_d = 0;
    std::string as_s, as_mlist, as_out;
    asym_cmd->add_option("--n", as_n)->required();
    asym_cmd->add_option("--k", as_k)->required();
    asym_cmd->add_option("--d", as_d)->required();
    asym_cmd->add_option("--s", as_s, "mix parameter in (0,1], rational")->required();
    asym_cmd->add_option("--M-list", as_mlist, "comma-separated M values")->required();
    asym_cmd->add_option("--out", as_out, "output JSON path (default stdout)");

    // lift
    auto* lift_cmd = app.add_subcommand("lift", "build a lifted instance and dump its summary");
    std::string lf_base, lf_variant, lf_out;
    int lf_times = 1;
    lift_cmd->add_option("--base", lf_base, "toy | msr:N,K | mbr:N,K")->required();
    lift_cmd->add_option("--variant", lf_variant, "cyclic | perm")->required();
    lift_cmd->add_option("--times", lf_times, "lift count")->capture_default_str();
    lift_cmd->add_option("--out", lf_out, "output JSON path")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a registered verification scenario");
    std::string vf_scenario, vf_json;
    std::uint64_t vf_cap = 500;
    std::optional<std::uint64_t> vf_corrupt;
    verify_cmd->add_option("--scenario", vf_scenario)->required();
    verify_cmd->add_option("--cap", vf_cap, "max enumerated combinations per axis")
        ->capture_default_str();
    verify_cmd->add_option("--corrupt", vf_corrupt,
                           "flip the stored symbol at this global index first");
    verify_cmd->add_option("--json", vf_json, "also write the suite result JSON here");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "per-helper bandwidth audit");
    std::string au_scenario;
    int au_failed = 1;
    audit_cmd->add_option("--scenario", au_scenario)->required();
    audit_cmd->add_option("--failed", au_failed, "failed node index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cap_cmd->parsed()) {
            Rational alpha = parse_rational(cap_alpha, "--alpha");
            Rational gamma = parse_rational(cap_gamma, "--gamma");
            Rational c = analytics::functional_capacity(cap_k, cap_d, alpha, gamma);
            std::cout << "C_{" << cap_k << "," << cap_d << "}(" << alpha.to_string() << ","
                      << gamma.to_string() << ") = " << c.to_string() << " ("
                      << c.to_decimal() << ")\n";
            return kExitOk;
        }
        if (points_cmd->parsed()) {
            Rational B = parse_rational(pts_b, "--B");
            auto msr = analytics::msr_point(pts_k, pts_d, B);
            auto mbr = analytics::mbr_point(pts_k, pts_d, B);
            std::cout << "MSR: alpha = " << msr.alpha.to_string() << " (" << msr.alpha.to_decimal()
                      << "), gamma = " << msr.gamma.to_string() << " (" << msr.gamma.to_decimal()
                      << ")\n";
            std::cout << "MBR: alpha = " << mbr.alpha.to_string() << " (" << mbr.alpha.to_decimal()
                      << "), gamma = " << mbr.gamma.to_string() << " (" << mbr.gamma.to_decimal()
                      << ")\n";
            return kExitOk;
        }
        if (bound_cmd->parsed()) {
            Rational alpha = parse_rational(bd_alpha, "--alpha");
            auto b = analytics::exact_lower_bound(bd_n, bd_k, bd_d, alpha, bd_i);
            std::cout << "gamma = " << b.gamma.to_string() << " (" << b.gamma.to_decimal()
                      << "), value = " << b.value.to_string() << " (" << b.value.to_decimal()
                      << ")\n";
            return kExitOk;
        }
        if (fig2_cmd->parsed()) {
            auto rows = analytics::fig2_dataset(fig2_n);
            write_file(fig2_out, analytics::fig2_csv(rows));
            std::cout << "wrote " << rows.size() << " rows to " << fig2_out << "\n";
            return kExitOk;
        }
        if (asym_cmd->parsed()) {
            Rational s = parse_rational(as_s, "--s");
            std::vector<std::int64_t> ms;
            std::string cur;
            for (char c : as_mlist + ",") {
                if (c == ',') {
                    if (!cur.empty()) ms.push_back(std::stoll(cur));
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            if (ms.empty()) throw UsageError("--M-list needs at least one value");
            nlohmann::json out = nlohmann::json::array();
            for (std::int64_t m : ms) {
                out.push_back(analytics::asymptotic_ratio(as_n, as_k, as_d, m, s).to_json());
            }
            std::string text = out.dump(2) + "\n";
            if (as_out.empty()) {
                std::cout << text;
            } else {
                write_file(as_out, text);
                std::cout << "wrote " << ms.size() << " reports to " << as_out << "\n";
            }
            return kExitOk;
        }
        if (lift_cmd->parsed()) {
            LiftVariant variant;
            if (lf_variant == "cyclic") {
                variant = LiftVariant::cyclic;
            } else if (lf_variant == "perm" || lf_variant == "permutation") {
                variant = LiftVariant::permutation;
            } else {
                throw UsageError("unknown variant (want cyclic | perm): " + lf_variant);
            }
            std::shared_ptr<const Code> code =
                iterated_lift(parse_base_code(lf_base), lf_times, variant);
            auto file = harness::random_file(code->params().file_size, seed);
            StorageInstance inst = code->store(file);
            nlohmann::json j = instance_json(*code, inst);
            j["seed"] = seed;
            write_file(lf_out, j.dump(2) + "\n");
            std::cout << "wrote instance summary for " << code->id() << " to " << lf_out << "\n";
            return kExitOk;
        }
        if (verify_cmd->parsed()) {
            const harness::Scenario* sc = harness::find_scenario(vf_scenario);
            if (!sc) throw UsageError("unknown scenario: " + vf_scenario);
            harness::SuiteOptions opts;
            opts.seed = seed;
            opts.cap = vf_cap;
            opts.corrupt_symbol = vf_corrupt;
            harness::SuiteResult result = harness::run_construction_suite(*sc, opts);
            std::cout << result.summary_table();
            if (!vf_json.empty()) write_file(vf_json, result.to_json().dump(2) + "\n");
            return result.pass ? kExitOk : kExitFailure;
        }
        if (audit_cmd->parsed()) {
            const harness::Scenario* sc = harness::find_scenario(au_scenario);
            if (!sc) throw UsageError("unknown scenario: " + au_scenario);
            auto code = harness::build_chain(*sc);
            auto file = harness::random_file(code->params().file_size, seed);
            StorageInstance inst = code->store(file);
            harness::BandwidthAudit audit = harness::bandwidth_audit(*code, inst, au_failed);
            std::cout << audit.to_json().dump(2) << "\n";
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
