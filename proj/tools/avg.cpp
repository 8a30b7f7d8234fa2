#include "radavg/averaging.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/classify.hpp"
#include "radavg/conditions.hpp"
#include "radavg/report_io.hpp"
#include "radavg/scenario.hpp"
#include "radavg/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace radavg;

RadialWeight load_weight(const std::string& spec) {
    if (spec.find('=') != std::string::npos)
        return RadialWeight::from_config(spec);
    std::ifstream in(spec);
    if (!in) throw WeightError("cannot open weight config: " + spec);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return RadialWeight::from_config(text);
}

void emit(const nlohmann::json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::filesystem::create_directories(
            std::filesystem::path(out).parent_path().empty()
                ? "."
                : std::filesystem::path(out).parent_path());
        std::ofstream(out) << j.dump(2) << "\n";
    }
}

int cmd_classify(const std::string& wspec, const std::string& cls, double K,
                 int levels, const std::string& out) {
    const RadialWeight w = load_weight(wspec);
    const RadialGrid grid = RadialGrid::dyadic(levels, 8);
    nlohmann::json j;
    j["schema"] = 1;
    j["weight"] = w.to_config();
    bool member_all = true;
    if (cls == "dhat" || cls == "all") {
        const auto r = classify_dhat(w, grid);
        j["dhat"] = report_json(r);
        member_all = member_all && r.verdict == Membership::Member;
    }
    if (cls == "dcheck" || cls == "all") {
        // sweep K in {given, 4, 8} before declaring non-membership
        DoublingReport best;
        bool found = false;
        for (double KK : {K, 4.0, 8.0}) {
            best = classify_dcheck(w, KK, grid);
            j["dcheck_K" + std::to_string(int(KK))] = report_json(best);
            if (best.verdict == Membership::Member) {
                found = true;
                break;
            }
        }
        j["dcheck_member"] = found;
        member_all = member_all && found;
    }
    if (cls == "regular" || cls == "all") {
        const auto r = classify_regular(w, grid);
        j["regular"] = report_json(r);
    }
    emit(j, out);
    return 0;
}

int cmd_condition(const std::string& which, const std::string& wspec,
                  const std::string& nuspec, const std::string& etaspec,
                  double p, double q, double eps, int levels,
                  const std::string& out) {
    const RadialWeight omega = load_weight(wspec);
    const RadialWeight nu = nuspec.empty() ? omega : load_weight(nuspec);
    const RadialWeight eta = etaspec.empty() ? nu : load_weight(etaspec);
    const RadialGrid grid = RadialGrid::dyadic(levels, 8);
    nlohmann::json j;
    j["schema"] = 1;
    j["which"] = which;
    j["p"] = p;
    ConditionProfile prof;
    if (which == "mp") {
        prof = mp_profile(omega, nu, eta, p, grid);
    } else if (which == "dp") {
        prof = dp_profile(omega, nu, p, grid);
    } else if (which == "np") {
        NpProfile np = np_profile(omega, nu, eta, p, grid);
        prof = np.profile;
        j["maximizer"] = {{"t", np.best_t}, {"r", np.best_r}};
    } else if (which == "mpeps") {
        prof = mp_eps_profile(omega, nu, eta, p, eps, grid);
        j["eps"] = eps;
    } else if (which == "carleson") {
        ConditionProfile dp = dp_profile(omega, nu, p, grid);
        prof = dp;
        for (auto& v : prof.values)
            v = radavg::is_inf(v) ? kInf : (v + 1.0) / p;
        classify_profile(prof, grid.levels);
    } else if (which == "necessary") {
        const NecessaryPair pq = necessary_pq(omega, nu, eta, p, q, grid);
        j["q"] = q;
        j["first"] = profile_json(pq.first);
        j["second"] = profile_json(pq.second);
        if (pq.implication_checked)
            j["implication_min_ratio"] = json_num(pq.implication_min_ratio);
        if (!out.empty()) {
            write_profile_csv(out + ".first.csv", pq.first);
            write_profile_csv(out + ".second.csv", pq.second);
        }
        emit(j, out);
        return 0;
    } else {
        std::cerr << "unknown condition: " << which << "\n";
        return 2;
    }
    j["profile"] = profile_json(prof);
    if (!out.empty()) write_profile_csv(out + ".csv", prof);
    emit(j, out);
    return 0;
}

int cmd_norm(const std::string& kind, const std::string& wspec,
             const std::string& nuspec, const std::string& etaspec, double p,
             const std::string& families, int kernel_N, int steps,
             std::uint64_t seed, int levels, const std::string& out) {
    WeightTriple triple;
    triple.omega = load_weight(wspec);
    triple.nu = nuspec.empty() ? triple.omega : load_weight(nuspec);
    triple.eta = etaspec.empty() ? triple.nu : load_weight(etaspec);
    const RadialGrid grid = RadialGrid::dyadic(levels, 8);
    nlohmann::json j;
    j["schema"] = 1;
    NormEstimate est;
    if (kind == "strong") {
        StrongFamilies fams;
        fams.muckenhoupt = families.find("muck") != std::string::npos;
        if (families.find("kernel") != std::string::npos)
            fams.kernel_N = kernel_N;
        if (families.find("steps") != std::string::npos)
            fams.random_steps = steps;
        fams.seed = seed;
        est = estimate_strong_norm(triple, p, fams, grid);
    } else if (kind == "weak") {
        std::vector<std::pair<double, double>> rt;
        for (int jj = 1; jj <= levels; jj += 2) {
            const double r = 1.0 - std::ldexp(1.0, -jj);
            rt.emplace_back(0.25 * r, r);
            rt.emplace_back(0.5 * r, r);
            rt.emplace_back(0.9 * r, r);
        }
        est = estimate_weak_norm(triple, p, rt);
    } else {
        std::cerr << "unknown norm kind: " << kind << "\n";
        return 2;
    }
    j["estimate"] = estimate_json(est);
    emit(j, out);
    return 0;
}

int cmd_verify(std::vector<int> checks) {
    const auto results = run_acceptance(checks);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%d] %-70s %s (%.2fs)\n    %s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int cmd_scenario(const std::string& name, bool all, bool list,
                 const std::string& out, int levels) {
    const auto scenarios = builtin_scenarios();
    if (list) {
        for (const auto& s : scenarios)
            std::printf("%-26s p=%-4g %s\n", s.name.c_str(), s.p,
                        s.description.c_str());
        return 0;
    }
    bool ok = true;
    bool ran = false;
    for (const auto& s : scenarios) {
        if (!all && s.name != name) continue;
        ran = true;
        const ScenarioResult r = run_scenario(s, out, levels);
        std::printf("%-26s %s\n", s.name.c_str(), r.ok ? "ok" : "MISMATCH");
        for (const auto& m : r.mismatches) std::printf("    %s\n", m.c_str());
        ok = ok && r.ok;
    }
    if (!ran) {
        std::cerr << "unknown scenario: " << name << "\n";
        return 2;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial averaging operator toolbox"};
    app.require_subcommand(1);

    std::string wspec, nuspec, etaspec, out, which = "dp", cls = "all";
    std::string kind = "strong", families = "muck", name;
    double p = 2.0, q = 2.0, eps = 1.0, K = 2.0;
    int levels = 40, kernel_N = 2, steps = 8;
    std::uint64_t seed = 0;
    bool all = false, list = false;
    std::vector<int> checks;

    auto* c_classify = app.add_subcommand("classify", "weight class membership");
    c_classify->add_option("--weight", wspec)->required();
    c_classify->add_option("--class", cls)
        ->check(CLI::IsMember({"dhat", "dcheck", "regular", "all"}));
    c_classify->add_option("--K", K);
    c_classify->add_option("--levels", levels);
    c_classify->add_option("--out", out);

    auto* c_cond = app.add_subcommand("condition", "condition profiles");
    c_cond->add_option("--which", which)
        ->check(CLI::IsMember({"mp", "dp", "np", "mpeps", "carleson", "necessary"}));
    c_cond->add_option("--weight", wspec)->required();
    c_cond->add_option("--nu", nuspec);
    c_cond->add_option("--eta", etaspec);
    c_cond->add_option("--p", p);
    c_cond->add_option("--q", q);
    c_cond->add_option("--eps", eps);
    c_cond->add_option("--levels", levels);
    c_cond->add_option("--out", out);

    auto* c_norm = app.add_subcommand("norm", "operator norm lower bounds");
    c_norm->add_option("--kind", kind)->check(CLI::IsMember({"strong", "weak"}));
    c_norm->add_option("--weight", wspec)->required();
    c_norm->add_option("--nu", nuspec);
    c_norm->add_option("--eta", etaspec);
    c_norm->add_option("--p", p);
    c_norm->add_option("--families", families);
    c_norm->add_option("--kernel-N", kernel_N);
    c_norm->add_option("--steps", steps);
    c_norm->add_option("--seed", seed);
    c_norm->add_option("--levels", levels);
    c_norm->add_option("--out", out);

    auto* c_verify = app.add_subcommand("verify", "acceptance checks");
    c_verify->add_option("--check", checks, "check ids (default: all)");

    auto* c_scen = app.add_subcommand("scenario", "built-in scenario runs");
    c_scen->add_option("--name", name);
    c_scen->add_flag("--all", all);
    c_scen->add_flag("--list", list);
    c_scen->add_option("--out", out);
    c_scen->add_option("--levels", levels);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) return cmd_classify(wspec, cls, K, levels, out);
        if (c_cond->parsed())
            return cmd_condition(which, wspec, nuspec, etaspec, p, q, eps,
                                 levels, out);
        if (c_norm->parsed())
            return cmd_norm(kind, wspec, nuspec, etaspec, p, families, kernel_N,
                            steps, seed, levels, out);
        if (c_verify->parsed()) return cmd_verify(checks);
        if (c_scen->parsed()) return cmd_scenario(name, all, list, out, levels);
    } catch (const CLI::Error& e) {
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
