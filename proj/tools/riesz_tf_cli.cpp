#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riesz_tf/barriers.hpp"
#include "riesz_tf/ferrari.hpp"
#include "riesz_tf/kernel_matrix.hpp"
#include "riesz_tf/parallel.hpp"
#include "riesz_tf/potentials.hpp"
#include "riesz_tf/regime.hpp"
#include "riesz_tf/report_io.hpp"
#include "riesz_tf/solver.hpp"
#include "riesz_tf/verify.hpp"

namespace fs = std::filesystem;
using namespace riesz_tf;

namespace {

// "5/3" and plain decimals
double parse_number(const std::string& s) {
    auto slash = s.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument("malformed number: " + s);
        return v;
    }
    double num = std::stod(s.substr(0, slash), &used);
    if (used != slash)
        throw std::invalid_argument("malformed number: " + s);
    double den = std::stod(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1 || den == 0.0)
        throw std::invalid_argument("malformed fraction: " + s);
    return num / den;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_number(item));
    return out;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

struct RunConfig {
    int d = 2;
    double alpha = 1.0;
    std::vector<double> q_list = {1.5};
    std::vector<double> alpha_list; // empty: use alpha
    std::string potential = "vz:1";
    int inner = 64;
    int per_decade = 32;
    double rmax = 1e4;
    double theta = 0.5;
    double tol = 1e-10;
    int max_iter = 20000;
    std::string init = "tf-local"; // or "zero"
    std::string mode = "free";     // or "nonnegative"
    std::vector<std::string> verify; // regime, mass, sharp-limit, ordering
    std::string out_dir = ".";
};

// plain key=value config file, '#' comments; unknown keys rejected
void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto trim = [](std::string s) {
            const char* ws = " \t\r\"";
            auto b = s.find_first_not_of(ws);
            auto e = s.find_last_not_of(ws);
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "d") cfg.d = int(parse_number(val));
        else if (key == "alpha") cfg.alpha = parse_number(val);
        else if (key == "q") cfg.q_list = {parse_number(val)};
        else if (key == "q_list") cfg.q_list = parse_list(val);
        else if (key == "alpha_list") cfg.alpha_list = parse_list(val);
        else if (key == "potential") cfg.potential = val;
        else if (key == "inner") cfg.inner = int(parse_number(val));
        else if (key == "per_decade") cfg.per_decade = int(parse_number(val));
        else if (key == "rmax") cfg.rmax = parse_number(val);
        else if (key == "theta") cfg.theta = parse_number(val);
        else if (key == "tol") cfg.tol = parse_number(val);
        else if (key == "max_iter") cfg.max_iter = int(parse_number(val));
        else if (key == "init") cfg.init = val;
        else if (key == "mode") cfg.mode = val;
        else if (key == "verify") {
            cfg.verify.clear();
            std::istringstream vs(val);
            std::string item;
            while (std::getline(vs, item, ','))
                if (!item.empty())
                    cfg.verify.push_back(item);
        } else if (key == "out") cfg.out_dir = val;
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
}

Potential make_potential(const std::string& spec, const ProblemParams& params,
                         std::shared_ptr<const RadialGrid> grid, const KernelMatrix* K) {
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "vz")
        return potential_vz(arg.empty() ? 1.0 : parse_number(arg), params, grid);
    if (kind == "bump") {
        double h = 1.0, r0 = 1.0;
        auto comma = arg.find(',');
        if (!arg.empty()) {
            h = parse_number(arg.substr(0, comma));
            if (comma != std::string::npos)
                r0 = parse_number(arg.substr(comma + 1));
        }
        return bump_potential(h, r0, grid);
    }
    if (kind == "source") {
        if (!K)
            throw std::invalid_argument("source potential needs an assembled kernel");
        Potential direct = potential_from_csv(arg, grid);
        if (!direct.has_source())
            throw std::invalid_argument("source:file needs an f column in " + arg);
        return potential_from_source(*direct.source, *K);
    }
    if (kind == "file")
        return potential_from_csv(arg, grid);
    throw std::invalid_argument("unknown potential spec '" + spec +
                                "' (use vz:Z | bump:h,R0 | source:file | file:path)");
}

bool has_verify(const RunConfig& cfg, const std::string& name) {
    for (const auto& v : cfg.verify)
        if (v == name)
            return true;
    return false;
}

struct CaseOutcome {
    bool converged = false;
    bool verifications_ok = true;
    json result;
    double p_fit = 0.0, b_fit = 0.0;
    double mass_signed = 0.0, mass_abs = 0.0;
    std::string regime;
    std::string pass_summary;
    std::optional<MinimizerResult> minimizer;
    std::optional<Potential> used_potential;
};

CaseOutcome run_case(const RunConfig& cfg, double q, const KernelMatrix& K,
                     std::shared_ptr<const RadialGrid> grid) {
    ProblemParams params(cfg.d, cfg.alpha, q);
    Potential V = make_potential(cfg.potential, params, grid, &K);

    SolveOptions opts;
    opts.damping = cfg.theta;
    opts.tolerance = cfg.tol;
    opts.max_iterations = cfg.max_iter;
    opts.initial = cfg.init == "zero" ? InitialGuess::Zero : InitialGuess::ThomasFermiLocal;
    opts.mode = cfg.mode == "nonnegative" ? ConstraintMode::Nonnegative : ConstraintMode::Free;

    MinimizerResult res = opts.mode == ConstraintMode::Free ? solve_free(V, K, params, opts)
                                                            : solve_nonneg(V, K, params, opts);
    CaseOutcome out;
    out.converged = res.converged;
    out.mass_signed = res.mass_signed;
    out.mass_abs = clipped_abs_mass(res, params);

    RegimeSpec spec = classify_regime(params);
    out.regime = regime_name(spec.regime);

    json verdicts = json::object();
    std::string summary;
    auto note = [&](const std::string& name, bool pass, bool skipped) {
        summary += name + (skipped ? ":skipped " : pass ? ":pass " : ":fail ");
        if (!skipped && !pass)
            out.verifications_ok = false;
    };

    json fits = json::object();
    try {
        auto fit = fit_decay(res.rho, DecayModel::Power);
        fits["power"] = json{{"p", fit.p}, {"amplitude", fit.amplitude},
                             {"rms", fit.residual_rms}};
        out.p_fit = fit.p;
    } catch (const std::exception& e) {
        fits["power"] = json{{"error", e.what()}};
    }

    if (has_verify(cfg, "regime")) {
        RegimeReport rep = verify_regime(res, spec, V, params);
        verdicts["regime"] = to_json(rep);
        out.p_fit = rep.skipped ? out.p_fit : rep.p_fit;
        out.b_fit = rep.b_fit;
        note("regime", rep.pass, rep.skipped);
    }
    if (has_verify(cfg, "mass")) {
        MassReport rep = mass_audit(res, V, params);
        verdicts["mass"] = to_json(rep);
        note("mass", rep.pass, rep.skipped);
    }
    if (has_verify(cfg, "sharp-limit")) {
        SharpLimitReport rep = sharp_limit_check(res, V, params);
        verdicts["sharp_limit"] = to_json(rep);
        note("sharp-limit", rep.pass, rep.skipped);
    }
    if (has_verify(cfg, "ordering")) {
        SolveOptions o2 = opts;
        o2.mode = ConstraintMode::Free;
        MinimizerResult rf = solve_free(V, K, params, o2);
        o2.mode = ConstraintMode::Nonnegative;
        MinimizerResult rn = solve_nonneg(V, K, params, o2);
        const bool coincide = V.has_source() && V.source && V.source->min_value() >= 0.0;
        OrderingReport rep = ordering_check(rf, rn, coincide,
                                            opts.tolerance * rf.residual_scale);
        verdicts["ordering"] = to_json(rep);
        note("ordering", rep.pass, false);
    }
    out.pass_summary = summary;

    out.result = json{{"params", {{"d", cfg.d}, {"alpha", cfg.alpha}, {"q", q}}},
                      {"grid",
                       {{"inner", cfg.inner},
                        {"per_decade", cfg.per_decade},
                        {"rmax", grid->r_max()},
                        {"nodes", grid->size()}}},
                      {"mode", cfg.mode},
                      {"regime", out.regime},
                      {"energy", res.energy},
                      {"residual", res.residual},
                      {"residual_relative", res.residual / res.residual_scale},
                      {"iterations", res.iterations},
                      {"converged", res.converged},
                      {"mass_signed", res.mass_signed},
                      {"mass_abs", out.mass_abs},
                      {"mass_abs_raw", res.mass_abs},
                      {"fits", fits},
                      {"verdicts", verdicts},
                      {"diagnostics", res.diagnostics},
                      {"metadata", {{"timestamp", iso_timestamp()}, {"tool", "riesz_tf"}}}};

    if (!res.converged)
        out.verifications_ok = false;
    out.minimizer = std::move(res);
    out.used_potential = std::move(V);
    return out;
}

int cmd_solve(RunConfig cfg) {
    if (cfg.q_list.size() != 1)
        throw std::invalid_argument("solve expects a single q (use sweep for lists)");
    ProblemParams params(cfg.d, cfg.alpha, cfg.q_list[0]); // validates admissibility
    auto grid = build_grid(params, GridLayout{cfg.inner, cfg.per_decade, cfg.rmax});
    KernelMatrix K(grid, params);

    CaseOutcome out = run_case(cfg, cfg.q_list[0], K, grid);
    fs::create_directories(cfg.out_dir);
    write_density_csv((fs::path(cfg.out_dir) / "density.csv").string(), *out.minimizer,
                      *out.used_potential);
    std::ofstream jf(fs::path(cfg.out_dir) / "result.json");
    jf << out.result.dump(2) << '\n';

    if (!out.converged) {
        std::cerr << "solver did not converge: " << out.minimizer->diagnostics << '\n';
        return 2;
    }
    std::cout << "converged in " << out.minimizer->iterations << " iterations; energy "
              << out.minimizer->energy << "; " << out.pass_summary << '\n';
    return out.verifications_ok ? 0 : 2;
}

int cmd_sweep(RunConfig cfg) {
    std::vector<double> alphas = cfg.alpha_list.empty() ? std::vector<double>{cfg.alpha}
                                                        : cfg.alpha_list;
    if (cfg.q_list.empty() || alphas.empty())
        throw std::invalid_argument("sweep needs nonempty q/alpha lists");
    struct Row {
        double q, alpha;
        CaseOutcome out;
        std::string error;
    };
    std::vector<Row> rows;
    for (double a : alphas)
        for (double q : cfg.q_list)
            rows.push_back({q, a, {}, ""});

    // one kernel per alpha (grid and kernel are q-independent)
    for (double a : alphas) {
        RunConfig sub = cfg;
        sub.alpha = a;
        ProblemParams pk(cfg.d, a, std::max(2.0 * cfg.d / (cfg.d + a) + 1e-3,
                                            cfg.q_list[0]));
        auto grid = build_grid(pk, GridLayout{cfg.inner, cfg.per_decade, cfg.rmax});
        KernelMatrix K(grid, pk);
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].alpha == a)
                idx.push_back(i);
        parallel_for(idx.size(), [&](std::size_t k) {
            Row& row = rows[idx[k]];
            try {
                row.out = run_case(sub, row.q, K, grid);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        });
    }

    fs::create_directories(cfg.out_dir);
    std::ofstream csv(fs::path(cfg.out_dir) / "sweep.csv");
    csv << "q,alpha,regime,p_fit,b_fit,mass_signed,mass_abs,converged,verifications,error\n";
    bool any_fail = false;
    for (const Row& row : rows) {
        std::string verdict = row.out.pass_summary.empty() ? "skipped" : row.out.pass_summary;
        if (!row.error.empty() || !row.out.converged ||
            (!row.out.pass_summary.empty() && !row.out.verifications_ok))
            any_fail = true;
        csv << fmt17(row.q) << ',' << fmt17(row.alpha) << ',' << row.out.regime << ','
            << fmt17(row.out.p_fit) << ',' << fmt17(row.out.b_fit) << ','
            << fmt17(row.out.mass_signed) << ',' << fmt17(row.out.mass_abs) << ','
            << (row.out.converged ? 1 : 0) << ',' << verdict << ',' << row.error << '\n';
    }
    std::cout << "sweep: " << rows.size() << " rows -> "
              << (fs::path(cfg.out_dir) / "sweep.csv").string() << '\n';
    return any_fail ? 2 : 0;
}

int cmd_verify_barriers(int d, double alpha, const std::string& out_dir) {
    ProblemParams params(d, alpha, std::max(1.9, 2.0 * d / (d + alpha) + 0.05));
    FerrariEvaluator eval(params);
    struct Item {
        std::string name;
        Barrier barrier;
    };
    std::vector<Item> items;
    const double da = d - alpha;
    items.push_back({"gbeta", make_barrier(BarrierFamily::GBeta, 0.5 * (da + d), params)});
    items.push_back({"log_b1", make_barrier(BarrierFamily::Log, 1.0, params)});
    items.push_back({"loglift", make_barrier(BarrierFamily::LogLift, 0.0, params)});
    items.push_back({"power_low", make_barrier(BarrierFamily::Power, 0.5 * da, params)});
    items.push_back({"power_mid", make_barrier(BarrierFamily::Power, 0.5 * (da + d), params)});
    items.push_back({"power_d", make_barrier(BarrierFamily::Power, double(d), params)});
    items.push_back({"power_high", make_barrier(BarrierFamily::Power, d + 1.0, params)});

    fs::create_directories(out_dir);
    json all = json::object();
    bool ok = true;
    std::ofstream csv(fs::path(out_dir) / "barriers.csv");
    csv << "family,r,value,compensated\n";
    for (const auto& item : items) {
        BarrierReport rep = verify_barrier(eval, item.barrier, 1e2, 1e4);
        all[item.name] = to_json(rep);
        write_barrier_csv((fs::path(out_dir) / ("barriers_" + item.name + ".csv")).string(),
                          rep);
        for (std::size_t i = 0; i < rep.radii.size(); ++i)
            csv << item.name << ',' << fmt17(rep.radii[i]) << ',' << fmt17(rep.values[i])
                << ',' << fmt17(rep.compensated[i]) << '\n';
        std::cout << item.name << ": " << (rep.pass ? "pass" : "FAIL") << "  flatness "
                  << rep.flatness << "  slope " << rep.slope << '\n';
        ok = ok && rep.pass;
    }
    std::ofstream jf(fs::path(out_dir) / "barriers.json");
    jf << all.dump(2) << '\n';
    return ok ? 0 : 2;
}

int cmd_selftest(int d, double alpha) {
    const bool coarse = std::getenv("RIESZ_TF_SELFTEST_COARSE") != nullptr;
    int failures = 0;
    auto report = [&](const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "[ pass ] " : "[ FAIL ] ") << name << "  " << detail << '\n';
        if (!pass)
            ++failures;
    };

    ProblemParams params(d, alpha, std::max(1.9, 2.0 * d / (d + alpha) + 0.05));

    { // kernel Beta oracle
        auto grid = build_grid(params, GridLayout{128, 96, 1e3});
        KernelMatrix K(grid, params);
        auto rho = RadialFunction::sample(
            grid, [&](double r) { return std::pow(1.0 + r * r, -0.5 * (d + alpha)); });
        const double got = K.apply(rho)[0];
        const double expect = beta_origin_value(d, alpha);
        const double rel = std::abs(got / expect - 1.0);
        report("kernel Beta oracle", rel <= 5e-4,
               "value " + std::to_string(got) + " vs " + std::to_string(expect) + " rel " +
                   std::to_string(rel));

        // Newton tail on a unit hat
        auto grid2 = build_grid(params, GridLayout{64, 32, 1e4});
        KernelMatrix K2(grid2, params);
        auto hat = RadialFunction::sample(
            grid2, [](double r) { return r < 1.0 ? std::pow(1.0 - r * r, 3) : 0.0; });
        auto rep = newton_tail_check(hat, K2);
        report("Newton far-field", rep.pass,
               "worst deviation " + std::to_string(rep.worst_deviation));
    }

    try { // Ferrari calibration, repeatability, scaling
        FerrariControls c1;
        if (coarse) {
            c1.delta = 0.5;
            c1.t_max = 50.0;
            c1.growth = 3.0;
            c1.panel_order = 4;
            c1.graded_levels = 6;
        }
        FerrariEvaluator e1(params, c1);
        FerrariControls c2 = c1;
        c2.panel_order = c1.panel_order + 4;
        c2.growth = 1.4;
        FerrariEvaluator e2(params, c2);
        const double rep_err =
            std::abs(e1.calibration_constant() / e2.calibration_constant() - 1.0);
        report("Ferrari calibration repeatability", rep_err <= 1e-6,
               "|c1/c2-1| = " + std::to_string(rep_err));

        Barrier g = make_barrier(BarrierFamily::GBeta, 0.5 * (2 * d - alpha), params);
        RadialProfile prof = g.profile();
        double worst = 0.0;
        for (double lam : {0.5, 2.0, 4.0}) {
            RadialProfile scaled{[&prof, lam](double r) { return prof.value(lam * r); },
                                 [&prof, lam](double r) { return lam * prof.d1(lam * r); },
                                 [&prof, lam](double r) { return lam * lam * prof.d2(lam * r); }};
            const double lhs = e1(scaled, 7.0);
            const double rhs = std::pow(lam, alpha) * e1(prof, lam * 7.0);
            worst = std::max(worst, std::abs(lhs / rhs - 1.0));
        }
        report("Ferrari scaling identity", worst <= 1e-8, "worst rel " + std::to_string(worst));
    } catch (const std::exception& e) {
        report("Ferrari calibration", false, e.what());
    }

    return failures == 0 ? 0 : 2;
}

int cmd_regimes(int d, double alpha) {
    ProblemParams base(d, alpha, 2.0 * d / (d + alpha) + 1e-6 + 1e-3);
    std::cout << "d=" << d << " alpha=" << alpha << '\n';
    std::cout << "  q1 = 2d/(d+alpha)       = " << base.q_admissible() << "  (admissibility)\n";
    std::cout << "  q2 = (2d-alpha)/d       = " << base.q_crit_low() << "  (log-critical)\n";
    std::cout << "  q3 = (2d+alpha)/(d+alpha) = " << base.q_crit_high() << "  (log-critical)\n";
    std::cout << "  regime table (rho ~ r^-p (log r)^-b):\n";
    struct Probe {
        const char* label;
        double q;
    };
    const double q1 = base.q_admissible(), q2 = base.q_crit_low(), q3 = base.q_crit_high();
    std::vector<Probe> probes = {{"i   ", 0.5 * (q1 + q2)}, {"ii  ", q2},
                                 {"iii ", 0.5 * (q2 + q3)}, {"iv  ", q3},
                                 {"v   ", 0.5 * (q3 + 2.0)}, {"lin ", 2.0},
                                 {"sup ", 2.5}};
    for (const auto& pr : probes) {
        ProblemParams p(d, alpha, pr.q);
        RegimeSpec spec = classify_regime(p);
        std::cout << "    " << pr.label << " q=" << pr.q << "  p=" << spec.p
                  << "  b=" << spec.b;
        if (spec.regime == Regime::Superlinear)
            std::cout << "  upper-power=" << spec.p_upper;
        if (!spec.note.empty())
            std::cout << "  [" << spec.note << "]";
        std::cout << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial Thomas-Fermi / Riesz screening solver"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;
    std::string q_arg, q_list_arg, alpha_list_arg, verify_arg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "key=value config file");
        sub->add_option("--d", cfg.d, "dimension (>=2)");
        sub->add_option("--alpha", cfg.alpha, "Riesz order in (0,2)");
        sub->add_option("--q", q_arg, "Lebesgue exponent (fractions like 5/3 accepted)");
        sub->add_option("--potential", cfg.potential, "vz:Z | bump:h,R0 | source:file | file:path");
        sub->add_option("--inner", cfg.inner, "uniform cells on [0,1]");
        sub->add_option("--per-decade", cfg.per_decade, "geometric cells per decade");
        sub->add_option("--rmax", cfg.rmax, "grid extent");
        sub->add_option("--theta", cfg.theta, "damping in (0,1]");
        sub->add_option("--tol", cfg.tol, "EL residual tolerance (relative)");
        sub->add_option("--max-iter", cfg.max_iter, "iteration budget");
        sub->add_option("--init", cfg.init, "zero | tf-local");
        sub->add_option("--mode", cfg.mode, "free | nonnegative");
        sub->add_option("--verify", verify_arg, "comma list: regime,mass,sharp-limit,ordering");
        sub->add_option("--out", cfg.out_dir, "output directory");
    };

    CLI::App* solve = app.add_subcommand("solve", "single minimization with verifications");
    add_common(solve);
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over q (and alpha) lists");
    add_common(sweep);
    sweep->add_option("--q-list", q_list_arg, "comma-separated q values");
    sweep->add_option("--alpha-list", alpha_list_arg, "comma-separated alpha values");

    int bar_d = 2;
    double bar_alpha = 1.0;
    std::string bar_out = ".";
    CLI::App* barriers = app.add_subcommand("verify-barriers",
                                            "sign/decay checks of the barrier families");
    barriers->add_option("--d", bar_d);
    barriers->add_option("--alpha", bar_alpha);
    barriers->add_option("--out", bar_out);

    int st_d = 2;
    double st_alpha = 1.0;
    CLI::App* selftest = app.add_subcommand("selftest", "kernel/Ferrari/Newton oracles");
    selftest->add_option("--d", st_d);
    selftest->add_option("--alpha", st_alpha);

    int rg_d = 2;
    double rg_alpha = 1.0;
    CLI::App* regimes = app.add_subcommand("regimes", "threshold and exponent table");
    regimes->add_option("--d", rg_d);
    regimes->add_option("--alpha", rg_alpha);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_file.empty())
            load_config_file(config_file, cfg);
        if (!q_arg.empty())
            cfg.q_list = {parse_number(q_arg)};
        if (!q_list_arg.empty())
            cfg.q_list = parse_list(q_list_arg);
        if (!alpha_list_arg.empty())
            cfg.alpha_list = parse_list(alpha_list_arg);
        if (!verify_arg.empty()) {
            cfg.verify.clear();
            std::istringstream vs(verify_arg);
            std::string item;
            while (std::getline(vs, item, ','))
                if (!item.empty())
                    cfg.verify.push_back(item);
        }

        if (solve->parsed())
            return cmd_solve(cfg);
        if (sweep->parsed())
            return cmd_sweep(cfg);
        if (barriers->parsed())
            return cmd_verify_barriers(bar_d, bar_alpha, bar_out);
        if (selftest->parsed())
            return cmd_selftest(st_d, st_alpha);
        if (regimes->parsed())
            return cmd_regimes(rg_d, rg_alpha);
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
