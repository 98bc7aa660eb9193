#include "loghls/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "loghls/cartesian.hpp"
#include "loghls/flow.hpp"
#include "loghls/functionals.hpp"
#include "loghls/greens.hpp"
#include "loghls/grid.hpp"
#include "loghls/report_io.hpp"
#include "loghls/scenarios.hpp"
#include "loghls/stationary.hpp"

namespace loghls {

namespace {

namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;

double parse_plain_number(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse number '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("cannot parse number '" + s + "'");
    return v;
}

std::string trim_copy(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_scalar(const std::string& text) {
    const std::string s = trim_copy(text);
    if (s.empty()) throw std::invalid_argument("empty numeric value");
    const auto caret = s.find('^');
    if (caret != std::string::npos)
        return std::pow(parse_scalar(s.substr(0, caret)), parse_scalar(s.substr(caret + 1)));
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        std::string head = s.substr(0, s.size() - 2);
        if (head.empty()) head = "1";
        if (head == "-") head = "-1";
        if (head == "+") head = "1";
        return parse_plain_number(head) * kPi;
    }
    return parse_plain_number(s);
}

TestDensitySpec parse_density_spec(const std::string& text) {
    const std::string s = trim_copy(text);
    const auto colon = s.find(':');
    const std::string name = colon == std::string::npos ? s : s.substr(0, colon);
    const std::string params = colon == std::string::npos ? "" : s.substr(colon + 1);
    TestDensitySpec spec;
    if (name == "reference" || name == "mu") {
        spec.kind = TestDensitySpec::Kind::reference;
        if (!params.empty()) throw std::invalid_argument("reference takes no parameters");
    } else if (name == "gaussian") {
        spec.kind = TestDensitySpec::Kind::gaussian;
        spec.sigma = params.empty() ? 1.0 : parse_scalar(params);
    } else if (name == "dilated") {
        spec.kind = TestDensitySpec::Kind::dilated_reference;
        spec.lambda = params.empty() ? 1.0 : parse_scalar(params);
    } else if (name == "bump") {
        spec.kind = TestDensitySpec::Kind::bump;
        if (!params.empty()) {
            const auto comma = params.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("bump takes two parameters, e.g. bump:0.5,2.5");
            spec.a = parse_scalar(params.substr(0, comma));
            spec.b = parse_scalar(params.substr(comma + 1));
        }
    } else if (name == "translated") {
        spec.kind = TestDensitySpec::Kind::translated;
        spec.y = params.empty() ? 0.0 : parse_scalar(params);
    } else {
        throw std::invalid_argument(
            "unknown density spec '" + s +
            "' (expected reference, gaussian:<sigma>, dilated:<lambda>, bump:<a>,<b>, "
            "or translated:<y>)");
    }
    return spec;
}

namespace {

/** Flat JSON config support: {"flag-name": value, ...} with scalars or
 * arrays.  The file is expanded into argument tokens before parsing, and a
 * key is skipped whenever the matching long flag was given explicitly, so the
 * usual conversions and the CLI-over-config precedence apply.  (CLI11 only
 * processes config files attached to the root application, not to
 * subcommands, so the expansion happens up front.) */
std::vector<std::string> expand_config_args(const std::vector<std::string>& args) {
    std::string file;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size())
                throw std::invalid_argument("--config requires a file path");
            file = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            file = a.substr(9);
        } else {
            out.push_back(a);
        }
    }
    if (file.empty()) return out;

    std::ifstream is(file);
    if (!is) throw std::invalid_argument("cannot open config file: " + file);
    nlohmann::ordered_json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config file must hold a flat JSON object");

    auto given_explicitly = [&out](const std::string& name) {
        const std::string full = "--" + name;
        const std::string prefixed = full + "=";
        for (const std::string& a : out)
            if (a == full || a.rfind(prefixed, 0) == 0) return true;
        return false;
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (given_explicitly(it.key())) continue;
        const nlohmann::json& val = it.value();
        auto push_one = [&out, &it](const nlohmann::json& v) {
            out.push_back("--" + it.key());
            out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        };
        if (val.is_boolean()) {
            if (val.get<bool>()) out.push_back("--" + it.key());
        } else if (val.is_array()) {
            for (const auto& elem : val) push_one(elem);
        } else if (val.is_object() || val.is_null()) {
            throw std::invalid_argument("config key '" + it.key() + "' must be a scalar or array");
        } else {
            push_one(val);
        }
    }
    return out;
}

struct GridArgs {
    int n = 2048;
    double r_max = 200.0;
    double stretch = 3.0;
};

void add_grid_options(CLI::App* cmd, GridArgs& a) {
    cmd->add_option("--grid-n", a.n, "radial node count")->capture_default_str();
    cmd->add_option("--grid-rmax", a.r_max, "truncation radius")->capture_default_str();
    cmd->add_option("--grid-stretch", a.stretch, "grading exponent of the node map")
        ->capture_default_str();
}

void add_output_options(CLI::App* cmd, std::string& out_dir) {
    cmd->add_option("--out", out_dir, "output directory for artifacts")->capture_default_str();
    // Handled by expand_config_args before parsing; registered for --help.
    cmd->add_option("--config", "flat JSON config file mirroring the long flag names");
}

RadialGrid grid_from(const GridArgs& a) { return build_grid(a.n, a.r_max, a.stretch); }

fs::path resolve_out_dir(const std::string& flag_value) {
    const char* env = std::getenv("LOGHLS_OUT");
    if (env != nullptr && *env != '\0') return fs::path(env);
    return fs::path(flag_value);
}

void emit(const fs::path& dir, const std::string& file, const std::string& content) {
    const fs::path p = dir / file;
    write_text_file(p.string(), content);
    std::cerr << "wrote " << p.string() << "\n";
}

std::vector<double> parse_scalar_list(const std::vector<std::string>& items) {
    std::vector<double> out;
    out.reserve(items.size());
    for (const std::string& s : items) out.push_back(parse_scalar(s));
    return out;
}

Density density_from_arg(const RadialGrid& g, const std::string& text, double M) {
    if (text.rfind("file:", 0) == 0) {
        const std::string path = text.substr(5);
        std::ifstream is(path);
        if (!is) throw std::invalid_argument("cannot open density file: " + path);
        return read_density(is, g);
    }
    return make_test_density(g, parse_density_spec(text), M);
}

std::string keyvalue_line(const std::string& key, double value) {
    return key + "=" + format_float(value) + "\n";
}

// ---------------------------------------------------------------------------
// subcommand argument bundles

struct DeficitArgs {
    GridArgs grid;
    std::string out = "out";
    std::string density = "reference";
    std::string M = "1";
    std::vector<std::string> alphas{"0", "0.5", "1", "2"};
    std::string beta = "0";
    std::string eps = "1";
};

struct FlowArgs {
    GridArgs grid;
    std::string out = "out";
    std::string density = "gaussian:1";
    std::string M = "1";
    std::vector<std::string> alphas;
    std::string t_end = "1";
    std::string dt_init = "0";
    std::string cfl = "0.9";
    std::string floor = "0";
    int record_every = 10;
    long max_steps = 1000000;
    std::string scheme = "semi-implicit";
};

struct DdpArgs {
    GridArgs grid;
    std::string out = "out";
    std::string density = "gaussian:1";
    std::string M = "1";
    std::string beta = "1";
    std::string eps = "1";
    std::string t_end = "1";
    std::string dt_init = "0";
    std::string cfl = "0.9";
    int record_every = 10;
    long max_steps = 1000000;
    std::string concentration_factor = "1e6";
    bool allow_supercritical = false;
};

struct StationaryArgs {
    GridArgs grid;
    std::string out = "out";
    std::string M = "1";
    std::string beta = "1.5";
    std::string theta = "0.5";
    int max_iter = 500;
    std::string start;
};

struct SweepArgs {
    GridArgs grid;
    std::string out = "out";
    std::string density = "reference";
    std::string M = "8pi";
    std::string beta = "0";
    std::string eps = "-1";
    std::string lambda_geom = "1:2^-8";
};

struct DissipationArgs {
    GridArgs grid;
    std::string out = "out";
    std::string density = "gaussian:1";
    std::string M = "1";
    std::string alpha = "1";
};

struct DualArgs {
    GridArgs grid;
    std::string out = "out";
    int count = 10;
    unsigned long seed = 7;
    std::vector<std::string> alphas{"0", "0.5", "0.9"};
    std::string M = "1";
};

struct OracleArgs {
    GridArgs grid;
    std::string out = "out";
    std::string density = "reference";
    std::string patch_L = "20";
    int patch_n = 64;
};

struct ScenariosArgs {
    GridArgs grid;
    std::string out = "out";
    bool all = false;
    bool list = false;
    std::vector<std::string> names;
    int jobs = 1;
};

// ---------------------------------------------------------------------------
// subcommand implementations

int cmd_deficit(const DeficitArgs& a) {
    RadialGrid g = grid_from(a.grid);
    const double M = parse_scalar(a.M);
    Density f = density_from_arg(g, a.density, M);
    FunctionalReport rep =
        make_report(g, f, parse_scalar_list(a.alphas), parse_scalar(a.beta), parse_scalar(a.eps));
    const std::string csv = report_csv_header(rep) + "\n" + report_csv_row(rep) + "\n";
    emit(resolve_out_dir(a.out), "deficit.csv", csv);
    std::cout << csv;
    return 0;
}

FlowConfig flow_config_from(const std::string& t_end, const std::string& dt_init,
                            const std::string& cfl, int record_every, long max_steps) {
    FlowConfig cfg;
    cfg.t_end = parse_scalar(t_end);
    cfg.dt_init = parse_scalar(dt_init);
    cfg.cfl_safety = parse_scalar(cfl);
    cfg.record_every = record_every;
    cfg.max_steps = max_steps;
    return cfg;
}

int cmd_flow(const FlowArgs& a) {
    RadialGrid g = grid_from(a.grid);
    Density f0 = density_from_arg(g, a.density, parse_scalar(a.M));
    FlowConfig cfg = flow_config_from(a.t_end, a.dt_init, a.cfl, a.record_every, a.max_steps);
    cfg.floor = parse_scalar(a.floor);
    if (a.scheme == "semi-implicit")
        cfg.scheme = FlowScheme::semi_implicit;
    else if (a.scheme == "explicit")
        cfg.scheme = FlowScheme::explicit_euler;
    else
        throw std::invalid_argument("unknown scheme '" + a.scheme +
                                    "' (expected semi-implicit or explicit)");
    FlowTrace tr = run_proof_flow(g, f0, cfg, parse_scalar_list(a.alphas));
    emit(resolve_out_dir(a.out), "flow_trace.csv", trace_csv(tr));
    std::string summary;
    summary += keyvalue_line("steps", static_cast<double>(tr.steps));
    summary += keyvalue_line("rejections", static_cast<double>(tr.rejections));
    summary += keyvalue_line("t_final", tr.times.back());
    summary += keyvalue_line("final_deficit", tr.reports.back().deficits.front());
    summary += std::string("completed=") + (tr.completed ? "true" : "false") + "\n";
    std::cout << summary;
    return (tr.completed && !tr.blow_up) ? 0 : 2;
}

int cmd_ddp(const DdpArgs& a) {
    RadialGrid g = grid_from(a.grid);
    Density f0 = density_from_arg(g, a.density, parse_scalar(a.M));
    FlowConfig cfg = flow_config_from(a.t_end, a.dt_init, a.cfl, a.record_every, a.max_steps);
    cfg.concentration_factor = parse_scalar(a.concentration_factor);
    cfg.allow_supercritical = a.allow_supercritical;
    FlowTrace tr = run_ddp_flow(g, f0, parse_scalar(a.beta), parse_scalar(a.eps), cfg);
    emit(resolve_out_dir(a.out), "ddp_trace.csv", trace_csv(tr));
    std::string summary;
    summary += keyvalue_line("steps", static_cast<double>(tr.steps));
    summary += keyvalue_line("t_final", tr.times.back());
    summary += keyvalue_line("final_free_energy", tr.reports.back().free_energy);
    summary += std::string("completed=") + (tr.completed ? "true" : "false") + "\n";
    summary += std::string("blow_up=") + (tr.blow_up ? "true" : "false") + "\n";
    std::cout << summary;
    return (tr.completed && !tr.blow_up) ? 0 : 2;
}

int cmd_stationary(const StationaryArgs& a) {
    RadialGrid g = grid_from(a.grid);
    const double M = parse_scalar(a.M);
    const double beta = parse_scalar(a.beta);
    Density start;
    const Density* start_ptr = nullptr;
    if (!a.start.empty()) {
        start = density_from_arg(g, a.start, M);
        start_ptr = &start;
    }
    StationaryResult st =
        solve_stationary(g, M, beta, parse_scalar(a.theta), a.max_iter, start_ptr);
    const double gamma = beta - M / (8.0 * kPi);
    double j = std::numeric_limits<double>::quiet_NaN();
    if (gamma > 0.5) {
        ReferencePair ref = make_reference(g);
        std::vector<double> psi(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i)
            psi[static_cast<std::size_t>(i)] =
                (beta - gamma) * ref.V.values[static_cast<std::size_t>(i)] +
                st.phi_stat.values[static_cast<std::size_t>(i)];
        j = j_functional(g, psi, M, gamma);
    }
    const std::string block = stationary_keyvalue(st, j);
    const fs::path dir = resolve_out_dir(a.out);
    emit(dir, "stationary.txt", block);
    emit(dir, "f_stat.dat", density_to_string(g, st.f_stat));
    std::cout << block;
    return st.converged ? 0 : 2;
}

int cmd_sweep(const SweepArgs& a) {
    RadialGrid g = grid_from(a.grid);
    const double M = parse_scalar(a.M);
    const double eps = parse_scalar(a.eps);
    if (eps != -1.0)
        throw std::invalid_argument("sweep evaluates the attractive coupling; --eps must be -1");
    const double beta = parse_scalar(a.beta);
    const auto colon = a.lambda_geom.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--lambda-geom expects '<first>:<last>', e.g. 1:2^-8");
    const double first = parse_scalar(a.lambda_geom.substr(0, colon));
    const double last = parse_scalar(a.lambda_geom.substr(colon + 1));
    if (!(first > 0.0) || !(last > 0.0))
        throw std::invalid_argument("--lambda-geom endpoints must be positive");
    // Near-halving geometric ladder between the endpoints, inclusive.
    const int count =
        std::max(2, static_cast<int>(std::lround(std::abs(std::log2(first / last)))) + 1);
    std::vector<double> lambdas(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        lambdas[static_cast<std::size_t>(k)] =
            first * std::pow(last / first, static_cast<double>(k) / (count - 1));
    Density f = density_from_arg(g, a.density, M);
    const auto curve = scaling_curve(g, f, beta, lambdas);
    const double slope = fit_log_slope(curve);

    std::string csv = "lambda, free_energy\n";
    for (const auto& [lam, val] : curve)
        csv += format_float(lam) + ", " + format_float(val) + "\n";
    std::string block;
    block += keyvalue_line("M", M);
    block += keyvalue_line("beta", beta);
    block += keyvalue_line("slope", slope);
    block += keyvalue_line("predicted_slope", 2.0 * M * (M / (8.0 * kPi) - 1.0));
    const fs::path dir = resolve_out_dir(a.out);
    emit(dir, "sweep.csv", csv);
    emit(dir, "sweep.txt", block);
    std::cout << block;
    return 0;
}

int cmd_dissipation(const DissipationArgs& a) {
    RadialGrid g = grid_from(a.grid);
    const double M = parse_scalar(a.M);
    const double alpha = parse_scalar(a.alpha);
    Density f = density_from_arg(g, a.density, M);
    DissipationReport rep = dissipation(g, f, alpha);
    std::string block;
    block += keyvalue_line("M", M);
    block += keyvalue_line("alpha", alpha);
    block += keyvalue_line("gn_part", rep.gn_part);
    block += keyvalue_line("phi_part", rep.phi_part);
    block += keyvalue_line("total", rep.total);
    emit(resolve_out_dir(a.out), "dissipation.txt", block);
    std::cout << block;
    return 0;
}

int cmd_dual(const DualArgs& a) {
    RadialGrid g = grid_from(a.grid);
    const double M = parse_scalar(a.M);
    const std::vector<double> alphas = parse_scalar_list(a.alphas);
    std::mt19937_64 rng(a.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::string csv = "field, alpha, gap\n";
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < a.count; ++k) {
        const double c0 = normal(rng), c1 = normal(rng), c2 = normal(rng), c3 = normal(rng);
        std::vector<double> v(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) {
            const double r2 = g.r[i] * g.r[i];
            const double raw = c0 * std::exp(-r2 / (1.0 + c1 * c1)) +
                               0.3 * c2 * std::log1p(r2) / (1.0 + 0.1 * c3 * c3);
            v[static_cast<std::size_t>(i)] = std::clamp(raw, -20.0, 20.0);
        }
        for (double alpha : alphas) {
            const double gap = onofri_gap(g, v, alpha, M);
            min_gap = std::min(min_gap, gap);
            csv += std::to_string(k) + ", " + format_float(alpha) + ", " + format_float(gap) +
                   "\n";
        }
    }
    emit(resolve_out_dir(a.out), "dual.csv", csv);
    std::cout << keyvalue_line("min_gap", min_gap);
    return min_gap >= -1e-8 ? 0 : 2;
}

int cmd_oracle(const OracleArgs& a) {
    const double L = parse_scalar(a.patch_L);
    TestDensitySpec spec = parse_density_spec(a.density);
    std::function<double(double, double)> fn;
    bool radial_comparison = false;
    if (spec.kind == TestDensitySpec::Kind::reference) {
        fn = [](double x, double y) { return mu_of(std::hypot(x, y)); };
        radial_comparison = true;
    } else if (spec.kind == TestDensitySpec::Kind::gaussian) {
        const double s2 = spec.sigma * spec.sigma;
        fn = [s2](double x, double y) {
            return std::exp(-0.5 * (x * x + y * y) / s2) / (2.0 * kPi * s2);
        };
        radial_comparison = true;
    } else if (spec.kind == TestDensitySpec::Kind::translated) {
        const double y0 = spec.y;
        fn = [y0](double x, double y) {
            const double dx = x - y0;
            return std::exp(-0.5 * (dx * dx + y * y)) / (2.0 * kPi);
        };
    } else {
        throw std::invalid_argument(
            "oracle supports reference, gaussian:<sigma>, and translated:<y> densities");
    }
    CartesianPatch patch = make_cartesian_patch(L, a.patch_n, fn);
    const double cart = oracle_interaction_cartesian(patch);
    std::string block;
    block += keyvalue_line("patch_n", static_cast<double>(a.patch_n));
    block += keyvalue_line("patch_L", L);
    block += keyvalue_line("interaction_cartesian", cart);
    if (radial_comparison) {
        RadialGrid g = grid_from(a.grid);
        Density f = make_test_density(g, spec, 1.0);
        const double radial = interaction_integral(g, f);
        block += keyvalue_line("interaction_radial", radial);
        block += keyvalue_line("abs_diff", std::abs(cart - radial));
    }
    emit(resolve_out_dir(a.out), "oracle.txt", block);
    std::cout << block;
    return 0;
}

int cmd_scenarios(const ScenariosArgs& a) {
    const auto& registry = scenario_registry();
    if (a.list) {
        for (const ScenarioEntry& e : registry)
            std::cout << e.name << " - " << e.summary << "\n";
        return 0;
    }
    std::vector<const ScenarioEntry*> selected;
    if (a.all) {
        for (const ScenarioEntry& e : registry) selected.push_back(&e);
    } else {
        for (const std::string& name : a.names) {
            const ScenarioEntry* found = nullptr;
            for (const ScenarioEntry& e : registry)
                if (e.name == name) found = &e;
            if (found == nullptr) throw std::invalid_argument("unknown scenario: " + name);
            selected.push_back(found);
        }
    }
    if (selected.empty())
        throw std::invalid_argument("nothing to run: pass --all, --name <scenario>, or --list");

    GridSpec spec{a.grid.n, a.grid.r_max, a.grid.stretch};
    std::vector<ScenarioResult> results(selected.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= selected.size()) return;
            try {
                results[k] = selected[k]->run(spec);
            } catch (const std::exception& e) {
                ScenarioResult r;
                r.name = selected[k]->name;
                ScenarioCheck c;
                c.label = std::string("scenario threw: ") + e.what();
                c.mode = ScenarioCheck::Mode::boolean;
                c.provenance = "identity";
                c.pass = false;
                r.checks.push_back(std::move(c));
                r.passed = false;
                results[k] = std::move(r);
            }
        }
    };
    const int jobs = std::clamp(a.jobs, 1, 64);
    if (jobs == 1 || selected.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t nthreads = std::min<std::size_t>(jobs, selected.size());
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    const fs::path dir = resolve_out_dir(a.out);
    bool all_passed = true;
    int passed = 0;
    for (const ScenarioResult& r : results) {
        const std::string text = format_scenario_result(r);
        emit(dir, "scenario_" + r.name + ".txt", text);
        std::cout << text;
        all_passed = all_passed && r.passed;
        passed += r.passed ? 1 : 0;
    }
    std::cout << "scenarios passed: " << passed << "/" << results.size() << "\n";
    return all_passed ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"numerical laboratory for the generalized logarithmic HLS inequality,\n"
                 "its entropy flows, and the drift-diffusion-Poisson free energy"};
    app.name("loghls");
    app.require_subcommand(0, 1);

    DeficitArgs da;
    CLI::App* deficit = app.add_subcommand("deficit", "functional report of one density");
    deficit->add_option("--density", da.density, "density spec")->capture_default_str();
    deficit->add_option("--M", da.M, "total mass (accepts e.g. 8pi)")->capture_default_str();
    deficit->add_option("--alpha", da.alphas, "deficit evaluation points")
        ->delimiter(',')
        ->capture_default_str();
    deficit->add_option("--beta", da.beta, "free-energy potential coupling")
        ->capture_default_str();
    deficit->add_option("--eps", da.eps, "free-energy interaction sign (+1 or -1)")
        ->capture_default_str();
    add_grid_options(deficit, da.grid);
    add_output_options(deficit, da.out);

    FlowArgs fa;
    CLI::App* flow = app.add_subcommand("flow", "rescaled nonlinear diffusion flow");
    flow->add_option("--density", fa.density, "initial density spec")->capture_default_str();
    flow->add_option("--M", fa.M, "total mass")->capture_default_str();
    flow->add_option("--alpha", fa.alphas, "deficit columns (first drives dissipation)")
        ->delimiter(',');
    flow->add_option("--t-end", fa.t_end, "integration horizon")->capture_default_str();
    flow->add_option("--dt-init", fa.dt_init, "initial step (0 = automatic)")
        ->capture_default_str();
    flow->add_option("--cfl", fa.cfl, "fraction of the drift CFL bound")->capture_default_str();
    flow->add_option("--floor", fa.floor, "mobility floor (0 = automatic)")
        ->capture_default_str();
    flow->add_option("--record-every", fa.record_every, "record stride in steps")
        ->capture_default_str();
    flow->add_option("--max-steps", fa.max_steps, "step budget")->capture_default_str();
    flow->add_option("--scheme", fa.scheme, "semi-implicit or explicit")->capture_default_str();
    add_grid_options(flow, fa.grid);
    add_output_options(flow, fa.out);

    DdpArgs dda;
    CLI::App* ddp = app.add_subcommand("ddp", "drift-diffusion-Poisson flow");
    ddp->add_option("--density", dda.density, "initial density spec")->capture_default_str();
    ddp->add_option("--M", dda.M, "total mass")->capture_default_str();
    ddp->add_option("--beta", dda.beta, "confinement coupling")->capture_default_str();
    ddp->add_option("--eps", dda.eps, "+1 repulsive, -1 attractive")->capture_default_str();
    ddp->add_option("--t-end", dda.t_end, "integration horizon")->capture_default_str();
    ddp->add_option("--dt-init", dda.dt_init, "initial step (0 = automatic)")
        ->capture_default_str();
    ddp->add_option("--cfl", dda.cfl, "fraction of the drift CFL bound")->capture_default_str();
    ddp->add_option("--record-every", dda.record_every, "record stride in steps")
        ->capture_default_str();
    ddp->add_option("--max-steps", dda.max_steps, "step budget")->capture_default_str();
    ddp->add_option("--concentration-factor", dda.concentration_factor,
                    "blow-up guard on max f growth")
        ->capture_default_str();
    ddp->add_flag("--allow-supercritical", dda.allow_supercritical,
                  "permit eps=-1 with M >= 8pi");
    add_grid_options(ddp, dda.grid);
    add_output_options(ddp, dda.out);

    StationaryArgs sa;
    CLI::App* stationary =
        app.add_subcommand("stationary", "self-consistent repulsive stationary state");
    stationary->add_option("--M", sa.M, "total mass")->capture_default_str();
    stationary->add_option("--beta", sa.beta, "confinement coupling")->capture_default_str();
    stationary->add_option("--theta", sa.theta, "Picard damping in (0, 1]")
        ->capture_default_str();
    stationary->add_option("--max-iter", sa.max_iter, "iteration budget")->capture_default_str();
    stationary->add_option("--start", sa.start, "optional starting density spec");
    add_grid_options(stationary, sa.grid);
    add_output_options(stationary, sa.out);

    SweepArgs swa;
    CLI::App* sweep = app.add_subcommand("sweep", "free energy along the dilation family");
    sweep->add_option("--density", swa.density, "density spec to dilate")->capture_default_str();
    sweep->add_option("--M", swa.M, "total mass (accepts e.g. 16pi)")->capture_default_str();
    sweep->add_option("--beta", swa.beta, "confinement coupling")->capture_default_str();
    sweep->add_option("--eps", swa.eps, "interaction sign (attractive sweep: -1)")
        ->capture_default_str();
    sweep->add_option("--lambda-geom", swa.lambda_geom,
                      "geometric lambda ladder '<first>:<last>'")
        ->capture_default_str();
    add_grid_options(sweep, swa.grid);
    add_output_options(sweep, swa.out);

    DissipationArgs dia;
    CLI::App* dissip =
        app.add_subcommand("dissipation", "analytic dissipation split at one density");
    dissip->add_option("--density", dia.density, "density spec")->capture_default_str();
    dissip->add_option("--M", dia.M, "total mass")->capture_default_str();
    dissip->add_option("--alpha", dia.alpha, "deficit parameter")->capture_default_str();
    add_grid_options(dissip, dia.grid);
    add_output_options(dissip, dia.out);

    DualArgs dua;
    CLI::App* dual = app.add_subcommand("dual", "dual-form gap on random bounded fields");
    dual->add_option("--count", dua.count, "number of random fields")->capture_default_str();
    dual->add_option("--seed", dua.seed, "RNG seed")->capture_default_str();
    dual->add_option("--alpha", dua.alphas, "gap parameters in [0, 1)")
        ->delimiter(',')
        ->capture_default_str();
    dual->add_option("--M", dua.M, "mass factor")->capture_default_str();
    add_grid_options(dual, dua.grid);
    add_output_options(dual, dua.out);

    OracleArgs oa;
    CLI::App* oracle =
        app.add_subcommand("oracle", "direct Cartesian double-sum interaction oracle");
    oracle->add_option("--density", oa.density,
                       "reference, gaussian:<sigma>, or translated:<y>")
        ->capture_default_str();
    oracle->add_option("--patch-L", oa.patch_L, "patch half-width")->capture_default_str();
    oracle->add_option("--patch-n", oa.patch_n, "patch cells per side (<= 128)")
        ->capture_default_str();
    add_grid_options(oracle, oa.grid);
    add_output_options(oracle, oa.out);

    ScenariosArgs sca;
    CLI::App* scenarios = app.add_subcommand("scenarios", "acceptance scenario registry");
    scenarios->add_flag("--all", sca.all, "run every scenario");
    scenarios->add_flag("--list", sca.list, "list scenario names and exit");
    scenarios->add_option("--name", sca.names, "scenario to run (repeatable)")->delimiter(',');
    scenarios->add_option("--jobs", sca.jobs, "concurrent scenarios")->capture_default_str();
    add_grid_options(scenarios, sca.grid);
    add_output_options(scenarios, sca.out);

    std::vector<std::string> expanded;
    try {
        expanded = expand_config_args(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*deficit) return cmd_deficit(da);
        if (*flow) return cmd_flow(fa);
        if (*ddp) return cmd_ddp(dda);
        if (*stationary) return cmd_stationary(sa);
        if (*sweep) return cmd_sweep(swa);
        if (*dissip) return cmd_dissipation(dia);
        if (*dual) return cmd_dual(dua);
        if (*oracle) return cmd_oracle(oa);
        if (*scenarios) return cmd_scenarios(sca);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 1;
}

}  // namespace loghls
