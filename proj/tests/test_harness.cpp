#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loghls/cli.hpp"
#include "loghls/scenarios.hpp"

using namespace loghls;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286;

/** Redirect a std stream into a buffer for the lifetime of the object. */
class Capture {
  public:
    explicit Capture(std::ostream& os) : os_(os), old_(os.rdbuf(buf_.rdbuf())) {}
    ~Capture() { os_.rdbuf(old_); }
    std::string str() const { return buf_.str(); }

  private:
    std::ostream& os_;
    std::stringstream buf_;
    std::streambuf* old_;
};

/** Run the CLI with both standard streams captured. */
struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    CliRun r;
    {
        Capture out(std::cout);
        Capture err(std::cerr);
        r.exit_code = run_cli(args);
        r.out = out.str();
        r.err = err.str();
    }
    return r;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "loghls_harness" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(static_cast<bool>(is));
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/** Value of a named column in the first data row of a two-line CSV. */
double csv_value(const std::string& text, const std::string& column) {
    std::stringstream ss(text);
    std::string header, row;
    REQUIRE(std::getline(ss, header));
    REQUIRE(std::getline(ss, row));
    const auto names = split_csv(header);
    const auto vals = split_csv(row);
    REQUIRE(names.size() == vals.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == column) return std::stod(vals[i]);
    FAIL("column not found: ", column);
    return 0.0;
}

std::map<std::string, std::string> parse_keyvalue(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

/** Scoped environment variable override. */
class EnvGuard {
  public:
    EnvGuard(const char* name, const std::string& value) : name_(name) {
        const char* old = std::getenv(name);
        if (old != nullptr) {
            had_ = true;
            old_ = old;
        }
        ::setenv(name, value.c_str(), 1);
    }
    ~EnvGuard() {
        if (had_)
            ::setenv(name_, old_.c_str(), 1);
        else
            ::unsetenv(name_);
    }

  private:
    const char* name_;
    bool had_ = false;
    std::string old_;
};
}  // namespace

TEST_CASE("scalar parsing accepts pi multiples and power notation") {
    CHECK(parse_scalar("1.5") == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(parse_scalar("-0.5") == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(parse_scalar("1e-3") == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(parse_scalar("pi") == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(parse_scalar("-pi") == doctest::Approx(-kPi).epsilon(1e-15));
    CHECK(parse_scalar("+pi") == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(parse_scalar("16pi") == doctest::Approx(16.0 * kPi).epsilon(1e-15));
    CHECK(parse_scalar("2^-8") == doctest::Approx(1.0 / 256.0).epsilon(1e-15));
    CHECK(parse_scalar("2^0.5") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(parse_scalar("2^2^2") == doctest::Approx(16.0).epsilon(1e-15));  // right assoc
    CHECK(parse_scalar("  3 ") == doctest::Approx(3.0).epsilon(1e-15));

    CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("2^"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("16 pi"), std::invalid_argument);
}

TEST_CASE("density spec parsing covers the named families") {
    CHECK(parse_density_spec("reference").kind == TestDensitySpec::Kind::reference);
    CHECK(parse_density_spec("mu").kind == TestDensitySpec::Kind::reference);
    TestDensitySpec gauss = parse_density_spec("gaussian:0.5");
    CHECK(gauss.kind == TestDensitySpec::Kind::gaussian);
    CHECK(gauss.sigma == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(parse_density_spec("gaussian").sigma == doctest::Approx(1.0).epsilon(1e-15));
    TestDensitySpec dil = parse_density_spec("dilated:2^-1");
    CHECK(dil.kind == TestDensitySpec::Kind::dilated_reference);
    CHECK(dil.lambda == doctest::Approx(0.5).epsilon(1e-15));
    TestDensitySpec bump = parse_density_spec("bump:0.5,2.5");
    CHECK(bump.kind == TestDensitySpec::Kind::bump);
    CHECK(bump.a == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bump.b == doctest::Approx(2.5).epsilon(1e-15));
    TestDensitySpec tr = parse_density_spec("translated:5");
    CHECK(tr.kind == TestDensitySpec::Kind::translated);
    CHECK(tr.y == doctest::Approx(5.0).epsilon(1e-15));

    CHECK_THROWS_AS(parse_density_spec("ring"), std::invalid_argument);
    CHECK_THROWS_AS(parse_density_spec("reference:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_density_spec("bump:1"), std::invalid_argument);
}

TEST_CASE("deficit subcommand reports the gaussian closed form deterministically") {
    const fs::path dir = fresh_dir("deficit");
    CliRun r1 = run({"deficit", "--density", "gaussian:1", "--alpha", "0,1", "--out",
                     dir.string()});
    CHECK(r1.exit_code == 0);
    const std::string csv = read_file(dir / "deficit.csv");
    CHECK(r1.out == csv);
    CHECK(std::abs(csv_value(csv, "M") - 1.0) < 1e-8);
    CHECK(std::abs(csv_value(csv, "deficit@0") - (std::log(2.0) - kEulerGamma)) < 2e-6);

    const fs::path dir2 = fresh_dir("deficit_repeat");
    CliRun r2 = run({"deficit", "--density", "gaussian:1", "--alpha", "0,1", "--out",
                     dir2.string()});
    CHECK(r2.exit_code == 0);
    CHECK(read_file(dir2 / "deficit.csv") == csv);  // byte-identical rerun
}

TEST_CASE("json config files feed options and lose to explicit flags") {
    const fs::path dir = fresh_dir("config");
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream os(cfg);
        os << "{\"M\": 2, \"density\": \"gaussian:1\"}\n";
    }
    CliRun from_cfg = run({"deficit", "--config", cfg.string(), "--out", dir.string()});
    CHECK(from_cfg.exit_code == 0);
    CHECK(std::abs(csv_value(from_cfg.out, "M") - 2.0) < 1e-8);

    CliRun overridden =
        run({"deficit", "--config", cfg.string(), "--M", "3", "--out", dir.string()});
    CHECK(overridden.exit_code == 0);
    CHECK(std::abs(csv_value(overridden.out, "M") - 3.0) < 1e-8);

    const fs::path broken = dir / "broken.json";
    {
        std::ofstream os(broken);
        os << "{not json";
    }
    CliRun bad = run({"deficit", "--config", broken.string(), "--out", dir.string()});
    CHECK(bad.exit_code == 1);
}

TEST_CASE("LOGHLS_OUT overrides the --out flag") {
    const fs::path flag_dir = fresh_dir("out_flag");
    const fs::path env_dir = fresh_dir("out_env");
    {
        EnvGuard guard("LOGHLS_OUT", env_dir.string());
        CliRun r = run({"deficit", "--out", flag_dir.string()});
        CHECK(r.exit_code == 0);
        CHECK(fs::exists(env_dir / "deficit.csv"));
        CHECK(!fs::exists(flag_dir / "deficit.csv"));
    }
    CliRun r = run({"deficit", "--out", flag_dir.string()});
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(flag_dir / "deficit.csv"));
}

TEST_CASE("exit codes distinguish usage errors from failed runs") {
    CHECK(run({"bogus"}).exit_code == 1);
    CHECK(run({"deficit", "--no-such-flag"}).exit_code == 1);
    CHECK(run({"deficit", "--M", "abc"}).exit_code == 1);
    CHECK(run({}).exit_code == 1);
    CHECK(run({"--help"}).exit_code == 0);
    CHECK(run({"deficit", "--help"}).exit_code == 0);
    CHECK(run({"scenarios"}).exit_code == 1);  // nothing selected
    CHECK(run({"scenarios", "--name", "bogus"}).exit_code == 1);
    CHECK(run({"sweep", "--eps", "1"}).exit_code == 1);  // attractive only
    CHECK(run({"oracle", "--density", "bump:0.5,2.5"}).exit_code == 1);
}

TEST_CASE("sweep recovers the predicted dilation slope at mass 16 pi") {
    const fs::path dir = fresh_dir("sweep");
    CliRun r = run({"sweep", "--density", "gaussian:1", "--M", "16pi", "--beta", "0", "--eps",
                    "-1", "--lambda-geom", "1:2^-8", "--out", dir.string()});
    CHECK(r.exit_code == 0);
    auto kv = parse_keyvalue(read_file(dir / "sweep.txt"));
    const double slope = std::stod(kv.at("slope"));
    const double predicted = std::stod(kv.at("predicted_slope"));
    CHECK(predicted == doctest::Approx(32.0 * kPi).epsilon(1e-12));
    CHECK(slope == doctest::Approx(predicted).epsilon(0.05));

    const std::string csv = read_file(dir / "sweep.csv");
    std::stringstream ss(csv);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 1 + 9);  // header + the 2^0..2^-8 ladder
}

TEST_CASE("cartesian oracle corroborates the radial interaction") {
    const fs::path dir = fresh_dir("oracle");
    CliRun r = run({"oracle", "--density", "gaussian:1", "--patch-n", "48", "--patch-L", "20",
                    "--out", dir.string()});
    CHECK(r.exit_code == 0);
    auto kv = parse_keyvalue(read_file(dir / "oracle.txt"));
    CHECK(std::stod(kv.at("abs_diff")) < 0.03);
    CHECK(std::stod(kv.at("interaction_radial")) ==
          doctest::Approx(std::log(2.0) - 0.5 * kEulerGamma).epsilon(1e-6));

    // translation invariance of the double integral, seen by the oracle alone
    CliRun centered = run({"oracle", "--density", "translated:0", "--patch-n", "64",
                           "--patch-L", "20", "--out", dir.string()});
    auto kv0 = parse_keyvalue(read_file(dir / "oracle.txt"));
    CliRun shifted = run({"oracle", "--density", "translated:5", "--patch-n", "64", "--patch-L",
                          "20", "--out", dir.string()});
    auto kv5 = parse_keyvalue(read_file(dir / "oracle.txt"));
    CHECK(centered.exit_code == 0);
    CHECK(shifted.exit_code == 0);
    CHECK(std::abs(std::stod(kv5.at("interaction_cartesian")) -
                   std::stod(kv0.at("interaction_cartesian"))) < 1e-2);
}

TEST_CASE("stationary artifacts round-trip through the density file format") {
    const fs::path dir = fresh_dir("stationary");
    CliRun r = run({"stationary", "--M", "1e-6", "--beta", "2", "--grid-n", "512", "--out",
                    dir.string()});
    CHECK(r.exit_code == 0);
    auto kv = parse_keyvalue(read_file(dir / "stationary.txt"));
    CHECK(kv.at("converged") == "1");
    CHECK(kv.at("subcritical_regime") == "1");
    CHECK(std::abs(std::stod(kv.at("mass")) - 1e-6) < 1e-15);
    CHECK(std::isfinite(std::stod(kv.at("J"))));

    const fs::path dat = dir / "f_stat.dat";
    REQUIRE(fs::exists(dat));
    CliRun back = run({"deficit", "--density", "file:" + dat.string(), "--grid-n", "512",
                       "--out", dir.string()});
    CHECK(back.exit_code == 0);
    CHECK(std::abs(csv_value(back.out, "M") - 1e-6) < 1e-12);

    // node count mismatch between the file and the grid is refused
    CliRun mismatch = run({"deficit", "--density", "file:" + dat.string(), "--grid-n", "256",
                           "--out", dir.string()});
    CHECK(mismatch.exit_code == 1);
}

TEST_CASE("flow subcommand writes a well-formed trace") {
    const fs::path dir = fresh_dir("flow");
    CliRun r = run({"flow", "--density", "gaussian:1", "--grid-n", "256", "--grid-rmax", "50",
                    "--t-end", "0.01", "--record-every", "5", "--out", dir.string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("completed=true") != std::string::npos);
    const std::string csv = read_file(dir / "flow_trace.csv");
    CHECK(csv.rfind("t, mass, entropy, potential, interaction, deficit@1, free_energy, "
                    "gn_part, phi_part, dFdt_fd\n",
                    0) == 0);

    CliRun bad_scheme = run({"flow", "--scheme", "rk4", "--out", dir.string()});
    CHECK(bad_scheme.exit_code == 1);
}

TEST_CASE("ddp subcommand enforces the supercritical opt-in") {
    const fs::path dir = fresh_dir("ddp");
    CliRun ok = run({"ddp", "--density", "gaussian:1", "--beta", "1", "--eps", "1", "--grid-n",
                     "256", "--grid-rmax", "50", "--t-end", "0.01", "--out", dir.string()});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("completed=true") != std::string::npos);
    const std::string csv = read_file(dir / "ddp_trace.csv");
    CHECK(csv.rfind("t, mass, entropy", 0) == 0);

    CliRun refused = run({"ddp", "--eps", "-1", "--M", "16pi", "--grid-n", "256", "--grid-rmax",
                          "50", "--t-end", "0.01", "--out", dir.string()});
    CHECK(refused.exit_code == 1);

    CliRun guarded =
        run({"ddp", "--eps", "-1", "--M", "16pi", "--allow-supercritical",
             "--concentration-factor", "0.5", "--grid-n", "256", "--grid-rmax", "50", "--t-end",
             "0.01", "--out", dir.string()});
    CHECK(guarded.exit_code == 2);
    CHECK(guarded.out.find("blow_up=true") != std::string::npos);
}

TEST_CASE("dual subcommand is deterministic under a fixed seed") {
    const fs::path dir1 = fresh_dir("dual1");
    const fs::path dir2 = fresh_dir("dual2");
    const std::vector<std::string> base = {"dual",     "--count", "3",   "--seed",
                                           "11",       "--alpha", "0,0.5", "--grid-n",
                                           "256"};
    auto with_out = [&](const fs::path& d) {
        std::vector<std::string> args = base;
        args.push_back("--out");
        args.push_back(d.string());
        return args;
    };
    CliRun r1 = run(with_out(dir1));
    CliRun r2 = run(with_out(dir2));
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    const std::string csv1 = read_file(dir1 / "dual.csv");
    CHECK(csv1 == read_file(dir2 / "dual.csv"));

    std::stringstream ss(csv1);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 1 + 3 * 2);

    auto kv = parse_keyvalue(r1.out);
    CHECK(std::stod(kv.at("min_gap")) >= -1e-8);
}

TEST_CASE("scenario listing matches the registry") {
    CliRun r = run({"scenarios", "--list"});
    CHECK(r.exit_code == 0);
    const auto& registry = scenario_registry();
    std::stringstream ss(r.out);
    std::string line;
    std::size_t k = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        REQUIRE(k < registry.size());
        CHECK(line.rfind(registry[k].name + " - ", 0) == 0);
        ++k;
    }
    CHECK(k == registry.size());
    CHECK(k == 12);
}
