// Command-line front end: one subcommand per experiment, JSON summary on
// stdout, optional JSON + CSV files via --out.
//
// Exit status: 0 all checks passed, 1 some check failed, 2 usage or domain
// error, 3 unexpected failure.

#include <CLI11.hpp>
#include <iostream>
#include <thread>

#include "koblitz/harness.hpp"
#include "koblitz/num_core.hpp"

namespace {

using koblitz::ExperimentConfig;
using koblitz::Report;

template <class T>
void optional_flag(CLI::App& app, const std::string& name, std::optional<T>& target, const std::string& help) {
    app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptic-curve twin-prime constants, censuses and desk-scale experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    ExperimentConfig cfg;
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    std::string cache_dir, out;
    optional_flag(app, "--pmax", cfg.pmax, "largest prime p");
    optional_flag(app, "--x", cfg.x, "upper limit x");
    optional_flag(app, "--A", cfg.A, "half-width of the a range");
    optional_flag(app, "--B", cfg.B, "half-width of the b range");
    optional_flag(app, "--R", cfg.R, "largest |r|");
    optional_flag(app, "--Q", cfg.Q, "largest modulus q");
    optional_flag(app, "--X", cfg.X, "window start X");
    optional_flag(app, "--Y", cfg.Y, "window length Y");
    optional_flag(app, "--L", cfg.L, "Euler product truncation");
    optional_flag(app, "--U", cfg.U, "oracle n-truncation");
    optional_flag(app, "--V", cfg.V, "oracle f-truncation");
    optional_flag(app, "--r", cfg.r, "trace r");
    app.add_option("--cache-dir", cache_dir, "census cache directory (default $" + std::string(koblitz::kCacheEnv) + ")");
    app.add_option("--out", out, "write <out>.json and <out>.csv");
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--suite", cfg.suite, "verify suite: deuring, constants, series, characters, all");

    using Runner = Report (*)(const ExperimentConfig&);
    const std::vector<std::tuple<std::string, std::string, Runner>> commands = {
        {"constants", "average constant and GL2 local factors", koblitz::run_constants},
        {"census", "trace census of every curve mod p for 5 <= p <= pmax", koblitz::run_census},
        {"deuring", "census against (p-1)H(r^2-4p) for 5 <= p <= pmax", koblitz::run_deuring},
        {"theorem1", "average twin count over a box of curves", koblitz::run_theorem1},
        {"theorem2", "sum of prime-order curve counts up to pmax", koblitz::run_theorem2},
        {"bdh", "twin-prime variance over residue classes", koblitz::run_bdh},
        {"cr", "C_r closed form against the truncated triple sum", koblitz::run_cr},
        {"verify", "module verification suites", koblitz::run_verify},
    };
    for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.cache_dir = cache_dir.empty() ? koblitz::default_cache_dir() : std::filesystem::path(cache_dir);
        cfg.out = out;
        cfg.validate();
        const std::string name = app.get_subcommands().front()->get_name();
        Report report;
        for (const auto& [cmd, help, fn] : commands)
            if (cmd == name) report = fn(cfg);
        if (name == "constants")
            std::cout << report.summary.dump(2) << '\n';
        else
            std::cout << report.to_json().dump(2) << '\n';
        if (!cfg.out.empty()) report.write(cfg.out);
        for (const auto& c : report.checks)
            if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
        return report.passed() ? 0 : 1;
    } catch (const koblitz::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const koblitz::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const koblitz::CapacityError& e) {
        std::cerr << "over budget: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
