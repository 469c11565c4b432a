#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "baresim/cli.hpp"

namespace {

unsigned default_workers() {
    if (const char* e = std::getenv("BARESIM_WORKERS")) {
        try {
            long v = std::stol(e);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return 1;
}

int emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream f(out);
    if (!f) {
        std::cerr << "error: cannot write '" << out << "'\n";
        return 3;
    }
    f << text << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    using namespace baresim;
    CLI::App app{"baresim: bare-simulation estimates of constrained divergence optima"};
    app.require_subcommand(1);

    std::string config, out;
    unsigned workers = default_workers();
    std::uint64_t seed_override = 0;
    auto* est = app.add_subcommand("estimate", "run an estimator from a JSON config");
    est->add_option("--config", config, "JSON config file")->required();
    est->add_option("--out", out, "output path (stdout if omitted)");
    est->add_option("--workers", workers, "worker threads (default from BARESIM_WORKERS or 1)")->check(CLI::PositiveNumber);
    auto* so = est->add_option("--seed-override", seed_override, "replace the config seed");

    std::string oconfig, oout;
    auto* orc = app.add_subcommand("oracle", "brute-force grid reference for the same config");
    orc->add_option("--config", oconfig, "JSON config file")->required();
    orc->add_option("--out", oout, "output path");

    std::vector<std::string> suites;
    std::string cout_path;
    auto* chk = app.add_subcommand("check", "run built-in property suites");
    chk->add_option("--suite", suites, "legendre, transforms, bounds, coincide, oracle (default all)");
    chk->add_option("--out", cout_path, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*est) {
            auto rc = cli::load_config(config);
            if (*so) rc.request.seed = seed_override;
            std::cerr << "warning: estimates assume cl(Omega) = cl(int Omega); a degenerate constraint set voids the limit theorems\n";
            auto j = cli::run_estimate(rc, workers);
            return emit(j.dump(2), out);
        }
        if (*orc) {
            auto rc = cli::load_config(oconfig);
            return emit(cli::run_oracle(rc).dump(2), oout);
        }
        if (*chk) {
            if (suites.empty()) suites = {"legendre", "transforms", "bounds", "coincide", "oracle"};
            auto j = cli::run_check(suites);
            bool ok = true;
            for (const auto& e : j) ok = ok && e.at("pass").get<bool>();
            int rc = emit(j.dump(2), cout_path);
            return rc != 0 ? rc : (ok ? 0 : 1);
        }
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
