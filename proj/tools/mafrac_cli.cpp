#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mafrac/config.hpp"
#include "mafrac/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"section geometry and fractional operator experiment driver"};

    std::string config_path, out_dir, suite_list;
    unsigned long long seed = 0;
    bool list_suites = false;
    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--out", out_dir, "output directory (overrides run.out)");
    app.add_option("--suite", suite_list, "comma list of suites (overrides run.suites)");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides run.seed)");
    app.add_flag("--list-suites", list_suites, "print the available suites and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_suites) {
        for (const auto& name : mafrac::suite_names()) std::printf("%s\n", name.c_str());
        return 0;
    }

    mafrac::ExperimentConfig cfg;
    if (!config_path.empty()) {
        try {
            cfg = mafrac::parse_config_file(config_path);
        } catch (const mafrac::ConfigError& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 2;
        }
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!suite_list.empty()) {
        cfg.suites.clear();
        size_t start = 0;
        while (start <= suite_list.size()) {
            size_t comma = suite_list.find(',', start);
            if (comma == std::string::npos) comma = suite_list.size();
            std::string item = suite_list.substr(start, comma - start);
            if (!item.empty()) cfg.suites.push_back(item);
            start = comma + 1;
        }
    }
    if (seed_opt->count() > 0) cfg.seed = seed;

    try {
        return mafrac::run_experiment(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}
