#include <filesystem>
#include <atomic>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hyst/version.hpp"
#include "scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Preisach hysteresis simulation and loop-analysis toolkit"};
    app.require_subcommand(1);

    std::vector<std::string> paths;
    std::string out_dir;
    int jobs = 1;
    auto* run = app.add_subcommand("run", "run scenario files");
    run->add_option("scenarios", paths, "scenario JSON files")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory (default: <scenario>_out next to the file)");
    run->add_option("--jobs", jobs, "run scenario files in parallel")->check(CLI::PositiveNumber);

    auto* lsb = app.add_subcommand("list-builtins", "list builtin weighting functions and named interfaces");
    auto* ver = app.add_subcommand("version", "print version");

    CLI11_PARSE(app, argc, argv);

    if (ver->parsed()) {
        std::printf("hyst %s\n", hyst::kVersion);
        return 0;
    }
    if (lsb->parsed()) {
        hyst::cli::print_builtins();
        return 0;
    }

    // one scenario per worker; each run writes only into its own output dir
    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= paths.size()) return;
            std::string out = out_dir;
            if (!out.empty() && paths.size() > 1) {
                const auto stem = std::filesystem::path(paths[i]).stem().string();
                out = (std::filesystem::path(out_dir) / stem).string();
            }
            const int rc = hyst::cli::run_scenario(paths[i], out);
            int cur = worst.load();
            while (rc > cur && !worst.compare_exchange_weak(cur, rc)) {
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(paths.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return worst.load();
}
