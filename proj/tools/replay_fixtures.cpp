// Replays every golden fixture in a manifest and reports the first divergent
// cell of each failure.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "fdassoc/cli/fixtures.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Replay golden fixtures"};
    std::string manifest;
    std::string only;
    bool regenerate = false;
    double scale = 1.0;
    app.add_option("--manifest", manifest, "Fixture manifest")->required()->check(CLI::ExistingFile);
    app.add_option("--only", only, "Replay a single fixture by name");
    app.add_flag("--regenerate", regenerate, "Rewrite the golden tables");
    app.add_option("--tolerance-scale", scale, "Multiply every tolerance")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        const std::string root = std::filesystem::path(manifest).parent_path().string();
        int failures = 0;
        int ran = 0;
        for (const auto& f : fdassoc::cli::load_manifest(manifest)) {
            if (!only.empty() && f.name != only) continue;
            ++ran;
            const auto outcome = fdassoc::cli::replay_fixture(f, root.empty() ? "." : root, regenerate, scale);
            std::cout << (outcome.pass ? "PASS " : "FAIL ") << f.name;
            if (!outcome.detail.empty()) std::cout << ": " << outcome.detail;
            std::cout << '\n';
            if (!outcome.pass) ++failures;
        }
        if (ran == 0) {
            std::cerr << "no fixtures matched\n";
            return 2;
        }
        std::cout << ran - failures << "/" << ran << " fixtures passed\n";
        return failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
