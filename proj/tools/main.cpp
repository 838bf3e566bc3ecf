#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "nbb/bench.hpp"
#include "nbb/errors.hpp"
#include "nbb/maps.hpp"
#include "nbb/oracle.hpp"
#include "nbb/pbm.hpp"
#include "nbb/stencil.hpp"

namespace {

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw nbb::ParseError("expected x,y but got '" + text + "'");
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
}

std::vector<int> parse_levels(const std::string& text) {
    const auto dots = text.find("..");
    std::vector<int> levels;
    if (dots == std::string::npos) {
        levels.push_back(std::stoi(text));
        return levels;
    }
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (a > b)
        throw nbb::ParseError("level range '" + text + "' is empty");
    for (int r = a; r <= b; ++r)
        levels.push_back(r);
    return levels;
}

int cmd_info(const std::string& fractal, int level) {
    const auto desc = nbb::load_descriptor(fractal);
    desc.validate();
    std::cout << "name=" << desc.name << "\n"
              << "k=" << desc.replica_count << "\n"
              << "s=" << desc.growth << "\n"
              << "level=" << level << "\n"
              << "n=" << nbb::side_length(desc, level) << "\n"
              << "cells=" << nbb::cell_count(desc, level) << "\n";
    const auto [w, h] = nbb::compact_dims(desc, level);
    std::cout << "compact_dims=" << w << "x" << h << "\n";
    std::printf("hausdorff=%.4f\n", nbb::hausdorff_dimension(desc));
    std::printf("compression=%.4f\n",
                nbb::compression_factor(desc, level, nbb::Layout::LinearCompact));
    return 0;
}

int cmd_map(const std::string& fractal, int level, const std::string& to_compact,
            const std::string& to_embedded) {
    const auto desc = nbb::load_descriptor(fractal);
    if (!to_compact.empty()) {
        const auto [x, y] = parse_pair(to_compact);
        const auto c = nbb::to_compact(desc, level, {x, y});
        std::cout << c.cx << "," << c.cy << "\n";
    } else {
        const auto [cx, cy] = parse_pair(to_embedded);
        const auto e = nbb::to_embedded(desc, level, {cx, cy});
        std::cout << e.x << "," << e.y << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& fractal, int level, bool stencil,
               std::int64_t steps, std::uint64_t seed, const std::string& rule,
               double density) {
    const auto desc = nbb::load_descriptor(fractal);
    bool ok = true;
    const auto maps_report = nbb::verify_maps(desc, level);
    std::cout << "maps: " << maps_report.summary() << "\n";
    for (const auto& v : maps_report.violations)
        std::cout << "  " << v << "\n";
    ok = ok && maps_report.pass;
    if (stencil) {
        const auto stencil_report = nbb::verify_stencil(
            desc, level, nbb::StencilRule::parse(rule), seed, density, steps);
        std::cout << "stencil: " << stencil_report.summary() << "\n";
        for (const auto& v : stencil_report.violations)
            std::cout << "  " << v << "\n";
        ok = ok && stencil_report.pass;
    }
    return ok ? 0 : 1;
}

int cmd_simulate(const std::string& fractal, int level,
                 const std::string& backend, const std::string& rule,
                 std::int64_t steps, std::uint64_t seed, double density,
                 int block_size, int workers, bool neighbor_table,
                 std::uint64_t mem_cap, const std::string& out_dir,
                 const std::string& format, std::int64_t every) {
    const auto desc = nbb::load_descriptor(fractal);
    nbb::SimOptions options;
    options.block_size = block_size;
    options.workers = workers;
    options.neighbor_table = neighbor_table;
    options.memory_cap = mem_cap;
    nbb::Simulation sim(desc, level, nbb::parse_backend(backend), options);
    sim.seed_random(seed, density);

    const bool export_frames = !out_dir.empty();
    if (export_frames) {
        if (format != "pbm")
            throw nbb::ParseError("unknown frame format '" + format + "'");
        std::filesystem::create_directories(out_dir);
    }
    auto frame_path = [&](std::int64_t it) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06lld.pbm",
                      static_cast<long long>(it));
        return (std::filesystem::path(out_dir) / name).string();
    };
    if (export_frames)
        nbb::write_pbm(sim, frame_path(0));

    const auto parsed_rule = nbb::StencilRule::parse(rule);
    const auto t0 = std::chrono::steady_clock::now();
    for (std::int64_t it = 1; it <= steps; ++it) {
        sim.step(parsed_rule);
        if (export_frames && (it % every == 0 || it == steps))
            nbb::write_pbm(sim, frame_path(it));
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double total_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::cout << "backend=" << backend << "\n"
              << "steps=" << steps << "\n";
    std::printf("state_hash=%016llx\n",
                static_cast<unsigned long long>(sim.state_hash()));
    std::printf("total_ms=%.3f\n", total_ms);
    if (steps > 0)
        std::printf("mean_ms_per_iter=%.6f\n", total_ms / steps);
    return 0;
}

int cmd_bench(const std::string& fractal, const std::string& preset,
              std::string levels, int reps, int iters, std::string backends,
              std::string block_sizes, const std::string& rule,
              std::uint64_t seed, double density, std::uint64_t mem_cap,
              int workers, const std::string& csv_path) {
    nbb::BenchConfig config;
    config.desc = nbb::load_descriptor(fractal);
    if (preset == "full") {
        if (reps < 0) reps = 100;
        if (iters < 0) iters = 1000;
        if (levels.empty()) levels = "1..16";
    } else {
        if (reps < 0) reps = 5;
        if (iters < 0) iters = 50;
        if (levels.empty()) levels = "1..10";
    }
    config.levels = parse_levels(levels);
    config.reps = reps;
    config.iters = iters;
    config.rule = nbb::StencilRule::parse(rule);
    config.seed = seed;
    config.density = density;
    config.memory_cap = mem_cap;
    config.workers = workers;

    config.backends.clear();
    std::stringstream bs(backends);
    for (std::string tok; std::getline(bs, tok, ',');)
        config.backends.push_back(nbb::parse_backend(tok));

    config.block_sizes.clear();
    std::stringstream rs(block_sizes);
    for (std::string tok; std::getline(rs, tok, ',');)
        config.block_sizes.push_back(tok == "-" ? 0 : std::stoi(tok));
    if (config.block_sizes.empty())
        config.block_sizes.push_back(0);

    const auto records = nbb::bench_run(config, &std::cerr);
    if (csv_path.empty() || csv_path == "-") {
        nbb::write_csv(records, std::cout);
    } else {
        std::ofstream out(csv_path);
        if (!out)
            throw nbb::CapacityError("cannot open '" + csv_path + "'");
        nbb::write_csv(records, out);
        std::cerr << "bench: wrote " << records.size() << " rows to "
                  << csv_path << std::endl;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NBB fractal toolkit: compact layouts, coordinate maps and "
                 "stencil simulation"};
    app.require_subcommand(1);

    std::string fractal, levels, backend = "compact", backends = "bb,lambda,compact";
    std::string rule = "B3/S23", to_compact, to_embedded, csv_path, out_dir;
    std::string format = "pbm", block_sizes = "0", preset = "desk";
    int level = 0, block_size = 0, workers = 1, reps = -1, iters = -1;
    std::int64_t steps = 100, every = 1;
    std::uint64_t seed = 42, mem_cap = nbb::kDefaultMemoryCap;
    double density = 0.5;
    bool stencil = false, neighbor_table = false;

    auto* info = app.add_subcommand("info", "Descriptor and size facts");
    info->add_option("--fractal", fractal, "builtin name or @descriptor-file")
        ->required();
    info->add_option("--level", level, "scale level r")->required();

    auto* map = app.add_subcommand("map", "Coordinate mapping queries");
    map->add_option("--fractal", fractal)->required();
    map->add_option("--level", level)->required();
    auto* oc = map->add_option("--to-compact", to_compact,
                               "embedded x,y -> compact");
    auto* oe = map->add_option("--to-embedded", to_embedded,
                               "compact cx,cy -> embedded");
    oc->excludes(oe);

    auto* verify = app.add_subcommand("verify", "Run the map/stencil oracles");
    verify->add_option("--fractal", fractal)->required();
    verify->add_option("--level", level)->required();
    verify->add_flag("--stencil", stencil, "also cross-check the backends");
    verify->add_option("--steps", steps);
    verify->add_option("--seed", seed);
    verify->add_option("--rule", rule);
    verify->add_option("--density", density);

    auto* simulate = app.add_subcommand("simulate", "Run a stencil simulation");
    simulate->add_option("--fractal", fractal)->required();
    simulate->add_option("--level", level)->required();
    simulate->add_option("--backend", backend, "bb | lambda | compact");
    simulate->add_option("--rule", rule);
    simulate->add_option("--steps", steps);
    simulate->add_option("--seed", seed);
    simulate->add_option("--density", density);
    simulate->add_option("--block-size", block_size, "compact backend: rho");
    simulate->add_option("--workers", workers);
    simulate->add_flag("--neighbor-table", neighbor_table);
    simulate->add_option("--mem-cap", mem_cap);
    simulate->add_option("--out", out_dir, "frame output directory");
    simulate->add_option("--format", format);
    simulate->add_option("--every", every, "export every k-th frame");

    auto* bench = app.add_subcommand("bench", "Timing sweep, CSV output");
    bench->add_option("--fractal", fractal)->required();
    bench->add_option("--preset", preset, "desk (default) or full");
    bench->add_option("--levels", levels, "a..b or single level");
    bench->add_option("--backends", backends);
    bench->add_option("--reps", reps);
    bench->add_option("--iters", iters);
    bench->add_option("--block-sizes", block_sizes, "compact backend rho list");
    bench->add_option("--rule", rule);
    bench->add_option("--seed", seed);
    bench->add_option("--density", density);
    bench->add_option("--mem-cap", mem_cap);
    bench->add_option("--workers", workers);
    bench->add_option("--csv", csv_path, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (info->parsed())
            return cmd_info(fractal, level);
        if (map->parsed()) {
            if (to_compact.empty() && to_embedded.empty()) {
                std::cerr << "map: one of --to-compact / --to-embedded is "
                             "required\n";
                return 2;
            }
            return cmd_map(fractal, level, to_compact, to_embedded);
        }
        if (verify->parsed())
            return cmd_verify(fractal, level, stencil, steps, seed, rule,
                              density);
        if (simulate->parsed())
            return cmd_simulate(fractal, level, backend, rule, steps, seed,
                                density, block_size, workers, neighbor_table,
                                mem_cap, out_dir, format, every);
        if (bench->parsed())
            return cmd_bench(fractal, preset, levels, reps, iters, backends,
                             block_sizes, rule, seed, density, mem_cap, workers,
                             csv_path);
    } catch (const nbb::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
