#include "nbb/bench.hpp"
#include "nbb/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace nbb {

namespace {

BenchRecord make_record(const BenchConfig& config, int level, Backend backend,
                        int block_size) {
    BenchRecord rec;
    rec.fractal = config.desc.name;
    rec.level = level;
    rec.n = side_length(config.desc, level);
    rec.backend = std::string(backend_name(backend));
    rec.block_size = block_size;
    rec.reps = config.reps;
    rec.iters = config.iters;
    return rec;
}

void time_record(const BenchConfig& config, Backend backend, BenchRecord& rec) {
    SimOptions options;
    options.block_size = rec.block_size;
    options.workers = config.workers;
    options.memory_cap = config.memory_cap;
    Simulation sim(config.desc, rec.level, backend, options);
    sim.seed_random(config.seed, config.density);
    if (config.warmup)
        for (int i = 0; i < config.iters; ++i)
            sim.step(config.rule);
    std::vector<double> per_iter_ms;
    per_iter_ms.reserve(static_cast<std::size_t>(config.reps));
    for (int rep = 0; rep < config.reps; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < config.iters; ++i)
            sim.step(config.rule);
        const auto t1 = std::chrono::steady_clock::now();
        per_iter_ms.push_back(
            std::chrono::duration<double, std::milli>(t1 - t0).count() /
            config.iters);
    }
    double mean = 0;
    for (double v : per_iter_ms)
        mean += v;
    mean /= per_iter_ms.size();
    double var = 0;
    for (double v : per_iter_ms)
        var += (v - mean) * (v - mean);
    var = per_iter_ms.size() > 1 ? var / (per_iter_ms.size() - 1) : 0.0;
    rec.mean_ms = mean;
    rec.stddev_ms = std::sqrt(var);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed << v;
    return out.str();
}

} // namespace

std::vector<BenchRecord> bench_run(const BenchConfig& config,
                                   std::ostream* progress) {
    std::vector<BenchRecord> records;
    for (int level : config.levels) {
        const std::size_t level_start = records.size();
        for (Backend backend : config.backends) {
            std::vector<int> block_sizes = backend == Backend::Compact
                                               ? config.block_sizes
                                               : std::vector<int>{0};
            for (int rho : block_sizes) {
                BenchRecord rec = make_record(config, level, backend, rho);
                try {
                    rec.mem_cells =
                        stored_cells(config.desc, level,
                                     rho > 0 ? Layout::BlockedCompact
                                     : backend == Backend::Compact
                                         ? Layout::LinearCompact
                                         : Layout::Embedded,
                                     rho);
                    if (static_cast<std::uint64_t>(rec.mem_cells) >
                        config.memory_cap)
                        throw CapacityError(
                            "grid of " + std::to_string(rec.mem_cells) +
                            " cells exceeds the memory cap of " +
                            std::to_string(config.memory_cap) + " bytes");
                    if (progress)
                        *progress << "bench: " << rec.fractal << " r=" << level
                                  << " " << rec.backend
                                  << (rho > 0 ? " rho=" + std::to_string(rho)
                                              : std::string())
                                  << " ..." << std::endl;
                    time_record(config, backend, rec);
                } catch (const std::exception& e) {
                    rec.skip_reason = e.what();
                    if (progress)
                        *progress << "bench: skipped " << rec.fractal
                                  << " r=" << level << " " << rec.backend
                                  << (rho > 0 ? " rho=" + std::to_string(rho)
                                              : std::string())
                                  << ": " << e.what() << std::endl;
                }
                records.push_back(std::move(rec));
            }
        }
        // speedup against the bounding-box row of this level
        std::optional<double> bb_mean;
        for (std::size_t i = level_start; i < records.size(); ++i)
            if (records[i].backend == "bb" && records[i].mean_ms)
                bb_mean = records[i].mean_ms;
        if (bb_mean)
            for (std::size_t i = level_start; i < records.size(); ++i)
                if (records[i].mean_ms)
                    records[i].speedup_vs_bb = *bb_mean / *records[i].mean_ms;
    }
    return records;
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const auto& rec : records) {
        out << csv_quote(rec.fractal) << ',' << rec.level << ',' << rec.n << ','
            << rec.backend << ','
            << (rec.block_size > 0 ? std::to_string(rec.block_size) : "-")
            << ',' << rec.reps << ',' << rec.iters << ','
            << (rec.mean_ms ? format_double(*rec.mean_ms) : "") << ','
            << (rec.stddev_ms ? format_double(*rec.stddev_ms) : "") << ','
            << rec.mem_cells << ','
            << (rec.speedup_vs_bb ? format_double(*rec.speedup_vs_bb) : "")
            << "\n";
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

std::vector<BenchRecord> read_csv(std::istream& in) {
    std::vector<BenchRecord> records;
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ParseError("unexpected CSV header");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 11)
            throw ParseError("CSV row has " + std::to_string(fields.size()) +
                             " fields, expected 11");
        BenchRecord rec;
        rec.fractal = fields[0];
        rec.level = std::stoi(fields[1]);
        rec.n = std::stoll(fields[2]);
        rec.backend = fields[3];
        rec.block_size = fields[4] == "-" ? 0 : std::stoi(fields[4]);
        rec.reps = std::stoi(fields[5]);
        rec.iters = std::stoi(fields[6]);
        if (!fields[7].empty())
            rec.mean_ms = std::stod(fields[7]);
        if (!fields[8].empty())
            rec.stddev_ms = std::stod(fields[8]);
        rec.mem_cells = std::stoll(fields[9]);
        if (!fields[10].empty())
            rec.speedup_vs_bb = std::stod(fields[10]);
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace nbb
