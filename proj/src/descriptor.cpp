#include "nbb/descriptor.hpp"
#include "nbb/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace nbb {

void FractalDescriptor::validate() const {
    if (replica_count < 1)
        throw ParseError("descriptor '" + name + "': k must be >= 1, got " +
                         std::to_string(replica_count));
    if (growth < 2)
        throw ParseError("descriptor '" + name + "': invalid growth factor s=" +
                         std::to_string(growth) + " (s >= 2 required)");
    if (static_cast<long long>(replica_count) >
        static_cast<long long>(growth) * growth)
        throw ParseError("descriptor '" + name + "': k=" +
                         std::to_string(replica_count) + " exceeds s*s=" +
                         std::to_string(growth * growth));
    if (static_cast<int>(replicas.size()) != replica_count)
        throw ParseError("descriptor '" + name + "': k=" +
                         std::to_string(replica_count) + " but " +
                         std::to_string(replicas.size()) +
                         " replica positions listed");
    for (std::size_t i = 0; i < replicas.size(); ++i) {
        const auto [gx, gy] = replicas[i];
        if (gx < 0 || gy < 0 || gx >= growth || gy >= growth)
            throw ParseError("descriptor '" + name + "': replica " +
                             std::to_string(i) + " position (" +
                             std::to_string(gx) + "," + std::to_string(gy) +
                             ") outside the " + std::to_string(growth) + "x" +
                             std::to_string(growth) + " grid");
        for (std::size_t j = i + 1; j < replicas.size(); ++j)
            if (replicas[i] == replicas[j])
                throw ParseError("descriptor '" + name +
                                 "': duplicate replica position (" +
                                 std::to_string(gx) + "," +
                                 std::to_string(gy) + ")");
    }
}

int FractalDescriptor::replica_index(int gx, int gy) const {
    for (std::size_t i = 0; i < replicas.size(); ++i)
        if (replicas[i].gx == gx && replicas[i].gy == gy)
            return static_cast<int>(i);
    return -1;
}

FractalDescriptor builtin_descriptor(std::string_view name) {
    if (name == "sierpinski-triangle")
        return {"sierpinski-triangle", 3, 2, {{0, 0}, {1, 0}, {0, 1}}};
    if (name == "sierpinski-carpet")
        return {"sierpinski-carpet", 8, 3,
                {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}}};
    if (name == "vicsek")
        return {"vicsek", 5, 3, {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}};
    throw ParseError("unknown fractal name '" + std::string(name) +
                     "' (builtins: sierpinski-triangle, sierpinski-carpet, "
                     "vicsek; use @file for a descriptor file)");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view tok, std::string_view what) {
    tok = trim(tok);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("malformed " + std::string(what) + " value '" +
                         std::string(tok) + "'");
    return value;
}

std::vector<ReplicaPos> parse_replicas(std::string_view list) {
    std::vector<ReplicaPos> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        std::size_t end = list.find(';', pos);
        std::string_view pair =
            trim(list.substr(pos, end == std::string_view::npos ? end : end - pos));
        if (!pair.empty()) {
            std::size_t comma = pair.find(',');
            if (comma == std::string_view::npos)
                throw ParseError("malformed replica pair '" + std::string(pair) +
                                 "' (expected gx,gy)");
            out.push_back({parse_int(pair.substr(0, comma), "replica gx"),
                           parse_int(pair.substr(comma + 1), "replica gy")});
        }
        if (end == std::string_view::npos)
            break;
        pos = end + 1;
    }
    return out;
}

} // namespace

FractalDescriptor parse_descriptor(std::string_view text) {
    FractalDescriptor desc;
    bool saw_name = false, saw_k = false, saw_s = false, saw_replicas = false;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line =
            trim(text.substr(pos, end == std::string_view::npos ? end : end - pos));
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (line.empty() || line.front() == '#')
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("malformed descriptor line '" + std::string(line) +
                             "' (expected key=value)");
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key == "name") {
            desc.name = std::string(value);
            saw_name = true;
        } else if (key == "k") {
            desc.replica_count = parse_int(value, "k");
            saw_k = true;
        } else if (key == "s") {
            desc.growth = parse_int(value, "s");
            saw_s = true;
        } else if (key == "replicas") {
            desc.replicas = parse_replicas(value);
            saw_replicas = true;
        } else {
            throw ParseError("unknown descriptor key '" + std::string(key) + "'");
        }
    }
    if (!saw_name || !saw_k || !saw_s || !saw_replicas)
        throw ParseError("descriptor is missing required keys (need name, k, s, "
                         "replicas)");
    desc.validate();
    return desc;
}

FractalDescriptor load_descriptor(std::string_view spec) {
    if (!spec.empty() && spec.front() == '@') {
        std::string path(spec.substr(1));
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open descriptor file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_descriptor(buf.str());
    }
    return builtin_descriptor(spec);
}

} // namespace nbb
