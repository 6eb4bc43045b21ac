#include <charconv>
#include <fstream>
#include <functional>
#include <unordered_map>

#include "magmap/harness.hpp"

namespace magmap {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError("invalid number for '" + key + "': " + value);
    return out;
}

long parse_integer(const std::string& key, const std::string& value) {
    long out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError("invalid integer for '" + key + "': " + value);
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

Setter real_field(double PhantomSpec::*member) {
    return [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
        c.phantom.*member = parse_real(k, v);
    };
}

const std::unordered_map<std::string, Setter>& setters() {
    static const std::unordered_map<std::string, Setter> table = {
        {"grid",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             const long n = parse_integer(k, v);
             if (n < 2) throw ConfigError("grid must be >= 2");
             c.grid_n = static_cast<std::size_t>(n);
         }},
        {"spacing", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.spacing_m = parse_real(k, v); }},
        {"iters",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.solver.mode = StopMode::fixed_iterations;
             c.solver.max_iterations = static_cast<int>(parse_integer(k, v));
         }},
        {"tol",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.solver.mode = StopMode::tolerance;
             c.solver.rel_tolerance = parse_real(k, v);
         }},
        {"cap",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.solver.max_iterations = static_cast<int>(parse_integer(k, v));
         }},
        {"out", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.output_dir = v; }},
        {"emit", [](ExperimentConfig& c, const std::string&, const std::string& v) { c.emit = EmitSet::parse(v); }},
        {"radius", real_field(&PhantomSpec::sphere_radius_m)},
        {"amplitude", real_field(&PhantomSpec::amplitude)},
        {"defect_px", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.defect.p_x = parse_real(k, v); }},
        {"defect_py", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.defect.p_y = parse_real(k, v); }},
        {"defect_pz", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.defect.p_z = parse_real(k, v); }},
        {"large_radius", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.large_radius = parse_real(k, v); }},
        {"background", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.background = parse_real(k, v); }},
        {"small_radius", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.small_radius = parse_real(k, v); }},
        {"small_value", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.small_value = parse_real(k, v); }},
        {"box_half_x", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.box_half_extent[0] = parse_real(k, v); }},
        {"box_half_y", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.box_half_extent[1] = parse_real(k, v); }},
        {"box_half_z", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.box_half_extent[2] = parse_real(k, v); }},
        {"box_value", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.box_value = parse_real(k, v); }},
        {"box_exponent", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.box_exponent = parse_real(k, v); }},
        {"gap", [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.phantom.composite.gap_m = parse_real(k, v); }},
    };
    return table;
}

} // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown configuration key '" + key + "'");
    it->second(cfg, key, trim(value));
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
        if (key != "experiment" && key != "scale" && !setters().contains(key)) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        out[key] = value;
    }
    return out;
}

EmitSet EmitSet::parse(std::string_view list) {
    EmitSet e{false, false, false, false};
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto comma = list.find(',', pos);
        const std::string item = trim(list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (item == "slices") e.slices = true;
        else if (item == "metrics") e.metrics = true;
        else if (item == "volumes") e.volumes = true;
        else if (item == "spectra") e.spectra = true;
        else if (!item.empty()) throw ConfigError("unknown emit item '" + item + "'");
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return e;
}

} // namespace magmap
