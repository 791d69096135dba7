#include "mafrac/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mafrac {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "line %d: %s", line, what.c_str());
    throw ConfigError(buf);
}

double to_double(const std::string& s, int line, const std::string& key) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(line, key + " expects a number, got '" + s + "'");
    }
    if (used != s.size()) fail(line, key + " expects a number, got '" + s + "'");
    return v;
}

long long to_int(const std::string& s, int line, const std::string& key) {
    size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        fail(line, key + " expects an integer, got '" + s + "'");
    }
    if (used != s.size()) fail(line, key + " expects an integer, got '" + s + "'");
    return v;
}

} // namespace

Potential ExperimentConfig::make_potential() const {
    if (kind == "quad") return Potential::quad(dim, c);
    if (kind == "perturbed_quad") return Potential::perturbed_quad(dim, c);
    return Potential::power1d(c);
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    bool x0_set = false;
    std::string section, raw;
    int line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (size_t hash = s.find('#'); hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "potential" && section != "section" && section != "fractional" &&
                section != "run")
                fail(line, "unknown section '" + section + "'");
            continue;
        }

        size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value, got '" + s + "'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        std::string full = section.empty() ? key : section + "." + key;

        if (full == "potential.kind") {
            cfg.kind = value;
        } else if (full == "potential.dim") {
            cfg.dim = static_cast<int>(to_int(value, line, full));
        } else if (full == "potential.c") {
            cfg.c = to_double(value, line, full);
        } else if (full == "section.x0") {
            auto parts = split_list(value);
            cfg.x0 = Vec(parts.size());
            for (size_t i = 0; i < parts.size(); ++i)
                cfg.x0(i) = to_double(parts[i], line, full);
            x0_set = true;
        } else if (full == "section.R") {
            cfg.R = to_double(value, line, full);
        } else if (full == "section.resolution") {
            cfg.resolution = static_cast<int>(to_int(value, line, full));
        } else if (full == "fractional.s") {
            cfg.s_values.clear();
            for (const auto& part : split_list(value))
                cfg.s_values.push_back(to_double(part, line, full));
        } else if (full == "fractional.route") {
            cfg.route = value;
        } else if (full == "run.suites") {
            cfg.suites = split_list(value);
        } else if (full == "run.out") {
            cfg.out_dir = value;
        } else if (full == "run.seed") {
            long long v = to_int(value, line, full);
            if (v < 0) fail(line, "run.seed must be nonnegative");
            cfg.seed = static_cast<unsigned long long>(v);
        } else {
            fail(line, "unknown key '" + full + "'");
        }
    }

    // validation against the preconditions of the consumers
    if (cfg.kind != "quad" && cfg.kind != "perturbed_quad" && cfg.kind != "power1d")
        throw ConfigError("potential.kind '" + cfg.kind +
                          "' is not one of quad, perturbed_quad, power1d");
    if (cfg.dim != 1 && cfg.dim != 2) throw ConfigError("potential.dim must be 1 or 2");
    if (cfg.kind == "power1d" && cfg.dim != 1)
        throw ConfigError("potential.kind power1d requires dim = 1");
    if (cfg.kind == "quad" && cfg.c <= 0.0)
        throw ConfigError("potential.c must be positive for the quad preset");
    if (cfg.kind == "power1d" && cfg.c <= 2.0)
        throw ConfigError("potential.c (the power) must exceed 2 for power1d");
    if (!x0_set) cfg.x0 = Vec::Zero(cfg.dim);
    if (cfg.x0.size() != cfg.dim)
        throw ConfigError("section.x0 must list exactly dim coordinates");
    if (cfg.R <= 0.0) throw ConfigError("section.R must be positive");
    if (cfg.resolution < 8) throw ConfigError("section.resolution must be at least 8");
    if (cfg.s_values.empty()) throw ConfigError("fractional.s must list at least one value");
    for (double s : cfg.s_values)
        if (s <= 0.0 || s >= 1.0) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "fractional.s = %g lies outside the open interval (0,1)", s);
            throw ConfigError(buf);
        }
    if (cfg.route != "spectral" && cfg.route != "semigroup" && cfg.route != "extension")
        throw ConfigError("fractional.route '" + cfg.route +
                          "' is not one of spectral, semigroup, extension");
    if (cfg.out_dir.empty()) throw ConfigError("run.out must not be empty");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    return parse_config(in);
}

} // namespace mafrac
