#include "moran/config.hpp"

#include <fstream>
#include <sstream>

#include "moran/errors.hpp"

namespace moran {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

ConfigMap ConfigMap::parse_string(const std::string& text) {
    ConfigMap cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.entries_.count(key))
            throw ConfigError("duplicate config key: " + key);
        cfg.entries_[key] = value;
    }
    return cfg;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

bool ConfigMap::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string ConfigMap::get_string(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required config key: " + key);
    consumed_.insert(key);
    return it->second;
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) {
    consumed_.insert(key);
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

std::int64_t ConfigMap::get_int(const std::string& key) {
    std::string v = get_string(key);
    try {
        return std::stoll(v);
    } catch (...) {
        throw ConfigError("config key " + key + ": not an integer: " + v);
    }
}

std::int64_t ConfigMap::get_int(const std::string& key, std::int64_t fallback) {
    if (!has(key)) {
        consumed_.insert(key);
        return fallback;
    }
    return get_int(key);
}

std::uint64_t ConfigMap::get_u64(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) {
        consumed_.insert(key);
        return fallback;
    }
    std::string v = get_string(key);
    try {
        return std::stoull(v);
    } catch (...) {
        throw ConfigError("config key " + key + ": not an unsigned integer: " + v);
    }
}

double ConfigMap::get_double(const std::string& key, double fallback) {
    if (!has(key)) {
        consumed_.insert(key);
        return fallback;
    }
    std::string v = get_string(key);
    try {
        return std::stod(v);
    } catch (...) {
        throw ConfigError("config key " + key + ": not a number: " + v);
    }
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) {
    if (!has(key)) {
        consumed_.insert(key);
        return fallback;
    }
    std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key " + key + ": not a boolean: " + v);
}

std::vector<std::int64_t> ConfigMap::get_int_list(const std::string& key) {
    std::string v = get_string(key);
    std::vector<std::int64_t> out;
    // "a..b" ranges or comma-separated values
    auto dots = v.find("..");
    if (dots != std::string::npos) {
        std::int64_t lo = std::stoll(v.substr(0, dots));
        std::int64_t hi = std::stoll(v.substr(dots + 2));
        for (std::int64_t i = lo; i <= hi; ++i) out.push_back(i);
        return out;
    }
    for (const auto& part : split(v, ',')) {
        if (part.empty()) continue;
        try {
            out.push_back(std::stoll(part));
        } catch (...) {
            throw ConfigError("config key " + key + ": not an integer list: " + v);
        }
    }
    return out;
}

std::vector<std::int64_t> ConfigMap::get_int_list(const std::string& key,
                                                  std::vector<std::int64_t> fallback) {
    if (!has(key)) {
        consumed_.insert(key);
        return fallback;
    }
    return get_int_list(key);
}

void ConfigMap::reject_unknown() const {
    for (const auto& [key, value] : entries_) {
        if (!consumed_.count(key))
            throw ConfigError("unknown config key: " + key);
    }
}

ExperimentSetup read_construction(ConfigMap& cfg) {
    int d = static_cast<int>(cfg.get_int("d", 1));
    int depth = static_cast<int>(cfg.get_int("depth", 10));
    std::uint64_t seed = cfg.get_u64("seed", 0);
    std::uint64_t budget = cfg.get_u64("budget", 5'000'000);

    std::string kind = cfg.get_string("seq.kind", "constant");
    SequenceSpec spec;
    if (kind == "constant") {
        spec = SequenceSpec::constant(cfg.get_u64("seq.M", 3), cfg.get_u64("seq.N", 2));
    } else if (kind == "periodic" || kind == "explicit") {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (const auto& part : split(cfg.get_string("seq.pairs"), ';')) {
            auto mn = split(part, ',');
            if (mn.size() != 2) throw ConfigError("seq.pairs entries must be M,N");
            pairs.emplace_back(std::stoull(mn[0]), std::stoull(mn[1]));
        }
        if (kind == "periodic") {
            spec = SequenceSpec::periodic(std::move(pairs));
        } else {
            std::string tail = cfg.get_string("seq.tail", "repeat_last");
            spec = SequenceSpec::explicit_list(
                std::move(pairs), tail == "periodic" ? SequenceSpec::Tail::Periodic
                                                     : SequenceSpec::Tail::RepeatLast);
        }
    } else if (kind == "tower_schedule") {
        spec = SequenceSpec::tower_schedule();
    } else {
        throw ConfigError("unknown seq.kind: " + kind);
    }

    ConstructionParams params = validate(spec, d, depth);

    std::string strat = cfg.get_string("strategy", "uniform_random");
    PlacementStrategy strategy;
    if (strat == "uniform_random") {
        strategy = PlacementStrategy::uniform_random(seed);
    } else if (strat == "fixed_pattern") {
        std::vector<std::uint32_t> pattern;
        for (auto v : cfg.get_int_list("pattern"))
            pattern.push_back(static_cast<std::uint32_t>(v));
        strategy = PlacementStrategy::fixed_pattern(std::move(pattern));
    } else if (strat == "left_packed") {
        strategy = PlacementStrategy::left_packed();
    } else if (strat == "uniform_spread") {
        strategy = PlacementStrategy::uniform_spread();
    } else {
        throw ConfigError("unknown strategy: " + strat);
    }

    return ExperimentSetup{std::move(params), std::move(strategy), budget, seed};
}

}  // namespace moran
