#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "moran/params.hpp"
#include "moran/realization.hpp"

namespace moran {

// Flat key=value experiment configuration. '#' starts a comment. Every key
// must be consumed by the command that runs the config; leftovers are errors.
class ConfigMap {
  public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    std::int64_t get_int(const std::string& key, std::int64_t fallback);
    std::int64_t get_int(const std::string& key);
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
    double get_double(const std::string& key, double fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::vector<std::int64_t> get_int_list(const std::string& key);
    std::vector<std::int64_t> get_int_list(const std::string& key,
                                           std::vector<std::int64_t> fallback);

    // Throws ConfigError when any key was never read.
    void reject_unknown() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
    mutable std::set<std::string> consumed_;
};

struct ExperimentSetup {
    ConstructionParams params;
    PlacementStrategy strategy;
    std::uint64_t budget;
    std::uint64_t seed;
};

// Reads the shared construction block: d, depth, seed, budget, strategy,
// pattern, seq.kind, seq.M, seq.N, seq.pairs, seq.tail.
ExperimentSetup read_construction(ConfigMap& cfg);

}  // namespace moran
