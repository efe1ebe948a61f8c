#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levyx/bounds.hpp"
#include "levyx/mc.hpp"
#include "levyx/presets.hpp"
#include "levyx/pricing.hpp"

namespace levyx::cli {

/// Flat "section.key" -> text settings: file values first, flags on top.
/// Values stay textual until resolve_* type-checks them.
class Settings {
public:
    /// Load an INI file with sections [model], [basis], [numerics], [mc].
    static Settings from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    /// True when any key of [model] other than x0 was given.
    bool has_model_keys() const;

    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    bool boolean(const std::string& key, bool fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Every recognised key; unknown keys are config errors.
const std::vector<std::string>& known_keys();

double parse_number(const std::string& key, const std::string& text);
std::vector<double> parse_numbers(const std::string& key, const std::string& text);

struct ModelChoice {
    ModelSpec model;
    double x0 = 0.0;
    std::string source;                    // preset name or "file"
    std::map<std::string, double> params;  // echoed in outputs
};

/// Exactly one model source: model.preset, or the explicit model keys.
ModelChoice resolve_model(const Settings& s);
PricingRequest resolve_request(const Settings& s, const ModelChoice& m);
SimulationConfig resolve_mc(const Settings& s, const ModelSpec& model);

struct BoundChoice {
    BoundParams params;
    double dnu_norm = 0.0;
    double C = 1.0;
};
BoundChoice resolve_bound(const Settings& s, const ModelSpec& model);

/// Fully resolved configuration as INI text (defaults filled in).
std::string emit_config(const Settings& s);

}  // namespace levyx::cli
