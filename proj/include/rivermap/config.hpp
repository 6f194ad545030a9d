#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace rivermap {

enum class Variant { Base, IslandsInFjords };

/// Tuning constants. Defaults are the values the generator was designed with.
struct Constants {
    double k1 = 0.32;  ///< displacement per unit edge length
    double k2 = 0.55;  ///< displacement per unit altitude gap
    double k3 = 0.1;   ///< minimum land altitude for a new river mouth
    double k4 = -0.1;  ///< maximum sea altitude for a new river mouth
    double k5 = 0.7;   ///< probability of extending a river upstream
    double k6 = 2.0;   ///< branching probability per unit edge length
    double k7 = -0.1;  ///< river altitude below which a river may fork (islands variant)
    double k8 = 0.15;  ///< probability of forking when allowed

    bool operator==(const Constants&) const = default;
};

struct GenConfig {
    std::uint64_t master_seed = 0;
    Variant variant = Variant::Base;
    Constants k;
    /// Gate on new river mouths. 1 keeps every mouth whose preconditions hold.
    double mouth_probability = 1.0;
    /// Replaces the seeded altitudes of the four root corners when set.
    std::optional<std::array<double, 4>> corner_altitudes;

    bool operator==(const GenConfig&) const = default;

    bool islands() const noexcept { return variant == Variant::IslandsInFjords; }
};

/// Throws std::invalid_argument if a constant is outside its documented range.
inline void validate(const GenConfig& cfg) {
    const auto& k = cfg.k;
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(k.k1 >= 0.0 && k.k1 <= 2.0, "k1 must be in [0, 2]");
    require(k.k2 >= 0.0 && k.k2 <= 2.0, "k2 must be in [0, 2]");
    require(k.k3 >= 0.0 && k.k3 <= 1.0, "k3 must be in [0, 1]");
    require(k.k4 >= -1.0 && k.k4 <= 0.0, "k4 must be in [-1, 0]");
    require(k.k5 >= 0.0 && k.k5 <= 1.0, "k5 must be in [0, 1]");
    require(k.k6 >= 0.0 && k.k6 <= 100.0, "k6 must be in [0, 100]");
    require(k.k7 >= -1.0 && k.k7 < 0.0, "k7 must be in [-1, 0)");
    require(k.k8 >= 0.0 && k.k8 <= 1.0, "k8 must be in [0, 1]");
    require(cfg.mouth_probability >= 0.0 && cfg.mouth_probability <= 1.0,
            "mouth probability must be in [0, 1]");
    if (cfg.corner_altitudes) {
        for (double h : *cfg.corner_altitudes)
            require(h >= -1.0 && h <= 1.0, "corner altitudes must be in [-1, 1]");
    }
}

inline std::string to_string(Variant v) {
    return v == Variant::Base ? "base" : "islands";
}

}  // namespace rivermap
