#pragma once

#include <cmath>
#include <cstdint>

namespace alertswarm {

/// Stable agent identity; ids are unique within a world and totally ordered
/// (the order is used for deterministic tie-breaking).
using AgentId = std::uint32_t;

/// Simulation step counter. Strictly increases by 1 per world step.
using Tick = std::uint64_t;

/// Grid-cell identifier: row * grid_cells + col.
using CellId = std::uint32_t;

/// Index into the categorical observation alphabet (0 = 'A', 1 = 'B', ...).
using Category = std::uint8_t;

/// A point in the bounded 2-D world, [0, world_size) on both axes.
struct Position {
    double x = 0.0;
    double y = 0.0;
};

/// Euclidean distance. Symmetric, non-negative, satisfies the triangle
/// inequality.
inline double distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// A categorical observation about one grid cell.
struct Belief {
    CellId subject = 0;
    Category value = 0;
    AgentId origin = 0;
    Tick observed_at = 0;
};

/// Four-class threat taxonomy. Enumerator order is the severity order:
/// Cooperative < Suspicious < Malicious < Noxious.
enum class ThreatLevel : std::uint8_t {
    Cooperative = 0,
    Suspicious = 1,
    Malicious = 2,
    Noxious = 3,
};

inline int severity(ThreatLevel t) { return static_cast<int>(t); }

enum class AlertnessLevel : std::uint8_t {
    Low = 0,
    Elevated = 1,
    High = 2,
};

inline const char* to_string(ThreatLevel t) {
    switch (t) {
        case ThreatLevel::Cooperative: return "Cooperative";
        case ThreatLevel::Suspicious: return "Suspicious";
        case ThreatLevel::Malicious: return "Malicious";
        case ThreatLevel::Noxious: return "Noxious";
    }
    return "?";
}

inline const char* to_string(AlertnessLevel a) {
    switch (a) {
        case AlertnessLevel::Low: return "Low";
        case AlertnessLevel::Elevated: return "Elevated";
        case AlertnessLevel::High: return "High";
    }
    return "?";
}

}  // namespace alertswarm
