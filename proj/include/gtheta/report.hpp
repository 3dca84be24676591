#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtheta/point.hpp"

namespace gtheta {

enum class Verdict { pass, fail };

inline const char* to_cstring(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

/// Everything needed to replay a violation bit-for-bit: the points involved,
/// the named scalar parameters, and both sides of the violated relation.
struct Witness {
    std::vector<Point> points;
    std::map<std::string, double> params;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation;  // human-readable statement of what failed
};

struct AxiomReport {
    std::string axiom;
    Verdict verdict = Verdict::pass;
    std::optional<Witness> witness;
    long long trials = 0;
    std::uint64_t seed = 0;
    std::string notes;  // e.g. the t-grid the premise was gated on
};

/// Slack used everywhere a strict comparison could be tipped by rounding:
/// a violation is recorded only when lhs > rhs + 1e-9 * max(1, rhs).
/// Control values can be -inf (f applied to a vanishing distance), so the
/// infinite cases are handled before the slack arithmetic.
inline bool violates(double lhs, double rhs) {
    if (std::isnan(lhs) || std::isnan(rhs)) return false;
    if (std::isinf(rhs)) return rhs < 0.0 && lhs > rhs;
    if (std::isinf(lhs)) return lhs > 0.0;
    return lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs));
}

inline const AxiomReport* find_report(const std::vector<AxiomReport>& reports,
                                      const std::string& axiom) {
    for (const auto& r : reports) {
        if (r.axiom == axiom) return &r;
    }
    return nullptr;
}

inline bool all_pass(const std::vector<AxiomReport>& reports) {
    for (const auto& r : reports) {
        if (r.verdict != Verdict::pass) return false;
    }
    return true;
}

}  // namespace gtheta
