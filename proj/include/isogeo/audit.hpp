#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace isogeo {

// One named residual of a verification run.
struct AuditEntry {
    std::string name;
    double max = 0.0;
    double rms = 0.0;
    std::int64_t n_samples = 0;
    double tolerance = 0.0;
    bool pass = false;
};

// Collection of named residuals with an overall verdict. `seed` records the
// sampling seed when randomness was involved (0 = deterministic).
struct AuditReport {
    std::vector<AuditEntry> entries;
    std::uint64_t seed = 0;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass)
                return false;
        return true;
    }

    // Accumulates a residual set into a pass/fail entry gated on the max.
    static AuditEntry make_entry(const std::string& name, const std::vector<double>& residuals,
                                 double tolerance) {
        AuditEntry e;
        e.name = name;
        e.tolerance = tolerance;
        e.n_samples = static_cast<std::int64_t>(residuals.size());
        double sq = 0.0;
        for (double r : residuals) {
            const double a = r < 0 ? -r : r;
            e.max = a > e.max ? a : e.max;
            sq += a * a;
        }
        e.rms = residuals.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(residuals.size()));
        e.pass = e.max <= tolerance;
        return e;
    }
};

} // namespace isogeo
