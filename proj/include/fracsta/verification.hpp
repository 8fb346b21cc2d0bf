#ifndef FRACSTA_VERIFICATION_HPP
#define FRACSTA_VERIFICATION_HPP

#include "fracsta/protocol.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fracsta {

struct PropertyCheck {
    std::string name;
    double max_defect = 0;
    double tolerance = 0;
    bool passed() const { return max_defect <= tolerance; }
};

struct VerifyReport {
    SystemKind system = SystemKind::Lambda;
    int trials = 0;
    std::vector<PropertyCheck> checks;

    bool passed() const;
    /// First failing check, or nullptr.
    const PropertyCheck* first_failure() const;
};

/**
 * Draws `trials` random drive configurations and checks, for each:
 *   cd_finite_difference   analytic H_a against i (dU/dt) U^T by central differences
 *   dark_annihilation      |H0 D| for every dark state
 *   orthonormality         |U^T U - 1|
 *   norm_conservation      unitary f-STA run
 *   trace_conservation     Lindblad f-STA run with random gamma
 *   hermiticity            density matrix along that run
 * Throws ConfigError when trials < 1.
 */
VerifyReport verify(SystemKind system, int trials, std::uint64_t seed = 20240601);

} // namespace fracsta

#endif // FRACSTA_VERIFICATION_HPP
