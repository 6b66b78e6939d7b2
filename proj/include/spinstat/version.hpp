#pragma once

namespace spinstat {

inline constexpr const char* kName = "spinstat";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Default numerical tolerances used by verdicts and campaigns.
namespace tol {
inline constexpr double spectral = 1e-9;
inline constexpr double flow = 1e-9;
inline constexpr double unitarity = 1e-12;
inline constexpr double ylm_parity = 1e-10;
}  // namespace tol

}  // namespace spinstat
