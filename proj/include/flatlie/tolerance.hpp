#pragma once

namespace flatlie {

inline constexpr double kDefaultTol = 1e-9;

/// Acceptance threshold for an identity whose natural magnitude is `scale`.
inline double verdict_threshold(double tol, double scale) { return tol * (1.0 + scale); }

}  // namespace flatlie
