#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "copface/error.hpp"

namespace copface {

/// Floating-point decision thresholds shared by every module.
///
/// `zero_tol` is an absolute threshold for scalars that should vanish exactly
/// (quadratic forms at zeros, entries of A*tau). Where the scalar scales with
/// the matrix it is compared against `scaled_zero(norm)` so that cA and A give
/// the same decisions. `rank_tol_rel` is the relative singular-value cutoff.
struct TolerancePolicy {
    double zero_tol = 1e-9;
    double rank_tol_rel = 1e-8;

    void validate() const {
        if (!(zero_tol > 0.0) || !(zero_tol < 1.0))
            throw PreconditionError("zero_tol must lie in (0, 1), got " + std::to_string(zero_tol));
        if (!(rank_tol_rel > 0.0))
            throw PreconditionError("rank_tol_rel must be positive, got " + std::to_string(rank_tol_rel));
    }

    /// Absolute zero threshold for quantities bilinear in a matrix of spectral norm `norm`.
    double scaled_zero(double norm) const { return zero_tol * std::max(1.0, norm); }
};

} // namespace copface
