#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "afrelay/errors.hpp"
#include "afrelay/interference.hpp"
#include "afrelay/specialfn.hpp"

namespace afrelay {

struct FitReport
{
    GGDist params;
    std::array<double, 3> residuals{};  ///< relative mismatch of the first three moments
    int iterations = 0;
    bool converged = false;
};

/// Raised when no start point reaches the tolerance; carries the best attempt.
class GgaFitError : public ConvergenceError
{
  public:
    GgaFitError(const std::string& what, FitReport best)
        : ConvergenceError(what, best.params.a, std::max({best.residuals[0], best.residuals[1], best.residuals[2]})),
          best_(best)
    {
    }

    const FitReport& best() const noexcept { return best_; }

  private:
    FitReport best_;
};

/// Generalized-Gamma law matching the first three raw moments.
FitReport fit_gga(const MomentTriple& moments, double tol = 1e-10, int max_iter = 200);

/// |E[Y^k] - m_k| / m_k for k = 1, 2, 3.
std::array<double, 3> gga_residual(const GGDist& params, const MomentTriple& moments);

}  // namespace afrelay
