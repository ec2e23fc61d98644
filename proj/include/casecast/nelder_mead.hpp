#ifndef CASECAST_NELDER_MEAD_HPP
#define CASECAST_NELDER_MEAD_HPP

#include <functional>
#include <vector>

namespace casecast {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double diameter_tolerance = 1e-8;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization with the standard reflection /
/// expansion / contraction / shrink coefficients (1, 2, 0.5, 0.5). The
/// initial simplex is the start point plus one vertex per coordinate offset
/// by steps[i]. Converged when the max-norm spread of the simplex falls
/// below the diameter tolerance.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const std::vector<double>& steps,
    const NelderMeadOptions& options = {});

}  // namespace casecast

#endif  // CASECAST_NELDER_MEAD_HPP
