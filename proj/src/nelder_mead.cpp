#include "casecast/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "casecast/error.hpp"

namespace casecast {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& simplex) {
    double diameter = 0.0;
    const auto& base = simplex.front();
    for (std::size_t v = 1; v < simplex.size(); ++v) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            diameter = std::max(diameter, std::abs(simplex[v][i] - base[i]));
        }
    }
    return diameter;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const std::vector<double>& steps,
    const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    if (dim == 0 || steps.size() != dim) {
        throw Error(errc::invalid_argument, "optimizer start and steps must be non-empty and equal-sized");
    }

    constexpr double reflect_coef = 1.0;
    constexpr double expand_coef = 2.0;
    constexpr double contract_coef = 0.5;
    constexpr double shrink_coef = 0.5;

    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) {
        simplex[i + 1][i] += steps[i];
    }
    std::vector<double> values(dim + 1);
    for (std::size_t v = 0; v <= dim; ++v) {
        values[v] = objective(simplex[v]);
    }

    std::vector<std::size_t> order(dim + 1);
    NelderMeadResult result;
    for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        {
            std::vector<std::vector<double>> sorted_simplex(dim + 1);
            std::vector<double> sorted_values(dim + 1);
            for (std::size_t v = 0; v <= dim; ++v) {
                sorted_simplex[v] = std::move(simplex[order[v]]);
                sorted_values[v] = values[order[v]];
            }
            simplex = std::move(sorted_simplex);
            values = std::move(sorted_values);
        }

        if (simplex_diameter(simplex) < options.diameter_tolerance) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v) {
            for (std::size_t i = 0; i < dim; ++i) {
                centroid[i] += simplex[v][i];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(dim);
        }

        const auto blend = [&](double coef, const std::vector<double>& from) {
            std::vector<double> point(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                point[i] = centroid[i] + coef * (centroid[i] - from[i]);
            }
            return point;
        };

        const std::vector<double> reflected = blend(reflect_coef, simplex[dim]);
        const double f_reflected = objective(reflected);

        if (f_reflected < values[0]) {
            const std::vector<double> expanded = blend(expand_coef, simplex[dim]);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex[dim] = expanded;
                values[dim] = f_expanded;
            } else {
                simplex[dim] = reflected;
                values[dim] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[dim - 1]) {
            simplex[dim] = reflected;
            values[dim] = f_reflected;
            continue;
        }

        // Contract toward the better of the worst vertex and its reflection.
        std::vector<double> contracted;
        if (f_reflected < values[dim]) {
            contracted = blend(contract_coef, simplex[dim]);  // outside
        } else {
            contracted.assign(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                contracted[i] = centroid[i] + contract_coef * (simplex[dim][i] - centroid[i]);
            }
        }
        const double f_contracted = objective(contracted);
        if (f_contracted < std::min(f_reflected, values[dim])) {
            simplex[dim] = contracted;
            values[dim] = f_contracted;
            continue;
        }

        for (std::size_t v = 1; v <= dim; ++v) {
            for (std::size_t i = 0; i < dim; ++i) {
                simplex[v][i] = simplex[0][i] + shrink_coef * (simplex[v][i] - simplex[0][i]);
            }
            values[v] = objective(simplex[v]);
        }
    }

    std::size_t best = 0;
    for (std::size_t v = 1; v <= dim; ++v) {
        if (values[v] < values[best]) {
            best = v;
        }
    }
    result.x = simplex[best];
    result.value = values[best];
    return result;
}

}  // namespace casecast
