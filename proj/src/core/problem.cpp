#include "designbench/core/problem.hpp"

#include <cmath>

namespace designbench {

std::vector<Violation> Problem::check_constraints(const Design* design,
                                                  const Conditions& overrides) const {
    const Conditions conds = spec_.merge_conditions(overrides);
    std::vector<Violation> out;
    for (const auto& check : checks_) {
        const std::optional<double> v = check.value(design, conds);
        if (!v) continue;
        const Interval iv = check.bounds(conds);
        if (!iv.contains(*v)) out.push_back({check.field, *v, iv, check.category, check.severity});
    }
    return out;
}

std::pair<Design, Conditions> Problem::random_design() {
    return {sample_design(rng_), spec_.condition_defaults};
}

Design Problem::sample_design(Rng& rng) const {
    const DesignSpace& space = spec_.design_space;
    const Eigen::Index n = space.size();
    Eigen::VectorXd flat(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lo = space.lower_at(i);
        const double hi = space.upper_at(i);
        flat[i] = lo == hi ? lo : rng.uniform(lo, hi);
    }
    const Eigen::Index rows = space.shape.size() >= 2 ? space.shape[0] : 1;
    const Eigen::Index cols = n / rows;
    return unflatten_row_major(flat, rows, cols);
}

Eigen::VectorXd Problem::simulate(const Design& design, const Conditions& overrides,
                                  const SimulateOptions& opts) {
    enforce_strict(&design, overrides, opts.strict);
    return simulate_impl(design, spec_.merge_conditions(overrides));
}

std::pair<Design, OptHistory> Problem::optimize(const Design&, const Conditions&,
                                                const OptimizeOptions&) {
    throw std::logic_error("problem " + spec_.id() + " has no native optimizer");
}

void Problem::enforce_strict(const Design* design, const Conditions& overrides,
                             bool strict) const {
    if (!strict) return;
    std::vector<Violation> violations = check_constraints(design, overrides);
    std::erase_if(violations, [](const Violation& v) { return v.severity != Severity::Error; });
    if (!violations.empty()) {
        std::string what = "constraint errors for " + spec_.id() + ":";
        for (const auto& v : violations) what += "\n  " + v.message();
        throw ConstraintError(what, std::move(violations));
    }
}

void Problem::add_config_check(std::string field, Category cat, Severity sev, double value,
                               Interval iv) {
    checks_.push_back({std::move(field), cat, sev,
                       [value](const Design*, const Conditions&) -> std::optional<double> {
                           return value;
                       },
                       [iv](const Conditions&) { return iv; }});
}

void Problem::add_condition_check(std::string name, Category cat, Severity sev, Interval iv) {
    std::string field = name;
    checks_.push_back({std::move(field), cat, sev,
                       [name](const Design*, const Conditions& c) -> std::optional<double> {
                           return c.at(name);
                       },
                       [iv](const Conditions&) { return iv; }});
}

void Problem::add_design_range_check() {
    const DesignSpace& space = spec_.design_space;
    checks_.push_back(
        {"design", Category::Theory, Severity::Error,
         [&space](const Design* d, const Conditions&) -> std::optional<double> {
             if (d == nullptr) return std::nullopt;
             // Report the entry farthest outside the box, if any.
             double worst = 0.0;
             double worst_value = 0.0;
             const Eigen::VectorXd flat = flatten_row_major(*d);
             for (Eigen::Index i = 0; i < flat.size(); ++i) {
                 const double lo = space.lower_at(i);
                 const double hi = space.upper_at(i);
                 const double excess = std::max(lo - flat[i], flat[i] - hi);
                 if (excess > worst) {
                     worst = excess;
                     worst_value = flat[i];
                 }
             }
             if (worst > 0.0) return worst_value;
             return std::nullopt;  // all entries in range: no finding
         },
         [&space](const Conditions&) {
             return Interval::closed(space.lower_at(0), space.upper_at(0));
         }});
}

}  // namespace designbench
