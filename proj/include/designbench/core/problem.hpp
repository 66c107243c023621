#pragma once

#include "designbench/core/rng.hpp"
#include "designbench/core/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace designbench {

/// Thrown when simulate/optimize is invoked in strict mode against a
/// configuration carrying Error-severity violations.
class ConstraintError : public std::runtime_error {
public:
    ConstraintError(std::string what, std::vector<Violation> violations)
        : std::runtime_error(std::move(what)), violations(std::move(violations)) {}
    std::vector<Violation> violations;
};

/// Thrown when a simulation cannot produce a result (singular system,
/// non-convergence, ...). Feeds the ratio-of-failed-simulations metric.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimulateOptions {
    bool strict = true;  // refuse to run on Error-severity violations
};

struct OptimizeOptions {
    bool strict = true;
    int max_iterations = 0;     // 0 = problem default
    bool record_designs = false;
};

/// One row of a problem's constraint table. `value` extracts the checked
/// quantity (nullopt when not applicable, e.g. design checks without a
/// design); `bounds` may depend on the merged conditions.
struct ConstraintCheck {
    std::string field;
    Category category = Category::Theory;
    Severity severity = Severity::Error;
    std::function<std::optional<double>(const Design*, const Conditions&)> value;
    std::function<Interval(const Conditions&)> bounds;
};

/// Base class for all benchmark problems: metadata, constraint checking
/// with severities, deterministic seeding, uniform random designs.
///
/// A Problem instance is single-threaded; independent instances may be used
/// concurrently.
class Problem {
public:
    Problem() = default;
    Problem(const Problem&) = delete;  // checks capture per-instance state
    Problem& operator=(const Problem&) = delete;
    virtual ~Problem() = default;

    const ProblemSpec& spec() const { return spec_; }
    const std::vector<ConstraintCheck>& constraint_table() const { return checks_; }

    /// Re-seeds all stochastic state. Two identical seeds yield identical
    /// subsequent outputs.
    void reset(std::uint64_t seed) { rng_ = Rng(seed); }

    /// Runs every registered check in declaration order. Violations are
    /// returned, never thrown; unknown condition names throw
    /// std::invalid_argument.
    std::vector<Violation> check_constraints(const Design* design, const Conditions& overrides) const;

    /// Uniform sample within the design space bounds; conditions = defaults.
    std::pair<Design, Conditions> random_design();

    /// Computes the objective vector for a design under the merged
    /// conditions, in the order of spec().objectives.
    Eigen::VectorXd simulate(const Design& design, const Conditions& overrides,
                             const SimulateOptions& opts = {});

    /// Runs the problem's optimizer from `start`. Problems without a native
    /// optimizer throw std::logic_error.
    virtual std::pair<Design, OptHistory> optimize(const Design& start, const Conditions& overrides,
                                                   const OptimizeOptions& opts = {});

    bool has_native_optimizer() const { return has_native_optimizer_; }

protected:
    /// Objective computation after strict-mode gating; implemented per problem.
    virtual Eigen::VectorXd simulate_impl(const Design& design, const Conditions& conds) = 0;

    virtual Design sample_design(Rng& rng) const;

    /// Throws ConstraintError when strict and any Error-severity violation
    /// exists. Warnings never block.
    void enforce_strict(const Design* design, const Conditions& overrides, bool strict) const;

    /// Table-row helpers; rows are checked in registration order.
    void add_config_check(std::string field, Category cat, Severity sev, double value, Interval iv);
    void add_condition_check(std::string name, Category cat, Severity sev, Interval iv);
    void add_design_range_check();  // every design entry within the space bounds (Theory error)

    ProblemSpec spec_;
    std::vector<ConstraintCheck> checks_;
    Rng rng_{0};
    bool has_native_optimizer_ = false;
};

}  // namespace designbench
