#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace designbench {

/// A decision variable. Grid problems use the natural (nely, nelx) layout;
/// parameter-vector problems use a single row.
using Design = Eigen::ArrayXXd;

/// Flattens a design row-major, the convention used for serialization and
/// for metric computation.
Eigen::VectorXd flatten_row_major(const Design& d);

/// Inverse of flatten_row_major.
Design unflatten_row_major(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols);

/// Renders a real like Python's repr: integral values keep one decimal
/// ("2.0"), others use the shortest round-tripping form ("0.35", "1e-06").
std::string format_real(double v);

enum class SpaceKind { Continuous, Discrete, Mixed };

/// Axis-aligned box of valid designs. Bounds are either per-entry arrays of
/// length prod(shape) or scalars broadcast over the whole shape.
struct DesignSpace {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    std::vector<Eigen::Index> shape;
    SpaceKind kind = SpaceKind::Continuous;

    static DesignSpace box(double lo, double hi, std::vector<Eigen::Index> shape);

    Eigen::Index size() const;
    double lower_at(Eigen::Index i) const { return lower.size() == 1 ? lower[0] : lower[i]; }
    double upper_at(Eigen::Index i) const { return upper.size() == 1 ? upper[0] : upper[i]; }

    /// Throws std::invalid_argument on inverted bounds or shape/bound-length
    /// mismatch.
    void validate() const;
};

enum class Direction { Minimize, Maximize };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

enum class Category { Theory, Implementation };
enum class Severity { Error, Warning };

std::string to_string(Category c);
std::string to_string(Severity s);

/// Interval with independently open/closed endpoints; infinite ends allowed.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = false;
    bool hi_open = false;

    static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval open_closed(double lo, double hi) { return {lo, hi, true, false}; }
    static Interval closed_open(double lo, double hi) { return {lo, hi, false, true}; }

    bool contains(double v) const {
        if (lo_open ? !(v > lo) : !(v >= lo)) return false;
        if (hi_open ? !(v < hi) : !(v <= hi)) return false;
        return true;
    }

    /// "[0.0, 1.0]", "(0.0, inf)", "[0.5, inf)"
    std::string render() const;
};

/// One constraint-check finding.
struct Violation {
    std::string field;
    double value = 0.0;
    Interval bounds;
    Category category = Category::Theory;
    Severity severity = Severity::Error;

    /// "Config.<field>: <value> ∉ <interval> (<Category>, <severity>)"
    std::string message() const;
};

bool has_errors(const std::vector<Violation>& v);

/// Ordered name -> value assignment of environmental conditions.
class Conditions {
public:
    Conditions() = default;
    Conditions(std::initializer_list<std::pair<std::string, double>> init);

    void set(const std::string& name, double value);
    bool has(const std::string& name) const;
    double at(const std::string& name) const;
    double get_or(const std::string& name, double fallback) const;

    const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

/// Problem metadata: identity, design space, objectives and their
/// directions, condition defaults.
struct ProblemSpec {
    std::string problem_id;
    int version = 0;
    DesignSpace design_space;
    std::vector<std::pair<std::string, Direction>> objectives;
    Conditions condition_defaults;
    std::optional<std::string> dataset_path;

    /// Canonical id with the version suffix, e.g. "beams2d/v0".
    std::string id() const { return problem_id + "/v" + std::to_string(version); }

    Direction objective_direction(const std::string& name) const;

    /// Checks name uniqueness and version sanity; throws on violation.
    void validate() const;

    /// Overlays user overrides on the defaults. Unknown names throw
    /// std::invalid_argument (distinct from constraint Violations).
    Conditions merge_conditions(const Conditions& overrides) const;
};

/// Per-iteration record of an optimizer run.
struct OptHistory {
    std::vector<Eigen::VectorXd> objective_values;
    std::vector<Design> designs;  // optional snapshots; empty unless requested
    bool converged = false;

    int iterations() const { return static_cast<int>(objective_values.size()); }
};

}  // namespace designbench
