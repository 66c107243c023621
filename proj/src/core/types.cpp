#include "designbench/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>

namespace designbench {

Eigen::VectorXd flatten_row_major(const Design& d) {
    Eigen::VectorXd out(d.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = 0; j < d.cols(); ++j) out[k++] = d(i, j);
    return out;
}

Design unflatten_row_major(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw std::invalid_argument("unflatten: size mismatch");
    Design d(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) d(i, j) = v[k++];
    return d;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::abs(v) < 1e16) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.1f", v);
        return buf;
    }
    // Shortest %g form that parses back to the same double.
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

DesignSpace DesignSpace::box(double lo, double hi, std::vector<Eigen::Index> shape) {
    DesignSpace s;
    s.lower = Eigen::VectorXd::Constant(1, lo);
    s.upper = Eigen::VectorXd::Constant(1, hi);
    s.shape = std::move(shape);
    s.validate();
    return s;
}

Eigen::Index DesignSpace::size() const {
    return std::accumulate(shape.begin(), shape.end(), Eigen::Index{1},
                           [](Eigen::Index a, Eigen::Index b) { return a * b; });
}

void DesignSpace::validate() const {
    if (shape.empty()) throw std::invalid_argument("DesignSpace: empty shape");
    for (Eigen::Index n : shape)
        if (n <= 0) throw std::invalid_argument("DesignSpace: non-positive shape entry");
    const Eigen::Index n = size();
    if (lower.size() != upper.size())
        throw std::invalid_argument("DesignSpace: bound arrays differ in length");
    if (lower.size() != 1 && lower.size() != n)
        throw std::invalid_argument("DesignSpace: bound length does not match shape product");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(lower_at(i) <= upper_at(i)))
            throw std::invalid_argument("DesignSpace: lower > upper at index " + std::to_string(i));
}

std::string to_string(Direction d) { return d == Direction::Minimize ? "MINIMIZE" : "MAXIMIZE"; }

Direction direction_from_string(const std::string& s) {
    if (s == "MINIMIZE" || s == "minimize") return Direction::Minimize;
    if (s == "MAXIMIZE" || s == "maximize") return Direction::Maximize;
    throw std::invalid_argument("unknown direction: " + s);
}

std::string to_string(Category c) { return c == Category::Theory ? "Theory" : "Implementation"; }

std::string to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::string Interval::render() const {
    std::string s;
    s += lo_open ? '(' : '[';
    s += format_real(lo);
    s += ", ";
    s += format_real(hi);
    s += hi_open ? ')' : ']';
    return s;
}

std::string Violation::message() const {
    return "Config." + field + ": " + format_real(value) + " ∉ " + bounds.render() + " (" +
           to_string(category) + ", " + to_string(severity) + ")";
}

bool has_errors(const std::vector<Violation>& v) {
    return std::any_of(v.begin(), v.end(),
                       [](const Violation& x) { return x.severity == Severity::Error; });
}

Conditions::Conditions(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [name, value] : init) set(name, value);
}

void Conditions::set(const std::string& name, double value) {
    for (auto& [n, v] : entries_) {
        if (n == name) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(name, value);
}

bool Conditions::has(const std::string& name) const {
    for (const auto& [n, v] : entries_)
        if (n == name) return true;
    return false;
}

double Conditions::at(const std::string& name) const {
    for (const auto& [n, v] : entries_)
        if (n == name) return v;
    throw std::invalid_argument("unknown condition: " + name);
}

double Conditions::get_or(const std::string& name, double fallback) const {
    for (const auto& [n, v] : entries_)
        if (n == name) return v;
    return fallback;
}

Direction ProblemSpec::objective_direction(const std::string& name) const {
    for (const auto& [n, d] : objectives)
        if (n == name) return d;
    throw std::invalid_argument("unknown objective: " + name);
}

void ProblemSpec::validate() const {
    if (version < 0) throw std::invalid_argument("ProblemSpec: negative version");
    design_space.validate();
    std::set<std::string> names;
    for (const auto& [n, d] : objectives)
        if (!names.insert(n).second)
            throw std::invalid_argument("ProblemSpec: duplicate objective " + n);
    names.clear();
    for (const auto& [n, v] : condition_defaults.entries())
        if (!names.insert(n).second)
            throw std::invalid_argument("ProblemSpec: duplicate condition " + n);
}

Conditions ProblemSpec::merge_conditions(const Conditions& overrides) const {
    for (const auto& [name, value] : overrides.entries())
        if (!condition_defaults.has(name))
            throw std::invalid_argument("unknown condition '" + name + "' for problem " + id());
    Conditions merged = condition_defaults;
    for (const auto& [name, value] : overrides.entries()) merged.set(name, value);
    return merged;
}

}  // namespace designbench
