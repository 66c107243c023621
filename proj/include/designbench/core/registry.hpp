#pragma once

#include "designbench/core/problem.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace designbench {

/// Thrown when a problem id does not resolve.
class RegistryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problem construction parameters (size overrides and the like), all reals.
using ProblemParams = std::map<std::string, double>;

using ProblemFactory = std::function<std::unique_ptr<Problem>(const ProblemParams&)>;

/// Versioned problem registry. Ids follow "<name>/v<N>"; the
/// "problems/<name>/v<N>" form is accepted as an alias.
class Registry {
public:
    static Registry& instance();

    void add(const std::string& id, ProblemFactory factory);
    std::unique_ptr<Problem> create(const std::string& id, const ProblemParams& params = {}) const;
    bool contains(const std::string& id) const;
    std::vector<std::string> ids() const;

private:
    std::map<std::string, ProblemFactory> factories_;
};

/// Registers every built-in problem; idempotent.
void register_builtin_problems();

}  // namespace designbench
