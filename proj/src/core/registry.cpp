#include "designbench/core/registry.hpp"

namespace designbench {

Registry& Registry::instance() {
    static Registry registry;
    return registry;
}

void Registry::add(const std::string& id, ProblemFactory factory) {
    factories_[id] = std::move(factory);
}

namespace {
std::string strip_prefix(const std::string& id) {
    const std::string prefix = "problems/";
    if (id.rfind(prefix, 0) == 0) return id.substr(prefix.size());
    return id;
}
}  // namespace

std::unique_ptr<Problem> Registry::create(const std::string& id, const ProblemParams& params) const {
    const auto it = factories_.find(strip_prefix(id));
    if (it == factories_.end()) throw RegistryError("unknown problem id: " + id);
    return it->second(params);
}

bool Registry::contains(const std::string& id) const {
    return factories_.count(strip_prefix(id)) > 0;
}

std::vector<std::string> Registry::ids() const {
    std::vector<std::string> out;
    for (const auto& [id, f] : factories_) out.push_back(id);
    return out;
}

}  // namespace designbench
