#ifndef JETFORGE_REGISTRY_HPP
#define JETFORGE_REGISTRY_HPP

#include "jetforge/model.hpp"

namespace jetforge {

const EquationModel& builtin(const std::string& id);
std::vector<std::string> builtinIds();

// Replace every derivative atom of one function symbol by the same
// derivative of another (used to pair symbols in bracket checks).
Expr renameFunc(const Expr& e, const std::string& from, const std::string& to, const JetContext& ctx);

}  // namespace jetforge

#endif
