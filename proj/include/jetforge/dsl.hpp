#ifndef JETFORGE_DSL_HPP
#define JETFORGE_DSL_HPP

#include "jetforge/model.hpp"

namespace jetforge {

// Position-carrying diagnostics for the .jf model language.
struct SyntaxError : std::runtime_error {
  int line, col;
  SyntaxError(int l, int c, const std::string& what)
      : std::runtime_error("syntax error at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": " + what),
        line(l),
        col(c) {}
};
struct SemanticError : std::runtime_error {
  int line, col;
  SemanticError(int l, int c, const std::string& what)
      : std::runtime_error("semantic error at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": " + what),
        line(l),
        col(c) {}
};

// Parse one model document (grammar documented in README / printModel output).
EquationModel parseModel(const std::string& src);

// Canonical document for a model; parseModel(printModel(m)) equals m.
std::string printModel(const EquationModel& m);

// Structural equality over everything the document language carries.
bool modelEquals(const EquationModel& a, const EquationModel& b);

}  // namespace jetforge

#endif
