#pragma once

#include <optional>

#include "kt/proof.hpp"

namespace kt {

struct Budget {
  int depth = 12;         // nesting depth of created nodes / labels
  int node_limit = 400;   // nodes of a single sequent
  long step_limit = 200000;
};

// Backward saturation in DKT + DeepPr(P); the end sequent is the formula alone.
std::optional<Proof> prove_deep(const Formula& goal, const std::vector<PathAxiom>& p, const Budget& b = {});

// Backward saturation in LKT + LabSt(GP); the end sequent is x:goal.
std::optional<Proof> prove_labeled(const Formula& goal, const std::vector<GeneralPathAxiom>& gp, const Budget& b = {});

// prove_deep followed by deep_to_shallow
std::optional<Proof> prove_shallow(const Formula& goal, const std::vector<PathAxiom>& p, const Budget& b = {});

}  // namespace kt
