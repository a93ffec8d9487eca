#pragma once

#include <optional>
#include <string>

#include "kt/proof.hpp"

namespace kt {

struct TranslationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// SKT + NestSt(GP) -> LKT + LabSt(GP) + {w, c}.  The end sequent becomes
// L_start(X); display steps produce no rules.
Proof shallow_to_labeled(const Proof& p, const CalculusId& c, const Label& start = "x");

// LKT + LabSt(P) + {w, c} -> LKT + LabPr(P) + {w, c}.  Throws ScopeError
// for non-path structural rules.
Proof eliminate_structural(const Proof& p, const CalculusId& c);

// LKT + LabPr(P) + {w, c} over polytree sequents -> DKT + DeepPr(P).
// The start label defaults to the label of the first formula of the end sequent.
Proof labeled_to_deep(const Proof& p, const CalculusId& c, std::optional<Label> start = std::nullopt);

// DKT + DeepPr(P) -> SKT + NestSt(P), same end sequent.
Proof deep_to_shallow(const Proof& p, const CalculusId& c);

Proof pipeline_reverse(const Proof& p, const CalculusId& c, std::optional<Label> start = std::nullopt);

CalculusId target_calculus(const CalculusId& c, Calc kind);

}  // namespace kt
