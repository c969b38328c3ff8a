// parallel.hpp
// Copyright (c) 2026, phic contributors
// Licensed under the Apache License Version 2.0.
//
// Parallel reduction, complete development and the executable pieces of the
// confluence and standardization arguments.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "phic/term.hpp"

namespace phic {

enum class ParRule { CongObj, CongRho, CongDot, CongApp, DotC, DotPhi, AppC, AppPhi };

const char* to_string(ParRule rule);

struct ParDerivation;
using ParDerivationPtr = std::shared_ptr<const ParDerivation>;

/// A derivation tree for t => t'. Premises are ordered as follows:
/// CongObj has one premise per attached body in source order; CongDot,
/// DotC and DotPhi have the target's premise; CongApp, AppC and AppPhi
/// have the target's premise then the argument's.
struct ParDerivation {
  ParRule rule;
  std::vector<ParDerivationPtr> premises;
};

struct ParStep {
  Term source;
  Term target;
  ParDerivationPtr derivation;
};

/// Replays a derivation from `source`. Returns nothing if a rule's side
/// condition fails or the shape does not match.
std::optional<Term> replay(const Term& source, const ParDerivation& derivation,
                           bool app_phi = false);

struct ParReductSet {
  std::vector<ParStep> steps;  // one representative derivation per target
  bool truncated = false;

  std::vector<Term> terms() const;
  bool contains(const Term& t) const;
};

/// Distinct one-step parallel reducts of `t`, at most `budget` of them.
ParReductSet par_reducts(const Term& t, std::size_t budget, bool app_phi = false);

enum class Verdict { Holds, Fails, Inconclusive };

struct ParCheck {
  Verdict verdict;
  ParDerivationPtr derivation;  // set when verdict is Holds
};

/// Decides from => to. Only the DOT_c case needs to enumerate reducts of an
/// object target; `budget` bounds that enumeration.
ParCheck check_par(const Term& from, const Term& to, std::size_t budget = 4096,
                   bool app_phi = false);

/// Decides the internal parallel reduction from =>_i to.
Verdict check_internal_par(const Term& from, const Term& to, std::size_t budget = 4096,
                           bool app_phi = false);

/// The complete development t+.
Term complete_development(const Term& t, bool app_phi = false);

struct DiamondReport {
  Verdict verdict;
  std::size_t checked = 0;
  Term development;
  std::optional<Term> witness;  // a reduct u with no u => t+
};

/// Checks u => t+ for every parallel reduct u of t.
DiamondReport check_diamond(const Term& t, std::size_t budget, bool app_phi = false);

struct StandardDecomposition {
  Term r;
  std::vector<Term> head_prefix;  // the term after each head step; r is the last
};

/// For t => u, builds t ->h* r =>_i u by following the induction on the
/// derivation. Throws InvalidArgument if u is not a parallel reduct of t.
StandardDecomposition decompose_standard(const Term& t, const Term& u,
                                         std::size_t budget = 4096, bool app_phi = false);

/// Inverse of increment(t, 0): nothing if t has a free ^0.
std::optional<Term> decrement(const Term& t, std::uint32_t cutoff = 0);

}  // namespace phic
