// Semantic rule suite over a ResolvedModel.
#pragma once

#include "ucm/ast.hpp"
#include "ucm/diagnostic.hpp"
#include "ucm/model.hpp"

namespace ucm {

/// Runs every rule below and returns their diagnostics sorted by
/// (file, startOffset, code). Resolution diagnostics are not repeated here.
Diagnostics validate(const ResolvedModel& m);

/// E001 for each missing mandatory clause (scope, level, intention,
/// multiplicity, primary actor, main success scenario; contexts for handlers).
Diagnostics checkRequiredClauses(const UseCaseAst& uc);

/// E002 for each step whose label is not the legal successor of the step
/// before it. Only the given sequence is checked, not nested blocks.
Diagnostics checkStepOrdering(const Scenario& main);
Diagnostics checkStepOrdering(const ExtensionBlock& block);

/// E010: interactions in summary and user-goal use cases must connect
/// System with exactly one declared actor.
Diagnostics checkInteractionEndpoints(const ResolvedModel& m);

/// E005: actors and exceptions must carry a known type.
Diagnostics checkActorTypes(const ResolvedModel& m);

/// E006: multiplicity lower bound must not exceed a bounded upper bound.
Diagnostics checkMultiplicity(const ResolvedModel& m);

/// W001 unhandled occurrence, E007 context never raises the exception,
/// E009 continue after an unhandled exception, E008 raise-step count,
/// W002 declared exception never raised.
Diagnostics checkExceptionRules(const ResolvedModel& m);

/// E008 missing outcome, E011 main scenario not ending in success.
Diagnostics checkOutcomes(const ResolvedModel& m);

/// W003 for non-default modes that no mode switch targets.
Diagnostics checkModeRules(const ResolvedModel& m);

} // namespace ucm
