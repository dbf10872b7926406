#pragma once

#include <exception>
#include <optional>
#include <vector>

#include "infodesign/design.hpp"
#include "infodesign/solver.hpp"

namespace infodesign {

/// Serial is the reference path; Parallel distributes independent LPs over OpenMP threads
/// and must produce identical results.
enum class Execution { Serial, Parallel };

/// worst_case(p, e, pure a) for every action a, in action order.
std::vector<WorstCase> worst_case_per_action(const DecisionProblem& p, const InformationStructure& e,
                                             Execution mode = Execution::Parallel);

/// is_implementable for every pure action, in action order.
std::vector<bool> implementable_actions(const DecisionProblem& p, Execution mode = Execution::Parallel);

/// One slot per input action: the implementation, or the exception it raised.
struct ImplementationSlot {
    std::optional<Implementation> result;
    std::exception_ptr error;
};

std::vector<ImplementationSlot> implement_many(const DecisionProblem& p, const std::vector<MixedAction>& actions,
                                               Execution mode = Execution::Parallel);

/// maxmin(p, e) for every structure, in input order. Exceptions are rethrown for the
/// lowest failing index.
std::vector<SaddleCertificate> maxmin_many(const DecisionProblem& p, const std::vector<InformationStructure>& structures,
                                           Execution mode = Execution::Parallel);

}  // namespace infodesign
