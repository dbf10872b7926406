#include "infodesign/batch.hpp"

namespace infodesign {

namespace {

// Runs body(i) for i in [0, n). Exceptions are captured per index so an OpenMP region
// never unwinds; the first one by index is rethrown.
template <class Body>
void for_each_index(std::size_t n, Execution mode, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
    if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<WorstCase> worst_case_per_action(const DecisionProblem& p, const InformationStructure& e,
                                             Execution mode) {
    const IdentifiedSet set = identified_set(p, e);
    std::vector<WorstCase> out(p.num_actions());
    for_each_index(p.num_actions(), mode, [&](std::size_t a) {
        out[a] = worst_case(p, set, MixedAction::pure(p.num_actions(), a));
    });
    return out;
}

std::vector<bool> implementable_actions(const DecisionProblem& p, Execution mode) {
    std::vector<char> flags(p.num_actions(), 0);
    for_each_index(p.num_actions(), mode, [&](std::size_t a) {
        flags[a] = is_implementable(p, MixedAction::pure(p.num_actions(), a)) ? 1 : 0;
    });
    return {flags.begin(), flags.end()};
}

std::vector<ImplementationSlot> implement_many(const DecisionProblem& p, const std::vector<MixedAction>& actions,
                                               Execution mode) {
    std::vector<ImplementationSlot> out(actions.size());
    for_each_index(actions.size(), mode, [&](std::size_t i) {
        try {
            out[i].result = implementing_structure(p, actions[i]);
        } catch (...) {
            out[i].error = std::current_exception();
        }
    });
    return out;
}

std::vector<SaddleCertificate> maxmin_many(const DecisionProblem& p, const std::vector<InformationStructure>& structures,
                                           Execution mode) {
    std::vector<std::optional<SaddleCertificate>> slots(structures.size());
    for_each_index(structures.size(), mode, [&](std::size_t i) { slots[i] = maxmin(p, structures[i]); });
    std::vector<SaddleCertificate> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace infodesign
