// Serial vs OpenMP timing of the batch sweeps on the treatment example.
// Usage: bench_batch [repetitions]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "infodesign/batch.hpp"
#include "infodesign/causal.hpp"

using namespace infodesign;

namespace {

template <class F>
double seconds(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<InformationStructure> marginal_structures(const TreatmentModel& m) {
    const std::vector<std::string> names{"Y", "X", "S", "T"};
    std::vector<InformationStructure> out;
    for (unsigned mask = 1; mask + 1 < (1u << names.size()); ++mask) {
        MarginalSpec spec;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (mask & (1u << i)) spec.variables.push_back(names[i]);
        out.push_back(marginal_structure(m, spec));
    }
    return out;
}

std::vector<MixedAction> action_grid(std::size_t steps) {
    std::vector<MixedAction> out;
    for (std::size_t k = 0; k <= steps; ++k) {
        const Scalar w = Scalar(static_cast<long>(k)) / static_cast<long>(steps);
        out.push_back(MixedAction({1 - w, w}));
    }
    return out;
}

bool report(const std::string& name, double serial, double parallel, bool agree) {
    std::cout << name << ": serial " << serial << " s, parallel " << parallel << " s, speedup "
              << (parallel > 0 ? serial / parallel : 0) << (agree ? "" : "  MISMATCH") << '\n';
    return agree;
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 4;
    const auto m = motivating_example();
    const auto p = build_treatment_problem(m);

    std::vector<InformationStructure> structures;
    for (int r = 0; r < reps; ++r)
        for (auto& e : marginal_structures(m)) structures.push_back(std::move(e));
    const auto actions = action_grid(static_cast<std::size_t>(4 * reps));

    std::vector<SaddleCertificate> s_cert, p_cert;
    const double ms = seconds([&] { s_cert = maxmin_many(p, structures, Execution::Serial); });
    const double mp = seconds([&] { p_cert = maxmin_many(p, structures, Execution::Parallel); });
    bool agree = s_cert.size() == p_cert.size();
    for (std::size_t i = 0; agree && i < s_cert.size(); ++i)
        agree = s_cert[i].value == p_cert[i].value && s_cert[i].alpha_star == p_cert[i].alpha_star;
    bool ok = report("maxmin_many (" + std::to_string(structures.size()) + " structures)", ms, mp, agree);

    std::vector<ImplementationSlot> s_impl, p_impl;
    const double is = seconds([&] { s_impl = implement_many(p, actions, Execution::Serial); });
    const double ip = seconds([&] { p_impl = implement_many(p, actions, Execution::Parallel); });
    agree = s_impl.size() == p_impl.size();
    for (std::size_t i = 0; agree && i < s_impl.size(); ++i)
        agree = s_impl[i].result.has_value() == p_impl[i].result.has_value() &&
                (!s_impl[i].result ||
                 s_impl[i].result->certificate.value == p_impl[i].result->certificate.value);
    ok = report("implement_many (" + std::to_string(actions.size()) + " actions)", is, ip, agree) && ok;

    std::vector<std::vector<WorstCase>> s_wc(structures.size()), p_wc(structures.size());
    const double ws = seconds([&] {
        for (std::size_t i = 0; i < structures.size(); ++i)
            s_wc[i] = worst_case_per_action(p, structures[i], Execution::Serial);
    });
    const double wp = seconds([&] {
        for (std::size_t i = 0; i < structures.size(); ++i)
            p_wc[i] = worst_case_per_action(p, structures[i], Execution::Parallel);
    });
    agree = true;
    for (std::size_t i = 0; i < structures.size(); ++i)
        for (std::size_t a = 0; a < s_wc[i].size(); ++a) agree = agree && s_wc[i][a].value == p_wc[i][a].value;
    ok = report("worst_case_per_action", ws, wp, agree) && ok;
    return ok ? 0 : 1;
}
