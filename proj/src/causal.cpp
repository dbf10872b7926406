#include "infodesign/causal.hpp"

#include <algorithm>
#include <set>

#include "infodesign/error.hpp"

namespace infodesign {

TreatmentModel::TreatmentModel(Vector outcomes, std::vector<Covariate> covariates, std::vector<std::string> treatments,
                               Matrix assignment, Vector mu)
    : outcomes_(std::move(outcomes)), covariates_(std::move(covariates)), treatments_(std::move(treatments)),
      assignment_(std::move(assignment)), mu_(std::move(mu)) {
    if (outcomes_.size() < 2) throw InvalidArgument("treatment model needs at least two outcomes");
    if (std::set<Scalar>(outcomes_.begin(), outcomes_.end()).size() != outcomes_.size())
        throw InvalidArgument("outcome values must be distinct");
    if (treatments_.size() < 2) throw InvalidArgument("treatment model needs at least two treatments");
    if (covariates_.empty()) throw InvalidArgument("treatment model needs at least one covariate");
    std::set<std::string> names{"Y", "T"};
    for (const auto& c : covariates_) {
        if (c.values.size() < 2) throw InvalidArgument("covariate " + c.name + " needs at least two values");
        if (!names.insert(c.name).second) throw InvalidArgument("duplicate variable name " + c.name);
        cells_ *= c.values.size();
    }
    if (assignment_.rows() != cells_ || assignment_.cols() != treatments_.size())
        throw DimensionMismatch("assignment needs one row per covariate cell and one column per treatment");
    if (mu_.size() != num_states()) throw DimensionMismatch("mu needs one entry per state");
    if (!is_probability_vector(mu_)) throw InvalidArgument("mu is not a probability vector");
}

std::vector<std::size_t> TreatmentModel::cell_values(std::size_t cell) const {
    std::vector<std::size_t> v(covariates_.size());
    for (std::size_t j = covariates_.size(); j-- > 0;) {
        v[j] = cell % covariates_[j].values.size();
        cell /= covariates_[j].values.size();
    }
    return v;
}

std::vector<std::string> TreatmentModel::state_labels() const {
    std::vector<std::string> out;
    out.reserve(num_states());
    for (std::size_t y = 0; y < num_outcomes(); ++y)
        for (std::size_t cell = 0; cell < cells_; ++cell) {
            auto xv = cell_values(cell);
            for (std::size_t t = 0; t < num_treatments(); ++t) {
                std::string s = "Y=" + to_string(outcomes_[y]);
                for (std::size_t j = 0; j < covariates_.size(); ++j)
                    s += "," + covariates_[j].name + "=" + covariates_[j].values[xv[j]];
                s += ",T=" + treatments_[t];
                out.push_back(std::move(s));
            }
        }
    return out;
}

Vector TreatmentModel::covariate_marginal() const {
    Vector mx(cells_, Scalar(0));
    for (std::size_t y = 0; y < num_outcomes(); ++y)
        for (std::size_t cell = 0; cell < cells_; ++cell)
            for (std::size_t t = 0; t < num_treatments(); ++t) mx[cell] += mu_[state_index(y, cell, t)];
    return mx;
}

std::optional<std::size_t> irrelevant_covariate(const TreatmentModel& m) {
    const auto& cov = m.covariates();
    for (std::size_t j = 0; j < cov.size(); ++j) {
        // Stride of covariate j in the cell index.
        std::size_t stride = 1;
        for (std::size_t k = j + 1; k < cov.size(); ++k) stride *= cov[k].values.size();
        bool constant = true;
        for (std::size_t cell = 0; cell < m.num_cells() && constant; ++cell) {
            const std::size_t base = cell - ((cell / stride) % cov[j].values.size()) * stride;
            for (std::size_t t = 0; t < m.num_treatments(); ++t)
                if (m.assignment()(cell, t) != m.assignment()(base, t)) constant = false;
        }
        if (constant) return j;
    }
    return std::nullopt;
}

DecisionProblem build_treatment_problem(const TreatmentModel& m, TreatmentBuildOptions options) {
    const auto& pa = m.assignment();
    for (std::size_t cell = 0; cell < m.num_cells(); ++cell) {
        for (std::size_t t = 0; t < m.num_treatments(); ++t)
            if (sgn(pa(cell, t)) <= 0 || pa(cell, t) >= 1)
                throw InteriorSupportViolation("assignment probability outside (0,1) in cell " + std::to_string(cell));
        if (sum(pa.row(cell)) != 1)
            throw InteriorSupportViolation("assignment probabilities do not sum to one in cell " + std::to_string(cell));
    }
    if (options.require_irrelevant_covariate && !irrelevant_covariate(m))
        throw NoIrrelevantCovariate("assignment depends on every covariate; add an irrelevant signal");

    const std::size_t n = m.num_states();
    const std::size_t nt = m.num_treatments();
    Matrix utility(nt, n);
    for (std::size_t y = 0; y < m.num_outcomes(); ++y)
        for (std::size_t cell = 0; cell < m.num_cells(); ++cell)
            for (std::size_t t = 0; t < nt; ++t)
                utility(t, m.state_index(y, cell, t)) = m.outcomes()[y] / pa(cell, t);

    Matrix eq(0, n);
    Vector rhs;
    for (std::size_t cell = 0; cell < m.num_cells(); ++cell)
        for (std::size_t t = 0; t < nt; ++t) {
            Vector row(n, Scalar(0));
            for (std::size_t y = 0; y < m.num_outcomes(); ++y) {
                for (std::size_t tau = 0; tau < nt; ++tau) row[m.state_index(y, cell, tau)] -= pa(cell, t);
                row[m.state_index(y, cell, t)] += 1;
            }
            eq.append_row(row);
            rhs.push_back(Scalar(0));
        }

    PriorPolytope priors(n, std::move(eq), std::move(rhs), Matrix(0, n), {}, m.mu());
    if (!priors.contains(m.mu())) throw AssignmentMismatch("mu's conditional treatment law differs from the assignment");

    std::vector<std::string> actions = m.treatments();
    return DecisionProblem(m.state_labels(), std::move(actions), std::move(utility), m.mu(), std::move(priors));
}

TreatmentModel add_irrelevant_signal(const TreatmentModel& m, const std::string& name) {
    auto covariates = m.covariates();
    covariates.push_back(Covariate{name, {"0", "1"}});
    const std::size_t cells = m.num_cells() * 2;
    Matrix assignment(cells, m.num_treatments());
    for (std::size_t cell = 0; cell < cells; ++cell)
        for (std::size_t t = 0; t < m.num_treatments(); ++t) assignment(cell, t) = m.assignment()(cell / 2, t);

    Vector mu(m.num_states() * 2);
    const std::size_t nt = m.num_treatments();
    for (std::size_t y = 0; y < m.num_outcomes(); ++y)
        for (std::size_t cell = 0; cell < cells; ++cell)
            for (std::size_t t = 0; t < nt; ++t)
                mu[(y * cells + cell) * nt + t] = m.mu()[m.state_index(y, cell / 2, t)] / 2;
    return TreatmentModel(m.outcomes(), std::move(covariates), m.treatments(), std::move(assignment), std::move(mu));
}

Scalar counterfactual_mean(const DecisionProblem& p, std::size_t treatment, std::span<const Scalar> nu) {
    return payoff(MixedAction::pure(p.num_actions(), treatment), nu, p);
}

MarginalPrior prior_from_marginals(const TreatmentModel& m, const Matrix& pi) {
    if (pi.rows() != m.num_treatments() || pi.cols() != m.num_outcomes())
        throw DimensionMismatch("outcome laws need one row per treatment and one column per outcome");
    for (std::size_t t = 0; t < pi.rows(); ++t)
        if (!is_probability_vector(pi.row(t))) throw InvalidArgument("outcome law for a treatment is not a distribution");

    const Vector mx = m.covariate_marginal();
    MarginalPrior out;
    out.nu.assign(m.num_states(), Scalar(0));
    for (std::size_t y = 0; y < m.num_outcomes(); ++y)
        for (std::size_t cell = 0; cell < m.num_cells(); ++cell)
            for (std::size_t t = 0; t < m.num_treatments(); ++t)
                out.nu[m.state_index(y, cell, t)] = pi(t, y) * m.assignment()(cell, t) * mx[cell];
    out.payoffs = pi.apply(m.outcomes());

    const auto p = build_treatment_problem(m, {.require_irrelevant_covariate = false});
    if (!p.priors().contains(out.nu)) throw Error("constructed prior left the prior set");
    for (std::size_t a = 0; a < m.num_treatments(); ++a)
        if (counterfactual_mean(p, a, out.nu) != out.payoffs[a]) throw Error("constructed prior has the wrong payoffs");
    return out;
}

Matrix marginals_for_payoffs(const TreatmentModel& m, std::span<const Scalar> targets) {
    if (targets.size() != m.num_treatments()) throw DimensionMismatch("one target payoff per treatment");
    const auto& ys = m.outcomes();
    const auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
    const auto lo = static_cast<std::size_t>(lo_it - ys.begin());
    const auto hi = static_cast<std::size_t>(hi_it - ys.begin());
    Matrix pi(m.num_treatments(), m.num_outcomes());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        if (targets[t] < ys[lo] || targets[t] > ys[hi])
            throw InvalidArgument("target payoff outside the outcome range");
        Scalar w = (targets[t] - ys[lo]) / (ys[hi] - ys[lo]);
        pi(t, hi) = w;
        pi(t, lo) = 1 - w;
    }
    return pi;
}

Implementation implement_treatment(const TreatmentModel& m, const MixedAction& alpha) {
    const auto p = build_treatment_problem(m);
    if (alpha.size() != p.num_actions()) throw DimensionMismatch("mixed action length differs from treatment count");

    const auto support = alpha.support();
    Scalar best_worst = counterfactual_mean(p, support.front(), m.mu());
    for (auto t : support) best_worst = std::min(best_worst, counterfactual_mean(p, t, m.mu()));

    const Scalar y_min = *std::min_element(m.outcomes().begin(), m.outcomes().end());
    Vector targets(m.num_treatments(), y_min);
    for (auto t : support) targets[t] = best_worst;

    const auto prior = prior_from_marginals(m, marginals_for_payoffs(m, targets));
    return implement_with_prior(p, alpha, prior.nu);
}

namespace {

struct Variable {
    std::string name;
    std::size_t size;
};

std::vector<Variable> variables_of(const TreatmentModel& m) {
    std::vector<Variable> v{{"Y", m.num_outcomes()}};
    for (const auto& c : m.covariates()) v.push_back({c.name, c.values.size()});
    v.push_back({"T", m.num_treatments()});
    return v;
}

std::vector<bool> selected_variables(const TreatmentModel& m, const MarginalSpec& spec) {
    const auto vars = variables_of(m);
    std::vector<bool> chosen(vars.size(), false);
    for (const auto& name : spec.variables) {
        auto it = std::find_if(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == name; });
        if (it == vars.end()) throw InvalidArgument("unknown variable " + name);
        const auto idx = static_cast<std::size_t>(it - vars.begin());
        if (chosen[idx]) throw InvalidArgument("variable listed twice: " + name);
        chosen[idx] = true;
    }
    const auto count = std::count(chosen.begin(), chosen.end(), true);
    if (count == 0 || static_cast<std::size_t>(count) == vars.size())
        throw EmptyOrFullVariableSet("marginal structures disclose a nonempty strict subset of the variables");
    return chosen;
}

std::string value_label(const TreatmentModel& m, std::size_t var, std::size_t value) {
    if (var == 0) return to_string(m.outcomes()[value]);
    if (var == m.covariates().size() + 1) return m.treatments()[value];
    return m.covariates()[var - 1].values[value];
}

}  // namespace

InformationStructure marginal_structure(const TreatmentModel& m, const MarginalSpec& spec) {
    const auto chosen = selected_variables(m, spec);
    const auto vars = variables_of(m);

    // Mixed-radix index of ω restricted to the chosen variables, state order preserved.
    std::size_t num_messages = 1;
    for (std::size_t v = 0; v < vars.size(); ++v)
        if (chosen[v]) num_messages *= vars[v].size;

    std::vector<std::string> labels(num_messages);
    Matrix e(num_messages, m.num_states());
    for (std::size_t y = 0; y < m.num_outcomes(); ++y)
        for (std::size_t cell = 0; cell < m.num_cells(); ++cell) {
            const auto xv = m.cell_values(cell);
            for (std::size_t t = 0; t < m.num_treatments(); ++t) {
                std::vector<std::size_t> values{y};
                values.insert(values.end(), xv.begin(), xv.end());
                values.push_back(t);
                std::size_t msg = 0;
                std::string label;
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    if (!chosen[v]) continue;
                    msg = msg * vars[v].size + values[v];
                    if (!label.empty()) label += ",";
                    label += vars[v].name + "=" + value_label(m, v, values[v]);
                }
                labels[msg] = label;
                e(msg, m.state_index(y, cell, t)) = 1;
            }
        }
    return InformationStructure(std::move(labels), std::move(e));
}

MarginalReport check_marginal_not_maximal(const TreatmentModel& m, const MarginalSpec& spec) {
    const auto chosen = selected_variables(m, spec);
    const auto vars = variables_of(m);
    const auto e = marginal_structure(m, spec);
    MarginalReport r;
    r.kernel_dim = kernel_of(e).subspace.dim();
    r.bound = 0;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (chosen[v]) continue;
        Scalar b = Scalar(vars[v].size - 1, vars[v].size) * Scalar(m.num_states());
        if (b > r.bound) r.bound = b;
    }
    r.not_maximal = r.kernel_dim > 1;
    return r;
}

TreatmentModel motivating_example_base() {
    Matrix assignment = Matrix::from_rows({{Scalar(4, 5), Scalar(1, 5)}, {Scalar(1, 5), Scalar(4, 5)}});
    // (Y, X, T) lexicographic: Y=0 block then Y=1 block.
    Vector mu{Scalar(2, 5), Scalar(1, 10), Scalar(1, 20), Scalar(3, 10),
              Scalar(0), Scalar(0), Scalar(1, 20), Scalar(1, 10)};
    return TreatmentModel({Scalar(0), Scalar(1)}, {Covariate{"X", {"0", "1"}}}, {"0", "1"}, std::move(assignment),
                          std::move(mu));
}

TreatmentModel motivating_example() { return add_irrelevant_signal(motivating_example_base()); }

Vector motivating_worst_case_prior() {
    return {Scalar(7, 20), Scalar(1, 10), Scalar(1, 10), Scalar(3, 10), Scalar(1, 20), Scalar(0), Scalar(0), Scalar(1, 10)};
}

}  // namespace infodesign
