#include "infodesign/model.hpp"

#include <algorithm>

#include "infodesign/error.hpp"

namespace infodesign {

namespace {

void check_block(const Matrix& m, const Vector& rhs, std::size_t dim, const char* what) {
    if (m.rows() != rhs.size()) throw DimensionMismatch(std::string(what) + ": rhs length differs from row count");
    if (m.rows() > 0 && m.cols() != dim) throw DimensionMismatch(std::string(what) + ": row length differs from state count");
}

bool all_zero(std::span<const Scalar> v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// PriorPolytope

PriorPolytope::PriorPolytope(std::size_t dimension, Matrix equalities, Vector eq_rhs, Matrix inequalities,
                             Vector le_rhs, bool)
    : dimension_(dimension), eq_(std::move(equalities)), eq_rhs_(std::move(eq_rhs)), le_(std::move(inequalities)),
      le_rhs_(std::move(le_rhs)) {
    if (dimension_ == 0) throw InvalidArgument("prior set needs at least one state");
    check_block(eq_, eq_rhs_, dimension_, "prior equalities");
    check_block(le_, le_rhs_, dimension_, "prior inequalities");
    if (eq_.rows() == 0) eq_ = Matrix(0, dimension_);
    if (le_.rows() == 0) le_ = Matrix(0, dimension_);
}

PriorPolytope::PriorPolytope(std::size_t dimension, Matrix equalities, Vector eq_rhs, Matrix inequalities,
                             Vector le_rhs, const std::optional<Vector>& witness)
    : PriorPolytope(dimension, std::move(equalities), std::move(eq_rhs), std::move(inequalities), std::move(le_rhs),
                    true) {
    if (witness && contains(*witness)) return;
    if (!feasible_point(as_program()).optimal()) throw InvalidArgument("prior set is empty");
}

PriorPolytope PriorPolytope::simplex(std::size_t dimension) {
    return PriorPolytope(dimension, Matrix(0, dimension), {}, Matrix(0, dimension), {}, true);
}

bool PriorPolytope::contains(std::span<const Scalar> nu) const {
    if (nu.size() != dimension_ || !is_probability_vector(nu)) return false;
    for (std::size_t i = 0; i < eq_.rows(); ++i)
        if (dot(eq_.row(i), nu) != eq_rhs_[i]) return false;
    for (std::size_t i = 0; i < le_.rows(); ++i)
        if (dot(le_.row(i), nu) > le_rhs_[i]) return false;
    return true;
}

LinearProgram PriorPolytope::as_program(Sense sense) const {
    auto lp = LinearProgram::nonnegative(dimension_, sense);
    lp.add_equality(Vector(dimension_, Scalar(1)), Scalar(1));
    for (std::size_t i = 0; i < eq_.rows(); ++i) lp.add_equality(eq_.row(i), eq_rhs_[i]);
    for (std::size_t i = 0; i < le_.rows(); ++i) lp.add_inequality(le_.row(i), le_rhs_[i]);
    return lp;
}

// ---------------------------------------------------------------------------
// MixedAction

MixedAction::MixedAction(Vector weights) : weights_(std::move(weights)) {
    if (!is_probability_vector(weights_)) throw InvalidArgument("mixed action weights must be nonnegative and sum to 1");
}

MixedAction MixedAction::pure(std::size_t num_actions, std::size_t action) {
    if (action >= num_actions) throw InvalidArgument("pure action index out of range");
    return MixedAction(unit_vector(num_actions, action));
}

MixedAction MixedAction::uniform(std::size_t num_actions) {
    if (num_actions == 0) throw InvalidArgument("uniform action over an empty set");
    return MixedAction(Vector(num_actions, Scalar(1, num_actions)));
}

std::vector<std::size_t> MixedAction::support() const {
    std::vector<std::size_t> s;
    for (std::size_t a = 0; a < weights_.size(); ++a)
        if (sgn(weights_[a]) > 0) s.push_back(a);
    return s;
}

std::optional<std::size_t> MixedAction::pure_action() const {
    auto s = support();
    if (s.size() == 1) return s.front();
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// DecisionProblem

DecisionProblem::DecisionProblem(std::vector<std::string> states, std::vector<std::string> actions, Matrix utility,
                                 Vector mu, PriorPolytope priors)
    : states_(std::move(states)), actions_(std::move(actions)), utility_(std::move(utility)), mu_(std::move(mu)),
      priors_(std::move(priors)) {
    if (states_.empty()) throw InvalidArgument("decision problem needs at least one state");
    if (actions_.empty()) throw InvalidArgument("decision problem needs at least one action");
    if (utility_.rows() != actions_.size() || utility_.cols() != states_.size())
        throw DimensionMismatch("utility must have one row per action and one column per state");
    if (mu_.size() != states_.size()) throw DimensionMismatch("mu must have one entry per state");
    if (priors_.dimension() != states_.size()) throw DimensionMismatch("prior set dimension differs from state count");
    if (!is_probability_vector(mu_)) throw InvalidArgument("mu is not a probability vector");
    if (!priors_.contains(mu_)) throw InvalidArgument("mu does not belong to the prior set");
}

std::optional<std::size_t> DecisionProblem::action_index(const std::string& label) const {
    auto it = std::find(actions_.begin(), actions_.end(), label);
    if (it == actions_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - actions_.begin());
}

std::optional<std::size_t> DecisionProblem::state_index(const std::string& label) const {
    auto it = std::find(states_.begin(), states_.end(), label);
    if (it == states_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

// ---------------------------------------------------------------------------
// InformationStructure

InformationStructure::InformationStructure(std::vector<std::string> messages, Matrix experiment)
    : messages_(std::move(messages)), experiment_(std::move(experiment)) {
    if (experiment_.rows() != messages_.size()) throw DimensionMismatch("experiment needs one row per message");
    if (messages_.empty()) throw InvalidArgument("information structure needs at least one message");
    for (std::size_t c = 0; c < experiment_.cols(); ++c) {
        if (!is_probability_vector(experiment_.column(c)))
            throw InvalidArgument("experiment column " + std::to_string(c) + " is not a probability vector");
    }
}

std::vector<std::string> message_labels(std::size_t count) {
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back("m" + std::to_string(i));
    return out;
}

InformationStructure InformationStructure::identity(std::size_t num_states) {
    return InformationStructure(message_labels(num_states), Matrix::identity(num_states));
}

InformationStructure InformationStructure::single_message(std::size_t num_states) {
    Matrix m(1, num_states);
    for (std::size_t c = 0; c < num_states; ++c) m(0, c) = 1;
    return InformationStructure(message_labels(1), std::move(m));
}

KernelReport kernel_of(const InformationStructure& e) {
    auto k = nullspace(e.experiment());
    const auto d = k.dim();
    return KernelReport{std::move(k), d == 0, d <= 1};
}

// ---------------------------------------------------------------------------
// IdentifiedSet

IdentifiedSet::IdentifiedSet(const DecisionProblem& p, const InformationStructure& e)
    : base_(p.priors()), mu_(p.mu()), pushforward_(push_forward(e, p.mu())), experiment_(e),
      kernel_(nullspace(e.experiment())) {}

bool IdentifiedSet::contains(std::span<const Scalar> nu) const {
    return base_.contains(nu) && push_forward(experiment_, nu) == pushforward_;
}

LinearProgram IdentifiedSet::as_program(Sense sense) const {
    auto lp = base_.as_program(sense);
    const auto& e = experiment_.experiment();
    for (std::size_t s = 0; s < e.rows(); ++s) lp.add_equality(e.row(s), pushforward_[s]);
    return lp;
}

LinearProgram IdentifiedSet::kernel_program(Sense sense) const {
    const std::size_t n = mu_.size();
    const std::size_t k = kernel_.dim();
    const Matrix basis = kernel_.as_rows();  // k × n
    auto lp = LinearProgram::free(k, sense);

    // Coefficients of ν_ω in z: column ω of the kernel basis.
    auto through = [&](std::span<const Scalar> row) {
        Vector coeff(k, Scalar(0));
        for (std::size_t i = 0; i < k; ++i) coeff[i] = dot(basis.row(i), row);
        return coeff;
    };

    for (std::size_t w = 0; w < n; ++w) {
        Vector coeff(k);
        for (std::size_t i = 0; i < k; ++i) coeff[i] = -basis(i, w);
        if (!all_zero(coeff)) lp.add_inequality(coeff, mu_[w]);
    }
    const auto& eq = base_.equalities();
    for (std::size_t r = 0; r < eq.rows(); ++r) {
        auto coeff = through(eq.row(r));
        if (!all_zero(coeff)) lp.add_equality(coeff, base_.eq_rhs()[r] - dot(eq.row(r), mu_));
    }
    const auto& le = base_.inequalities();
    for (std::size_t r = 0; r < le.rows(); ++r) {
        auto coeff = through(le.row(r));
        if (!all_zero(coeff)) lp.add_inequality(coeff, base_.le_rhs()[r] - dot(le.row(r), mu_));
    }
    return lp;
}

Vector IdentifiedSet::point(std::span<const Scalar> z) const {
    if (z.size() != kernel_.dim()) throw DimensionMismatch("kernel coordinates: length mismatch");
    Vector nu = mu_;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (sgn(z[i]) == 0) continue;
        const auto& b = kernel_.basis()[i];
        for (std::size_t w = 0; w < nu.size(); ++w) nu[w] += z[i] * b[w];
    }
    return nu;
}

// ---------------------------------------------------------------------------
// Free functions

Vector payoff_vector(const MixedAction& alpha, const DecisionProblem& p) {
    if (alpha.size() != p.num_actions()) throw DimensionMismatch("mixed action length differs from action count");
    return p.utility().apply_transpose(alpha.weights());
}

Scalar payoff(const MixedAction& alpha, std::span<const Scalar> nu, const DecisionProblem& p) {
    if (nu.size() != p.num_states()) throw DimensionMismatch("prior length differs from state count");
    return dot(payoff_vector(alpha, p), nu);
}

Vector pure_payoffs(std::span<const Scalar> nu, const DecisionProblem& p) {
    if (nu.size() != p.num_states()) throw DimensionMismatch("prior length differs from state count");
    return p.utility().apply(nu);
}

Vector push_forward(const InformationStructure& e, std::span<const Scalar> nu) {
    if (nu.size() != e.num_states()) throw DimensionMismatch("prior length differs from experiment columns");
    return e.experiment().apply(nu);
}

IdentifiedSet identified_set(const DecisionProblem& p, const InformationStructure& e) {
    if (e.num_states() != p.num_states()) throw DimensionMismatch("experiment columns differ from state count");
    return IdentifiedSet(p, e);
}

PayoffClasses payoff_equivalence_classes(const DecisionProblem& p) {
    PayoffClasses out;
    std::vector<Vector> columns;
    for (std::size_t w = 0; w < p.num_states(); ++w) {
        Vector col = p.utility().column(w);
        auto it = std::find(columns.begin(), columns.end(), col);
        if (it == columns.end()) {
            columns.push_back(std::move(col));
            out.classes.push_back({w});
        } else {
            out.classes[static_cast<std::size_t>(it - columns.begin())].push_back(w);
        }
    }
    out.every_class_paired =
        std::all_of(out.classes.begin(), out.classes.end(), [](const auto& c) { return c.size() >= 2; });
    return out;
}

}  // namespace infodesign
