#include "infodesign/documents.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "infodesign/design.hpp"
#include "infodesign/error.hpp"

namespace infodesign {

namespace {

constexpr const char* kSchemaVersion = "1";

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& at, const std::string& message) const {
        const auto mark = at.Mark();
        if (mark.is_null()) throw ParseError(source_ + ": " + message);
        throw ParseError(source_ + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1) + ": " +
                         message);
    }

    YAML::Node load(const std::string& text) const {
        try {
            return YAML::Load(text);
        } catch (const YAML::Exception& e) {
            throw ParseError(source_ + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                             ": " + e.msg);
        }
    }

    void expect_map(const YAML::Node& n, const std::string& what) const {
        if (!n.IsMap()) fail(n, what + " must be a mapping");
    }

    void only_keys(const YAML::Node& map, std::initializer_list<const char*> allowed) const {
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!ok.count(key)) fail(kv.first, "unknown key '" + key + "'");
        }
    }

    YAML::Node required(const YAML::Node& map, const char* key) const {
        const YAML::Node n = map[key];
        if (!n.IsDefined() || n.IsNull()) fail(map, std::string("missing key '") + key + "'");
        return n;
    }

    Scalar number(const YAML::Node& n) const {
        if (!n.IsScalar()) fail(n, "expected a number");
        try {
            return parse_scalar(n.Scalar());
        } catch (const ParseError& e) {
            fail(n, e.what());
        }
    }

    std::string text(const YAML::Node& n) const {
        if (!n.IsScalar()) fail(n, "expected a string");
        return n.Scalar();
    }

    Vector vector(const YAML::Node& n, std::optional<std::size_t> length = std::nullopt) const {
        if (!n.IsSequence()) fail(n, "expected a list of numbers");
        if (length && n.size() != *length)
            fail(n, "expected " + std::to_string(*length) + " entries, found " + std::to_string(n.size()));
        Vector v;
        for (const auto& x : n) v.push_back(number(x));
        return v;
    }

    std::vector<std::string> labels(const YAML::Node& n) const {
        if (!n.IsSequence()) fail(n, "expected a list of labels");
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (const auto& x : n) {
            out.push_back(text(x));
            if (!seen.insert(out.back()).second) fail(x, "duplicate label '" + out.back() + "'");
        }
        if (out.empty()) fail(n, "label list is empty");
        return out;
    }

    Matrix matrix(const YAML::Node& n, std::size_t rows, std::size_t cols, const std::string& what) const {
        if (!n.IsSequence()) fail(n, what + " must be a list of rows");
        if (n.size() != rows)
            fail(n, what + " needs " + std::to_string(rows) + " rows, found " + std::to_string(n.size()));
        Matrix m(rows, cols);
        std::size_t r = 0;
        for (const auto& row : n) {
            Vector v = vector(row, cols);
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
            ++r;
        }
        return m;
    }

    void check_schema(const YAML::Node& root) const {
        const YAML::Node v = required(root, "schema_version");
        if (text(v) != kSchemaVersion) fail(v, "unsupported schema_version '" + v.Scalar() + "'");
    }

    // Runs a model constructor, anchoring its validation errors at `at`.
    template <class F>
    auto anchored(const YAML::Node& at, F&& build) const -> decltype(build()) {
        try {
            return build();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }

private:
    std::string source_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProblemDocument parse_generic(const Reader& rd, const YAML::Node& root) {
    rd.only_keys(root, {"schema_version", "states", "actions", "utility", "mu", "prior_constraints"});
    auto states = rd.labels(rd.required(root, "states"));
    auto actions = rd.labels(rd.required(root, "actions"));
    const std::size_t n = states.size();
    Matrix u = rd.matrix(rd.required(root, "utility"), actions.size(), n, "utility");
    const YAML::Node mu_node = rd.required(root, "mu");
    Vector mu = rd.vector(mu_node, n);

    Matrix eq(0, n), le(0, n);
    Vector eq_rhs, le_rhs;
    const YAML::Node pc = root["prior_constraints"];
    if (pc.IsDefined() && !pc.IsNull()) {
        rd.expect_map(pc, "prior_constraints");
        rd.only_keys(pc, {"equalities", "inequalities"});
        auto read_rows = [&](const char* key, Matrix& m, Vector& rhs) {
            const YAML::Node list = pc[key];
            if (!list.IsDefined() || list.IsNull()) return;
            if (!list.IsSequence()) rd.fail(list, std::string(key) + " must be a list");
            for (const auto& row : list) {
                rd.expect_map(row, "constraint");
                rd.only_keys(row, {"coefficients", "rhs"});
                m.append_row(rd.vector(rd.required(row, "coefficients"), n));
                rhs.push_back(rd.number(rd.required(row, "rhs")));
            }
        };
        read_rows("equalities", eq, eq_rhs);
        read_rows("inequalities", le, le_rhs);
    }
    PriorPolytope priors = rd.anchored(pc.IsDefined() ? pc : root, [&] {
        return PriorPolytope(n, std::move(eq), std::move(eq_rhs), std::move(le), std::move(le_rhs), mu);
    });
    return ProblemDocument{rd.anchored(mu_node, [&] {
                               return DecisionProblem(std::move(states), std::move(actions), std::move(u), mu,
                                                      std::move(priors));
                           }),
                           std::nullopt};
}

ProblemDocument parse_treatment(const Reader& rd, const YAML::Node& root) {
    rd.only_keys(root, {"schema_version", "treatment"});
    const YAML::Node t = root["treatment"];
    rd.expect_map(t, "treatment");
    rd.only_keys(t, {"outcomes", "covariates", "treatments", "assignment", "mu", "irrelevant_signal"});

    const YAML::Node outcomes_node = rd.required(t, "outcomes");
    Vector outcomes = rd.vector(outcomes_node);
    const YAML::Node cov_node = rd.required(t, "covariates");
    if (!cov_node.IsSequence()) rd.fail(cov_node, "covariates must be a list");
    std::vector<Covariate> covariates;
    std::size_t cells = 1;
    for (const auto& c : cov_node) {
        rd.expect_map(c, "covariate");
        rd.only_keys(c, {"name", "values"});
        covariates.push_back({rd.text(rd.required(c, "name")), rd.labels(rd.required(c, "values"))});
        cells *= covariates.back().values.size();
    }
    auto treatments = rd.labels(rd.required(t, "treatments"));
    Matrix assignment = rd.matrix(rd.required(t, "assignment"), cells, treatments.size(), "assignment");
    const YAML::Node mu_node = rd.required(t, "mu");
    Vector mu = rd.vector(mu_node, outcomes.size() * cells * treatments.size());

    TreatmentModel model = rd.anchored(t, [&] {
        return TreatmentModel(std::move(outcomes), std::move(covariates), std::move(treatments), std::move(assignment),
                              std::move(mu));
    });
    const YAML::Node signal = t["irrelevant_signal"];
    if (signal.IsDefined() && !signal.IsNull()) model = rd.anchored(signal, [&] { return add_irrelevant_signal(model, rd.text(signal)); });
    DecisionProblem problem = rd.anchored(t, [&] { return build_treatment_problem(model); });
    return ProblemDocument{std::move(problem), std::move(model)};
}

}  // namespace

ProblemDocument parse_problem(const std::string& text, const std::string& source) {
    Reader rd(source);
    const YAML::Node root = rd.load(text);
    rd.expect_map(root, "problem document");
    rd.check_schema(root);
    if (root["treatment"].IsDefined()) {
        for (const char* key : {"states", "actions", "utility", "mu", "prior_constraints"})
            if (root[key].IsDefined()) rd.fail(root[key], "a treatment document cannot also define '" + std::string(key) + "'");
        return parse_treatment(rd, root);
    }
    return parse_generic(rd, root);
}

ProblemDocument load_problem(const std::string& path) { return parse_problem(read_file(path), path); }

InformationStructure parse_structure(const std::string& text, const ProblemDocument& problem, const std::string& source) {
    Reader rd(source);
    const YAML::Node root = rd.load(text);
    rd.expect_map(root, "structure document");
    rd.check_schema(root);
    rd.only_keys(root, {"schema_version", "messages", "matrix", "kernel", "marginal", "info"});
    const std::size_t n = problem.problem.num_states();

    const bool explicit_form = root["messages"].IsDefined() || root["matrix"].IsDefined();
    const int forms = int(explicit_form) + int(root["kernel"].IsDefined()) + int(root["marginal"].IsDefined());
    if (forms != 1) rd.fail(root, "exactly one of messages/matrix, kernel or marginal must be given");

    std::optional<InformationStructure> e;
    if (explicit_form) {
        auto messages = rd.labels(rd.required(root, "messages"));
        const YAML::Node m = rd.required(root, "matrix");
        Matrix matrix = rd.matrix(m, messages.size(), n, "matrix");
        e = rd.anchored(m, [&] { return InformationStructure(std::move(messages), std::move(matrix)); });
    } else if (root["kernel"].IsDefined()) {
        const YAML::Node k = root["kernel"];
        rd.expect_map(k, "kernel");
        rd.only_keys(k, {"basis"});
        const YAML::Node basis = rd.required(k, "basis");
        if (!basis.IsSequence()) rd.fail(basis, "basis must be a list of vectors");
        std::vector<Vector> vectors;
        for (const auto& v : basis) vectors.push_back(rd.vector(v, n));
        e = rd.anchored(k, [&] { return kernel_to_experiment(KernelSpec::span(n, vectors)).structure; });
    } else {
        const YAML::Node mg = root["marginal"];
        rd.expect_map(mg, "marginal");
        rd.only_keys(mg, {"variables"});
        if (!problem.treatment) rd.fail(mg, "marginal structures need a treatment problem");
        MarginalSpec spec{rd.labels(rd.required(mg, "variables"))};
        e = rd.anchored(mg, [&] { return marginal_structure(*problem.treatment, spec); });
    }

    const YAML::Node info = root["info"];
    if (info.IsDefined() && !info.IsNull()) {
        rd.expect_map(info, "info");
        const YAML::Node kb = info["kernel_basis"];
        if (kb.IsDefined() && !kb.IsNull()) {
            if (!kb.IsSequence()) rd.fail(kb, "kernel_basis must be a list of vectors");
            std::vector<Vector> vectors;
            for (const auto& v : kb) vectors.push_back(rd.vector(v, n));
            if (Subspace::span(n, vectors) != kernel_of(*e).subspace)
                rd.fail(kb, "kernel_basis does not match the kernel of the matrix");
        }
    }
    return std::move(*e);
}

InformationStructure load_structure(const std::string& path, const ProblemDocument& problem) {
    return parse_structure(read_file(path), problem, path);
}

namespace {

void emit_row(YAML::Emitter& out, std::span<const Scalar> row) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& x : row) out << to_string(x);
    out << YAML::EndSeq;
}

void emit_labels(YAML::Emitter& out, const std::vector<std::string>& labels) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& l : labels) out << l;
    out << YAML::EndSeq;
}

}  // namespace

std::string emit_structure(const InformationStructure& e) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "schema_version" << YAML::Value << YAML::DoubleQuoted << kSchemaVersion;
    out << YAML::Key << "messages" << YAML::Value;
    emit_labels(out, e.messages());
    out << YAML::Key << "matrix" << YAML::Value << YAML::BeginSeq;
    for (std::size_t r = 0; r < e.experiment().rows(); ++r) emit_row(out, e.experiment().row(r));
    out << YAML::EndSeq;
    const auto kernel = kernel_of(e).subspace;
    out << YAML::Key << "info" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kernel_dimension" << YAML::Value << kernel.dim();
    out << YAML::Key << "kernel_basis" << YAML::Value << YAML::BeginSeq;
    for (const auto& v : kernel.basis()) emit_row(out, v);
    out << YAML::EndSeq << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string emit_problem(const DecisionProblem& p) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "schema_version" << YAML::Value << YAML::DoubleQuoted << kSchemaVersion;
    out << YAML::Key << "states" << YAML::Value;
    emit_labels(out, p.states());
    out << YAML::Key << "actions" << YAML::Value;
    emit_labels(out, p.actions());
    out << YAML::Key << "utility" << YAML::Value << YAML::BeginSeq;
    for (std::size_t a = 0; a < p.num_actions(); ++a) emit_row(out, p.utility().row(a));
    out << YAML::EndSeq;
    out << YAML::Key << "mu" << YAML::Value;
    emit_row(out, p.mu());
    const auto& pr = p.priors();
    out << YAML::Key << "prior_constraints" << YAML::Value << YAML::BeginMap;
    auto rows = [&](const char* key, const Matrix& m, const Vector& rhs) {
        out << YAML::Key << key << YAML::Value << YAML::BeginSeq;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            out << YAML::BeginMap << YAML::Key << "coefficients" << YAML::Value;
            emit_row(out, m.row(r));
            out << YAML::Key << "rhs" << YAML::Value << to_string(rhs[r]) << YAML::EndMap;
        }
        out << YAML::EndSeq;
    };
    rows("equalities", pr.equalities(), pr.eq_rhs());
    rows("inequalities", pr.inequalities(), pr.le_rhs());
    out << YAML::EndMap << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace infodesign
