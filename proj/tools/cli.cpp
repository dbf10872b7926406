#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "infodesign/batch.hpp"
#include "infodesign/causal.hpp"
#include "infodesign/design.hpp"
#include "infodesign/documents.hpp"
#include "infodesign/error.hpp"
#include "infodesign/solver.hpp"

using namespace infodesign;

namespace {

enum ExitCode { Ok = 0, Internal = 1, Invalid = 2, NotImplementableExit = 3, NotImplementingExit = 4 };

// A report is a YAML tree. Machine format emits it as is; table format renders it for
// reading. A map whose first key is "columns" is a table: every other key is a row label.
using Report = YAML::Node;

YAML::Node seq(const std::vector<std::string>& items) {
    YAML::Node n(YAML::NodeType::Sequence);
    for (const auto& s : items) n.push_back(s);
    return n;
}

YAML::Node labeled(const std::vector<std::string>& labels, std::span<const Scalar> values) {
    YAML::Node n(YAML::NodeType::Map);
    for (std::size_t i = 0; i < labels.size(); ++i) n[labels[i]] = to_string(values[i]);
    return n;
}

YAML::Node action_node(const DecisionProblem& p, const MixedAction& alpha) {
    std::vector<std::string> support;
    for (auto a : alpha.support()) support.push_back(p.actions()[a]);
    YAML::Node n;
    n["weights"] = labeled(p.actions(), alpha.weights());
    n["support"] = seq(support);
    return n;
}

bool is_table(const YAML::Node& n) {
    return n.IsMap() && n.size() > 0 && n.begin()->first.as<std::string>() == "columns";
}

bool is_flat(const YAML::Node& n) {
    if (!n.IsSequence()) return false;
    return std::all_of(n.begin(), n.end(), [](const YAML::Node& x) { return x.IsScalar(); });
}

std::string join(const YAML::Node& flat) {
    std::string out;
    for (const auto& x : flat) out += (out.empty() ? "" : "  ") + x.Scalar();
    return out;
}

void render_table(std::ostream& os, const YAML::Node& t, const std::string& indent) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{""};
    for (const auto& c : t["columns"]) header.push_back(c.Scalar());
    cells.push_back(header);
    for (const auto& kv : t) {
        if (kv.first.Scalar() == "columns") continue;
        std::vector<std::string> row{kv.first.Scalar()};
        for (const auto& x : kv.second) row.push_back(x.Scalar());
        cells.push_back(row);
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        os << indent;
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << row[c];
            if (c + 1 < row.size()) os << std::string(width[c] - row[c].size() + 3, ' ');
        }
        os << '\n';
    }
}

void render(std::ostream& os, const YAML::Node& n, const std::string& indent) {
    if (n.IsMap()) {
        for (const auto& kv : n) {
            const auto& v = kv.second;
            os << indent << kv.first.Scalar() << ':';
            if (v.IsScalar()) {
                os << ' ' << v.Scalar() << '\n';
            } else if (is_flat(v)) {
                os << ' ' << join(v) << '\n';
            } else if (is_table(v)) {
                os << '\n';
                render_table(os, v, indent + "  ");
            } else {
                os << '\n';
                render(os, v, indent + "  ");
            }
        }
    } else if (n.IsSequence()) {
        for (const auto& x : n) {
            if (x.IsScalar()) {
                os << indent << "- " << x.Scalar() << '\n';
            } else if (is_flat(x)) {
                os << indent << "- " << join(x) << '\n';
            } else {
                os << indent << "-\n";
                render(os, x, indent + "  ");
            }
        }
    } else if (n.IsScalar()) {
        os << indent << n.Scalar() << '\n';
    }
}

struct Options {
    std::string format = "table";
    std::string problem;
    std::string structure;
    std::string structure2;
    std::string action;
    std::vector<std::string> weights;
    std::string output;
    std::vector<std::string> variables;
};

void print(const Options& o, const Report& r) {
    if (o.format == "machine") {
        YAML::Emitter out;
        out << r;
        std::cout << out.c_str() << '\n';
    } else {
        render(std::cout, r, "");
    }
}

std::optional<MixedAction> chosen_action(const Options& o, const DecisionProblem& p) {
    if (!o.action.empty() && !o.weights.empty()) throw InvalidArgument("give either --action or --weights, not both");
    if (!o.action.empty()) {
        auto a = p.action_index(o.action);
        if (!a) throw InvalidArgument("unknown action '" + o.action + "'");
        return MixedAction::pure(p.num_actions(), *a);
    }
    if (!o.weights.empty()) {
        if (o.weights.size() != p.num_actions())
            throw InvalidArgument("--weights needs " + std::to_string(p.num_actions()) + " entries");
        Vector w;
        for (const auto& s : o.weights) w.push_back(parse_scalar(s));
        return MixedAction(std::move(w));
    }
    return std::nullopt;
}

MixedAction required_action(const Options& o, const DecisionProblem& p) {
    auto alpha = chosen_action(o, p);
    if (!alpha) throw InvalidArgument("an action is required (--action NAME or --weights w1,w2,...)");
    return *alpha;
}

const TreatmentModel& treatment_of(const ProblemDocument& doc) {
    if (!doc.treatment) throw InvalidArgument("this command needs a problem with a treatment block");
    return *doc.treatment;
}

YAML::Node certificate_node(const DecisionProblem& p, const InformationStructure& e, const SaddleCertificate& c) {
    YAML::Node n;
    n["value"] = to_string(c.value);
    n["alpha_star"] = action_node(p, c.alpha_star);
    n["nu_star"] = labeled(p.states(), c.nu_star);
    n["verified"] = verify_saddle(p, e, c) ? "true" : "false";
    return n;
}

void add_kernel_info(Report& r, const InformationStructure& e) {
    const auto k = kernel_of(e);
    r["kernel_dimension"] = std::to_string(k.subspace.dim());
    r["fully_informative"] = k.fully_informative ? "true" : "false";
    r["almost_fully_informative"] = k.almost_fully_informative ? "true" : "false";
}

void write_structure(const Options& o, Report& r, const InformationStructure& e) {
    const std::string doc = emit_structure(e);
    if (o.output.empty()) {
        r["structure"] = YAML::Load(doc);
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw InvalidArgument("cannot write '" + o.output + "'");
    out << doc;
    r["structure_file"] = o.output;
}

Report implementation_report(const Options& o, const DecisionProblem& p, const MixedAction& alpha,
                             const Implementation& impl) {
    Report r;
    r["action"] = action_node(p, alpha);
    if (auto prior = supporting_prior(p, alpha)) {
        r["supporting_prior"]["nu"] = labeled(p.states(), prior->nu);
        r["supporting_prior"]["slack"] = to_string(prior->slack);
    }
    r["certificate"] = certificate_node(p, impl.structure, impl.certificate);
    r["messages"] = std::to_string(impl.structure.messages().size());
    add_kernel_info(r, impl.structure);
    write_structure(o, r, impl.structure);
    return r;
}

int cmd_solve(const Options& o) {
    const auto doc = load_problem(o.problem);
    const auto& p = doc.problem;
    const auto e = load_structure(o.structure, doc);
    const auto cert = maxmin(p, e);
    Report r;
    r["value"] = to_string(cert.value);
    r["alpha_star"] = action_node(p, cert.alpha_star);
    r["nu_star"] = labeled(p.states(), cert.nu_star);
    YAML::Node worst(YAML::NodeType::Map);
    const auto cases = worst_case_per_action(p, e);
    for (std::size_t a = 0; a < p.num_actions(); ++a) worst[p.actions()[a]] = to_string(cases[a].value);
    r["worst_cases"] = worst;
    add_kernel_info(r, e);
    print(o, r);
    return Ok;
}

int cmd_implement(const Options& o) {
    const auto doc = load_problem(o.problem);
    const auto& p = doc.problem;
    const auto alpha = required_action(o, p);
    print(o, implementation_report(o, p, alpha, implementing_structure(p, alpha)));
    return Ok;
}

int cmd_check(const Options& o) {
    const auto doc = load_problem(o.problem);
    const auto& p = doc.problem;
    const auto e = load_structure(o.structure, doc);
    Report r;
    add_kernel_info(r, e);
    if (!o.structure2.empty()) {
        const auto e2 = load_structure(o.structure2, doc);
        switch (robustly_more_informative(e, e2)) {
        case Informativeness::More: r["ordering"] = "more informative"; break;
        case Informativeness::Less: r["ordering"] = "less informative"; break;
        case Informativeness::Equal: r["ordering"] = "equally informative"; break;
        case Informativeness::Incomparable: r["ordering"] = "incomparable"; break;
        }
    }
    if (auto alpha = chosen_action(o, p)) {
        const bool maximal = is_maximally_informative(p, e, *alpha);
        r["action"] = action_node(p, *alpha);
        r["implements"] = "true";
        r["verdict"] = maximal ? "maximal" : "not maximal";
    }
    print(o, r);
    return Ok;
}

YAML::Node example_table(const TreatmentModel& m, std::span<const Scalar> nu) {
    YAML::Node t;
    t["columns"] = seq({"X=0,T=0", "X=1,T=0", "X=0,T=1", "X=1,T=1"});
    for (std::size_t y = 0; y < 2; ++y) {
        YAML::Node row(YAML::NodeType::Sequence);
        for (std::size_t tr = 0; tr < 2; ++tr)
            for (std::size_t x = 0; x < 2; ++x) row.push_back(to_string(nu[m.state_index(y, x, tr)]));
        t["Y=" + std::to_string(y)] = row;
    }
    return t;
}

int cmd_example(const Options& o) {
    const auto m = motivating_example_base();
    const auto p = build_treatment_problem(m, {.require_irrelevant_covariate = false});
    const auto yt = marginal_structure(m, MarginalSpec{{"Y", "T"}});
    const auto full = InformationStructure::identity(p.num_states());

    Report r;
    r["observed_distribution"] = example_table(m, p.mu());

    YAML::Node marginal;
    marginal["columns"] = seq({"T=0", "T=1"});
    const Vector pushed = push_forward(yt, p.mu());
    for (std::size_t y = 0; y < 2; ++y) {
        YAML::Node row(YAML::NodeType::Sequence);
        for (std::size_t t = 0; t < 2; ++t) {
            const std::string label = "Y=" + std::to_string(y) + ",T=" + std::to_string(t);
            const auto at = std::find(yt.messages().begin(), yt.messages().end(), label) - yt.messages().begin();
            row.push_back(to_string(pushed[at]));
        }
        marginal["Y=" + std::to_string(y)] = row;
    }
    r["disclosed_marginal"] = marginal;

    const Vector table3 = motivating_worst_case_prior();
    r["worst_case_distribution"] = example_table(m, table3);

    YAML::Node means;
    for (std::size_t a = 0; a < p.num_actions(); ++a)
        means["E[Y" + p.actions()[a] + "]"] = to_string(counterfactual_mean(p, a, p.mu()));
    r["full_information_means"] = means;

    YAML::Node worst;
    bool table3_attains = identified_set(p, yt).contains(table3);
    const auto cases = worst_case_per_action(p, yt);
    for (std::size_t a = 0; a < p.num_actions(); ++a) {
        worst["E[Y" + p.actions()[a] + "]"] = to_string(cases[a].value);
        table3_attains = table3_attains && counterfactual_mean(p, a, table3) == cases[a].value;
    }
    r["worst_case_payoffs"] = worst;
    r["worst_case_distribution_attains_both"] = table3_attains ? "true" : "false";

    const auto under_full = maxmin(p, full);
    const auto under_yt = maxmin(p, yt);
    YAML::Node solutions;
    solutions["full_information"]["value"] = to_string(under_full.value);
    solutions["full_information"]["alpha_star"] = action_node(p, under_full.alpha_star);
    solutions["marginal_Y_T"]["value"] = to_string(under_yt.value);
    solutions["marginal_Y_T"]["alpha_star"] = action_node(p, under_yt.alpha_star);
    r["maxmin"] = solutions;

    const auto full_choice = under_full.alpha_star.pure_action();
    const auto yt_choice = under_yt.alpha_star.pure_action();
    if (full_choice && yt_choice && *full_choice != *yt_choice) {
        r["reversal"] = "partial disclosure of (Y,T) reverses the full-information policy (a=" +
                        p.actions()[*full_choice] + " under full information, a=" + p.actions()[*yt_choice] +
                        " under (Y,T))";
    } else {
        r["reversal"] = "no reversal";
    }
    print(o, r);
    return Ok;
}

int cmd_treatment_build(const Options& o) {
    const auto doc = load_problem(o.problem);
    const auto& m = treatment_of(doc);
    const auto& p = doc.problem;
    Report r;
    r["states"] = seq(p.states());
    const auto irrelevant = irrelevant_covariate(m);
    r["irrelevant_covariate"] = irrelevant ? m.covariates()[*irrelevant].name : std::string("none");
    YAML::Node means;
    for (std::size_t a = 0; a < p.num_actions(); ++a) means[p.actions()[a]] = to_string(counterfactual_mean(p, a, p.mu()));
    r["counterfactual_means"] = means;
    r["problem"] = YAML::Load(emit_problem(p));
    print(o, r);
    return Ok;
}

int cmd_treatment_implement(const Options& o) {
    const auto doc = load_problem(o.problem);
    const auto& p = doc.problem;
    const auto alpha = required_action(o, p);
    print(o, implementation_report(o, p, alpha, implement_treatment(treatment_of(doc), alpha)));
    return Ok;
}

int cmd_treatment_marginal(const Options& o) {
    const auto doc = load_problem(o.problem);
    const auto& m = treatment_of(doc);
    const MarginalSpec spec{o.variables};
    const auto report = check_marginal_not_maximal(m, spec);
    const auto e = marginal_structure(m, spec);
    Report r;
    r["variables"] = seq(o.variables);
    r["kernel_dimension"] = std::to_string(report.kernel_dim);
    r["kernel_bound"] = to_string(report.bound);
    r["verdict"] = report.not_maximal ? "not maximal" : "maximal";
    write_structure(o, r, e);
    print(o, r);
    return Ok;
}

void add_action_options(CLI::App* cmd, Options& o) {
    auto* action = cmd->add_option("--action", o.action, "Pure action label");
    auto* weights = cmd->add_option("--weights", o.weights, "Mixed action weights, comma separated")->delimiter(',');
    action->excludes(weights);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prior-free information design with exact rational arithmetic"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "machine"}))
        ->capture_default_str();

    std::function<int()> run;

    auto* solve = app.add_subcommand("solve", "Maxmin action and worst cases under a structure");
    solve->add_option("problem", o.problem, "Problem document")->required();
    solve->add_option("structure", o.structure, "Structure document")->required();
    solve->callback([&] { run = [&] { return cmd_solve(o); }; });

    auto* implement = app.add_subcommand("implement", "Construct a maximally informative implementing structure");
    implement->add_option("problem", o.problem, "Problem document")->required();
    add_action_options(implement, o);
    implement->add_option("--output,-o", o.output, "Write the structure document here");
    implement->callback([&] { run = [&] { return cmd_implement(o); }; });

    auto* check = app.add_subcommand("check", "Kernel facts, informativeness order and maximality");
    check->add_option("problem", o.problem, "Problem document")->required();
    check->add_option("structure", o.structure, "Structure document")->required();
    check->add_option("other", o.structure2, "Second structure to compare against");
    add_action_options(check, o);
    check->callback([&] { run = [&] { return cmd_check(o); }; });

    auto* example = app.add_subcommand("example", "The binary treatment example");
    example->callback([&] { run = [&] { return cmd_example(o); }; });

    auto* treatment = app.add_subcommand("treatment", "Treatment-effects problems");
    treatment->require_subcommand(1);
    auto* build = treatment->add_subcommand("build", "Build the decision problem of a treatment model");
    build->add_option("problem", o.problem, "Problem document with a treatment block")->required();
    build->callback([&] { run = [&] { return cmd_treatment_build(o); }; });
    auto* timpl = treatment->add_subcommand("implement", "Implement a treatment action via marginal priors");
    timpl->add_option("problem", o.problem, "Problem document with a treatment block")->required();
    add_action_options(timpl, o);
    timpl->add_option("--output,-o", o.output, "Write the structure document here");
    timpl->callback([&] { run = [&] { return cmd_treatment_implement(o); }; });
    auto* marginal = treatment->add_subcommand("marginal", "Marginal disclosure of a subset of variables");
    marginal->add_option("problem", o.problem, "Problem document with a treatment block")->required();
    marginal->add_option("--variables", o.variables, "Disclosed variables, e.g. Y,T")->required()->delimiter(',');
    marginal->add_option("--output,-o", o.output, "Write the structure document here");
    marginal->callback([&] { run = [&] { return cmd_treatment_marginal(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Invalid;
    }

    try {
        return run();
    } catch (const NotImplementable& e) {
        std::cerr << "not implementable: " << e.what() << '\n';
        YAML::Node r;
        r["status"] = "not implementable";
        r["farkas_certificate"] = seq(to_strings(e.farkas()));
        print(o, r);
        return NotImplementableExit;
    } catch (const NotImplementing& e) {
        std::cerr << "not implementing: " << e.what() << '\n';
        return NotImplementingExit;
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return Invalid;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return Invalid;
    } catch (const DimensionMismatch& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return Invalid;
    } catch (const EmptyOrFullVariableSet& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return Invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Internal;
    }
}
