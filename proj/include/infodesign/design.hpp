#pragma once

#include <optional>
#include <vector>

#include "infodesign/model.hpp"
#include "infodesign/solver.hpp"

namespace infodesign {

/// A subspace D ⊂ Qⁿ whose basis vectors all sum to zero, i.e. a feasible experiment kernel.
class KernelSpec {
public:
    /// Throws ZeroSumViolation if some basis vector has a nonzero coordinate sum.
    explicit KernelSpec(Subspace subspace);
    static KernelSpec span(std::size_t ambient_dim, const std::vector<Vector>& vectors);

    const Subspace& subspace() const noexcept { return subspace_; }

private:
    Subspace subspace_;
};

/// Intermediate values of the kernel-to-experiment construction. Empty for the two
/// degenerate cases (trivial kernel, full zero-sum hyperplane).
struct ConstructionTrace {
    std::vector<Vector> complement_basis;  // w¹..wˡ
    Vector lower_shift;                    // xⁱ = 1 − min(wⁱ)
    Vector upper_shift;                    // yⁱ = 1 + max(wⁱ)
    Scalar normalizer;                     // 1 / Σ(xⁱ + yⁱ)
    Matrix matrix;                         // the experiment, |Σ| × |Ω|
};

struct ConstructedExperiment {
    InformationStructure structure;
    ConstructionTrace trace;
};

/// Column-stochastic experiment with kernel exactly D. Rows are λ(xⁱ·1 + wⁱ) for each
/// complement basis vector wⁱ, followed by the rows λ(yⁱ·1 − wⁱ). Each pair sums to the
/// constant λ(xⁱ + yⁱ), which makes every column sum to one.
ConstructedExperiment kernel_to_experiment(const KernelSpec& spec);

/// Moves the mass of one positive-μ state onto a payoff-equivalent partner so that the
/// result is extremal along the ray from μ. Returns ν unchanged when some state with
/// μ(ω) > 0 already has ν(ω) = 0. When no single move stays in 𝒫, looks for any ν′ ∈ 𝒫
/// with the same mass on every payoff class and a zero at some positive-μ state.
/// Throws AssumptionViolation when none exists, InvalidArgument when ν ∉ 𝒫.
Vector boundary_adjust(const DecisionProblem& p, std::span<const Scalar> nu);

/// max{λ : μ + λ(ν − μ) ∈ 𝒫} by LP; nullopt when unbounded (ν = μ).
std::optional<Scalar> max_extension(const DecisionProblem& p, std::span<const Scalar> nu);

struct Implementation {
    InformationStructure structure;
    SaddleCertificate certificate;
};

/// Almost fully informative structure under which α is worst-case optimal. The identity
/// when μ supports α; otherwise a one-dimensional kernel spanned by ν′ − μ for a
/// boundary-adjusted supporting prior ν′. Throws NotImplementable with a Farkas vector.
Implementation implementing_structure(const DecisionProblem& p, const MixedAction& alpha);

/// Same pipeline starting from a known supporting prior ν. Throws InvalidArgument if ν
/// does not support α.
Implementation implement_with_prior(const DecisionProblem& p, const MixedAction& alpha, std::span<const Scalar> nu);

/// True iff α is worst-case optimal under e.
bool implements(const DecisionProblem& p, const InformationStructure& e, const MixedAction& alpha);

enum class Informativeness { More, Less, Equal, Incomparable };
const char* to_string(Informativeness o);

/// Compares ker E1 and ker E2: a smaller kernel is more informative.
Informativeness robustly_more_informative(const InformationStructure& e1, const InformationStructure& e2);

/// Whether e is a maximal element among the structures implementing α.
/// Throws NotImplementing when e does not implement α.
bool is_maximally_informative(const DecisionProblem& p, const InformationStructure& e, const MixedAction& alpha);

}  // namespace infodesign
