#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mfl/fuzzy_set.hpp"
#include "mfl/linguistic_variable.hpp"
#include "mfl/rule.hpp"

namespace mfl {

using InputMap = std::map<std::string, double>;

/// One Mamdani inference unit. Immutable once built; construction validates the rule base
/// against the variables and throws ConfigError on any error-level diagnostic.
class FisDefinition {
public:
    FisDefinition(std::vector<LinguisticVariable> inputs, LinguisticVariable output, RuleBase rules);

    const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
    const LinguisticVariable& output() const { return output_; }
    const RuleBase& rules() const { return rules_; }

    const LinguisticVariable& input(const std::string& name) const;  // throws InputError

    /// Consequent term MFs sampled on the output universe, one per rule.
    const std::vector<DiscretizedFuzzySet>& consequent_sets() const { return consequent_sets_; }

private:
    std::vector<LinguisticVariable> inputs_;
    LinguisticVariable output_;
    RuleBase rules_;
    std::vector<DiscretizedFuzzySet> consequent_sets_;
};

/// Default five-term [0,10] variables for every input the rule base declares and for its output.
FisDefinition make_default_fis(const RuleBase& rules, std::size_t samples = kDefaultSamples);

/// Singleton fuzzification. Values outside the universe are clamped; non-finite values throw InputError.
std::map<std::string, double> fuzzify(double x, const LinguisticVariable& var);

/// min over the antecedent degrees, times the rule weight.
double firing_strength(const Rule& rule, const FisDefinition& fis, const InputMap& inputs);

/// Clips the consequent MF at `strength`.
DiscretizedFuzzySet imply(const MembershipFunction& consequent, double strength, const Universe& universe);

/// Pointwise max of all sets. Throws InferenceError on an empty list.
DiscretizedFuzzySet aggregate(std::span<const DiscretizedFuzzySet> sets);

/// Centre of area by trapezoidal quadrature over the set's grid.
/// Throws DegenerateSetError when the set has no area.
double defuzzify_coa(const DiscretizedFuzzySet& set);

struct RuleFiring {
    std::size_t index = 0;  // position in the rule base
    Rule rule;
    std::vector<double> degrees;  // one per antecedent, same order as rule.antecedents
    double strength = 0.0;
    DiscretizedFuzzySet clipped;
};

struct TraceInput {
    std::string name;
    double value = 0.0;  // as supplied
    double used = 0.0;   // after clamping to the universe

    bool operator==(const TraceInput&) const = default;
};

struct InferenceTrace {
    std::vector<TraceInput> inputs;  // declared input order
    std::vector<RuleFiring> firings;
    DiscretizedFuzzySet aggregated;
    double output = 0.0;
    std::vector<std::string> warnings;
};

/// What a report keeps of an inference: everything except the sampled sets.
struct FiringSummary {
    std::size_t index = 0;
    Rule rule;
    std::vector<double> degrees;
    double strength = 0.0;

    bool operator==(const FiringSummary&) const = default;
};

struct TraceSummary {
    std::string output_variable;
    std::vector<TraceInput> inputs;
    std::vector<FiringSummary> firings;
    double output = 0.0;
    std::vector<std::string> warnings;

    bool operator==(const TraceSummary&) const = default;
};

TraceSummary summarize(const InferenceTrace& trace, const std::string& output_variable);

struct InferenceResult {
    double output = 0.0;
    InferenceTrace trace;
};

/// fuzzify -> fire -> clip -> aggregate -> defuzzify. Every declared input must be supplied.
InferenceResult infer(const FisDefinition& fis, const InputMap& inputs);

struct SurfacePoint {
    double x = 0.0;
    double y = 0.0;
    double output = 0.0;
};

/// infer over a resolution x resolution grid spanning both input universes.
/// Row-major: x (first input) is the outer index.
std::vector<SurfacePoint> response_surface(const FisDefinition& fis, std::size_t resolution);

/// "x,y,output" header, nine significant digits.
std::string surface_csv(std::span<const SurfacePoint> surface);

}  // namespace mfl
