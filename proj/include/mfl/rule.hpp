#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfl/errors.hpp"
#include "mfl/linguistic_variable.hpp"

namespace mfl {

/// "(variable is term)"
struct Clause {
    std::string variable;
    std::string term;

    bool operator==(const Clause&) const = default;
    auto operator<=>(const Clause&) const = default;
};

/// Conjunction of antecedent clauses implying one consequent clause.
struct Rule {
    std::vector<Clause> antecedents;
    Clause consequent;
    double weight = 1.0;

    bool operator==(const Rule&) const = default;
};

/// An ordered rule list plus the variables it mentions. Inputs are listed in order of
/// first appearance; all rules share a single output variable.
class RuleBase {
public:
    RuleBase() = default;

    /// Throws ConfigError if the rules disagree on the output variable or contradict each other.
    explicit RuleBase(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::string& output() const { return output_; }
    std::size_t size() const { return rules_.size(); }
    bool empty() const { return rules_.empty(); }

    bool operator==(const RuleBase&) const = default;

private:
    std::vector<Rule> rules_;
    std::vector<std::string> inputs_;
    std::string output_;
};

/// Parses one rule in the form
///   [index "."] If (v is t) {and (v is t)} then (v is t) (weight)
/// Keywords are case-insensitive. Throws ParseError on bad syntax and RangeError on a weight outside [0,1].
Rule parse_rule(std::string_view line, std::size_t line_number = 1);

/// Parses a rule file. Blank lines and lines starting with '#' are skipped. Throws ConfigError
/// carrying one diagnostic per bad line and per conflicting rule pair.
RuleBase parse_rulebase(std::string_view text);

RuleBase load_rulebase_file(const std::string& path);

/// Canonical text without the leading index; parse_rule(serialize_rule(r)) == r.
std::string serialize_rule(const Rule& rule);
std::string serialize_rulebase(const RuleBase& rb);

/// Fills every missing cell of the antecedent grid spanned by `inputs`. A synthesized rule's
/// consequent is the output term whose index is the floor of the mean antecedent term index.
/// Rules already present are kept verbatim. Output follows grid order (first input varies slowest),
/// followed by any partial rules that do not name every input.
RuleBase complete_rulebase(const RuleBase& partial, std::span<const LinguisticVariable> inputs,
                           const LinguisticVariable& output);

/// Reports unknown variables and terms and conflicting rules as errors; duplicate rules, an
/// empty rule base and uncovered antecedent combinations as warnings.
std::vector<Diagnostic> validate_rulebase(const RuleBase& rb, std::span<const LinguisticVariable> inputs,
                                          const LinguisticVariable& output);

}  // namespace mfl
