#include "mfl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mfl/errors.hpp"
#include "mfl/format.hpp"

namespace mfl {

FisDefinition::FisDefinition(std::vector<LinguisticVariable> inputs, LinguisticVariable output, RuleBase rules)
    : inputs_(std::move(inputs)), output_(std::move(output)), rules_(std::move(rules)) {
    if (inputs_.empty()) {
        throw ConfigError("an inference system needs at least one input variable");
    }
    std::set<std::string> names;
    for (const auto& v : inputs_) {
        if (!names.insert(v.name()).second) {
            throw ConfigError("duplicate input variable '" + v.name() + "'");
        }
    }
    if (names.contains(output_.name())) {
        throw ConfigError("variable '" + output_.name() + "' is both input and output");
    }
    auto diagnostics = validate_rulebase(rules_, inputs_, output_);
    std::erase_if(diagnostics, [](const Diagnostic& d) { return !d.is_error(); });
    if (!diagnostics.empty()) {
        throw ConfigError(std::move(diagnostics));
    }
    consequent_sets_.reserve(rules_.size());
    for (const auto& r : rules_.rules()) {
        consequent_sets_.push_back(discretize(output_.term(r.consequent.term).mf, output_.universe()));
    }
}

const LinguisticVariable& FisDefinition::input(const std::string& name) const {
    for (const auto& v : inputs_) {
        if (v.name() == name) {
            return v;
        }
    }
    throw InputError("no input variable named '" + name + "'");
}

FisDefinition make_default_fis(const RuleBase& rules, std::size_t samples) {
    if (rules.empty()) {
        throw ConfigError("cannot derive variables from an empty rule base");
    }
    std::vector<LinguisticVariable> inputs;
    for (const auto& name : rules.inputs()) {
        inputs.push_back(make_default_variable(name, samples));
    }
    return FisDefinition(std::move(inputs), make_default_variable(rules.output(), samples), rules);
}

namespace {

double checked_input(double x, const LinguisticVariable& var) {
    if (!std::isfinite(x)) {
        throw InputError("input for '" + var.name() + "' is not finite");
    }
    return var.universe().clamp(x);
}

double lookup_input(const InputMap& inputs, const std::string& name) {
    auto it = inputs.find(name);
    if (it == inputs.end()) {
        throw InputError("missing input '" + name + "'");
    }
    return it->second;
}

}  // namespace

std::map<std::string, double> fuzzify(double x, const LinguisticVariable& var) {
    double used = checked_input(x, var);
    std::map<std::string, double> out;
    for (const auto& t : var.terms()) {
        out[t.label] = eval_mf(t.mf, used);
    }
    return out;
}

double firing_strength(const Rule& rule, const FisDefinition& fis, const InputMap& inputs) {
    double strength = 1.0;
    for (const auto& c : rule.antecedents) {
        const auto& var = fis.input(c.variable);
        double x = checked_input(lookup_input(inputs, c.variable), var);
        strength = std::min(strength, eval_mf(var.term(c.term).mf, x));
    }
    return strength * rule.weight;
}

DiscretizedFuzzySet imply(const MembershipFunction& consequent, double strength, const Universe& universe) {
    if (!(strength >= 0.0 && strength <= 1.0)) {
        throw RangeError("firing strength outside [0,1]");
    }
    auto set = discretize(consequent, universe);
    return fuzzy_intersection(set, DiscretizedFuzzySet::constant(universe, strength));
}

DiscretizedFuzzySet aggregate(std::span<const DiscretizedFuzzySet> sets) {
    if (sets.empty()) {
        throw InferenceError("nothing to aggregate: no rule produced an output set");
    }
    DiscretizedFuzzySet out = sets.front();
    for (const auto& s : sets.subspan(1)) {
        out = fuzzy_union(out, s);
    }
    return out;
}

double defuzzify_coa(const DiscretizedFuzzySet& set) {
    const Universe& u = set.universe();
    const std::size_t n = set.size();
    // Uniform grid: the step cancels between numerator and denominator.
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        num += w * u.x(i) * set[i];
        den += w * set[i];
    }
    if (!(den > 0.0)) {
        throw DegenerateSetError("cannot defuzzify an empty fuzzy set (no rule fired)");
    }
    return u.clamp(num / den);
}

InferenceResult infer(const FisDefinition& fis, const InputMap& inputs) {
    InferenceTrace trace;
    for (const auto& [name, value] : inputs) {
        (void)value;
        fis.input(name);  // rejects unknown names
    }
    InputMap used;
    for (const auto& var : fis.inputs()) {
        double raw = lookup_input(inputs, var.name());
        double x = checked_input(raw, var);
        if (x != raw) {
            trace.warnings.push_back("input " + var.name() + "=" + format_shortest(raw) + " clamped to " +
                                     format_shortest(x));
        }
        used[var.name()] = x;
        trace.inputs.push_back({var.name(), raw, x});
    }

    const auto& rules = fis.rules().rules();
    const Universe& out_universe = fis.output().universe();
    trace.firings.reserve(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const Rule& r = rules[i];
        RuleFiring f{i, r, {}, 1.0, DiscretizedFuzzySet(out_universe)};
        for (const auto& c : r.antecedents) {
            double d = eval_mf(fis.input(c.variable).term(c.term).mf, used.at(c.variable));
            f.degrees.push_back(d);
            f.strength = std::min(f.strength, d);
        }
        f.strength *= r.weight;
        f.clipped = fuzzy_intersection(fis.consequent_sets()[i],
                                       DiscretizedFuzzySet::constant(out_universe, f.strength));
        trace.firings.push_back(std::move(f));
    }

    std::vector<DiscretizedFuzzySet> clipped;
    clipped.reserve(trace.firings.size());
    for (const auto& f : trace.firings) {
        clipped.push_back(f.clipped);
    }
    trace.aggregated = aggregate(clipped);
    trace.output = defuzzify_coa(trace.aggregated);
    return InferenceResult{trace.output, std::move(trace)};
}

TraceSummary summarize(const InferenceTrace& trace, const std::string& output_variable) {
    TraceSummary out;
    out.output_variable = output_variable;
    out.inputs = trace.inputs;
    out.output = trace.output;
    out.warnings = trace.warnings;
    out.firings.reserve(trace.firings.size());
    for (const auto& f : trace.firings) {
        out.firings.push_back({f.index, f.rule, f.degrees, f.strength});
    }
    return out;
}

std::vector<SurfacePoint> response_surface(const FisDefinition& fis, std::size_t resolution) {
    if (fis.inputs().size() != 2) {
        throw ArityError("response surface needs exactly 2 inputs, inference system has " +
                         std::to_string(fis.inputs().size()));
    }
    if (resolution < 2) {
        throw RangeError("surface resolution must be at least 2");
    }
    const auto& vx = fis.inputs()[0];
    const auto& vy = fis.inputs()[1];
    Universe gx(vx.universe().lo(), vx.universe().hi(), resolution);
    Universe gy(vy.universe().lo(), vy.universe().hi(), resolution);

    std::vector<SurfacePoint> out;
    out.reserve(resolution * resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
            double x = gx.x(i);
            double y = gy.x(j);
            out.push_back({x, y, infer(fis, {{vx.name(), x}, {vy.name(), y}}).output});
        }
    }
    return out;
}

std::string surface_csv(std::span<const SurfacePoint> surface) {
    std::string out = "x,y,output\n";
    for (const auto& p : surface) {
        out += format_significant(p.x, 9) + "," + format_significant(p.y, 9) + "," + format_significant(p.output, 9) +
               "\n";
    }
    return out;
}

}  // namespace mfl
