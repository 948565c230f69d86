#include "mfl/rule.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace mfl {

namespace {

using AntecedentKey = std::vector<Clause>;

AntecedentKey antecedent_key(const Rule& r) {
    AntecedentKey key = r.antecedents;
    std::sort(key.begin(), key.end());
    return key;
}

std::string describe_antecedents(const AntecedentKey& key) {
    std::string out;
    for (const auto& c : key) {
        if (!out.empty()) {
            out += " and ";
        }
        out += "(" + c.variable + " is " + c.term + ")";
    }
    return out;
}

// Checks that hold for a single rule regardless of context.
void check_rule_shape(const Rule& r) {
    if (r.antecedents.empty()) {
        throw ConfigError("rule has no antecedents");
    }
    std::set<std::string> vars;
    for (const auto& c : r.antecedents) {
        if (!is_identifier(c.variable) || !is_identifier(c.term)) {
            throw ConfigError("invalid identifier in clause (" + c.variable + " is " + c.term + ")");
        }
        if (!vars.insert(c.variable).second) {
            throw ConfigError("variable '" + c.variable + "' appears twice in one antecedent");
        }
    }
    if (!is_identifier(r.consequent.variable) || !is_identifier(r.consequent.term)) {
        throw ConfigError("invalid identifier in consequent");
    }
    if (!(r.weight >= 0.0 && r.weight <= 1.0)) {
        throw RangeError("rule weight must lie in [0,1]");
    }
}

// `lines` optionally maps each rule to its source line for messages and diagnostics.
std::vector<Diagnostic> conflict_diagnostics(const std::vector<Rule>& rules, const std::vector<std::size_t>& lines = {}) {
    std::vector<Diagnostic> out;
    auto label = [&](std::size_t i) {
        return lines.empty() ? "rule " + std::to_string(i + 1) : "line " + std::to_string(lines[i]);
    };
    auto line_of = [&](std::size_t i) -> std::size_t { return lines.empty() ? 0 : lines[i]; };
    std::map<AntecedentKey, std::size_t> first_seen;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        auto [it, inserted] = first_seen.emplace(antecedent_key(rules[i]), i);
        if (inserted) {
            continue;
        }
        const Rule& prev = rules[it->second];
        if (!(prev.consequent == rules[i].consequent)) {
            out.push_back({Severity::Error, "conflict",
                           label(it->second) + " and " + label(i) + " share antecedents " +
                               describe_antecedents(it->first) + " but conclude different terms ('" +
                               prev.consequent.term + "' vs '" + rules[i].consequent.term + "')",
                           line_of(i)});
        } else {
            out.push_back({Severity::Warning, "duplicate",
                           label(i) + " repeats the antecedents of " + label(it->second), line_of(i)});
        }
    }
    return out;
}

// Character-level recursive descent over a single line.
class LineParser {
public:
    LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    Rule parse() {
        skip_ws();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            expect_char('.', "'.' after rule index");
        }
        expect_keyword("if");

        Rule rule;
        rule.antecedents.push_back(parse_clause());
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            auto word = read_word();
            if (!word) {
                fail(at, "'and' or 'then'", "");
            }
            if (iequals(*word, "and")) {
                rule.antecedents.push_back(parse_clause());
            } else if (iequals(*word, "then")) {
                break;
            } else if (iequals(*word, "or")) {
                fail(at, "'and' or 'then'", "disjunctive antecedents ('or') are not supported");
            } else {
                fail(at, "'and' or 'then'", "found '" + *word + "'");
            }
        }
        rule.consequent = parse_clause();
        rule.weight = parse_weight();
        skip_ws();
        if (pos_ != text_.size()) {
            fail(pos_, "end of rule", "trailing text");
        }

        std::set<std::string> vars;
        for (const auto& c : rule.antecedents) {
            if (!vars.insert(c.variable).second) {
                fail(0, "distinct antecedent variables", "variable '" + c.variable + "' appears twice");
            }
        }
        return rule;
    }

private:
    [[noreturn]] void fail(std::size_t at, const std::string& expected, const std::string& detail) const {
        throw ParseError(line_, at + 1, expected, detail);
    }

    static bool iequals(std::string_view a, std::string_view b) {
        return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
                   return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
               });
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void expect_char(char c, const std::string& expected) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(pos_, expected, pos_ >= text_.size() ? "end of line" : "");
        }
        ++pos_;
    }

    std::optional<std::string> read_word() {
        std::size_t start = pos_;
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            return std::string(text_.substr(start, pos_ - start));
        }
        return std::nullopt;
    }

    std::string expect_identifier(const std::string& what) {
        skip_ws();
        std::size_t at = pos_;
        auto word = read_word();
        if (!word) {
            fail(at, what, at >= text_.size() ? "end of line" : "");
        }
        return *word;
    }

    void expect_keyword(std::string_view kw) {
        skip_ws();
        std::size_t at = pos_;
        auto word = read_word();
        if (!word || !iequals(*word, kw)) {
            fail(at, "'" + std::string(kw) + "'", word ? "found '" + *word + "'" : "");
        }
    }

    Clause parse_clause() {
        expect_char('(', "'(' opening a clause");
        Clause c;
        c.variable = expect_identifier("variable name");
        expect_keyword("is");
        c.term = expect_identifier("term label");
        expect_char(')', "')' closing a clause");
        return c;
    }

    double parse_weight() {
        expect_char('(', "'(' opening the rule weight");
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            ++pos_;
        }
        std::string_view digits = text_.substr(start, pos_ - start);
        double w = 0.0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), w, std::chars_format::fixed);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
            fail(start, "decimal rule weight", "");
        }
        expect_char(')', "')' closing the rule weight");
        if (!(w >= 0.0 && w <= 1.0)) {
            throw RangeError("line " + std::to_string(line_) + ", column " + std::to_string(start + 1) +
                             ": rule weight " + std::string(digits) + " outside [0,1]");
        }
        return w;
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

std::string format_weight(double w) {
    char buf[400];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w, std::chars_format::fixed);
    return std::string(buf, ptr);
}

// Odometer over the input term grid, first input slowest.
bool advance(std::vector<std::size_t>& idx, std::span<const LinguisticVariable> inputs) {
    for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < inputs[k].size()) {
            return true;
        }
        idx[k] = 0;
    }
    return false;
}

AntecedentKey grid_key(const std::vector<std::size_t>& idx, std::span<const LinguisticVariable> inputs) {
    AntecedentKey key;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        key.push_back({inputs[k].name(), inputs[k].terms()[idx[k]].label});
    }
    std::sort(key.begin(), key.end());
    return key;
}

}  // namespace

RuleBase::RuleBase(std::vector<Rule> rules) : rules_(std::move(rules)) {
    std::vector<Diagnostic> errors;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const Rule& r = rules_[i];
        try {
            check_rule_shape(r);
        } catch (const Error& e) {
            errors.push_back({Severity::Error, "rule", "rule " + std::to_string(i + 1) + ": " + e.what(), 0});
            continue;
        }
        for (const auto& c : r.antecedents) {
            if (std::find(inputs_.begin(), inputs_.end(), c.variable) == inputs_.end()) {
                inputs_.push_back(c.variable);
            }
        }
        if (output_.empty()) {
            output_ = r.consequent.variable;
        } else if (output_ != r.consequent.variable) {
            errors.push_back({Severity::Error, "output",
                              "rule " + std::to_string(i + 1) + " concludes '" + r.consequent.variable +
                                  "' but earlier rules conclude '" + output_ + "'",
                              0});
        }
    }
    if (std::find(inputs_.begin(), inputs_.end(), output_) != inputs_.end()) {
        errors.push_back({Severity::Error, "output", "variable '" + output_ + "' is both input and output", 0});
    }
    for (auto& d : conflict_diagnostics(rules_)) {
        if (d.is_error()) {
            errors.push_back(std::move(d));
        }
    }
    if (!errors.empty()) {
        throw ConfigError(std::move(errors));
    }
}

Rule parse_rule(std::string_view line, std::size_t line_number) {
    return LineParser(line, line_number).parse();
}

RuleBase parse_rulebase(std::string_view text) {
    std::vector<Rule> rules;
    std::vector<std::size_t> lines;
    std::vector<Diagnostic> errors;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;

        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') {
            continue;
        }
        try {
            rules.push_back(parse_rule(line, line_no));
            lines.push_back(line_no);
        } catch (const ParseError& e) {
            errors.push_back({Severity::Error, "parse", e.what(), line_no});
        } catch (const RangeError& e) {
            errors.push_back({Severity::Error, "range", e.what(), line_no});
        }
    }

    for (auto d : conflict_diagnostics(rules, lines)) {
        if (d.is_error()) {
            errors.push_back(std::move(d));
        }
    }
    if (!errors.empty()) {
        throw ConfigError(std::move(errors));
    }
    return RuleBase(std::move(rules));
}

RuleBase load_rulebase_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read rule file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rulebase(buf.str());
}

std::string serialize_rule(const Rule& rule) {
    std::string out = "If ";
    for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
        if (i > 0) {
            out += " and ";
        }
        out += "(" + rule.antecedents[i].variable + " is " + rule.antecedents[i].term + ")";
    }
    out += " then (" + rule.consequent.variable + " is " + rule.consequent.term + ") (" + format_weight(rule.weight) +
           ")";
    return out;
}

std::string serialize_rulebase(const RuleBase& rb) {
    std::string out;
    for (const auto& r : rb.rules()) {
        out += serialize_rule(r);
        out += '\n';
    }
    return out;
}

RuleBase complete_rulebase(const RuleBase& partial, std::span<const LinguisticVariable> inputs,
                           const LinguisticVariable& output) {
    auto diagnostics = validate_rulebase(partial, inputs, output);
    std::erase_if(diagnostics, [](const Diagnostic& d) { return !d.is_error(); });
    if (!diagnostics.empty()) {
        throw ConfigError(std::move(diagnostics));
    }
    if (inputs.empty()) {
        throw ConfigError("rule completion needs at least one input variable");
    }

    std::multimap<AntecedentKey, std::size_t> full_cells;
    std::vector<bool> used(partial.size(), false);
    for (std::size_t i = 0; i < partial.size(); ++i) {
        if (partial.rules()[i].antecedents.size() == inputs.size()) {
            full_cells.emplace(antecedent_key(partial.rules()[i]), i);
        }
    }

    std::vector<Rule> rules;
    std::vector<std::size_t> idx(inputs.size(), 0);
    do {
        auto key = grid_key(idx, inputs);
        auto [lo, hi] = full_cells.equal_range(key);
        if (lo != hi) {
            std::vector<std::size_t> hits;
            for (auto it = lo; it != hi; ++it) {
                hits.push_back(it->second);
            }
            std::sort(hits.begin(), hits.end());
            for (auto h : hits) {
                rules.push_back(partial.rules()[h]);
                used[h] = true;
            }
            continue;
        }
        std::size_t sum = 0;
        Rule r;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            sum += idx[k];
            r.antecedents.push_back({inputs[k].name(), inputs[k].terms()[idx[k]].label});
        }
        std::size_t out_idx = std::min(sum / idx.size(), output.size() - 1);
        r.consequent = {output.name(), output.terms()[out_idx].label};
        r.weight = 1.0;
        rules.push_back(std::move(r));
    } while (advance(idx, inputs));

    for (std::size_t i = 0; i < partial.size(); ++i) {
        if (!used[i]) {
            rules.push_back(partial.rules()[i]);
        }
    }
    return RuleBase(std::move(rules));
}

std::vector<Diagnostic> validate_rulebase(const RuleBase& rb, std::span<const LinguisticVariable> inputs,
                                          const LinguisticVariable& output) {
    std::vector<Diagnostic> out;
    auto find_input = [&](const std::string& name) -> const LinguisticVariable* {
        for (const auto& v : inputs) {
            if (v.name() == name) {
                return &v;
            }
        }
        return nullptr;
    };

    if (rb.empty()) {
        out.push_back({Severity::Warning, "empty", "rule base has no rules", 0});
    }

    for (std::size_t i = 0; i < rb.size(); ++i) {
        const Rule& r = rb.rules()[i];
        const std::string where = "rule " + std::to_string(i + 1) + ": ";
        for (const auto& c : r.antecedents) {
            const auto* var = find_input(c.variable);
            if (var == nullptr) {
                out.push_back({Severity::Error, "unknown-variable",
                               where + "unknown input variable '" + c.variable + "'", 0});
            } else if (!var->term_index(c.term)) {
                out.push_back({Severity::Error, "unknown-term",
                               where + "variable '" + c.variable + "' has no term '" + c.term + "'", 0});
            }
        }
        if (r.consequent.variable != output.name()) {
            out.push_back({Severity::Error, "unknown-variable",
                           where + "unknown output variable '" + r.consequent.variable + "'", 0});
        } else if (!output.term_index(r.consequent.term)) {
            out.push_back({Severity::Error, "unknown-term",
                           where + "variable '" + r.consequent.variable + "' has no term '" + r.consequent.term + "'",
                           0});
        }
    }

    auto conflicts = conflict_diagnostics(rb.rules());
    out.insert(out.end(), conflicts.begin(), conflicts.end());

    if (!inputs.empty()) {
        std::set<AntecedentKey> present;
        for (const auto& r : rb.rules()) {
            if (r.antecedents.size() == inputs.size()) {
                present.insert(antecedent_key(r));
            }
        }
        std::vector<std::string> missing;
        std::vector<std::size_t> idx(inputs.size(), 0);
        do {
            if (!present.contains(grid_key(idx, inputs))) {
                std::string cell;
                for (std::size_t k = 0; k < idx.size(); ++k) {
                    cell += (k == 0 ? "(" : ", ") + inputs[k].terms()[idx[k]].label;
                }
                missing.push_back(cell + ")");
            }
        } while (advance(idx, inputs));
        if (!missing.empty()) {
            std::string msg = std::to_string(missing.size()) + " antecedent combination(s) have no rule:";
            for (const auto& m : missing) {
                msg += " " + m;
            }
            out.push_back({Severity::Warning, "coverage", msg, 0});
        }
    }
    return out;
}

}  // namespace mfl
