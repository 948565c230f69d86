#include "mfl/assessment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "mfl/format.hpp"

namespace mfl {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string content_hash(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json parse_json_text(const std::string& text, const std::filesystem::path& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
}

std::string normalize_label(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == ' ' || c == '-' || c == '_') {
            continue;
        }
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

}  // namespace

Questionnaire load_questionnaire(const json& document, const FactorTree* tree) {
    Questionnaire out;
    std::vector<Diagnostic> errors;
    auto err = [&](const std::string& msg) { errors.push_back({Severity::Error, "questionnaire", msg, 0}); };

    if (document.is_null() || (document.is_array() && document.empty())) {
        out.warnings.push_back({Severity::Warning, "empty", "questionnaire has no questions", 0});
        return out;
    }
    if (!document.is_array()) {
        throw ConfigError("questionnaire must be a JSON array of question objects");
    }

    std::set<std::string> leaf_names;
    if (tree != nullptr) {
        for (const auto* leaf : tree->leaves()) {
            leaf_names.insert(leaf->name);
        }
    }
    std::set<std::string> default_labels;
    for (const auto& l : default_term_labels()) {
        default_labels.insert(l);
    }

    std::set<std::string> ids;
    std::size_t position = 0;
    for (const auto& q : document) {
        ++position;
        const std::string where = "question " + std::to_string(position);
        if (!q.is_object()) {
            err(where + ": must be an object");
            continue;
        }
        Question question;
        auto get_string = [&](const char* key, std::string& dest, bool required) {
            auto it = q.find(key);
            if (it == q.end()) {
                if (required) err(where + ": missing \"" + key + "\"");
                return;
            }
            if (!it->is_string()) {
                err(where + ": \"" + key + "\" must be a string");
                return;
            }
            dest = it->get<std::string>();
        };
        get_string("id", question.id, true);
        get_string("text", question.text, true);
        get_string("target", question.target, true);

        for (const auto& [key, value] : q.items()) {
            (void)value;
            if (key != "id" && key != "text" && key != "target" && key != "anchors" && key != "standards") {
                err(where + ": unknown key \"" + key + "\"");
            }
        }

        if (!question.id.empty() && !ids.insert(question.id).second) {
            err(where + ": duplicate id '" + question.id + "'");
        }
        if (tree != nullptr && !question.target.empty() && !leaf_names.contains(question.target)) {
            const auto* node = tree->find(question.target);
            err(where + " ('" + question.id + "'): target '" + question.target + "' " +
                (node == nullptr ? "does not exist in '" + tree->name() + "'" : "is not a leaf group"));
        }

        if (auto it = q.find("anchors"); it != q.end()) {
            if (!it->is_object()) {
                err(where + ": \"anchors\" must be an object");
            } else {
                for (const auto& [label, text] : it->items()) {
                    if (!default_labels.contains(label)) {
                        err(where + ": anchor for unknown term '" + label + "'");
                    } else if (!text.is_string()) {
                        err(where + ": anchor text for '" + label + "' must be a string");
                    } else {
                        question.anchors[label] = text.get<std::string>();
                    }
                }
                if (!question.anchors.empty() && question.anchors.size() != default_labels.size()) {
                    err(where + ": anchors must cover all " + std::to_string(default_labels.size()) + " terms");
                }
            }
        }
        if (auto it = q.find("standards"); it != q.end()) {
            if (!it->is_array()) {
                err(where + ": \"standards\" must be an array");
            } else {
                for (const auto& s : *it) {
                    if (s.is_string()) {
                        question.standards.push_back(s.get<std::string>());
                    } else {
                        err(where + ": \"standards\" entries must be strings");
                    }
                }
            }
        }
        out.questions.push_back(std::move(question));
    }
    if (!errors.empty()) {
        throw ConfigError(std::move(errors));
    }
    return out;
}

Questionnaire load_questionnaire_file(const std::filesystem::path& path, const FactorTree* tree) {
    std::string text = read_text_file(path);
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
        return load_questionnaire(json(), tree);
    }
    return load_questionnaire(parse_json_text(text, path), tree);
}

AnswerSet load_answers(const json& document) {
    if (!document.is_object()) {
        throw ConfigError("answers must be a JSON object mapping question id to a term or number");
    }
    AnswerSet out;
    std::vector<Diagnostic> errors;
    for (const auto& [id, value] : document.items()) {
        if (value.is_string()) {
            out[id] = value.get<std::string>();
        } else if (value.is_number()) {
            out[id] = value.get<double>();
        } else {
            errors.push_back({Severity::Error, "answers", "answer to '" + id + "' must be a term label or a number", 0});
        }
    }
    if (!errors.empty()) {
        throw ConfigError(std::move(errors));
    }
    return out;
}

AnswerSet load_answers_file(const std::filesystem::path& path) {
    return load_answers(parse_json_text(read_text_file(path), path));
}

double map_answer(const Answer& answer, const LinguisticVariable& variable) {
    if (const double* x = std::get_if<double>(&answer)) {
        if (!std::isfinite(*x) || !variable.universe().contains(*x)) {
            throw InputError("answer " + format_shortest(*x) + " outside [" + format_shortest(variable.universe().lo()) +
                             ", " + format_shortest(variable.universe().hi()) + "]");
        }
        return *x;
    }
    const auto& label = std::get<std::string>(answer);
    const std::string wanted = normalize_label(label);
    for (const auto& t : variable.terms()) {
        if (normalize_label(t.label) == wanted) {
            return prototype(t.mf);
        }
    }
    throw InputError("unknown answer term '" + label + "' for variable '" + variable.name() + "'");
}

LeafScores score_leaf_groups(const std::vector<Question>& questions, const AnswerSet& answers,
                             const FactorTree& tree) {
    const auto answer_scale = make_default_variable("Answer");

    std::set<std::string> known_ids;
    for (const auto& q : questions) {
        known_ids.insert(q.id);
    }
    std::string unknown;
    for (const auto& [id, a] : answers) {
        (void)a;
        if (!known_ids.contains(id)) {
            unknown += (unknown.empty() ? "" : ", ") + id;
        }
    }
    if (!unknown.empty()) {
        throw AssessmentError("answers given for unknown questions: " + unknown);
    }

    std::map<std::string, std::vector<double>> weights;
    for (const auto& q : questions) {
        auto it = answers.find(q.id);
        if (it == answers.end()) {
            continue;
        }
        try {
            weights[q.target].push_back(map_answer(it->second, answer_scale));
        } catch (const InputError& e) {
            throw InputError("question '" + q.id + "': " + e.what());
        }
    }

    LeafScores out;
    std::string missing;
    for (const auto* leaf : tree.leaves()) {
        auto it = weights.find(leaf->name);
        if (it == weights.end() || it->second.empty()) {
            missing += (missing.empty() ? "" : ", ") + leaf->name;
            continue;
        }
        auto& w = it->second;
        // Sorted summation makes the mean independent of question and answer order.
        std::sort(w.begin(), w.end());
        double sum = 0.0;
        for (double v : w) {
            sum += v;
        }
        out[leaf->name] = sum / static_cast<double>(w.size());
    }
    if (!missing.empty()) {
        throw AssessmentError("no answered questions for leaf group(s): " + missing);
    }
    return out;
}

namespace {

json trace_to_json(const TraceSummary& t) {
    json inputs = json::array();
    for (const auto& in : t.inputs) {
        inputs.push_back({{"name", in.name}, {"value", in.value}, {"used", in.used}});
    }
    json rules = json::array();
    for (const auto& f : t.firings) {
        rules.push_back({{"rule_index", f.index + 1},
                         {"rule", serialize_rule(f.rule)},
                         {"degrees", f.degrees},
                         {"strength", f.strength}});
    }
    return {{"output_variable", t.output_variable},
            {"inputs", inputs},
            {"rules", rules},
            {"output", t.output},
            {"warnings", t.warnings}};
}

TraceSummary trace_from_json(const json& j) {
    TraceSummary t;
    t.output_variable = j.at("output_variable").get<std::string>();
    for (const auto& in : j.at("inputs")) {
        t.inputs.push_back({in.at("name").get<std::string>(), in.at("value").get<double>(), in.at("used").get<double>()});
    }
    for (const auto& r : j.at("rules")) {
        t.firings.push_back({r.at("rule_index").get<std::size_t>() - 1, parse_rule(r.at("rule").get<std::string>()),
                             r.at("degrees").get<std::vector<double>>(), r.at("strength").get<double>()});
    }
    t.output = j.at("output").get<double>();
    t.warnings = j.at("warnings").get<std::vector<std::string>>();
    return t;
}

json node_to_json(const NodeScore& n) {
    json children = json::array();
    for (const auto& c : n.children) {
        children.push_back(node_to_json(c));
    }
    json j = {{"name", n.name},
              {"kind", std::string(to_string(n.kind))},
              {"security", n.security},
              {"vulnerability", n.vulnerability},
              {"children", children}};
    if (n.trace) {
        j["trace"] = trace_to_json(*n.trace);
    }
    return j;
}

NodeScore node_from_json(const json& j) {
    NodeScore n;
    n.name = j.at("name").get<std::string>();
    auto kind = parse_node_kind(j.at("kind").get<std::string>());
    if (!kind) {
        throw ConfigError("report node '" + n.name + "' has an unknown kind");
    }
    n.kind = *kind;
    n.security = j.at("security").get<double>();
    n.vulnerability = j.at("vulnerability").get<double>();
    for (const auto& c : j.at("children")) {
        n.children.push_back(node_from_json(c));
    }
    if (auto it = j.find("trace"); it != j.end()) {
        n.trace = trace_from_json(*it);
    }
    return n;
}

void render_text(const NodeScore& n, int depth, std::string& out) {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
    out += n.name + ": security " + format_fixed(n.security, 2) + ", vulnerability " + format_fixed(n.vulnerability, 2) +
           "\n";
    for (const auto& c : n.children) {
        render_text(c, depth + 1, out);
    }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

json report_to_json(const AssessmentReport& report) {
    json j = {{"tree", report.tree}, {"root", node_to_json(report.root)}};
    if (report.metadata) {
        j["metadata"] = {{"generated_at", report.metadata->generated_at},
                         {"config_hashes", report.metadata->config_hashes}};
    }
    return j;
}

AssessmentReport report_from_json(const json& document) {
    try {
        AssessmentReport r;
        r.tree = document.at("tree").get<std::string>();
        r.root = node_from_json(document.at("root"));
        if (auto it = document.find("metadata"); it != document.end()) {
            ReportMetadata m;
            m.generated_at = it->at("generated_at").get<std::string>();
            m.config_hashes = it->at("config_hashes").get<std::map<std::string, std::string>>();
            r.metadata = std::move(m);
        }
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

std::string emit_report(const AssessmentReport& report, ReportFormat format) {
    if (report.root.name.empty()) {
        throw AssessmentError("cannot emit a report for an empty tree");
    }
    if (format == ReportFormat::Json) {
        return report_to_json(report).dump(2) + "\n";
    }
    std::string out = "Assessment of " + report.tree + "\n";
    if (report.metadata) {
        out += "generated at " + report.metadata->generated_at + "\n";
        for (const auto& [name, hash] : report.metadata->config_hashes) {
            out += name + " " + hash + "\n";
        }
    }
    render_text(report.root, 0, out);
    return out;
}

std::string emit_trace(const TraceSummary& trace, TraceFormat format) {
    std::string out;
    if (format == TraceFormat::Csv) {
        out = "rule_index,antecedents,degrees,strength,consequent\n";
        for (const auto& f : trace.firings) {
            std::vector<std::string> ants;
            std::vector<std::string> degs;
            for (std::size_t i = 0; i < f.rule.antecedents.size(); ++i) {
                ants.push_back(f.rule.antecedents[i].variable + "=" + f.rule.antecedents[i].term);
                degs.push_back(format_shortest(f.degrees[i]));
            }
            out += std::to_string(f.index + 1) + "," + csv_field(join(ants, ";")) + "," + csv_field(join(degs, ";")) +
                   "," + format_shortest(f.strength) + "," +
                   csv_field(f.rule.consequent.variable + "=" + f.rule.consequent.term) + "\n";
        }
        out += "centroid,,,," + format_shortest(trace.output) + "\n";
        return out;
    }

    std::vector<std::string> ins;
    for (const auto& in : trace.inputs) {
        ins.push_back(in.name + "=" + format_significant(in.used, 6));
    }
    out = trace.output_variable + " at " + join(ins, ", ") + "\n";
    for (const auto& w : trace.warnings) {
        out += "warning: " + w + "\n";
    }
    for (const auto& f : trace.firings) {
        std::vector<std::string> degs;
        for (double d : f.degrees) {
            degs.push_back(format_significant(d, 6));
        }
        std::string idx = std::to_string(f.index + 1);
        out += std::string(idx.size() < 3 ? 3 - idx.size() : 0, ' ') + idx + ". " + serialize_rule(f.rule) +
               "  degrees [" + join(degs, ", ") + "]  strength " + format_significant(f.strength, 6) + "\n";
    }
    out += "centroid: " + format_significant(trace.output, 6) + "\n";
    return out;
}

}  // namespace mfl
