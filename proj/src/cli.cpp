#include "mfl/cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>

#include "CLI11.hpp"
#include "mfl/assessment.hpp"
#include "mfl/format.hpp"

namespace mfl::cli {

namespace {

struct ValidateArgs {
    std::string hierarchy;
    std::string questionnaire;
};

struct AssessArgs {
    std::string hierarchy;
    std::string questionnaire;
    std::string answers;
    std::string out;
    std::string format = "json";
    bool no_meta = false;
};

struct ExplainArgs {
    std::string hierarchy;
    std::string node;
    std::string inputs;
    std::string format = "text";
};

struct SurfaceArgs {
    std::string hierarchy;
    std::string node;
    std::size_t resolution = 21;
    std::string out;
};

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
    for (const auto& d : diagnostics) {
        err << to_string(d) << "\n";
    }
}

void write_output(const std::string& path, const std::string& document, std::ostream& out) {
    if (path.empty()) {
        out << document;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << document)) {
        throw IoError("cannot write '" + path + "'");
    }
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void collect_rule_paths(const FactorNode& node, std::vector<std::string>& out) {
    if (node.kind == NodeKind::FisNode) {
        out.push_back(node.rules_path);
    }
    for (const auto& c : node.children) {
        collect_rule_paths(c, out);
    }
}

const FactorNode& require_fis_node(const FactorTree& tree, const std::string& name) {
    const FactorNode* node = tree.find(name);
    if (node == nullptr) {
        throw InputError("no node named '" + name + "' in '" + tree.name() + "'");
    }
    if (node->kind != NodeKind::FisNode) {
        throw InputError("node '" + name + "' is a " + std::string(to_string(node->kind)) +
                         "; only fis-nodes run an inference system");
    }
    return *node;
}

InputMap parse_inputs(const std::string& text) {
    InputMap out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(start, end - start);
        start = end + 1;

        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw InputError("malformed --inputs entry '" + item + "', expected name=value");
        }
        std::string name = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw InputError("malformed number '" + value + "' for input '" + name + "'");
        }
        if (!out.emplace(name, x).second) {
            throw InputError("input '" + name + "' given twice");
        }
    }
    return out;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    FactorTree tree = load_hierarchy_file(a.hierarchy);
    std::vector<Diagnostic> findings;
    std::size_t fis_count = 0;

    std::vector<const FactorNode*> stack{&tree.root()};
    while (!stack.empty()) {
        const FactorNode* node = stack.back();
        stack.pop_back();
        if (node->kind == NodeKind::FisNode) {
            ++fis_count;
            for (auto d : validate_rulebase(node->fis->rules(), node->fis->inputs(), node->fis->output())) {
                d.message = node->name + ": " + d.message;
                findings.push_back(std::move(d));
            }
        }
        for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
            stack.push_back(&*it);
        }
    }

    std::size_t question_count = 0;
    if (!a.questionnaire.empty()) {
        auto q = load_questionnaire_file(a.questionnaire, &tree);
        question_count = q.questions.size();
        findings.insert(findings.end(), q.warnings.begin(), q.warnings.end());
    }

    print_diagnostics(findings, err);
    if (has_errors(findings)) {
        return kExitValidation;
    }
    out << "ok: " << tree.name() << " (" << tree.node_count() << " nodes, " << fis_count << " fis-nodes";
    if (!a.questionnaire.empty()) {
        out << ", " << question_count << " questions";
    }
    out << ")\n";
    return kExitOk;
}

int cmd_assess(const AssessArgs& a, std::ostream& out, std::ostream& err) {
    FactorTree tree = load_hierarchy_file(a.hierarchy);
    auto questionnaire = load_questionnaire_file(a.questionnaire, &tree);
    print_diagnostics(questionnaire.warnings, err);
    auto answers = load_answers_file(a.answers);

    auto scores = score_leaf_groups(questionnaire.questions, answers, tree);
    AssessmentReport report = assess(tree, scores);

    if (!a.no_meta) {
        ReportMetadata meta;
        meta.generated_at = utc_timestamp();
        meta.config_hashes["hierarchy"] = content_hash(read_text_file(a.hierarchy));
        meta.config_hashes["questionnaire"] = content_hash(read_text_file(a.questionnaire));
        meta.config_hashes["answers"] = content_hash(read_text_file(a.answers));
        std::vector<std::string> rule_paths;
        collect_rule_paths(tree.root(), rule_paths);
        auto base = std::filesystem::path(a.hierarchy).parent_path();
        for (const auto& p : rule_paths) {
            meta.config_hashes["rules:" + p] = content_hash(read_text_file(base / p));
        }
        report.metadata = std::move(meta);
    }

    write_output(a.out, emit_report(report, a.format == "text" ? ReportFormat::Text : ReportFormat::Json), out);
    return kExitOk;
}

int cmd_explain(const ExplainArgs& a, std::ostream& out, std::ostream&) {
    FactorTree tree = load_hierarchy_file(a.hierarchy);
    const FactorNode& node = require_fis_node(tree, a.node);
    auto result = infer(*node.fis, parse_inputs(a.inputs));
    auto summary = summarize(result.trace, node.fis->output().name());
    out << emit_trace(summary, a.format == "csv" ? TraceFormat::Csv : TraceFormat::Text);
    return kExitOk;
}

int cmd_surface(const SurfaceArgs& a, std::ostream& out, std::ostream&) {
    FactorTree tree = load_hierarchy_file(a.hierarchy);
    const FactorNode& node = require_fis_node(tree, a.node);
    auto surface = response_surface(*node.fis, a.resolution);
    write_output(a.out, surface_csv(surface), out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-layer fuzzy security and vulnerability scoring", "mflscore"};
    app.require_subcommand(1);

    ValidateArgs validate;
    auto* v = app.add_subcommand("validate", "Check a hierarchy, its rule files and optionally a questionnaire");
    v->add_option("hierarchy", validate.hierarchy, "Hierarchy JSON document")->required();
    v->add_option("--questionnaire", validate.questionnaire, "Questionnaire JSON to cross-check");

    AssessArgs assess_args;
    auto* as = app.add_subcommand("assess", "Score a hierarchy from questionnaire answers");
    as->add_option("hierarchy", assess_args.hierarchy, "Hierarchy JSON document")->required();
    as->add_option("questionnaire", assess_args.questionnaire, "Questionnaire JSON")->required();
    as->add_option("answers", assess_args.answers, "Answers JSON")->required();
    as->add_option("--out", assess_args.out, "Write the report here instead of standard output");
    as->add_option("--format", assess_args.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    as->add_flag("--no-meta", assess_args.no_meta, "Omit timestamp and config hashes");

    ExplainArgs explain;
    auto* ex = app.add_subcommand("explain", "Show the rule-by-rule inference of one fis-node");
    ex->add_option("hierarchy", explain.hierarchy, "Hierarchy JSON document")->required();
    ex->add_option("--node", explain.node, "fis-node name")->required();
    ex->add_option("--inputs", explain.inputs, "Crisp inputs, e.g. Group_1=6.2,Group_2=7.97")->required();
    ex->add_option("--format", explain.format, "Trace format")->check(CLI::IsMember({"text", "csv"}));

    SurfaceArgs surface;
    auto* su = app.add_subcommand("surface", "Export the response surface of a two-input fis-node as CSV");
    su->add_option("hierarchy", surface.hierarchy, "Hierarchy JSON document")->required();
    su->add_option("--node", surface.node, "fis-node name")->required();
    su->add_option("--resolution", surface.resolution, "Grid points per axis");
    su->add_option("--out", surface.out, "Write the CSV here instead of standard output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (*v) return cmd_validate(validate, out, err);
        if (*as) return cmd_assess(assess_args, out, err);
        if (*ex) return cmd_explain(explain, out, err);
        if (*su) return cmd_surface(surface, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const ConfigError& e) {
        print_diagnostics(e.diagnostics(), err);
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}

}  // namespace mfl::cli
