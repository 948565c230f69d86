#include "mfl/hierarchy.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mfl/format.hpp"

namespace mfl {

using nlohmann::json;

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::LeafGroup:
            return "leaf-group";
        case NodeKind::FisNode:
            return "fis-node";
        case NodeKind::MeanNode:
            return "mean-node";
    }
    return "unknown";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    if (text == "leaf-group") return NodeKind::LeafGroup;
    if (text == "fis-node") return NodeKind::FisNode;
    if (text == "mean-node") return NodeKind::MeanNode;
    return std::nullopt;
}

std::string group_input_name(std::size_t index) { return "Group_" + std::to_string(index + 1); }

std::shared_ptr<const FisDefinition> make_group_fis(const RuleBase& rules, std::size_t arity, std::size_t samples) {
    if (rules.empty()) {
        throw ConfigError("rule base is empty");
    }
    std::vector<LinguisticVariable> inputs;
    std::set<std::string> expected;
    for (std::size_t i = 0; i < arity; ++i) {
        inputs.push_back(make_default_variable(group_input_name(i), samples));
        expected.insert(group_input_name(i));
    }
    std::set<std::string> declared(rules.inputs().begin(), rules.inputs().end());
    if (declared != expected) {
        std::string names;
        for (const auto& n : rules.inputs()) {
            names += (names.empty() ? "" : ", ") + n;
        }
        throw ArityError("node has " + std::to_string(arity) + " children but its rule base declares " +
                         std::to_string(declared.size()) + " input(s) (" + names + "); expected Group_1..Group_" +
                         std::to_string(arity));
    }
    return std::make_shared<const FisDefinition>(std::move(inputs), make_default_variable(rules.output(), samples),
                                                 rules);
}

namespace {

void validate_node(const FactorNode& node, const std::string& path, std::set<std::string>& seen,
                   std::vector<Diagnostic>& out) {
    auto err = [&](std::string code, std::string msg) {
        out.push_back({Severity::Error, std::move(code), path + ": " + msg, 0});
    };
    if (!is_identifier(node.name)) {
        err("name", "invalid node name '" + node.name + "'");
    } else if (!seen.insert(node.name).second) {
        err("duplicate", "node name '" + node.name + "' is used more than once");
    }
    switch (node.kind) {
        case NodeKind::LeafGroup:
            if (!node.children.empty()) {
                err("children", "leaf-group must not have children");
            }
            break;
        case NodeKind::FisNode:
            if (node.children.empty()) {
                err("children", "fis-node needs at least one child");
            }
            if (!node.fis) {
                err("rules", "fis-node has no inference system");
            } else if (node.fis->inputs().size() != node.children.size()) {
                err("arity", "fis-node has " + std::to_string(node.children.size()) +
                                 " children but its inference system takes " +
                                 std::to_string(node.fis->inputs().size()) + " inputs");
            }
            break;
        case NodeKind::MeanNode:
            if (node.children.empty()) {
                err("children", "mean-node needs at least one child");
            }
            break;
    }
    for (const auto& child : node.children) {
        validate_node(child, path + "/" + child.name, seen, out);
    }
}

void collect_leaves(const FactorNode& node, std::vector<const FactorNode*>& out) {
    if (node.kind == NodeKind::LeafGroup) {
        out.push_back(&node);
    }
    for (const auto& c : node.children) {
        collect_leaves(c, out);
    }
}

const FactorNode* find_node(const FactorNode& node, std::string_view name) {
    if (node.name == name) {
        return &node;
    }
    for (const auto& c : node.children) {
        if (const auto* hit = find_node(c, name)) {
            return hit;
        }
    }
    return nullptr;
}

std::size_t count_nodes(const FactorNode& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) {
        n += count_nodes(c);
    }
    return n;
}

class DocumentReader {
public:
    explicit DocumentReader(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {}

    FactorNode read_node(const json& j, const std::string& parent_path) {
        FactorNode node;
        std::string path = parent_path;
        if (!j.is_object()) {
            error(path.empty() ? "<root>" : path, "node", "node must be a JSON object");
            return node;
        }
        if (auto it = j.find("name"); it != j.end() && it->is_string()) {
            node.name = it->get<std::string>();
        } else {
            error(path + "/?", "name", "node is missing a string \"name\"");
        }
        path = path.empty() ? node.name : path + "/" + node.name;

        static const std::set<std::string> allowed{"name", "kind", "children", "rules", "provenance", "note"};
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (!allowed.contains(key)) {
                error(path, "key", "unknown key \"" + key + "\"");
            }
        }

        if (auto it = j.find("kind"); it != j.end() && it->is_string()) {
            if (auto kind = parse_node_kind(it->get<std::string>())) {
                node.kind = *kind;
            } else {
                error(path, "kind", "unknown kind \"" + it->get<std::string>() + "\"");
            }
        } else {
            error(path, "kind", "node is missing a string \"kind\"");
        }

        if (auto it = j.find("children"); it != j.end()) {
            if (!it->is_array()) {
                error(path, "children", "\"children\" must be an array");
            } else {
                for (const auto& c : *it) {
                    node.children.push_back(read_node(c, path));
                }
            }
        }

        if (auto it = j.find("provenance"); it != j.end()) {
            if (!it->is_array()) {
                error(path, "provenance", "\"provenance\" must be an array of strings");
            } else {
                for (const auto& p : *it) {
                    if (p.is_string()) {
                        node.provenance.push_back(p.get<std::string>());
                    } else {
                        error(path, "provenance", "\"provenance\" entries must be strings");
                    }
                }
            }
        }
        if (auto it = j.find("note"); it != j.end() && it->is_string()) {
            node.note = it->get<std::string>();
        }

        auto rules = j.find("rules");
        if (node.kind == NodeKind::FisNode) {
            if (rules == j.end() || !rules->is_string()) {
                error(path, "rules", "fis-node needs a \"rules\" file path");
            } else {
                node.rules_path = rules->get<std::string>();
                attach_fis(node, path);
            }
        } else if (rules != j.end()) {
            error(path, "rules", "only fis-nodes take a \"rules\" file");
        }
        return node;
    }

    std::vector<Diagnostic> take_diagnostics() { return std::move(diagnostics_); }

private:
    void error(const std::string& path, std::string code, const std::string& msg) {
        diagnostics_.push_back({Severity::Error, std::move(code), path + ": " + msg, 0});
    }

    void attach_fis(FactorNode& node, const std::string& path) {
        std::filesystem::path file = base_dir_ / node.rules_path;
        try {
            node.fis = make_group_fis(load_rulebase_file(file.string()), node.children.size());
        } catch (const IoError&) {
            error(path, "rules", "rule file '" + file.string() + "' cannot be read");
        } catch (const ArityError& e) {
            error(path, "arity", e.what());
        } catch (const ConfigError& e) {
            for (const auto& d : e.diagnostics()) {
                diagnostics_.push_back({d.severity, d.code, path + ": " + node.rules_path + ": " + d.message, d.line});
            }
        }
    }

    std::filesystem::path base_dir_;
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace

FactorTree::FactorTree(std::string name, FactorNode root) : name_(std::move(name)), root_(std::move(root)) {
    std::vector<Diagnostic> diagnostics;
    if (name_.empty()) {
        diagnostics.push_back({Severity::Error, "name", "tree has no name", 0});
    }
    std::set<std::string> seen;
    validate_node(root_, root_.name, seen, diagnostics);
    if (!diagnostics.empty()) {
        throw ConfigError(std::move(diagnostics));
    }
}

const FactorNode* FactorTree::find(std::string_view node_name) const { return find_node(root_, node_name); }

std::vector<const FactorNode*> FactorTree::leaves() const {
    std::vector<const FactorNode*> out;
    collect_leaves(root_, out);
    return out;
}

std::size_t FactorTree::node_count() const { return count_nodes(root_); }

FactorTree load_hierarchy(const json& document, const std::filesystem::path& base_dir) {
    DocumentReader reader(base_dir);
    std::vector<Diagnostic> diagnostics;
    std::string tree_name;
    FactorNode root;

    if (document.is_object() && document.contains("root")) {
        for (const auto& [key, value] : document.items()) {
            (void)value;
            if (key != "tree" && key != "root" && key != "note") {
                diagnostics.push_back({Severity::Error, "key", "unknown top-level key \"" + key + "\"", 0});
            }
        }
        root = reader.read_node(document["root"], "");
        if (auto it = document.find("tree"); it != document.end() && it->is_string()) {
            tree_name = it->get<std::string>();
        } else {
            tree_name = root.name;
        }
    } else {
        root = reader.read_node(document, "");
        tree_name = root.name;
    }

    auto reader_diags = reader.take_diagnostics();
    diagnostics.insert(diagnostics.end(), reader_diags.begin(), reader_diags.end());
    if (!diagnostics.empty()) {
        // Structural checks still run so one pass reports duplicates and arity problems together.
        std::set<std::string> seen;
        std::vector<Diagnostic> structural;
        validate_node(root, root.name, seen, structural);
        for (auto& d : structural) {
            if (d.code == "duplicate" || d.code == "children" || d.code == "name") {
                diagnostics.push_back(std::move(d));
            }
        }
        throw ConfigError(std::move(diagnostics));
    }
    return FactorTree(std::move(tree_name), std::move(root));
}

FactorTree load_hierarchy_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read hierarchy file '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
    return load_hierarchy(doc, path.parent_path());
}

double vulnerability(double security) {
    if (!(security >= 0.0 && security <= kScoreMax)) {
        throw RangeError("security score " + format_shortest(security) + " outside [0,10]");
    }
    return kScoreMax - security;
}

NodeScore evaluate_node(const FactorNode& node, const LeafScores& leaf_scores) {
    NodeScore score;
    score.name = node.name;
    score.kind = node.kind;

    switch (node.kind) {
        case NodeKind::LeafGroup: {
            auto it = leaf_scores.find(node.name);
            if (it == leaf_scores.end()) {
                throw AssessmentError("no score for leaf group '" + node.name + "'");
            }
            if (!(it->second >= 0.0 && it->second <= kScoreMax)) {
                throw AssessmentError("score " + format_shortest(it->second) + " for leaf group '" + node.name +
                                      "' is outside [0,10]");
            }
            score.security = it->second;
            break;
        }
        case NodeKind::FisNode: {
            InputMap inputs;
            for (std::size_t i = 0; i < node.children.size(); ++i) {
                score.children.push_back(evaluate_node(node.children[i], leaf_scores));
                inputs[group_input_name(i)] = score.children.back().security;
            }
            auto result = infer(*node.fis, inputs);
            score.security = result.output;
            score.trace = summarize(result.trace, node.fis->output().name());
            break;
        }
        case NodeKind::MeanNode: {
            double sum = 0.0;
            for (const auto& child : node.children) {
                score.children.push_back(evaluate_node(child, leaf_scores));
                sum += score.children.back().security;
            }
            score.security = sum / static_cast<double>(node.children.size());
            break;
        }
    }
    score.vulnerability = vulnerability(score.security);
    return score;
}

AssessmentReport assess(const FactorTree& tree, const LeafScores& leaf_scores) {
    std::set<std::string> leaf_names;
    for (const auto* leaf : tree.leaves()) {
        leaf_names.insert(leaf->name);
    }
    std::string unknown;
    for (const auto& [name, value] : leaf_scores) {
        (void)value;
        if (!leaf_names.contains(name)) {
            unknown += (unknown.empty() ? "" : ", ") + name;
        }
    }
    if (!unknown.empty()) {
        throw AssessmentError("scores supplied for names that are not leaf groups of '" + tree.name() + "': " + unknown);
    }
    return AssessmentReport{tree.name(), evaluate_node(tree.root(), leaf_scores), std::nullopt};
}

namespace {

void flatten_into(const NodeScore& node, std::vector<const NodeScore*>& out) {
    out.push_back(&node);
    for (const auto& c : node.children) {
        flatten_into(c, out);
    }
}

}  // namespace

std::vector<const NodeScore*> flatten(const NodeScore& root) {
    std::vector<const NodeScore*> out;
    flatten_into(root, out);
    return out;
}

}  // namespace mfl
