#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mfl/engine.hpp"

namespace mfl {

inline constexpr double kScoreMax = 10.0;

enum class NodeKind { LeafGroup, FisNode, MeanNode };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

/// A factor in the hierarchy. Leaf groups take their score from the questionnaire; fis-nodes run
/// their inference system over the children's scores, child i feeding input Group_<i+1>;
/// mean-nodes average their children.
struct FactorNode {
    std::string name;
    NodeKind kind = NodeKind::LeafGroup;
    std::vector<FactorNode> children;
    std::shared_ptr<const FisDefinition> fis;  // fis-node only
    std::string rules_path;                    // as written in the document
    std::vector<std::string> provenance;
    std::string note;
};

class FactorTree {
public:
    /// Validates node names and per-kind invariants; throws ConfigError listing every violation.
    FactorTree(std::string name, FactorNode root);

    const std::string& name() const { return name_; }
    const FactorNode& root() const { return root_; }

    const FactorNode* find(std::string_view node_name) const;
    std::vector<const FactorNode*> leaves() const;  // depth-first order
    std::size_t node_count() const;

private:
    std::string name_;
    FactorNode root_;
};

/// Name of the i-th (0-based) input of a fis-node.
std::string group_input_name(std::size_t index);

/// Builds the inference system of a fis-node with `arity` children from its rule base.
/// Inputs are default variables Group_1..Group_<arity>; the output is a default variable named after
/// the rule base's consequent. Throws ArityError when the rule base's inputs do not match.
std::shared_ptr<const FisDefinition> make_group_fis(const RuleBase& rules, std::size_t arity,
                                                    std::size_t samples = kDefaultSamples);

/// Reads a hierarchy document. Rule paths resolve against `base_dir`. Throws ConfigError
/// listing every violation found (bad kinds, duplicate names, dangling rule files, arity mismatch).
FactorTree load_hierarchy(const nlohmann::json& document, const std::filesystem::path& base_dir);

/// Throws IoError if the file cannot be read and ConfigError if it is not valid.
FactorTree load_hierarchy_file(const std::filesystem::path& path);

struct NodeScore {
    std::string name;
    NodeKind kind = NodeKind::LeafGroup;
    double security = 0.0;
    double vulnerability = 0.0;
    std::vector<NodeScore> children;
    std::optional<TraceSummary> trace;  // fis-nodes

    bool operator==(const NodeScore&) const = default;
};

/// 10 - security. Throws RangeError outside [0,10].
double vulnerability(double security);

using LeafScores = std::map<std::string, double>;

/// Scores a subtree bottom-up. Throws AssessmentError for a missing or out-of-range leaf score.
NodeScore evaluate_node(const FactorNode& node, const LeafScores& leaf_scores);

struct ReportMetadata {
    std::string generated_at;
    std::map<std::string, std::string> config_hashes;

    bool operator==(const ReportMetadata&) const = default;
};

struct AssessmentReport {
    std::string tree;
    NodeScore root;
    std::optional<ReportMetadata> metadata;

    bool operator==(const AssessmentReport&) const = default;
};

/// Scores the whole tree. Also rejects scores supplied for names that are not leaf groups.
AssessmentReport assess(const FactorTree& tree, const LeafScores& leaf_scores);

/// Every node score, root first, depth-first.
std::vector<const NodeScore*> flatten(const NodeScore& root);

}  // namespace mfl
