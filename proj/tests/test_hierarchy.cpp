#include <cmath>

#include "doctest.h"
#include "mfl/errors.hpp"
#include "mfl/hierarchy.hpp"

using namespace mfl;

namespace {

FactorNode leaf(std::string name) {
    FactorNode n;
    n.name = std::move(name);
    return n;
}

FactorNode mean(std::string name, std::vector<FactorNode> children) {
    FactorNode n;
    n.name = std::move(name);
    n.kind = NodeKind::MeanNode;
    n.children = std::move(children);
    return n;
}

FactorNode lost_devices_node() {
    FactorNode n;
    n.name = "LostDevices";
    n.kind = NodeKind::FisNode;
    n.children = {leaf("SecurityQuestions"), leaf("LostOrStolenReports")};
    n.fis = make_group_fis(load_rulebase_file(MFL_DATA_DIR "/rules/lost_devices.rules"), 2);
    n.rules_path = "rules/lost_devices.rules";
    return n;
}

std::vector<std::string> child_names(const FactorNode& n) {
    std::vector<std::string> out;
    for (const auto& c : n.children) out.push_back(c.name);
    return out;
}

LeafScores all_leaves(const FactorTree& tree, double score) {
    LeafScores s;
    for (const auto* l : tree.leaves()) s[l->name] = score;
    return s;
}

}  // namespace

TEST_CASE("vulnerability is the complement of security") {
    CHECK(vulnerability(6.5) == 3.5);
    CHECK(vulnerability(10.0) == 0.0);
    CHECK(vulnerability(0.0) == 10.0);
    CHECK(std::abs(vulnerability(5.54) - 4.46) < 1e-12);
    CHECK_THROWS_AS(vulnerability(10.5), RangeError);
    CHECK_THROWS_AS(vulnerability(-0.1), RangeError);
}

TEST_CASE("node kinds") {
    CHECK(to_string(NodeKind::FisNode) == "fis-node");
    CHECK(parse_node_kind("mean-node") == NodeKind::MeanNode);
    CHECK(parse_node_kind("leaf-group") == NodeKind::LeafGroup);
    CHECK_FALSE(parse_node_kind("fis").has_value());
}

TEST_CASE("mean-node scoring") {
    FactorNode mdm = mean("MDM", {leaf("LostDevices"), leaf("DeviceControls")});
    NodeScore s = evaluate_node(mdm, {{"LostDevices", 6.5}, {"DeviceControls", 4.58}});
    CHECK(std::abs(s.security - 5.54) < 1e-12);
    CHECK(std::abs(s.vulnerability - 4.46) < 1e-12);
    CHECK(s.vulnerability == 10.0 - s.security);
    REQUIRE(s.children.size() == 2);
    CHECK(s.children[0].vulnerability == 3.5);

    FactorNode single = mean("Only", {leaf("A")});
    CHECK(evaluate_node(single, {{"A", 7.25}}).security == 7.25);
}

TEST_CASE("missing and out-of-range leaf scores") {
    FactorNode mdm = mean("MDM", {leaf("LostDevices"), leaf("DeviceControls")});
    try {
        evaluate_node(mdm, {{"LostDevices", 6.5}});
        FAIL("expected an assessment error");
    } catch (const AssessmentError& e) {
        CHECK(std::string(e.what()).find("DeviceControls") != std::string::npos);
    }
    CHECK_THROWS_AS(evaluate_node(mdm, {{"LostDevices", 6.5}, {"DeviceControls", 11.0}}), AssessmentError);
}

TEST_CASE("fis-node scoring") {
    FactorNode n = lost_devices_node();
    NodeScore s = evaluate_node(n, {{"SecurityQuestions", 6.2}, {"LostOrStolenReports", 7.97}});
    CHECK(s.security >= 5.5);
    CHECK(s.security <= 7.5);
    REQUIRE(s.trace.has_value());
    CHECK(s.trace->firings.size() == 25);
    CHECK(s.trace->output == s.security);
    CHECK(s.trace->inputs[0].name == "Group_1");
    CHECK(s.trace->inputs[0].value == 6.2);
}

TEST_CASE("group inference systems") {
    CHECK(group_input_name(0) == "Group_1");
    CHECK(group_input_name(2) == "Group_3");
    auto rb = load_rulebase_file(MFL_DATA_DIR "/rules/lost_devices.rules");
    CHECK(make_group_fis(rb, 2)->output().name() == "LostDevices");
    CHECK_THROWS_AS(make_group_fis(rb, 3), ArityError);
}

TEST_CASE("tree invariants") {
    CHECK_THROWS_AS(FactorTree("T", mean("Root", {leaf("A"), leaf("A")})), ConfigError);
    CHECK_THROWS_AS(FactorTree("T", mean("Root", {})), ConfigError);

    FactorNode bad_leaf = leaf("L");
    bad_leaf.children.push_back(leaf("M"));
    CHECK_THROWS_AS(FactorTree("T", bad_leaf), ConfigError);

    FactorNode three = lost_devices_node();
    three.children.push_back(leaf("Extra"));
    CHECK_THROWS_AS(FactorTree("T", three), ConfigError);

    FactorTree ok("T", mean("Root", {lost_devices_node(), leaf("B")}));
    CHECK(ok.node_count() == 5);
    CHECK(ok.find("LostOrStolenReports") != nullptr);
    CHECK(ok.find("Nope") == nullptr);
    auto leaves = ok.leaves();
    REQUIRE(leaves.size() == 3);
    CHECK(leaves[0]->name == "SecurityQuestions");
    CHECK(leaves[2]->name == "B");
}

TEST_CASE("shipped mobile-devices hierarchy") {
    FactorTree tree = load_hierarchy_file(MFL_DATA_DIR "/mobile_devices.json");
    CHECK(tree.name() == "MobileDevices");
    CHECK(tree.root().name == "MobileDevices");
    CHECK(child_names(tree.root()) == std::vector<std::string>{"EMM", "UAC", "Monitoring", "Encryption"});

    const FactorNode* mdm = tree.find("MDM");
    REQUIRE(mdm != nullptr);
    CHECK(mdm->kind == NodeKind::MeanNode);
    CHECK(child_names(*mdm) == std::vector<std::string>{"LostDevices", "DeviceControls"});

    const FactorNode* lost = tree.find("LostDevices");
    REQUIRE(lost != nullptr);
    CHECK(lost->kind == NodeKind::FisNode);
    CHECK(lost->fis->rules().size() == 25);
    CHECK_FALSE(lost->provenance.empty());
}

TEST_CASE("shipped network-security hierarchy") {
    FactorTree tree = load_hierarchy_file(MFL_DATA_DIR "/network_security.json");
    CHECK(tree.root().name == "NetworkSecurity");
    CHECK(child_names(tree.root()) ==
          std::vector<std::string>{"Availability", "Accuracy", "Integrity", "WirelessSecurity", "Confidentiality",
                                   "UAC", "Encryption", "QualityTesting"});
}

TEST_CASE("corner sweeps of the shipped trees") {
    for (const char* file : {"/mobile_devices.json", "/network_security.json"}) {
        FactorTree tree = load_hierarchy_file(std::string(MFL_DATA_DIR) + file);
        CHECK(assess(tree, all_leaves(tree, 10.0)).root.security > 8.0);
        CHECK(assess(tree, all_leaves(tree, 0.0)).root.vulnerability > 8.0);
    }
}

TEST_CASE("assess") {
    FactorTree tree = load_hierarchy_file(MFL_DATA_DIR "/mobile_devices.json");
    LeafScores scores = all_leaves(tree, 5.0);
    AssessmentReport report = assess(tree, scores);
    CHECK(report.tree == "MobileDevices");
    CHECK_FALSE(report.metadata.has_value());

    auto nodes = flatten(report.root);
    CHECK(nodes.size() == tree.node_count());
    CHECK(nodes.front()->name == "MobileDevices");
    for (const auto* n : nodes) {
        REQUIRE(n->vulnerability == 10.0 - n->security);
        REQUIRE(n->security >= 0.0);
        REQUIRE(n->security <= 10.0);
    }

    scores["MDM"] = 3.0;
    CHECK_THROWS_AS(assess(tree, scores), AssessmentError);
}

TEST_CASE("hierarchy documents") {
    using nlohmann::json;
    const std::filesystem::path base = MFL_DATA_DIR;

    SUBCASE("bare root node") {
        json doc = {{"name", "Root"}, {"kind", "mean-node"}, {"children", {{{"name", "A"}, {"kind", "leaf-group"}}}}};
        FactorTree tree = load_hierarchy(doc, base);
        CHECK(tree.name() == "Root");
    }

    SUBCASE("every violation is collected") {
        json doc = {{"tree", "T"},
                    {"root",
                     {{"name", "Root"},
                      {"kind", "mean-node"},
                      {"children",
                       {{{"name", "A"}, {"kind", "leaf"}},
                        {{"name", "B"}, {"kind", "leaf-group"}, {"colour", "red"}},
                        {{"name", "C"}, {"kind", "fis-node"}, {"rules", "rules/missing.rules"},
                         {"children", {{{"name", "C1"}, {"kind", "leaf-group"}}, {{"name", "C2"}, {"kind", "leaf-group"}}}}}}}}}};
        try {
            load_hierarchy(doc, base);
            FAIL("expected a configuration error");
        } catch (const ConfigError& e) {
            CHECK(e.diagnostics().size() >= 3);
        }
    }

    SUBCASE("arity mismatch names the node") {
        try {
            load_hierarchy_file(MFL_FIXTURE_DIR "/arity_mismatch.json");
            FAIL("expected a configuration error");
        } catch (const ConfigError& e) {
            REQUIRE_FALSE(e.diagnostics().empty());
            CHECK(e.diagnostics().front().message.find("ThreeWay") != std::string::npos);
        }
    }

    CHECK_THROWS_AS(load_hierarchy_file(MFL_FIXTURE_DIR "/does_not_exist.json"), IoError);
}
