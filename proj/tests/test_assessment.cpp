#include <sstream>

#include "doctest.h"
#include "mfl/assessment.hpp"
#include "mfl/errors.hpp"

using namespace mfl;
using nlohmann::json;

namespace {

const FactorTree& mobile_tree() {
    static const FactorTree tree = load_hierarchy_file(MFL_DATA_DIR "/mobile_devices.json");
    return tree;
}

FactorTree pinned_tree() { return load_hierarchy_file(MFL_FIXTURE_DIR "/mdm_pinned.json"); }

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("shipped questionnaire") {
    auto q = load_questionnaire_file(MFL_DATA_DIR "/mobile_devices_questions.json", &mobile_tree());
    CHECK(q.warnings.empty());

    const Question* lost = nullptr;
    for (const auto& question : q.questions) {
        if (question.target == "LostOrStolenReports") lost = &question;
    }
    REQUIRE(lost != nullptr);
    REQUIRE(lost->anchors.size() == 5);
    CHECK(lost->anchors.at("veryLow").rfind("DOT never requires their employees to report", 0) == 0);
    for (const auto& label : default_term_labels()) CHECK(lost->anchors.count(label) == 1);

    // Every leaf group has at least one question.
    for (const auto* leaf : mobile_tree().leaves()) {
        bool found = false;
        for (const auto& question : q.questions) found = found || question.target == leaf->name;
        CHECK_MESSAGE(found, leaf->name);
    }
}

TEST_CASE("questionnaire validation") {
    json unknown_target = json::array({{{"id", "q1"}, {"text", "?"}, {"target", "NoSuchGroup"}}});
    CHECK_THROWS_AS(load_questionnaire(unknown_target, &mobile_tree()), ConfigError);

    json not_a_leaf = json::array({{{"id", "q1"}, {"text", "?"}, {"target", "MDM"}}});
    CHECK_THROWS_AS(load_questionnaire(not_a_leaf, &mobile_tree()), ConfigError);

    json duplicate = json::array({{{"id", "q1"}, {"text", "?"}, {"target", "BYOD"}},
                                  {{"id", "q1"}, {"text", "?"}, {"target", "BYOD"}}});
    CHECK_THROWS_AS(load_questionnaire(duplicate, &mobile_tree()), ConfigError);

    json partial_anchors = json::array(
        {{{"id", "q1"}, {"text", "?"}, {"target", "BYOD"}, {"anchors", {{"low", "a"}, {"high", "b"}}}}});
    CHECK_THROWS_AS(load_questionnaire(partial_anchors, &mobile_tree()), ConfigError);

    auto empty = load_questionnaire(json::array(), &mobile_tree());
    CHECK(empty.questions.empty());
    CHECK(empty.warnings.size() == 1);

    auto untied = load_questionnaire(unknown_target);
    CHECK(untied.questions.size() == 1);
}

TEST_CASE("answer mapping") {
    auto v = make_default_variable("Answer");
    CHECK(map_answer(Answer{std::string("veryHigh")}, v) == 10.0);
    CHECK(map_answer(Answer{std::string("medium")}, v) == 5.0);
    CHECK(map_answer(Answer{std::string("Very High")}, v) == 10.0);
    CHECK(map_answer(Answer{std::string("very_low")}, v) == 0.0);
    CHECK(map_answer(Answer{7.97}, v) == 7.97);
    CHECK_THROWS_AS(map_answer(Answer{std::string("extreme")}, v), InputError);
    CHECK_THROWS_AS(map_answer(Answer{10.5}, v), InputError);
}

TEST_CASE("answer documents") {
    auto a = load_answers(json{{"q1", "high"}, {"q2", 4.5}});
    CHECK(std::get<std::string>(a.at("q1")) == "high");
    CHECK(std::get<double>(a.at("q2")) == 4.5);
    CHECK_THROWS(load_answers(json{{"q1", true}}));
    CHECK_THROWS(load_answers(json::array()));
}

TEST_CASE("leaf-group scoring") {
    FactorTree tree("T", [] {
        FactorNode root;
        root.name = "Root";
        root.kind = NodeKind::MeanNode;
        for (const char* n : {"A", "B", "C"}) {
            FactorNode leaf;
            leaf.name = n;
            root.children.push_back(leaf);
        }
        return root;
    }());
    std::vector<Question> questions = {
        {"a1", "", "A", {}, {}},
        {"a2", "", "A", {}, {}},
        {"b1", "", "B", {}, {}},
        {"c1", "", "C", {}, {}},
    };

    auto scores = score_leaf_groups(questions, {{"a1", 5.0}, {"a2", 7.4}, {"b1", std::string("high")}, {"c1", 1.0}},
                                    tree);
    CHECK(scores.at("A") == doctest::Approx(6.2).epsilon(1e-12));
    CHECK(scores.at("B") == 7.5);

    try {
        score_leaf_groups(questions, {{"a1", 5.0}}, tree);
        FAIL("expected an assessment error");
    } catch (const AssessmentError& e) {
        std::string msg = e.what();
        CHECK(msg.find("B") != std::string::npos);
        CHECK(msg.find("C") != std::string::npos);
    }

    // A group no question targets can never be scored.
    questions.pop_back();
    CHECK_THROWS_AS(score_leaf_groups(questions, {{"a1", 5.0}, {"b1", 5.0}}, tree), AssessmentError);

    CHECK_THROWS_AS(score_leaf_groups(questions, {{"a1", 5.0}, {"b1", 5.0}, {"zz", 1.0}}, tree), AssessmentError);
}

TEST_CASE("text report") {
    FactorTree tree = pinned_tree();
    AssessmentReport report = assess(tree, {{"LostDevices", 6.5}, {"DeviceControls", 4.58}});
    std::string text = emit_report(report, ReportFormat::Text);
    CHECK(text.find("MDM: security 5.54, vulnerability 4.46") != std::string::npos);
    CHECK(text.find("  LostDevices: security 6.50, vulnerability 3.50") != std::string::npos);

    AssessmentReport empty;
    CHECK_THROWS_AS(emit_report(empty, ReportFormat::Text), AssessmentError);
    CHECK_THROWS_AS(emit_report(empty, ReportFormat::Json), AssessmentError);
}

TEST_CASE("JSON report round trip") {
    const FactorTree& tree = mobile_tree();
    LeafScores scores;
    double s = 0.5;
    for (const auto* leaf : tree.leaves()) {
        scores[leaf->name] = s;
        s = s >= 9.5 ? 0.25 : s + 0.7;
    }
    AssessmentReport report = assess(tree, scores);
    report.metadata = ReportMetadata{"2026-01-01T00:00:00Z", {{"hierarchy", "00ff"}}};

    std::string text = emit_report(report, ReportFormat::Json);
    AssessmentReport back = report_from_json(json::parse(text));
    CHECK(back == report);
    CHECK(emit_report(back, ReportFormat::Json) == text);

    report.metadata.reset();
    CHECK(report_from_json(report_to_json(report)) == report);
    CHECK_FALSE(report_to_json(report).contains("metadata"));
}

TEST_CASE("inference trace documents") {
    FactorNode node = *mobile_tree().find("LostDevices");
    auto result = infer(*node.fis, {{"Group_1", 6.2}, {"Group_2", 7.97}});
    auto summary = summarize(result.trace, "LostDevices");

    std::string csv = emit_trace(summary, TraceFormat::Csv);
    std::istringstream in(csv);
    std::string header, line, last;
    std::getline(in, header);
    CHECK(header == "rule_index,antecedents,degrees,strength,consequent");
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind("centroid,", 0) == 0) {
            last = line;
        } else {
            ++rows;
        }
    }
    CHECK(rows == 25);
    REQUIRE_FALSE(last.empty());
    CHECK(std::stod(last.substr(last.rfind(',') + 1)) == result.output);
    CHECK(csv.find("13,Group_1=medium;Group_2=medium,") != std::string::npos);

    std::string text = emit_trace(summary, TraceFormat::Text);
    CHECK(text.find("centroid: ") != std::string::npos);
    CHECK(count_lines(text) >= 26);
}

TEST_CASE("content hash") {
    CHECK(content_hash("") == "cbf29ce484222325");
    CHECK(content_hash("a") == "af63dc4c8601ec8c");
    CHECK(content_hash("foobar") == "85944171f73967e8");
    CHECK_THROWS_AS(read_text_file(MFL_FIXTURE_DIR "/nope.json"), IoError);
}
