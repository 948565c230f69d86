#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mfl/hierarchy.hpp"

namespace mfl {

struct Question {
    std::string id;
    std::string text;
    std::string target;                          // leaf-group name
    std::map<std::string, std::string> anchors;  // term label -> what that answer means
    std::vector<std::string> standards;

    bool operator==(const Question&) const = default;
};

struct Questionnaire {
    std::vector<Question> questions;
    std::vector<Diagnostic> warnings;
};

/// Reads a JSON array of question objects. With a tree, every target must name one of its leaf groups.
/// Throws ConfigError listing every problem (duplicate ids, unknown targets, partial anchor sets).
Questionnaire load_questionnaire(const nlohmann::json& document, const FactorTree* tree = nullptr);
Questionnaire load_questionnaire_file(const std::filesystem::path& path, const FactorTree* tree = nullptr);

/// A term label or a crisp weight on the 0..10 scale.
using Answer = std::variant<std::string, double>;
using AnswerSet = std::map<std::string, Answer>;

AnswerSet load_answers(const nlohmann::json& document);
AnswerSet load_answers_file(const std::filesystem::path& path);

/// Numbers pass through (must lie in the universe); labels map to the term's prototype.
/// Label matching ignores case, spaces, '-' and '_' ("Very High" names veryHigh).
double map_answer(const Answer& answer, const LinguisticVariable& variable);

/// Mean mapped weight of the answered questions targeting each leaf group.
/// Throws AssessmentError listing every leaf group without an answer.
LeafScores score_leaf_groups(const std::vector<Question>& questions, const AnswerSet& answers,
                             const FactorTree& tree);

enum class ReportFormat { Json, Text };
enum class TraceFormat { Text, Csv };

nlohmann::json report_to_json(const AssessmentReport& report);
AssessmentReport report_from_json(const nlohmann::json& document);

/// JSON is the stable form. Text lists "name: security S, vulnerability V" depth-first.
std::string emit_report(const AssessmentReport& report, ReportFormat format);

/// One row per rule (firing strength 0 included) and a footer with the centroid.
std::string emit_trace(const TraceSummary& trace, TraceFormat format);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string content_hash(std::string_view bytes);

std::string read_text_file(const std::filesystem::path& path);  // throws IoError

}  // namespace mfl
