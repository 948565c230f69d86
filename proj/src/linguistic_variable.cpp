#include "mfl/linguistic_variable.hpp"

#include <cctype>
#include <set>

#include "mfl/errors.hpp"

namespace mfl {

bool is_identifier(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    auto head = static_cast<unsigned char>(s.front());
    if (!(std::isalpha(head) || head == '_')) {
        return false;
    }
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || u == '_')) {
            return false;
        }
    }
    return true;
}

LinguisticVariable::LinguisticVariable(std::string name, Universe universe, std::vector<Term> terms)
    : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
    if (!is_identifier(name_)) {
        throw ConfigError("invalid variable name '" + name_ + "'");
    }
    if (terms_.empty()) {
        throw ConfigError("variable '" + name_ + "' has no terms");
    }
    std::set<std::string, std::less<>> seen;
    for (const auto& t : terms_) {
        if (!is_identifier(t.label)) {
            throw ConfigError("variable '" + name_ + "' has invalid term label '" + t.label + "'");
        }
        if (!seen.insert(t.label).second) {
            throw ConfigError("variable '" + name_ + "' has duplicate term '" + t.label + "'");
        }
    }
}

std::optional<std::size_t> LinguisticVariable::term_index(std::string_view label) const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

const Term& LinguisticVariable::term(std::string_view label) const {
    auto idx = term_index(label);
    if (!idx) {
        throw InputError("variable '" + name_ + "' has no term '" + std::string(label) + "'");
    }
    return terms_[*idx];
}

LinguisticVariable LinguisticVariable::renamed(std::string name) const {
    return LinguisticVariable(std::move(name), universe_, terms_);
}

const std::vector<std::string>& default_term_labels() {
    static const std::vector<std::string> labels{"veryLow", "low", "medium", "high", "veryHigh"};
    return labels;
}

LinguisticVariable make_uniform_partition(std::string name, const Universe& universe,
                                          const std::vector<std::string>& labels) {
    if (labels.size() < 2) {
        throw ConfigError("a uniform partition needs at least 2 labels, got " + std::to_string(labels.size()));
    }
    const std::size_t k = labels.size();
    std::vector<double> peaks(k);
    for (std::size_t i = 0; i < k; ++i) {
        peaks[i] = universe.lo() + (universe.hi() - universe.lo()) * static_cast<double>(i) / static_cast<double>(k - 1);
    }
    peaks.back() = universe.hi();

    std::vector<Term> terms;
    terms.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        // Feet sit on the neighbouring peaks, which is what makes adjacent degrees sum to one.
        double left = i == 0 ? peaks[i] : peaks[i - 1];
        double right = i + 1 == k ? peaks[i] : peaks[i + 1];
        terms.push_back(Term{labels[i], TriangularMF(left, peaks[i], right)});
    }
    return LinguisticVariable(std::move(name), universe, std::move(terms));
}

LinguisticVariable make_default_variable(std::string name, std::size_t samples) {
    return make_uniform_partition(std::move(name), Universe(kDefaultLo, kDefaultHi, samples), default_term_labels());
}

}  // namespace mfl
