#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfl/fuzzy_set.hpp"
#include "mfl/membership.hpp"

namespace mfl {

struct Term {
    std::string label;
    MembershipFunction mf;

    bool operator==(const Term&) const = default;
};

/// A named universe with an ordered set of labelled terms. Term order is meaningful:
/// rule completion treats the index of a term as its rank.
class LinguisticVariable {
public:
    LinguisticVariable(std::string name, Universe universe, std::vector<Term> terms);

    const std::string& name() const { return name_; }
    const Universe& universe() const { return universe_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::optional<std::size_t> term_index(std::string_view label) const;
    const Term& term(std::string_view label) const;  // throws InputError for unknown labels

    /// Same variable under a different name.
    LinguisticVariable renamed(std::string name) const;

    bool operator==(const LinguisticVariable&) const = default;

private:
    std::string name_;
    Universe universe_;
    std::vector<Term> terms_;
};

/// veryLow, low, medium, high, veryHigh.
const std::vector<std::string>& default_term_labels();

/// Evenly spaced triangles whose neighbours cross at 0.5; the two end terms are shoulders,
/// so every point of the universe has memberships summing to one.
LinguisticVariable make_uniform_partition(std::string name, const Universe& universe,
                                          const std::vector<std::string>& labels);

/// Five-term uniform partition over [0,10].
LinguisticVariable make_default_variable(std::string name, std::size_t samples = kDefaultSamples);

bool is_identifier(std::string_view s);

}  // namespace mfl
