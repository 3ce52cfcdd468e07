#pragma once

#include <stdexcept>
#include <string>

#include "alertswarm/types.hpp"

namespace alertswarm {

/// Fleiss' kappa is undefined because expected chance agreement is 1
/// (every rating in a single category). Carries the observed mean
/// agreement so callers can resolve unanimous agreement to kappa = 1.
class DegenerateAgreement : public std::runtime_error {
public:
    explicit DegenerateAgreement(double mean_agreement)
        : std::runtime_error("fleiss kappa undefined: chance agreement is 1"),
          mean_agreement_(mean_agreement) {}
    double mean_agreement() const { return mean_agreement_; }

private:
    double mean_agreement_;
};

/// Two beliefs about different subjects cannot be scored against each other.
class SubjectMismatch : public std::invalid_argument {
public:
    SubjectMismatch(CellId own, CellId peer)
        : std::invalid_argument("score_response: subjects differ (" +
                                std::to_string(own) + " vs " +
                                std::to_string(peer) + ")") {}
};

/// A behavior report's reporter has no reputation entry.
class UnknownReporter : public std::runtime_error {
public:
    explicit UnknownReporter(AgentId reporter)
        : std::runtime_error("merge_behavior_data: no reputation entry for reporter " +
                             std::to_string(reporter)),
          reporter_(reporter) {}
    AgentId reporter() const { return reporter_; }

private:
    AgentId reporter_;
};

/// Inclusion probability is undefined over an empty candidate set.
class EmptyNeighborhood : public std::runtime_error {
public:
    EmptyNeighborhood()
        : std::runtime_error("inclusion probability undefined: empty neighborhood") {}
};

/// Config file could not be parsed at all.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A parsed config violates an invariant. Names the offending field.
class InvalidConfig : public std::runtime_error {
public:
    InvalidConfig(std::string field, const std::string& rule)
        : std::runtime_error(field + ": " + rule), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace alertswarm
