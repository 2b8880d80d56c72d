#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qiso {

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

/// Numeric evaluation hit a (near-)vanishing denominator.
struct EvaluationPole : std::domain_error {
    EvaluationPole(const std::string& what, std::string factor)
        : std::domain_error(what), offending_factor(std::move(factor))
    {
    }
    std::string offending_factor;
};

/// Input exceeded a configured size cap (word length, degree).
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonTerminatingRule : std::invalid_argument {
    NonTerminatingRule(const std::string& what, std::string rule)
        : std::invalid_argument(what), rule_text(std::move(rule))
    {
    }
    std::string rule_text;
};

struct AlgebraMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// pi_rs cannot be extended to the localized algebra: s = +-i q^n.
struct NonExtendable : std::domain_error {
    NonExtendable(const std::string& what, int n) : std::domain_error(what), offending_n(n) {}
    int offending_n;
};

/// Representation matrix has a pole at basis index m.
struct WindowPole : std::domain_error {
    WindowPole(const std::string& what, std::vector<int> idx) : std::domain_error(what), indices(std::move(idx)) {}
    std::vector<int> indices;
};

struct ParseError : std::invalid_argument {
    ParseError(const std::string& msg, int l, int c)
        : std::invalid_argument(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l), column(c)
    {
    }
    int line;
    int column;
};

}  // namespace qiso
