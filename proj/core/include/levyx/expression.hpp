#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "levyx/jet.hpp"

namespace levyx {

/// Arithmetic expression over named variables, parsed once and evaluated
/// either on doubles or on real jets (for exact derivatives).
///
/// Supported: + - * / ^, unary minus, parentheses, numbers, the constants
/// pi and e, and the functions exp, log, sqrt, sin, cos, pow, abs.
/// Identifiers found in `params` are bound as constants at parse time.
class Expression {
public:
    struct Node;

    Expression() = default;

    static Expression parse(const std::string& text, const std::vector<std::string>& variables,
                            const std::map<std::string, double>& params = {});

    /// `values` is ordered like the `variables` passed to parse().
    double eval(const std::vector<double>& values) const;

    /// Jet in the variable at `wrt`; the remaining variables are held fixed.
    RJet eval_jet(const std::vector<double>& values, std::size_t wrt, int order) const;

    bool depends_on(const std::string& variable) const;
    bool is_constant() const;
    const std::string& text() const noexcept { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::vector<std::string> variables_;
    std::string text_;
};

}  // namespace levyx
