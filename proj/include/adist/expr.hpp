#pragma once

#include <memory>

#include "adist/diff_op.hpp"

namespace adist {

/** Syntax error with 1-based position information. */
struct ParseError : std::runtime_error {
    ParseError(std::string msg, unsigned line, unsigned col)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line(line),
          col(col) {}
    unsigned line;
    unsigned col;
};

/**
 * AST of the calculator language: sums of signed products of atoms; atoms are
 * generators (xi<k>, xi'[j], e, f, h, binom(h,k), d<k>), coordinate monomials
 * t^j / T^j, exact scalars (with factorial literals), parenthesized
 * subexpressions and brackets [x,y].
 */
struct Expr {
    enum class Kind { scalar, generator, coord, sum, prod, quot, bracket, power, negate };

    Kind kind = Kind::scalar;
    // scalar
    mpz_class num = 0, den = 1;
    // generator
    std::string label;
    PowerStyle style = PowerStyle::plain;
    std::uint32_t gen_exp = 1;
    // coordinate monomial
    long coord_exp = 1;
    // power node exponent
    std::uint32_t pow_exp = 1;

    std::vector<Expr> children;
};

/// Parse the calculator language; throws ParseError with line/column.
Expr parse(const std::string& text);

/// Evaluate as a distribution over the given group.
DistElement eval_dist(const Expr& e, const Group& g, const LevelContext& ctx);

/// Evaluate as a differential operator on the given chart ('d' is the derivation).
DiffOp eval_diffop(const Expr& e, const Chart& chart, const LevelContext& ctx);

}  // namespace adist
