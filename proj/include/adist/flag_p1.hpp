#pragma once

#include "adist/diff_op.hpp"

namespace adist {

/** Twist weight for O(lambda) on P1; lambda = 0 is the untwisted sheaf. */
struct TwistDatum {
    long lambda = 0;
};

/**
 * The Casimir Omega = h^2/2 + h + 2fe of U(sl2) over K, together with the
 * context it was built in.  Centrality and the vanishing constant term are
 * verified properties, not assumptions.
 */
struct CentralElement {
    DistElement omega;

    bool commutes_with_generators() const;
    bool has_zero_constant_term() const;
};

CentralElement casimir(const LevelContext& ctx);

/**
 * Exact substitution t -> 1/t, d -> -t^2 d (closed under divided powers),
 * conjugated by t^lambda; lands in the opposite P1 chart.  Output may have
 * poles; globality is a separate test.
 */
DiffOp chart_transform(const DiffOp& P, const TwistDatum& twist);

/** Basis of global operators of order <= n, each verified pole-free in both charts. */
struct GlobalSectionLattice {
    unsigned order = 0;
    TwistDatum twist;
    std::vector<DiffOp> basis;  // chart-0 presentation

    std::size_t dimension() const { return basis.size(); }
};

GlobalSectionLattice global_sections(unsigned n, const LevelContext& ctx, const TwistDatum& twist,
                                     unsigned max_n = 8);

/**
 * The character theta by which the twisted qmap kills the center, computed two
 * independent ways (chart operator calculus; matrices on the (lambda+1)-dim
 * section space).  Disagreement throws.
 */
ValuedRational theta_character(long lambda, const LevelContext& ctx);

/// Order-n verification of the localization theorem; items list every check.
SuiteReport localization_check(unsigned n, const LevelContext& ctx, const TwistDatum& twist);

}  // namespace adist
