#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "adist/padic.hpp"

namespace adist {

/**
 * Basis, structure constants and root data presenting a split reductive Lie
 * algebra over V.  Basis order is fixed as [N-part | torus | Nbar-part]; the
 * torus basis is chosen so that the h of every sl2-triple is a basis element
 * and the root values alpha_j(xi''_k) are integers.
 */
struct ChevalleyDatum {
    struct Sl2Triple {
        unsigned h, e, f;  // basis indices with [h,e]=2e, [h,f]=-2f, [e,f]=h
    };

    std::string name;
    unsigned q = 0;  // number of positive (and of negative) root vectors
    unsigned l = 0;  // torus dimension
    std::vector<std::string> labels;  // size 2q+l, in basis order
    /// brackets [x_i, x_j] for i < j, as sparse rows (basis index, integer coefficient)
    std::map<std::pair<unsigned, unsigned>, std::vector<std::pair<unsigned, long>>> table;
    /// alpha[j][k] = alpha_j(xi''_k) for the positive root vector j and torus element k
    std::vector<std::vector<long>> alpha;
    std::vector<Sl2Triple> triples;

    unsigned dim() const { return 2 * q + l; }
    bool is_positive(unsigned i) const { return i < q; }
    bool is_torus(unsigned i) const { return i >= q && i < q + l; }
    bool is_negative(unsigned i) const { return i >= q + l; }

    /// [x_i, x_j] with antisymmetry filled in; empty when they commute.
    std::vector<std::pair<unsigned, long>> bracket(unsigned i, unsigned j) const;

    /// Jacobi identity on all basis triples plus the torus/root invariants.
    void validate() const;

    static std::shared_ptr<const ChevalleyDatum> sl2();
    static std::shared_ptr<const ChevalleyDatum> gl2();
    static std::shared_ptr<const ChevalleyDatum> sl2xsl2();
    static std::shared_ptr<const ChevalleyDatum> by_name(const std::string& name);
};

/// Coordinate kind of a one-parameter factor.
enum class CoordKind { additive, multiplicative };

/**
 * The group schemes supported by the distribution algebra: powers of the
 * additive and multiplicative groups, their products, and split reductive
 * groups given by a ChevalleyDatum.
 */
class Group {
public:
    static Group additive(unsigned n);
    static Group multiplicative(unsigned n);
    static Group product(const std::vector<Group>& factors);
    static Group reductive(std::shared_ptr<const ChevalleyDatum> datum);
    static Group sl2() { return reductive(ChevalleyDatum::sl2()); }
    static Group gl2() { return reductive(ChevalleyDatum::gl2()); }
    static Group sl2xsl2() { return reductive(ChevalleyDatum::sl2xsl2()); }

    bool is_toral() const { return !datum_; }
    bool is_reductive() const { return datum_ != nullptr; }

    /// Number of exponent slots of a PBW monomial.
    unsigned rank() const;
    const std::vector<CoordKind>& coords() const;
    const std::shared_ptr<const ChevalleyDatum>& datum() const { return datum_; }

    /// Printing label of generator slot i (xi, xi2, e, h, f, ...).
    std::string label(unsigned i) const;
    /// Resolve a generator label to its slot; throws on unknown labels.
    unsigned resolve_label(const std::string& label) const;

    std::string str() const;

    friend bool operator==(const Group& a, const Group& b);
    friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

private:
    Group() = default;
    std::vector<CoordKind> coords_;  // toral groups: one entry per coordinate
    std::vector<std::pair<CoordKind, unsigned>> factors_;  // product shape, for printing/serialization
    std::shared_ptr<const ChevalleyDatum> datum_;          // reductive groups
};

}  // namespace adist
