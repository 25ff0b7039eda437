/// Exact character theory for the finite groups arising as symmetry rows and
/// their point stabilizers: irreducible tables with canonical labels,
/// restriction / conjugation / induction, decompositions, and representation
/// extensions along normal inclusions with cyclic quotient.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equivect/cyclotomic.hpp"
#include "equivect/o3group.hpp"

namespace equivect {

// --------------------------------------------------------------------------
// Conjugacy classes
// --------------------------------------------------------------------------

/// Conjugacy classes of a finite group.  The identity class comes first; the
/// remaining classes are sorted by their least element, and every class lists
/// its elements sorted, so the layout is canonical.
struct ConjugacyClasses {
    FiniteGroup group;
    std::vector<std::vector<GroupElement>> classes;

    int classCount() const { return static_cast<int>(classes.size()); }
    const GroupElement& rep(int i) const { return classes[i].front(); }
    /// Index of the class containing g; requires g in the group.
    int classOf(const GroupElement& g) const;
};

ConjugacyClasses conjugacyClasses(const FiniteGroup& G);

// --------------------------------------------------------------------------
// Characters
// --------------------------------------------------------------------------

/// A class function with exact cyclotomic values, one per conjugacy class in
/// the canonical class order of `classes(group)`.  `label` is the canonical
/// irreducible name when the character is one, and "virtual" otherwise.
struct Character {
    FiniteGroup group;
    std::vector<Cyclotomic> values;
    std::string label = "virtual";

    /// chi(id): the dimension for genuine characters.
    Cyclotomic dimension() const { return values.at(0); }
    /// Value at an arbitrary element of the group.
    Cyclotomic valueAt(const GroupElement& g) const;

    friend bool operator==(const Character& a, const Character& b) {
        return a.group == b.group && a.values == b.values;
    }
};

/// Standard inner product (1/|G|) sum chi(g) conj(psi(g)); exact.
Cyclotomic innerProduct(const Character& chi, const Character& psi);

/// Name of the abstract isomorphism type used for the table ("C6", "D4",
/// "A4", "S4", "A5", optionally suffixed "xZ2" for a split central factor).
std::string abstractGroupName(const FiniteGroup& G);

/// Complete irreducible character table with canonical labels:
///   "C{m}:w{k}"                cyclic weights w.r.t. the canonical generator
///   "D{m}:triv|sgn|sgnp|sgnpp|V{k}"   dihedral
///   "A4:1|1a|1b|3", "S4:1|sgn|2|3|3p", "A5:1|3a|3b|4|5"
///   suffix ":+|:-" for the split central order-two factor
/// Throws UnsupportedGroupType if G is outside the supported abstract types.
std::vector<Character> irreducibles(const FiniteGroup& G);
inline std::vector<Character> irreducibles(const FiniteSubgroupHandle& h) {
    return irreducibles(h.group);
}

/// The irreducible of G with the given canonical label.
Character irreducibleByLabel(const FiniteGroup& G, const std::string& label);

/// Restriction of chi to a subgroup (value transport along class fusion).
/// The label is the matching irreducible name of H when the restriction is
/// irreducible, and "virtual" otherwise.  Throws NotASubgroup.
Character restrictCharacter(const Character& chi, const FiniteGroup& H);

/// Conjugated character on g K g^-1: (g.chi)(k) = chi(g^-1 k g).  Accepts a
/// conjugator from any commensurable axial ambient.  Throws AmbientMismatch.
Character conjugateCharacter(const Character& chi, const GroupElement& g);

/// Induced character from chi.group up to G.  Throws NotASubgroup.
Character induceCharacter(const Character& chi, const FiniteGroup& G);

// --------------------------------------------------------------------------
// Decompositions
// --------------------------------------------------------------------------

/// A representation up to isomorphism: sorted (irreducible label,
/// multiplicity) pairs with positive multiplicities.
struct RepDecomposition {
    std::vector<std::pair<std::string, int>> parts;

    bool empty() const { return parts.empty(); }
    int multiplicityOf(const std::string& label) const;
    friend bool operator==(const RepDecomposition&, const RepDecomposition&) = default;
    friend bool operator<(const RepDecomposition& a, const RepDecomposition& b) {
        return a.parts < b.parts;
    }
    std::string str() const;
};

/// Exact decomposition of a genuine character into irreducibles of its group.
/// Throws PreconditionViolation when chi is not a nonnegative integral
/// combination (i.e. properly virtual).
RepDecomposition decompose(const Character& chi);

/// The class function of a decomposition over G.
Character assembleCharacter(const FiniteGroup& G, const RepDecomposition& W);

/// Total dimension of a decomposition over G.
int decompositionDim(const FiniteGroup& G, const RepDecomposition& W);

// --------------------------------------------------------------------------
// Extensions
// --------------------------------------------------------------------------

/// All irreducibles of N2 restricting to the irreducible U of N0, where N0 is
/// normal in N2 with cyclic quotient of order m.  When U is N2-fixed the list
/// has exactly m entries, ordered so that entry l equals entry 0 tensored
/// with the weight-l pullback character of the quotient (w.r.t. the least
/// coset generator).  Throws NotASubgroup / QuotientNotCyclic.
std::vector<Character> extensionsOfIrreducible(const Character& U, const FiniteGroup& N2);

/// All N2-representations restricting to W over N1, found by solving the
/// nonnegative-integer linear system of the restriction matrix between the
/// irreducibles.  Deterministic order (sorted decompositions).
std::vector<RepDecomposition> extensionSet(const FiniteGroup& N1, const RepDecomposition& W,
                                           const FiniteGroup& N2);

/// Input data for the component count of the gluing-automorphism space over
/// a two-point base: the acting group N2, the stabilizer N1 of the base
/// point, the fiber over it, whether N2 moves one base point to the other,
/// and (when it does not) the fiber over the second point.
struct FData {
    FiniteGroup N2;
    FiniteGroup N1;
    RepDecomposition fiber;
    bool transitive = false;
    std::optional<RepDecomposition> otherFiber;
};

/// Number of connected components: |extensionSet(N1, fiber, N2)| in the
/// transitive case; 1 or 0 in the split case according to whether the two
/// fibers are isomorphic.  Throws ConditionViolation on inconsistent data.
int countComponentsOfA(const FData& F);

// --------------------------------------------------------------------------
// One-parameter rows: bounded weight windows
// --------------------------------------------------------------------------

/// An irreducible of a one-parameter row, materialized inside a bounded
/// weight window.
struct OneDimIrrep {
    Family family = Family::SO2;
    std::string label;
    int dim = 1;
    int weight = 0;  ///< circle weight / highest weight; 0 for sign types
    int signS = 0;   ///< sign exponent on the central -id factor (products)
    int signR = 1;   ///< sign on the flip coset: +1 "triv", -1 "sgn" (linears)
};

/// Irreducibles of a one-parameter family with |weight| <= window (default
/// window used by callers: 16).  Throws UnsupportedFamily for finite rows.
std::vector<OneDimIrrep> oneDimIrreducibles(Family f, int window);

/// Restriction of a one-parameter irreducible to a finite subgroup given by
/// elements of the one-parameter model.
Character restrictOneDimIrrep(const OneDimIrrep& w, const FiniteGroup& H);

}  // namespace equivect
