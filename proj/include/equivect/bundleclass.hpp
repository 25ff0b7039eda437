/// Isotropy-representation invariants of equivariant complex vector bundles
/// over the two-sphere, for an effective closed subgroup row R:
///  * the invariant attached to a bundle: a pair of R-representations at the
///    poles (rows whose every element fixes both poles) or a triple of
///    stabilizer representations at the three marker points of the
///    fundamental domain;
///  * validation of the defining compatibility conditions (restriction
///    agreement, conjugate endpoints, pairwise intersection agreement);
///  * enumeration of all valid invariants up to an entry-dimension bound,
///    complete for finite rows and explicitly windowed for the
///    one-parameter rows;
///  * the per-row fiber classification: whether bundles are determined by
///    the invariant alone, come in Chern-indexed integer families, or in
///    pairs sharing one Chern class; first Chern classes of line
///    invariants; and the Chern residue k0 of a sum of lines.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equivect/cellcomplex.hpp"
#include "equivect/chartheory.hpp"
#include "equivect/o3group.hpp"

namespace equivect {

// --------------------------------------------------------------------------
// Invariants
// --------------------------------------------------------------------------

enum class InvariantShape { Polar, Triple };

/// True for the rows whose every element fixes both poles; these rows carry
/// polar pairs (entries are representations of the whole group), all other
/// rows carry triples over the marker-point stabilizers.
bool rowIsPolar(Family f);

/// Isotropy data of a bundle.  Polar shape: wS / wN over the whole row
/// group.  Triple shape: wDm1 / wD0 / wD1 over the stabilizers of the
/// marker points d^-1, d^0, d^1.  Entries over a finite stabilizer use its
/// irreducible labels; entries over an infinite stabilizer use the
/// one-parameter labels of the matching family.  rankScale carries the
/// isotypical multiplicity as a global scale and defaults to 1; the engine
/// computes Chern data for the scale-1 reduction, and an invariant of scale
/// c describes a bundle whose total Chern class is c times the reported
/// residue modulo c times the reported modulus.
struct BundleInvariant {
    InvariantShape shape = InvariantShape::Triple;
    RepDecomposition wS, wN;           ///< polar entries
    RepDecomposition wDm1, wD0, wD1;   ///< triple entries
    int rankScale = 1;

    /// Equality is isomorphism of entries: label-multiset equality.
    friend bool operator==(const BundleInvariant&, const BundleInvariant&) = default;
    friend bool operator<(const BundleInvariant& x, const BundleInvariant& y);
    std::string str() const;
};

BundleInvariant makePolarInvariant(RepDecomposition wS, RepDecomposition wN,
                                   int rankScale = 1);
BundleInvariant makeTripleInvariant(RepDecomposition wDm1, RepDecomposition wD0,
                                    RepDecomposition wD1, int rankScale = 1);

/// Common dimension of the entries (the rank of a bundle carrying the
/// invariant).  For invalid data the entry dimensions may disagree; this
/// returns the first entry's dimension.  Throws WrongStabilizerGroup when a
/// label does not belong to the corresponding stabilizer.
long long invariantRank(const FiniteSubgroupHandle& R, const BundleInvariant& inv);

// --------------------------------------------------------------------------
// Validation
// --------------------------------------------------------------------------

/// Outcome of checking the defining conditions.  When invalid, `clause`
/// names the first violated condition:
///   "i"   - entry fails the isotypical/scale requirement (never for the
///           scale-1 engine; kept for completeness),
///   "ii"  - polar: restrictions of wS and wN to the stabilizer of a path
///           endpoint disagree; triple: wD1 is not the conjugate of wD0
///           under an element carrying d^0 to d^1,
///   "iii" - triple: two entries restrict differently to the intersection
///           of their stabilizers.
struct ValidationResult {
    bool valid = true;
    std::string clause;
    std::string detail;
};

/// Checks the defining conditions of an invariant for the row R.  Throws
/// WrongStabilizerGroup when the shape does not match the row or an entry
/// label is not an irreducible of the required stabilizer.
ValidationResult validateInvariant(const FiniteSubgroupHandle& R,
                                   const BundleInvariant& inv);

// --------------------------------------------------------------------------
// Enumeration
// --------------------------------------------------------------------------

inline constexpr int kDefaultWeightWindow = 6;

/// Enumeration result.  `truncated` is set exactly when the row has
/// infinitely many invariants within the dimension bound, so the returned
/// list is the complete set whose weights fit in `windowUsed` but cannot be
/// the complete set outright (one-parameter rows; rotation-circle entry
/// slots truncate at any dimension bound, reflection-circle slots from
/// dimension two).
struct InvariantEnumeration {
    std::vector<BundleInvariant> invariants;  ///< sorted, duplicate-free
    bool truncated = false;
    int windowUsed = 0;  ///< 0 for finite rows (window unused)
};

/// All valid invariants with every entry of dimension <= maxTotalDim, up to
/// isomorphism of entries, at scale 1.  Finite rows are complete and ignore
/// the window.  One-parameter rows draw entry labels from the weight window;
/// they refuse degenerate windows that cannot hold a single nonzero weight
/// (weightWindow < 1, WindowTooSmall), and whenever some entry slot admits
/// infinitely many labels within the dimension bound the returned list is
/// the windowed portion and `truncated` is set.
InvariantEnumeration enumerateInvariants(const FiniteSubgroupHandle& R,
                                         int maxTotalDim,
                                         int weightWindow = kDefaultWeightWindow);

// --------------------------------------------------------------------------
// Fiber classification
// --------------------------------------------------------------------------

enum class FiberKind {
    Unique,        ///< the invariant determines the bundle
    ChernIndexed,  ///< one Z-family per invariant, indexed by first Chern
                   ///< classes running over k0 + lR * Z
    TwoSameChern,  ///< exactly two bundles per invariant, equal Chern class
};

std::string fiberKindName(FiberKind k);

/// The fiber kind is a function of the row alone.
FiberKind rowFiberKind(const FiniteSubgroupHandle& R);

struct FiberDescription {
    FiberKind kind = FiberKind::Unique;
    std::optional<long long> lR;  ///< Chern-indexed rows: the index modulus
    std::optional<long long> k0;  ///< Chern-indexed rows: residue in [0, lR)
    std::string description;      ///< human-readable statement of the kind
};

/// Classifies the set of bundles sharing the given invariant.  Throws
/// InvalidInvariant when the invariant fails validation.
FiberDescription classifyFiber(const FiniteSubgroupHandle& R,
                               const BundleInvariant& inv);

// --------------------------------------------------------------------------
// Chern data
// --------------------------------------------------------------------------

/// First Chern class residue of a line invariant (all entries
/// one-dimensional, scale 1), in [0, lR) for the row's modulus lR:
///   * rotation-only axial rows: weight difference of the pole entries;
///   * dihedral rows: -2 l_S, shifted by n when the two endpoint entries
///     disagree, modulo 2n;
///   * the two rows with paired fibers: 0 (trivial Chern class);
///   * the polyhedral rotation rows: assembled from restrictions to a
///     2-Sylow copy (acting as a dihedral row) and odd-p-Sylow copies
///     (acting as rotation rows) by the Chinese remainder theorem.
/// Throws NotLineInvariant for entries of dimension != 1, UnsupportedFamily
/// for rows outside the list above.
long long chernOfLineInvariant(const FiniteSubgroupHandle& R,
                               const BundleInvariant& inv);

/// Chern residue k0 of a valid invariant over a Chern-indexed row: finds a
/// multiset of line invariants summing entrywise to the invariant and
/// returns the sum of their Chern residues mod lR (decomposition
/// independent).  Throws UnsupportedFamily for rows that are not
/// Chern-indexed, InvalidInvariant for invalid data, NoLineDecomposition
/// when no line decomposition exists.
long long k0OfInvariant(const FiniteSubgroupHandle& R, const BundleInvariant& inv);

// --------------------------------------------------------------------------
// Aggregate report
// --------------------------------------------------------------------------

struct MarkerInfo {
    std::string pointLabel;  ///< "S"/"N" (polar) or "d-1"/"d0"/"d1" (triple)
    std::string place;       ///< symbolic position
    std::string stabilizer;  ///< abstract name (finite) or description
    long long order = 0;     ///< 0 when infinite
};

struct ReportEntry {
    BundleInvariant invariant;
    std::optional<long long> k0;  ///< Chern-indexed rows only
};

struct ClassificationReport {
    std::string family;  ///< family tag
    int n = 0;
    std::string abstractName;              ///< finite rows; "" otherwise
    std::string complexName;               ///< sphere model; "-" for one-parameter rows
    std::vector<std::string> domainPath;   ///< breakpoint labels of the domain path
    std::vector<MarkerInfo> markers;       ///< marker points with stabilizers
                                           ///< (polar rows list the pole slots
                                           ///< and the endpoint test points)
    long long lR = 0;                      ///< orbit count (0 for one-parameter rows)
    FiberKind kind = FiberKind::Unique;
    std::string description;
    long long dimOneCount = 0;             ///< number of line invariants listed
    bool truncated = false;
    int windowUsed = 0;
    std::vector<ReportEntry> invariants;   ///< enumeration up to the requested bound
};

/// Machine-readable summary of the classification for one row: the sphere
/// model, domain path, marker stabilizers, orbit count, fiber kind, the
/// enumerated invariants up to maxTotalDim, and per-invariant Chern
/// residues where the row is Chern-indexed.
ClassificationReport classificationReport(const FiniteSubgroupHandle& R,
                                          int maxTotalDim = 1,
                                          int weightWindow = kDefaultWeightWindow);

}  // namespace equivect
