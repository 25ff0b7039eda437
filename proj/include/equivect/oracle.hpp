/// Independent numerical back-ends used to cross-check the classification
/// engine:
///  * explicit equivariant clutching data for line bundles over the axial
///    rows, built from the closed-form transition maps on the fundamental
///    domain and extended to the whole equator circle by equivariance;
///  * the first Chern class of such data as a winding-number sum, computed
///    without reference to the engine's residue formulas;
///  * a brute-force enumeration of representation extensions that serves as
///    the oracle for the character-theory extension solver.
///
/// Conventions.  The equator of the sphere model K_m is parameterized by
/// t in [0, m): arc i covers [i, i+1] and the azimuth of parameter t is
/// 2*pi*t/m.  Clutching data lives on the equator only; the two hemisphere
/// copies of a point carry the same parameter, and the northern copy stores
/// the pointwise inverse of the southern value (on the polyhedral models the
/// glued copies would traverse edges in opposite directions instead — the two
/// parameterizations meet at this documented seam).  The transition value is
/// the southern-to-northern fiber map in the reference trivializations, so
/// the southern cap contributes winding zero and the northern cap carries the
/// full transition winding; positive winding is the direction of increasing
/// azimuth, matching the stored counterclockwise-from-outside orientation of
/// the northern faces.
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "equivect/bundleclass.hpp"
#include "equivect/cellcomplex.hpp"
#include "equivect/chartheory.hpp"
#include "equivect/o3group.hpp"

namespace equivect {

// --------------------------------------------------------------------------
// Pinned numeric policy
// --------------------------------------------------------------------------

/// Absolute tolerance for the sampled gluing conditions (inverse pairing,
/// vertex continuity, equivariance).
inline constexpr double kClutchingTolerance = 1e-9;
/// A winding sum must land within this distance of an integer.
inline constexpr double kWindingResidualBound = 0.1;
/// Default grid steps per equator arc.
inline constexpr int kDefaultSamplesPerArc = 2048;
/// Caps of the brute-force extension search.
inline constexpr int kBruteForceDimCap = 6;
inline constexpr int kBruteForceGroupCap = 48;

// --------------------------------------------------------------------------
// Circle actions
// --------------------------------------------------------------------------

/// Exact action of a group element on the parameterized equator circle with
/// `arcCount` arcs: t maps to orientation * t + arcShift (mod arcCount).
/// `swapsPoles` records whether the element exchanges the hemispheres (which
/// inverts transition values).  Throws PreconditionViolation when the element
/// does not preserve the equator or moves it off the arc grid.
struct CircleElementAction {
    bool swapsPoles = false;
    int orientation = 1;     ///< +1 rotation of the circle, -1 reflection
    long long arcShift = 0;  ///< image of parameter 0, in arc units
};

CircleElementAction equatorAction(const GroupElement& g, int arcCount);

// --------------------------------------------------------------------------
// Clutching data
// --------------------------------------------------------------------------

/// Sampled equivariant clutching data of a line bundle.  Arc i stores
/// samplesPerArc + 1 unit complex values at parameters i + j/samplesPerArc
/// (both endpoints included, so consecutive arcs share their boundary
/// sample).  `seed` holds the closed-form values on the fundamental arc
/// [0, seedSpan]; every other sample is filled from it through the first
/// element, in the row group's canonical element order, whose inverse maps
/// the sample parameter into the seed arc: the value is elementFactor[g]
/// times the seed value, conjugated when the element swaps the poles
/// (inversion of a unit value is realized as complex conjugation throughout).
/// The fill is therefore deterministic and exactly reproducible.
struct ClutchingData {
    Family family = Family::Zn;
    int n = 0;
    int arcCount = 0;          ///< labeled equator arcs (parameter period)
    int samplesPerArc = kDefaultSamplesPerArc;
    int sigmaLoops = 0;        ///< extra full transition loops composed in
    long long lR = 0;          ///< Chern modulus of the row
    double seedSpan = 1.0;     ///< fundamental arc length: 1, or 1/2 (dihedral)
    BundleInvariant invariant; ///< the line invariant realized
    std::vector<std::complex<double>> seed;           ///< seedSpan*samplesPerArc + 1 values
    std::vector<std::complex<double>> elementFactor;  ///< aligned with the row's elements
    std::vector<std::vector<std::complex<double>>> south;  ///< [arc][sample]
    std::vector<std::vector<std::complex<double>>> north;  ///< pointwise inverse copy
};

/// Builds clutching data realizing a one-dimensional invariant of a
/// supported axial row:
///   * rotation rows (any n):      value exp(2*pi*i*(lN - lS)*t/n) on [0, n];
///   * dihedral rows:              value eta * exp(-4*pi*t*(lS + tau)*i/n),
///     where eta is the sign carried by the marker entry at t = 0 and
///     tau = n/2 exactly when the two reflection-marker entries disagree;
///   * the rotation-with-center row (odd n) and the row generated by a
///     rotoreflection with even half-order: the constant value 1.
/// `sigmaLoops` composes that many extra full loops into the first half of
/// the fundamental arc (the generator-loop surgery; each loop shifts the
/// total winding by lR on the first two row kinds and by 0 on the last two).
/// samplesPerArc must be a positive multiple of four.
/// Throws UnsupportedFamily for any other row, InvariantMismatch when the
/// invariant is not a valid scale-1 line invariant of the row (the closed
/// forms cannot realize such data).
ClutchingData buildLineClutching(const FiniteSubgroupHandle& R,
                                 const BundleInvariant& inv,
                                 int samplesPerArc = kDefaultSamplesPerArc,
                                 int sigmaLoops = 0);

// --------------------------------------------------------------------------
// Gluing-condition verification
// --------------------------------------------------------------------------

/// Outcome of re-checking the sampled gluing conditions:
///   N1 - the two copies are unit valued and pointwise inverse;
///   N2 - the value is continuous at the arc boundaries (the vertex product
///        condition, reduced to the equator circle);
///   E1 - equivariance: for every row element g and sample t,
///        value(g t) = elementFactor[g] * value(t)^(+-1), inverted exactly
///        when g swaps the poles.
/// The circle action of each element is recomputed exactly from the group
/// model, independent of the data under test.
struct ClutchingCheck {
    bool ok = true;
    std::string failedCondition;  ///< "N1" / "N2" / "E1" when not ok
    double inverseDefect = 0.0;
    double vertexDefect = 0.0;
    double equivarianceDefect = 0.0;
};

ClutchingCheck verifyClutching(const FiniteSubgroupHandle& R,
                               const ClutchingData& data);

// --------------------------------------------------------------------------
// Degree
// --------------------------------------------------------------------------

/// Winding decomposition of clutching data.  perFace lists the two
/// hemisphere contributions {southern reference cap, northern cap}; the
/// total is their sum and equals the first Chern class of the glued bundle.
struct DegreeResult {
    long long total = 0;
    std::vector<long long> perFace;
    double maxResidual = 0.0;  ///< largest pre-rounding distance to an integer
};

/// Sums the logarithmic variation of the southern values over the equator
/// circle in the orientation fixed above.  The complex must be the polygon
/// model the data was built on (model and arc count are cross-checked);
/// the inverse and continuity conditions are re-checked first and violations
/// raise PreconditionViolation.  Raises WindingResidualTooLarge when the
/// winding sum misses every integer by at least the residual bound.
DegreeResult degree(const ClutchingData& data, const EquivComplex& K);

/// Writes the sampled values as CSV (`copy,arc,sample,t,re,im`), one row per
/// stored sample of each copy; the debugging surface behind the CLI's dump
/// flag.
void writeClutchingCsv(const ClutchingData& data, std::ostream& out);

// --------------------------------------------------------------------------
// Brute-force extension search
// --------------------------------------------------------------------------

/// All representations of N2 whose restriction to N1 is isomorphic to W,
/// found by exhaustive enumeration of irreducible multisets of N2 with the
/// matching total dimension — the oracle counterpart of extensionSet, which
/// solves a linear system instead.  Deterministic sorted order.  Throws
/// CapExceeded when dim W exceeds kBruteForceDimCap or |N2| exceeds
/// kBruteForceGroupCap, NotASubgroup when N1 is not contained in N2.
std::vector<RepDecomposition> bruteForceExtensions(const FiniteGroup& N1,
                                                   const RepDecomposition& W,
                                                   const FiniteGroup& N2);

}  // namespace equivect
