/// Closed subgroups of O(3) acting effectively on the two-sphere.
///
/// Three element models share one interface:
///  * axial: exact normal form (-id)^s b^r a^k inside an ambient group
///    generated by the rotation a of order N about the z-axis, the half turn
///    b about the x-axis, and the central -id;
///  * polyhedral: exact orthogonal 3x3 matrices over Q(sqrt 5);
///  * one-parameter: (-id)^s b^r rot(q) with a rational turn fraction q,
///    used for the closed one-dimensional groups.
///
/// Group elements act on symbolic sphere points (poles, rational equator
/// turns, meridian interiors, exact coordinate rays), so every stabilizer
/// computed here is exact.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equivect/errors.hpp"
#include "equivect/numeric.hpp"

namespace equivect {

enum class Family {
    Zn,
    Dn,
    ZnxZ,
    DnxZ,
    AnMinusB,
    MinusAnB,
    MinusAnMinusB,
    MinusAn,
    T,
    O,
    I,
    TMinusO0,
    TxZ,
    OxZ,
    IxZ,
    SO2,
    O2,
    SO2MinusB,
    SO2MinusA2,
    O2xZ,
    SO3,
    O3,
};

std::string familyTag(Family f);
Family parseFamilyTag(const std::string& tag);

bool familyIsAxial(Family f);
bool familyIsPolyhedral(Family f);
bool familyIsOneDim(Family f);
inline bool familyIsFinite(Family f) { return !familyIsOneDim(f); }

// --------------------------------------------------------------------------
// Ambient groups
// --------------------------------------------------------------------------

enum class AmbientKind { AxialDnxZ, PolyO, PolyI, OneDim };

struct AmbientTag {
    AmbientKind kind = AmbientKind::AxialDnxZ;
    int N = 1;  ///< rotation order, AxialDnxZ only
    friend bool operator==(const AmbientTag&, const AmbientTag&) = default;
    std::string str() const;
};

// --------------------------------------------------------------------------
// Group elements
// --------------------------------------------------------------------------

struct GroupElement {
    AmbientTag amb;
    // Axial and one-parameter normal form (-id)^s b^r a^k / (-id)^s b^r rot(q).
    int s = 0, r = 0;
    long long k = 0;   // rotation exponent mod amb.N (axial)
    Rational q{0};     // rotation turn fraction mod 1 (one-parameter)
    Mat3 mat;          // exact matrix (polyhedral)

    static GroupElement axial(int N, int s, int r, long long k);
    static GroupElement axialIdentity(int N) { return axial(N, 0, 0, 0); }
    static GroupElement oneDim(int s, int r, const Rational& q);
    static GroupElement poly(AmbientKind which, const Mat3& m);

    bool isIdentity() const;
    bool isMinusId() const;
    int det() const;  // +1 or -1
    GroupElement inverse() const;

    friend bool operator==(const GroupElement& x, const GroupElement& y);
    friend bool operator!=(const GroupElement& x, const GroupElement& y) { return !(x == y); }
    friend bool operator<(const GroupElement& x, const GroupElement& y);

    /// Canonical textual form ("a^2 b", "-a^3", "rot(1/3)", matrix form for
    /// polyhedral elements).
    std::string word() const;
};

/// Product g*h = "apply h first, then g"; AmbientMismatch unless both live in
/// the same ambient group.
GroupElement multiply(const GroupElement& g, const GroupElement& h);

/// pr: O(3) -> SO(3), g -> g when det g = +1, else -g.
GroupElement projectToSO3(const GroupElement& g);

// --------------------------------------------------------------------------
// Finite groups of elements
// --------------------------------------------------------------------------

struct FiniteGroup {
    std::vector<GroupElement> elems;  ///< sorted, unique, closed under product
    AmbientTag amb;

    int size() const { return static_cast<int>(elems.size()); }
    bool contains(const GroupElement& g) const;
    bool containsMinusId() const;
    bool isSubsetOf(const FiniteGroup& other) const;
    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.amb == b.amb && a.elems == b.elems;
    }
    friend bool operator<(const FiniteGroup& a, const FiniteGroup& b);
};

/// Closure of the generators inside their common ambient.
FiniteGroup closure(const std::vector<GroupElement>& gens, const AmbientTag& amb);

/// Conjugate subgroup c^-1 S c.
FiniteGroup conjugateSubgroup(const FiniteGroup& S, const GroupElement& c);

/// Elements common to both groups (same ambient required).
FiniteGroup intersectGroups(const FiniteGroup& a, const FiniteGroup& b);

int elementOrder(const FiniteGroup& G, const GroupElement& g);

// --------------------------------------------------------------------------
// Family handles
// --------------------------------------------------------------------------

struct FiniteSubgroupHandle {
    Family family = Family::Zn;
    int n = 0;  ///< axial parameter; 0 for polyhedral and one-parameter rows
    AmbientTag amb;
    FiniteGroup group;  ///< empty for one-parameter families

    bool oneDim() const { return familyIsOneDim(family); }
    /// Order of the group (finite families only).
    int order() const { return group.size(); }
};

/// Build the standard-position group of the given family.  Throws
/// IllegalFamilyParameter when (family, n) is not a legal classification row
/// (repetition rows are rejected with a pointer to their canonical form).
FiniteSubgroupHandle constructGroup(Family f, int n);

/// The full ambient group as a finite element list (axial and polyhedral
/// ambients only).
FiniteGroup ambientGroup(const AmbientTag& amb);

/// Standard-position copy of (family, n) inside the given ambient, when that
/// ambient contains one.
std::optional<FiniteGroup> standardSubgroup(Family f, int n, const AmbientTag& amb);

/// Named generator words of the ambient, parsed/combined by parseWord.
std::vector<std::string> ambientGeneratorNames(const AmbientTag& amb);

/// Parse a textual generator word ("a^2 b", "-a4 r3^2", "-id", ...).
GroupElement parseWord(const std::string& word, const AmbientTag& amb);

// --------------------------------------------------------------------------
// Recognition
// --------------------------------------------------------------------------

struct RecognitionResult {
    Family family;
    int n = 0;
    /// Conjugacy witness: conjugating the input by `conjugator` (that is,
    /// forming conjugator^-1 * S * conjugator) yields `canonical`.
    GroupElement conjugator;
    FiniteGroup canonical;
    bool matchesConstruction = false;  ///< canonical == standard-position copy
};

/// Identify the conjugacy row of a finite subgroup of an ambient group and
/// return a canonical representative plus an explicit conjugator.
RecognitionResult recognize(const FiniteGroup& subgroup);

// --------------------------------------------------------------------------
// Symbolic sphere points and stabilizers
// --------------------------------------------------------------------------

struct PointRef {
    enum class Kind { PoleS, PoleN, Equator, MeridianS, MeridianN, Coord };
    Kind kind = Kind::PoleS;
    Rational q{0};  ///< equator turn fraction (Equator / Meridian*)
    Vec3 p{};       ///< exact coordinates (Coord)

    static PointRef poleS() { return {Kind::PoleS, Rational(0), {}}; }
    static PointRef poleN() { return {Kind::PoleN, Rational(0), {}}; }
    static PointRef equator(const Rational& q) { return {Kind::Equator, mod1(q), {}}; }
    static PointRef meridian(bool south, const Rational& q) {
        return {south ? Kind::MeridianS : Kind::MeridianN, mod1(q), {}};
    }
    static PointRef coord(const Vec3& p) { return {Kind::Coord, Rational(0), p}; }

    friend bool operator==(const PointRef& a, const PointRef& b);
    std::string str() const;
};

/// Image of a symbolic point under a group element (exact).
PointRef applyToPoint(const GroupElement& g, const PointRef& x);

/// Elements of G fixing the point (exact; brute force over the finite group).
FiniteGroup stabilizerOfPointRef(const FiniteGroup& G, const PointRef& x);

/// Interior point of the shorter great-circle arc between two exact
/// coordinate rays (exact, and not equal to either endpoint ray).
PointRef arcInteriorPoint(const Vec3& a, const Vec3& b);

// --------------------------------------------------------------------------
// One-parameter groups, symbolic descriptions
// --------------------------------------------------------------------------

/// Description of a closed subgroup of the one-parameter model: either a
/// finite element list or "all rotations about the axis, plus full cosets of
/// the listed (r, s) classes".
struct OneDimSubgroupDesc {
    bool wholeRotationCircle = false;
    std::vector<std::pair<int, int>> cosets;  ///< (r, s) classes beyond rotations, sorted
    bool isFullSO3 = false;                   ///< the 3-dimensional rows
    bool isFullO3 = false;
    int axis = 2;  ///< 2 = z (standard), 0 = x (stabilizers inside the 3-dim rows)
    FiniteGroup finitePart;  ///< used when !wholeRotationCircle && !isFullSO3/O3

    bool infinite() const { return wholeRotationCircle || isFullSO3 || isFullO3; }
    friend bool operator==(const OneDimSubgroupDesc&, const OneDimSubgroupDesc&);
    std::string str() const;
};

/// The one-parameter family itself as a symbolic description.
OneDimSubgroupDesc oneDimGroupDesc(Family f);

/// Stabilizer of a symbolic point inside a one-parameter family (exact);
/// returns an infinite description for poles of the planar rows or any point
/// of the 3-dimensional rows, and a finite group otherwise.
OneDimSubgroupDesc oneDimStabilizer(Family f, const PointRef& x);

}  // namespace equivect
