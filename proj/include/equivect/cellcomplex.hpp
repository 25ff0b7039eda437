#pragma once

#include "equivect/o3group.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace equivect {

// ===========================================================================
// Simplicial sphere models.
//
// Every finite row acts simplicially on a triangulated sphere: the axial
// rows on the suspension of a regular M-gon inscribed in the equator
// (M = m for m >= 3; the m = 1, 2 rows reuse the square model with
// relabeled marker points), the polyhedral rows on the boundary of the
// tetrahedron, octahedron, or icosahedron.  Vertex positions are symbolic
// PointRefs (equator turns / poles, or exact coordinates), so cell images
// under group elements are computed exactly.
// ===========================================================================

enum class ComplexModel { Polygon, Tetrahedron, Octahedron, Icosahedron };

struct EdgeCell {
    int a = -1;  ///< endpoint vertex indices, in the stored orientation
    int b = -1;
};

struct FaceCell {
    std::vector<int> cycle;  ///< boundary vertices, counterclockwise from outside
};

struct EquivComplex {
    ComplexModel model = ComplexModel::Polygon;
    int labelPeriod = 0;  ///< number of v^i / e^i labels (m; 3 on the solids)
    int underlyingM = 0;  ///< polygon size actually built (Polygon model only)

    std::vector<PointRef> vertices;
    std::vector<EdgeCell> edges;
    std::vector<FaceCell> faces;
    std::vector<std::array<int, 2>> facesOfEdge;  ///< two incident faces per edge

    // Marker labels.  vIndex[i] is the vertex carrying the label v^i; e^i is
    // a chain of underlying edges (a single edge except on the m <= 2
    // overlays, where labeled edges span several underlying ones).  The
    // octahedron additionally keeps its square-model labels queryable via
    // the poles and the equatorial vertex ring.
    std::vector<int> vIndex;
    std::vector<std::vector<int>> eChain;
    int poleS = -1, poleN = -1;              ///< south/north vertices when present
    int faceMinus1 = -1;                     ///< f^{-1} (solids only)
    std::array<int, 3> fIndex{{-1, -1, -1}};  ///< f^0, f^1, f^2 (solids only)

    int eulerCharacteristic() const;

    PointRef vPoint(int i) const;           ///< position of v^i
    PointRef bEdgeLabelPoint(int i) const;  ///< marker point b(e^i)
    PointRef faceBarycenter(int f) const;   ///< b(face)
    PointRef edgeBarycenter(int e) const;   ///< barycenter of one underlying edge
    std::string pointName(const PointRef& p) const;  ///< label if any, else str()

    int vertexAt(const PointRef& p) const;   ///< vertex index at position, or -1
    int edgeBetween(int va, int vb) const;   ///< edge with these endpoints, or -1
};

/// Permutation action of every group element on the cells, aligned with
/// FiniteGroup::elems.  edgeFlip records whether the element reverses the
/// stored orientation of each edge.
struct CellAction {
    std::vector<std::vector<int>> vertexPerm;
    std::vector<std::vector<int>> edgePerm;
    std::vector<std::vector<std::uint8_t>> edgeFlip;
    std::vector<std::vector<int>> facePerm;
};

struct ComplexWithAction {
    FiniteSubgroupHandle handle;  ///< the standard-model handle actually used
    EquivComplex complex;
    CellAction action;
};

/// Builds the sphere model the row acts on, together with the cell action.
/// Handles presented in a foreign ambient are rebuilt on their standard
/// model first.  Infinite rows have no simplicial model: PreconditionViolation.
ComplexWithAction buildComplex(const FiniteSubgroupHandle& handle);

/// "K_1".."K_m", "K_T", "K_O", "K_I".
std::string complexModelName(const EquivComplex& K);

// ---------------------------------------------------------------------------
// Fundamental domains
// ---------------------------------------------------------------------------

/// Oriented half of an underlying edge: half 0 runs from endpoint a to the
/// barycenter, half 1 from the barycenter to endpoint b.
struct HalfEdge {
    int edge = -1;
    int half = 0;

    friend bool operator==(const HalfEdge& x, const HalfEdge& y) {
        return x.edge == y.edge && x.half == y.half;
    }
    friend bool operator<(const HalfEdge& x, const HalfEdge& y) {
        return x.edge != y.edge ? x.edge < y.edge : x.half < y.half;
    }
};

struct PathPoint {
    std::string label;  ///< "v0", "b(e0)", "S", ... or "" when unlabeled
    PointRef place;
};

struct FundamentalDomainData {
    std::vector<PathPoint> path;  ///< breakpoints in traversal order
    PathPoint dMinus1, d0, d1;
    long long lR = 0;             ///< |R| / |R(D_R)|; 0 on the infinite rows
    std::vector<HalfEdge> chain;  ///< cell-level form of the path (finite rows)
};

/// Domain-path data for any row: finite rows get the classification-table
/// path with its marker points and the orbit count l_R computed from the
/// setwise stabilizer; infinite rows get the single marker point v^0.
FundamentalDomainData fundamentalDomain(const FiniteSubgroupHandle& handle);

// ---------------------------------------------------------------------------
// Orbit checks
// ---------------------------------------------------------------------------

struct OrbitCoverResult {
    bool covers = false;
    bool minimal = false;
    std::string witness;  ///< uncovered segment / covering sub-path when not ok
    bool ok() const { return covers && minimal; }
};

/// Checks that the R-orbit of the domain path covers the equator polygon
/// (axial rows) or the whole 1-skeleton (polyhedral rows), and that no
/// proper sub-path already covers.  `domainOverride` replaces the table
/// path by a breakpoint list such as "v0,b(e0)" to probe deliberately
/// wrong domains.  Finite rows only: PreconditionViolation otherwise.
OrbitCoverResult verifyOrbitCover(
    const FiniteSubgroupHandle& handle,
    const std::optional<std::string>& domainOverride = std::nullopt);

/// Verifies the stabilizer intersection law at the marker points:
/// stab(d^-1) ∩ stab(d^i) is the pointwise stabilizer of the arc
/// [d^-1, d^i] for i = 0, 1, and stab(d^0) ∩ stab(d^1) is the pointwise
/// stabilizer of the domain path.  The path stabilizer is computed through
/// independent routes — per-breakpoint geometric stabilizers and the
/// half-edge cell action — and the routes must agree.  The two families
/// whose domain endpoints degenerate (Zn, an_minus_b) are refused:
/// PreconditionViolation.
bool intersectionLaw(const FiniteSubgroupHandle& handle);

// ---------------------------------------------------------------------------
// Labeled points
// ---------------------------------------------------------------------------

/// Resolves a marker-point label on the row's model: "S", "N", "v{i}",
/// "b(e{i})", "b(f-1)", "b(f{i})", "d-1", "d0", "d1", the generic interior
/// point "x" of [v0, b(e0)], or "int(p,q)" for a representative interior
/// point of the arc between two labeled points.  Unknown labels raise
/// UnknownPointLabel.
PointRef resolvePointLabel(const FiniteSubgroupHandle& handle, const std::string& label);

struct PointStabilizer {
    bool finite = true;
    FiniteGroup group;        ///< when finite
    OneDimSubgroupDesc desc;  ///< when not (poles of the infinite rows)
};

/// Stabilizer of a labeled point within the row's group.  Generic interior
/// labels ("x", "int(p,q)") are computed as the joint stabilizer of the arc
/// endpoints.
PointStabilizer stabilizerOfPoint(const FiniteSubgroupHandle& handle,
                                  const std::string& label);

}  // namespace equivect
