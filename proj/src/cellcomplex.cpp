#include "equivect/cellcomplex.hpp"

#include "equivect/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace equivect {

namespace {

// --------------------------------------------------------------------------
// Construction of the underlying complexes
// --------------------------------------------------------------------------

/// Suspension of the regular M-gon: M equator vertices at turns i/M plus the
/// two poles.  Label period m may be smaller than M (m = 1, 2 reuse M = 4
/// with relabeled marker points).
EquivComplex buildPolygon(int m) {
    EquivComplex K;
    K.model = ComplexModel::Polygon;
    K.labelPeriod = m;
    const int M = m >= 3 ? m : 4;
    K.underlyingM = M;

    for (int i = 0; i < M; ++i) K.vertices.push_back(PointRef::equator(Rational(i, M)));
    K.poleS = M;
    K.vertices.push_back(PointRef::poleS());
    K.poleN = M + 1;
    K.vertices.push_back(PointRef::poleN());

    // Edges: 0..M-1 the equator ring (oriented counterclockwise), then the
    // southern and northern meridians.
    for (int i = 0; i < M; ++i) K.edges.push_back({i, (i + 1) % M});
    for (int i = 0; i < M; ++i) K.edges.push_back({i, K.poleS});
    for (int i = 0; i < M; ++i) K.edges.push_back({i, K.poleN});

    // Faces, counterclockwise seen from outside the sphere.
    for (int i = 0; i < M; ++i) K.faces.push_back({{(i + 1) % M, i, K.poleS}});
    for (int i = 0; i < M; ++i) K.faces.push_back({{i, (i + 1) % M, K.poleN}});

    const int scale = M / m;
    for (int i = 0; i < m; ++i) {
        K.vIndex.push_back(i * scale);
        std::vector<int> chain;
        for (int j = 0; j < scale; ++j) chain.push_back(i * scale + j);
        K.eChain.push_back(chain);
    }
    return K;
}

Vec3 vq(long long x, long long y, long long z) { return {QSqrt5(x), QSqrt5(y), QSqrt5(z)}; }

QSqrt5 goldenRatio() { return QSqrt5(Rational(1, 2), Rational(1, 2)); }

std::vector<Vec3> solidVertexList(ComplexModel model) {
    if (model == ComplexModel::Tetrahedron)
        return {vq(1, 1, 1), vq(-1, -1, 1), vq(-1, 1, -1), vq(1, -1, -1)};
    if (model == ComplexModel::Octahedron)
        return {vq(1, 0, 0), vq(-1, 0, 0), vq(0, 1, 0), vq(0, -1, 0), vq(0, 0, 1), vq(0, 0, -1)};
    const QSqrt5 one(1), phi = goldenRatio();
    std::vector<Vec3> v;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            QSqrt5 a = s1 > 0 ? one : -one;
            QSqrt5 b = s2 > 0 ? phi : -phi;
            v.push_back({QSqrt5(0), a, b});
            v.push_back({a, b, QSqrt5(0)});
            v.push_back({b, QSqrt5(0), a});
        }
    return v;
}

QSqrt5 solidAdjacencyDot(ComplexModel model) {
    if (model == ComplexModel::Tetrahedron) return QSqrt5(-1);
    if (model == ComplexModel::Octahedron) return QSqrt5(0);
    return goldenRatio();
}

QSqrt5 det3(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return dot(r0, cross(r1, r2));
}

/// Boundary of the tetrahedron / octahedron / icosahedron: the faces are
/// exactly the pairwise-adjacent vertex triples, oriented so that the cycle
/// runs counterclockwise seen from outside (positive triple product).
EquivComplex buildSolid(ComplexModel model) {
    EquivComplex K;
    K.model = model;
    K.labelPeriod = 3;
    K.vertices.clear();
    const std::vector<Vec3> pos = solidVertexList(model);
    for (const Vec3& p : pos) K.vertices.push_back(PointRef::coord(p));
    const QSqrt5 adj = solidAdjacencyDot(model);
    const int V = (int)pos.size();

    std::set<std::pair<int, int>> edgeSet;
    for (int i = 0; i < V; ++i)
        for (int j = i + 1; j < V; ++j)
            for (int k = j + 1; k < V; ++k) {
                if (dot(pos[i], pos[j]) != adj || dot(pos[i], pos[k]) != adj ||
                    dot(pos[j], pos[k]) != adj)
                    continue;
                FaceCell f;
                f.cycle = det3(pos[i], pos[j], pos[k]).sign() > 0
                              ? std::vector<int>{i, j, k}
                              : std::vector<int>{i, k, j};
                K.faces.push_back(f);
                edgeSet.insert({i, j});
                edgeSet.insert({i, k});
                edgeSet.insert({j, k});
            }
    for (const auto& [a, b] : edgeSet) K.edges.push_back({a, b});
    return K;
}

void computeFacesOfEdge(EquivComplex& K) {
    K.facesOfEdge.assign(K.edges.size(), {-1, -1});
    for (int f = 0; f < (int)K.faces.size(); ++f) {
        const auto& cyc = K.faces[f].cycle;
        for (size_t j = 0; j < cyc.size(); ++j) {
            int e = K.edgeBetween(cyc[j], cyc[(j + 1) % cyc.size()]);
            if (e < 0) fail("PreconditionViolation", "face boundary is not an edge");
            auto& slots = K.facesOfEdge[e];
            if (slots[0] < 0)
                slots[0] = f;
            else if (slots[1] < 0)
                slots[1] = f;
            else
                fail("PreconditionViolation", "edge borders more than two faces");
        }
    }
    for (const auto& slots : K.facesOfEdge)
        if (slots[0] < 0 || slots[1] < 0)
            fail("PreconditionViolation", "edge borders fewer than two faces");
}

/// Pinned marker triples (v^0, v^1, v^2): three vertices of the marked face,
/// listed clockwise seen from outside, with v^0 on the maximal-symmetry axis
/// of the row's standard generators.
std::array<Vec3, 3> pinnedMarkers(ComplexModel model) {
    if (model == ComplexModel::Tetrahedron)
        return {vq(1, 1, 1), vq(-1, -1, 1), vq(-1, 1, -1)};
    if (model == ComplexModel::Octahedron) return {vq(1, 0, 0), vq(0, 1, 0), vq(0, 0, -1)};
    const QSqrt5 one(1), phi = goldenRatio();
    return {Vec3{QSqrt5(0), one, phi}, Vec3{one, phi, QSqrt5(0)}, Vec3{phi, QSqrt5(0), one}};
}

void labelSolid(EquivComplex& K) {
    const std::array<Vec3, 3> pin = pinnedMarkers(K.model);
    K.vIndex.clear();
    for (const Vec3& p : pin) {
        int idx = K.vertexAt(PointRef::coord(p));
        if (idx < 0) fail("PreconditionViolation", "pinned marker vertex missing");
        K.vIndex.push_back(idx);
    }
    if (det3(pin[0], pin[1], pin[2]).sign() >= 0)
        fail("PreconditionViolation", "marker triple must run clockwise seen from outside");

    // The marked face carries the three labeled vertices.
    for (int f = 0; f < (int)K.faces.size(); ++f) {
        std::vector<int> s = K.faces[f].cycle;
        std::sort(s.begin(), s.end());
        std::vector<int> t = {K.vIndex[0], K.vIndex[1], K.vIndex[2]};
        std::sort(t.begin(), t.end());
        if (s == t) K.faceMinus1 = f;
    }
    if (K.faceMinus1 < 0) fail("PreconditionViolation", "marker triple is not a face");

    K.eChain.assign(3, {});
    for (int i = 0; i < 3; ++i) {
        int a = K.vIndex[i], b = K.vIndex[(i + 1) % 3];
        int e = K.edgeBetween(a, b);
        if (e < 0) fail("PreconditionViolation", "marker edge missing");
        if (K.edges[e].a != a) std::swap(K.edges[e].a, K.edges[e].b);  // orient v^i -> v^{i+1}
        K.eChain[i] = {e};
        const auto& fs = K.facesOfEdge[e];
        K.fIndex[i] = fs[0] == K.faceMinus1 ? fs[1] : fs[0];
    }

    if (K.model == ComplexModel::Octahedron) {
        K.poleS = K.vertexAt(PointRef::coord(vq(0, 0, -1)));
        K.poleN = K.vertexAt(PointRef::coord(vq(0, 0, 1)));
    }
}

CellAction computeAction(const EquivComplex& K, const FiniteGroup& G) {
    CellAction A;
    const size_t nG = G.elems.size();
    A.vertexPerm.resize(nG);
    A.edgePerm.resize(nG);
    A.edgeFlip.resize(nG);
    A.facePerm.resize(nG);

    std::map<std::vector<int>, int> faceBySet;
    for (int f = 0; f < (int)K.faces.size(); ++f) {
        std::vector<int> s = K.faces[f].cycle;
        std::sort(s.begin(), s.end());
        faceBySet[s] = f;
    }

    for (size_t gi = 0; gi < nG; ++gi) {
        const GroupElement& g = G.elems[gi];
        auto& vp = A.vertexPerm[gi];
        vp.resize(K.vertices.size());
        for (size_t v = 0; v < K.vertices.size(); ++v) {
            int img = K.vertexAt(applyToPoint(g, K.vertices[v]));
            if (img < 0)
                fail("PreconditionViolation", "group element does not preserve the vertex set");
            vp[v] = img;
        }
        auto& ep = A.edgePerm[gi];
        auto& fl = A.edgeFlip[gi];
        ep.resize(K.edges.size());
        fl.resize(K.edges.size());
        for (size_t e = 0; e < K.edges.size(); ++e) {
            int ia = vp[K.edges[e].a], ib = vp[K.edges[e].b];
            int j = K.edgeBetween(ia, ib);
            if (j < 0) fail("PreconditionViolation", "group element does not preserve incidence");
            ep[e] = j;
            fl[e] = K.edges[j].a == ib ? 1 : 0;
        }
        auto& fp = A.facePerm[gi];
        fp.resize(K.faces.size());
        for (size_t f = 0; f < K.faces.size(); ++f) {
            std::vector<int> s;
            for (int v : K.faces[f].cycle) s.push_back(vp[v]);
            std::sort(s.begin(), s.end());
            auto it = faceBySet.find(s);
            if (it == faceBySet.end())
                fail("PreconditionViolation", "group element does not preserve the face set");
            fp[f] = it->second;
        }
    }
    return A;
}

FiniteSubgroupHandle standardRow(const FiniteSubgroupHandle& h) {
    return constructGroup(h.family, h.n);
}

// --------------------------------------------------------------------------
// Domain paths
// --------------------------------------------------------------------------

enum class DomainShape { HalfEdge0, WholeEdge0, MidToMid };

DomainShape domainShapeFor(Family f, int n) {
    switch (f) {
        case Family::Dn:
        case Family::DnxZ:
        case Family::T:
        case Family::O:
        case Family::I:
        case Family::TMinusO0:
        case Family::OxZ:
        case Family::IxZ:
            return DomainShape::HalfEdge0;
        case Family::Zn:
        case Family::ZnxZ:
        case Family::MinusAn:
        case Family::TxZ:
            return DomainShape::WholeEdge0;
        case Family::AnMinusB:
            return n % 2 == 1 ? DomainShape::MidToMid : DomainShape::HalfEdge0;
        case Family::MinusAnB:
            return (n / 2) % 2 == 1 ? DomainShape::WholeEdge0 : DomainShape::HalfEdge0;
        case Family::MinusAnMinusB:
            return (n / 2) % 2 == 1 ? DomainShape::MidToMid : DomainShape::HalfEdge0;
        default:
            fail("PreconditionViolation", "no domain path shape for an infinite row");
    }
}

std::vector<HalfEdge> domainChain(const EquivComplex& K, DomainShape shape) {
    std::vector<HalfEdge> chain;
    if (K.model == ComplexModel::Polygon) {
        const int m = K.labelPeriod, M = K.underlyingM;
        const int scale = M / m;  // underlying edges per labeled edge
        int h0 = 0, h1 = 0;       // half-edge window along the equator
        switch (shape) {
            case DomainShape::HalfEdge0: h0 = 0, h1 = scale; break;
            case DomainShape::WholeEdge0: h0 = 0, h1 = 2 * scale; break;
            case DomainShape::MidToMid: h0 = scale, h1 = 3 * scale; break;
        }
        for (int h = h0; h < h1; ++h) chain.push_back({(h / 2) % M, h % 2});
    } else {
        const int e0 = K.eChain[0][0];
        chain.push_back({e0, 0});
        if (shape == DomainShape::WholeEdge0) chain.push_back({e0, 1});
        if (shape == DomainShape::MidToMid)
            fail("PreconditionViolation", "mid-to-mid domain paths only occur on polygon models");
    }
    return chain;
}

PointRef halfStart(const EquivComplex& K, const HalfEdge& h) {
    return h.half == 0 ? K.vertices[K.edges[h.edge].a] : K.edgeBarycenter(h.edge);
}

PointRef halfEnd(const EquivComplex& K, const HalfEdge& h) {
    return h.half == 0 ? K.edgeBarycenter(h.edge) : K.vertices[K.edges[h.edge].b];
}

std::vector<PathPoint> chainBreakpoints(const EquivComplex& K, const std::vector<HalfEdge>& chain) {
    std::vector<PathPoint> pts;
    auto named = [&](const PointRef& p) { return PathPoint{K.pointName(p), p}; };
    for (size_t i = 0; i < chain.size(); ++i) {
        PointRef s = halfStart(K, chain[i]), e = halfEnd(K, chain[i]);
        if (pts.empty()) {
            pts.push_back(named(s));
        } else if (!(pts.back().place == s)) {
            // tolerate reversed traversal of a half (override paths)
            std::swap(s, e);
            if (!(pts.back().place == s))
                fail("PreconditionViolation", "domain path is not connected");
        }
        pts.push_back(named(e));
    }
    // only keep a label on a name the overlay actually assigns
    for (auto& p : pts)
        if (p.label == p.place.str()) p.label.clear();
    return pts;
}

std::string pathString(const std::vector<PathPoint>& pts) {
    std::string s = "[";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ", ";
        s += pts[i].label.empty() ? pts[i].place.str() : pts[i].label;
    }
    return s + "]";
}

HalfEdge halfImage(const CellAction& A, size_t gi, const HalfEdge& h) {
    int e = A.edgePerm[gi][h.edge];
    int half = A.edgeFlip[gi][h.edge] ? 1 - h.half : h.half;
    return {e, half};
}

std::set<HalfEdge> orbitOfChain(const ComplexWithAction& built, const std::vector<HalfEdge>& chain) {
    std::set<HalfEdge> out;
    for (size_t gi = 0; gi < built.handle.group.elems.size(); ++gi)
        for (const HalfEdge& h : chain) out.insert(halfImage(built.action, gi, h));
    return out;
}

/// Indices of the group elements mapping the chain to itself (as a set, or
/// half-by-half when pointwise is requested).
std::vector<size_t> chainStabilizer(const ComplexWithAction& built,
                                    const std::vector<HalfEdge>& chain, bool pointwise) {
    std::set<HalfEdge> chainSet(chain.begin(), chain.end());
    std::vector<size_t> out;
    for (size_t gi = 0; gi < built.handle.group.elems.size(); ++gi) {
        bool keep = true;
        if (pointwise) {
            for (const HalfEdge& h : chain)
                if (!(halfImage(built.action, gi, h) == h)) {
                    keep = false;
                    break;
                }
        } else {
            std::set<HalfEdge> img;
            for (const HalfEdge& h : chainSet) img.insert(halfImage(built.action, gi, h));
            keep = img == chainSet;
        }
        if (keep) out.push_back(gi);
    }
    return out;
}

std::set<HalfEdge> coverTarget(const EquivComplex& K) {
    std::set<HalfEdge> target;
    const int nEdges =
        K.model == ComplexModel::Polygon ? K.underlyingM : (int)K.edges.size();
    for (int e = 0; e < nEdges; ++e) {
        target.insert({e, 0});
        target.insert({e, 1});
    }
    return target;
}

// --------------------------------------------------------------------------
// Label parsing
// --------------------------------------------------------------------------

std::string stripSpace(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!isspace((unsigned char)c)) out += c;
    return out;
}

bool parseIndexedLabel(const std::string& s, const std::string& pre, const std::string& post,
                       int& k) {
    if (s.size() <= pre.size() + post.size()) return false;
    if (s.compare(0, pre.size(), pre) != 0) return false;
    if (s.compare(s.size() - post.size(), post.size(), post) != 0) return false;
    std::string mid = s.substr(pre.size(), s.size() - pre.size() - post.size());
    if (mid.empty()) return false;
    size_t i = mid[0] == '-' ? 1 : 0;
    if (i == mid.size()) return false;
    for (; i < mid.size(); ++i)
        if (!isdigit((unsigned char)mid[i])) return false;
    k = std::stoi(mid);
    return true;
}

/// Resolve a plain marker label on a built finite model (no fundamental-domain
/// or generic labels at this level).
std::optional<PointRef> resolveOnModel(const ComplexWithAction& built, const std::string& raw) {
    const EquivComplex& K = built.complex;
    const std::string s = stripSpace(raw);
    const int m = K.labelPeriod;
    auto wrap = [&](int k) { return ((k % m) + m) % m; };
    int k = 0;
    if (K.model == ComplexModel::Polygon) {
        if (s == "S") return PointRef::poleS();
        if (s == "N") return PointRef::poleN();
    } else {
        if (s == "S") return PointRef::coord(vq(0, 0, -1));
        if (s == "N") return PointRef::coord(vq(0, 0, 1));
        if (s == "b(f-1)") return K.faceBarycenter(K.faceMinus1);
        if (parseIndexedLabel(s, "b(f", ")", k) && k >= 0 && k < 3)
            return K.faceBarycenter(K.fIndex[k]);
        if (K.model == ComplexModel::Octahedron) {
            // square-model overlay labels stay queryable on the octahedron
            int kk = 0;
            auto ring = [&](int i) -> Vec3 {
                const Vec3 r[4] = {vq(1, 0, 0), vq(0, 1, 0), vq(-1, 0, 0), vq(0, -1, 0)};
                return r[((i % 4) + 4) % 4];
            };
            if (parseIndexedLabel(s, "k4:v", "", kk)) return PointRef::coord(ring(kk));
            if (parseIndexedLabel(s, "k4:b(e", ")", kk))
                return arcInteriorPoint(ring(kk), ring(kk + 1));
        }
    }
    if (parseIndexedLabel(s, "v", "", k)) return K.vPoint(wrap(k));
    if (parseIndexedLabel(s, "b(e", ")", k)) return K.bEdgeLabelPoint(wrap(k));
    return std::nullopt;
}

Vec3 coordOf(const PointRef& p) {
    if (p.kind != PointRef::Kind::Coord)
        fail("PreconditionViolation", "expected an exact coordinate point");
    return p.p;
}

/// Representative interior point of the arc between two resolved points.
PointRef arcRepresentative(const PointRef& a, const PointRef& b) {
    using Kind = PointRef::Kind;
    if (a.kind == Kind::Coord && b.kind == Kind::Coord)
        return arcInteriorPoint(coordOf(a), coordOf(b));
    auto pole = [&](const PointRef& p) { return p.kind == Kind::PoleS || p.kind == Kind::PoleN; };
    if (pole(a) && b.kind == Kind::Equator)
        return PointRef::meridian(a.kind == Kind::PoleS, b.q);
    if (pole(b) && a.kind == Kind::Equator)
        return PointRef::meridian(b.kind == Kind::PoleS, a.q);
    if (a.kind == Kind::Equator && b.kind == Kind::Equator) {
        Rational delta = mod1(b.q - a.q);
        if (delta == Rational(0))
            fail("UnknownPointLabel", "no arc between coincident points");
        return PointRef::equator(a.q + delta / 8);
    }
    fail("UnknownPointLabel", "no representative arc between these points");
}

bool isGenericLabel(const std::string& s) {
    return s == "x" || (s.rfind("int(", 0) == 0 && s.back() == ')');
}

/// Endpoint labels of a generic-interior label ("x" or "int(p,q)").
std::pair<std::string, std::string> genericEndpoints(const std::string& raw) {
    const std::string s = stripSpace(raw);
    if (s == "x") return {"v0", "b(e0)"};
    std::string inner = s.substr(4, s.size() - 5);
    // split at the top-level comma (labels may contain parentheses)
    int depth = 0;
    for (size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        if (inner[i] == ')') --depth;
        if (inner[i] == ',' && depth == 0)
            return {inner.substr(0, i), inner.substr(i + 1)};
    }
    fail("UnknownPointLabel", "generic interior label needs two endpoint labels");
}

// --------------------------------------------------------------------------
// One-parameter rows
// --------------------------------------------------------------------------

PointRef resolveOneDimLabel(Family f, const std::string& raw) {
    const std::string s = stripSpace(raw);
    if (s == "S") return PointRef::poleS();
    if (s == "N") return PointRef::poleN();
    if (s == "v0" || s == "d0" || s == "d1") return PointRef::equator(Rational(0));
    if (s == "d-1") {
        bool markerAtV0 = f == Family::SO3 || f == Family::O3;
        return markerAtV0 ? PointRef::equator(Rational(0)) : PointRef::poleS();
    }
    if (isGenericLabel(s) && s != "x") {
        auto [pa, pb] = genericEndpoints(s);
        return arcRepresentative(resolveOneDimLabel(f, pa), resolveOneDimLabel(f, pb));
    }
    fail("UnknownPointLabel", "unknown point label on an infinite row: " + raw);
}

}  // namespace

// --------------------------------------------------------------------------
// EquivComplex methods
// --------------------------------------------------------------------------

int EquivComplex::eulerCharacteristic() const {
    return (int)vertices.size() - (int)edges.size() + (int)faces.size();
}

PointRef EquivComplex::vPoint(int i) const {
    return vertices[vIndex[i]];
}

PointRef EquivComplex::bEdgeLabelPoint(int i) const {
    if (model == ComplexModel::Polygon)
        return PointRef::equator(Rational(2 * i + 1, 2 * labelPeriod));
    const Vec3 a = coordOf(vPoint(i)), b = coordOf(vPoint((i + 1) % 3));
    return arcInteriorPoint(a, b);
}

PointRef EquivComplex::faceBarycenter(int f) const {
    if (model == ComplexModel::Polygon) {
        const int M = underlyingM;
        bool south = f < M;
        int i = south ? f : f - M;
        return PointRef::meridian(south, Rational(2 * i + 1, 2 * M));
    }
    Vec3 s = vq(0, 0, 0);
    for (int v : faces[f].cycle) s = s + coordOf(vertices[v]);
    return PointRef::coord(s);
}

PointRef EquivComplex::edgeBarycenter(int e) const {
    if (model == ComplexModel::Polygon) {
        const int M = underlyingM;
        if (e < M) return PointRef::equator(Rational(2 * e + 1, 2 * M));
        // meridian edges: an interior meridian point at the equator turn
        int i = e - M;
        bool south = i < M;
        return PointRef::meridian(south, Rational(south ? i : i - M, M));
    }
    return arcInteriorPoint(coordOf(vertices[edges[e].a]), coordOf(vertices[edges[e].b]));
}

std::string EquivComplex::pointName(const PointRef& p) const {
    if (model == ComplexModel::Polygon) {
        if (p == PointRef::poleS()) return "S";
        if (p == PointRef::poleN()) return "N";
    } else if (poleS >= 0) {
        if (p == vertices[poleS]) return "S";
        if (p == vertices[poleN]) return "N";
    }
    for (int i = 0; i < labelPeriod; ++i) {
        if (p == vPoint(i)) return "v" + std::to_string(i);
        if (p == bEdgeLabelPoint(i)) return "b(e" + std::to_string(i) + ")";
    }
    if (model != ComplexModel::Polygon) {
        if (p == faceBarycenter(faceMinus1)) return "b(f-1)";
        for (int i = 0; i < 3; ++i)
            if (p == faceBarycenter(fIndex[i])) return "b(f" + std::to_string(i) + ")";
    }
    return p.str();
}

int EquivComplex::vertexAt(const PointRef& p) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == p) return (int)i;
    return -1;
}

int EquivComplex::edgeBetween(int va, int vb) const {
    for (size_t e = 0; e < edges.size(); ++e)
        if ((edges[e].a == va && edges[e].b == vb) || (edges[e].a == vb && edges[e].b == va))
            return (int)e;
    return -1;
}

// --------------------------------------------------------------------------
// buildComplex
// --------------------------------------------------------------------------

ComplexWithAction buildComplex(const FiniteSubgroupHandle& handle) {
    if (familyIsOneDim(handle.family))
        fail("PreconditionViolation", "infinite rows have no simplicial sphere model");
    FiniteSubgroupHandle h = standardRow(handle);

    EquivComplex K;
    if (familyIsAxial(h.family)) {
        FiniteGroup stabV0 = stabilizerOfPointRef(h.group, PointRef::equator(Rational(0)));
        int m = h.group.size() / stabV0.size();
        K = buildPolygon(m);
    } else {
        ComplexModel model = ComplexModel::Octahedron;
        if (h.family == Family::T || h.family == Family::TMinusO0)
            model = ComplexModel::Tetrahedron;
        else if (h.family == Family::I || h.family == Family::IxZ)
            model = ComplexModel::Icosahedron;
        K = buildSolid(model);
        computeFacesOfEdge(K);
        labelSolid(K);
    }
    if (K.facesOfEdge.empty()) computeFacesOfEdge(K);
    if (K.eulerCharacteristic() != 2)
        fail("PreconditionViolation", "model is not a sphere complex");

    ComplexWithAction out;
    out.handle = h;
    out.complex = K;
    out.action = computeAction(K, h.group);
    return out;
}

std::string complexModelName(const EquivComplex& K) {
    switch (K.model) {
        case ComplexModel::Polygon: return "K_" + std::to_string(K.labelPeriod);
        case ComplexModel::Tetrahedron: return "K_T";
        case ComplexModel::Octahedron: return "K_O";
        case ComplexModel::Icosahedron: return "K_I";
    }
    return "";
}

// --------------------------------------------------------------------------
// fundamentalDomain
// --------------------------------------------------------------------------

FundamentalDomainData fundamentalDomain(const FiniteSubgroupHandle& handle) {
    FundamentalDomainData fd;
    if (familyIsOneDim(handle.family)) {
        PathPoint v0{"v0", PointRef::equator(Rational(0))};
        fd.path = {v0};
        fd.d0 = fd.d1 = v0;
        bool markerAtV0 = handle.family == Family::SO3 || handle.family == Family::O3;
        fd.dMinus1 = markerAtV0 ? v0 : PathPoint{"S", PointRef::poleS()};
        fd.lR = 0;
        return fd;
    }
    ComplexWithAction built = buildComplex(handle);
    const EquivComplex& K = built.complex;
    fd.chain = domainChain(K, domainShapeFor(built.handle.family, built.handle.n));
    fd.path = chainBreakpoints(K, fd.chain);
    fd.d0 = fd.path.front();
    fd.d1 = fd.path.back();
    if (K.model == ComplexModel::Polygon)
        fd.dMinus1 = PathPoint{"S", PointRef::poleS()};
    else
        fd.dMinus1 = PathPoint{"b(f-1)", K.faceBarycenter(K.faceMinus1)};
    size_t setwise = chainStabilizer(built, fd.chain, /*pointwise=*/false).size();
    fd.lR = (long long)built.handle.group.size() / (long long)setwise;
    return fd;
}

// --------------------------------------------------------------------------
// verifyOrbitCover
// --------------------------------------------------------------------------

namespace {

/// Break an override breakpoint list ("v0,b(e0)" etc.) into half-edges.
std::vector<HalfEdge> parseDomainOverride(const ComplexWithAction& built, const std::string& text) {
    const EquivComplex& K = built.complex;
    std::string s;
    for (char c : text) {
        if (c == '[' || c == ']' || c == '|' || isspace((unsigned char)c)) continue;
        s += c == '+' ? ',' : c;
    }
    std::vector<std::string> tokens;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    if (tokens.size() < 2)
        fail("PreconditionViolation", "domain override needs at least two breakpoints");
    // drop immediate repetitions produced by "]+[" joins
    std::vector<PointRef> pts;
    for (const std::string& t : tokens) {
        auto p = resolveOnModel(built, t);
        if (!p) fail("UnknownPointLabel", "unknown breakpoint label: " + t);
        if (pts.empty() || !(pts.back() == *p)) pts.push_back(*p);
    }

    std::vector<HalfEdge> chain;
    auto appendBetween = [&](const PointRef& a, const PointRef& b) {
        if (K.model == ComplexModel::Polygon) {
            auto halfIndexOf = [&](const PointRef& p) -> int {
                if (p.kind != PointRef::Kind::Equator)
                    fail("PreconditionViolation", "override breakpoints must lie on the equator");
                Rational t = p.q * Rational(2 * K.underlyingM);
                if (t.denominator() != 1)
                    fail("PreconditionViolation", "override breakpoint is not a cell point");
                return (int)t.numerator();
            };
            int ha = halfIndexOf(a), hb = halfIndexOf(b);
            if (hb <= ha) hb += 2 * K.underlyingM;
            for (int h = ha; h < hb; ++h)
                chain.push_back({(h / 2) % K.underlyingM, h % 2});
            return;
        }
        auto vertexOf = [&](const PointRef& p) { return K.vertexAt(p); };
        auto baryOf = [&](const PointRef& p) -> int {
            for (size_t e = 0; e < K.edges.size(); ++e)
                if (K.edgeBarycenter((int)e) == p) return (int)e;
            return -1;
        };
        int va = vertexOf(a), vb = vertexOf(b);
        if (va >= 0 && vb >= 0) {
            int e = K.edgeBetween(va, vb);
            if (e < 0) fail("PreconditionViolation", "override breakpoints are not adjacent");
            if (K.edges[e].a == va) {
                chain.push_back({e, 0});
                chain.push_back({e, 1});
            } else {
                chain.push_back({e, 1});
                chain.push_back({e, 0});
            }
            return;
        }
        int ea = baryOf(a), eb = baryOf(b);
        if (va >= 0 && eb >= 0) {
            if (K.edges[eb].a != va && K.edges[eb].b != va)
                fail("PreconditionViolation", "override breakpoints are not adjacent");
            chain.push_back({eb, K.edges[eb].a == va ? 0 : 1});
            return;
        }
        if (ea >= 0 && vb >= 0) {
            if (K.edges[ea].a != vb && K.edges[ea].b != vb)
                fail("PreconditionViolation", "override breakpoints are not adjacent");
            chain.push_back({ea, K.edges[ea].b == vb ? 1 : 0});
            return;
        }
        fail("PreconditionViolation", "override breakpoints must be vertices or edge barycenters");
    };
    for (size_t i = 0; i + 1 < pts.size(); ++i) appendBetween(pts[i], pts[i + 1]);
    return chain;
}

}  // namespace

OrbitCoverResult verifyOrbitCover(const FiniteSubgroupHandle& handle,
                                  const std::optional<std::string>& domainOverride) {
    if (familyIsOneDim(handle.family))
        fail("PreconditionViolation", "orbit-cover checks apply to the finite rows");
    ComplexWithAction built = buildComplex(handle);
    const EquivComplex& K = built.complex;
    std::vector<HalfEdge> chain =
        domainOverride ? parseDomainOverride(built, *domainOverride)
                       : domainChain(K, domainShapeFor(built.handle.family, built.handle.n));

    OrbitCoverResult res;
    const std::set<HalfEdge> target = coverTarget(K);
    std::set<HalfEdge> covered = orbitOfChain(built, chain);
    res.covers = std::includes(covered.begin(), covered.end(), target.begin(), target.end());
    if (!res.covers) {
        for (const HalfEdge& h : target)
            if (!covered.count(h)) {
                res.witness = "[" + K.pointName(halfStart(K, h)) + ", " +
                              K.pointName(halfEnd(K, h)) + "]";
                break;
            }
        res.minimal = true;  // not meaningful without coverage
        return res;
    }

    res.minimal = true;
    if (chain.size() > 1) {
        std::vector<HalfEdge> dropLast(chain.begin(), chain.end() - 1);
        std::vector<HalfEdge> dropFirst(chain.begin() + 1, chain.end());
        for (const auto& sub : {dropLast, dropFirst}) {
            std::set<HalfEdge> subCover = orbitOfChain(built, sub);
            if (std::includes(subCover.begin(), subCover.end(), target.begin(), target.end())) {
                res.minimal = false;
                res.witness = "covering sub-path " + pathString(chainBreakpoints(K, sub));
                break;
            }
        }
    }
    return res;
}

// --------------------------------------------------------------------------
// intersectionLaw
// --------------------------------------------------------------------------

bool intersectionLaw(const FiniteSubgroupHandle& handle) {
    if (handle.family == Family::Zn || handle.family == Family::AnMinusB)
        fail("PreconditionViolation",
             "the intersection law excludes the rows with degenerate domain endpoints");
    if (familyIsOneDim(handle.family))
        fail("PreconditionViolation", "the intersection law applies to the finite rows");

    ComplexWithAction built = buildComplex(handle);
    const FiniteGroup& G = built.handle.group;
    FundamentalDomainData fd = fundamentalDomain(handle);

    auto stab = [&](const PointRef& p) { return stabilizerOfPointRef(G, p); };

    // Marker-to-endpoint arcs: the joint stabilizer of the endpoints must fix
    // the arc pointwise (checked on a representative interior point).
    for (const PathPoint& d : {fd.d0, fd.d1}) {
        FiniteGroup lhs = intersectGroups(stab(fd.dMinus1.place), stab(d.place));
        FiniteGroup arc = stab(arcRepresentative(fd.dMinus1.place, d.place));
        if (!(lhs == arc)) return false;
    }

    // Endpoints of the domain path: three independent routes to its
    // pointwise stabilizer must agree (endpoint intersection; per-breakpoint
    // geometric stabilizers; half-edge-level cell action).  The setwise
    // stabilizer is intentionally not compared: one axial family's whole-edge
    // domain admits an orientation-reversing symmetry, so setwise may be
    // strictly larger.
    FiniteGroup lhs = intersectGroups(stab(fd.d0.place), stab(fd.d1.place));
    FiniteGroup geo = G;
    for (const PathPoint& p : fd.path) geo = intersectGroups(geo, stab(p.place));

    auto asGroup = [&](const std::vector<size_t>& idx) {
        FiniteGroup g;
        g.amb = G.amb;
        for (size_t i : idx) g.elems.push_back(G.elems[i]);
        std::sort(g.elems.begin(), g.elems.end());
        return g;
    };
    FiniteGroup cellPointwise = asGroup(chainStabilizer(built, fd.chain, /*pointwise=*/true));

    return lhs == geo && lhs == cellPointwise;
}

// --------------------------------------------------------------------------
// Labeled points
// --------------------------------------------------------------------------

PointRef resolvePointLabel(const FiniteSubgroupHandle& handle, const std::string& label) {
    const std::string s = stripSpace(label);
    if (familyIsOneDim(handle.family)) {
        if (s == "x")
            fail("UnknownPointLabel", "the generic label x needs a finite-row edge marker");
        return resolveOneDimLabel(handle.family, s);
    }
    if (s == "d-1" || s == "d0" || s == "d1") {
        FundamentalDomainData fd = fundamentalDomain(handle);
        return s == "d-1" ? fd.dMinus1.place : (s == "d0" ? fd.d0.place : fd.d1.place);
    }
    ComplexWithAction built = buildComplex(handle);
    if (isGenericLabel(s)) {
        auto [pa, pb] = genericEndpoints(s);
        auto a = resolveOnModel(built, pa), b = resolveOnModel(built, pb);
        if (!a || !b)
            fail("UnknownPointLabel", "unknown arc endpoint label in: " + label);
        if (built.complex.model == ComplexModel::Polygon && s == "x")
            return PointRef::equator(Rational(1, 16 * built.complex.labelPeriod));
        return arcRepresentative(*a, *b);
    }
    if (auto p = resolveOnModel(built, s)) return *p;
    fail("UnknownPointLabel", "unknown point label: " + label);
}

PointStabilizer stabilizerOfPoint(const FiniteSubgroupHandle& handle, const std::string& label) {
    const std::string s = stripSpace(label);
    PointStabilizer out;
    if (familyIsOneDim(handle.family)) {
        PointRef p = resolvePointLabel(handle, s);
        OneDimSubgroupDesc desc = oneDimStabilizer(handle.family, p);
        out.finite = !desc.infinite();
        out.desc = desc;
        if (out.finite) out.group = desc.finitePart;
        return out;
    }
    ComplexWithAction built = buildComplex(handle);
    out.finite = true;
    if (isGenericLabel(s)) {
        // a generic interior point is fixed exactly when both arc endpoints are
        auto [pa, pb] = genericEndpoints(s);
        auto a = resolveOnModel(built, pa), b = resolveOnModel(built, pb);
        if (!a || !b)
            fail("UnknownPointLabel", "unknown arc endpoint label in: " + label);
        out.group = intersectGroups(stabilizerOfPointRef(built.handle.group, *a),
                                    stabilizerOfPointRef(built.handle.group, *b));
        return out;
    }
    PointRef p = resolvePointLabel(handle, s);
    out.group = stabilizerOfPointRef(built.handle.group, p);
    return out;
}

}  // namespace equivect
