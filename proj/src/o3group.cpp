#include "equivect/o3group.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace equivect {

// --------------------------------------------------------------------------
// Family tags
// --------------------------------------------------------------------------

namespace {
const std::vector<std::pair<Family, std::string>>& familyTable() {
    static const std::vector<std::pair<Family, std::string>> t = {
        {Family::Zn, "Zn"},
        {Family::Dn, "Dn"},
        {Family::ZnxZ, "ZnxZ"},
        {Family::DnxZ, "DnxZ"},
        {Family::AnMinusB, "an_minus_b"},
        {Family::MinusAnB, "minus_an_b"},
        {Family::MinusAnMinusB, "minus_an_minus_b"},
        {Family::MinusAn, "minus_an"},
        {Family::T, "T"},
        {Family::O, "O"},
        {Family::I, "I"},
        {Family::TMinusO0, "T_minus_o0"},
        {Family::TxZ, "TxZ"},
        {Family::OxZ, "OxZ"},
        {Family::IxZ, "IxZ"},
        {Family::SO2, "SO2"},
        {Family::O2, "O2"},
        {Family::SO2MinusB, "SO2_minus_b"},
        {Family::SO2MinusA2, "SO2_minus_a2"},
        {Family::O2xZ, "O2xZ"},
        {Family::SO3, "SO3"},
        {Family::O3, "O3"},
    };
    return t;
}
}  // namespace

std::string familyTag(Family f) {
    for (const auto& [fam, tag] : familyTable())
        if (fam == f) return tag;
    fail("UnsupportedFamily", "unknown family enum value");
}

Family parseFamilyTag(const std::string& tag) {
    for (const auto& [fam, t] : familyTable())
        if (t == tag) return fam;
    // Parity-suffixed aliases ("DnxZ_odd", "minus_an_b_even", ...) name the
    // same family; the parity itself is derived from n at construction.
    for (const std::string& suffix : {std::string("_odd"), std::string("_even")})
        if (tag.size() > suffix.size() && tag.compare(tag.size() - suffix.size(), suffix.size(), suffix) == 0)
            return parseFamilyTag(tag.substr(0, tag.size() - suffix.size()));
    fail("UnsupportedFamily", "unknown family tag '" + tag + "'");
}

bool familyIsAxial(Family f) {
    switch (f) {
        case Family::Zn:
        case Family::Dn:
        case Family::ZnxZ:
        case Family::DnxZ:
        case Family::AnMinusB:
        case Family::MinusAnB:
        case Family::MinusAnMinusB:
        case Family::MinusAn:
            return true;
        default:
            return false;
    }
}

bool familyIsPolyhedral(Family f) {
    switch (f) {
        case Family::T:
        case Family::O:
        case Family::I:
        case Family::TMinusO0:
        case Family::TxZ:
        case Family::OxZ:
        case Family::IxZ:
            return true;
        default:
            return false;
    }
}

bool familyIsOneDim(Family f) {
    switch (f) {
        case Family::SO2:
        case Family::O2:
        case Family::SO2MinusB:
        case Family::SO2MinusA2:
        case Family::O2xZ:
        case Family::SO3:
        case Family::O3:
            return true;
        default:
            return false;
    }
}

std::string AmbientTag::str() const {
    switch (kind) {
        case AmbientKind::AxialDnxZ:
            return "DnxZ(" + std::to_string(N) + ")";
        case AmbientKind::PolyO:
            return "OxZ";
        case AmbientKind::PolyI:
            return "IxZ";
        case AmbientKind::OneDim:
            return "O2xZ-model";
    }
    return "?";
}

// --------------------------------------------------------------------------
// Elements
// --------------------------------------------------------------------------

GroupElement GroupElement::axial(int N, int s, int r, long long k) {
    if (N < 1) fail("IllegalFamilyParameter", "ambient rotation order must be positive");
    GroupElement g;
    g.amb = {AmbientKind::AxialDnxZ, N};
    g.s = s & 1;
    g.r = r & 1;
    g.k = modll(k, N);
    return g;
}

GroupElement GroupElement::oneDim(int s, int r, const Rational& q) {
    GroupElement g;
    g.amb = {AmbientKind::OneDim, 1};
    g.s = s & 1;
    g.r = r & 1;
    g.q = mod1(q);
    return g;
}

GroupElement GroupElement::poly(AmbientKind which, const Mat3& m) {
    GroupElement g;
    g.amb = {which, 1};
    g.mat = m;
    return g;
}

bool GroupElement::isIdentity() const {
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ:
            return s == 0 && r == 0 && k == 0;
        case AmbientKind::OneDim:
            return s == 0 && r == 0 && q == Rational(0);
        default:
            return mat == Mat3::identity();
    }
}

bool GroupElement::isMinusId() const {
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ:
            return s == 1 && r == 0 && k == 0;
        case AmbientKind::OneDim:
            return s == 1 && r == 0 && q == Rational(0);
        default:
            return mat == -Mat3::identity();
    }
}

int GroupElement::det() const {
    // b is the half-turn about the x-axis (det +1); only -id carries det -1.
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ:
        case AmbientKind::OneDim:
            return (s & 1) ? -1 : 1;
        default:
            return mat.det().sign();
    }
}

GroupElement GroupElement::inverse() const {
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ:
            return axial(amb.N, s, r, r ? k : -k);
        case AmbientKind::OneDim:
            return oneDim(s, r, r ? q : -q);
        default:
            return poly(amb.kind, mat.transpose());
    }
}

bool operator==(const GroupElement& x, const GroupElement& y) {
    if (!(x.amb == y.amb)) return false;
    switch (x.amb.kind) {
        case AmbientKind::AxialDnxZ:
            return x.s == y.s && x.r == y.r && x.k == y.k;
        case AmbientKind::OneDim:
            return x.s == y.s && x.r == y.r && x.q == y.q;
        default:
            return x.mat == y.mat;
    }
}

bool operator<(const GroupElement& x, const GroupElement& y) {
    if (!(x.amb == y.amb)) {
        if (x.amb.kind != y.amb.kind) return x.amb.kind < y.amb.kind;
        return x.amb.N < y.amb.N;
    }
    switch (x.amb.kind) {
        case AmbientKind::AxialDnxZ:
            return std::tie(x.s, x.r, x.k) < std::tie(y.s, y.r, y.k);
        case AmbientKind::OneDim:
            return std::tie(x.s, x.r, x.q) < std::tie(y.s, y.r, y.q);
        default:
            return matLess(x.mat, y.mat);
    }
}

namespace {
/// Shortest generator words for the elements of a polyhedral ambient, found
/// once per ambient kind by breadth-first search over the named generators.
/// Appending a generator name on the right matches the parser convention
/// ("X Y" applies Y first).
const std::map<GroupElement, std::string>& polyWordTable(const AmbientTag& amb) {
    static std::map<int, std::map<GroupElement, std::string>> tables;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& table = tables[static_cast<int>(amb.kind)];
    if (!table.empty()) return table;
    std::vector<std::string> names = ambientGeneratorNames(amb);
    std::vector<GroupElement> gens;
    gens.reserve(names.size());
    for (const auto& nm : names) gens.push_back(parseWord(nm, amb));
    GroupElement e = closure({}, amb).elems.front();
    table[e] = "id";
    std::deque<GroupElement> queue{e};
    while (!queue.empty()) {
        GroupElement cur = queue.front();
        queue.pop_front();
        const std::string curWord = table.at(cur);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            GroupElement nxt = multiply(cur, gens[i]);
            if (table.count(nxt)) continue;
            table[nxt] = curWord == "id" ? names[i] : curWord + " " + names[i];
            queue.push_back(nxt);
        }
    }
    return table;
}
}  // namespace

std::string GroupElement::word() const {
    std::ostringstream out;
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ: {
            // (-id)^s b^r a^k = (-id)^s a^k' b^r with k' = -k when r = 1.
            long long kp = r ? modll(-k, amb.N) : k;
            if (s) out << "-";
            bool wrote = false;
            if (kp != 0) {
                out << "a";
                if (kp != 1) out << "^" << kp;
                wrote = true;
            }
            if (r) {
                if (wrote) out << " ";
                out << "b";
                wrote = true;
            }
            if (!wrote) out << "id";
            return out.str();
        }
        case AmbientKind::OneDim: {
            Rational qp = r ? mod1(-q) : q;
            if (s) out << "-";
            bool wrote = false;
            if (qp != Rational(0)) {
                out << "rot(" << ratStr(qp) << ")";
                wrote = true;
            }
            if (r) {
                if (wrote) out << " ";
                out << "b";
                wrote = true;
            }
            if (!wrote) out << "id";
            return out.str();
        }
        default: {
            const auto& table = polyWordTable(amb);
            auto it = table.find(*this);
            if (it != table.end()) return it->second;
            // Elements outside the ambient (never produced by this library)
            // fall back to a raw matrix dump.
            out << "mat[";
            for (int i = 0; i < 3; ++i) {
                if (i) out << "|";
                for (int j = 0; j < 3; ++j) {
                    if (j) out << ",";
                    out << mat.at(i, j).str();
                }
            }
            out << "]";
            return out.str();
        }
    }
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
    if (!(g.amb == h.amb))
        fail("AmbientMismatch", "elements of " + g.amb.str() + " and " + h.amb.str() + " cannot be multiplied");
    switch (g.amb.kind) {
        case AmbientKind::AxialDnxZ:
            return GroupElement::axial(g.amb.N, g.s ^ h.s, g.r ^ h.r, h.k + (h.r ? -g.k : g.k));
        case AmbientKind::OneDim:
            return GroupElement::oneDim(g.s ^ h.s, g.r ^ h.r, h.q + (h.r ? -g.q : g.q));
        default:
            return GroupElement::poly(g.amb.kind, g.mat * h.mat);
    }
}

GroupElement projectToSO3(const GroupElement& g) {
    if (g.det() == 1) return g;
    switch (g.amb.kind) {
        case AmbientKind::AxialDnxZ:
            return GroupElement::axial(g.amb.N, g.s ^ 1, g.r, g.k);
        case AmbientKind::OneDim:
            return GroupElement::oneDim(g.s ^ 1, g.r, g.q);
        default:
            return GroupElement::poly(g.amb.kind, -g.mat);
    }
}

// --------------------------------------------------------------------------
// Finite groups
// --------------------------------------------------------------------------

bool FiniteGroup::contains(const GroupElement& g) const {
    return std::binary_search(elems.begin(), elems.end(), g);
}

bool FiniteGroup::containsMinusId() const {
    for (const auto& g : elems)
        if (g.isMinusId()) return true;
    return false;
}

bool FiniteGroup::isSubsetOf(const FiniteGroup& other) const {
    for (const auto& g : elems)
        if (!other.contains(g)) return false;
    return true;
}

bool operator<(const FiniteGroup& a, const FiniteGroup& b) {
    return std::lexicographical_compare(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end());
}

FiniteGroup closure(const std::vector<GroupElement>& gens, const AmbientTag& amb) {
    if (amb.kind == AmbientKind::OneDim && !gens.empty()) {
        // Finite subgroups of the one-parameter model close like any other.
    }
    std::set<GroupElement> seen;
    GroupElement id;
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ:
            id = GroupElement::axialIdentity(amb.N);
            break;
        case AmbientKind::OneDim:
            id = GroupElement::oneDim(0, 0, Rational(0));
            break;
        default:
            id = GroupElement::poly(amb.kind, Mat3::identity());
            break;
    }
    seen.insert(id);
    for (const auto& g : gens) {
        if (!(g.amb == amb)) fail("AmbientMismatch", "generator outside the stated ambient group");
        seen.insert(g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<GroupElement> cur(seen.begin(), seen.end());
        for (const auto& x : cur)
            for (const auto& y : cur)
                if (seen.insert(multiply(x, y)).second) grew = true;
        if (seen.size() > 100000) fail("NotASubgroup", "closure did not terminate within the ambient");
    }
    FiniteGroup G;
    G.amb = amb;
    G.elems.assign(seen.begin(), seen.end());
    return G;
}

FiniteGroup conjugateSubgroup(const FiniteGroup& S, const GroupElement& c) {
    // Commensurable axial ambients embed in their least common refinement;
    // lifting there lets a conjugator from a finer ambient act on S.
    if (!(S.amb == c.amb) && S.amb.kind == AmbientKind::AxialDnxZ &&
        c.amb.kind == AmbientKind::AxialDnxZ) {
        int M = std::lcm(S.amb.N, c.amb.N);
        FiniteGroup L;
        L.amb = {AmbientKind::AxialDnxZ, M};
        for (const auto& g : S.elems)
            L.elems.push_back(GroupElement::axial(M, g.s, g.r, g.k * (M / g.amb.N)));
        std::sort(L.elems.begin(), L.elems.end());
        return conjugateSubgroup(L, GroupElement::axial(M, c.s, c.r, c.k * (M / c.amb.N)));
    }
    FiniteGroup R;
    R.amb = S.amb;
    GroupElement cinv = c.inverse();
    for (const auto& g : S.elems) R.elems.push_back(multiply(multiply(cinv, g), c));
    std::sort(R.elems.begin(), R.elems.end());
    return R;
}

FiniteGroup intersectGroups(const FiniteGroup& a, const FiniteGroup& b) {
    if (!(a.amb == b.amb)) fail("AmbientMismatch", "intersection requires a common ambient group");
    FiniteGroup out;
    out.amb = a.amb;
    std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                          std::back_inserter(out.elems));
    return out;
}

int elementOrder(const FiniteGroup& G, const GroupElement& g) {
    GroupElement x = g;
    int order = 1;
    while (!x.isIdentity()) {
        x = multiply(x, g);
        ++order;
        if (order > G.size() + 1) fail("NotASubgroup", "element order exceeds group order");
    }
    return order;
}

// --------------------------------------------------------------------------
// Polyhedral generator matrices
// --------------------------------------------------------------------------

namespace {

Mat3 matFromRows(std::initializer_list<QSqrt5> entries) {
    Mat3 m;
    int i = 0;
    for (const auto& e : entries) m.m[i++] = e;
    return m;
}

const QSqrt5 Q0{Rational(0)}, Q1{Rational(1)}, Qm1{Rational(-1)};
const QSqrt5 QH{Rational(1, 2)};           // 1/2
const QSqrt5 QmH{Rational(-1, 2)};         // -1/2
const QSqrt5 QC{Rational(-1, 4), Rational(1, 4)};   // (sqrt5-1)/4 = cos 72
const QSqrt5 QPhiH{Rational(1, 4), Rational(1, 4)}; // (1+sqrt5)/4 = phi/2

Mat3 rotZ90() { return matFromRows({Q0, Qm1, Q0, Q1, Q0, Q0, Q0, Q0, Q1}); }
Mat3 rotZ180() { return rotZ90() * rotZ90(); }
Mat3 rotX180() { return matFromRows({Q1, Q0, Q0, Q0, Qm1, Q0, Q0, Q0, Qm1}); }
Mat3 cycleXYZ() { return matFromRows({Q0, Q0, Q1, Q1, Q0, Q0, Q0, Q1, Q0}); }
/// Rotation by 2*pi/5 about the icosahedron vertex (0, 1, phi).
Mat3 rotIco72() {
    return matFromRows({QC, -QPhiH, QH, QPhiH, QH, QC, QmH, QC, QPhiH});
}

}  // namespace

FiniteGroup ambientGroup(const AmbientTag& amb) {
    static std::map<std::pair<int, int>, FiniteGroup> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(amb.kind), amb.N);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    FiniteGroup G;
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ: {
            G.amb = amb;
            for (int s = 0; s <= 1; ++s)
                for (int r = 0; r <= 1; ++r)
                    for (int k = 0; k < amb.N; ++k) G.elems.push_back(GroupElement::axial(amb.N, s, r, k));
            std::sort(G.elems.begin(), G.elems.end());
            break;
        }
        case AmbientKind::PolyO: {
            auto a4 = GroupElement::poly(AmbientKind::PolyO, rotZ90());
            auto b = GroupElement::poly(AmbientKind::PolyO, rotX180());
            auto r3 = GroupElement::poly(AmbientKind::PolyO, cycleXYZ());
            auto mi = GroupElement::poly(AmbientKind::PolyO, -Mat3::identity());
            G = closure({a4, b, r3, mi}, amb);
            break;
        }
        case AmbientKind::PolyI: {
            auto r5 = GroupElement::poly(AmbientKind::PolyI, rotIco72());
            auto c3 = GroupElement::poly(AmbientKind::PolyI, cycleXYZ());
            auto mi = GroupElement::poly(AmbientKind::PolyI, -Mat3::identity());
            G = closure({r5, c3, mi}, amb);
            break;
        }
        case AmbientKind::OneDim:
            fail("UnsupportedGroupType", "the one-parameter ambient group is infinite");
    }
    cache[key] = G;
    return G;
}

// --------------------------------------------------------------------------
// Construction
// --------------------------------------------------------------------------

namespace {

std::vector<GroupElement> polyFamilyGenerators(Family f) {
    AmbientKind which = (f == Family::I || f == Family::IxZ) ? AmbientKind::PolyI : AmbientKind::PolyO;
    auto P = [&](const Mat3& m) { return GroupElement::poly(which, m); };
    const auto minusId = P(-Mat3::identity());
    switch (f) {
        case Family::T:
            return {P(rotZ180()), P(rotX180()), P(cycleXYZ())};
        case Family::O:
            return {P(rotZ90()), P(cycleXYZ())};
        case Family::I:
            return {P(rotIco72()), P(cycleXYZ())};
        case Family::TMinusO0:
            // T extended by -o0 where o0 is the 4-fold rotation about z.
            return {P(rotZ180()), P(rotX180()), P(cycleXYZ()), P(-rotZ90())};
        case Family::TxZ:
            return {P(rotZ180()), P(rotX180()), P(cycleXYZ()), minusId};
        case Family::OxZ:
            return {P(rotZ90()), P(cycleXYZ()), minusId};
        case Family::IxZ:
            return {P(rotIco72()), P(cycleXYZ()), minusId};
        default:
            fail("UnsupportedFamily", "not a polyhedral family");
    }
}

void checkAxialLegality(Family f, int n) {
    if (n < 1) fail("IllegalFamilyParameter", "axial families require n >= 1");
    auto requireEven = [&]() {
        if (n % 2 != 0)
            fail("IllegalFamilyParameter", familyTag(f) + " requires even n (odd n gives another row)");
    };
    switch (f) {
        case Family::Zn:
        case Family::DnxZ:
        case Family::AnMinusB:
            return;
        case Family::Dn:
            if (n == 1) fail("IllegalFamilyParameter", "Dn with n=1 coincides with Zn n=2; use Zn n=2");
            return;
        case Family::ZnxZ:
            if (n == 2) fail("IllegalFamilyParameter", "ZnxZ with n=2 coincides with DnxZ n=1; use DnxZ n=1");
            return;
        case Family::MinusAn:
            requireEven();
            if (n == 2)
                fail("IllegalFamilyParameter", "minus_an with n=2 coincides with an_minus_b n=1; use an_minus_b n=1");
            return;
        case Family::MinusAnB:
            requireEven();
            if (n == 2)
                fail("IllegalFamilyParameter", "minus_an_b with n=2 coincides with an_minus_b n=2; use an_minus_b n=2");
            return;
        case Family::MinusAnMinusB:
            requireEven();
            if (n == 2)
                fail("IllegalFamilyParameter",
                     "minus_an_minus_b with n=2 coincides with an_minus_b n=2; use an_minus_b n=2");
            return;
        default:
            fail("UnsupportedFamily", "not an axial family");
    }
}

std::vector<GroupElement> axialFamilyGenerators(Family f, int n) {
    const auto a = GroupElement::axial(n, 0, 0, 1);
    const auto b = GroupElement::axial(n, 0, 1, 0);
    const auto minusId = GroupElement::axial(n, 1, 0, 0);
    const auto minusA = GroupElement::axial(n, 1, 0, 1);
    const auto minusB = GroupElement::axial(n, 1, 1, 0);
    switch (f) {
        case Family::Zn:
            return {a};
        case Family::Dn:
            return {a, b};
        case Family::ZnxZ:
            return {a, minusId};
        case Family::DnxZ:
            return {a, b, minusId};
        case Family::AnMinusB:
            return {a, minusB};
        case Family::MinusAnB:
            return {minusA, b};
        case Family::MinusAnMinusB:
            return {minusA, minusB};
        case Family::MinusAn:
            return {minusA};
        default:
            fail("UnsupportedFamily", "not an axial family");
    }
}

}  // namespace

FiniteSubgroupHandle constructGroup(Family f, int n) {
    FiniteSubgroupHandle h;
    h.family = f;
    if (familyIsAxial(f)) {
        checkAxialLegality(f, n);
        h.n = n;
        h.amb = {AmbientKind::AxialDnxZ, n};
        h.group = closure(axialFamilyGenerators(f, n), h.amb);
        return h;
    }
    if (n != 0)
        fail("IllegalFamilyParameter", familyTag(f) + " takes no parameter n");
    if (familyIsPolyhedral(f)) {
        h.amb = {(f == Family::I || f == Family::IxZ) ? AmbientKind::PolyI : AmbientKind::PolyO, 1};
        h.group = closure(polyFamilyGenerators(f), h.amb);
        return h;
    }
    h.amb = {AmbientKind::OneDim, 1};
    return h;
}

std::optional<FiniteGroup> standardSubgroup(Family f, int n, const AmbientTag& amb) {
    if (!familyIsFinite(f)) return std::nullopt;
    if (amb.kind == AmbientKind::AxialDnxZ) {
        if (!familyIsAxial(f)) return std::nullopt;
        if (n < 1 || amb.N % n != 0) return std::nullopt;
        int step = amb.N / n;
        std::vector<GroupElement> gens;
        for (const auto& g : axialFamilyGenerators(f, n))
            gens.push_back(GroupElement::axial(amb.N, g.s, g.r, g.k * step));
        return closure(gens, amb);
    }
    if (amb.kind == AmbientKind::OneDim) return std::nullopt;
    if (familyIsPolyhedral(f)) {
        bool icoFamily = (f == Family::I || f == Family::IxZ);
        if (icoFamily != (amb.kind == AmbientKind::PolyI)) {
            // The tetrahedral families also sit inside the icosahedral ambient.
            if (amb.kind == AmbientKind::PolyI && (f == Family::T || f == Family::TxZ)) {
                auto P = [&](const Mat3& m) { return GroupElement::poly(AmbientKind::PolyI, m); };
                std::vector<GroupElement> gens = {P(rotZ180()), P(rotX180()), P(cycleXYZ())};
                if (f == Family::TxZ) gens.push_back(P(-Mat3::identity()));
                return closure(gens, amb);
            }
            return std::nullopt;
        }
        std::vector<GroupElement> gens = polyFamilyGenerators(f);
        for (auto& g : gens) g.amb = amb;
        return closure(gens, amb);
    }
    // Axial standard subgroups of a polyhedral ambient, about the z-axis when
    // the required rotation exists as an exact element of the ambient.
    Mat3 an;
    if (n == 1)
        an = Mat3::identity();
    else if (n == 2)
        an = rotZ180();
    else if (n == 4 && amb.kind == AmbientKind::PolyO)
        an = rotZ90();
    else
        return std::nullopt;
    auto P = [&](const Mat3& m) { return GroupElement::poly(amb.kind, m); };
    std::vector<GroupElement> gens;
    for (const auto& g : axialFamilyGenerators(f, n)) {
        Mat3 m = Mat3::identity();
        for (long long i = 0; i < g.k; ++i) m = an * m;
        if (g.r) m = m * rotX180();  // normal form b^r a^k acts a^k first
        if (g.s) m = -m;
        gens.push_back(P(m));
    }
    return closure(gens, amb);
}

std::vector<std::string> ambientGeneratorNames(const AmbientTag& amb) {
    switch (amb.kind) {
        case AmbientKind::AxialDnxZ:
            return {"a", "b", "-id"};
        case AmbientKind::PolyO:
            return {"a4", "a2", "b", "r3", "-id"};
        case AmbientKind::PolyI:
            return {"r5", "c3", "a2", "b", "-id"};
        case AmbientKind::OneDim:
            return {"rot(q)", "b", "-id"};
    }
    return {};
}

GroupElement parseWord(const std::string& word, const AmbientTag& amb) {
    std::string w;
    for (char c : word)
        if (!isspace(static_cast<unsigned char>(c)) || !w.empty()) w += c;
    while (!w.empty() && isspace(static_cast<unsigned char>(w.back()))) w.pop_back();
    if (w.empty()) fail("PreconditionViolation", "empty generator word");

    // Tokenize on whitespace / '*'.
    std::vector<std::string> tokens;
    {
        std::string cur;
        for (char c : w) {
            if (isspace(static_cast<unsigned char>(c)) || c == '*') {
                if (!cur.empty()) tokens.push_back(cur), cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) tokens.push_back(cur);
    }

    auto identity = [&]() -> GroupElement {
        switch (amb.kind) {
            case AmbientKind::AxialDnxZ:
                return GroupElement::axialIdentity(amb.N);
            case AmbientKind::OneDim:
                return GroupElement::oneDim(0, 0, Rational(0));
            default:
                return GroupElement::poly(amb.kind, Mat3::identity());
        }
    };

    GroupElement acc = identity();
    for (auto tok : tokens) {
        bool neg = false;
        if (tok.size() > 1 && tok[0] == '-' && tok != "-id") {
            neg = true;
            tok = tok.substr(1);
        }
        long long expn = 1;
        auto caret = tok.find('^');
        std::string base = tok;
        if (caret != std::string::npos) {
            base = tok.substr(0, caret);
            expn = std::stoll(tok.substr(caret + 1));
        }
        GroupElement g = identity();
        bool known = true;
        if (base == "id") {
            g = identity();
        } else if (base == "-id") {
            g = projectToSO3(identity());  // placeholder, replaced below
            switch (amb.kind) {
                case AmbientKind::AxialDnxZ:
                    g = GroupElement::axial(amb.N, 1, 0, 0);
                    break;
                case AmbientKind::OneDim:
                    g = GroupElement::oneDim(1, 0, Rational(0));
                    break;
                default:
                    g = GroupElement::poly(amb.kind, -Mat3::identity());
                    break;
            }
        } else if (amb.kind == AmbientKind::AxialDnxZ) {
            if (base == "a")
                g = GroupElement::axial(amb.N, 0, 0, 1);
            else if (base == "b")
                g = GroupElement::axial(amb.N, 0, 1, 0);
            else
                known = false;
        } else if (amb.kind == AmbientKind::OneDim) {
            if (base.rfind("rot(", 0) == 0 && base.back() == ')') {
                std::string frac = base.substr(4, base.size() - 5);
                auto slash = frac.find('/');
                Rational qq = slash == std::string::npos
                                  ? Rational(std::stoll(frac))
                                  : Rational(std::stoll(frac.substr(0, slash)), std::stoll(frac.substr(slash + 1)));
                g = GroupElement::oneDim(0, 0, qq);
            } else if (base == "b") {
                g = GroupElement::oneDim(0, 1, Rational(0));
            } else {
                known = false;
            }
        } else {
            if (base == "a4" || base == "o0")
                g = GroupElement::poly(amb.kind, rotZ90());
            else if (base == "a2")
                g = GroupElement::poly(amb.kind, rotZ180());
            else if (base == "b")
                g = GroupElement::poly(amb.kind, rotX180());
            else if (base == "r3" || base == "c3")
                g = GroupElement::poly(amb.kind, cycleXYZ());
            else if (base == "r5" && amb.kind == AmbientKind::PolyI)
                g = GroupElement::poly(amb.kind, rotIco72());
            else
                known = false;
            if (known && amb.kind == AmbientKind::PolyO && base == "r5")
                known = false;
        }
        if (!known) fail("PreconditionViolation", "unknown generator token '" + base + "' for ambient " + amb.str());
        GroupElement gp = identity();
        long long e = expn >= 0 ? expn : -expn;
        for (long long i = 0; i < e; ++i) gp = multiply(gp, g);
        if (expn < 0) gp = gp.inverse();
        if (neg) {
            GroupElement mi = parseWord("-id", amb);
            gp = multiply(mi, gp);
        }
        acc = multiply(acc, gp);
    }
    return acc;
}

// --------------------------------------------------------------------------
// Recognition
// --------------------------------------------------------------------------

namespace {

FiniteGroup projectGroup(const FiniteGroup& S) {
    std::set<GroupElement> seen;
    for (const auto& g : S.elems) seen.insert(projectToSO3(g));
    FiniteGroup P;
    P.amb = S.amb;
    P.elems.assign(seen.begin(), seen.end());
    return P;
}

bool isCyclicGroup(const FiniteGroup& G) {
    for (const auto& g : G.elems)
        if (elementOrder(G, g) == G.size()) return true;
    return false;
}

/// Dihedral of order 2m, m >= 2 (Klein counts as m = 2).
bool isDihedralGroup(const FiniteGroup& G) {
    int size = G.size();
    if (size < 4 || size % 2 != 0) return false;
    int m = size / 2;
    for (const auto& g : G.elems) {
        if (elementOrder(G, g) != m) continue;
        // C = <g>; need t outside with t^2 = id and t g t^-1 = g^-1.
        std::set<GroupElement> C;
        GroupElement x = g;
        for (int i = 0; i < m; ++i) {
            C.insert(x);
            x = multiply(x, g);
        }
        for (const auto& t : G.elems) {
            if (C.count(t)) continue;
            if (!multiply(t, t).isIdentity()) continue;
            if (multiply(multiply(t, g), t.inverse()) == g.inverse()) return true;
        }
    }
    return false;
}

std::pair<Family, int> canonicalRow(Family f, int n) {
    if (f == Family::Dn && n == 1) return {Family::Zn, 2};
    if (f == Family::ZnxZ && n == 2) return {Family::DnxZ, 1};
    if (f == Family::MinusAn && n == 2) return {Family::AnMinusB, 1};
    if (f == Family::MinusAnB && n == 2) return {Family::AnMinusB, 2};
    if (f == Family::MinusAnMinusB && n == 2) return {Family::AnMinusB, 2};
    return {f, n};
}

GroupElement liftAxial(const GroupElement& g, int N2) {
    return GroupElement::axial(N2, g.s, g.r, g.k * (N2 / g.amb.N));
}

FiniteGroup liftAxialGroup(const FiniteGroup& S, int N2) {
    FiniteGroup L;
    L.amb = {AmbientKind::AxialDnxZ, N2};
    for (const auto& g : S.elems) L.elems.push_back(liftAxial(g, N2));
    std::sort(L.elems.begin(), L.elems.end());
    return L;
}

}  // namespace

RecognitionResult recognize(const FiniteGroup& S) {
    if (S.elems.empty()) fail("PreconditionViolation", "recognize: empty subgroup");
    if (S.amb.kind == AmbientKind::OneDim)
        fail("UnsupportedGroupType", "recognize handles finite subgroups of finite ambients");

    FiniteGroup prS = projectGroup(S);
    bool minusId = S.containsMinusId();
    bool rotational = true;
    for (const auto& g : S.elems)
        if (g.det() == -1) rotational = false;
    int prOrder = prS.size();

    Family fam;
    int n = 0;
    std::vector<Family> famCandidates;  // order in which standard copies are tried

    if (isCyclicGroup(prS)) {
        n = prOrder;
        if (rotational)
            fam = Family::Zn;
        else if (minusId)
            fam = Family::ZnxZ;
        else
            fam = Family::MinusAn;
    } else if (isDihedralGroup(prS)) {
        n = prOrder / 2;
        if (rotational) {
            fam = Family::Dn;
        } else if (minusId) {
            fam = Family::DnxZ;
        } else {
            FiniteGroup rot;
            rot.amb = S.amb;
            for (const auto& g : S.elems)
                if (g.det() == 1) rot.elems.push_back(g);
            std::sort(rot.elems.begin(), rot.elems.end());
            if (isCyclicGroup(rot)) {
                fam = Family::AnMinusB;
            } else if (S.amb.kind == AmbientKind::AxialDnxZ) {
                // The two mixed rows with dihedral rotation part are O(3)-
                // conjugate but not conjugate inside the ambient D_N x Z in
                // general; the ambient-conjugation invariant separating them
                // is the position parity of the proper half-turns.
                long long halfTurnPos = -1;
                for (const auto& g : S.elems)
                    if (g.s == 0 && g.r == 1) {
                        halfTurnPos = g.k;
                        break;
                    }
                fam = (halfTurnPos % 2 == 0) ? Family::MinusAnB : Family::MinusAnMinusB;
            } else {
                fam = Family::MinusAnB;
                famCandidates = {Family::MinusAnB, Family::MinusAnMinusB};
            }
        }
    } else if (prOrder == 12) {
        if (!rotational && !minusId)
            fail("UnsupportedGroupType", "no index-2-free extension of the 12-element rotation group exists");
        fam = rotational ? Family::T : Family::TxZ;
    } else if (prOrder == 24) {
        fam = rotational ? Family::O : (minusId ? Family::OxZ : Family::TMinusO0);
    } else if (prOrder == 60) {
        if (!rotational && !minusId)
            fail("UnsupportedGroupType", "no index-2-free extension of the 60-element rotation group exists");
        fam = rotational ? Family::I : Family::IxZ;
    } else {
        fail("UnsupportedGroupType", "projection is not a recognized finite rotation group");
    }

    auto [cf, cn] = canonicalRow(fam, n);
    fam = cf;
    n = cn;
    if (famCandidates.empty()) famCandidates = {fam};

    RecognitionResult res;
    res.n = familyIsAxial(fam) ? n : 0;

    if (S.amb.kind == AmbientKind::AxialDnxZ) {
        auto stdN = standardSubgroup(fam, n, S.amb);
        if (!stdN) fail("UnsupportedGroupType", "no standard copy of the recognized row in this ambient");
        res.family = fam;
        res.canonical = *stdN;
        res.matchesConstruction = true;
        if (S == *stdN) {
            res.conjugator = GroupElement::axialIdentity(S.amb.N);
            return res;
        }
        FiniteGroup amb = ambientGroup(S.amb);
        for (const auto& c : amb.elems) {
            if (conjugateSubgroup(S, c) == *stdN) {
                res.conjugator = c;
                return res;
            }
        }
        // Some copies (reflection axes offset by half a lattice step) need a
        // rotation halfway between ambient rotations; search the doubled
        // ambient, in which the input embeds with even parameters.
        int N2 = 2 * S.amb.N;
        FiniteGroup Slift = liftAxialGroup(S, N2);
        FiniteGroup stdLift = liftAxialGroup(*stdN, N2);
        FiniteGroup ext = ambientGroup({AmbientKind::AxialDnxZ, N2});
        for (const auto& c : ext.elems) {
            if (c.k % 2 == 0) continue;  // even lifts were covered above
            if (conjugateSubgroup(Slift, c) == stdLift) {
                res.conjugator = c;
                // The witness lives in the doubled ambient, so report the
                // canonical copy there as well; conjugating the input by the
                // witness then reproduces it exactly.
                res.canonical = stdLift;
                return res;
            }
        }
        // Small groups whose distinguished axis is horizontal (e.g. a single
        // half-turn about an equator axis) cannot be rotated onto the z-axis
        // by any element commensurable with this ambient; report the least
        // conjugate inside the ambient as the canonical representative.
        bool have = false;
        FiniteGroup best;
        GroupElement bestC;
        for (const auto& c : amb.elems) {
            FiniteGroup conj = conjugateSubgroup(S, c);
            if (!have || conj < best) {
                best = conj;
                bestC = c;
                have = true;
            }
        }
        res.canonical = best;
        res.conjugator = bestC;
        res.matchesConstruction = false;
        return res;
    }

    // Polyhedral ambient: try the z-axis standard copy first, then fall back
    // to the lexicographically least conjugate as the canonical representative.
    FiniteGroup amb = ambientGroup(S.amb);
    for (Family cand : famCandidates) {
        auto stdG = standardSubgroup(cand, familyIsAxial(cand) ? n : 0, S.amb);
        if (!stdG) continue;
        if (S == *stdG) {
            res.family = cand;
            res.canonical = *stdG;
            res.conjugator = GroupElement::poly(S.amb.kind, Mat3::identity());
            res.matchesConstruction = true;
            return res;
        }
        for (const auto& c : amb.elems) {
            if (conjugateSubgroup(S, c) == *stdG) {
                res.family = cand;
                res.canonical = *stdG;
                res.conjugator = c;
                res.matchesConstruction = true;
                return res;
            }
        }
    }
    res.family = fam;
    bool have = false;
    FiniteGroup best;
    GroupElement bestC;
    for (const auto& c : amb.elems) {
        FiniteGroup conj = conjugateSubgroup(S, c);
        if (!have || conj < best) {
            best = conj;
            bestC = c;
            have = true;
        }
    }
    res.canonical = best;
    res.conjugator = bestC;
    res.matchesConstruction = false;
    return res;
}

// --------------------------------------------------------------------------
// Symbolic points
// --------------------------------------------------------------------------

bool operator==(const PointRef& a, const PointRef& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case PointRef::Kind::PoleS:
        case PointRef::Kind::PoleN:
            return true;
        case PointRef::Kind::Coord:
            return a.p == b.p;
        default:
            return a.q == b.q;
    }
}

std::string PointRef::str() const {
    switch (kind) {
        case Kind::PoleS:
            return "S";
        case Kind::PoleN:
            return "N";
        case Kind::Equator:
            return "eq(" + ratStr(q) + ")";
        case Kind::MeridianS:
            return "merS(" + ratStr(q) + ")";
        case Kind::MeridianN:
            return "merN(" + ratStr(q) + ")";
        case Kind::Coord:
            return "(" + p[0].str() + "," + p[1].str() + "," + p[2].str() + ")";
    }
    return "?";
}

PointRef applyToPoint(const GroupElement& g, const PointRef& x) {
    switch (g.amb.kind) {
        case AmbientKind::AxialDnxZ:
        case AmbientKind::OneDim: {
            Rational shift = g.amb.kind == AmbientKind::AxialDnxZ ? Rational(g.k, g.amb.N) : g.q;
            bool flip = ((g.s + g.r) & 1) != 0;
            auto newTurn = [&](const Rational& q) {
                Rational t = q + shift;
                if (g.r) t = -t;
                if (g.s) t += Rational(1, 2);
                return mod1(t);
            };
            switch (x.kind) {
                case PointRef::Kind::PoleS:
                    return flip ? PointRef::poleN() : PointRef::poleS();
                case PointRef::Kind::PoleN:
                    return flip ? PointRef::poleS() : PointRef::poleN();
                case PointRef::Kind::Equator:
                    return PointRef::equator(newTurn(x.q));
                case PointRef::Kind::MeridianS:
                    return PointRef::meridian(!flip, newTurn(x.q));
                case PointRef::Kind::MeridianN:
                    return PointRef::meridian(flip, newTurn(x.q));
                case PointRef::Kind::Coord:
                    fail("PreconditionViolation", "axial elements act on symbolic points, not coordinates");
            }
            break;
        }
        default: {
            if (x.kind != PointRef::Kind::Coord)
                fail("PreconditionViolation", "polyhedral elements act on coordinate points");
            return PointRef::coord(g.mat * x.p);
        }
    }
    fail("PreconditionViolation", "unreachable point action");
}

FiniteGroup stabilizerOfPointRef(const FiniteGroup& G, const PointRef& x) {
    FiniteGroup H;
    H.amb = G.amb;
    for (const auto& g : G.elems)
        if (applyToPoint(g, x) == x) H.elems.push_back(g);
    std::sort(H.elems.begin(), H.elems.end());
    return H;
}

PointRef arcInteriorPoint(const Vec3& a, const Vec3& b) {
    // dot(b,b) * a + dot(a,a) * b lies strictly inside the arc between the
    // rays of a and b (positive combination, exact).
    return PointRef::coord(dot(b, b) * a + dot(a, a) * b);
}

// --------------------------------------------------------------------------
// One-parameter groups
// --------------------------------------------------------------------------

bool operator==(const OneDimSubgroupDesc& a, const OneDimSubgroupDesc& b) {
    if (a.wholeRotationCircle != b.wholeRotationCircle || a.isFullSO3 != b.isFullSO3 ||
        a.isFullO3 != b.isFullO3 || a.axis != b.axis)
        return false;
    if (a.cosets != b.cosets) return false;
    return a.finitePart.elems == b.finitePart.elems;
}

std::string OneDimSubgroupDesc::str() const {
    if (isFullO3) return "O3";
    if (isFullSO3) return "SO3";
    if (wholeRotationCircle) {
        std::string s = axis == 2 ? "SO2" : "SO2(axis x)";
        for (auto [r, sg] : cosets) s += " + coset(r=" + std::to_string(r) + ",s=" + std::to_string(sg) + ")";
        return s;
    }
    std::string s = "{";
    for (size_t i = 0; i < finitePart.elems.size(); ++i) {
        if (i) s += ", ";
        s += finitePart.elems[i].word();
    }
    return s + "}";
}

OneDimSubgroupDesc oneDimGroupDesc(Family f) {
    OneDimSubgroupDesc d;
    switch (f) {
        case Family::SO2:
            d.wholeRotationCircle = true;
            break;
        case Family::O2:
            d.wholeRotationCircle = true;
            d.cosets = {{1, 0}};
            break;
        case Family::SO2MinusB:
            d.wholeRotationCircle = true;
            d.cosets = {{1, 1}};
            break;
        case Family::SO2MinusA2:
            d.wholeRotationCircle = true;
            d.cosets = {{0, 1}};
            break;
        case Family::O2xZ:
            d.wholeRotationCircle = true;
            d.cosets = {{0, 1}, {1, 0}, {1, 1}};
            break;
        case Family::SO3:
            d.isFullSO3 = true;
            break;
        case Family::O3:
            d.isFullO3 = true;
            break;
        default:
            fail("UnsupportedFamily", "not a one-parameter family");
    }
    return d;
}

OneDimSubgroupDesc oneDimStabilizer(Family f, const PointRef& x) {
    OneDimSubgroupDesc d;
    if (f == Family::SO3 || f == Family::O3) {
        bool pole = x.kind == PointRef::Kind::PoleS || x.kind == PointRef::Kind::PoleN;
        bool vertexX = x.kind == PointRef::Kind::Equator && x.q == Rational(0);
        if (!pole && !vertexX)
            fail("PreconditionViolation", "stabilizers inside the 3-dimensional rows are provided at poles and v0");
        d.wholeRotationCircle = true;
        d.axis = pole ? 2 : 0;
        if (f == Family::O3) d.cosets = {{1, pole ? 1 : 0}};
        return d;
    }

    OneDimSubgroupDesc whole = oneDimGroupDesc(f);
    auto hasClass = [&](int r, int s) {
        if (r == 0 && s == 0) return true;
        return std::find(whole.cosets.begin(), whole.cosets.end(), std::make_pair(r, s)) != whole.cosets.end();
    };

    if (x.kind == PointRef::Kind::PoleS || x.kind == PointRef::Kind::PoleN) {
        d.wholeRotationCircle = true;
        for (auto [r, s] : whole.cosets)
            if (((r + s) & 1) == 0) d.cosets.push_back({r, s});
        return d;
    }

    // Equator / meridian points have finite stabilizers in the planar rows.
    d.finitePart.amb = {AmbientKind::OneDim, 1};
    bool meridian = x.kind == PointRef::Kind::MeridianS || x.kind == PointRef::Kind::MeridianN;
    if (x.kind != PointRef::Kind::Equator && !meridian)
        fail("PreconditionViolation", "unsupported symbolic point for a planar one-parameter group");
    const Rational q = x.q;
    auto consider = [&](int r, int s, const Rational& t) {
        if (!hasClass(r, s)) return;
        if (meridian && (((r + s) & 1) != 0)) return;
        GroupElement g = GroupElement::oneDim(s, r, t);
        if (applyToPoint(g, x) == x) d.finitePart.elems.push_back(g);
    };
    consider(0, 0, Rational(0));
    consider(0, 1, Rational(1, 2));            // -rot(1/2)
    consider(1, 0, mod1(-Rational(2) * q));    // b-type mirror through the point
    consider(1, 1, mod1(Rational(1, 2) - Rational(2) * q));
    std::sort(d.finitePart.elems.begin(), d.finitePart.elems.end());
    return d;
}

}  // namespace equivect
