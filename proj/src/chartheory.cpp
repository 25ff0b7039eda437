/// Exact character theory: constructive irreducible tables per abstract
/// isomorphism type (cyclic, dihedral, A4, S4, A5, and split products with
/// the central order-two factor), value-transport restriction, conjugation,
/// induction, integral decompositions, and extension sets along normal
/// inclusions with cyclic quotient.
#include "equivect/chartheory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace equivect {

// ---------------------------------------------------------------------------
// Conjugacy classes
// ---------------------------------------------------------------------------

int ConjugacyClasses::classOf(const GroupElement& g) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (std::binary_search(classes[i].begin(), classes[i].end(), g))
            return static_cast<int>(i);
    fail("PreconditionViolation", "element " + g.word() + " lies outside the group");
}

ConjugacyClasses conjugacyClasses(const FiniteGroup& G) {
    if (G.elems.empty()) fail("PreconditionViolation", "empty element list is not a group");
    ConjugacyClasses out;
    out.group = G;
    std::vector<char> seen(G.elems.size(), 0);
    auto indexOf = [&G](const GroupElement& g) {
        auto it = std::lower_bound(G.elems.begin(), G.elems.end(), g);
        if (it == G.elems.end() || !(*it == g))
            fail("PreconditionViolation", "element list is not closed under conjugation");
        return static_cast<std::size_t>(it - G.elems.begin());
    };
    for (std::size_t i = 0; i < G.elems.size(); ++i) {
        if (seen[i]) continue;
        std::vector<GroupElement> cls;
        for (const auto& x : G.elems) {
            std::size_t j = indexOf(multiply(multiply(x.inverse(), G.elems[i]), x));
            if (!seen[j]) {
                seen[j] = 1;
                cls.push_back(G.elems[j]);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.classes.push_back(std::move(cls));
    }
    // The identity class leads; scanning the sorted element list already
    // orders the remaining classes by their least element.
    for (std::size_t i = 0; i < out.classes.size(); ++i)
        if (out.classes[i].size() == 1 && out.classes[i].front().isIdentity()) {
            std::rotate(out.classes.begin(), out.classes.begin() + i,
                        out.classes.begin() + i + 1);
            break;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Cached tables
// ---------------------------------------------------------------------------

namespace {

const ConjugacyClasses& classesCached(const FiniteGroup& G) {
    static std::map<FiniteGroup, ConjugacyClasses> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(G);
        if (it != cache.end()) return it->second;
    }
    ConjugacyClasses fresh = conjugacyClasses(G);  // computed outside the lock
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(G, std::move(fresh)).first->second;
}

GroupElement identityOf(const FiniteGroup& G) {
    for (const auto& g : G.elems)
        if (g.isIdentity()) return g;
    fail("PreconditionViolation", "group without identity element");
}

Cyclotomic cyc(long long v) { return Cyclotomic(Rational(v)); }

/// Abstract isomorphism type of a finite subgroup plus the generator data the
/// table construction needs.  Detection order matters and is part of the
/// label contract: cyclic groups are always labeled C{m} (even when they
/// contain -id or admit a dihedral presentation), non-cyclic groups with -id
/// are split products, then dihedral, then the polyhedral rotation types.
struct Detection {
    enum class Kind { Cyclic, Dihedral, Alt4, Sym4, Alt5, Product };
    Kind kind = Kind::Cyclic;
    int m = 0;           ///< cyclic order, or half order for dihedral
    GroupElement gen;    ///< cyclic generator / dihedral rotation c
    GroupElement refl;   ///< dihedral reflection b'
    FiniteGroup inner;   ///< Product: the index-two det kernel
    GroupElement minus;  ///< Product: the central -id
};

Detection detect(const FiniteGroup& G) {
    const int N = G.size();
    Detection d;
    d.gen = d.refl = d.minus = identityOf(G);
    d.m = N;
    // Cyclic: generated by its least element of maximal order.
    for (const auto& g : G.elems)
        if (elementOrder(G, g) == N) {
            d.gen = g;
            return d;
        }
    // Split central order-two factor: G = H x <-id> with H the det kernel.
    for (const auto& g : G.elems)
        if (g.isMinusId()) {
            d.kind = Detection::Kind::Product;
            d.minus = g;
            d.inner.amb = G.amb;
            for (const auto& h : G.elems)
                if (h.det() == 1) d.inner.elems.push_back(h);
            return d;
        }
    // Dihedral: cyclic index-two subgroup plus an inverting involution.
    if (N % 2 == 0) {
        const int m = N / 2;
        GroupElement c = identityOf(G);
        bool haveC = false;
        if (m == 2) {
            // Non-cyclic of order four is the Klein group; any non-identity
            // element serves as the rotation.
            for (const auto& g : G.elems)
                if (!g.isIdentity()) {
                    c = g;
                    haveC = true;
                    break;
                }
        } else {
            for (const auto& g : G.elems)
                if (elementOrder(G, g) == m) {
                    c = g;
                    haveC = true;
                    break;
                }
        }
        if (haveC) {
            std::vector<GroupElement> powers{identityOf(G)};
            for (int j = 1; j < m; ++j) powers.push_back(multiply(powers.back(), c));
            std::sort(powers.begin(), powers.end());
            for (const auto& g : G.elems) {
                if (std::binary_search(powers.begin(), powers.end(), g)) continue;
                // In a dihedral group every element outside <c> inverts c and
                // squares to the identity, so testing the least one suffices.
                if (multiply(g, g).isIdentity() && multiply(multiply(g, c), g) == c.inverse()) {
                    d.kind = Detection::Kind::Dihedral;
                    d.m = m;
                    d.gen = c;
                    d.refl = g;
                    return d;
                }
                break;
            }
        }
    }
    // Polyhedral rotation types by element-order histogram.
    std::map<int, int> hist;
    for (const auto& g : G.elems) ++hist[elementOrder(G, g)];
    if (N == 12 && hist == std::map<int, int>{{1, 1}, {2, 3}, {3, 8}}) {
        d.kind = Detection::Kind::Alt4;
        return d;
    }
    if (N == 24 && hist == std::map<int, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}}) {
        d.kind = Detection::Kind::Sym4;
        return d;
    }
    if (N == 60 && hist == std::map<int, int>{{1, 1}, {2, 15}, {3, 20}, {5, 24}}) {
        d.kind = Detection::Kind::Alt5;
        return d;
    }
    fail("UnsupportedGroupType",
         "no supported abstract type of order " + std::to_string(N));
}

const std::vector<Character>& irreduciblesCached(const FiniteGroup& G);

std::vector<Character> cyclicTable(const FiniteGroup& G, const ConjugacyClasses& cc,
                                   const GroupElement& gen) {
    const int m = G.size();
    std::map<GroupElement, int> logOf;
    GroupElement p = identityOf(G);
    for (int j = 0; j < m; ++j) {
        logOf[p] = j;
        p = multiply(p, gen);
    }
    std::vector<Character> table;
    for (int k = 0; k < m; ++k) {
        Character chi;
        chi.group = G;
        chi.label = "C" + std::to_string(m) + ":w" + std::to_string(k);
        for (int i = 0; i < cc.classCount(); ++i)
            chi.values.push_back(
                Cyclotomic::root(m, static_cast<long long>(k) * logOf.at(cc.rep(i))));
        table.push_back(std::move(chi));
    }
    return table;
}

std::vector<Character> dihedralTable(const FiniteGroup& G, const ConjugacyClasses& cc,
                                     int m, const GroupElement& c,
                                     const GroupElement& bPrime) {
    std::map<GroupElement, std::pair<bool, int>> pos;  // (is reflection, exponent)
    GroupElement p = identityOf(G);
    for (int j = 0; j < m; ++j) {
        pos[p] = {false, j};
        pos[multiply(p, bPrime)] = {true, j};
        p = multiply(p, c);
    }
    std::vector<std::pair<bool, int>> at;
    for (int i = 0; i < cc.classCount(); ++i) at.push_back(pos.at(cc.rep(i)));
    std::vector<Character> table;
    auto add = [&](const std::string& suffix, auto&& value) {
        Character chi;
        chi.group = G;
        chi.label = "D" + std::to_string(m) + ":" + suffix;
        for (const auto& [refl, j] : at) chi.values.push_back(value(refl, j));
        table.push_back(std::move(chi));
    };
    add("triv", [](bool, int) { return cyc(1); });
    add("sgn", [](bool refl, int) { return cyc(refl ? -1 : 1); });
    if (m % 2 == 0) {
        add("sgnp", [](bool, int j) { return cyc(j % 2 ? -1 : 1); });
        add("sgnpp", [](bool refl, int j) { return cyc((j + (refl ? 1 : 0)) % 2 ? -1 : 1); });
    }
    const int kMax = (m % 2) ? (m - 1) / 2 : m / 2 - 1;
    for (int k = 1; k <= kMax; ++k)
        add("V" + std::to_string(k), [m, k](bool refl, int j) {
            return refl ? Cyclotomic() : Cyclotomic::cos2(m, static_cast<long long>(k) * j);
        });
    return table;
}

std::vector<Character> productTable(const FiniteGroup& G, const ConjugacyClasses& cc,
                                    const FiniteGroup& inner, const GroupElement& minus) {
    std::vector<Character> table;
    for (const auto& base : irreduciblesCached(inner))
        for (int sign : {+1, -1}) {
            Character chi;
            chi.group = G;
            chi.label = base.label + (sign > 0 ? ":+" : ":-");
            for (int i = 0; i < cc.classCount(); ++i) {
                const GroupElement& g = cc.rep(i);
                const bool outside = g.det() != 1;
                Cyclotomic v = base.valueAt(outside ? multiply(minus, g) : g);
                if (sign < 0 && outside) v = -v;
                chi.values.push_back(v);
            }
            table.push_back(std::move(chi));
        }
    return table;
}

std::vector<Character> alt4Table(const FiniteGroup& G, const ConjugacyClasses& cc) {
    if (cc.classCount() != 4) fail("UnsupportedGroupType", "unexpected class structure");
    int iInv = -1;
    for (int i = 1; i < 4; ++i)
        if (elementOrder(G, cc.rep(i)) == 2) iInv = i;
    GroupElement t0 = identityOf(G);
    bool have = false;
    for (const auto& g : G.elems)
        if (!have && elementOrder(G, g) == 3) {
            t0 = g;
            have = true;
        }
    if (iInv < 0 || !have) fail("UnsupportedGroupType", "unexpected class structure");
    const int iA = cc.classOf(t0), iB = cc.classOf(multiply(t0, t0));
    if (iA == iB) fail("UnsupportedGroupType", "unexpected fusion of order-three classes");
    auto row = [&](const std::string& suffix, Cyclotomic vId, Cyclotomic vInv, Cyclotomic vA,
                   Cyclotomic vB) {
        Character chi;
        chi.group = G;
        chi.label = "A4:" + suffix;
        chi.values.assign(4, Cyclotomic());
        chi.values[0] = std::move(vId);
        chi.values[iInv] = std::move(vInv);
        chi.values[iA] = std::move(vA);
        chi.values[iB] = std::move(vB);
        return chi;
    };
    const Cyclotomic w = Cyclotomic::root(3, 1), w2 = Cyclotomic::root(3, 2);
    return {row("1", cyc(1), cyc(1), cyc(1), cyc(1)),
            row("1a", cyc(1), cyc(1), w, w2),
            row("1b", cyc(1), cyc(1), w2, w),
            row("3", cyc(3), cyc(-1), Cyclotomic(), Cyclotomic())};
}

std::vector<Character> sym4Table(const FiniteGroup& G, const ConjugacyClasses& cc) {
    if (cc.classCount() != 5) fail("UnsupportedGroupType", "unexpected class structure");
    auto find = [&](int ord, std::size_t size) {
        for (int i = 0; i < 5; ++i)
            if (elementOrder(G, cc.rep(i)) == ord && cc.classes[i].size() == size) return i;
        fail("UnsupportedGroupType", "unexpected class structure");
    };
    const int i2a = find(2, 3), i2b = find(2, 6), i3 = find(3, 8), i4 = find(4, 6);
    auto row = [&](const std::string& suffix, long long vId, long long v2a, long long v2b,
                   long long v3, long long v4) {
        Character chi;
        chi.group = G;
        chi.label = "S4:" + suffix;
        chi.values.assign(5, Cyclotomic());
        chi.values[0] = cyc(vId);
        chi.values[i2a] = cyc(v2a);
        chi.values[i2b] = cyc(v2b);
        chi.values[i3] = cyc(v3);
        chi.values[i4] = cyc(v4);
        return chi;
    };
    return {row("1", 1, 1, 1, 1, 1), row("sgn", 1, 1, -1, 1, -1), row("2", 2, 2, 0, -1, 0),
            row("3", 3, -1, 1, 0, -1), row("3p", 3, -1, -1, 0, 1)};
}

std::vector<Character> alt5Table(const FiniteGroup& G, const ConjugacyClasses& cc) {
    if (cc.classCount() != 5) fail("UnsupportedGroupType", "unexpected class structure");
    auto find = [&](int ord, std::size_t size) {
        for (int i = 0; i < 5; ++i)
            if (elementOrder(G, cc.rep(i)) == ord && cc.classes[i].size() == size) return i;
        fail("UnsupportedGroupType", "unexpected class structure");
    };
    const int i2 = find(2, 15), i3 = find(3, 20);
    GroupElement g0 = identityOf(G);
    bool have = false;
    for (const auto& g : G.elems)
        if (!have && elementOrder(G, g) == 5) {
            g0 = g;
            have = true;
        }
    if (!have) fail("UnsupportedGroupType", "unexpected class structure");
    const int i5a = cc.classOf(g0), i5b = cc.classOf(multiply(g0, g0));
    if (i5a == i5b) fail("UnsupportedGroupType", "unexpected fusion of order-five classes");
    auto row = [&](const std::string& suffix, Cyclotomic vId, Cyclotomic v2, Cyclotomic v3,
                   Cyclotomic v5a, Cyclotomic v5b) {
        Character chi;
        chi.group = G;
        chi.label = "A5:" + suffix;
        chi.values.assign(5, Cyclotomic());
        chi.values[0] = std::move(vId);
        chi.values[i2] = std::move(v2);
        chi.values[i3] = std::move(v3);
        chi.values[i5a] = std::move(v5a);
        chi.values[i5b] = std::move(v5b);
        return chi;
    };
    // Traces of the two three-dimensional rotation models at the five-cycle
    // classes: 1 + 2cos(2pi/5) and 1 + 2cos(4pi/5).
    const Cyclotomic phiA = cyc(1) + Cyclotomic::cos2(5, 1);
    const Cyclotomic phiB = cyc(1) + Cyclotomic::cos2(5, 2);
    return {row("1", cyc(1), cyc(1), cyc(1), cyc(1), cyc(1)),
            row("3a", cyc(3), cyc(-1), Cyclotomic(), phiA, phiB),
            row("3b", cyc(3), cyc(-1), Cyclotomic(), phiB, phiA),
            row("4", cyc(4), Cyclotomic(), cyc(1), cyc(-1), cyc(-1)),
            row("5", cyc(5), cyc(1), cyc(-1), Cyclotomic(), Cyclotomic())};
}

std::vector<Character> computeIrreducibles(const FiniteGroup& G) {
    const ConjugacyClasses& cc = classesCached(G);
    const Detection d = detect(G);
    std::vector<Character> table;
    switch (d.kind) {
        case Detection::Kind::Cyclic: table = cyclicTable(G, cc, d.gen); break;
        case Detection::Kind::Dihedral: table = dihedralTable(G, cc, d.m, d.gen, d.refl); break;
        case Detection::Kind::Product: table = productTable(G, cc, d.inner, d.minus); break;
        case Detection::Kind::Alt4: table = alt4Table(G, cc); break;
        case Detection::Kind::Sym4: table = sym4Table(G, cc); break;
        case Detection::Kind::Alt5: table = alt5Table(G, cc); break;
    }
    Rational dimSq(0);
    for (const auto& chi : table) {
        const Rational dim = chi.values.at(0).asRational();
        dimSq += dim * dim;
    }
    if (dimSq != Rational(G.size()))
        fail("UnsupportedGroupType", "irreducible table fails the dimension identity");
    return table;
}

const std::vector<Character>& irreduciblesCached(const FiniteGroup& G) {
    static std::map<FiniteGroup, std::vector<Character>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(G);
        if (it != cache.end()) return it->second;
    }
    // Computed outside the lock: the product table recurses into the table of
    // the det kernel.
    std::vector<Character> fresh = computeIrreducibles(G);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(G, std::move(fresh)).first->second;
}

/// Label of `values` over H when they form an irreducible, else "virtual".
std::string matchIrreducibleLabel(const FiniteGroup& H, const std::vector<Cyclotomic>& values) {
    for (const auto& irr : irreduciblesCached(H))
        if (irr.values == values) return irr.label;
    return "virtual";
}

}  // namespace

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

Cyclotomic Character::valueAt(const GroupElement& g) const {
    return values.at(classesCached(group).classOf(g));
}

Cyclotomic innerProduct(const Character& chi, const Character& psi) {
    if (!(chi.group == psi.group))
        fail("PreconditionViolation", "inner product requires characters on one group");
    const ConjugacyClasses& cc = classesCached(chi.group);
    Cyclotomic sum;
    for (int i = 0; i < cc.classCount(); ++i)
        sum = sum + Rational(static_cast<long long>(cc.classes[i].size())) *
                        (chi.values.at(i) * psi.values.at(i).conj());
    return Rational(1, chi.group.size()) * sum;
}

std::string abstractGroupName(const FiniteGroup& G) {
    const Detection d = detect(G);
    switch (d.kind) {
        case Detection::Kind::Cyclic: return "C" + std::to_string(d.m);
        case Detection::Kind::Dihedral: return "D" + std::to_string(d.m);
        case Detection::Kind::Alt4: return "A4";
        case Detection::Kind::Sym4: return "S4";
        case Detection::Kind::Alt5: return "A5";
        case Detection::Kind::Product: return abstractGroupName(d.inner) + "xZ2";
    }
    fail("UnsupportedGroupType", "unreachable");
}

std::vector<Character> irreducibles(const FiniteGroup& G) { return irreduciblesCached(G); }

Character irreducibleByLabel(const FiniteGroup& G, const std::string& label) {
    std::string want = label;
    // Interchange aliases: order-two flip stabilizers are written D1 in some
    // incoming data; the canonical table calls every order-two group C2.
    if (want == "D1:triv") want = "C2:w0";
    if (want == "D1:sgn") want = "C2:w1";
    for (const auto& chi : irreduciblesCached(G))
        if (chi.label == want) return chi;
    fail("PreconditionViolation",
         "no irreducible of " + abstractGroupName(G) + " is labeled '" + label + "'");
}

Character restrictCharacter(const Character& chi, const FiniteGroup& H) {
    if (!(H.amb == chi.group.amb))
        fail("NotASubgroup", "restriction target lives in ambient " + H.amb.str() +
                                 ", the character in " + chi.group.amb.str());
    if (!H.isSubsetOf(chi.group))
        fail("NotASubgroup", "restriction target is not contained in the character's group");
    Character out;
    out.group = H;
    const ConjugacyClasses& ch = classesCached(H);
    for (int i = 0; i < ch.classCount(); ++i) out.values.push_back(chi.valueAt(ch.rep(i)));
    out.label = matchIrreducibleLabel(H, out.values);
    return out;
}

Character conjugateCharacter(const Character& chi, const GroupElement& g) {
    FiniteGroup K = chi.group;
    GroupElement c = g;
    if (!(K.amb == c.amb)) {
        if (K.amb.kind != AmbientKind::AxialDnxZ || c.amb.kind != AmbientKind::AxialDnxZ)
            fail("AmbientMismatch", "conjugator ambient " + c.amb.str() +
                                        " does not match the character's " + K.amb.str());
        // Lift both to the least common axial refinement.  The lift scales
        // rotation exponents by a positive constant, which preserves element
        // order and hence the class layout, so the value vector carries over.
        const int M = std::lcm(K.amb.N, c.amb.N);
        FiniteGroup L;
        L.amb = {AmbientKind::AxialDnxZ, M};
        for (const auto& e : K.elems)
            L.elems.push_back(GroupElement::axial(M, e.s, e.r, e.k * (M / e.amb.N)));
        std::sort(L.elems.begin(), L.elems.end());
        K = std::move(L);
        c = GroupElement::axial(M, c.s, c.r, c.k * (M / c.amb.N));
    }
    Character source;
    source.group = K;
    source.values = chi.values;
    FiniteGroup target = conjugateSubgroup(K, c.inverse());  // = g K g^-1
    Character out;
    out.group = target;
    const ConjugacyClasses& ct = classesCached(target);
    const GroupElement ci = c.inverse();
    for (int i = 0; i < ct.classCount(); ++i)
        out.values.push_back(source.valueAt(multiply(multiply(ci, ct.rep(i)), c)));
    out.label = matchIrreducibleLabel(target, out.values);
    return out;
}

Character induceCharacter(const Character& chi, const FiniteGroup& G) {
    const FiniteGroup& H = chi.group;
    if (!(H.amb == G.amb) || !H.isSubsetOf(G))
        fail("NotASubgroup", "induction requires the character's group inside the target");
    Character out;
    out.group = G;
    const ConjugacyClasses& cg = classesCached(G);
    for (int i = 0; i < cg.classCount(); ++i) {
        Cyclotomic sum;
        for (const auto& x : G.elems) {
            const GroupElement t = multiply(multiply(x.inverse(), cg.rep(i)), x);
            if (H.contains(t)) sum = sum + chi.valueAt(t);
        }
        out.values.push_back(Rational(1, H.size()) * sum);
    }
    out.label = matchIrreducibleLabel(G, out.values);
    return out;
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

int RepDecomposition::multiplicityOf(const std::string& label) const {
    for (const auto& p : parts)
        if (p.first == label) return p.second;
    return 0;
}

std::string RepDecomposition::str() const {
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " + ";
        if (parts[i].second != 1) out += std::to_string(parts[i].second) + "*";
        out += parts[i].first;
    }
    return out;
}

RepDecomposition decompose(const Character& chi) {
    RepDecomposition out;
    for (const auto& irr : irreduciblesCached(chi.group)) {
        const Cyclotomic ip = innerProduct(chi, irr);
        if (!ip.isRational())
            fail("PreconditionViolation", "multiplicity of " + irr.label + " is irrational");
        const Rational r = ip.asRational();
        if (r.denominator() != 1 || r < Rational(0))
            fail("PreconditionViolation", "multiplicity of " + irr.label + " is " + ratStr(r) +
                                              ", not a nonnegative integer");
        if (r.numerator() > 0)
            out.parts.emplace_back(irr.label, static_cast<int>(r.numerator()));
    }
    std::sort(out.parts.begin(), out.parts.end());
    return out;
}

Character assembleCharacter(const FiniteGroup& G, const RepDecomposition& W) {
    const ConjugacyClasses& cc = classesCached(G);
    Character out;
    out.group = G;
    out.values.assign(cc.classCount(), Cyclotomic());
    for (const auto& [label, mult] : W.parts) {
        const Character irr = irreducibleByLabel(G, label);
        for (int i = 0; i < cc.classCount(); ++i)
            out.values[i] = out.values[i] + Rational(mult) * irr.values[i];
    }
    if (W.parts.size() == 1 && W.parts.front().second == 1)
        out.label = irreducibleByLabel(G, W.parts.front().first).label;
    return out;
}

int decompositionDim(const FiniteGroup& G, const RepDecomposition& W) {
    int total = 0;
    for (const auto& [label, mult] : W.parts)
        total += mult * static_cast<int>(
                            irreducibleByLabel(G, label).dimension().asRational().numerator());
    return total;
}

// ---------------------------------------------------------------------------
// Extensions
// ---------------------------------------------------------------------------

std::vector<Character> extensionsOfIrreducible(const Character& U, const FiniteGroup& N2) {
    const FiniteGroup& N0 = U.group;
    if (!(N0.amb == N2.amb) || !N0.isSubsetOf(N2))
        fail("NotASubgroup", "the character's group must sit inside the extending group");
    bool isIrr = false;
    for (const auto& cand : irreduciblesCached(N0)) isIrr = isIrr || cand.values == U.values;
    if (!isIrr) fail("PreconditionViolation", "extension source character is not irreducible");
    for (const auto& x : N2.elems)
        if (!(conjugateSubgroup(N0, x) == N0))
            fail("QuotientNotCyclic", "the subgroup is not normal in the extending group");
    const int m = N2.size() / N0.size();
    // Least element whose coset generates the quotient.
    GroupElement a0 = identityOf(N2);
    bool found = (m == 1);
    for (const auto& x : N2.elems) {
        if (found) break;
        int t = 1;
        GroupElement y = x;
        while (!N0.contains(y)) {
            y = multiply(y, x);
            ++t;
        }
        if (t == m) {
            a0 = x;
            found = true;
        }
    }
    if (!found)
        fail("QuotientNotCyclic", "quotient of order " + std::to_string(m) + " is not cyclic");
    std::map<GroupElement, int> cosetLog;
    GroupElement p = identityOf(N2);
    for (int l = 0; l < m; ++l) {
        for (const auto& h : N0.elems) cosetLog[multiply(p, h)] = l;
        p = multiply(p, a0);
    }
    if (cosetLog.size() != N2.elems.size())
        fail("QuotientNotCyclic", "cosets of the quotient generator do not cover the group");
    std::vector<Character> matching;
    for (const auto& irr : irreduciblesCached(N2))
        if (restrictCharacter(irr, N0).values == U.values) matching.push_back(irr);
    if (matching.empty()) return {};
    // Order so that entry l equals entry 0 tensored with the weight-l pullback
    // of the quotient character w.r.t. a0.
    const ConjugacyClasses& cc = classesCached(N2);
    const Character base = matching.front();
    std::vector<Character> ordered;
    std::vector<char> taken(matching.size(), 0);
    for (int l = 0; l < m; ++l)
        for (std::size_t j = 0; j < matching.size(); ++j) {
            if (taken[j]) continue;
            bool match = true;
            for (int i = 0; i < cc.classCount() && match; ++i)
                match = matching[j].values[i] ==
                        base.values[i] * Cyclotomic::root(
                                             m, static_cast<long long>(l) * cosetLog.at(cc.rep(i)));
            if (match) {
                ordered.push_back(matching[j]);
                taken[j] = 1;
                break;
            }
        }
    for (std::size_t j = 0; j < matching.size(); ++j)  // safety net, normally empty
        if (!taken[j]) ordered.push_back(matching[j]);
    return ordered;
}

std::vector<RepDecomposition> extensionSet(const FiniteGroup& N1, const RepDecomposition& W,
                                           const FiniteGroup& N2) {
    if (!(N1.amb == N2.amb) || !N1.isSubsetOf(N2))
        fail("NotASubgroup", "extension requires nested groups in one ambient");
    const std::vector<Character>& irr1 = irreduciblesCached(N1);
    const std::vector<Character>& irr2 = irreduciblesCached(N2);
    const std::size_t n1 = irr1.size(), n2 = irr2.size();
    std::vector<long long> target(n1, 0);
    for (const auto& [label, mult] : W.parts) {
        const std::string canon = irreducibleByLabel(N1, label).label;
        for (std::size_t j = 0; j < n1; ++j)
            if (irr1[j].label == canon) target[j] += mult;
    }
    std::vector<std::vector<long long>> row(n2, std::vector<long long>(n1, 0));
    for (std::size_t i = 0; i < n2; ++i) {
        const RepDecomposition d = decompose(restrictCharacter(irr2[i], N1));
        for (const auto& [label, mult] : d.parts)
            for (std::size_t j = 0; j < n1; ++j)
                if (irr1[j].label == label) row[i][j] = mult;
    }
    std::vector<RepDecomposition> results;
    std::vector<long long> counts(n2, 0);
    auto dfs = [&](auto&& self, std::size_t i, std::vector<long long> rem) -> void {
        if (i == n2) {
            for (const long long r : rem)
                if (r != 0) return;
            RepDecomposition d;
            for (std::size_t t = 0; t < n2; ++t)
                if (counts[t] > 0) d.parts.emplace_back(irr2[t].label, static_cast<int>(counts[t]));
            std::sort(d.parts.begin(), d.parts.end());
            results.push_back(std::move(d));
            return;
        }
        for (long long cnt = 0;; ++cnt) {
            counts[i] = cnt;
            self(self, i + 1, rem);
            bool fits = true;
            for (std::size_t j = 0; j < n1 && fits; ++j) fits = row[i][j] <= rem[j];
            if (!fits) break;
            for (std::size_t j = 0; j < n1; ++j) rem[j] -= row[i][j];
        }
        counts[i] = 0;
    };
    dfs(dfs, 0, target);
    std::sort(results.begin(), results.end());
    return results;
}

int countComponentsOfA(const FData& F) {
    if (F.transitive) {
        if (F.otherFiber)
            fail("ConditionViolation", "transitive data must not carry a second fiber");
        if (!(F.N1.amb == F.N2.amb) || !F.N1.isSubsetOf(F.N2))
            fail("ConditionViolation", "the stabilizer must sit inside the acting group");
        if (F.N2.size() != 2 * F.N1.size())
            fail("ConditionViolation", "a transitive two-point action needs an index-two stabilizer");
        return static_cast<int>(extensionSet(F.N1, F.fiber, F.N2).size());
    }
    if (!F.otherFiber)
        fail("ConditionViolation", "split data needs the fiber over the second point");
    if (!(F.N1 == F.N2))
        fail("ConditionViolation", "split data means the whole group stabilizes each point");
    return F.fiber == *F.otherFiber ? 1 : 0;
}

// ---------------------------------------------------------------------------
// One-parameter rows
// ---------------------------------------------------------------------------

std::vector<OneDimIrrep> oneDimIrreducibles(Family f, int window) {
    if (!familyIsOneDim(f))
        fail("UnsupportedFamily", familyTag(f) + " is not a one-parameter family");
    if (window < 0) fail("PreconditionViolation", "negative weight window");
    const std::string tag = familyTag(f);
    std::vector<OneDimIrrep> out;
    auto push = [&](std::string label, int dim, int weight, int signS, int signR) {
        out.push_back({f, std::move(label), dim, weight, signS, signR});
    };
    switch (f) {
        case Family::SO2:
            for (int k = -window; k <= window; ++k)
                push(tag + ":w" + std::to_string(k), 1, k, 0, +1);
            break;
        case Family::SO2MinusA2:
            for (int k = -window; k <= window; ++k)
                for (int s = 0; s <= 1; ++s)
                    push(tag + ":w" + std::to_string(k) + (s ? ":-" : ":+"), 1, k, s, +1);
            break;
        case Family::O2:
        case Family::SO2MinusB:
            push(tag + ":triv", 1, 0, 0, +1);
            push(tag + ":sgn", 1, 0, 0, -1);
            for (int k = 1; k <= window; ++k) push(tag + ":V" + std::to_string(k), 2, k, 0, +1);
            break;
        case Family::O2xZ:
            push(tag + ":triv:+", 1, 0, 0, +1);
            push(tag + ":triv:-", 1, 0, 1, +1);
            push(tag + ":sgn:+", 1, 0, 0, -1);
            push(tag + ":sgn:-", 1, 0, 1, -1);
            for (int k = 1; k <= window; ++k) {
                push(tag + ":V" + std::to_string(k) + ":+", 2, k, 0, +1);
                push(tag + ":V" + std::to_string(k) + ":-", 2, k, 1, +1);
            }
            break;
        case Family::SO3:
            for (int l = 0; l <= window; ++l)
                push(tag + ":V" + std::to_string(l), 2 * l + 1, l, 0, +1);
            break;
        case Family::O3:
            for (int l = 0; l <= window; ++l) {
                push(tag + ":V" + std::to_string(l) + ":+", 2 * l + 1, l, 0, +1);
                push(tag + ":V" + std::to_string(l) + ":-", 2 * l + 1, l, 1, +1);
            }
            break;
        default: break;  // unreachable: familyIsOneDim gate above
    }
    return out;
}

namespace {

bool oneDimFamilyContains(Family f, const GroupElement& e) {
    switch (f) {
        case Family::SO2: return e.s == 0 && e.r == 0;
        case Family::O2: return e.s == 0;
        case Family::SO2MinusB: return e.s == e.r;
        case Family::SO2MinusA2: return e.r == 0;
        case Family::O2xZ: return true;
        case Family::SO3: return e.s == 0;
        case Family::O3: return true;
        default: return false;
    }
}

}  // namespace

Character restrictOneDimIrrep(const OneDimIrrep& w, const FiniteGroup& H) {
    if (H.amb.kind != AmbientKind::OneDim)
        fail("NotASubgroup",
             "restriction of a one-parameter irreducible needs one-parameter elements");
    for (const auto& e : H.elems)
        if (!oneDimFamilyContains(w.family, e))
            fail("NotASubgroup", "element " + e.word() + " lies outside " + familyTag(w.family));
    Character out;
    out.group = H;
    const ConjugacyClasses& cc = classesCached(H);
    for (int i = 0; i < cc.classCount(); ++i) {
        const GroupElement& e = cc.rep(i);
        const int den = static_cast<int>(e.q.denominator());
        const long long num = e.q.numerator();
        Cyclotomic v;
        if (w.family == Family::SO3 || w.family == Family::O3) {
            if (e.r == 0) {
                // Trace of the (2l+1)-dimensional rotation irreducible at a
                // turn of num/den: sum of the weight characters -l..l.
                Cyclotomic sum;
                for (int j = -w.weight; j <= w.weight; ++j)
                    sum = sum + Cyclotomic::root(den, j * num);
                v = sum;
            } else {
                v = cyc(w.weight % 2 == 0 ? 1 : -1);  // trace at a half turn
            }
        } else if (w.dim == 2) {
            v = (e.r == 1) ? Cyclotomic() : Cyclotomic::cos2(den, w.weight * num);
        } else if (w.family == Family::SO2 || w.family == Family::SO2MinusA2) {
            v = Cyclotomic::root(den, w.weight * num);
        } else {
            v = cyc((e.r == 1 && w.signR < 0) ? -1 : 1);
        }
        if (w.signS == 1 && e.s == 1) v = -v;
        out.values.push_back(v);
    }
    out.label = matchIrreducibleLabel(H, out.values);
    return out;
}

}  // namespace equivect
