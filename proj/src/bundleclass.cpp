#include "equivect/bundleclass.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "equivect/errors.hpp"

namespace equivect {

namespace {

// ---------------------------------------------------------------------------
// Entry slots: where the invariant's decompositions live
// ---------------------------------------------------------------------------

struct SlotCtx {
    std::string pointLabel;  // "S"/"N" or "d-1"/"d0"/"d1"
    PointRef place;
    bool finite = true;
    FiniteGroup group;                    // finite stabilizer
    Family labelFamily = Family::SO2;     // infinite stabilizer: label family
    OneDimSubgroupDesc desc;              // infinite stabilizer: description
};

struct RowCtx {
    FiniteSubgroupHandle handle;
    bool polar = false;
    std::vector<SlotCtx> slots;        // 2 (polar) or 3 (triple)
    std::vector<SlotCtx> polarTests;   // polar rows: endpoint stabilizers
    std::optional<GroupElement> conj;  // least g with g d0 = d1, when one exists
    bool endpointsEqual = false;       // d0 and d1 are the same point
    FundamentalDomainData fd;
};

/// Label family of an infinite circle-type stabilizer description, read off
/// its nontrivial coset classes.
Family descFamily(const OneDimSubgroupDesc& d) {
    if (!d.wholeRotationCircle)
        fail("PreconditionViolation", "internal: finite description has no label family");
    using P = std::vector<std::pair<int, int>>;
    if (d.cosets.empty()) return Family::SO2;
    if (d.cosets == P{{1, 0}}) return Family::O2;
    if (d.cosets == P{{1, 1}}) return Family::SO2MinusB;
    if (d.cosets == P{{0, 1}}) return Family::SO2MinusA2;
    return Family::O2xZ;
}

SlotCtx slotForLabel(const FiniteSubgroupHandle& h, const std::string& pointLabel) {
    SlotCtx s;
    s.pointLabel = pointLabel;
    s.place = resolvePointLabel(h, pointLabel);
    PointStabilizer ps = stabilizerOfPoint(h, pointLabel);
    s.finite = ps.finite;
    if (ps.finite) {
        s.group = ps.group;
    } else {
        s.desc = ps.desc;
        s.labelFamily = descFamily(ps.desc);
    }
    return s;
}

RowCtx buildRowCtx(const FiniteSubgroupHandle& h) {
    RowCtx ctx;
    ctx.handle = h;
    ctx.polar = rowIsPolar(h.family);
    ctx.fd = fundamentalDomain(h);
    if (ctx.polar) {
        SlotCtx south, north;
        south.pointLabel = "S";
        south.place = PointRef::poleS();
        north.pointLabel = "N";
        north.place = PointRef::poleN();
        if (h.oneDim()) {
            south.finite = north.finite = false;
            south.desc = oneDimStabilizer(h.family, south.place);
            north.desc = oneDimStabilizer(h.family, north.place);
            south.labelFamily = descFamily(south.desc);
            north.labelFamily = descFamily(north.desc);
        } else {
            south.group = stabilizerOfPointRef(h.group, south.place);
            north.group = stabilizerOfPointRef(h.group, north.place);
        }
        ctx.slots = {south, north};
        ctx.polarTests = {slotForLabel(h, "d0"), slotForLabel(h, "d1")};
    } else {
        ctx.slots = {slotForLabel(h, "d-1"), slotForLabel(h, "d0"), slotForLabel(h, "d1")};
        ctx.endpointsEqual = ctx.slots[1].place == ctx.slots[2].place;
        if (!h.oneDim() && !ctx.endpointsEqual) {
            for (const GroupElement& g : h.group.elems) {
                if (applyToPoint(g, ctx.slots[1].place) == ctx.slots[2].place) {
                    ctx.conj = g;
                    break;
                }
            }
        }
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// Entry decoding
// ---------------------------------------------------------------------------

/// Sorts parts by label and merges duplicates.  Inputs with nonpositive raw
/// multiplicities are returned untouched so validation can reject them.
RepDecomposition sortedMerged(RepDecomposition w) {
    for (const auto& part : w.parts)
        if (part.second <= 0) return w;
    std::sort(w.parts.begin(), w.parts.end());
    std::vector<std::pair<std::string, int>> merged;
    for (const auto& part : w.parts) {
        if (!merged.empty() && merged.back().first == part.first)
            merged.back().second += part.second;
        else
            merged.push_back(part);
    }
    w.parts = std::move(merged);
    return w;
}

/// One-parameter irreducible by canonical label; the scan window is taken
/// from the largest integer mentioned in the label itself.
OneDimIrrep parseOneDim(Family fam, const std::string& label) {
    long long maxAbs = 1;
    for (size_t i = 0; i < label.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(label[i]))) {
            size_t j = i;
            long long v = 0;
            while (j < label.size() && std::isdigit(static_cast<unsigned char>(label[j])) &&
                   v < 1000000)
                v = v * 10 + (label[j++] - '0');
            maxAbs = std::max(maxAbs, v);
            i = j;
        }
    }
    if (maxAbs <= 1000000)
        for (const OneDimIrrep& w : oneDimIrreducibles(fam, static_cast<int>(maxAbs)))
            if (w.label == label) return w;
    fail("WrongStabilizerGroup", "label '" + label + "' is not an irreducible of the " +
                                     familyTag(fam) + " stabilizer");
}

/// Total dimension of an entry over its slot; validates labels and
/// multiplicity positivity.
long long entryDim(const SlotCtx& s, const RepDecomposition& w) {
    long long total = 0;
    for (const auto& [label, mult] : w.parts) {
        if (mult <= 0)
            fail("PreconditionViolation", "entry multiplicities must be positive");
        if (s.finite) {
            RepDecomposition one;
            one.parts.push_back({label, 1});
            try {
                total += static_cast<long long>(mult) * decompositionDim(s.group, one);
            } catch (const EngineError& e) {
                fail("WrongStabilizerGroup", "label '" + label +
                                                 "' is not an irreducible of the stabilizer at " +
                                                 s.pointLabel + " (" + e.what() + ")");
            }
        } else {
            total += static_cast<long long>(mult) * parseOneDim(s.labelFamily, label).dim;
        }
    }
    return total;
}

/// Class function of a finite-slot entry.
Character slotChar(const SlotCtx& s, const RepDecomposition& w) {
    try {
        return assembleCharacter(s.group, w);
    } catch (const EngineError& e) {
        fail("WrongStabilizerGroup", "entry at " + s.pointLabel + ": " + e.what());
    }
}

/// Restriction of an entry (nonempty, validated labels) to a finite subgroup
/// H of the slot's stabilizer.
Character restrictTo(const SlotCtx& s, const RepDecomposition& w, const FiniteGroup& h) {
    if (s.finite) return restrictCharacter(slotChar(s, w), h);
    Character acc;
    bool first = true;
    for (const auto& [label, mult] : w.parts) {
        Character term = restrictOneDimIrrep(parseOneDim(s.labelFamily, label), h);
        if (first) {
            acc = term;
            acc.label = "virtual";
            if (mult != 1)
                for (auto& v : acc.values) v = Rational(mult) * v;
            first = false;
        } else {
            for (size_t i = 0; i < acc.values.size(); ++i)
                acc.values[i] = acc.values[i] + Rational(mult) * term.values[i];
        }
    }
    return acc;
}

/// Normalized entries in slot order, after shape and scale screening.
std::vector<RepDecomposition> entriesOf(const RowCtx& ctx, const BundleInvariant& inv) {
    if (inv.rankScale < 1)
        fail("PreconditionViolation", "rankScale must be a positive integer");
    if ((inv.shape == InvariantShape::Polar) != ctx.polar)
        fail("WrongStabilizerGroup",
             std::string("row ") + familyTag(ctx.handle.family) + " carries " +
                 (ctx.polar ? "polar pole pairs" : "marker-point triples") + ", not " +
                 (ctx.polar ? "triples" : "pairs"));
    if (ctx.polar) return {sortedMerged(inv.wS), sortedMerged(inv.wN)};
    return {sortedMerged(inv.wDm1), sortedMerged(inv.wD0), sortedMerged(inv.wD1)};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationResult invalidResult(std::string clause, std::string detail) {
    ValidationResult r;
    r.valid = false;
    r.clause = std::move(clause);
    r.detail = std::move(detail);
    return r;
}

ValidationResult validateAgainst(const RowCtx& ctx, const BundleInvariant& inv) {
    std::vector<RepDecomposition> w = entriesOf(ctx, inv);
    std::vector<long long> dim(w.size());
    for (size_t i = 0; i < w.size(); ++i) dim[i] = entryDim(ctx.slots[i], w[i]);
    // Clause i (entries isotypical at the carried scale) holds for every
    // labeled decomposition at the scale-1 reduction the engine works with.
    if (ctx.polar) {
        if (dim[0] != dim[1])
            return invalidResult("ii", "pole entries have dimensions " + std::to_string(dim[0]) +
                                           " and " + std::to_string(dim[1]) +
                                           ", so their restrictions cannot agree");
        if (dim[0] > 0) {
            for (const SlotCtx& t : ctx.polarTests) {
                if (t.group.size() <= 1) continue;  // trivial stabilizer sees only the dimension
                Character a = restrictTo(ctx.slots[0], w[0], t.group);
                Character b = restrictTo(ctx.slots[1], w[1], t.group);
                if (!(a == b))
                    return invalidResult("ii",
                                         "restrictions of the pole entries to the stabilizer of " +
                                             t.pointLabel + " disagree");
            }
        }
        return {};
    }
    // Triple clause ii: the d1 entry must be the conjugate of the d0 entry
    // whenever some group element carries d0 to d1 (any two such elements
    // differ by an element of the d0 stabilizer, so the condition does not
    // depend on which one is used).
    if (ctx.endpointsEqual) {
        if (!(w[1] == w[2]))
            return invalidResult("ii",
                                 "the path endpoints coincide, so the d0 and d1 entries must be "
                                 "equal");
    } else if (ctx.conj) {
        if (dim[1] != dim[2])
            return invalidResult("ii", "d0 and d1 entries have dimensions " +
                                           std::to_string(dim[1]) + " and " +
                                           std::to_string(dim[2]) +
                                           " but the points are conjugate under " +
                                           ctx.conj->word());
        if (dim[1] > 0) {
            Character moved = conjugateCharacter(slotChar(ctx.slots[1], w[1]), *ctx.conj);
            Character target = slotChar(ctx.slots[2], w[2]);
            if (!(moved == target))
                return invalidResult("ii", "the d1 entry is not the " + ctx.conj->word() +
                                               "-conjugate of the d0 entry");
        }
    }
    // Triple clause iii: pairwise agreement on stabilizer intersections.
    static const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& [i, j] : pairs) {
        const SlotCtx& si = ctx.slots[i];
        const SlotCtx& sj = ctx.slots[j];
        if (dim[i] != dim[j])
            return invalidResult("iii", "entries at " + si.pointLabel + " and " + sj.pointLabel +
                                            " have dimensions " + std::to_string(dim[i]) +
                                            " and " + std::to_string(dim[j]));
        if (dim[i] == 0) continue;
        if (si.finite && sj.finite) {
            FiniteGroup h = intersectGroups(si.group, sj.group);
            if (h.size() <= 1) continue;
            if (!(restrictTo(si, w[i], h) == restrictTo(sj, w[j], h)))
                return invalidResult("iii", "entries at " + si.pointLabel + " and " +
                                                sj.pointLabel +
                                                " restrict differently to the intersection of "
                                                "their stabilizers");
        } else if (!si.finite && !sj.finite) {
            // The markers coincide for these rows, so the stabilizers are the
            // same infinite group and agreement is entry equality.
            if (!(w[i] == w[j]))
                return invalidResult("iii", "entries at " + si.pointLabel + " and " +
                                                sj.pointLabel +
                                                " must be equal (identical stabilizers)");
        } else {
            const SlotCtx& inf = si.finite ? sj : si;
            const SlotCtx& fin = si.finite ? si : sj;
            const RepDecomposition& wInf = si.finite ? w[j] : w[i];
            const RepDecomposition& wFin = si.finite ? w[i] : w[j];
            FiniteGroup h = stabilizerOfPointRef(fin.group, inf.place);
            if (h.size() <= 1) continue;
            if (!(restrictTo(inf, wInf, h) == restrictTo(fin, wFin, h)))
                return invalidResult("iii", "entries at " + si.pointLabel + " and " +
                                                sj.pointLabel +
                                                " restrict differently to the intersection of "
                                                "their stabilizers");
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Whether the slot admits infinitely many entries of dimension <= maxD.
bool slotTruncates(const SlotCtx& s, int maxD) {
    if (s.finite) return false;
    switch (s.labelFamily) {
        case Family::SO2:
        case Family::SO2MinusA2:
            return true;  // one-dimensional weights are unbounded
        default:
            return maxD >= 2;  // two-dimensional weight labels are unbounded
    }
}

/// All decompositions with the given total dimension drawn from the menu of
/// (label, dim) items, parts sorted by label.
void decompsOfDimRec(const std::vector<std::pair<std::string, int>>& items, size_t idx,
                     int remaining, RepDecomposition& cur, std::vector<RepDecomposition>& out) {
    if (remaining == 0) {
        RepDecomposition w = cur;
        std::sort(w.parts.begin(), w.parts.end());
        out.push_back(std::move(w));
        return;
    }
    if (idx >= items.size()) return;
    decompsOfDimRec(items, idx + 1, remaining, cur, out);
    int d = items[idx].second;
    if (d <= remaining) {
        cur.parts.push_back({items[idx].first, 0});
        for (int c = 1; c * d <= remaining; ++c) {
            cur.parts.back().second = c;
            decompsOfDimRec(items, idx + 1, remaining - c * d, cur, out);
        }
        cur.parts.pop_back();
    }
}

std::vector<RepDecomposition> decompsOfDim(const std::vector<std::pair<std::string, int>>& items,
                                           int d) {
    std::vector<RepDecomposition> out;
    RepDecomposition cur;
    decompsOfDimRec(items, 0, d, cur, out);
    return out;
}

InvariantEnumeration enumerateWith(const RowCtx& ctx, int maxTotalDim, int weightWindow) {
    if (maxTotalDim < 1) fail("PreconditionViolation", "maxTotalDim must be at least 1");
    const bool oneDim = ctx.handle.oneDim();
    if (oneDim && weightWindow < 1)
        fail("WindowTooSmall", "weight window " + std::to_string(weightWindow) +
                                   " cannot hold any nonzero weight; use at least 1");
    InvariantEnumeration out;
    out.windowUsed = oneDim ? weightWindow : 0;
    for (const SlotCtx& s : ctx.slots)
        out.truncated = out.truncated || slotTruncates(s, maxTotalDim);

    std::vector<std::vector<std::pair<std::string, int>>> menu;
    for (const SlotCtx& s : ctx.slots) {
        std::vector<std::pair<std::string, int>> items;
        if (s.finite) {
            for (const Character& chi : irreducibles(s.group)) {
                RepDecomposition one;
                one.parts.push_back({chi.label, 1});
                items.push_back({chi.label, decompositionDim(s.group, one)});
            }
        } else {
            for (const OneDimIrrep& w : oneDimIrreducibles(s.labelFamily, weightWindow))
                items.push_back({w.label, w.dim});
        }
        menu.push_back(std::move(items));
    }

    // Every valid invariant has entries of one common dimension: restricting
    // to the (possibly trivial) stabilizer intersection preserves dimension,
    // and the clauses compare those restrictions.  So it is enough to pair
    // entries of equal dimension d for each d up to the bound.
    for (int d = 1; d <= maxTotalDim; ++d) {
        std::vector<std::vector<RepDecomposition>> lists;
        for (size_t s = 0; s < ctx.slots.size(); ++s) lists.push_back(decompsOfDim(menu[s], d));
        if (ctx.polar) {
            for (const RepDecomposition& a : lists[0])
                for (const RepDecomposition& b : lists[1]) {
                    BundleInvariant cand = makePolarInvariant(a, b);
                    if (validateAgainst(ctx, cand).valid) out.invariants.push_back(cand);
                }
        } else {
            for (const RepDecomposition& a : lists[0])
                for (const RepDecomposition& b : lists[1])
                    for (const RepDecomposition& c : lists[2]) {
                        BundleInvariant cand = makeTripleInvariant(a, b, c);
                        if (validateAgainst(ctx, cand).valid) out.invariants.push_back(cand);
                    }
        }
    }
    std::sort(out.invariants.begin(), out.invariants.end());
    return out;
}

// ---------------------------------------------------------------------------
// Chern residues
// ---------------------------------------------------------------------------

long long weightOfValue(const Cyclotomic& v, long long m) {
    for (long long l = 0; l < m; ++l)
        if (v == Cyclotomic::root(static_cast<int>(m), l)) return l;
    fail("PreconditionViolation", "internal: character value is not a root of unity of order " +
                                      std::to_string(m));
}

GroupElement leastMaxOrderElement(const FiniteGroup& g) {
    int best = 0;
    const GroupElement* pick = nullptr;
    for (const GroupElement& e : g.elems) {
        int o = elementOrder(g, e);
        if (o > best) {
            best = o;
            pick = &e;
        }
    }
    return *pick;
}

/// Weight of a one-dimensional entry over a cyclic stabilizer with respect
/// to the canonical generator (least element of maximal order, matching the
/// label convention of the character tables).
long long cyclicWeight(const SlotCtx& s, const RepDecomposition& w) {
    GroupElement g = leastMaxOrderElement(s.group);
    long long m = elementOrder(s.group, g);
    return weightOfValue(slotChar(s, w).valueAt(g), m);
}

/// Sign (+1/-1) of a one-dimensional entry at the flip generating an
/// order-two endpoint stabilizer.
int flipSign(const SlotCtx& s, const RepDecomposition& w) {
    if (s.group.size() != 2)
        fail("PreconditionViolation", "internal: endpoint stabilizer is not of order two");
    const GroupElement& t =
        s.group.elems[0].isIdentity() ? s.group.elems[1] : s.group.elems[0];
    return weightOfValue(slotChar(s, w).valueAt(t), 2) == 0 ? +1 : -1;
}

bool sameRay(const Vec3& a, const Vec3& b) {
    Vec3 c = cross(a, b);
    if (c[0].sign() != 0 || c[1].sign() != 0 || c[2].sign() != 0) return false;
    return dot(a, b).sign() > 0;
}

/// Oriented axis of a rotation with angle in (0, pi): the skew part of the
/// matrix is 2 sin(theta) times the right-handed unit axis.
Vec3 skewAxis(const Mat3& m) {
    return Vec3{m.at(2, 1) - m.at(1, 2), m.at(0, 2) - m.at(2, 0), m.at(1, 0) - m.at(0, 1)};
}

/// Axis of a half-turn (skew part vanishes): any nonzero column of M + I,
/// which equals 2 u u^T.  The sign of the axis is immaterial for every
/// formula below: the half-turn weight satisfies l_N = -l_S mod 2, so the
/// pole swap changes -2 l_S by a multiple of 4, and the flip signs are
/// invariant because the half rotation of the dihedral copy centralizes
/// each flip while swapping its fixed poles.
Vec3 halfTurnAxis(const Mat3& m) {
    for (int j = 0; j < 3; ++j) {
        Vec3 col{m.at(0, j), m.at(1, j), m.at(2, j)};
        col[j] = col[j] + QSqrt5(1);
        if (col[0].sign() != 0 || col[1].sign() != 0 || col[2].sign() != 0) return col;
    }
    fail("PreconditionViolation", "internal: half-turn axis extraction failed");
}

Vec3 negated(const Vec3& v) { return Vec3{-v[0], -v[1], -v[2]}; }

QSqrt5 traceOf(const Mat3& m) { return m.at(0, 0) + m.at(1, 1) + m.at(2, 2); }

/// First Chern class of a line invariant over a polyhedral rotation row,
/// assembled from a dihedral two-part copy and rotation odd-part copies by
/// the Chinese remainder theorem (the moduli 2m and p multiply to the orbit
/// count of the row).
long long polyChern(const RowCtx& ctx, const std::vector<RepDecomposition>& w) {
    const FiniteGroup& g = ctx.handle.group;
    std::vector<Character> chars;
    for (size_t i = 0; i < ctx.slots.size(); ++i) chars.push_back(slotChar(ctx.slots[i], w[i]));

    // Isotropy value at an arbitrary ray: carry the ray into a marker orbit
    // and read the entry there through the conjugated element.
    auto valueAtRay = [&](const Vec3& ray, const GroupElement& h) -> Cyclotomic {
        for (size_t i = 0; i < ctx.slots.size(); ++i)
            for (const GroupElement& c : g.elems) {
                PointRef img = applyToPoint(c, ctx.slots[i].place);
                if (img.kind == PointRef::Kind::Coord && sameRay(img.p, ray))
                    return chars[i].valueAt(multiply(multiply(c.inverse(), h), c));
            }
        fail("PreconditionViolation", "internal: ray not covered by the marker orbits");
    };

    const int m2 = ctx.handle.family == Family::O ? 4 : 2;
    GroupElement r = [&] {
        for (const GroupElement& e : g.elems)
            if (elementOrder(g, e) == m2) return e;
        fail("PreconditionViolation", "internal: no element of the required order");
    }();
    Vec3 axis2 = m2 == 4 ? skewAxis(r.mat) : halfTurnAxis(r.mat);
    long long lS = weightOfValue(valueAtRay(negated(axis2), r), m2);
    GroupElement flip = [&] {
        for (const GroupElement& e : g.elems) {
            if (elementOrder(g, e) != 2) continue;
            bool inR = false;
            GroupElement p = r;
            for (int k = 1; k < m2; ++k) {
                if (e == p) inR = true;
                p = multiply(p, r);
            }
            if (inR) continue;
            if (multiply(multiply(e, r), e) == r.inverse()) return e;
        }
        fail("PreconditionViolation", "internal: no inverting flip found");
    }();
    GroupElement flip2 = multiply(r, flip);
    auto signAtOwnAxis = [&](const GroupElement& f) {
        return weightOfValue(valueAtRay(halfTurnAxis(f.mat), f), 2) == 0 ? +1 : -1;
    };
    int e0 = signAtOwnAxis(flip);
    int e1 = signAtOwnAxis(flip2);

    std::vector<std::pair<long long, long long>> parts;  // (modulus, residue)
    parts.push_back({2 * m2, modll(-2 * lS + (e0 == e1 ? 0 : m2), 2 * m2)});

    const QSqrt5 golden{Rational(1, 2), Rational(1, 2)};  // 1 + 2 cos(2 pi / 5)
    std::vector<int> odds = ctx.handle.family == Family::I ? std::vector<int>{3, 5}
                                                           : std::vector<int>{3};
    for (int p : odds) {
        GroupElement h = [&] {
            for (const GroupElement& e : g.elems) {
                if (elementOrder(g, e) != p) continue;
                // For order five both rotation angles occur; pick the
                // 1/p-turn so weights follow the standard generator.
                if (p == 5 && !(traceOf(e.mat) == golden)) continue;
                return e;
            }
            fail("PreconditionViolation", "internal: no element of odd prime order");
        }();
        Vec3 axis = skewAxis(h.mat);
        long long lN = weightOfValue(valueAtRay(axis, h), p);
        long long lSp = weightOfValue(valueAtRay(negated(axis), h), p);
        parts.push_back({p, modll(lN - lSp, p)});
    }

    for (long long x = 0; x < ctx.fd.lR; ++x) {
        bool ok = true;
        for (const auto& [m, res] : parts)
            if (x % m != res) {
                ok = false;
                break;
            }
        if (ok) return x;
    }
    fail("PreconditionViolation", "internal: residue recombination failed");
}

long long chernWith(const RowCtx& ctx, const BundleInvariant& inv) {
    if (inv.rankScale != 1)
        fail("NotLineInvariant", "line invariants carry scale 1, got scale " +
                                     std::to_string(inv.rankScale));
    std::vector<RepDecomposition> w = entriesOf(ctx, inv);
    for (size_t i = 0; i < w.size(); ++i) {
        long long d = entryDim(ctx.slots[i], w[i]);
        if (d != 1)
            fail("NotLineInvariant", "entry at " + ctx.slots[i].pointLabel + " has dimension " +
                                         std::to_string(d) + ", expected 1");
    }
    switch (ctx.handle.family) {
        case Family::Zn: {
            long long n = ctx.handle.group.size();
            long long lS = cyclicWeight(ctx.slots[0], w[0]);
            long long lN = cyclicWeight(ctx.slots[1], w[1]);
            return modll(lN - lS, n);
        }
        case Family::Dn: {
            long long n = ctx.handle.n;
            long long lS = cyclicWeight(ctx.slots[0], w[0]);
            int e0 = flipSign(ctx.slots[1], w[1]);
            int e1 = flipSign(ctx.slots[2], w[2]);
            return modll(-2 * lS + (e0 == e1 ? 0 : n), 2 * n);
        }
        case Family::ZnxZ:
            if (ctx.handle.n % 2 == 1) return 0;  // trivial Chern class
            break;
        case Family::MinusAn:
            if ((ctx.handle.n / 2) % 2 == 0) return 0;  // trivial Chern class
            break;
        case Family::T:
        case Family::O:
        case Family::I:
            return polyChern(ctx, w);
        default:
            break;
    }
    fail("UnsupportedFamily",
         "first Chern classes of line invariants are defined for rows Zn, Dn, odd-n ZnxZ, "
         "MinusAn with even n/2, T, O, and I");
}

// ---------------------------------------------------------------------------
// k0: Chern residue of a sum of lines
// ---------------------------------------------------------------------------

struct LineData {
    std::vector<std::vector<std::string>> labels;  // one label per slot per line
    std::vector<long long> cherns;
};

LineData lineDataFor(const RowCtx& ctx) {
    LineData out;
    InvariantEnumeration lines = enumerateWith(ctx, 1, kDefaultWeightWindow);
    for (const BundleInvariant& line : lines.invariants) {
        std::vector<RepDecomposition> entries = entriesOf(ctx, line);
        std::vector<std::string> labels;
        for (const RepDecomposition& e : entries) labels.push_back(e.parts.at(0).first);
        out.labels.push_back(std::move(labels));
        out.cherns.push_back(chernWith(ctx, line));
    }
    return out;
}

/// Finds a multiset of line invariants summing entrywise to the target and
/// returns the sum of their Chern residues mod lR.
long long k0With(const RowCtx& ctx, const LineData& lines, const BundleInvariant& inv) {
    std::vector<RepDecomposition> w = entriesOf(ctx, inv);
    size_t slots = ctx.slots.size();
    std::vector<std::map<std::string, long long>> rem(slots);
    long long total = 0;
    for (size_t s = 0; s < slots; ++s)
        for (const auto& [label, mult] : w[s].parts) rem[s][label] += mult;
    for (const auto& [label, mult] : w[0].parts) total += mult;
    long long acc = 0;
    auto dfs = [&](auto&& self, size_t idx, long long left) -> bool {
        if (left == 0) {
            for (const auto& m : rem)
                for (const auto& [label, c] : m)
                    if (c != 0) return false;
            return true;
        }
        if (idx >= lines.labels.size()) return false;
        long long maxC = left;
        for (size_t s = 0; s < slots; ++s) {
            auto it = rem[s].find(lines.labels[idx][s]);
            maxC = std::min(maxC, it == rem[s].end() ? 0 : it->second);
        }
        for (long long c = maxC; c >= 0; --c) {
            for (size_t s = 0; s < slots; ++s) rem[s][lines.labels[idx][s]] -= c;
            if (self(self, idx + 1, left - c)) {
                acc += c * lines.cherns[idx];
                return true;
            }
            for (size_t s = 0; s < slots; ++s) rem[s][lines.labels[idx][s]] += c;
        }
        return false;
    };
    if (total == 0) return 0;
    if (!dfs(dfs, 0, total))
        fail("NoLineDecomposition",
             "no multiset of one-dimensional invariants sums to this invariant");
    return modll(acc, ctx.fd.lR);
}

std::string kindSummary(FiberKind k) {
    switch (k) {
        case FiberKind::Unique:
            return "each valid invariant is carried by exactly one bundle";
        case FiberKind::ChernIndexed:
            return "each valid invariant is carried by one integer family of bundles indexed "
                   "by the first Chern class";
        case FiberKind::TwoSameChern:
            return "each valid invariant is carried by exactly two bundles sharing one first "
                   "Chern class";
    }
    return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

bool rowIsPolar(Family f) {
    return f == Family::Zn || f == Family::AnMinusB || f == Family::SO2 ||
           f == Family::SO2MinusB;
}

bool operator<(const BundleInvariant& x, const BundleInvariant& y) {
    if (x.shape != y.shape) return x.shape < y.shape;
    if (!(x.wS == y.wS)) return x.wS < y.wS;
    if (!(x.wN == y.wN)) return x.wN < y.wN;
    if (!(x.wDm1 == y.wDm1)) return x.wDm1 < y.wDm1;
    if (!(x.wD0 == y.wD0)) return x.wD0 < y.wD0;
    if (!(x.wD1 == y.wD1)) return x.wD1 < y.wD1;
    return x.rankScale < y.rankScale;
}

std::string BundleInvariant::str() const {
    std::string s;
    if (shape == InvariantShape::Polar)
        s = "(S: " + wS.str() + " | N: " + wN.str() + ")";
    else
        s = "(d-1: " + wDm1.str() + " | d0: " + wD0.str() + " | d1: " + wD1.str() + ")";
    if (rankScale != 1) s += " scale " + std::to_string(rankScale);
    return s;
}

BundleInvariant makePolarInvariant(RepDecomposition wS, RepDecomposition wN, int rankScale) {
    BundleInvariant b;
    b.shape = InvariantShape::Polar;
    b.wS = sortedMerged(std::move(wS));
    b.wN = sortedMerged(std::move(wN));
    b.rankScale = rankScale;
    return b;
}

BundleInvariant makeTripleInvariant(RepDecomposition wDm1, RepDecomposition wD0,
                                    RepDecomposition wD1, int rankScale) {
    BundleInvariant b;
    b.shape = InvariantShape::Triple;
    b.wDm1 = sortedMerged(std::move(wDm1));
    b.wD0 = sortedMerged(std::move(wD0));
    b.wD1 = sortedMerged(std::move(wD1));
    b.rankScale = rankScale;
    return b;
}

long long invariantRank(const FiniteSubgroupHandle& R, const BundleInvariant& inv) {
    RowCtx ctx = buildRowCtx(R);
    std::vector<RepDecomposition> w = entriesOf(ctx, inv);
    return entryDim(ctx.slots[0], w[0]) * inv.rankScale;
}

ValidationResult validateInvariant(const FiniteSubgroupHandle& R, const BundleInvariant& inv) {
    return validateAgainst(buildRowCtx(R), inv);
}

InvariantEnumeration enumerateInvariants(const FiniteSubgroupHandle& R, int maxTotalDim,
                                         int weightWindow) {
    return enumerateWith(buildRowCtx(R), maxTotalDim, weightWindow);
}

std::string fiberKindName(FiberKind k) {
    switch (k) {
        case FiberKind::Unique: return "Unique";
        case FiberKind::ChernIndexed: return "ChernIndexed";
        case FiberKind::TwoSameChern: return "TwoSameChern";
    }
    return {};
}

FiberKind rowFiberKind(const FiniteSubgroupHandle& R) {
    switch (R.family) {
        case Family::Zn:
        case Family::Dn:
        case Family::T:
        case Family::O:
        case Family::I:
            return FiberKind::ChernIndexed;
        case Family::ZnxZ:
            return R.n % 2 == 1 ? FiberKind::TwoSameChern : FiberKind::Unique;
        case Family::MinusAn:
            return (R.n / 2) % 2 == 0 ? FiberKind::TwoSameChern : FiberKind::Unique;
        default:
            return FiberKind::Unique;
    }
}

FiberDescription classifyFiber(const FiniteSubgroupHandle& R, const BundleInvariant& inv) {
    RowCtx ctx = buildRowCtx(R);
    ValidationResult v = validateAgainst(ctx, inv);
    if (!v.valid)
        fail("InvalidInvariant", "invariant violates clause " + v.clause + ": " + v.detail);
    FiberDescription out;
    out.kind = rowFiberKind(R);
    out.description = kindSummary(out.kind);
    if (out.kind == FiberKind::ChernIndexed) {
        out.lR = ctx.fd.lR;
        LineData lines = lineDataFor(ctx);
        out.k0 = k0With(ctx, lines, inv);
        out.description += "; first Chern classes run over " + std::to_string(*out.k0) + " + " +
                           std::to_string(*out.lR) + "*t for integer t";
    }
    return out;
}

long long chernOfLineInvariant(const FiniteSubgroupHandle& R, const BundleInvariant& inv) {
    return chernWith(buildRowCtx(R), inv);
}

long long k0OfInvariant(const FiniteSubgroupHandle& R, const BundleInvariant& inv) {
    RowCtx ctx = buildRowCtx(R);
    if (rowFiberKind(R) != FiberKind::ChernIndexed)
        fail("UnsupportedFamily",
             "Chern residues of invariant sums are defined for the Chern-indexed rows only "
             "(Zn, Dn, T, O, I)");
    ValidationResult v = validateAgainst(ctx, inv);
    if (!v.valid)
        fail("InvalidInvariant", "invariant violates clause " + v.clause + ": " + v.detail);
    LineData lines = lineDataFor(ctx);
    return k0With(ctx, lines, inv);
}

ClassificationReport classificationReport(const FiniteSubgroupHandle& R, int maxTotalDim,
                                          int weightWindow) {
    RowCtx ctx = buildRowCtx(R);
    ClassificationReport rep;
    rep.family = familyTag(R.family);
    rep.n = R.n;
    if (!R.oneDim()) {
        rep.abstractName = abstractGroupName(R.group);
        rep.complexName = complexModelName(buildComplex(R).complex);
    } else {
        rep.complexName = "-";
    }
    for (const PathPoint& pp : ctx.fd.path)
        rep.domainPath.push_back(pp.label.empty() ? pp.place.str() : pp.label);
    auto markerOf = [](const SlotCtx& s) {
        MarkerInfo m;
        m.pointLabel = s.pointLabel;
        m.place = s.place.str();
        if (s.finite) {
            m.stabilizer = abstractGroupName(s.group);
            m.order = s.group.size();
        } else {
            m.stabilizer = s.desc.str();
            m.order = 0;
        }
        return m;
    };
    for (const SlotCtx& s : ctx.slots) rep.markers.push_back(markerOf(s));
    for (const SlotCtx& s : ctx.polarTests) rep.markers.push_back(markerOf(s));
    rep.lR = ctx.fd.lR;
    rep.kind = rowFiberKind(R);
    rep.description = kindSummary(rep.kind);
    InvariantEnumeration en = enumerateWith(ctx, maxTotalDim, weightWindow);
    rep.truncated = en.truncated;
    rep.windowUsed = en.windowUsed;
    std::optional<LineData> lines;
    if (rep.kind == FiberKind::ChernIndexed) lines = lineDataFor(ctx);
    for (const BundleInvariant& inv : en.invariants) {
        ReportEntry e;
        e.invariant = inv;
        if (lines) e.k0 = k0With(ctx, *lines, inv);
        rep.invariants.push_back(std::move(e));
        std::vector<RepDecomposition> w = entriesOf(ctx, inv);
        if (entryDim(ctx.slots[0], w[0]) == 1) ++rep.dimOneCount;
    }
    return rep;
}

}  // namespace equivect
