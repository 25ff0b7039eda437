#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "equivect/chartheory.hpp"

using namespace equivect;

namespace {

std::string thrownErrorName(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const EngineError& e) {
        return e.name;
    }
    return "(no error)";
}

FiniteGroup wordsGroup(const AmbientTag& amb, const std::vector<std::string>& words) {
    std::vector<GroupElement> gens;
    for (const auto& w : words) gens.push_back(parseWord(w, amb));
    return closure(gens, amb);
}

const Cyclotomic kOne = Cyclotomic(Rational(1));
const Cyclotomic kZero = Cyclotomic();

/// Every legal finite classification row with axial parameter at most maxN.
std::vector<FiniteSubgroupHandle> finiteRows(int maxN) {
    std::vector<FiniteSubgroupHandle> rows;
    for (int n = 1; n <= maxN; ++n) rows.push_back(constructGroup(Family::Zn, n));
    for (int n = 2; n <= maxN; ++n) rows.push_back(constructGroup(Family::Dn, n));
    for (int n = 1; n <= maxN; ++n)
        if (n != 2) rows.push_back(constructGroup(Family::ZnxZ, n));
    for (int n = 1; n <= maxN; ++n) rows.push_back(constructGroup(Family::DnxZ, n));
    for (int n = 1; n <= maxN; ++n) rows.push_back(constructGroup(Family::AnMinusB, n));
    for (int n = 4; n <= maxN; n += 2) {
        rows.push_back(constructGroup(Family::MinusAn, n));
        rows.push_back(constructGroup(Family::MinusAnB, n));
        rows.push_back(constructGroup(Family::MinusAnMinusB, n));
    }
    for (Family f : {Family::T, Family::O, Family::I, Family::TMinusO0, Family::TxZ,
                     Family::OxZ, Family::IxZ})
        rows.push_back(constructGroup(f, 0));
    return rows;
}

}  // namespace

TEST_CASE("conjugacy classes partition the group with the identity class first") {
    for (const auto& row : finiteRows(6)) {
        ConjugacyClasses cc = conjugacyClasses(row.group);
        REQUIRE(cc.classCount() >= 1);
        CHECK(cc.classes[0].size() == 1);
        CHECK(cc.classes[0][0].isIdentity());
        std::size_t total = 0;
        for (int i = 0; i < cc.classCount(); ++i) {
            total += cc.classes[i].size();
            CHECK(row.group.size() % static_cast<int>(cc.classes[i].size()) == 0);
            for (const auto& g : cc.classes[i]) CHECK(cc.classOf(g) == i);
        }
        CHECK(total == row.group.elems.size());
    }
    // Class counts of the rotation polyhedra.
    CHECK(conjugacyClasses(constructGroup(Family::T, 0).group).classCount() == 4);
    CHECK(conjugacyClasses(constructGroup(Family::O, 0).group).classCount() == 5);
    CHECK(conjugacyClasses(constructGroup(Family::I, 0).group).classCount() == 5);
}

TEST_CASE("abstract type names across the families") {
    auto name = [](Family f, int n) { return abstractGroupName(constructGroup(f, n).group); };
    CHECK(name(Family::Zn, 5) == "C5");
    CHECK(name(Family::Dn, 4) == "D4");
    CHECK(name(Family::ZnxZ, 3) == "C6");    // odd: a single generator -a^? of full order
    CHECK(name(Family::ZnxZ, 4) == "C4xZ2");  // even: genuine product
    CHECK(name(Family::DnxZ, 3) == "D3xZ2");
    CHECK(name(Family::AnMinusB, 3) == "D3");
    CHECK(name(Family::MinusAn, 4) == "C4");
    CHECK(name(Family::MinusAnB, 4) == "D4");
    CHECK(name(Family::MinusAnMinusB, 4) == "D4");
    CHECK(name(Family::T, 0) == "A4");
    CHECK(name(Family::O, 0) == "S4");
    CHECK(name(Family::I, 0) == "A5");
    CHECK(name(Family::TMinusO0, 0) == "S4");
    CHECK(name(Family::TxZ, 0) == "A4xZ2");
    CHECK(name(Family::OxZ, 0) == "S4xZ2");
    CHECK(name(Family::IxZ, 0) == "A5xZ2");
    // Order-two groups are cyclic regardless of geometric origin.
    AmbientTag d6{AmbientKind::AxialDnxZ, 6};
    CHECK(abstractGroupName(wordsGroup(d6, {"b"})) == "C2");
    CHECK(abstractGroupName(wordsGroup(d6, {"-id"})) == "C2");
    // Klein groups: plain dihedral without -id, split product with it.
    CHECK(abstractGroupName(wordsGroup(d6, {"a^3", "b"})) == "D2");
    CHECK(abstractGroupName(wordsGroup(d6, {"b", "-id"})) == "C2xZ2");
}

TEST_CASE("irreducible tables: dimensions, labels, and the dimension identity") {
    auto z4 = constructGroup(Family::Zn, 4);
    auto iz4 = irreducibles(z4.group);
    REQUIRE(iz4.size() == 4);
    GroupElement a = parseWord("a", z4.amb);
    for (int k = 0; k < 4; ++k) {
        CHECK(iz4[k].label == "C4:w" + std::to_string(k));
        CHECK(iz4[k].valueAt(a) == Cyclotomic::root(4, k));
        CHECK(iz4[k].dimension() == kOne);
    }

    auto d3 = irreducibles(constructGroup(Family::Dn, 3).group);
    REQUIRE(d3.size() == 3);
    CHECK(d3[0].label == "D3:triv");
    CHECK(d3[1].label == "D3:sgn");
    CHECK(d3[2].label == "D3:V1");
    CHECK(d3[2].dimension() == Cyclotomic(Rational(2)));

    auto iI = irreducibles(constructGroup(Family::I, 0).group);
    REQUIRE(iI.size() == 5);
    const long long dims[5] = {1, 3, 3, 4, 5};
    for (int i = 0; i < 5; ++i) CHECK(iI[i].dimension() == Cyclotomic(Rational(dims[i])));

    auto iO = irreducibles(constructGroup(Family::O, 0).group);
    REQUIRE(iO.size() == 5);
    CHECK(iO[0].label == "S4:1");
    CHECK(iO[1].label == "S4:sgn");
    CHECK(iO[2].label == "S4:2");
    CHECK(iO[3].label == "S4:3");
    CHECK(iO[4].label == "S4:3p");

    auto iT = irreducibles(constructGroup(Family::T, 0).group);
    REQUIRE(iT.size() == 4);
    CHECK(iT[3].label == "A4:3");

    // Sum of squared dimensions equals the group order for every row, and
    // labels are pairwise distinct.
    for (const auto& row : finiteRows(8)) {
        auto table = irreducibles(row.group);
        Rational total(0);
        std::vector<std::string> labels;
        for (const auto& chi : table) {
            const Rational d = chi.dimension().asRational();
            total += d * d;
            labels.push_back(chi.label);
        }
        CHECK(total == Rational(row.group.size()));
        std::sort(labels.begin(), labels.end());
        CHECK(std::adjacent_find(labels.begin(), labels.end()) == labels.end());
    }
}

TEST_CASE("first and second orthogonality hold exactly for every row group") {
    for (const auto& row : finiteRows(8)) {
        auto table = irreducibles(row.group);
        ConjugacyClasses cc = conjugacyClasses(row.group);
        // Row orthogonality.
        for (std::size_t i = 0; i < table.size(); ++i)
            for (std::size_t j = i; j < table.size(); ++j)
                CHECK(innerProduct(table[i], table[j]) == (i == j ? kOne : kZero));
        // Column orthogonality: sum over characters of chi(g) conj(chi(h))
        // equals |G|/|class(g)| on the diagonal and vanishes off it.
        for (int p = 0; p < cc.classCount(); ++p)
            for (int q = 0; q < cc.classCount(); ++q) {
                Cyclotomic sum;
                for (const auto& chi : table)
                    sum = sum + chi.values[p] * chi.values[q].conj();
                Cyclotomic want = p == q ? Cyclotomic(Rational(
                                               row.group.size() /
                                               static_cast<long long>(cc.classes[p].size())))
                                         : kZero;
                CHECK(sum == want);
            }
    }
}

TEST_CASE("restriction transports values along class fusion") {
    auto d3 = constructGroup(Family::Dn, 3);
    auto table = irreducibles(d3.group);
    FiniteGroup z3 = wordsGroup(d3.amb, {"a"});

    Character r = restrictCharacter(table[2], z3);
    CHECK(r.label == "virtual");
    CHECK(decompose(r).str() == "C3:w1 + C3:w2");
    // The rotation generator carries trace 2cos(2pi/3).
    CHECK(r.valueAt(parseWord("a", d3.amb)) == Cyclotomic::cos2(3, 1));

    // Restriction to the trivial group is dim * trivial.
    FiniteGroup triv = closure({}, d3.amb);
    CHECK(decompose(restrictCharacter(table[2], triv)).str() == "2*C1:w0");
    CHECK(decompose(restrictCharacter(table[0], triv)).str() == "C1:w0");

    // Weight characters restrict to weight characters.
    auto z4 = constructGroup(Family::Zn, 4);
    FiniteGroup half = wordsGroup(z4.amb, {"a^2"});
    Character rw = restrictCharacter(irreducibleByLabel(z4.group, "C4:w1"), half);
    CHECK(rw.label == "C2:w1");

    // Restriction is dimension preserving and multiplicative over sums.
    auto iO = irreducibles(constructGroup(Family::O, 0).group);
    FiniteGroup tInO = standardSubgroup(Family::T, 0, AmbientTag{AmbientKind::PolyO, 1}).value();
    for (const auto& chi : iO) {
        Character rr = restrictCharacter(chi, tInO);
        CHECK(rr.dimension() == chi.dimension());
        CHECK(decompositionDim(tInO, decompose(rr)) ==
              static_cast<int>(chi.dimension().asRational().numerator()));
    }

    CHECK(thrownErrorName([&] {
              (void)restrictCharacter(table[0], constructGroup(Family::Zn, 5).group);
          }) == "NotASubgroup");
}

TEST_CASE("conjugation fixes inner elements and inverts cyclic weights under b") {
    auto z4 = constructGroup(Family::Zn, 4);
    Character w1 = irreducibleByLabel(z4.group, "C4:w1");

    // Conjugating by a member of the group leaves the class function alone.
    Character same = conjugateCharacter(w1, parseWord("a", z4.amb));
    CHECK(same.group == z4.group);
    CHECK(same.values == w1.values);

    // The half-turn b inverts the rotation, so weight 1 becomes weight -1.
    Character flipped = conjugateCharacter(w1, parseWord("b", z4.amb));
    CHECK(flipped.group == z4.group);
    CHECK(flipped.label == "C4:w3");

    // A conjugator from a finer commensurable ambient is lifted and applied.
    AmbientTag d8{AmbientKind::AxialDnxZ, 8};
    Character viaFiner = conjugateCharacter(w1, parseWord("b", d8));
    CHECK(viaFiner.label == "C4:w3");

    // Characters fixed under the extending group stay fixed: the 3-dim
    // character of the tetrahedral group under any octahedral conjugator.
    AmbientTag polyO{AmbientKind::PolyO, 1};
    FiniteGroup T = standardSubgroup(Family::T, 0, polyO).value();
    Character t3 = irreducibleByLabel(T, "A4:3");
    for (const auto& g : constructGroup(Family::O, 0).group.elems) {
        Character moved = conjugateCharacter(t3, g);
        CHECK(moved.group == T);
        CHECK(moved.values == t3.values);
    }

    CHECK(thrownErrorName([&] {
              (void)conjugateCharacter(w1, constructGroup(Family::O, 0).group.elems[3]);
          }) == "AmbientMismatch");
}

TEST_CASE("decomposition: exact multiplicities, assembly, and rejection of virtual input") {
    auto o = constructGroup(Family::O, 0);
    auto table = irreducibles(o.group);

    // The regular character decomposes with multiplicity = dimension.
    ConjugacyClasses cc = conjugacyClasses(o.group);
    Character reg;
    reg.group = o.group;
    reg.values.assign(cc.classCount(), kZero);
    reg.values[0] = Cyclotomic(Rational(o.group.size()));
    RepDecomposition d = decompose(reg);
    REQUIRE(d.parts.size() == table.size());
    for (const auto& chi : table)
        CHECK(d.multiplicityOf(chi.label) ==
              static_cast<int>(chi.dimension().asRational().numerator()));
    CHECK(decompositionDim(o.group, d) == o.group.size());

    // assemble(decompose(x)) reproduces x.
    Character sum;
    sum.group = o.group;
    sum.values.assign(cc.classCount(), kZero);
    for (int i = 0; i < cc.classCount(); ++i)
        sum.values[i] = table[2].values[i] + Rational(2) * table[4].values[i];
    RepDecomposition parts = decompose(sum);
    CHECK(parts.str() == "S4:2 + 2*S4:3p");
    CHECK(assembleCharacter(o.group, parts).values == sum.values);
    CHECK(assembleCharacter(o.group, parts).label == "virtual");
    CHECK(assembleCharacter(o.group, RepDecomposition{{{"S4:2", 1}}}).label == "S4:2");

    // Negative and fractional combinations are refused by name.
    Character neg;
    neg.group = o.group;
    for (int i = 0; i < cc.classCount(); ++i)
        neg.values.push_back(table[0].values[i] - table[1].values[i]);
    CHECK(thrownErrorName([&] { (void)decompose(neg); }) == "PreconditionViolation");
    Character frac;
    frac.group = o.group;
    for (int i = 0; i < cc.classCount(); ++i)
        frac.values.push_back(Rational(1, 2) * table[2].values[i]);
    CHECK(thrownErrorName([&] { (void)decompose(frac); }) == "PreconditionViolation");

    CHECK(RepDecomposition{}.str() == "0");
    CHECK(thrownErrorName([&] {
              (void)irreducibleByLabel(o.group, "S4:bogus");
          }) == "PreconditionViolation");
}

TEST_CASE("induction and Frobenius reciprocity against explicit extensions") {
    auto z6 = constructGroup(Family::Zn, 6);
    FiniteGroup z3 = wordsGroup(z6.amb, {"a^2"});
    Character u = irreducibleByLabel(z3, "C3:w1");

    Character ind = induceCharacter(u, z6.group);
    CHECK(ind.dimension() == Cyclotomic(Rational(2)));
    CHECK(decompose(ind).str() == "C6:w1 + C6:w4");

    auto exts = extensionsOfIrreducible(u, z6.group);
    REQUIRE(exts.size() == 2);
    for (const auto& e : exts) CHECK(innerProduct(e, ind) == kOne);

    // Reciprocity across a non-abelian pair: inducing the sign character of
    // the flip subgroup up to the full dihedral group.
    auto d4 = constructGroup(Family::Dn, 4);
    FiniteGroup flip = wordsGroup(d4.amb, {"b"});
    Character sgnFlip = irreducibleByLabel(flip, "C2:w1");
    Character indFlip = induceCharacter(sgnFlip, d4.group);
    CHECK(indFlip.dimension() == Cyclotomic(Rational(4)));
    for (const auto& chi : irreducibles(d4.group)) {
        Cyclotomic lhs = innerProduct(chi, indFlip);
        Cyclotomic rhs = innerProduct(restrictCharacter(chi, flip), sgnFlip);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("extensions along cyclic quotients: count, order, and distinctness") {
    // Half rotation subgroup inside the full rotation-reflection cyclic group.
    auto z4 = constructGroup(Family::Zn, 4);
    FiniteGroup n0 = wordsGroup(z4.amb, {"a^2"});
    FiniteGroup n2 = wordsGroup(z4.amb, {"-a"});
    auto exts = extensionsOfIrreducible(irreducibleByLabel(n0, "C2:w1"), n2);
    REQUIRE(exts.size() == 2);
    CHECK(exts[0].label == "C4:w1");
    CHECK(exts[1].label == "C4:w3");
    for (const auto& e : exts)
        CHECK(restrictCharacter(e, n0).label == "C2:w1");
    CHECK(!(exts[0].values == exts[1].values));

    // Weight 1 of Z3 inside Z6: entry l is entry 0 twisted by the quotient
    // pullback of weight l.
    auto z6 = constructGroup(Family::Zn, 6);
    FiniteGroup z3 = wordsGroup(z6.amb, {"a^2"});
    auto e6 = extensionsOfIrreducible(irreducibleByLabel(z3, "C3:w1"), z6.group);
    REQUIRE(e6.size() == 2);
    CHECK(e6[0].label == "C6:w1");
    CHECK(e6[1].label == "C6:w4");

    // Trivial source character: the m pullback characters of the quotient.
    auto eT = extensionsOfIrreducible(irreducibleByLabel(z3, "C3:w0"), z6.group);
    REQUIRE(eT.size() == 2);
    CHECK(eT[0].label == "C6:w0");
    CHECK(eT[1].label == "C6:w3");

    // Fixed irreducible along a cyclic quotient of order m always has m
    // extensions; sweep rotation pairs across n <= 8.
    for (int n = 1; n <= 8; ++n) {
        auto zn = constructGroup(Family::Zn, n);
        for (int m = 2; m <= 4; ++m) {
            auto big = constructGroup(Family::Zn, n * m);
            FiniteGroup sub = wordsGroup(big.amb, {"a^" + std::to_string(m)});
            for (const auto& u : irreducibles(sub)) {
                auto es = extensionsOfIrreducible(u, big.group);
                CHECK(es.size() == static_cast<std::size_t>(m));
                for (const auto& e : es) CHECK(restrictCharacter(e, sub).values == u.values);
                for (std::size_t i = 0; i < es.size(); ++i)
                    for (std::size_t j = i + 1; j < es.size(); ++j)
                        CHECK(!(es[i].values == es[j].values));
            }
        }
        (void)zn;
    }

    // A two-dimensional character that does not extend: the non-fixed weight
    // of the rotation part inside the dihedral group restricts from V1 only
    // together with its mirror, so a lone weight has no extension.
    auto d3 = constructGroup(Family::Dn, 3);
    FiniteGroup rot3 = wordsGroup(d3.amb, {"a"});
    CHECK(extensionsOfIrreducible(irreducibleByLabel(rot3, "C3:w1"), d3.group).empty());

    // Error names: not a subgroup, and a non-cyclic quotient.
    auto d2 = constructGroup(Family::Dn, 2);
    CHECK(thrownErrorName([&] {
              (void)extensionsOfIrreducible(irreducibleByLabel(rot3, "C3:w0"),
                                            constructGroup(Family::Zn, 5).group);
          }) == "NotASubgroup");
    FiniteGroup trivD2 = closure({}, d2.amb);
    CHECK(thrownErrorName([&] {
              (void)extensionsOfIrreducible(irreducibleByLabel(trivD2, "C1:w0"), d2.group);
          }) == "QuotientNotCyclic");
}

TEST_CASE("extension sets solve the restriction system deterministically") {
    auto z6 = constructGroup(Family::Zn, 6);
    FiniteGroup z3 = wordsGroup(z6.amb, {"a^2"});

    // Dimension zero extends to exactly the empty representation.
    auto none = extensionSet(z3, RepDecomposition{}, z6.group);
    REQUIRE(none.size() == 1);
    CHECK(none[0].empty());

    // Isotypical fixed source of multiplicity 2 along a quotient of order 2:
    // the three splittings between the two extensions.
    RepDecomposition twice{{{"C3:w1", 2}}};
    auto sets = extensionSet(z3, twice, z6.group);
    REQUIRE(sets.size() == 3);
    CHECK(sets[0].str() == "C6:w1 + C6:w4");
    CHECK(sets[1].str() == "2*C6:w1");
    CHECK(sets[2].str() == "2*C6:w4");
    for (const auto& s : sets) {
        Character assembled = assembleCharacter(z6.group, s);
        CHECK(decompose(restrictCharacter(assembled, z3)) == twice);
    }

    // Brute-force cross-check: enumerate all multisets of irreducibles of the
    // dihedral group with total dimension <= 4 and keep those restricting to
    // the target.
    auto d4 = constructGroup(Family::Dn, 4);
    FiniteGroup flip = wordsGroup(d4.amb, {"b"});
    RepDecomposition target{{{"C2:w0", 1}, {"C2:w1", 1}}};
    auto viaSystem = extensionSet(flip, target, d4.group);
    std::vector<RepDecomposition> viaBrute;
    auto table = irreducibles(d4.group);
    const int total = decompositionDim(flip, target);
    std::vector<int> counts(table.size(), 0);
    auto enumerate = [&](auto&& self, std::size_t i, int dimLeft) -> void {
        if (i == table.size()) {
            if (dimLeft != 0) return;
            RepDecomposition cand;
            for (std::size_t t = 0; t < table.size(); ++t)
                if (counts[t]) cand.parts.emplace_back(table[t].label, counts[t]);
            std::sort(cand.parts.begin(), cand.parts.end());
            if (decompose(restrictCharacter(assembleCharacter(d4.group, cand), flip)) == target)
                viaBrute.push_back(std::move(cand));
            return;
        }
        const int d = static_cast<int>(table[i].dimension().asRational().numerator());
        for (int c = 0; c * d <= dimLeft; ++c) {
            counts[i] = c;
            self(self, i + 1, dimLeft - c * d);
        }
        counts[i] = 0;
    };
    enumerate(enumerate, 0, total);
    std::sort(viaBrute.begin(), viaBrute.end());
    CHECK(viaSystem == viaBrute);
    CHECK(!viaSystem.empty());

    CHECK(thrownErrorName([&] {
              (void)extensionSet(flip, RepDecomposition{{{"C2:bogus", 1}}}, d4.group);
          }) == "PreconditionViolation");
}

TEST_CASE("component counts of the gluing space") {
    auto z6 = constructGroup(Family::Zn, 6);
    FiniteGroup z3 = wordsGroup(z6.amb, {"a^2"});

    FData transitive;
    transitive.N2 = z6.group;
    transitive.N1 = z3;
    transitive.fiber = RepDecomposition{{{"C3:w1", 1}}};
    transitive.transitive = true;
    CHECK(countComponentsOfA(transitive) == 2);

    FData split;
    split.N2 = z3;
    split.N1 = z3;
    split.fiber = RepDecomposition{{{"C3:w1", 1}}};
    split.otherFiber = split.fiber;
    CHECK(countComponentsOfA(split) == 1);
    split.otherFiber = RepDecomposition{{{"C3:w2", 1}}};
    CHECK(countComponentsOfA(split) == 0);

    // Inconsistent data is refused by name.
    FData noSecond = split;
    noSecond.otherFiber.reset();
    CHECK(thrownErrorName([&] { (void)countComponentsOfA(noSecond); }) == "ConditionViolation");
    FData extraFiber = transitive;
    extraFiber.otherFiber = transitive.fiber;
    CHECK(thrownErrorName([&] { (void)countComponentsOfA(extraFiber); }) == "ConditionViolation");
    FData wrongIndex = transitive;
    wrongIndex.N1 = z6.group;
    CHECK(thrownErrorName([&] { (void)countComponentsOfA(wrongIndex); }) == "ConditionViolation");
}

TEST_CASE("bounded windows of one-parameter irreducibles and their restrictions") {
    auto so2 = oneDimIrreducibles(Family::SO2, 2);
    REQUIRE(so2.size() == 5);
    CHECK(so2.front().label == "SO2:w-2");
    CHECK(so2.back().label == "SO2:w2");

    auto o2 = oneDimIrreducibles(Family::O2, 3);
    REQUIRE(o2.size() == 5);
    CHECK(o2[0].label == "O2:triv");
    CHECK(o2[1].label == "O2:sgn");
    CHECK(o2[2].label == "O2:V1");
    CHECK(o2[2].dim == 2);

    auto so3 = oneDimIrreducibles(Family::SO3, 2);
    REQUIRE(so3.size() == 3);
    CHECK(so3[2].label == "SO3:V2");
    CHECK(so3[2].dim == 5);

    CHECK(oneDimIrreducibles(Family::O3, 1).size() == 4);
    CHECK(oneDimIrreducibles(Family::SO2MinusA2, 1).size() == 6);
    CHECK(oneDimIrreducibles(Family::O2xZ, 1).size() == 6);
    CHECK(oneDimIrreducibles(Family::SO2MinusB, 2).size() == 4);

    CHECK(thrownErrorName([&] { (void)oneDimIrreducibles(Family::Dn, 3); }) ==
          "UnsupportedFamily");

    // Restrictions to finite rotation subgroups of the circle.
    AmbientTag od{AmbientKind::OneDim, 1};
    FiniteGroup z4 = closure({GroupElement::oneDim(0, 0, Rational(1, 4))}, od);
    Character w1 = restrictOneDimIrrep(so2[3], z4);  // weight +1
    CHECK(w1.dimension() == kOne);
    CHECK(w1.valueAt(GroupElement::oneDim(0, 0, Rational(1, 4))) == Cyclotomic::root(4, 1));

    // The planar 2-dimensional type restricted to a Klein group splits into
    // the two linear characters that are nontrivial on the rotation.
    FiniteGroup klein = closure({GroupElement::oneDim(0, 0, Rational(1, 2)),
                                 GroupElement::oneDim(0, 1, Rational(0))},
                                od);
    Character v1 = restrictOneDimIrrep(o2[2], klein);
    CHECK(v1.dimension() == Cyclotomic(Rational(2)));
    CHECK(decompose(v1).str() == "D2:sgnp + D2:sgnpp");

    // The 3-dimensional rotation type restricted to Z3 gives weights -1,0,1.
    FiniteGroup z3 = closure({GroupElement::oneDim(0, 0, Rational(1, 3))}, od);
    Character r3 = restrictOneDimIrrep(so3[1], z3);
    CHECK(decompose(r3).str() == "C3:w0 + C3:w1 + C3:w2");

    // Value at a horizontal half turn is the alternating trace.
    FiniteGroup flip = closure({GroupElement::oneDim(0, 1, Rational(0))}, od);
    CHECK(restrictOneDimIrrep(so3[1], flip).valueAt(GroupElement::oneDim(0, 1, Rational(0))) ==
          Cyclotomic(Rational(-1)));
    CHECK(restrictOneDimIrrep(so3[2], flip).valueAt(GroupElement::oneDim(0, 1, Rational(0))) ==
          kOne);

    // The sign suffix flips values on the -id coset.
    auto o3 = oneDimIrreducibles(Family::O3, 1);
    FiniteGroup withMinus = closure({GroupElement::oneDim(1, 0, Rational(0))}, od);
    Character plus = restrictOneDimIrrep(o3[0], withMinus);   // V0:+
    Character minus = restrictOneDimIrrep(o3[1], withMinus);  // V0:-
    CHECK(plus.valueAt(GroupElement::oneDim(1, 0, Rational(0))) == kOne);
    CHECK(minus.valueAt(GroupElement::oneDim(1, 0, Rational(0))) == Cyclotomic(Rational(-1)));

    // Elements outside the named family are refused.
    CHECK(thrownErrorName([&] { (void)restrictOneDimIrrep(so2[3], klein); }) == "NotASubgroup");
    CHECK(thrownErrorName([&] {
              (void)restrictOneDimIrrep(so2[3], constructGroup(Family::Zn, 3).group);
          }) == "NotASubgroup");
}

TEST_CASE("interchange aliases for order-two flip stabilizers") {
    auto d4 = constructGroup(Family::Dn, 4);
    FiniteGroup flip = wordsGroup(d4.amb, {"b"});
    CHECK(irreducibleByLabel(flip, "D1:triv").label == "C2:w0");
    CHECK(irreducibleByLabel(flip, "D1:sgn").label == "C2:w1");
    // The aliases also work inside extension targets.
    RepDecomposition viaAlias{{{"D1:sgn", 1}}};
    RepDecomposition canonical{{{"C2:w1", 1}}};
    CHECK(extensionSet(flip, viaAlias, d4.group) == extensionSet(flip, canonical, d4.group));
}
