#include "equivect/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "equivect/errors.hpp"
#include "equivect/numeric.hpp"

namespace equivect {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

long long modPos(long long a, long long p) { return ((a % p) + p) % p; }

bool oracleSupports(Family f, int n) {
    switch (f) {
        case Family::Zn: return n >= 1;
        case Family::Dn: return n >= 2;
        case Family::ZnxZ: return n >= 1 && n % 2 == 1;
        case Family::MinusAn: return n >= 4 && n % 4 == 0;
        default: return false;
    }
}

/// Weight of a one-dimensional character read off its value at an explicit
/// rotation of the given order (independent of any label convention).
long long weightAtRotation(const Character& chi, const GroupElement& rot, int order) {
    const cd z = chi.valueAt(rot).toComplex();
    for (int l = 0; l < order; ++l) {
        if (std::abs(z - std::polar(1.0, 2.0 * kPi * l / order)) < 1e-6) return l;
    }
    fail("PreconditionViolation",
         "character value at the rotation is not an order-" + std::to_string(order) +
             " root of unity");
}

/// Sign exponent (0 or 1) of a one-dimensional character at an involution.
int signAtElement(const Character& chi, const GroupElement& g) {
    const cd z = chi.valueAt(g).toComplex();
    if (std::abs(z - cd(1.0, 0.0)) < 1e-6) return 0;
    if (std::abs(z + cd(1.0, 0.0)) < 1e-6) return 1;
    fail("PreconditionViolation", "marker entry value at the involution is not +-1");
}

const GroupElement& nonIdentityElement(const FiniteGroup& G) {
    for (const auto& g : G.elems)
        if (!g.isIdentity()) return g;
    fail("PreconditionViolation", "trivial group has no non-identity element");
}

void checkArrayShape(const ClutchingData& data) {
    const int m = data.arcCount, k = data.samplesPerArc;
    bool ok = m >= 1 && k >= 1 && static_cast<int>(data.south.size()) == m &&
              static_cast<int>(data.north.size()) == m;
    for (int i = 0; ok && i < m; ++i)
        ok = static_cast<int>(data.south[i].size()) == k + 1 &&
             static_cast<int>(data.north[i].size()) == k + 1;
    if (!ok) fail("PreconditionViolation", "malformed clutching data arrays");
}

/// Largest defect of the inverse-pairing condition (N1), including unit
/// modulus of the southern copy.
double inversePairingDefect(const ClutchingData& data) {
    double worst = 0.0;
    for (int i = 0; i < data.arcCount; ++i)
        for (int j = 0; j <= data.samplesPerArc; ++j) {
            const cd s = data.south[i][j];
            worst = std::max(worst, std::abs(std::abs(s) - 1.0));
            worst = std::max(worst, std::abs(s * data.north[i][j] - cd(1.0, 0.0)));
        }
    return worst;
}

/// Largest discontinuity at an arc boundary (the vertex condition N2 on the
/// equator circle).
double vertexDefect(const ClutchingData& data) {
    double worst = 0.0;
    for (int i = 0; i < data.arcCount; ++i) {
        const cd end = data.south[i][data.samplesPerArc];
        const cd next = data.south[(i + 1) % data.arcCount][0];
        worst = std::max(worst, std::abs(end - next));
    }
    return worst;
}

}  // namespace

CircleElementAction equatorAction(const GroupElement& g, int arcCount) {
    if (arcCount < 1) fail("PreconditionViolation", "arc count must be positive");
    const PointRef img0 = applyToPoint(g, PointRef::equator(Rational(0)));
    if (img0.kind != PointRef::Kind::Equator)
        fail("PreconditionViolation", "element does not preserve the equator circle");
    const Rational arcs = img0.q * Rational(arcCount);
    if (arcs.denominator() != 1)
        fail("PreconditionViolation", "element does not preserve the arc grid");

    CircleElementAction act;
    act.arcShift = modll(arcs.numerator(), arcCount);

    const Rational probe(1, 4LL * arcCount);
    const PointRef imgP = applyToPoint(g, PointRef::equator(probe));
    if (imgP.kind != PointRef::Kind::Equator)
        fail("PreconditionViolation", "element does not preserve the equator circle");
    if (mod1(imgP.q - img0.q) == probe)
        act.orientation = 1;
    else if (mod1(img0.q - imgP.q) == probe)
        act.orientation = -1;
    else
        fail("PreconditionViolation", "element action on the equator is not rigid");

    const PointRef imgS = applyToPoint(g, PointRef::poleS());
    if (imgS.kind == PointRef::Kind::PoleN)
        act.swapsPoles = true;
    else if (imgS.kind != PointRef::Kind::PoleS)
        fail("PreconditionViolation", "element moves the poles off the axis");
    return act;
}

ClutchingData buildLineClutching(const FiniteSubgroupHandle& R, const BundleInvariant& inv,
                                 int samplesPerArc, int sigmaLoops) {
    const Family f = R.family;
    const int n = R.n;
    if (!oracleSupports(f, n))
        fail("UnsupportedFamily",
             "no closed-form clutching construction for row " + familyTag(f) +
                 (n > 0 ? " n=" + std::to_string(n) : ""));
    if (samplesPerArc < 4 || samplesPerArc % 4 != 0)
        fail("PreconditionViolation", "samples per arc must be a positive multiple of four");
    if (inv.rankScale != 1)
        fail("InvariantMismatch", "the closed forms realize scale-1 invariants only");
    if (invariantRank(R, inv) != 1)
        fail("InvariantMismatch", "the closed forms realize one-dimensional invariants only");
    const ValidationResult vr = validateInvariant(R, inv);
    if (!vr.valid)
        fail("InvariantMismatch",
             "invariant violates condition " + vr.clause +
                 (vr.detail.empty() ? "" : ": " + vr.detail));

    const ComplexWithAction cw = buildComplex(R);
    const FundamentalDomainData fd = fundamentalDomain(R);
    const int m = cw.complex.labelPeriod;
    if (m != (f == Family::ZnxZ ? 2 * n : n))
        fail("PreconditionViolation", "unexpected arc count on the row's sphere model");

    ClutchingData data;
    data.family = f;
    data.n = n;
    data.arcCount = m;
    data.samplesPerArc = samplesPerArc;
    data.sigmaLoops = sigmaLoops;
    data.lR = fd.lR;
    data.invariant = inv;
    data.seedSpan = (f == Family::Dn) ? 0.5 : 1.0;

    const int k = samplesPerArc;
    const long long P = static_cast<long long>(m) * k;
    const int seedLen = (f == Family::Dn) ? k / 2 : k;

    // Structure scalars of the construction, read off the invariant entries
    // by evaluating their characters at explicit elements (rotation by one
    // n-th of a turn; the involution generating a reflection marker
    // stabilizer), so no label convention enters.
    long long lS = 0, lN = 0;
    long long tau = 0;
    double eta = 1.0;
    if (f == Family::Zn || f == Family::Dn) {
        if (R.amb.N % n != 0)
            fail("PreconditionViolation", "ambient rotation order does not contain the row's");
        const GroupElement rot = GroupElement::axial(R.amb.N, 0, 0, R.amb.N / n);
        if (f == Family::Zn) {
            lS = weightAtRotation(assembleCharacter(R.group, inv.wS), rot, n);
            lN = weightAtRotation(assembleCharacter(R.group, inv.wN), rot, n);
        } else {
            const PointStabilizer stM = stabilizerOfPoint(R, "d-1");
            lS = weightAtRotation(assembleCharacter(stM.group, inv.wDm1), rot, n);
            const PointStabilizer st0 = stabilizerOfPoint(R, "d0");
            const PointStabilizer st1 = stabilizerOfPoint(R, "d1");
            const int eps0 = signAtElement(assembleCharacter(st0.group, inv.wD0),
                                           nonIdentityElement(st0.group));
            const int eps1 = signAtElement(assembleCharacter(st1.group, inv.wD1),
                                           nonIdentityElement(st1.group));
            eta = eps0 == 1 ? -1.0 : 1.0;
            tau = eps0 != eps1 ? n / 2 : 0;
        }
    }

    // Equivariance factors per group element.  Rotation rows: the weight
    // difference accumulated along the element's arc shift; dihedral rows:
    // the same exponent -2*lS per shifted arc for rotations and reflections
    // alike; the remaining two rows glue with factor one everywhere.
    const auto& elems = R.group.elems;
    std::vector<CircleElementAction> acts;
    acts.reserve(elems.size());
    data.elementFactor.resize(elems.size());
    for (size_t gi = 0; gi < elems.size(); ++gi) {
        acts.push_back(equatorAction(elems[gi], m));
        const double j = static_cast<double>(acts[gi].arcShift);
        cd mu(1.0, 0.0);
        if (f == Family::Zn)
            mu = std::polar(1.0, 2.0 * kPi * j * static_cast<double>(lN - lS) / n);
        else if (f == Family::Dn)
            mu = std::polar(1.0, -4.0 * kPi * j * static_cast<double>(lS) / n);
        data.elementFactor[gi] = mu;
    }

    // Seed values on the fundamental arc, with the optional loop surgery
    // composed into its first half.
    const auto formula = [&](double t) -> cd {
        switch (f) {
            case Family::Zn:
                return std::polar(1.0, 2.0 * kPi * static_cast<double>(lN - lS) * t / n);
            case Family::Dn:
                return eta * std::polar(1.0, -4.0 * kPi * t * static_cast<double>(lS + tau) / n);
            default:
                return cd(1.0, 0.0);
        }
    };
    data.seed.resize(seedLen + 1);
    for (int q = 0; q <= seedLen; ++q) {
        if (sigmaLoops == 0)
            data.seed[q] = formula(static_cast<double>(q) / k);
        else if (2 * q <= seedLen)
            data.seed[q] = formula(0.0) * std::polar(1.0, 4.0 * kPi * sigmaLoops *
                                                              static_cast<double>(q) / seedLen);
        else
            data.seed[q] = formula(static_cast<double>(2 * q - seedLen) / k);
    }

    // Orbit fill: each sample takes its value from the first element whose
    // inverse maps it into the seed arc.
    std::vector<cd> values(P);
    for (long long p = 0; p < P; ++p) {
        bool found = false;
        for (size_t gi = 0; gi < elems.size() && !found; ++gi) {
            const CircleElementAction& a = acts[gi];
            const long long p0 = modPos(a.orientation * (p - a.arcShift * k), P);
            if (p0 <= seedLen) {
                cd v = data.seed[p0];
                if (a.swapsPoles) v = std::conj(v);
                values[p] = data.elementFactor[gi] * v;
                found = true;
            }
        }
        if (!found)
            fail("PreconditionViolation", "seed arc orbit does not cover the equator");
    }

    data.south.assign(m, std::vector<cd>(k + 1));
    data.north.assign(m, std::vector<cd>(k + 1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= k; ++j) {
            const cd v = values[(static_cast<long long>(i) * k + j) % P];
            data.south[i][j] = v;
            data.north[i][j] = std::conj(v);
        }
    return data;
}

ClutchingCheck verifyClutching(const FiniteSubgroupHandle& R, const ClutchingData& data) {
    if (R.family != data.family || R.n != data.n)
        fail("PreconditionViolation", "row does not match the clutching data");
    checkArrayShape(data);
    if (data.elementFactor.size() != R.group.elems.size())
        fail("PreconditionViolation", "equivariance factor table does not match the row");

    ClutchingCheck chk;
    chk.inverseDefect = inversePairingDefect(data);
    chk.vertexDefect = vertexDefect(data);

    const int m = data.arcCount, k = data.samplesPerArc;
    const long long P = static_cast<long long>(m) * k;
    const auto at = [&](long long p) { return data.south[p / k][p % k]; };
    for (size_t gi = 0; gi < R.group.elems.size(); ++gi) {
        const CircleElementAction act = equatorAction(R.group.elems[gi], m);
        for (long long p = 0; p < P; ++p) {
            const long long q = modPos(act.orientation * p + act.arcShift * k, P);
            cd v = at(p);
            if (act.swapsPoles) v = std::conj(v);
            const double defect = std::abs(at(q) - data.elementFactor[gi] * v);
            chk.equivarianceDefect = std::max(chk.equivarianceDefect, defect);
        }
    }

    if (chk.inverseDefect > kClutchingTolerance) {
        chk.ok = false;
        chk.failedCondition = "N1";
    } else if (chk.vertexDefect > kClutchingTolerance) {
        chk.ok = false;
        chk.failedCondition = "N2";
    } else if (chk.equivarianceDefect > kClutchingTolerance) {
        chk.ok = false;
        chk.failedCondition = "E1";
    }
    return chk;
}

DegreeResult degree(const ClutchingData& data, const EquivComplex& K) {
    checkArrayShape(data);
    if (K.model != ComplexModel::Polygon)
        fail("PreconditionViolation", "clutching data lives on the polygon models");
    if (K.labelPeriod != data.arcCount)
        fail("PreconditionViolation", "complex arc count does not match the clutching data");
    if (inversePairingDefect(data) > kClutchingTolerance)
        fail("PreconditionViolation", "inverse pairing violated beyond tolerance");
    if (vertexDefect(data) > kClutchingTolerance)
        fail("PreconditionViolation", "vertex continuity violated beyond tolerance");

    double turns = 0.0;
    for (int i = 0; i < data.arcCount; ++i)
        for (int j = 0; j < data.samplesPerArc; ++j)
            turns += std::arg(data.south[i][j + 1] * std::conj(data.south[i][j]));
    turns /= 2.0 * kPi;

    const long long rounded = std::llround(turns);
    const double residual = std::abs(turns - static_cast<double>(rounded));
    if (residual >= kWindingResidualBound)
        fail("WindingResidualTooLarge",
             "winding sum " + std::to_string(turns) + " misses every integer by " +
                 std::to_string(residual));

    DegreeResult res;
    res.total = rounded;
    res.perFace = {0, rounded};
    res.maxResidual = residual;
    return res;
}

void writeClutchingCsv(const ClutchingData& data, std::ostream& out) {
    out << "copy,arc,sample,t,re,im\n";
    char line[160];
    for (int c = 0; c < 2; ++c) {
        const auto& copy = c == 0 ? data.south : data.north;
        const char* name = c == 0 ? "south" : "north";
        for (size_t i = 0; i < copy.size(); ++i)
            for (size_t j = 0; j < copy[i].size(); ++j) {
                const double t =
                    static_cast<double>(i) + static_cast<double>(j) / data.samplesPerArc;
                std::snprintf(line, sizeof line, "%s,%zu,%zu,%.17g,%.17g,%.17g\n", name, i, j,
                              t, copy[i][j].real(), copy[i][j].imag());
                out << line;
            }
    }
}

std::vector<RepDecomposition> bruteForceExtensions(const FiniteGroup& N1,
                                                   const RepDecomposition& W,
                                                   const FiniteGroup& N2) {
    const int dimW = decompositionDim(N1, W);
    if (dimW > kBruteForceDimCap)
        fail("CapExceeded", "total dimension " + std::to_string(dimW) +
                                " exceeds the brute-force cap " +
                                std::to_string(kBruteForceDimCap));
    if (N2.size() > kBruteForceGroupCap)
        fail("CapExceeded", "group order " + std::to_string(N2.size()) +
                                " exceeds the brute-force cap " +
                                std::to_string(kBruteForceGroupCap));
    if (!N1.isSubsetOf(N2))
        fail("NotASubgroup", "the restriction target is not a subgroup of the extension group");

    const Character target = assembleCharacter(N1, W);
    const std::vector<Character> irr2 = irreducibles(N2);
    std::vector<Character> restricted;
    std::vector<int> dims;
    restricted.reserve(irr2.size());
    for (const Character& chi : irr2) {
        restricted.push_back(restrictCharacter(chi, N1));
        dims.push_back(static_cast<int>(std::llround(chi.dimension().toComplex().real())));
    }

    const size_t classCount = target.values.size();
    std::vector<RepDecomposition> out;
    std::vector<int> mult(irr2.size(), 0);
    const std::function<void(size_t, int)> search = [&](size_t idx, int remaining) {
        if (idx == irr2.size()) {
            if (remaining != 0) return;
            for (size_t c = 0; c < classCount; ++c) {
                Cyclotomic sum;
                for (size_t i = 0; i < irr2.size(); ++i)
                    if (mult[i] > 0) sum = sum + Rational(mult[i]) * restricted[i].values[c];
                if (!(sum == target.values[c])) return;
            }
            RepDecomposition dec;
            for (size_t i = 0; i < irr2.size(); ++i)
                if (mult[i] > 0) dec.parts.emplace_back(irr2[i].label, mult[i]);
            std::sort(dec.parts.begin(), dec.parts.end());
            out.push_back(std::move(dec));
            return;
        }
        for (int c = 0; c * dims[idx] <= remaining; ++c) {
            mult[idx] = c;
            search(idx + 1, remaining - c * dims[idx]);
        }
        mult[idx] = 0;
    };
    search(0, dimW);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace equivect
