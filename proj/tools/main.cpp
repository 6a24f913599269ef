// Command-line front end: JSON in, reports/SVG out. Every subcommand
// embeds its run manifest verbatim in the output, writes files
// atomically, and draws all randomness from the single manifest seed.
// Exit codes: 0 success, 1 error (including schema violations, reported
// with JSON-pointer paths), 2 inconclusive at this resolution.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <carab/bounds.hpp>
#include <carab/convergence.hpp>
#include <carab/extremal.hpp>
#include <carab/meshcurve.hpp>
#include <carab/svg.hpp>

using nlohmann::json;
using namespace carab;

namespace {

constexpr const char* kVersion = "1.0.0";

struct SchemaError : std::runtime_error {
    SchemaError(const std::string& ptr, const std::string& msg)
        : std::runtime_error("schema violation at " + ptr + ": " + msg) {}
};

// ---------------------------------------------------------------------------
// JSON parsing with pointer paths
// ---------------------------------------------------------------------------

double asNumber(const json& j, const std::string& ptr) {
    if (!j.is_number()) throw SchemaError(ptr, "expected a number");
    return j.get<double>();
}

cplx asPoint(const json& j, const std::string& ptr) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(ptr, "expected [x, y]");
    return {asNumber(j[0], ptr + "/0"), asNumber(j[1], ptr + "/1")};
}

const json& field(const json& j, const char* name, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError(ptr + "/" + name, "missing required field");
    return *it;
}

CompactSet parseComponent(const json& j, const std::string& ptr) {
    const json& t = field(j, "type", ptr);
    if (!t.is_string()) throw SchemaError(ptr + "/type", "expected a string");
    const std::string type = t.get<std::string>();
    if (type == "disc" || type == "disc_complement") {
        const cplx c = asPoint(field(j, "center", ptr), ptr + "/center");
        const double r = asNumber(field(j, "radius", ptr), ptr + "/radius");
        if (r <= 0) throw SchemaError(ptr + "/radius", "radius must be positive");
        return type == "disc" ? CompactSet::disc(c, r) : CompactSet::discComplement(c, r);
    }
    if (type == "polygon") {
        const json& v = field(j, "vertices", ptr);
        if (!v.is_array() || v.size() < 3)
            throw SchemaError(ptr + "/vertices", "expected at least 3 vertices");
        std::vector<cplx> verts;
        for (size_t i = 0; i < v.size(); ++i)
            verts.push_back(asPoint(v[i], ptr + "/vertices/" + std::to_string(i)));
        return CompactSet::polygon(std::move(verts));
    }
    if (type == "point") {
        const json& at = field(j, "at", ptr);
        if (at.is_string() && at.get<std::string>() == "inf")
            return CompactSet::point(SpherePoint::infinity());
        return CompactSet::point(SpherePoint(asPoint(at, ptr + "/at")));
    }
    throw SchemaError(ptr + "/type", "unknown component type '" + type + "'");
}

std::vector<CompactSet> parseComponents(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of components");
    std::vector<CompactSet> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(parseComponent(j[i], ptr + "/" + std::to_string(i)));
    return out;
}

PointedDomain parseDomain(const json& j, const std::string& ptr) {
    PointedDomain u;
    const json& b = field(j, "basepoint", ptr);
    if (b.is_string() && b.get<std::string>() == "inf") {
        u.basepoint = SpherePoint::infinity();
    } else {
        u.basepoint = SpherePoint(asPoint(b, ptr + "/basepoint"));
    }
    u.components = parseComponents(field(j, "components", ptr), ptr + "/components");
    if (j.contains("label") && j["label"].is_string()) u.label = j["label"].get<std::string>();
    return u;
}

ClosedCurve parseCurve(const json& j, const std::string& ptr) {
    const json& pts = field(j, "points", ptr);
    if (!pts.is_array() || pts.size() < 3)
        throw SchemaError(ptr + "/points", "expected at least 3 points");
    ClosedCurve c;
    for (size_t i = 0; i < pts.size(); ++i)
        c.points.push_back(asPoint(pts[i], ptr + "/points/" + std::to_string(i)));
    return c;
}

MapSpec parseMap(const json& j, const std::string& ptr) {
    auto coeffs = [&](const char* name) {
        const json& a = field(j, name, ptr);
        if (!a.is_array() || a.empty())
            throw SchemaError(ptr + "/" + name, "expected a coefficient array");
        std::vector<cplx> out;
        for (size_t i = 0; i < a.size(); ++i) {
            const std::string p = ptr + "/" + name + "/" + std::to_string(i);
            if (a[i].is_number())
                out.emplace_back(a[i].get<double>(), 0.0);
            else
                out.push_back(asPoint(a[i], p));
        }
        return out;
    };
    MapSpec m;
    m.num = coeffs("num");
    m.den = coeffs("den");
    return m;
}

json loadFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

json pt(cplx z) { return json::array({z.real(), z.imag()}); }
json iv(const Interval& i) { return json::array({i.lower, i.upper}); }

json toJson(const SpherePoint& p) {
    if (p.atInf) return "inf";
    return pt(p.z);
}

json toJson(const CompactSet& k) {
    switch (k.kind) {
        case CompactSet::Kind::Disc:
            return {{"type", "disc"}, {"center", pt(k.center)}, {"radius", k.radius}};
        case CompactSet::Kind::DiscComplement:
            return {{"type", "disc_complement"}, {"center", pt(k.center)}, {"radius", k.radius}};
        case CompactSet::Kind::Polygon: {
            json v = json::array();
            for (cplx p : k.vertices) v.push_back(pt(p));
            return {{"type", "polygon"}, {"vertices", v}};
        }
        case CompactSet::Kind::Point:
            return {{"type", "point"}, {"at", toJson(k.at)}};
    }
    return {};
}

json toJson(const PointedDomain& u) {
    json comps = json::array();
    for (const auto& k : u.components) comps.push_back(toJson(k));
    json j{{"basepoint", toJson(u.basepoint)}, {"components", comps}};
    if (!u.label.empty()) j["label"] = u.label;
    return j;
}

json toJson(const ClosedCurve& c) {
    json pts = json::array();
    for (cplx p : c.points) pts.push_back(pt(p));
    return {{"closed", true}, {"points", pts}};
}

json toJson(const MeridianSystem& s) {
    json entries = json::array();
    for (const auto& e : s.entries) {
        entries.push_back({{"inside", e.cls.inside},
                           {"principal", e.cls.principal},
                           {"length", iv(e.length)},
                           {"distance", iv(e.distance)},
                           {"curve", toJson(e.curve)}});
    }
    return {{"entries", entries},
            {"principal_count", s.principalCount},
            {"failures", s.failures}};
}

json toJson(const BoundReport& b) {
    return {{"connectivity", b.connectivity}, {"first_term", iv(b.firstTerm)},
            {"L", iv(b.L)},                   {"D", iv(b.D)},
            {"LE", iv(b.LE)},                 {"DE", iv(b.DE)},
            {"bound", iv(b.bound)},           {"bound_extended", iv(b.boundE)},
            {"failures", b.failures}};
}

json toJson(const MeasurementTrail& t) {
    return {{"name", t.name}, {"indices", t.indices}, {"values", t.values}};
}

json toJson(const AnnulusCandidate& c) {
    json j{{"shape", c.shape == AnnulusCandidate::Shape::Round ? "round" : "collar"},
           {"modulus", c.modulus},
           {"normalization", c.normalization},
           {"equator", toJson(c.equator)}};
    if (c.shape == AnnulusCandidate::Shape::Round) {
        j["center"] = pt(c.center);
        j["r_in"] = c.rIn;
        j["r_out"] = c.rOut;
        j["roles_swapped"] = c.rolesSwapped;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

void writeAtomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic rename failed: " + path);
}

void emitReport(json report, const json& manifest, const std::string& outPath) {
    report["manifest"] = manifest;
    const std::string text = report.dump(2) + "\n";
    if (outPath.empty())
        std::cout << text;
    else
        writeAtomic(outPath, text);
}

void emitSvg(const SvgScene& scene, const std::string& svgPath) {
    if (!svgPath.empty()) writeAtomic(svgPath, scene.render());
}

struct Flags {
    std::string domainPath, instancePath, family, mRange, classSpec, outPath, svgPath;
    double r = 0, R = 0, delta1 = 0, delta2 = 0, K = 0, mesh = 0;
    int seeds = 0;
    std::uint64_t seed = 20240901;
};

std::pair<int, int> parseRange(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            const int m = std::stoi(s);
            return {m, m};
        }
        return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw std::runtime_error("bad --m range '" + s + "' (expected A or A:B)");
    }
}

MeridianOptions meridianOptions(const Flags& f) {
    MeridianOptions opt;
    if (f.seeds > 0) opt.seeds = f.seeds;
    if (f.mesh > 0) opt.hyp.meshSpacing = f.mesh;
    return opt;
}

json makeManifest(const std::string& command, const Flags& f) {
    json inputs = json::array();
    if (!f.domainPath.empty()) inputs.push_back(f.domainPath);
    if (!f.instancePath.empty()) inputs.push_back(f.instancePath);
    json knobs = json::object();
    if (!f.family.empty()) knobs["family"] = f.family;
    if (!f.mRange.empty()) knobs["m"] = f.mRange;
    if (!f.classSpec.empty()) knobs["class"] = f.classSpec;
    if (f.r > 0) knobs["r"] = f.r;
    if (f.R > 0) knobs["R"] = f.R;
    if (f.delta1 > 0) knobs["delta1"] = f.delta1;
    if (f.delta2 > 0) knobs["delta2"] = f.delta2;
    if (f.K > 0) knobs["K"] = f.K;
    if (f.mesh > 0) knobs["mesh"] = f.mesh;
    if (f.seeds > 0) knobs["seeds"] = f.seeds;
    return {{"command", command},
            {"inputs", inputs},
            {"knobs", knobs},
            {"seed", f.seed},
            {"version", kVersion}};
}

// Domains from --domain or --family/--m. Labels carry the member index.
std::vector<std::pair<std::string, PointedDomain>> resolveDomains(const Flags& f) {
    std::vector<std::pair<std::string, PointedDomain>> out;
    if (!f.domainPath.empty()) {
        out.emplace_back(f.domainPath, parseDomain(loadFile(f.domainPath), ""));
    } else if (!f.family.empty()) {
        const auto [a, b] = parseRange(f.mRange.empty() ? "3" : f.mRange);
        const auto fam = builtinFamily(f.family, a, b);
        for (int m = a; m <= b; ++m)
            out.emplace_back(f.family + "[m=" + std::to_string(m) + "]", fam.at(m));
    } else {
        throw std::runtime_error("provide --domain PATH or --family NAME");
    }
    return out;
}

std::vector<int> sampleIndices(const Flags& f) {
    const auto [a, b] = parseRange(f.mRange.empty() ? "3:12" : f.mRange);
    std::vector<int> s;
    for (int m = a; m <= b; ++m) s.push_back(m);
    return s;
}

HomologyClass parseClassSpec(const std::string& spec, const PointedDomain& u) {
    const auto bar = spec.find('|');
    if (bar == std::string::npos)
        throw std::runtime_error("bad --class '" + spec + "' (expected \"i|jk\")");
    std::vector<int> inside;
    for (char ch : spec.substr(0, bar)) {
        if (ch < '0' || ch > '9')
            throw std::runtime_error("bad --class '" + spec + "': indices are digits");
        inside.push_back(ch - '0');
    }
    if (inside.empty()) throw std::runtime_error("bad --class '" + spec + "': empty side");
    return canonicalClass(u.connectivity(), inside, u.infComponent());
}

SeparationInstance resolveInstance(const Flags& f) {
    if (!f.instancePath.empty()) {
        const json j = loadFile(f.instancePath);
        auto E = parseComponents(field(j, "E", ""), "/E");
        auto F = parseComponents(field(j, "F", ""), "/F");
        auto gamma = parseCurve(field(j, "gamma", ""), "/gamma");
        const double r = f.r > 0 ? f.r : asNumber(field(j, "r", ""), "/r");
        const double R = f.R > 0 ? f.R : asNumber(field(j, "R", ""), "/R");
        return makeInstance(std::move(E), std::move(F), std::move(gamma), r, R);
    }
    return seededInstance(f.seed);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmdValidate(const Flags& f) {
    json members = json::array();
    for (const auto& [label, u] : resolveDomains(f)) {
        const auto rep = validate(u);
        json issues = json::array();
        for (const auto& i : rep.issues)
            issues.push_back({{"what", i.what}, {"measured", i.measured}});
        members.push_back(
            {{"label", label}, {"pass", rep.pass}, {"issues", issues}, {"domain", toJson(u)}});
    }
    emitReport({{"report", "validate"}, {"members", members}}, makeManifest("validate", f),
               f.outPath);
    return 0;
}

int cmdBound(const Flags& f) {
    const auto opt = meridianOptions(f);
    json members = json::array();
    bool inconclusive = false;
    for (const auto& [label, u] : resolveDomains(f)) {
        const auto b = caraBound(u, opt);
        inconclusive = inconclusive || !b.failures.empty();
        json j = toJson(b);
        j["label"] = label;
        members.push_back(std::move(j));
    }
    emitReport({{"report", "bound"}, {"members", members}}, makeManifest("bound", f), f.outPath);
    return inconclusive ? 2 : 0;
}

int cmdMeridians(const Flags& f) {
    const auto opt = meridianOptions(f);
    const auto domains = resolveDomains(f);
    json members = json::array();
    bool inconclusive = false;
    SvgScene scene;
    for (const auto& [label, u] : domains) {
        json j{{"label", label}};
        if (!f.classSpec.empty()) {
            const auto cls = parseClassSpec(f.classSpec, u);
            const auto r = findMeridian(u, cls, opt);
            if (!r.certified) inconclusive = true;
            j["class"] = cls.inside;
            j["certified"] = r.certified;
            j["length"] = iv(r.length);
            j["iterations"] = r.iterations;
            j["curve"] = toJson(r.curve);
            if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
            if (&u == &domains.front().second) {
                scene.addDomain(u);
                scene.addCurve(r.curve, "#cc0000");
            }
        } else {
            const auto sys = extendedSystem(u, opt);
            if (!sys.failures.empty()) inconclusive = true;
            j["system"] = toJson(sys);
            if (&u == &domains.front().second) {
                scene.addDomain(u);
                for (const auto& e : sys.entries)
                    scene.addCurve(e.curve, e.cls.principal ? "#cc0000" : "#e08030");
            }
        }
        members.push_back(std::move(j));
    }
    emitReport({{"report", "meridians"}, {"members", members}}, makeManifest("meridians", f),
               f.outPath);
    emitSvg(scene, f.svgPath);
    return inconclusive ? 2 : 0;
}

int cmdCondition4(const Flags& f) {
    if (f.delta1 <= 0 || f.delta2 <= 0)
        throw std::runtime_error("condition4 requires --delta1 and --delta2 > 0");
    const auto opt = meridianOptions(f);
    json members = json::array();
    bool inconclusive = false;
    for (const auto& [label, u] : resolveDomains(f)) {
        const auto c = condition4Certificate(u, f.delta1, f.delta2, opt);
        if (c.verdict == Verdict::Inconclusive) inconclusive = true;
        json curves = json::array();
        for (const auto& cv : c.curves) curves.push_back(toJson(cv));
        members.push_back({{"label", label},
                           {"verdict", verdictName(c.verdict)},
                           {"basepoint_on_curves", verdictName(c.basepointOnCurves)},
                           {"separation", verdictName(c.separation)},
                           {"clearance", iv(c.clearance)},
                           {"clearance_verdict", verdictName(c.clearanceVerdict)},
                           {"min_diameter", iv(c.minDiameter)},
                           {"diameter_verdict", verdictName(c.diameterVerdict)},
                           {"failures", c.failures},
                           {"curves", curves}});
    }
    emitReport({{"report", "condition4"}, {"delta1", f.delta1}, {"delta2", f.delta2},
                {"members", members}},
               makeManifest("condition4", f), f.outPath);
    return inconclusive ? 2 : 0;
}

int cmdConverge(const Flags& f) {
    if (f.family.empty()) throw std::runtime_error("converge requires --family");
    const auto [a, b] = parseRange(f.mRange.empty() ? "3:12" : f.mRange);
    const auto fam = builtinFamily(f.family, a, b);
    const auto lim = caraLimit(fam, sampleIndices(f));
    json trails = json::array();
    for (const auto& t : lim.witnesses) trails.push_back(toJson(t));
    json rep{{"report", "converge"},
             {"kind", limitKindName(lim.kind)},
             {"connectivity_from", lim.connectivityFrom},
             {"connectivity_to", lim.connectivityTo},
             {"description", lim.description},
             {"witnesses", trails},
             {"csv", trailsToCsv(lim.witnesses)}};
    if (lim.kind == LimitKind::NonDegenerate || lim.kind == LimitKind::ConnectivityDrop)
        rep["limit"] = toJson(lim.limit);
    emitReport(std::move(rep), makeManifest("converge", f), f.outPath);
    return 0;
}

int cmdClassify(const Flags& f) {
    if (f.family.empty()) throw std::runtime_error("classify requires --family");
    const auto [a, b] = parseRange(f.mRange.empty() ? "3:12" : f.mRange);
    const auto fam = builtinFamily(f.family, a, b);
    ClassifyOptions opt;
    opt.meridian = meridianOptions(f);
    const auto rep = classifyFamily(fam, sampleIndices(f), opt);
    json trails = json::array();
    for (const auto& t : rep.trails) trails.push_back(toJson(t));
    json boundReports = json::array();
    for (size_t i = 0; i < rep.bound.reports.size(); ++i) {
        json j = toJson(rep.bound.reports[i]);
        j["m"] = rep.bound.indices[i];
        boundReports.push_back(std::move(j));
    }
    emitReport({{"report", "classify"},
                {"verdict", familyVerdictName(rep.verdict)},
                {"witness", rep.witness},
                {"limit_kind", limitKindName(rep.limit.kind)},
                {"limit_description", rep.limit.description},
                {"sup_bound", iv(rep.bound.supBound)},
                {"sup_bound_extended", iv(rep.bound.supBoundE)},
                {"drifting_up", rep.bound.driftingUp},
                {"member_bounds", boundReports},
                {"trails", trails},
                {"csv", trailsToCsv(rep.trails)}},
               makeManifest("classify", f), f.outPath);
    return rep.verdict == FamilyVerdict::Inconclusive ? 2 : 0;
}

int cmdMeshcurve(const Flags& f) {
    const auto inst = resolveInstance(f);
    const auto res = meshCurve(inst);
    json edges = json::array();
    for (const auto& [key, mult] : res.cycle.edges)
        edges.push_back({key[0], key[1], key[2], mult});
    emitReport({{"report", "meshcurve"},
                {"r", inst.r},
                {"R", inst.R},
                {"square_count", res.squareCount},
                {"square_count_bound", int((2 * inst.R / inst.r + 2) * (2 * inst.R / inst.r + 2))},
                {"length", iv(res.length)},
                {"apriori_bound", res.apriori},
                {"cycle_dist_to_E", res.cycleDistToE},
                {"cycle_dist_to_F", res.cycleDistToF},
                {"cycle", {{"side", res.cycle.side}, {"origin", pt(res.cycle.origin)},
                           {"edges", edges}}},
                {"curve", toJson(res.curve)}},
               makeManifest("meshcurve", f), f.outPath);
    SvgScene scene;
    for (const auto& k : inst.E) scene.addSet(k, "#deb0b0");
    for (const auto& k : inst.F) scene.addSet(k, "#b0c4de");
    scene.addCurve(inst.gamma, "#808080");
    scene.addCurve(res.curve, "#cc0000");
    emitSvg(scene, f.svgPath);
    return 0;
}

int cmdExtremal(const Flags& f) {
    if (f.instancePath.empty()) throw std::runtime_error("extremal requires --instance");
    const json j = loadFile(f.instancePath);
    const auto E = parseComponents(field(j, "E", ""), "/E");
    const auto F = parseComponents(field(j, "F", ""), "/F");
    SeparatingAnnulusOptions opt;
    opt.seed = f.seed;
    if (f.seeds > 0) {
        opt.starts = f.seeds;
        opt.meridian.seeds = f.seeds;
    }
    if (f.mesh > 0) opt.meridian.hyp.meshSpacing = f.mesh;
    const auto rep = separatingAnnulusMax(E, F, opt);
    json ties = json::array();
    for (const auto& t : rep.ties) ties.push_back(toJson(t));
    const bool inconclusive = !std::isfinite(rep.bracket.upper);
    emitReport({{"report", "extremal"},
                {"best", toJson(rep.best)},
                {"ties", ties},
                {"bracket", iv(rep.bracket)},
                {"meridian_length", iv(rep.meridianLength)},
                {"notes", rep.notes}},
               makeManifest("extremal", f), f.outPath);
    SvgScene scene;
    for (const auto& k : E) scene.addSet(k, "#deb0b0");
    for (const auto& k : F) scene.addSet(k, "#b0c4de");
    if (rep.best.shape == AnnulusCandidate::Shape::Round) {
        scene.addCurve(circleCurve(rep.best.center, rep.best.rIn, 128), "#208020");
        scene.addCurve(circleCurve(rep.best.center, rep.best.rOut, 128), "#208020");
    }
    scene.addCurve(rep.best.equator, "#cc0000");
    emitSvg(scene, f.svgPath);
    return inconclusive ? 2 : 0;
}

int cmdBetween(const Flags& f) {
    if (f.domainPath.empty())
        throw std::runtime_error("between requires --domain FILE with {\"U\":..., \"V\":...}");
    const json j = loadFile(f.domainPath);
    const auto u = parseDomain(field(j, "U", ""), "/U");
    const auto v = parseDomain(field(j, "V", ""), "/V");
    const auto rep = annulusBetween(u, v);
    emitReport({{"report", "between"},
                {"annulus", toJson(rep.annulus)},
                {"modulus", rep.modulus},
                {"basepoint", toJson(rep.basepoint)}},
               makeManifest("between", f), f.outPath);
    SvgScene scene;
    scene.addSet(u.components[0], "#deb0b0");
    scene.addSet(v.components[0], "#b0c4de");
    scene.addCurve(rep.annulus.equator, "#cc0000");
    scene.addMarker(rep.basepoint.z, "#000000");
    emitSvg(scene, f.svgPath);
    return 0;
}

int cmdLipschitz(const Flags& f) {
    if (f.instancePath.empty())
        throw std::runtime_error(
            "lipschitz requires --instance FILE with {\"map\":..., \"U\":..., \"V\":...}");
    const json j = loadFile(f.instancePath);
    const auto map = parseMap(field(j, "map", ""), "/map");
    const auto u = parseDomain(field(j, "U", ""), "/U");
    const auto v = parseDomain(field(j, "V", ""), "/V");
    const double radius = f.R > 0 ? f.R : 2.0;
    HypOptions opt;
    if (f.mesh > 0) opt.meshSpacing = f.mesh;
    const auto rep = hyperbolicLipschitz(map, u, v, radius, opt);
    const bool inconclusive = !std::isfinite(rep.K.upper);
    emitReport({{"report", "lipschitz"},
                {"R", rep.R},
                {"M", iv(rep.M)},
                {"K", iv(rep.K)},
                {"samples", rep.samples},
                {"m_attained_at", pt(rep.mAttainedAt)},
                {"issues", rep.issues}},
               makeManifest("lipschitz", f), f.outPath);
    return inconclusive ? 2 : 0;
}

int cmdRender(const Flags& f) {
    if (f.svgPath.empty() && f.outPath.empty())
        throw std::runtime_error("render requires --svg (or --out) PATH");
    SvgScene scene;
    if (!f.instancePath.empty()) {
        const json j = loadFile(f.instancePath);
        for (const auto& k : parseComponents(field(j, "E", ""), "/E")) scene.addSet(k, "#deb0b0");
        for (const auto& k : parseComponents(field(j, "F", ""), "/F")) scene.addSet(k, "#b0c4de");
        if (j.contains("gamma")) scene.addCurve(parseCurve(j["gamma"], "/gamma"), "#808080");
    } else {
        for (const auto& [label, u] : resolveDomains(f)) {
            scene.addDomain(u);
            break;  // one picture per run
        }
    }
    const std::string path = f.svgPath.empty() ? f.outPath : f.svgPath;
    writeAtomic(path, scene.render());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified bounds, meridians and extremal annuli for pointed plane domains"};
    app.require_subcommand(1);
    Flags f;

    const std::vector<std::pair<std::string, int (*)(const Flags&)>> commands = {
        {"validate", cmdValidate},   {"bound", cmdBound},       {"meridians", cmdMeridians},
        {"condition4", cmdCondition4}, {"converge", cmdConverge}, {"classify", cmdClassify},
        {"meshcurve", cmdMeshcurve}, {"extremal", cmdExtremal}, {"between", cmdBetween},
        {"lipschitz", cmdLipschitz}, {"render", cmdRender}};

    for (const auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--domain", f.domainPath, "domain (or paired-domain) JSON file");
        sub->add_option("--instance", f.instancePath, "instance JSON file");
        sub->add_option("--family", f.family, "built-in family name");
        sub->add_option("--m", f.mRange, "family index or range A:B");
        sub->add_option("--class", f.classSpec, "homology class \"i|jk\"");
        sub->add_option("--r", f.r, "instance clearance r");
        sub->add_option("--R", f.R, "instance radius / Lipschitz ball R");
        sub->add_option("--delta1", f.delta1, "clearance threshold");
        sub->add_option("--delta2", f.delta2, "diameter threshold");
        sub->add_option("--K", f.K, "containment constant");
        sub->add_option("--seeds", f.seeds, "optimizer seeds / starts");
        sub->add_option("--mesh", f.mesh, "mesh spacing H");
        sub->add_option("--seed", f.seed, "manifest seed");
        sub->add_option("--out", f.outPath, "output report path (default stdout)");
        sub->add_option("--svg", f.svgPath, "SVG output path");
    }

    try {
        app.parse(argc, argv);
        for (const auto& [name, fn] : commands)
            if (app.get_subcommand(name)->parsed()) return fn(f);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
