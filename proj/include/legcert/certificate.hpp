// include/legcert/certificate.hpp — machine-checkable verdicts.
//
// A certificate embeds its input (braid word or full diagram), the area
// assignment, the candidate system with exact matrices, the verdict with
// dual vectors or a witness, and the conclusion flags. ch_vanishes is
// computed, never accepted from outside: it is true only when the verdict
// is OnlyTrivial, an all-positive disk realizes the target, and the
// generator policy's preconditions held. The verifier re-derives everything
// cheap (gradings, disks, invariants) from the embedded input and re-checks
// the dual/witness algebra, without re-running any solver.

#pragma once

#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcert/action.hpp"
#include "legcert/feasibility.hpp"
#include "legcert/index.hpp"

namespace legcert {

using json = nlohmann::json;

inline std::string fnv1a_digest(const std::string& data) {
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[20];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a:") + buf;
}

struct CertificateBundle {
    json doc;
    bool certified = false; // ch_vanishes
};

namespace certdetail {

inline json grading_map(const Diagram& d, const GradingVector& g) {
    json out = json::object();
    for (int f = 0; f < d.num_faces(); ++f)
        if (!g.coef[f].is_zero()) out[d.faces[f].label] = g.coef[f].to_string();
    return out;
}

inline json word_labels(const Diagram& d, const std::vector<int>& word) {
    json out = json::array();
    for (int c : word) out.push_back(d.crossings[c].label);
    return out;
}

inline std::vector<int> labels_to_word(const Diagram& d, const json& arr) {
    std::vector<int> out;
    for (const auto& l : arr) out.push_back(d.crossing_index(l.get<std::string>()));
    return out;
}

} // namespace certdetail

// The fixed mathematical context a certificate relies on but does not
// recompute: 1/k surgery factors through k push-off +1 surgeries, and
// vanishing persists under the induced Liouville cobordisms.
inline const char* surgery_note() {
    return "contact 1/k surgery (k >= 1) factors as k successive contact +1 surgeries along "
           "Legendrian push-offs; vanishing of contact homology persists under the induced "
           "Liouville cobordisms, so a certified +1 surgery certifies every 1/k surgery";
}

// --- verification -----------------------------------------------------------

struct VerifyReport {
    bool accepted = false;
    bool certified = false; // conclusion.ch_vanishes of an accepted certificate
    std::vector<std::string> failures;
};

inline Diagram rebuild_input(const json& doc) {
    const json& in = doc.at("input");
    std::string kind = in.at("kind").get<std::string>();
    if (kind == "braid") {
        BraidWord b = validate_braid(in.at("word").get<std::vector<int>>(), in.at("strands").get<int>());
        return rainbow_closure_diagram(b);
    }
    if (kind == "diagram") return load_diagram_json(in.at("diagram"));
    throw Error(Errc::BadCertificate, "unknown input kind '" + kind + "'");
}

inline VerifyReport verify_certificate(const json& doc) {
    VerifyReport rep;
    auto fail = [&](const std::string& why) { rep.failures.push_back(why); };
    try {
        if (doc.value("format", std::string()) != "legcert.certificate/1")
            throw Error(Errc::BadCertificate, "unknown format tag");
        Diagram d = rebuild_input(doc);

        // invariants
        const json& inv = doc.at("invariants");
        if (inv.at("tb").get<int>() != d.tb()) fail("tb does not match the input diagram");
        bool tight = inv.at("tight").get<bool>();
        if (inv.contains("slice_genus") && !inv.at("slice_genus").is_null()) {
            int g = inv.at("slice_genus").at("value").get<int>();
            bool criterion = d.tb() != -1 && d.tb() == 2 * g - 1;
            if (tight != criterion) fail("tightness flag disagrees with tb = 2g_s - 1 criterion");
        } else if (tight) {
            fail("tight claimed without a slice genus");
        }

        // target and disk provenance
        std::vector<int> target = certdetail::labels_to_word(d, doc.at("target").at("word"));
        std::string disk_face = doc.at("target").at("disk_face").get<std::string>();
        bool disk_found = false;
        for (const auto& disk : rsft_disks(d)) {
            if (d.faces[disk.face].label != disk_face) continue;
            if (canonical_rotation(disk.chord_word) == canonical_rotation(target)) disk_found = true;
        }
        if (!disk_found) fail("no all-positive disk realizes the target word on the claimed face");

        // policy preconditions
        std::string policy = doc.at("policy").get<std::string>();
        std::vector<std::vector<int>> candidates;
        for (const auto& cw : doc.at("candidates"))
            candidates.push_back(certdetail::labels_to_word(d, cw));
        if (policy == "single-chord") {
            if (!d.rainbow_closure) fail("single-chord policy on a diagram that is not a rainbow closure");
            std::set<std::vector<int>> expect;
            for (int c = 0; c < d.num_crossings(); ++c)
                if (std::find(target.begin(), target.end(), c) == target.end()) expect.insert({c});
            std::set<std::vector<int>> got(candidates.begin(), candidates.end());
            if (got != expect) fail("single-chord candidate set is not all chords minus the target");
        } else if (policy == "action-filter") {
            // re-derive the enumeration from the recorded assignment
            const json& asgj = doc.at("assignment");
            AreaAssignment asg;
            asg.action.assign(d.num_crossings(), Rational(0));
            for (const auto& [label, val] : asgj.at("actions").items())
                asg.action[d.crossing_index(label)] = Rational::parse(val.get<std::string>());
            asg.area.assign(d.num_faces(), Rational(0));
            auto sys = corner_relations(d);
            for (const auto& rel : sys.relations) {
                Rational a(0);
                for (const auto& [c, k] : rel.coef) a += Rational(k) * asg.action[c];
                asg.area[rel.face] = a;
                if (a.sign() <= 0) fail("recorded actions give a nonpositive area");
                Rational rec = Rational::parse(
                    asgj.at("areas").at(d.faces[rel.face].label).get<std::string>());
                if (!(rec == a)) fail("recorded area disagrees with the corner relations");
            }
            for (const auto& a : asg.action)
                if (a.sign() <= 0) fail("recorded action is not positive");
            Rational eps = Rational::parse(asgj.at("epsilon").get<std::string>());
            int max_len = asgj.at("max_word_len").get<int>();
            auto expect = enumerate_candidates(d, asg, target, eps, max_len);
            std::set<std::vector<int>> got(candidates.begin(), candidates.end());
            if (got != std::set<std::vector<int>>(expect.begin(), expect.end()))
                fail("candidate set does not match the action enumeration");
        } else {
            fail("unknown policy '" + policy + "'");
        }

        // exact system re-derivation
        FeasibilitySystem sys = build_system(d, target, candidates);
        const json& sj = doc.at("system");
        if (sj.at("faces").get<std::vector<std::string>>() != sys.face_labels)
            fail("face ordering mismatch");
        const json& mat = sj.at("matrix");
        if (static_cast<int>(mat.size()) != sys.rows()) fail("matrix row count mismatch");
        for (int i = 0; i < sys.rows() && i < static_cast<int>(mat.size()); ++i) {
            for (int j = 0; j < sys.cols(); ++j) {
                Rational rec = Rational::parse(mat.at(i).at(j).get<std::string>());
                if (!(rec == sys.matrix[i][j])) {
                    fail("matrix entry (" + sys.face_labels[i] + "," + sys.candidate_names[j] +
                         ") disagrees with the recomputed grading");
                }
            }
            Rational rec = Rational::parse(sj.at("rhs").at(i).get<std::string>());
            if (!(rec == sys.rhs[i])) fail("rhs entry " + sys.face_labels[i] + " disagrees");
        }

        // verdict algebra
        const json& vj = doc.at("verdict");
        std::string kind = vj.at("kind").get<std::string>();
        bool only_trivial_claim = kind == "OnlyTrivial";
        if (only_trivial_claim) {
            const json& duals = vj.at("duals");
            if (static_cast<int>(duals.size()) != sys.cols()) fail("dual vector count mismatch");
            for (int j = 0; j < sys.cols() && j < static_cast<int>(duals.size()); ++j) {
                std::vector<Rational> y;
                for (const auto& v : duals.at(j)) y.push_back(Rational::parse(v.get<std::string>()));
                if (static_cast<int>(y.size()) != sys.rows()) {
                    fail("dual " + sys.candidate_names[j] + " has wrong dimension");
                    continue;
                }
                Rational yb(0);
                bool ok = true;
                for (int i = 0; i < sys.rows(); ++i) {
                    if (y[i].sign() < 0) ok = false;
                    yb += y[i] * sys.rhs[i];
                }
                if (!yb.is_zero()) ok = false;
                for (int k = 0; k < sys.cols(); ++k) {
                    Rational col(0);
                    for (int i = 0; i < sys.rows(); ++i) col += y[i] * sys.matrix[i][k];
                    if (col < Rational(k == j ? 1 : 0)) ok = false;
                }
                if (!ok) fail("dual vector for " + sys.candidate_names[j] + " does not certify max 0");
            }
        } else if (kind == "Witness") {
            std::vector<Rational> x;
            for (const auto& v : vj.at("witness")) x.push_back(Rational::parse(v.get<std::string>()));
            bool nonzero = false;
            for (const auto& v : x) nonzero |= !v.is_zero();
            if (!nonzero || !satisfies_rows(sys, x)) fail("witness does not satisfy the system");
        } else {
            fail("unknown verdict kind");
        }

        // conclusion consistency (no-overclaim)
        const json& con = doc.at("conclusion");
        bool ch = con.at("ch_vanishes").get<bool>();
        bool policy_ok = policy == "single-chord" ? d.rainbow_closure : true;
        if (ch != (only_trivial_claim && disk_found && policy_ok))
            fail("ch_vanishes flag is not implied by verdict, disk and policy");
        if (con.at("algebraically_overtwisted").get<bool>() != ch)
            fail("algebraically_overtwisted must equal ch_vanishes");
        rep.certified = ch;
    } catch (const std::exception& e) {
        fail(std::string("exception: ") + e.what());
    }
    rep.accepted = rep.failures.empty();
    if (!rep.accepted) rep.certified = false;
    return rep;
}

// --- human-readable report ----------------------------------------------------

inline std::string explain_certificate(const json& doc) {
    std::ostringstream out;
    Diagram d = rebuild_input(doc);
    const json& con = doc.at("conclusion");
    out << "certification report\n====================\n";
    if (doc.at("input").at("kind") == "braid") {
        out << "input: rainbow closure of a positive braid on "
            << doc.at("input").at("strands").get<int>() << " strands, word";
        for (int l : doc.at("input").at("word").get<std::vector<int>>()) out << ' ' << l;
        out << "\n";
    } else {
        out << "input: Lagrangian-projection diagram with " << d.num_crossings() << " crossings\n";
    }
    out << "tb = " << doc.at("invariants").at("tb").get<int>()
        << ", tight = " << (doc.at("invariants").at("tight").get<bool>() ? "yes" : "no") << "\n";
    out << "target orbit: (";
    bool first = true;
    for (const auto& l : doc.at("target").at("word")) {
        if (!first) out << ' ';
        out << l.get<std::string>();
        first = false;
    }
    out << ") from the all-positive disk over " << doc.at("target").at("disk_face").get<std::string>()
        << "\n";
    out << "generator policy: " << doc.at("policy").get<std::string>() << "\n";

    std::vector<int> target = certdetail::labels_to_word(d, doc.at("target").at("word"));
    std::vector<std::vector<int>> candidates;
    for (const auto& cw : doc.at("candidates")) candidates.push_back(certdetail::labels_to_word(d, cw));
    FeasibilitySystem sys = build_system(d, target, candidates);
    auto solo = solo_maxima(sys);
    out << "candidates (" << sys.cols() << "):\n";
    for (int j = 0; j < sys.cols(); ++j) {
        out << "  " << sys.candidate_names[j] << "  I = ";
        GradingVector g = word_grading(d, candidates[j]);
        out << g.to_string(d);
        std::string kill;
        for (int i = 0; i < sys.rows(); ++i)
            if (sys.rhs[i].is_zero() && sys.matrix[i][j].sign() > 0) {
                kill = sys.face_labels[i];
                break;
            }
        if (!kill.empty())
            out << "\n      alone it is excluded by the positive coefficient at " << kill;
        else if (solo[j] && solo[j]->is_zero())
            out << "\n      alone it is excluded (solo maximum 0)";
        out << "\n";
    }
    if (doc.contains("fast_eliminations") && !doc.at("fast_eliminations").empty()) {
        out << "braid-area elimination hints (the exact solver is the authority):\n";
        for (const auto& [name, reason] : doc.at("fast_eliminations").items())
            out << "  " << name << ": " << reason.get<std::string>() << "\n";
    }
    const json& vj = doc.at("verdict");
    if (vj.at("kind") == "OnlyTrivial") {
        out << "verdict: only the trivial combination satisfies positivity of intersections\n";
    } else {
        out << "verdict: witness combination satisfies every face row:\n   ";
        const json& w = vj.at("witness");
        for (int j = 0; j < sys.cols(); ++j) {
            std::string v = w.at(j).get<std::string>();
            if (v != "0") out << " " << v << " x " << sys.candidate_names[j];
        }
        out << "\n";
    }
    if (con.at("ch_vanishes").get<bool>()) {
        out << "conclusion: the surgered contact manifold has vanishing contact homology "
               "(algebraically overtwisted)";
        if (con.at("tight").get<bool>()) out << " and is tight";
        out << ".\n";
        out << "surgery note: " << doc.at("surgery_note").get<std::string>() << "\n";
    } else {
        out << "conclusion: inconclusive by this method (no overtwistedness claim is made).\n";
    }
    return out.str();
}

} // namespace legcert
