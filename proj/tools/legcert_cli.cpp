// tools/legcert_cli.cpp — command line front end.
//
//   legcert certify --braid "p=2;1,1,1" --emit cert.json
//   legcert certify --diagram knot.ldg --slice-genus 1 --constraints chain.txt
//   legcert render --braid "p=4 word=..." --svg out.svg
//   legcert batch --family torus --pmax 6 --qmax 7 --cache .legcert-cache
//   legcert verify cert.json
//
// Exit codes: 0 certified / verified-certified, 2 inconclusive, 3 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "legcert/legcert.hpp"

using namespace legcert;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw Error(Errc::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CertifyInput make_input(const std::string& braid, const std::string& diagram_path) {
    if (!braid.empty() && !diagram_path.empty())
        throw Error(Errc::ParseError, "give either --braid or --diagram, not both");
    if (!braid.empty()) return CertifyInput::from_braid(parse_braid_text(braid));
    if (!diagram_path.empty()) return CertifyInput::from_diagram(slurp(diagram_path));
    throw Error(Errc::ParseError, "need --braid or --diagram");
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::TbMinusOne:
        case Errc::NoRsftDisk:
        case Errc::BudgetExceeded:
        case Errc::Infeasible:
            return 2; // the method cannot conclude on this input
        default:
            return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certifier for contact +1 surgeries on Legendrian knots"};
    app.require_subcommand(1);

    // certify ----------------------------------------------------------------
    auto* certify_cmd = app.add_subcommand("certify", "run the certification pipeline");
    std::string braid, diagram_path, target, epsilon, gap = "100", constraints_path, emit_path;
    std::vector<std::string> constraint_lines;
    int oracle_box = -1, slice_genus = INT32_MIN, max_len_cap = 8;
    bool do_explain = false, quiet = false;
    certify_cmd->add_option("--braid", braid, "positive braid, e.g. \"p=2;1,1,1\"");
    certify_cmd->add_option("--diagram", diagram_path, "Lagrangian diagram file (.ldg or .json)");
    certify_cmd->add_option("--target", target, "single-chord target label, e.g. alpha1 or a4");
    certify_cmd->add_option("--epsilon", epsilon, "action estimate epsilon (rational)");
    certify_cmd->add_option("--gap", gap, "factor realizing '<<' constraints");
    certify_cmd->add_option("--oracle-box", oracle_box, "also run the integer oracle on [0,box]^n");
    certify_cmd->add_option("--constraints", constraints_path, "file of area/action constraints");
    certify_cmd->add_option("--constraint", constraint_lines, "inline constraint (repeatable)");
    certify_cmd->add_option("--slice-genus", slice_genus, "slice genus for loaded diagrams");
    certify_cmd->add_option("--max-len", max_len_cap, "cap on the derived word-length bound");
    certify_cmd->add_option("--emit", emit_path, "write the certificate JSON here");
    certify_cmd->add_flag("--explain", do_explain, "print the human-readable report");
    certify_cmd->add_flag("--quiet", quiet, "suppress the one-line summary");

    // render -----------------------------------------------------------------
    auto* render_cmd = app.add_subcommand("render", "draw a diagram as SVG");
    std::string r_braid, r_diagram, svg_path;
    render_cmd->add_option("--braid", r_braid, "positive braid");
    render_cmd->add_option("--diagram", r_diagram, "diagram file");
    render_cmd->add_option("--svg", svg_path, "output file")->required();

    // batch ------------------------------------------------------------------
    auto* batch_cmd = app.add_subcommand("batch", "certify a family of inputs");
    std::string family = "torus", cache_dir, emit_dir;
    int pmax = 6, qmax = 7, jobs = 1;
    std::vector<int> ps{3, 4, 5}, qs{2, 3, 4}, rs{1, 2, 3};
    batch_cmd->add_option("--family", family, "torus | twisted");
    batch_cmd->add_option("--pmax", pmax, "torus: largest p");
    batch_cmd->add_option("--qmax", qmax, "torus: largest q");
    batch_cmd->add_option("--p", ps, "twisted: strand counts");
    batch_cmd->add_option("--q", qs, "twisted: first-block powers");
    batch_cmd->add_option("--r", rs, "twisted: second-block powers");
    batch_cmd->add_option("--cache", cache_dir, "content-addressed certificate cache directory");
    batch_cmd->add_option("--jobs", jobs, "worker threads for the sweep");
    batch_cmd->add_option("--emit-dir", emit_dir, "write per-item certificates here");

    // verify -----------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "re-check an emitted certificate");
    std::string cert_path;
    verify_cmd->add_option("certificate", cert_path, "certificate JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*certify_cmd) {
            CertifyConfig cfg;
            if (!target.empty()) cfg.target_label = target;
            if (!epsilon.empty()) cfg.epsilon = Rational::parse(epsilon);
            cfg.gap = Rational::parse(gap);
            if (oracle_box >= 0) cfg.oracle_box = oracle_box;
            if (slice_genus != INT32_MIN) cfg.slice_genus = slice_genus;
            cfg.max_word_len_cap = max_len_cap;
            cfg.constraint_lines = constraint_lines;
            if (!constraints_path.empty()) {
                std::istringstream in(slurp(constraints_path));
                std::string line;
                while (std::getline(in, line))
                    if (!line.empty() && line[0] != '#') cfg.constraint_lines.push_back(line);
            }
            CertificateBundle bundle = certify(make_input(braid, diagram_path), cfg);
            if (!emit_path.empty()) {
                std::ofstream out(emit_path);
                out << bundle.doc.dump(1) << '\n';
            }
            if (do_explain) std::cout << explain_certificate(bundle.doc);
            if (!quiet) {
                std::cout << (bundle.certified
                                  ? "certified: contact homology vanishes; surgered manifold is "
                                    "algebraically overtwisted"
                                  : "inconclusive by this method")
                          << (bundle.doc["conclusion"]["tight"].get<bool>() ? " (tight)" : "") << '\n';
            }
            return bundle.certified ? 0 : 2;
        }
        if (*render_cmd) {
            std::string svg;
            if (!r_braid.empty()) {
                Layout lay;
                Diagram d = rainbow_closure_diagram(parse_braid_text(r_braid), &lay);
                svg = render_svg(d, &lay);
            } else if (!r_diagram.empty()) {
                Diagram d = load_diagram(slurp(r_diagram));
                svg = render_svg(d);
            } else {
                throw Error(Errc::ParseError, "render needs --braid or --diagram");
            }
            std::ofstream out(svg_path);
            out << svg;
            return 0;
        }
        if (*batch_cmd) {
            std::vector<BatchItem> items;
            if (family == "torus") items = torus_family(pmax, qmax);
            else if (family == "twisted") items = twisted_family(ps, qs, rs);
            else throw Error(Errc::ParseError, "unknown family '" + family + "'");
            auto results = batch(items, {},
                                 cache_dir.empty() ? std::nullopt : std::optional<std::string>(cache_dir),
                                 jobs);
            if (!emit_dir.empty()) {
                std::filesystem::create_directories(emit_dir);
                for (const auto& r : results) {
                    if (!r.ok) continue;
                    std::ofstream out(std::filesystem::path(emit_dir) / (r.name + ".json"));
                    out << r.certificate.dump(1) << '\n';
                }
            }
            std::cout << batch_summary(results);
            bool any_inconclusive = false;
            for (const auto& r : results) any_inconclusive |= r.ok && !r.certified;
            return any_inconclusive ? 2 : 0;
        }
        if (*verify_cmd) {
            json doc = json::parse(slurp(cert_path));
            VerifyReport rep = verify_certificate(doc);
            if (!rep.accepted) {
                std::cout << "REJECTED\n";
                for (const auto& f : rep.failures) std::cout << "  - " << f << '\n';
                return 3;
            }
            std::cout << (rep.certified ? "valid: certified\n" : "valid: inconclusive\n");
            return rep.certified ? 0 : 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 3;
}
