// include/legcert/braid.hpp — positive braid words, closure components and
// the classical invariants of rainbow closures.

#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcert/errors.hpp"

namespace legcert {

// A positive braid word on `strands` strands. Letters are 1-based generator
// indices; only positive powers are representable.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }
};

// Permutation induced by the word (positions 1..p, top to bottom). Entry k
// is where the strand entering at position k+1 exits.
inline std::vector<int> braid_permutation(const BraidWord& b) {
    std::vector<int> perm(b.strands);
    std::iota(perm.begin(), perm.end(), 0);
    for (int letter : b.letters) std::swap(perm[letter - 1], perm[letter]);
    return perm;
}

inline int closure_components(const BraidWord& b) {
    std::vector<int> perm = braid_permutation(b);
    std::vector<bool> seen(perm.size(), false);
    int cycles = 0;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (size_t j = i; !seen[j]; j = static_cast<size_t>(perm[j])) seen[j] = true;
    }
    return cycles;
}

// Gate for all braid input. Rejects non-positive or out-of-range letters and
// closures with more than one component.
inline BraidWord validate_braid(const std::vector<int>& letters, int p) {
    if (p < 1) throw Error(Errc::GeneratorOutOfRange, "strand count must be >= 1");
    for (int l : letters) {
        if (l <= 0)
            throw Error(Errc::NonPositiveGenerator,
                        "letter " + std::to_string(l) + " (only positive braids are accepted)");
        if (l > p - 1)
            throw Error(Errc::GeneratorOutOfRange,
                        "letter " + std::to_string(l) + " exceeds " + std::to_string(p - 1));
    }
    if (letters.empty() && p > 1)
        throw Error(Errc::NotAKnot, "empty word on " + std::to_string(p) + " strands closes to a link");
    BraidWord b{p, letters};
    int comps = closure_components(b);
    if (comps != 1)
        throw Error(Errc::NotAKnot, "closure has " + std::to_string(comps) + " components");
    return b;
}

inline int thurston_bennequin(const BraidWord& b) {
    return b.length() - b.strands;
}

struct KnotInvariants {
    int tb = 0;
    int seifert_genus = 0;
    bool slice_genus_equal = false;
    bool tight_certified = false;
};

// Rainbow closures of positive braids: tb = w - p, the fiber surface has
// Euler characteristic p - w, and the maximality chain pins g_s = g_3.
// Tightness holds whenever tb != -1.
inline KnotInvariants tightness_report(const BraidWord& b) {
    int w = b.length();
    int p = b.strands;
    if ((w - p + 1) % 2 != 0)
        throw Error(Errc::OddParityViolation,
                    "w - p + 1 = " + std::to_string(w - p + 1) + " is odd; closure cannot be a knot");
    KnotInvariants inv;
    inv.tb = w - p;
    inv.seifert_genus = (w - p + 1) / 2;
    inv.slice_genus_equal = true;
    inv.tight_certified = (inv.tb != -1);
    return inv;
}

// Text form "p=4 word=1,2,3" or "p=2;1,1,1", or the JSON object
// {"strands": n, "word": [ints]}.
inline BraidWord parse_braid_text(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') continue;
        if (ch != '{') break;
        try {
            auto j = nlohmann::json::parse(text);
            return validate_braid(j.at("word").get<std::vector<int>>(), j.at("strands").get<int>());
        } catch (const nlohmann::json::exception& ex) {
            throw Error(Errc::ParseError, std::string("braid json: ") + ex.what());
        }
    }
    std::string s = text;
    for (char& c : s)
        if (c == ';' || c == '=') c = ' ';
    std::istringstream in(s);
    std::string tok;
    int p = -1;
    std::vector<int> letters;
    std::vector<std::string> toks;
    while (in >> tok) toks.push_back(tok);
    for (size_t i = 0; i < toks.size(); ++i) {
        if (toks[i] == "p" || toks[i] == "strands") {
            if (i + 1 >= toks.size()) throw Error(Errc::ParseError, "missing strand count");
            p = std::atoi(toks[++i].c_str());
        } else if (toks[i] == "word") {
            continue;
        } else {
            std::istringstream csv(toks[i]);
            std::string item;
            while (std::getline(csv, item, ','))
                if (!item.empty()) letters.push_back(std::atoi(item.c_str()));
        }
    }
    if (p < 0) throw Error(Errc::ParseError, "braid text needs p=<n>: '" + text + "'");
    return validate_braid(letters, p);
}

} // namespace legcert
