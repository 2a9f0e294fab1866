// demos/chord_gradings.cpp — intersection gradings and action relations of a
// diagram, either a torus braid built in code or a .ldg file given on the
// command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include "legcert/legcert.hpp"

using namespace legcert;

int main(int argc, char** argv) {
    Diagram d;
    if (argc > 1) {
        std::ifstream in(argv[1]);
        std::ostringstream ss;
        ss << in.rdbuf();
        d = load_diagram(ss.str());
    } else {
        d = rainbow_closure_diagram(validate_braid({1, 1, 1}, 2));
    }
    std::cout << "tb = " << d.tb() << ", faces = " << d.num_faces() << "\n";
    std::cout << "I(mu) = " << meridian_grading(d).to_string(d) << "\n";
    for (int c = 0; c < d.num_crossings(); ++c)
        std::cout << "I(" << d.crossings[c].label << ") = " << chord_grading(d, c).to_string(d)
                  << "\n";
    std::cout << "\nmixed-sign action relations:\n";
    for (const auto& rel : corner_relations(d).relations) {
        if (!rel.mixed_signs()) continue;
        std::cout << "  Area(" << d.faces[rel.face].label << ") =";
        for (const auto& [c, k] : rel.coef) {
            std::cout << (k > 0 ? " + " : " - ");
            if (std::abs(k) != 1) std::cout << std::abs(k) << " ";
            std::cout << "A(" << d.crossings[c].label << ")";
        }
        std::cout << "\n";
    }
    std::cout << "\nall-positive disks:\n";
    for (const auto& disk : rsft_disks(d)) {
        std::cout << "  " << d.faces[disk.face].label << " with boundary word "
                  << word_name(d, disk.chord_word) << "\n";
    }
    return 0;
}
