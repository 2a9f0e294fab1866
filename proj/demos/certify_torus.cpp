// demos/certify_torus.cpp — certify the positive torus knots up to (5,6)
// and print one line per knot.

#include <iostream>

#include "legcert/legcert.hpp"

using namespace legcert;

int main() {
    for (const auto& item : torus_family(5, 6)) {
        CertificateBundle bundle = certify(item.input, {});
        const auto& doc = bundle.doc;
        std::cout << item.name << ": tb = " << doc["invariants"]["tb"] << ", target "
                  << doc["target"]["word"][0].get<std::string>() << ", "
                  << (bundle.certified ? "contact homology vanishes" : "inconclusive")
                  << (doc["conclusion"]["tight"].get<bool>() ? ", tight" : "") << "\n";
    }
    return 0;
}
