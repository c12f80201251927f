#pragma once

#include "algebroid.hpp"

#include <map>
#include <string>

namespace lax {

// An algebroid together with named auxiliary data (endomorphisms, bisections
// and general multivectors, morphisms, connections Gamma[a][c][b]).
struct Model {
    Algebroid A;
    std::map<std::string, Mat> endos;
    std::map<std::string, Mat> bisections;           // skew matrices
    std::map<std::string, Skew> tensors;             // general multivectors
    std::map<std::string, Morphism> morphisms;
    std::map<std::string, std::vector<Mat>> connections;
};

} // namespace lax
