// Polytope file format:
//   {"halfspaces": [{"n": [n1, n2, n3], "c": c}, ...]}
// The reader validates boundedness through Polytope's constructor.
#ifndef HEIS_JSON_IO_HPP
#define HEIS_JSON_IO_HPP

#include <string>

#include "heis/polytope.hpp"

namespace heis {

Polytope read_polytope(const std::string& path);
Polytope polytope_from_json(const std::string& text);
std::string polytope_to_json(const Polytope& P);
void write_polytope(const Polytope& P, const std::string& path);

} // namespace heis

#endif
